"""Truncated complex power-series arithmetic.

Every coefficient computation in this package runs on :class:`Series`:
a dense, immutable vector of complex Taylor coefficients ``c_0..c_N``
for a fixed truncation order ``N``.  Binary operations truncate to the
smaller operand order, so loss of degrees is always explicit and a
result is never silently extended.
"""

from __future__ import annotations

import numpy as np

#: Default truncation order used by constructors that do not specify one.
ORDER_DEFAULT = 64

#: Quotient guard: a denominator constant term at or below this magnitude
#: makes the quotient numerically meaningless in double precision.
DIV_FLOOR = 1e-12

#: Tolerance for "equals 0/1" preconditions.  Constructors produce these
#: constants exactly; a violation indicates a caller bug.
TOL_EXACT = 1e-12


class DivisionByNearZeroConstant(ArithmeticError):
    """Denominator constant term is too close to zero for a quotient."""


class NotUnitConstantTerm(ValueError):
    """log_unit requires a series with constant term 1."""


class NonzeroConstantTerm(ValueError):
    """exp_zero requires a series with constant term 0."""


class Series:
    """A power series truncated at a fixed order: ``sum c_k z^k, k <= order``.

    Instances are immutable; all operations are pure functions returning
    new instances, so values can be shared freely across threads.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must form a nonempty 1-d sequence")
        c.setflags(write=False)
        self._c = c

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, order: int = ORDER_DEFAULT) -> "Series":
        return cls(np.zeros(order + 1))

    @classmethod
    def constant(cls, value: complex, order: int = ORDER_DEFAULT) -> "Series":
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(c)

    @classmethod
    def one(cls, order: int = ORDER_DEFAULT) -> "Series":
        return cls.constant(1.0, order)

    @classmethod
    def monomial(cls, degree: int, order: int = ORDER_DEFAULT, scale: complex = 1.0) -> "Series":
        if not 0 <= degree <= order:
            raise ValueError("monomial degree must lie within the order")
        c = np.zeros(order + 1, dtype=np.complex128)
        c[degree] = scale
        return cls(c)

    # ------------------------------------------------------------------
    # basic structure

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient vector ``c_0..c_N``."""
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __repr__(self) -> str:
        shown = ", ".join(f"{c:.6g}" for c in self._c[:4])
        more = ", ..." if self._c.size > 4 else ""
        return f"Series(order={self.order}, [{shown}{more}])"

    def truncate(self, order: int) -> "Series":
        """Drop coefficients above ``order``.  Extension is not allowed."""
        if order > self.order:
            raise ValueError("truncate cannot extend a series")
        if order == self.order:
            return self
        return Series(self._c[: order + 1])

    # ------------------------------------------------------------------
    # ring operations (result order = min of operand orders)

    def add(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series(self._c[: n + 1] + other._c[: n + 1])

    def sub(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series(self._c[: n + 1] - other._c[: n + 1])

    def neg(self) -> "Series":
        return Series(-self._c)

    def scale(self, factor: complex) -> "Series":
        return Series(self._c * factor)

    def mul(self, other: "Series") -> "Series":
        """Cauchy product truncated at the minimum operand order."""
        n = min(self.order, other.order)
        return Series(np.convolve(self._c[: n + 1], other._c[: n + 1])[: n + 1])

    def div(self, other: "Series") -> "Series":
        """Quotient q with ``other * q == self`` up to the common order."""
        b = other._c
        if abs(b[0]) <= DIV_FLOOR:
            raise DivisionByNearZeroConstant(
                f"|denominator constant term| = {abs(b[0]):.3e} <= {DIV_FLOOR:g}"
            )
        n = min(self.order, other.order)
        a = self._c
        q = np.zeros(n + 1, dtype=np.complex128)
        q[0] = a[0] / b[0]
        for k in range(1, n + 1):
            q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b[0]
        return Series(q)

    # ------------------------------------------------------------------
    # calculus and transcendental maps

    def derivative(self) -> "Series":
        """Termwise derivative; the order drops by one."""
        if self.order == 0:
            return Series([0.0])
        k = np.arange(1, self.order + 1)
        return Series(k * self._c[1:])

    def exp_zero(self) -> "Series":
        """Exponential of a series with zero constant term.

        Uses the convolution recurrence ``k b_k = sum_{j<=k} j a_j b_{k-j}``,
        which costs O(N^2) and needs no root finding.
        """
        if abs(self._c[0]) > TOL_EXACT:
            raise NonzeroConstantTerm(f"constant term {self._c[0]:.3e} is not 0")
        n = self.order
        ka = np.arange(n + 1) * self._c
        b = np.zeros(n + 1, dtype=np.complex128)
        b[0] = 1.0
        for k in range(1, n + 1):
            b[k] = np.dot(ka[1 : k + 1], b[k - 1 :: -1][:k]) / k
        return Series(b)

    def log_unit(self) -> "Series":
        """Principal logarithm of a series with constant term 1 (log 1 = 0)."""
        if abs(self._c[0] - 1.0) > TOL_EXACT:
            raise NotUnitConstantTerm(f"constant term {self._c[0]:.6g} is not 1")
        n = self.order
        b = self._c
        a = np.zeros(n + 1, dtype=np.complex128)
        for k in range(1, n + 1):
            s = np.dot(np.arange(1, k) * a[1:k], b[k - 1 : 0 : -1]) if k > 1 else 0.0
            a[k] = (k * b[k] - s) / (k * b[0])
        return Series(a)

    # ------------------------------------------------------------------
    # evaluation

    def eval(self, z: complex) -> complex:
        """Horner evaluation of the truncated polynomial at one point."""
        acc = 0j
        for c in self._c[::-1]:
            acc = acc * z + c
        return complex(acc)

    def eval_circle(self, r: float, m: int) -> np.ndarray:
        """Values at the uniform grid ``z_j = r exp(2 pi i j / m), j = 0..m-1``.

        Computed exactly (up to rounding) by folding the scaled coefficients
        modulo m and applying one inverse FFT, since the grid characters are
        periodic in the coefficient index.
        """
        scaled = self._c * (float(r) ** np.arange(self._c.size))
        total = ((scaled.size + m - 1) // m) * m
        buf = np.zeros(total, dtype=np.complex128)
        buf[: scaled.size] = scaled
        folded = buf.reshape(-1, m).sum(axis=0)
        return m * np.fft.ifft(folded)

    # ------------------------------------------------------------------
    # operator sugar

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return Series.constant(other, self.order)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else self.add(rhs)

    __radd__ = __add__

    def __sub__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else self.sub(rhs)

    def __rsub__(self, other):
        lhs = self._coerce(other)
        return NotImplemented if lhs is None else lhs.sub(self)

    def __neg__(self):
        return self.neg()

    def __mul__(self, other):
        if isinstance(other, Series):
            return self.mul(other)
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self.div(other)
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        lhs = self._coerce(other)
        return NotImplemented if lhs is None else lhs.div(self)


class FunctionSeries:
    """A normalized function ``f(z) = z + a_2 z^2 + ...`` given as a Series.

    The normalization ``a_0 = 0`` and ``a_1 = 1`` must hold exactly;
    constructors in this package produce it exactly, so any violation is
    treated as a caller bug.  ``provenance`` records how the function was
    built ("named", "from-measure" or "alexander") and ``params`` holds
    the construction parameters.
    """

    __slots__ = ("series", "provenance", "params")

    def __init__(self, series: Series, provenance: str, params: dict | None = None):
        c = series.coeffs
        if series.order < 1 or c[0] != 0 or c[1] != 1:
            raise ValueError("normalized function needs a_0 = 0 and a_1 = 1 exactly")
        self.series = series
        self.provenance = provenance
        self.params = dict(params or {})

    @property
    def order(self) -> int:
        return self.series.order

    def a(self, n: int) -> complex:
        """Taylor coefficient a_n of f."""
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient index {n} outside order {self.order}")
        return complex(self.series.coeffs[n])

    def __repr__(self) -> str:
        return f"FunctionSeries(order={self.order}, provenance={self.provenance!r})"
