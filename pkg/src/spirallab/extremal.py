"""Derivative-free sharpness search over atomic-measure parameter space.

The searcher maximizes a coefficient functional over class members built
from k-atom measures, using multi-start simplex reflection on an
unconstrained parameterization: atom angles live raw in R (wrapped mod
2 pi when a measure is built) and weights are squared then renormalized,
which keeps the simplex constraint implicit.  A bound is corroborated as
sharp when the incumbent approaches it from below; an incumbent past the
bound is a red-alert finding, reported in-band rather than raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classes import AtomicMeasure, ClassSpec, member_from_measure, wrap_angle
from .inequalities import BoundReport, bound_rhs, one_sided_diff, successive_diff
from .series import ORDER_DEFAULT

FUNCTIONALS = ("two_sided_diff", "one_sided_diff", "robertson")

#: Per-restart convergence tolerance on the simplex objective spread.
SPREAD_TOL = 1e-10

#: Initial simplex edge lengths for angle and weight coordinates.
_STEP_ANGLE = 0.5
_STEP_WEIGHT = 0.25


@dataclass(frozen=True)
class SearchProblem:
    """One sharpness-search instance over k-atom measures."""

    spec: ClassSpec
    n: int
    functional: str = "two_sided_diff"
    m: int | None = None
    k_atoms: int = 2
    budget: int = 5000
    restarts: int = 8
    seed: int = 0
    minimize: bool = False

    def __post_init__(self):
        if self.functional not in FUNCTIONALS:
            raise ValueError(f"unknown functional {self.functional!r}")
        if self.functional == "robertson" and (self.m is None or not self.n > self.m >= 1):
            raise ValueError("robertson functional needs n > m >= 1")
        if not 1 <= self.k_atoms <= 16:
            raise ValueError("k_atoms must lie in 1..16")
        if self.budget < 100 * self.k_atoms:
            raise ValueError("budget must be at least 100 * k_atoms")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def to_json(self) -> dict:
        return {
            "kind": self.spec.kind,
            "gamma": self.spec.gamma,
            "alpha": self.spec.alpha,
            "n": self.n,
            "functional": self.functional,
            "m": self.m,
            "k_atoms": self.k_atoms,
            "budget": self.budget,
            "restarts": self.restarts,
            "seed": self.seed,
            "minimize": self.minimize,
        }


@dataclass(frozen=True)
class SearchResult:
    """Best measure found, with the incumbent history of the whole run."""

    best_value: float
    best_measure: AtomicMeasure
    history: tuple  # (evaluation count, incumbent value) at each improvement
    evaluations_used: int
    budget_exhausted: bool

    def to_json(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_measure": {
                "atoms": [
                    {"t": t, "w": w}
                    for t, w in zip(self.best_measure.angles, self.best_measure.weights)
                ]
            },
            "history": [[e, v] for e, v in self.history],
            "evaluations_used": self.evaluations_used,
            "budget_exhausted": self.budget_exhausted,
        }


def _measure_from_vector(x: np.ndarray, k: int) -> AtomicMeasure:
    angles = tuple(wrap_angle(t) for t in x[:k])
    w = x[k:] ** 2
    total = w.sum()
    if total <= 1e-300:
        w = np.full(k, 1.0 / k)
    else:
        w = w / total
    return AtomicMeasure(angles, tuple(w))


def _objective(problem: SearchProblem, order: int):
    spec, n, m = problem.spec, problem.n, problem.m

    def value(x: np.ndarray) -> float:
        f = member_from_measure(_measure_from_vector(x, problem.k_atoms), spec, order)
        if problem.functional == "two_sided_diff":
            return successive_diff(f, n)
        if problem.functional == "one_sided_diff":
            return one_sided_diff(f, n)
        return abs(n * abs(f.a(n)) - m * abs(f.a(m)))

    return value


def _simplex_min(cost, x0: np.ndarray, steps: np.ndarray, max_evals: int):
    """Simplex-reflection minimization; returns (best_x, best_cost, evals, converged)."""
    d = x0.size
    pts = np.vstack([x0] + [x0 + steps[i] * np.eye(d)[i] for i in range(d)])
    vals = np.empty(d + 1)
    evals = 0
    for i in range(d + 1):
        if evals >= max_evals:
            vals[i:] = np.inf
            break
        vals[i] = cost(pts[i])
        evals += 1
    while evals < max_evals:
        idx = np.argsort(vals, kind="stable")
        pts, vals = pts[idx], vals[idx]
        if vals[-1] - vals[0] < SPREAD_TOL:
            return pts[0], vals[0], evals, True
        centroid = pts[:-1].mean(axis=0)
        xr = centroid + (centroid - pts[-1])
        fr = cost(xr)
        evals += 1
        if fr < vals[0]:
            if evals >= max_evals:
                pts[-1], vals[-1] = xr, fr
                break
            xe = centroid + 2.0 * (centroid - pts[-1])
            fe = cost(xe)
            evals += 1
            if fe < fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
        elif fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
        else:
            xc = centroid + 0.5 * (pts[-1] - centroid)
            fc = cost(xc)
            evals += 1
            if fc < vals[-1]:
                pts[-1], vals[-1] = xc, fc
            else:
                for i in range(1, d + 1):
                    if evals >= max_evals:
                        break
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0])
                    vals[i] = cost(pts[i])
                    evals += 1
    i = int(np.argmin(vals))
    return pts[i], vals[i], evals, False


def search(problem: SearchProblem, on_improve=None) -> SearchResult:
    """Run the multi-start search; deterministic for a fixed seed.

    The budget is the total evaluation count, split evenly across
    restarts; a restart that hits its share before the simplex spread
    converges marks the result budget_exhausted.  ``on_improve`` is
    called as (evaluation count, incumbent value) at each improvement,
    which is how the CLI streams progress.
    """
    order = max(ORDER_DEFAULT, 2 * problem.n)
    raw = _objective(problem, order)
    sign = 1.0 if problem.minimize else -1.0
    k = problem.k_atoms

    state = {
        "evals": 0,
        "best_cost": math.inf,
        "best_x": None,
        "history": [],
    }

    def cost(x: np.ndarray) -> float:
        c = sign * raw(x)
        state["evals"] += 1
        if c < state["best_cost"]:
            state["best_cost"] = c
            state["best_x"] = np.array(x)
            state["history"].append((state["evals"], sign * c))
            if on_improve is not None:
                on_improve(state["evals"], sign * c)
        return c

    rng = np.random.default_rng(problem.seed)
    share = max(problem.budget // problem.restarts, 1)
    steps = np.concatenate([np.full(k, _STEP_ANGLE), np.full(k, _STEP_WEIGHT)])
    exhausted = False
    for _ in range(problem.restarts):
        x0 = np.concatenate([rng.uniform(0.0, 2.0 * np.pi, k), rng.uniform(0.3, 1.0, k)])
        _, _, _, converged = _simplex_min(cost, x0, steps, min(share, problem.budget - state["evals"]))
        exhausted = exhausted or not converged
        if state["evals"] >= problem.budget:
            break
    best_measure = _measure_from_vector(state["best_x"], k)
    return SearchResult(
        best_value=sign * state["best_cost"],
        best_measure=best_measure,
        history=tuple(state["history"]),
        evaluations_used=state["evals"],
        budget_exhausted=exhausted,
    )


def default_target(spec: ClassSpec) -> tuple:
    """(theorem_id, two_sided flag) certified for random members of spec.

    Classes with alpha > 0 nest inside their alpha = 0 parent, so their
    members are certified against the parent's constant bound here; the
    sharper per-function exponential bound is the proof-trace's job.
    """
    if spec.kind == "c_half":
        return "thm_c_half", False
    if spec.is_convex_kind:
        return ("thm_B" if spec.gamma == 0.0 else "cor_convex_gamma"), False
    if spec.kind == "starlike":
        return ("thm_C" if spec.alpha < 0.0 else "thm_A"), True
    return "cor_spiral", True


def certify_never_exceeds(
    spec: ClassSpec, n: int, trials: int, seed: int, incumbents=()
) -> BoundReport:
    """Max of the class functional over random members, against the bound.

    Evaluates ``trials`` seeded random measures plus any supplied
    incumbent measures; lhs is the largest observed functional value.
    With no trials and no incumbents the report passes vacuously at
    lhs = 0.
    """
    theorem, two_sided = default_target(spec)
    rhs = bound_rhs(theorem, n, alpha=spec.alpha if theorem == "thm_C" else 0.0)
    order = max(ORDER_DEFAULT, 2 * n)
    rng = np.random.default_rng(seed)
    lhs = 0.0
    measures = []
    for _ in range(trials):
        k = int(rng.integers(1, 9))
        w = rng.dirichlet(np.ones(k))
        measures.append(AtomicMeasure(tuple(rng.uniform(0.0, 2.0 * np.pi, k)), tuple(w / w.sum())))
    measures.extend(incumbents)
    for measure in measures:
        f = member_from_measure(measure, spec, order)
        value = successive_diff(f, n) if two_sided else one_sided_diff(f, n)
        lhs = max(lhs, value)
    return BoundReport(theorem, n=n, lhs=lhs, rhs=rhs)
