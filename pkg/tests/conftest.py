import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def assert_series_close(a, b, tol=1e-9):
    """Coefficientwise comparison over the common truncation order."""
    n = min(a.order, b.order)
    err = np.max(np.abs(a.coeffs[: n + 1] - b.coeffs[: n + 1]))
    assert err <= tol, f"series differ by {err:.3e} (tol {tol:g})"
