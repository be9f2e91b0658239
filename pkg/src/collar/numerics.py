"""Overflow-safe hyperbolic helpers and a safeguarded Newton solver."""

import math
from dataclasses import dataclass

from .errors import NoConvergence

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_TOL = Tolerance()


def log_cosh(x):
    """log(cosh x), finite for every finite x."""
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - LOG2


def arccosh1p(u):
    """arccosh(1 + u) for u >= 0 without cancellation near u = 0."""
    if u < 0.0:
        u = 0.0
    return math.log1p(u + math.sqrt(u * (2.0 + u)))


def arccosh_from_log(lw):
    """arccosh(w) given lw = log(w), w >= 1."""
    if lw <= 0.0:
        return 0.0
    if lw < 20.0:
        return arccosh1p(math.expm1(lw))
    # arccosh(w) = log w + log(1 + sqrt(1 - w^-2))
    return lw + math.log1p(math.sqrt(-math.expm1(-2.0 * lw)))


def coth_minus_one(x):
    """coth(x) - 1 for x > 0."""
    if x > 20.0:
        return 2.0 * math.exp(-2.0 * x) / (1.0 - math.exp(-2.0 * x))
    return 2.0 / math.expm1(2.0 * x)


def arccosh_cosh_scaled(z, k_minus_one):
    """arccosh(K cosh z) for K = 1 + k_minus_one >= 1.

    For moderate |z| the argument minus one is assembled from two
    non-negative pieces, (K - 1) cosh z + 2 sinh^2(z/2), so nothing
    cancels when both z and K - 1 are small.
    """
    z = abs(z)
    if z <= 20.0:
        u = k_minus_one * math.cosh(z) + 2.0 * math.sinh(0.5 * z) ** 2
        if u < 1e300:
            return arccosh1p(u)
    return arccosh_from_log(math.log1p(k_minus_one) + log_cosh(z))


def safeguarded_newton(f, lo, hi, x0=None, tol=DEFAULT_TOL):
    """Root of ``f`` in the sign-change bracket ``[lo, hi]``.

    ``f(x)`` returns ``(value, derivative)``. A Newton step is taken when
    it stays inside the current bracket and shrinks faster than
    bisection would; otherwise the bracket is bisected. Returns
    ``(root, iterations)``.
    """
    flo, _ = f(lo)
    fhi, _ = f(hi)
    if flo == 0.0:
        return lo, 0
    if fhi == 0.0:
        return hi, 0
    if (flo > 0) == (fhi > 0):
        raise ValueError("bracket does not change sign")
    x = 0.5 * (lo + hi) if x0 is None else min(max(x0, lo), hi)
    step_prev = hi - lo
    for it in range(1, tol.max_iter + 1):
        fx, dfx = f(x)
        if fx == 0.0:
            return x, it
        if (fx > 0) == (flo > 0):
            lo = x
        else:
            hi = x
        x_new = x - fx / dfx if dfx != 0.0 and math.isfinite(dfx) else math.nan
        if not (lo < x_new < hi) or abs(2.0 * fx) > abs(step_prev * dfx):
            x_new = 0.5 * (lo + hi)
        step_prev = x_new - x
        x = x_new
        if abs(step_prev) <= tol.abs_tol + tol.rel_tol * abs(x):
            return x, it
        if not lo < x < hi:
            # bracket collapsed to adjacent floats
            return x, it
    raise NoConvergence(
        f"no convergence after {tol.max_iter} iterations (bracket [{lo!r}, {hi!r}])"
    )
