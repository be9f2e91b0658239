"""The explicit hyperbolic metric on the lifted standard annulus R x [-1, 1].

For ``(a, b, c)`` on H the metric is

    ds^2 = (a^2 + (a / sinh a)^2 (sinh(b y) / sinh b)^2) dx^2
           + 2 sign a b sqrt(1 - 1 / (sinh a sinh b)^2) dx dy + b^2 dy^2

with ``sign = +1`` exactly when ``cosh c >= cosh a cosh b``. Only the
+1 condition is stated for the cross term; -1 is taken as the
complementary case.

The coefficients depend on ``y`` alone, so everything here is invariant
under translation in ``x`` (period 2 on the annulus itself).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarse, NotOnH, OutOfDomain, StepTooLarge
from .geometry import TriangleLengths, collar_residual_relative
from .numerics import log_cosh

DEFAULT_N_SUB = 64
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _log_sinh(x):
    return x + math.log(-math.expm1(-2.0 * x)) - math.log(2.0)


def _log_sinh_array(x):
    with np.errstate(divide="ignore"):
        return x + np.log(-np.expm1(-2.0 * x)) - math.log(2.0)


def reduce_x(x):
    """Reduce an x-coordinate of the cover to the fundamental period [-1, 1)."""
    return (x + 1.0) % 2.0 - 1.0


@dataclass(frozen=True)
class MetricTensorValue:
    E: float
    F: float
    G: float

    @property
    def det(self):
        return self.E * self.G - self.F * self.F

    def matrix(self):
        return np.array([[self.E, self.F], [self.F, self.G]])


@dataclass(frozen=True)
class CollarMetric:
    """hyp(a, b, c) for ``lengths`` on H."""

    lengths: TriangleLengths
    sign: int

    def __post_init__(self):
        a, b, c = self.lengths
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.sign != metric_sign(self.lengths):
            raise ValueError(f"sign {self.sign} inconsistent with {self.lengths}")

    @classmethod
    def from_lengths(cls, t, tol=1e-9):
        if min(t) <= 0.0 or abs(collar_residual_relative(t)) > tol:
            raise NotOnH(f"{t} does not satisfy the collar equation")
        return cls(t, metric_sign(t))

    @property
    def a(self):
        return self.lengths.a

    @property
    def b(self):
        return self.lengths.b

    @property
    def h(self):
        """Half the length of a boundary component, a coth a."""
        return self.a / math.tanh(self.a)

    @property
    def kappa(self):
        """Depth of the standard collar, arcsinh(1 / sinh a)."""
        return math.asinh(math.exp(-_log_sinh(self.a)))

    @property
    def k(self):
        """1 / (sinh a sinh b); at most 1 on H."""
        return math.exp(-_log_sinh(self.a) - _log_sinh(self.b))

    @property
    def F(self):
        k = self.k
        return self.sign * self.a * self.b * math.sqrt(max(0.0, -math.expm1(2.0 * math.log(k))))

    def E_excess(self, y):
        """E(y) - a^2, evaluated without cancellation; accepts arrays."""
        a, b = self.a, self.b
        ka2 = math.exp(-2.0 * _log_sinh(a))
        if np.ndim(y) == 0:
            if y == 0.0:
                return 0.0
            ratio = math.exp(_log_sinh(b * abs(y)) - _log_sinh(b))
            return a * a * ka2 * ratio * ratio
        y = np.asarray(y, dtype=float)
        ratio = np.exp(_log_sinh_array(b * np.abs(y)) - _log_sinh(b))
        return a * a * ka2 * ratio * ratio

    def determinant(self, y):
        """EG - F^2 at height ``y``, free of the cancellation in the naive product."""
        # EG - F^2 = b^2 (E - a^2 + a^2 k^2)
        return self.b ** 2 * (self.E_excess(y) + (self.a * self.k) ** 2)


def metric_sign(t):
    return 1 if log_cosh(t.c) >= log_cosh(t.a) + log_cosh(t.b) else -1


def other_root(t):
    """The triple (a, b, c') where c' is the other root of the collar equation in c.

    This is the mirror image of hyp(a, b, c): the cross term changes sign.
    """
    a, b, c = t
    ca, cb = math.cosh(a), math.cosh(b)
    disc = math.sqrt(max(0.0, (math.sinh(a) * math.sinh(b)) ** 2 - 1.0))
    roots = (ca * cb + disc, ca * cb - disc)
    cc = math.cosh(c)
    other = roots[1] if abs(cc - roots[0]) <= abs(cc - roots[1]) else roots[0]
    return TriangleLengths(a, b, math.acosh(other))


def _check_y(y):
    if abs(y) > 1.0:
        raise OutOfDomain(f"y={y} outside [-1, 1]")


def tensor_at(m, x, y):
    """Coefficients (E, F, G) of ds^2 at (x, y); ``x`` is accepted for symmetry only."""
    _check_y(y)
    a, b = m.a, m.b
    return MetricTensorValue(a * a + m.E_excess(y), m.F, b * b)


def _segment_lengths(m, y0, dy, dx, n_sub):
    """Simpson lengths of straight segments from (., y0) with displacement (dx, dy).

    Arrays broadcast; the metric depends only on y so the start x is irrelevant.
    """
    if n_sub % 2:
        n_sub += 1
    s = np.linspace(0.0, 1.0, n_sub + 1)
    w = np.ones(n_sub + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w /= 3.0 * n_sub
    y0, dy, dx = (np.asarray(v, dtype=float)[..., None] for v in (y0, dy, dx))
    ys = y0 + s * dy
    E = m.a ** 2 + m.E_excess(ys)
    speed2 = E * dx * dx + 2.0 * m.F * dx * dy + m.b ** 2 * dy * dy
    return np.sum(w * np.sqrt(np.maximum(speed2, 0.0)), axis=-1)


def curve_length(m, path, n_sub=DEFAULT_N_SUB):
    """Length of a polyline ``[(x0, y0), (x1, y1), ...]`` by composite Simpson per segment."""
    pts = np.asarray(path, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValueError("path must be a sequence of at least two (x, y) points")
    if np.any(np.abs(pts[:, 1]) > 1.0):
        raise OutOfDomain("path leaves R x [-1, 1]")
    d = np.diff(pts, axis=0)
    return float(np.sum(_segment_lengths(m, pts[:-1, 1], d[:, 1], d[:, 0], n_sub)))


_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def brioschi_curvature(coefficients, x, y, h, offset=(0.0, 0.0, 0.0), det=None):
    """Gaussian curvature from the Brioschi formula with 5-point differences.

    ``coefficients(x, y)`` returns ``(E, F, G)`` minus the constant
    ``offset``; differencing the variable part only keeps rounding
    relative to it. The stencil reaches ``2 h`` in each direction.
    ``det`` overrides ``EG - F^2`` at the centre when the caller knows
    it without cancellation.
    """
    offs = np.arange(-2, 3) * h
    grid = np.array([[coefficients(x + du, y + dv) for dv in offs] for du in offs])
    E, F, G = grid[..., 0], grid[..., 1], grid[..., 2]
    E0, F0, G0 = (v[2, 2] + o for v, o in zip((E, F, G), offset))

    def d_u(f):
        return _D1 @ f[:, 2] / h

    def d_v(f):
        return _D1 @ f[2, :] / h

    def d_uu(f):
        return _D2 @ f[:, 2] / h ** 2

    def d_vv(f):
        return _D2 @ f[2, :] / h ** 2

    def d_uv(f):
        return _D1 @ f @ _D1 / h ** 2

    Eu, Ev, Evv = d_u(E), d_v(E), d_vv(E)
    Fu, Fv, Fuv = d_u(F), d_v(F), d_uv(F)
    Gu, Gv, Guu = d_u(G), d_v(G), d_uu(G)
    if det is None:
        det = E0 * G0 - F0 * F0
    # both 3x3 determinants share the lower-right minor [[E, F], [F, G]]
    r0 = (-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev)
    c1 = (Fv - 0.5 * Gu, 0.5 * Gv)
    s0 = (0.5 * Ev, 0.5 * Gu)
    det1 = (r0[0] * det - r0[1] * (c1[0] * G0 - F0 * c1[1])
            + r0[2] * (c1[0] * F0 - E0 * c1[1]))
    det2 = -s0[0] * (s0[0] * G0 - F0 * s0[1]) + s0[1] * (s0[0] * F0 - E0 * s0[1])
    return float((det1 - det2) / det ** 2)


def default_curvature_step(m):
    return 1e-3 / max(1.0, m.a, m.b)


def gaussian_curvature(m, y, step=None, x=0.0):
    """Finite-difference Gaussian curvature of hyp(a, b, c) at height ``y``; expect -1."""
    if step is None:
        step = default_curvature_step(m)
    if abs(y) + 2.0 * step > 1.0:
        raise StepTooLarge(f"stencil at y={y} with step={step} leaves [-1, 1]")

    def coefficients(xx, yy):
        _check_y(yy)
        return m.E_excess(yy), 0.0, 0.0

    return brioschi_curvature(coefficients, x, y, step, offset=(m.a ** 2, m.F, m.b ** 2),
                              det=m.determinant(y))


def comparison_defect(m, y):
    """Operator norm of ds^2 - (a dx + sign b dy)^2 at height ``y``."""
    _check_y(y)
    a, b = m.a, m.b
    d = m.E_excess(y)
    k2 = m.k ** 2
    # F - sign*a*b = sign*a*b*(sqrt(1 - k^2) - 1)
    off = -m.sign * a * b * k2 / (1.0 + math.sqrt(max(0.0, 1.0 - k2)))
    return 0.5 * d + math.hypot(0.5 * d, off)


def depth_check(m, n_grid=256, n_steps=8, n_sub=16):
    """Length of the shortest lattice path from the boundary point (0, 1) to the core y = 0.

    Rows ``y_i = 1 - i / n_grid`` are joined by straight segments whose
    horizontal steps are multiples of a lattice spacing; a min-plus
    dynamic program picks the best lattice path, then each row's step is
    refined by golden-section search. The result should match the depth
    arcsinh(1 / sinh a).
    """
    n = n_grid
    a2 = m.a ** 2
    # best horizontal step per row is F / (E n); |F| / E <= |F| / a^2
    span = 2.0 * abs(m.F) / a2 / n + 1e-3 / n
    h = span / n_steps
    steps = np.arange(-n_steps, n_steps + 1) * h
    y_top = 1.0 - np.arange(n) / n
    dy = -1.0 / n
    costs = _segment_lengths(m, y_top[:, None], dy, steps[None, :], n_sub)

    width = 2 * n * n_steps + 1
    origin = n * n_steps
    dp = np.full(width, np.inf)
    dp[origin] = 0.0
    choice = np.zeros((n, width), dtype=np.int64)
    for i in range(n):
        best = np.full(width, np.inf)
        arg = np.zeros(width, dtype=np.int64)
        for j, step_idx in enumerate(range(-n_steps, n_steps + 1)):
            shifted = np.full(width, np.inf)
            if step_idx >= 0:
                shifted[step_idx:] = dp[: width - step_idx]
            else:
                shifted[:step_idx] = dp[-step_idx:]
            cand = shifted + costs[i, j]
            better = cand < best
            best[better] = cand[better]
            arg[better] = step_idx
        dp = best
        choice[i] = arg
    end = int(np.argmin(dp))
    lattice_steps = np.zeros(n)
    col = end
    for i in range(n - 1, -1, -1):
        s = choice[i, col]
        lattice_steps[i] = s * h
        col -= s

    lo = lattice_steps - h
    hi = lattice_steps + h
    for _ in range(80):
        x1 = hi - _GOLDEN * (hi - lo)
        x2 = lo + _GOLDEN * (hi - lo)
        f1 = _segment_lengths(m, y_top, dy, x1, n_sub)
        f2 = _segment_lengths(m, y_top, dy, x2, n_sub)
        left = f1 < f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
    refined = 0.5 * (lo + hi)
    if np.any(np.abs(refined) >= n_steps * h * (1.0 - 1e-9)):
        raise GridTooCoarse("optimal step reached the edge of the lattice")
    total = float(np.sum(_segment_lengths(m, y_top, dy, refined, n_sub)))
    if total > float(dp[end]) * (1.0 + 1e-12):
        raise GridTooCoarse("refinement did not improve on the lattice path")
    return total
