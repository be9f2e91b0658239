"""Triangle lengths, collar parameters and the two coordinate surfaces.

Triangle lengths ``(a, b, c)`` live either on the collar surface H,
``cosh^2 a + cosh^2 b + cosh^2 c = 2 cosh a cosh b cosh c``, or on the
cone Delta, ``a + b + c = 2 max(a, b, c)``. The linear projection
``pi(a, b, c) = (4a - 2b - 2c, 2b - 2c)`` is a homeomorphism from
either surface onto the plane of collar parameters.
"""

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainTooLarge, EmptySection, NegativeComponent
from .numerics import DEFAULT_TOL, LOG2, arccosh1p, log_cosh, safeguarded_newton

# components above this are evaluated in log scale
LOG_SCALE_THRESHOLD = 30.0
SYMMETRIC_LENGTH = math.acosh(1.5)
SYMMETRIC_SUM = 3.0 * SYMMETRIC_LENGTH


@dataclass(frozen=True)
class TriangleLengths:
    a: float
    b: float
    c: float

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __mul__(self, s):
        return TriangleLengths(s * self.a, s * self.b, s * self.c)

    __rmul__ = __mul__

    @property
    def total(self):
        return self.a + self.b + self.c

    def in_H(self, tol=1e-9):
        if min(self) <= 0.0:
            return False
        return abs(collar_residual_relative(self)) <= tol

    def in_Delta(self, tol=0.0):
        if min(self) < 0.0:
            return False
        return abs(delta_residual(self)) <= tol * (1.0 + max(self))


@dataclass(frozen=True)
class CollarParams:
    x: float
    y: float

    def __iter__(self):
        return iter((self.x, self.y))

    def __mul__(self, s):
        return CollarParams(s * self.x, s * self.y)

    __rmul__ = __mul__

    def __sub__(self, other):
        return CollarParams(self.x - other.x, self.y - other.y)

    @property
    def norm(self):
        return math.hypot(self.x, self.y)


def _scaled_terms(a, b, c):
    """The three terms cosh(a) / (2 cosh b cosh c) and cyclic, in log scale."""
    la, lb, lc = log_cosh(a), log_cosh(b), log_cosh(c)
    return (
        math.exp(la - lb - lc - LOG2),
        math.exp(lb - la - lc - LOG2),
        math.exp(lc - la - lb - LOG2),
    )


def normalized_residual(t):
    """Collar residual divided by ``2 cosh a cosh b cosh c``.

    Same sign and zero set as :func:`collar_residual`, bounded, and
    finite for any finite triple.
    """
    return math.fsum(_scaled_terms(*t)) - 1.0


def _log_cosh_product(t):
    return log_cosh(t.a) + log_cosh(t.b) + log_cosh(t.c)


def collar_residual(t):
    """cosh^2 a + cosh^2 b + cosh^2 c - 2 cosh a cosh b cosh c.

    Raises DomainTooLarge when the value itself is not representable.
    """
    if max(abs(v) for v in t) <= LOG_SCALE_THRESHOLD:
        ca, cb, cc = (math.cosh(v) for v in t)
        return ca * ca + cb * cb + cc * cc - 2.0 * ca * cb * cc
    g = normalized_residual(t)
    if g == 0.0:
        return 0.0
    log_mag = LOG2 + _log_cosh_product(t) + math.log(abs(g))
    if log_mag > 709.0:
        raise DomainTooLarge(f"collar residual of {t} overflows (log magnitude {log_mag:.1f})")
    return math.copysign(math.exp(log_mag), g)


def collar_residual_relative(t):
    """collar_residual / (1 + cosh a cosh b cosh c), safe at any scale."""
    if max(abs(v) for v in t) <= LOG_SCALE_THRESHOLD:
        p = math.cosh(t.a) * math.cosh(t.b) * math.cosh(t.c)
        return collar_residual(t) / (1.0 + p)
    g = normalized_residual(t)
    return 2.0 * g / (1.0 + math.exp(-_log_cosh_product(t)))


def delta_residual(t):
    """a + b + c - 2 max(a, b, c); zero exactly on the cone Delta."""
    return t.a + t.b + t.c - 2.0 * max(t)


def project_pi(t):
    return CollarParams(4.0 * t.a - 2.0 * t.b - 2.0 * t.c, 2.0 * t.b - 2.0 * t.c)


def invert_pi_delta(p):
    """The unique point of Delta over ``p``, by the closed three-case formula."""
    x, y = p
    if x >= abs(y):
        return TriangleLengths(x / 2.0, (x + y) / 4.0, (x - y) / 4.0)
    if y >= max(0.0, x):
        return TriangleLengths(y / 2.0, (3.0 * y - x) / 4.0, (y - x) / 4.0)
    return TriangleLengths(-y / 2.0, -(x + y) / 4.0, -(x + 3.0 * y) / 4.0)


def _fiber_function(base):
    a0, b0, c0 = base

    def g(v):
        # v = log of the offset u along (1, 1, 1) from the Delta point
        u = math.exp(v)
        a, b, c = a0 + u, b0 + u, c0 + u
        ta, tb, tc = _scaled_terms(a, b, c)
        tha, thb, thc = math.tanh(a), math.tanh(b), math.tanh(c)
        val = math.fsum((ta, tb, tc)) - 1.0
        dval = ta * (tha - thb - thc) + tb * (thb - tha - thc) + tc * (thc - tha - thb)
        return val, u * dval

    return g


def _log_sinh(x):
    return x + math.log(-math.expm1(-2.0 * x)) - LOG2


def smallest_root(b, c, diff=None):
    """The smaller solution ``a`` of the collar equation for given ``b, c``.

    The two roots are ``cosh a = cosh b cosh c -+ sqrt(sinh^2 b sinh^2 c - 1)``.
    With ``d = 1 / (sinh b sinh c + sqrt(...))`` the smaller one is
    ``cosh a - 1 = 2 sinh^2((b - c) / 2) + (1 + d cosh(b - c)) / (cosh(b + c) - d)``,
    a sum of positive terms. ``diff`` overrides ``b - c`` when the caller
    knows it more accurately. Returns None when ``sinh b sinh c < 1``
    (no real root).
    """
    if min(b, c) <= 0.0:
        return None
    lp = _log_sinh(b) + _log_sinh(c)
    if lp < 0.0:
        return None
    d = b - c if diff is None else diff
    log_delta = -(lp + math.log1p(math.sqrt(-math.expm1(-2.0 * lp))))
    lcs = log_cosh(b + c)
    log_num = math.log1p(math.exp(log_cosh(d) + log_delta))
    log_den = lcs + math.log1p(-math.exp(log_delta - lcs))
    return arccosh1p(2.0 * math.sinh(0.5 * d) ** 2 + math.exp(log_num - log_den))


def _refine_small_offset(base, u):
    """Re-solve for the fiber offset with ``a_min - smallest_root(b, c)``.

    When the smallest component is small the normalized residual is
    nearly flat along the fiber (and drowns in rounding), while this
    residual increases with slope at least one: the smaller root
    decreases as ``b, c`` move up together with ``b - c`` fixed. That
    difference is taken from the Delta point, where it is exact.
    """
    a0, b0, c0 = sorted(base)

    def phi(v):
        r = smallest_root(b0 + v, c0 + v, diff=b0 - c0)
        return math.nan if r is None else a0 + v - r

    if not phi(0.0) < 0.0:
        return u
    hi = max(2.0 * u, 2.0 ** -52 * (1.0 + c0))
    for _ in range(64):
        if phi(hi) > 0.0:
            break
        hi *= 4.0
    else:
        return u
    return brentq(phi, 0.0, hi, xtol=1e-300, rtol=1e-15, maxiter=200)


def fiber_offset(p, tol=DEFAULT_TOL):
    """Offset ``u > 0`` with ``invert_pi_delta(p) + u (1, 1, 1)`` on H.

    The fiber of ``pi`` over ``p`` is the line through the Delta point in
    direction (1, 1, 1). The residual is positive on Delta and tends to
    minus infinity along the fiber, so the root is bracketed by an
    expanding search and then polished by safeguarded Newton in
    ``log u`` (which makes the tolerance relative to ``u``).
    """
    base = invert_pi_delta(p)
    g = _fiber_function(base)
    v_hi = 0.0
    while g(v_hi)[0] >= 0.0:
        v_hi += LOG2
        if v_hi > 60.0:
            raise NegativeComponent(f"no sign change along the fiber over {p}")
    v_lo = v_hi - 1.0
    while g(v_lo)[0] <= 0.0:
        v_hi = v_lo
        v_lo -= 16.0
        if v_lo < -740.0:
            # offset below double range: the Delta point is on H to rounding
            u = math.exp(v_hi)
            break
    else:
        v, _ = safeguarded_newton(g, v_lo, v_hi, tol=tol)
        u = math.exp(v)
    if min(base) + u < 1.0:
        u = _refine_small_offset(base, u)
    return u


def invert_pi_H(p, tol=DEFAULT_TOL):
    """The unique point of H over the collar parameters ``p``."""
    if p.x == 0.0 and p.y == 0.0:
        s = SYMMETRIC_LENGTH
        return TriangleLengths(s, s, s)
    base = invert_pi_delta(p)
    u = fiber_offset(p, tol)
    t = TriangleLengths(base.a + u, base.b + u, base.c + u)
    if min(t) <= 0.0:
        raise NegativeComponent(f"component of the H point over {p} underflows: {t}")
    return t


def _ray_sum(direction, r, tol):
    return invert_pi_H(direction * r, tol).total


def cross_section(C, n, tol=DEFAULT_TOL):
    """``n`` collar parameters of H meeting the plane ``a + b + c = C``.

    Points are taken along rays from the origin (the image of the
    symmetric point) at equally spaced angles, so they come out ordered
    by angle. The plane misses H when ``C`` is below the sum at the
    symmetric point, ``3 arccosh(3/2)``.
    """
    if C <= 2.0:
        raise EmptySection(f"plane a+b+c={C} meets the cone only at its vertex or not at all")
    if n < 1:
        raise ValueError("n must be positive")
    slack = C - SYMMETRIC_SUM
    if slack < -(tol.abs_tol + tol.rel_tol * C):
        raise EmptySection(f"plane a+b+c={C} lies below H (minimum {SYMMETRIC_SUM!r})")
    if slack <= tol.abs_tol + tol.rel_tol * C:
        return [CollarParams(0.0, 0.0) for _ in range(n)]
    out = []
    for k in range(n):
        theta = 2.0 * math.pi * k / n
        d = CollarParams(math.cos(theta), math.sin(theta))
        # H lies above Delta on each fiber, so sum >= r * sum_Delta(d)
        r_hi = C / invert_pi_delta(d).total
        r = brentq(lambda r: _ray_sum(d, r, tol) - C, 0.0, r_hi, xtol=1e-14, rtol=1e-15,
                   maxiter=tol.max_iter)
        out.append(d * r)
    return out


def polygon_orientation_signs(points):
    """Signs of the cross products of consecutive edges of a closed polyline."""
    n = len(points)
    signs = []
    for i in range(n):
        p0, p1, p2 = points[i], points[(i + 1) % n], points[(i + 2) % n]
        cross = (p1.x - p0.x) * (p2.y - p1.y) - (p1.y - p0.y) * (p2.x - p1.x)
        signs.append(math.copysign(1.0, cross) if cross != 0.0 else 0.0)
    return signs


def is_convex_polygon(points):
    signs = polygon_orientation_signs(points)
    return len(points) >= 3 and (all(s > 0 for s in signs) or all(s < 0 for s in signs))


def polygon_contains(points, q):
    """Strict containment of ``q`` in a convex counter-clockwise polygon."""
    n = len(points)
    for i in range(n):
        p0, p1 = points[i], points[(i + 1) % n]
        if (p1.x - p0.x) * (q.y - p0.y) - (p1.y - p0.y) * (q.x - p0.x) <= 0.0:
            return False
    return True
