"""Fenchel-Nielsen / Dehn-Thurston coordinates to and from collar parameters.

Coordinates cross the API as ``(2*ell, 2*tau)``; internally we work with
``(ell, tau)``. The twist sign follows the forward formulas exactly as
written: ``b`` is controlled by ``tau`` and ``c`` by ``ell - tau``. A
mirrored twist convention flips the sign of ``y``.
"""

import math
from dataclasses import dataclass

from .errors import Inconsistent, NegativeLength, NonPositiveLength
from .geometry import TriangleLengths, invert_pi_delta, invert_pi_H, project_pi
from .numerics import DEFAULT_TOL, arccosh_cosh_scaled, arccosh1p, arccosh_from_log, coth_minus_one, log_cosh


@dataclass(frozen=True)
class FenchelNielsen:
    two_ell: float
    two_tau: float

    def __post_init__(self):
        if not self.two_ell > 0:
            raise NonPositiveLength(f"Fenchel-Nielsen length must be positive, got {self.two_ell}")

    @classmethod
    def from_half(cls, ell, tau):
        return cls(2.0 * ell, 2.0 * tau)

    @property
    def ell(self):
        return self.two_ell / 2.0

    @property
    def tau(self):
        return self.two_tau / 2.0


@dataclass(frozen=True)
class DehnThurston:
    two_ell: float
    two_tau: float

    def __post_init__(self):
        if not self.two_ell >= 0:
            raise NegativeLength(f"Dehn-Thurston measure must be non-negative, got {self.two_ell}")

    @classmethod
    def from_half(cls, ell, tau):
        return cls(2.0 * ell, 2.0 * tau)

    @property
    def ell(self):
        return self.two_ell / 2.0

    @property
    def tau(self):
        return self.two_tau / 2.0


def fn_to_triangle(fn):
    """Triangle lengths ``(ell, arccosh(cosh tau coth ell), arccosh(cosh(ell - tau) coth ell))``."""
    ell, tau = fn.ell, fn.tau
    if not ell > 0:
        raise NonPositiveLength(f"ell must be positive, got {ell}")
    k1 = coth_minus_one(ell)
    return TriangleLengths(ell, arccosh_cosh_scaled(tau, k1), arccosh_cosh_scaled(ell - tau, k1))


def fn_to_cp(fn):
    return project_pi(fn_to_triangle(fn))


def dt_to_triangle(dt):
    ell, tau = dt.ell, dt.tau
    if ell < 0:
        raise NegativeLength(f"ell must be non-negative, got {ell}")
    return TriangleLengths(ell, abs(tau), abs(ell - tau))


def dt_to_cp(dt):
    return project_pi(dt_to_triangle(dt))


def _c_mismatch(a, c, tau):
    """|log cosh c - log(cosh(ell - tau) coth ell)|, a scale-free c-consistency test."""
    return abs(log_cosh(c) - log_cosh(a - tau) - math.log1p(coth_minus_one(a)))


def triangle_to_fn(t):
    """Invert the Fenchel-Nielsen formulas on a point of H.

    ``|tau|`` comes from the b-equation, the sign of ``tau`` from the
    c-equation. Near ``tau = 0`` the arccosh is ill-conditioned, so the
    twist is recomputed from the ratio of the two equations,
    ``tanh tau = (cosh ell - cosh c / cosh b) / sinh ell``, which is
    linear in ``tau`` there.
    """
    ell, b, c = t
    # cosh b tanh ell - 1 = (cosh b - 1) tanh ell - (1 - tanh ell)
    th = math.tanh(ell)
    if b <= 20.0:
        u = 2.0 * math.sinh(0.5 * b) ** 2 * th - 2.0 / (math.exp(2.0 * ell) + 1.0)
        abs_tau = arccosh1p(u)
    else:
        abs_tau = arccosh_from_log(log_cosh(b) + math.log(th))
    plus, minus = _c_mismatch(ell, c, abs_tau), _c_mismatch(ell, c, -abs_tau)
    tau = abs_tau if plus <= minus else -abs_tau
    if abs(tau) < 1.0:
        ratio = math.exp(log_cosh(c) - log_cosh(b))
        tanh_tau = (math.cosh(ell) - ratio) / math.sinh(ell)
        if abs(tanh_tau) < 1.0:
            tau = math.atanh(tanh_tau)
    if tau == 0.0:
        tau = 0.0  # normalise -0.0
    return FenchelNielsen.from_half(ell, tau)


def cp_to_fn(p, tol=DEFAULT_TOL):
    return triangle_to_fn(invert_pi_H(p, tol))


def triangle_to_dt(t, tol=1e-12):
    ell, b, c = t
    plus, minus = abs(abs(ell - b) - c), abs(abs(ell + b) - c)
    if min(plus, minus) > tol * (1.0 + max(t)):
        raise Inconsistent(f"{t} is not on the cone: neither twist sign reproduces c")
    tau = b if plus <= minus else -b
    return DehnThurston.from_half(ell, tau)


def cp_to_dt(p, tol=1e-12):
    """Invert the Dehn-Thurston formulas; ties resolve to ``tau >= 0``."""
    return triangle_to_dt(invert_pi_delta(p), tol)


def fn_dt_degeneration_gap(fn):
    """Distance between the FN and DT collar parameters of the same ``(2 ell, 2 tau)``.

    Replacing ``coth ell`` by 1 in the FN formulas gives the DT ones, so
    the gap shrinks along rays ``(t ell, t tau)``.
    """
    return (fn_to_cp(fn) - dt_to_cp(DehnThurston(fn.two_ell, fn.two_tau))).norm
