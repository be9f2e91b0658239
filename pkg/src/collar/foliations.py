"""Linear measured foliations on the annulus and standard foliations on shorts."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NegativeMeasure, NotInDelta
from .geometry import TriangleLengths, invert_pi_delta, invert_pi_H
from .metric import CollarMetric, tensor_at
from .numerics import DEFAULT_TOL


@dataclass(frozen=True)
class LinearFoliation:
    """The foliation |omega| for omega = a dx + sign b dy on R x [-1, 1].

    ``sign`` is +1 when ``c = a + b`` and -1 when ``c = |a - b|``. The zero
    form has leaves ``ker dy``, the horizontal circles.
    """

    lengths: TriangleLengths
    sign: int

    @property
    def form(self):
        """Coefficients (dx, dy) of the 1-form."""
        return (self.lengths.a, self.sign * self.lengths.b)

    @property
    def is_zero(self):
        return self.lengths.a == 0.0 and self.lengths.b == 0.0

    @property
    def leaf_direction(self):
        """A tangent vector to the leaves (the kernel of omega)."""
        if self.is_zero:
            return (1.0, 0.0)
        wx, wy = self.form
        return (-wy, wx)


def foliation_from_lengths(t, tol=0.0):
    """The linear foliation assigning ``a, b, c`` to ``e1, e2, e1 + e2``."""
    if not t.in_Delta(tol):
        raise NotInDelta(f"{t} does not satisfy the triangle equality")
    sign = 1 if t.c >= max(t.a, t.b) else -1
    return LinearFoliation(t, sign)


def transverse_measure(f, path):
    """Total of |omega(v)| over the straight segments ``v`` of a polyline.

    omega has constant coefficients, so each segment contributes exactly
    ``|a dx + sign b dy|``.
    """
    pts = np.asarray(path, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("path must be a sequence of (x, y) points")
    wx, wy = f.form
    d = np.diff(pts, axis=0)
    return float(np.sum(np.abs(wx * d[:, 0] + wy * d[:, 1])))


def reference_sides():
    """The sides s_a, s_b, s_c of the reference triangle as segments in the cover."""
    return {
        "a": [(0.0, 0.0), (1.0, 0.0)],
        "b": [(1.0, 0.0), (1.0, 1.0)],
        "c": [(0.0, 0.0), (1.0, 1.0)],
    }


@dataclass(frozen=True)
class ShortsMeasures:
    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        if min(self.m1, self.m2, self.m3) < 0:
            raise NegativeMeasure(f"transverse measures must be non-negative: {self.as_tuple()}")

    def as_tuple(self):
        return (self.m1, self.m2, self.m3)


class ShortsTag(enum.Enum):
    INTERIOR = "INTERIOR"
    DEGENERATE_SUM = "DEGENERATE_SUM"
    DOMINANT = "DOMINANT"
    PAIR_EQUAL_ONE_ZERO = "PAIR_EQUAL_ONE_ZERO"
    PAIR_UNEQUAL_ONE_ZERO = "PAIR_UNEQUAL_ONE_ZERO"
    ONE_POSITIVE = "ONE_POSITIVE"
    ALL_ZERO = "ALL_ZERO"


@dataclass(frozen=True)
class ShortsCase:
    """Which of the standard shorts foliations applies.

    ``permutation[i]`` is the (0-based) index of the boundary component
    that lands in position ``i`` after sorting the measures descending.
    """

    tag: ShortsTag
    permutation: tuple


def classify_shorts(m):
    """Classify boundary measures into the standard foliation pictures on shorts."""
    if isinstance(m, (tuple, list)):
        m = ShortsMeasures(*m)
    vals = m.as_tuple()
    # stable: equal measures keep index order
    perm = tuple(sorted(range(3), key=lambda i: (-vals[i], i)))
    m1, m2, m3 = (vals[i] for i in perm)
    positive = sum(v > 0 for v in vals)
    if positive == 0:
        tag = ShortsTag.ALL_ZERO
    elif positive == 1:
        tag = ShortsTag.ONE_POSITIVE
    elif m3 == 0:
        tag = ShortsTag.PAIR_EQUAL_ONE_ZERO if m1 == m2 else ShortsTag.PAIR_UNEQUAL_ONE_ZERO
    elif m1 > m2 + m3:
        tag = ShortsTag.DOMINANT
    elif m1 == m2 + m3:
        tag = ShortsTag.DEGENERATE_SUM
    else:
        tag = ShortsTag.INTERIOR
    return ShortsCase(tag, perm)


def boundary_measures(case, m):
    """Boundary measures realised by the standard foliation of ``case``: exactly ``m``."""
    if isinstance(m, (tuple, list)):
        m = ShortsMeasures(*m)
    return m.as_tuple()


def annulus_defect_vs_metric(p, y, tol=None):
    """Operator norm of hyp(invert_pi_H(p)) - omega^2 at height ``y``.

    omega is the linear foliation of ``invert_pi_delta(p)``: the same
    collar parameters read once as a metric and once as a foliation.
    """
    hyp_lengths = invert_pi_H(p, tol or DEFAULT_TOL)
    metric = CollarMetric.from_lengths(hyp_lengths)
    g = tensor_at(metric, 0.0, y).matrix()
    fol = foliation_from_lengths(invert_pi_delta(p), tol=1e-12)
    wx, wy = fol.form
    w2 = np.array([[wx * wx, wx * wy], [wx * wy, wy * wy]])
    return float(np.max(np.abs(np.linalg.eigvalsh(g - w2))))
