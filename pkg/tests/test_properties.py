"""Hypothesis property tests for the invariants of each module."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collar import (
    CollarMetric,
    CollarParams,
    FenchelNielsen,
    TriangleLengths,
    collar_residual,
    cp_to_fn,
    fn_to_cp,
    invert_pi_delta,
    invert_pi_H,
    project_pi,
)
from collar.foliations import classify_shorts, foliation_from_lengths, reference_sides, transverse_measure
from collar.geometry import collar_residual_relative, delta_residual
from collar.holonomy import COMMUTATOR, TorusWord, holonomy_from_lengths, word_trace
from collar.metric import comparison_defect, gaussian_curvature

dyadic = st.integers(-2 ** 20, 2 ** 20).map(lambda k: k / 64.0)
moderate = st.floats(-20.0, 20.0, allow_nan=False)
positive = st.floats(0.01, 3.0)
heights = st.floats(-1.0, 1.0)
words = st.text(alphabet="aAbB", min_size=1, max_size=8)
FAST = settings(max_examples=200, deadline=None)


@FAST
@given(dyadic, dyadic)
def test_delta_inverse_is_exact(x, y):
    p = CollarParams(x, y)
    t = invert_pi_delta(p)
    assert tuple(project_pi(t)) == (x, y)
    assert delta_residual(t) == 0.0
    assert min(t) >= 0.0


@FAST
@given(dyadic, dyadic, st.sampled_from([0.5, 2.0, 8.0]))
def test_delta_inverse_is_homogeneous(x, y, s):
    t = invert_pi_delta(CollarParams(x, y))
    assert tuple(invert_pi_delta(CollarParams(s * x, s * y))) == tuple(s * t)


@FAST
@given(moderate, moderate)
def test_H_point_is_on_H_and_strictly_above_the_cone(x, y):
    p = CollarParams(x, y)
    h, d = invert_pi_H(p), invert_pi_delta(p)
    assert abs(collar_residual_relative(h)) < 1e-12
    assert (project_pi(h) - p).norm < 1e-9
    u = h.a - d.a
    assert all(s >= t for s, t in zip(h, d))
    # the offset is about exp(-2 min(d)); beyond that it drops below the rounding unit
    if min(d) < 5.0:
        assert u > 0.0
        assert h.b - d.b == pytest.approx(u, rel=1e-6, abs=1e-12)
        # strictly inside the cone: every strict triangle inequality holds
        a, b, c = h
        assert a < b + c and b < a + c and c < a + b


@FAST
@given(st.floats(1e-3, 5.0), st.floats(-5.0, 5.0))
def test_fn_roundtrip(ell, tau):
    fn = FenchelNielsen.from_half(ell, tau)
    back = cp_to_fn(fn_to_cp(fn))
    assert back.two_ell == pytest.approx(fn.two_ell, abs=1e-9)
    assert back.two_tau == pytest.approx(fn.two_tau, abs=1e-9)


@FAST
@given(positive, positive, positive)
def test_commutator_trace_identity(a, b, c):
    t = TriangleLengths(a, b, c)
    r = 4.0 * collar_residual(t)
    tr = word_trace(holonomy_from_lengths(t, check=False), COMMUTATOR)
    assert abs(tr + 2.0 - r) <= 1e-8 * max(1.0, abs(r))


@FAST
@given(moderate, moderate, words)
def test_trace_is_a_class_function(x, y, w):
    h = holonomy_from_lengths(invert_pi_H(CollarParams(x / 4, y / 4)))
    base = word_trace(h, TorusWord(w))
    scale = max(1.0, abs(base))
    rotated = TorusWord(w[1:] + w[:1])
    assert abs(word_trace(h, rotated) - base) <= 1e-9 * scale
    inverse = TorusWord(w[::-1].swapcase())
    assert abs(word_trace(h, inverse) - base) <= 1e-9 * scale


@FAST
@given(moderate, moderate, heights)
def test_comparison_bound(x, y, yy):
    m = CollarMetric.from_lengths(invert_pi_H(CollarParams(x, y)))
    assert comparison_defect(m, yy) <= 2.0


@settings(max_examples=60, deadline=None)
@given(moderate, moderate, st.floats(-0.9, 0.9))
def test_curvature_is_minus_one(x, y, yy):
    m = CollarMetric.from_lengths(invert_pi_H(CollarParams(x, y)))
    assert gaussian_curvature(m, yy) == pytest.approx(-1.0, abs=1e-4)


@FAST
@given(dyadic, dyadic)
def test_foliation_measures_the_sides(x, y):
    t = invert_pi_delta(CollarParams(x, y))
    f = foliation_from_lengths(t)
    sides = reference_sides()
    for name in "abc":
        assert transverse_measure(f, sides[name]) == pytest.approx(getattr(t, name), abs=1e-12)


@FAST
@given(st.tuples(*[st.integers(0, 6).map(float)] * 3))
def test_shorts_tag_ignores_order(m):
    tags = {classify_shorts(list(q)).tag for q in itertools.permutations(m)}
    assert len(tags) == 1
    case = classify_shorts(list(m))
    ordered = [m[i] for i in case.permutation]
    assert ordered == sorted(m, reverse=True)


@FAST
@given(st.floats(0.01, 4.0))
def test_symmetric_family_on_the_diagonal(s):
    # a = b = c lies on H only at arccosh(3/2); elsewhere the residual has a fixed sign
    t = TriangleLengths(s, s, s)
    target = math.acosh(1.5)
    r = collar_residual(t)
    if s < target - 1e-9:
        assert r > 0
    elif s > target + 1e-9:
        assert r < 0


@FAST
@given(moderate, moderate)
def test_pairwise_sinh_products(x, y):
    a, b, c = invert_pi_H(CollarParams(x, y))
    sa, sb, sc = math.sinh(a), math.sinh(b), math.sinh(c)
    for prod in (sa * sb, sb * sc, sa * sc):
        assert prod >= 1.0 - 1e-12


@FAST
@given(st.floats(0.0, 2.0 * math.pi))
def test_H_approaches_the_cone_along_rays(theta):
    u = CollarParams(math.cos(theta), math.sin(theta))
    d = invert_pi_delta(u)
    gaps = []
    for t in (10.0, 100.0, 1000.0, 10000.0):
        h = invert_pi_H(u * t)
        gaps.append(math.sqrt(sum((p / t - q) ** 2 for p, q in zip(h, d))))
    # gaps at large t sit at the rounding floor
    assert all(g2 <= g1 + 1e-12 for g1, g2 in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3


@FAST
@given(moderate, moderate, st.floats(-1.0, 1.0))
def test_metric_is_positive_definite_and_core_has_length_2a(x, y, yy):
    from collar.metric import curve_length, tensor_at

    m = CollarMetric.from_lengths(invert_pi_H(CollarParams(x, y)))
    g = tensor_at(m, 0.0, yy)
    assert g.E > 0 and g.G > 0 and m.determinant(yy) > 0
    assert m.determinant(yy) == pytest.approx(g.det, rel=1e-6, abs=1e-6 * g.E * g.G)
    assert curve_length(m, [(0.0, 0.0), (2.0, 0.0)]) == pytest.approx(2.0 * m.a, rel=1e-12)


@FAST
@given(dyadic, dyadic, st.floats(0.0, 10.0), st.lists(st.tuples(moderate, heights), min_size=2, max_size=6))
def test_transverse_measure_is_homogeneous(x, y, s, path):
    t = invert_pi_delta(CollarParams(x, y))
    base = transverse_measure(foliation_from_lengths(t), path)
    scaled = transverse_measure(foliation_from_lengths(s * t, tol=1e-12), path)
    assert scaled == pytest.approx(s * base, rel=1e-12, abs=1e-9)


@FAST
@given(dyadic, dyadic, st.lists(st.floats(0.0, 1.0), min_size=1, max_size=5))
def test_transverse_measure_adds_along_monotone_paths(x, y, cuts):
    f = foliation_from_lengths(invert_pi_delta(CollarParams(x, y)))
    # points along one straight segment: every piece has the same omega-sign
    ts = sorted({0.0, 1.0, *cuts})
    path = [(3.0 * s, -0.5 + s) for s in ts]
    whole = transverse_measure(f, [path[0], path[-1]])
    assert transverse_measure(f, path) == pytest.approx(whole, rel=1e-12, abs=1e-12)
