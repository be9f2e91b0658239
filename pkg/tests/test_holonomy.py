import math

import numpy as np
import pytest

from collar import CollarParams, TriangleLengths, collar_residual, invert_pi_delta, invert_pi_H
from collar.errors import DegenerateA, NotHyperbolic, NotOnH, UnsupportedWord, WordParseError
from collar.holonomy import (
    COMMUTATOR,
    TorusWord,
    commutator_trace_plus_two,
    foliation_half_length,
    geodesic_half_length,
    holonomy_from_lengths,
    ray_limit_experiment,
    theta_roundtrip,
    word_trace,
)

SYM = math.acosh(1.5)
W = TorusWord.parse


def test_symmetric_traces(symmetric):
    h = holonomy_from_lengths(symmetric)
    assert [word_trace(h, W(w)) for w in ("a", "b", "ab")] == pytest.approx([3, 3, 3], rel=1e-15)
    assert word_trace(h, COMMUTATOR) == pytest.approx(-2.0, abs=1e-13)
    assert geodesic_half_length(h, W("ab")) == pytest.approx(SYM, rel=1e-14)
    A, B, C = h.matrices()
    assert np.linalg.det(A) == pytest.approx(1.0, rel=1e-15)
    assert np.linalg.det(B) == pytest.approx(1.0, rel=1e-14)
    assert np.allclose(C, A @ B, rtol=1e-15)


def test_fn_image_traces(fn_image):
    h = holonomy_from_lengths(fn_image)
    assert word_trace(h, W("a")) == pytest.approx(3.0861612696304875570, rel=1e-14)
    assert word_trace(h, W("ab")) == pytest.approx(2 * math.cosh(fn_image.c), rel=1e-14)
    assert word_trace(h, COMMUTATOR) == pytest.approx(-2.0, abs=1e-6)


def test_off_surface_identity():
    t = TriangleLengths(1.0, 1.0, 1.0)
    with pytest.raises(NotOnH):
        holonomy_from_lengths(t)
    h = holonomy_from_lengths(t, check=False)
    assert commutator_trace_plus_two(h) == pytest.approx(4 * collar_residual(t), rel=1e-13)
    with pytest.raises(DegenerateA):
        holonomy_from_lengths(TriangleLengths(0.0, 1.0, 1.0), check=False)


def test_conjugacy_invariance(fn_image):
    h = holonomy_from_lengths(fn_image)
    for w in ("aab", "abAb", "aBBa"):
        base = word_trace(h, W(w))
        for k in range(len(w)):
            assert word_trace(h, W(w[k:] + w[:k])) == pytest.approx(base, rel=1e-12)
        assert word_trace(h, W("b" + w + "B")) == pytest.approx(base, rel=1e-12)


def test_geodesic_half_lengths(fn_image):
    h = holonomy_from_lengths(fn_image)
    assert geodesic_half_length(h, W("a")) == pytest.approx(fn_image.a, rel=1e-14)
    with pytest.raises(NotHyperbolic):
        geodesic_half_length(h, COMMUTATOR)


def test_word_parsing():
    assert W("αβα⁻¹β⁻¹") == COMMUTATOR
    assert W("α β^-1").letters == "aB"
    assert W("abBA").reduced().letters == ""
    assert W("Bab b").cyclically_reduced().letters == "ab"
    assert W("aabAB").abelianization == (1, 0)
    with pytest.raises(WordParseError):
        W("abc")


def test_foliation_half_length_examples():
    # c = a + b here, the sign +1 case
    p = CollarParams(-5.0, -1.0)
    a, b, c = invert_pi_delta(p)
    assert c == a + b
    assert foliation_half_length(p, W("a")) == a
    assert foliation_half_length(p, W("ab")) == pytest.approx(c, rel=1e-15)
    assert foliation_half_length(p, W("aB")) == pytest.approx(abs(a - b), rel=1e-15)
    assert foliation_half_length(p * 5.0, W("aab")) == pytest.approx(
        5.0 * foliation_half_length(p, W("aab")), rel=1e-14)
    q = CollarParams(1.0, 7.0)
    a, b, c = invert_pi_delta(q)
    assert c == abs(a - b)
    assert foliation_half_length(q, W("ab")) == pytest.approx(c, rel=1e-15)
    for bad in ("abAB", "aaaab", "aabb"):
        with pytest.raises(UnsupportedWord):
            foliation_half_length(p, W(bad))


def test_ray_limit_examples():
    rows = ray_limit_experiment(CollarParams(6, -2), W("b"), [1, 10, 100, 1000])
    pred = foliation_half_length(CollarParams(6, -2), W("b"))
    assert abs(rows[-1][1] - pred) < 0.01 * pred
    assert all(v is None for _, v in ray_limit_experiment(CollarParams(6, -2), COMMUTATOR, [1, 10]))
    rows = ray_limit_experiment(CollarParams(6, -2), W("a"), [1, 10, 100])
    for t, v in rows:
        assert v == pytest.approx(invert_pi_H(CollarParams(6 * t, -2 * t)).a / t, rel=1e-14)
    with pytest.raises(ValueError):
        ray_limit_experiment(CollarParams(0, 0), W("a"), [1])


def test_theta_roundtrip(symmetric):
    back = theta_roundtrip(symmetric)
    assert max(abs(u - v) for u, v in zip(back, symmetric)) < 1e-12
    for t in (50.0, 1000.0):
        lengths = invert_pi_H(CollarParams(6 * t, -2 * t))
        back = theta_roundtrip(lengths)
        for u, v in zip(back, lengths):
            assert u == pytest.approx(v, rel=1e-6)
