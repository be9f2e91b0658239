"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed even without ``-s``.
"""

import math
import time

import numpy as np
import pytest

from collar import (
    CollarMetric,
    CollarParams,
    DehnThurston,
    FenchelNielsen,
    TriangleLengths,
    collar_residual,
    cross_section,
    curve_length,
    depth_check,
    dt_to_cp,
    fn_dt_degeneration_gap,
    fn_to_triangle,
    invert_pi_delta,
    invert_pi_H,
    project_pi,
)
from collar.geometry import is_convex_polygon, polygon_contains
from collar.holonomy import COMMUTATOR, TorusWord, foliation_half_length, holonomy_from_lengths, ray_limit_experiment, theta_roundtrip, word_trace
from collar.metric import comparison_defect, gaussian_curvature
from collar.verify import cauchy_gaps, gaps_non_increasing, random_direction, random_params


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail, elapsed, budget):
        status = "PASS" if ok and elapsed < budget else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {status}  {detail}  [{elapsed:.3f} s / {budget:g} s]")
        assert ok, detail
        assert elapsed < budget, f"took {elapsed:.3f} s, budget {budget} s"

    return emit


def test_criterion_01_fn_images_lie_on_H(report):
    rng = np.random.default_rng(101)
    ells = 5.0 - rng.uniform(0.0, 5.0, 1000)
    taus = rng.uniform(-5.0, 5.0, 1000)
    start = time.perf_counter()
    worst = 0.0
    for ell, tau in zip(ells, taus):
        t = fn_to_triangle(FenchelNielsen.from_half(ell, tau))
        scale = 1.0 + math.cosh(t.a) * math.cosh(t.b) * math.cosh(t.c)
        worst = max(worst, abs(collar_residual(t)) / scale)
    elapsed = time.perf_counter() - start
    report(1, worst <= 1e-10, f"max |residual|/(1+P) = {worst:.2e} (<= 1e-10)", elapsed, 1.0)


def test_criterion_02_homeomorphism_round_trips(report):
    rng = np.random.default_rng(102)
    points = []
    while len(points) < 10000:
        x, y = np.round(rng.uniform(-1e4, 1e4, 2) * 64.0) / 64.0
        if math.hypot(x, y) <= 1e4:
            points.append(CollarParams(float(x), float(y)))
    start = time.perf_counter()
    worst_h = worst_d = 0.0
    for p in points:
        worst_h = max(worst_h, (project_pi(invert_pi_H(p)) - p).norm)
        worst_d = max(worst_d, (project_pi(invert_pi_delta(p)) - p).norm)
    elapsed = time.perf_counter() - start
    ok = worst_h <= 1e-9 and worst_d == 0.0
    report(2, ok, f"H round trip {worst_h:.2e} (<= 1e-9), Delta round trip {worst_d:.1e} (exact)",
           elapsed, 5.0)


def test_criterion_03_curvature_is_minus_one(report):
    rng = np.random.default_rng(103)
    metrics = [CollarMetric.from_lengths(invert_pi_H(random_params(rng, 20.0))) for _ in range(100)]
    heights = np.linspace(-0.9, 0.9, 10)
    start = time.perf_counter()
    worst = max(abs(gaussian_curvature(m, float(y)) + 1.0) for m in metrics for y in heights)
    elapsed = time.perf_counter() - start
    report(3, worst <= 1e-3, f"max |K + 1| = {worst:.2e} (<= 1e-3)", elapsed, 5.0)


def test_criterion_04_comparison_bound(report):
    rng = np.random.default_rng(104)
    cases = [(CollarMetric.from_lengths(invert_pi_H(random_params(rng, 50.0))), rng.uniform(-1, 1))
             for _ in range(1000)]
    start = time.perf_counter()
    worst = max(comparison_defect(m, y) for m, y in cases)
    elapsed = time.perf_counter() - start
    report(4, worst <= 2.0, f"max defect = {worst:.4f} (<= 2, no slack)", elapsed, 1.0)


def test_criterion_05_trace_relation(report):
    rng = np.random.default_rng(105)
    triples = [TriangleLengths(*rng.uniform(0.01, 3.0, 3)) for _ in range(1000)]
    on_h = [invert_pi_H(random_params(rng, 8.0)) for _ in range(1000)]
    start = time.perf_counter()
    worst_identity = 0.0
    for t in triples:
        r = 4.0 * collar_residual(t)
        tr = word_trace(holonomy_from_lengths(t, check=False), COMMUTATOR)
        worst_identity = max(worst_identity, abs(tr + 2.0 - r) / max(1.0, abs(r)))
    worst_cusp = max(abs(word_trace(holonomy_from_lengths(t), COMMUTATOR) + 2.0) for t in on_h)
    elapsed = time.perf_counter() - start
    ok = worst_identity <= 1e-8 and worst_cusp <= 1e-9
    report(5, ok, f"identity rel err {worst_identity:.2e} (<= 1e-8), |tr+2| on H {worst_cusp:.2e} (<= 1e-9)",
           elapsed, 1.0)


def test_criterion_06_theta_round_trip(report):
    rng = np.random.default_rng(106)
    points = [invert_pi_H(random_params(rng, 20.0)) for _ in range(1000)]
    start = time.perf_counter()
    worst = max(max(abs(u - v) for u, v in zip(theta_roundtrip(t), t)) for t in points)
    elapsed = time.perf_counter() - start
    report(6, worst <= 1e-9, f"max error = {worst:.2e} (<= 1e-9)", elapsed, 1.0)


def test_criterion_07_radial_compactification(report):
    rng = np.random.default_rng(107)
    directions = [random_direction(rng) for _ in range(10)]
    t_values = [1.0, 10.0, 100.0, 1000.0]
    start = time.perf_counter()
    worst_rel, monotone = 0.0, True
    for p in directions:
        for word in ("a", "b", "ab"):
            w = TorusWord(word)
            values = [v for _, v in ray_limit_experiment(p, w, t_values)]
            pred = foliation_half_length(p, w)
            worst_rel = max(worst_rel, abs(values[-1] - pred) / pred)
            monotone = monotone and gaps_non_increasing(cauchy_gaps(values))
    elapsed = time.perf_counter() - start
    ok = worst_rel <= 0.01 and monotone
    report(7, ok, f"max rel gap at t=1e3 {worst_rel:.2e} (<= 1e-2), Cauchy gaps non-increasing: {monotone}",
           elapsed, 10.0)


def test_criterion_08_fn_to_dt_degeneration(report):
    rng = np.random.default_rng(108)
    samples = [(rng.uniform(0.5, 5.0), rng.uniform(-5.0, 5.0)) for _ in range(100)]
    t = 100.0
    start = time.perf_counter()
    worst = 0.0
    for ell, tau in samples:
        gap = fn_dt_degeneration_gap(FenchelNielsen.from_half(t * ell, t * tau))
        scale = dt_to_cp(DehnThurston.from_half(ell, tau)).norm * t
        worst = max(worst, gap / scale)
    elapsed = time.perf_counter() - start
    report(8, worst < 0.01, f"max gap / (t |dt_to_cp|) = {worst:.2e} (< 1e-2)", elapsed, 1.0)


def test_criterion_09_boundary_and_depth(report):
    rng = np.random.default_rng(109)
    metrics = [CollarMetric.from_lengths(invert_pi_H(random_params(rng, 8.0))) for _ in range(20)]
    start = time.perf_counter()
    worst_period = worst_depth = 0.0
    for m in metrics:
        period = curve_length(m, [(-1.0, 1.0), (1.0, 1.0)])
        worst_period = max(worst_period, abs(period - 2.0 * m.a / math.tanh(m.a)))
        worst_depth = max(worst_depth, abs(depth_check(m) - m.kappa))
    elapsed = time.perf_counter() - start
    ok = worst_period <= 1e-9 and worst_depth <= 1e-3
    report(9, ok, f"period err {worst_period:.2e} (<= 1e-9), depth err {worst_depth:.2e} (<= 1e-3)",
           elapsed, 10.0)


def test_criterion_10_cross_sections(report):
    start = time.perf_counter()
    sections = [cross_section(C, 64) for C in (3.0, 4.0, 5.0)]
    convex = all(is_convex_polygon(s) for s in sections)
    nested = all(polygon_contains(outer, q)
                 for inner, outer in zip(sections, sections[1:]) for q in inner)
    elapsed = time.perf_counter() - start
    report(10, convex and nested, f"convex: {convex}, nested: {nested}", elapsed, 1.0)
