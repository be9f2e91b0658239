"""Seeded property suites shared by the CLI ``verify`` command and the tests."""

import math
from dataclasses import dataclass

import numpy as np

from .converters import FenchelNielsen, cp_to_fn, fn_to_cp, fn_to_triangle
from .geometry import (
    CollarParams,
    TriangleLengths,
    collar_residual,
    collar_residual_relative,
    invert_pi_delta,
    invert_pi_H,
    project_pi,
)
from .holonomy import (
    COMMUTATOR,
    TorusWord,
    foliation_half_length,
    holonomy_from_lengths,
    ray_limit_experiment,
    theta_roundtrip,
    word_trace,
)
from .metric import CollarMetric, comparison_defect, gaussian_curvature
from .numerics import DEFAULT_TOL

SUITES = ("metric", "traces", "roundtrip", "limits")
LIMIT_T_VALUES = (1.0, 10.0, 100.0, 1000.0)
# Cauchy gaps at the last t sit at the rounding floor and may jitter there
GAP_FLOOR = 1e-12


@dataclass(frozen=True)
class PropertyResult:
    suite: str
    name: str
    passed: bool
    worst: float
    threshold: float
    cases: int

    def as_dict(self):
        return {
            "suite": self.suite,
            "property": self.name,
            "passed": self.passed,
            "worst": self.worst,
            "threshold": self.threshold,
            "cases": self.cases,
        }


def random_params(rng, radius):
    """Collar parameters uniform in angle, uniform in norm up to ``radius``."""
    r = rng.uniform(0.0, radius)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    return CollarParams(r * math.cos(theta), r * math.sin(theta))


def random_direction(rng):
    theta = rng.uniform(0.0, 2.0 * math.pi)
    return CollarParams(math.cos(theta), math.sin(theta))


def _result(suite, name, values, threshold, cases=None):
    worst = max(values) if values else 0.0
    return PropertyResult(suite, name, bool(worst <= threshold), float(worst), threshold,
                          len(values) if cases is None else cases)


def suite_metric(rng, n_cases, tol=DEFAULT_TOL):
    curv, defect = [], []
    for _ in range(n_cases):
        m = CollarMetric.from_lengths(invert_pi_H(random_params(rng, 20.0), tol))
        # the curvature stencil needs room inside [-1, 1]
        curv.append(abs(gaussian_curvature(m, rng.uniform(-0.9, 0.9)) + 1.0))
        defect.append(comparison_defect(m, rng.uniform(-1.0, 1.0)))
    return [
        _result("metric", "gaussian_curvature_is_minus_one", curv, 1e-3),
        _result("metric", "comparison_defect_at_most_two", defect, 2.0),
    ]


def suite_traces(rng, n_cases, tol=DEFAULT_TOL):
    identity, cusp = [], []
    for _ in range(n_cases):
        t = TriangleLengths(*rng.uniform(0.01, 3.0, 3))
        h = holonomy_from_lengths(t, check=False)
        r = 4.0 * collar_residual(t)
        identity.append(abs(word_trace(h, COMMUTATOR) + 2.0 - r) / max(1.0, abs(r)))
        on_h = invert_pi_H(random_params(rng, 8.0), tol)
        cusp.append(abs(word_trace(holonomy_from_lengths(on_h), COMMUTATOR) + 2.0))
    return [
        _result("traces", "commutator_trace_identity", identity, 1e-8),
        _result("traces", "commutator_parabolic_on_H", cusp, 1e-9),
    ]


def suite_roundtrip(rng, n_cases, tol=DEFAULT_TOL):
    h_err, d_err, fn_res, fn_err, theta_err = [], [], [], [], []
    for _ in range(n_cases):
        # dyadic inputs make the cone round trip exact in binary
        p = CollarParams(*(np.round(rng.uniform(-1e4, 1e4, 2) * 64.0) / 64.0))
        back = project_pi(invert_pi_H(p, tol))
        h_err.append((back - p).norm)
        d_err.append((project_pi(invert_pi_delta(p)) - p).norm)

        fn = FenchelNielsen.from_half(rng.uniform(1e-3, 5.0), rng.uniform(-5.0, 5.0))
        fn_res.append(abs(collar_residual_relative(fn_to_triangle(fn))))
        again = cp_to_fn(fn_to_cp(fn), tol)
        fn_err.append(max(abs(again.two_ell - fn.two_ell), abs(again.two_tau - fn.two_tau)))

        t = invert_pi_H(random_params(rng, 20.0), tol)
        theta_err.append(max(abs(u - v) for u, v in zip(theta_roundtrip(t), t)))
    return [
        _result("roundtrip", "pi_inverse_H", h_err, 1e-9),
        _result("roundtrip", "pi_inverse_Delta_exact", d_err, 0.0),
        _result("roundtrip", "fn_triangle_on_H", fn_res, 1e-10),
        _result("roundtrip", "fn_cp_fn", fn_err, 1e-9),
        _result("roundtrip", "theta", theta_err, 1e-9),
    ]


def cauchy_gaps(values):
    return [abs(values[k + 1] - values[k]) for k in range(len(values) - 1)]


def gaps_non_increasing(gaps):
    return all(gaps[k + 1] <= gaps[k] + GAP_FLOOR for k in range(len(gaps) - 1))


def suite_limits(rng, n_cases, tol=DEFAULT_TOL):
    rel, monotone = [], []
    for _ in range(n_cases):
        p = random_direction(rng)
        for word in ("a", "b", "ab"):
            w = TorusWord(word)
            rows = ray_limit_experiment(p, w, LIMIT_T_VALUES, tol)
            values = [v for _, v in rows]
            if any(v is None for v in values):
                rel.append(math.inf)
                monotone.append(1.0)
                continue
            pred = foliation_half_length(p, w)
            rel.append(abs(values[-1] - pred) / max(pred, 1e-300))
            monotone.append(0.0 if gaps_non_increasing(cauchy_gaps(values)) else 1.0)
    return [
        _result("limits", "limit_matches_foliation_length", rel, 0.01),
        _result("limits", "cauchy_gaps_non_increasing", monotone, 0.0),
    ]


_RUNNERS = {
    "metric": suite_metric,
    "traces": suite_traces,
    "roundtrip": suite_roundtrip,
    "limits": suite_limits,
}


def run_suite(name, seed=0, n_cases=100, tol=DEFAULT_TOL):
    """Run one suite (or ``"all"``) with a fresh generator per suite."""
    names = SUITES if name == "all" else (name,)
    results = []
    for suite in names:
        if suite not in _RUNNERS:
            raise ValueError(f"unknown suite {suite!r}")
        rng = np.random.default_rng([seed, SUITES.index(suite)])
        results.extend(_RUNNERS[suite](rng, n_cases, tol))
    return results
