"""Collar parameters for hyperbolic collars and measured foliations on the annulus."""

from .converters import (
    DehnThurston,
    FenchelNielsen,
    cp_to_dt,
    cp_to_fn,
    dt_to_cp,
    dt_to_triangle,
    fn_dt_degeneration_gap,
    fn_to_cp,
    fn_to_triangle,
    triangle_to_dt,
    triangle_to_fn,
)
from .errors import CollarError, DomainError, GridTooCoarse, NoConvergence
from .foliations import (
    LinearFoliation,
    ShortsCase,
    ShortsMeasures,
    ShortsTag,
    annulus_defect_vs_metric,
    boundary_measures,
    classify_shorts,
    foliation_from_lengths,
    transverse_measure,
)
from .geometry import (
    CollarParams,
    TriangleLengths,
    collar_residual,
    cross_section,
    delta_residual,
    invert_pi_delta,
    invert_pi_H,
    project_pi,
)
from .holonomy import (
    HolonomyPair,
    TorusWord,
    foliation_half_length,
    geodesic_half_length,
    holonomy_from_lengths,
    ray_limit_experiment,
    theta_roundtrip,
    word_trace,
)
from .metric import CollarMetric, comparison_defect, curve_length, depth_check, gaussian_curvature, tensor_at
from .numerics import DEFAULT_TOL, Tolerance

__version__ = "0.1.0"
