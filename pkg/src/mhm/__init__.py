"""Harmonic-pair calculus for Moebius structures on the circle.

Circle combinatorics, cross-ratio invariants, harmonic pairs and their
lines, common perpendiculars and strips, and the zig-zag distance with
constructive upper bounds and certified local lower bounds, plus a seeded
statistical verification harness.
"""

from .circle import (
    Arc,
    CirclePoint,
    DEFAULT_ANGLE_TOL,
    PointPair,
    TAU,
    angular_distance,
    arc_between,
    arc_contains,
    normalize_angle,
    separates,
    strong_causal,
)
from .errors import (
    Boundary,
    ConfigError,
    DegenerateTuple,
    FormatError,
    InvalidPath,
    MhmError,
    NoCommonAxis,
    NoConvergence,
    NoSeparatingSample,
    NotAStrip,
    NotSeparating,
    NotStrongCausal,
    OnAxis,
    OrientationError,
    StructureLoadError,
    TargetOutsideArc,
)
from .lines import (
    DistortionReport,
    Line,
    Strip,
    WidthBoundsReport,
    common_perpendicular,
    is_narrow,
    line_distance,
    line_point,
    line_through,
    make_strip,
    ratio_distortion,
    rho,
    rho_bisect,
    width_bounds,
)
from .reports import ExperimentConfig, Report, format_chart_value
from .sampling import (
    perturb_harmonic,
    sample_harmonic,
    sample_strip_pairs,
    sample_tetrad,
    stream_rng,
)
from .structures import (
    AxiomParams,
    ChartMetric,
    CrossRatioPair,
    HARMONIC_TOL,
    HarmonicPair,
    MoebiusStructure,
    Tetrad,
    canonical,
    chart_coord,
    chart_distance,
    chart_point,
    check_m_alpha,
    check_ptolemy,
    cross_ratio,
    cross_ratio_in_chart,
    estimate_max_alpha,
    harmonic_defect,
    harmonic_pair,
    is_harmonic,
    snowflake,
    structure_from_name,
)
from .suites import SUITES, run_suite
from .tables import chordal_table, load_table_structure, write_table
from .zigzag import (
    CertificateParams,
    ShiftParams,
    Side,
    ZZPath,
    certificate_params,
    compact_path,
    concat_paths,
    connect,
    delta_lower_certificate,
    delta_upper,
    empty_path,
    f_map,
    hm_displacement,
    parabolic_shift,
    path_length,
    validate_path,
)

__version__ = "0.1.0"
