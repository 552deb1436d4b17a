"""Moebius structures on the circle: semi-metrics, charts, cross-ratios, axioms.

A Moebius structure is represented by one bounded base semi-metric on angles;
every other member of the class is obtained by metric inversion

    d_w(x, y) = d(x, y) / (d(x, w) * d(y, w)),

which sends ``w`` to infinity.  Cross-ratio pairs

    r1 = |xz||yu| / (|xy||zu|),    r2 = |xu||yz| / (|xy||zu|)

are invariants of the structure; a pair of point-pairs ((x,y), (z,u)) is
*harmonic* when r1 == r2, i.e. |xz||yu| == |xu||yz|.

Axioms checked statistically by the harness, in cross-ratio coordinates:

    monotonicity(alpha):  1 >= r1 + alpha*r2  and  1 >= alpha*r1 + r2
                          on separating tetrads, for a fixed 0 < alpha < 1;
    ptolemy:              r1 + r2 >= 1 on all admissible tetrads.

The reference instance is the *canonical* structure, whose base distance is
the chordal metric 2*|sin((t1 - t2)/2)|; its chart at any ``w`` agrees with
the standard metric of the real line under stereographic projection from
``w``, up to one global scale.  ``chart_coord``/``chart_point`` fix that
homothety so chart coordinates of the canonical structure *are* chart
distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .circle import (
    DEFAULT_ANGLE_TOL,
    CirclePoint,
    PointPair,
    angular_distance,
    normalize_angle,
    separates,
)
from .errors import (
    ConfigError,
    DegenerateTuple,
    NoSeparatingSample,
    NotSeparating,
    StructureLoadError,
)

#: Default relative tolerance for harmonicity tests.
HARMONIC_TOL = 1e-9


# ---------------------------------------------------------------------------
# Charts (shared coordinate system for I/O and canonical closed forms)
# ---------------------------------------------------------------------------

def chart_coord(omega_theta: float, theta: float,
                tol: float = DEFAULT_ANGLE_TOL) -> float:
    """Chart coordinate of ``theta`` in the chart taking ``omega_theta`` to infinity.

    Normalized so that for the canonical structure coordinate differences
    equal chart distances.  Returns +inf at ``omega_theta`` itself.
    """
    if angular_distance(omega_theta, theta) <= tol:
        return math.inf
    half = 0.5 * (omega_theta - theta)
    return 0.5 * math.cos(half) / math.sin(half)


def chart_point(omega_theta: float, t: float) -> CirclePoint:
    """Inverse of ``chart_coord``: the circle point with chart coordinate ``t``."""
    if math.isinf(t):
        return CirclePoint(omega_theta)
    return CirclePoint(omega_theta - 2.0 * math.atan2(1.0, 2.0 * t))


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MoebiusStructure:
    """A Moebius structure given by one bounded base semi-metric on angles.

    ``base`` must be symmetric, zero exactly on the diagonal, positive and
    finite elsewhere, and side-effect-free.  ``exact_rho`` and
    ``exact_line_point`` are optional closed-form kernels (provided by the
    canonical structure); when absent, callers fall back to monotone
    bisection.
    """

    label: str
    base: Callable[[float, float], float]
    exact_rho: Optional[Callable[[float, float, float], float]] = None
    exact_line_point: Optional[Callable[[float, float, float, float], float]] = None

    def distance(self, x: CirclePoint, y: CirclePoint) -> float:
        return self.base(x.theta, y.theta)

    def __repr__(self):
        return f"MoebiusStructure({self.label!r})"


def _chord(t1: float, t2: float) -> float:
    return 2.0 * abs(math.sin(0.5 * (t1 - t2)))


def _canonical_rho(p_th: float, q_th: float, x_th: float) -> float:
    # Reflect x through one axis endpoint in the chart at the other; use the
    # endpoint farther from x as the chart pole for conditioning.
    if angular_distance(p_th, x_th) < angular_distance(q_th, x_th):
        mirror, pole = p_th, q_th
    else:
        mirror, pole = q_th, p_th
    cm = chart_coord(pole, mirror)
    cx = chart_coord(pole, x_th)
    return chart_point(pole, 2.0 * cm - cx).theta


def _canonical_line_point(x_th: float, y_th: float, z0_th: float, tau: float) -> float:
    # Line coordinate grows toward y; solve in the chart at y where the
    # moving endpoint is an exponential interpolation from x.
    cx = chart_coord(y_th, x_th)
    c0 = chart_coord(y_th, z0_th)
    return chart_point(y_th, cx + (c0 - cx) * math.exp(tau)).theta


def canonical() -> MoebiusStructure:
    """The canonical structure on the circle (chordal base distance)."""
    return MoebiusStructure(
        label="canonical",
        base=_chord,
        exact_rho=_canonical_rho,
        exact_line_point=_canonical_line_point,
    )


def snowflake(p: float) -> MoebiusStructure:
    """Chordal distance raised to the power ``p`` (0 < p <= 1)."""
    if not (0.0 < p <= 1.0):
        raise ConfigError(f"snowflake exponent must be in (0, 1], got {p}")

    def base(t1: float, t2: float, _p=p) -> float:
        return _chord(t1, t2) ** _p

    return MoebiusStructure(label=f"snowflake:{p:g}", base=base)


def structure_from_name(spec: str) -> MoebiusStructure:
    """Resolve a structure specification: ``canonical``, ``snowflake:<p>``, ``table:<file>``."""
    if spec == "canonical":
        return canonical()
    if spec.startswith("snowflake:"):
        try:
            p = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise StructureLoadError(f"bad snowflake exponent in {spec!r}") from exc
        return snowflake(p)
    if spec.startswith("table:"):
        from .tables import load_table_structure

        return load_table_structure(spec.split(":", 1)[1])
    raise StructureLoadError(f"unknown structure {spec!r}")


@dataclass(frozen=True)
class ChartMetric:
    """The semi-metric of the structure with infinitely remote point ``omega``."""

    structure: MoebiusStructure
    omega: CirclePoint
    tol: float = DEFAULT_ANGLE_TOL

    def distance(self, x: CirclePoint, y: CirclePoint) -> float:
        if x.almost(y, self.tol):
            return 0.0
        x_is_omega = x.almost(self.omega, self.tol)
        y_is_omega = y.almost(self.omega, self.tol)
        if x_is_omega or y_is_omega:
            return math.inf
        d = self.structure.base
        return d(x.theta, y.theta) / (
            d(x.theta, self.omega.theta) * d(y.theta, self.omega.theta)
        )


def chart_distance(cm: ChartMetric, x: CirclePoint, y: CirclePoint) -> float:
    """Metric-inversion distance; +inf iff exactly one argument is omega."""
    return cm.distance(x, y)


# ---------------------------------------------------------------------------
# Tetrads and cross-ratios
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Tetrad:
    """Ordered 4-tuple of circle points."""

    x: CirclePoint
    y: CirclePoint
    z: CirclePoint
    u: CirclePoint

    def points(self) -> tuple[CirclePoint, ...]:
        return (self.x, self.y, self.z, self.u)

    def multiplicity(self, tol: float = DEFAULT_ANGLE_TOL) -> int:
        """Largest number of coinciding entries."""
        pts = self.points()
        best = 1
        for i in range(4):
            count = sum(1 for j in range(4) if pts[i].almost(pts[j], tol))
            best = max(best, count)
        return best

    def is_admissible(self, tol: float = DEFAULT_ANGLE_TOL) -> bool:
        """No entry occurs three or four times."""
        return self.multiplicity(tol) <= 2

    def is_nondegenerate(self, tol: float = DEFAULT_ANGLE_TOL) -> bool:
        return self.multiplicity(tol) == 1


@dataclass(frozen=True, slots=True)
class CrossRatioPair:
    r1: float
    r2: float

    @property
    def defect(self) -> float:
        """Relative harmonicity defect |r1 - r2| / max(r1, r2)."""
        m = max(self.r1, self.r2)
        if m == 0.0:
            return 0.0
        return abs(self.r1 - self.r2) / m


def _products(M: MoebiusStructure, q: Tetrad) -> tuple[float, float, float]:
    d = M.base
    x, y, z, u = q.x.theta, q.y.theta, q.z.theta, q.u.theta
    a = d(x, z) * d(y, u)
    b = d(x, u) * d(y, z)
    c = d(x, y) * d(z, u)
    return a, b, c


def cross_ratio(M: MoebiusStructure, q: Tetrad,
                tol: float = DEFAULT_ANGLE_TOL) -> CrossRatioPair:
    """Cross-ratio pair of a nondegenerate tetrad in the base semi-metric."""
    if not q.is_nondegenerate(tol):
        raise DegenerateTuple("cross_ratio requires a nondegenerate tetrad")
    a, b, c = _products(M, q)
    return CrossRatioPair(a / c, b / c)


def cross_ratio_in_chart(cm: ChartMetric, q: Tetrad) -> CrossRatioPair:
    """Cross-ratio pair computed with a chart semi-metric (omega not in q)."""
    d = cm.distance
    a = d(q.x, q.z) * d(q.y, q.u)
    b = d(q.x, q.u) * d(q.y, q.z)
    c = d(q.x, q.y) * d(q.z, q.u)
    return CrossRatioPair(a / c, b / c)


# ---------------------------------------------------------------------------
# Harmonic pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class HarmonicPair:
    """A pair q = (a, b) of point-pairs; ``a`` is the left axis, ``b`` the right.

    The unordered quotient is represented by normalized comparison
    (``hm_matches``); the swap involution exchanges the two axes.
    """

    a: PointPair
    b: PointPair

    def swapped(self) -> "HarmonicPair":
        return HarmonicPair(self.b, self.a)

    def axes(self) -> tuple[PointPair, PointPair]:
        return (self.a, self.b)

    def points(self) -> tuple[CirclePoint, ...]:
        return (*self.a.points(), *self.b.points())

    def defect(self, M: MoebiusStructure) -> float:
        return harmonic_defect(M, self.a, self.b)

    def hm_matches(self, other: "HarmonicPair",
                   tol: float = DEFAULT_ANGLE_TOL) -> bool:
        """Equality as unordered harmonic pairs, within angular tolerance."""
        return (self.a.matches(other.a, tol) and self.b.matches(other.b, tol)) or (
            self.a.matches(other.b, tol) and self.b.matches(other.a, tol)
        )


def harmonic_defect(M: MoebiusStructure, a: PointPair, b: PointPair) -> float:
    """Relative defect |r1 - r2| / max(r1, r2) of the 4-tuple (a.p, a.q, b.p, b.q)."""
    d = M.base
    x, y, z, u = a.p.theta, a.q.theta, b.p.theta, b.q.theta
    lhs = d(x, z) * d(y, u)
    rhs = d(x, u) * d(y, z)
    m = max(lhs, rhs)
    if m == 0.0:
        return 0.0
    return abs(lhs - rhs) / m


def harmonic_defect_log(M: MoebiusStructure, a: PointPair, b: PointPair) -> float:
    """Signed defect ln(|xz||yu| / (|xu||yz|)); zero exactly at harmonicity."""
    d = M.base
    x, y, z, u = a.p.theta, a.q.theta, b.p.theta, b.q.theta
    return (
        math.log(d(x, z)) + math.log(d(y, u))
        - math.log(d(x, u)) - math.log(d(y, z))
    )


def is_harmonic(M: MoebiusStructure, a: PointPair, b: PointPair,
                tol: float = HARMONIC_TOL,
                angle_tol: float = DEFAULT_ANGLE_TOL) -> bool:
    """True iff the relative harmonic defect of (a, b) is at most ``tol``.

    On structures satisfying the monotonicity axiom a harmonic pair always
    separates; that implication is exercised by the test suites rather than
    enforced here.
    """
    pts = (a.p, a.q, b.p, b.q)
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i].almost(pts[j], angle_tol):
                raise DegenerateTuple("harmonicity requires 4 distinct points")
    return harmonic_defect(M, a, b) <= tol


def harmonic_pair(M: MoebiusStructure, a: PointPair, b: PointPair,
                  tol: float = HARMONIC_TOL) -> HarmonicPair:
    """Validated constructor: checks the defect and the separation property."""
    if not is_harmonic(M, a, b, tol):
        raise DegenerateTuple(
            f"pair is not harmonic within tol={tol}: defect={harmonic_defect(M, a, b):.3g}"
        )
    if not separates(a, b):
        raise NotSeparating("harmonic pair candidate does not separate")
    return HarmonicPair(a, b)


# ---------------------------------------------------------------------------
# Axiom checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomParams:
    """Shared knobs for axiom checking and estimation."""

    alpha: float = 0.9
    harmonic_tol: float = HARMONIC_TOL
    samples: int = 10_000
    seed: int = 0
    min_gap: float = 1e-2  # minimum angular gap enforced by samplers

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")


def check_m_alpha(M: MoebiusStructure, q: Tetrad, alpha: float,
                  tol: float = DEFAULT_ANGLE_TOL) -> tuple[float, float]:
    """Signed slacks (1 - r1 - alpha*r2, 1 - alpha*r1 - r2) of the monotonicity axiom.

    Requires (x, y) and (z, u) to separate each other; both slacks are
    nonnegative (up to the caller's tolerance) iff the axiom holds on ``q``.
    """
    if not separates(PointPair(q.x, q.y), PointPair(q.z, q.u), tol):
        raise NotSeparating("monotonicity axiom applies to separating tetrads only")
    r = cross_ratio(M, q, tol)
    return (1.0 - r.r1 - alpha * r.r2, 1.0 - alpha * r.r1 - r.r2)


def check_ptolemy(M: MoebiusStructure, q: Tetrad,
                  tol: float = DEFAULT_ANGLE_TOL) -> float:
    """Signed slack r1 + r2 - 1; nonnegative iff the Ptolemy axiom holds on ``q``.

    Accepts admissible degenerate tetrads (the axiom quantifies over every
    4-tuple); the slack is +inf when |xy||zu| vanishes.
    """
    if not q.is_admissible(tol):
        raise DegenerateTuple("ptolemy slack requires an admissible tetrad")
    a, b, c = _products(M, q)
    if c == 0.0:
        return math.inf
    return (a + b - c) / c


def estimate_max_alpha(M: MoebiusStructure, params: AxiomParams) -> float:
    """Monte-Carlo estimate of the largest alpha for which monotonicity holds.

    Minimum over sampled separating tetrads of min((1-r1)/r2, (1-r2)/r1),
    clamped to [0, 1].  Deterministic for a fixed seed.  The estimate is a
    statistic of the sampler, not a certified bound.
    """
    from .sampling import sample_tetrad, stream_rng

    best = math.inf
    found = 0
    for i in range(params.samples):
        rng = stream_rng(params.seed, i)
        try:
            q = sample_tetrad("separating", rng, min_gap=params.min_gap)
        except NoSeparatingSample:
            continue
        found += 1
        r = cross_ratio(M, q)
        val = min((1.0 - r.r1) / r.r2, (1.0 - r.r2) / r.r1)
        best = min(best, val)
    if found == 0:
        raise NoSeparatingSample("no separating tetrad produced")
    return min(1.0, max(0.0, best))
