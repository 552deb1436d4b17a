"""Zig-zag paths and the zz-distance on harmonic pairs.

A zz-path is a finite (possibly empty) chain of line segments where
consecutive segments meet at a shared harmonic vertex and switch between the
vertex's two axes; its length is the sum of side lengths.  The zz-distance
delta is the infimum of path lengths.  It is approximated, never computed
exactly:

  * upper bounds come from constructive routes (a single segment on a shared
    axis, three-segment detours through a common perpendicular, and a
    general route built from two prescribed shifts plus one segment,
    at most seven sides), optionally refined by a derivative-free
    coordinate search over the shift advances;
  * lower bounds come from a certificate valid in a small neighborhood:
    with c = alpha*(1+alpha)*sqrt(alpha)/16 and t = 2*asinh(c*eps), any path
    shorter than t keeps every vertex within the eps-neighborhood and moves
    each chart coordinate by at most length/c, so

        delta >= c * max(coordinate displacements)     (inside), or
        delta >= t/2                                   (target outside).

Chart displacements are measured with the base semi-metric rescaled so that
|xy|_w = 1 for the reference pair, and are minimized over the axis/endpoint
labelings of both pairs, which keeps the certificate conservative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circle import CirclePoint, PointPair, in_open_arc, strong_causal
from .errors import (
    ConfigError,
    InvalidPath,
    MhmError,
    NoCommonAxis,
    NoConvergence,
    TargetOutsideArc,
)
from .lines import Line, common_perpendicular, line_distance, rho
from .structures import HarmonicPair, MoebiusStructure, chart_coord

HM_EQ_TOL = 1e-12


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Side:
    """A path side: the segment runs on the line with this axis."""

    axis: PointPair


@dataclass(frozen=True)
class ZZPath:
    """Alternating chain of segments; ``vertices`` has one more entry than ``sides``."""

    vertices: tuple[HarmonicPair, ...]
    sides: tuple[Side, ...]

    @property
    def n_sides(self) -> int:
        return len(self.sides)

    def is_empty(self) -> bool:
        return not self.sides


def empty_path(q: HarmonicPair) -> ZZPath:
    return ZZPath((q,), ())


def validate_path(M: MoebiusStructure, path: ZZPath,
                  tol: float = 1e-9, *,
                  axis_tol: float = 1e-9) -> tuple[bool, str | None]:
    """Structural validation; returns (ok, first violation or None)."""
    if len(path.vertices) != len(path.sides) + 1 and path.vertices:
        return False, "vertex/side count mismatch"
    if not path.vertices and path.sides:
        return False, "sides without vertices"
    for i, vert in enumerate(path.vertices):
        if vert.defect(M) > tol:
            return False, f"vertex {i} harmonic defect {vert.defect(M):.3g} > {tol}"
    for i, side in enumerate(path.sides):
        for j in (i, i + 1):
            vert = path.vertices[j]
            if not (vert.a.matches(side.axis, axis_tol) or vert.b.matches(side.axis, axis_tol)):
                return False, f"side {i} axis is not an axis of vertex {j}"
    for i in range(len(path.sides) - 1):
        if path.sides[i].axis.matches(path.sides[i + 1].axis, axis_tol):
            return False, f"sides {i},{i + 1} do not switch axes at their vertex"
    return True, None


def path_length(M: MoebiusStructure, path: ZZPath, *, tol: float = 1e-9) -> float:
    """Sum of side lengths; zero for an empty path.  Raises InvalidPath."""
    ok, reason = validate_path(M, path, tol)
    if not ok:
        raise InvalidPath(reason)
    total = 0.0
    for i, side in enumerate(path.sides):
        total += line_distance(M, path.vertices[i], path.vertices[i + 1])
    return total


def compact_path(path: ZZPath, *, axis_tol: float = 1e-9,
                 vertex_tol: float = HM_EQ_TOL) -> ZZPath:
    """Merge consecutive same-axis sides and drop null sides."""
    verts = list(path.vertices)
    sides = list(path.sides)
    changed = True
    while changed and sides:
        changed = False
        out_v = [verts[0]]
        out_s: list[Side] = []
        for side, vnext in zip(sides, verts[1:]):
            if vnext.hm_matches(out_v[-1], vertex_tol):
                changed = True  # null side
                continue
            if out_s and out_s[-1].axis.matches(side.axis, axis_tol):
                out_v[-1] = vnext  # merge collinear neighbors
                changed = True
                continue
            out_v.append(vnext)
            out_s.append(side)
        verts, sides = out_v, out_s
    return ZZPath(tuple(verts), tuple(sides))


def concat_paths(p1: ZZPath, p2: ZZPath, *, tol: float = 1e-9) -> ZZPath:
    """Join two paths at their shared endpoint, merging collinear borders."""
    if not p1.vertices:
        return p2
    if not p2.vertices:
        return p1
    if not p1.vertices[-1].hm_matches(p2.vertices[0], tol):
        raise InvalidPath("paths do not share an endpoint")
    return compact_path(
        ZZPath(p1.vertices + p2.vertices[1:], p1.sides + p2.sides),
        axis_tol=tol,
    )


# ---------------------------------------------------------------------------
# The shift map f and the prescribed shift
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShiftParams:
    """Search coordinates of a prescribed shift: f(tau, t) inside the box A_gamma."""

    tau: float
    t: float
    gamma: float


@dataclass(frozen=True)
class _FParts:
    vpp: CirclePoint
    q1: HarmonicPair
    q2: HarmonicPair
    s1: PointPair
    a1: PointPair


def _f_parts(M: MoebiusStructure, a: PointPair, v: CirclePoint, w: CirclePoint,
             tau: float, t: float) -> _FParts:
    # stage 1: slide (v, w) along the line with axis a
    line_a = Line(M, a.p, a.q, v, w)
    q1, v1, w1 = line_a.point_with_moving(tau)
    s1 = PointPair(v1, w1)
    # stage 2: slide a along the line with axis s1, toward v1
    line_s1 = Line(M, w1, v1, a.p, a.q)
    q2, x1, y1 = line_s1.point_with_moving(t)
    a1 = PointPair(x1, y1)
    # stage 3: project w back onto the line with axis a1
    vpp = rho(M, a1, w)
    return _FParts(vpp=vpp, q1=q1, q2=q2, s1=s1, a1=a1)


def f_map(M: MoebiusStructure, q: HarmonicPair, tau: float, t: float, *,
          w: CirclePoint | None = None) -> CirclePoint:
    """Three-stage shift map; f(0, t) = f(tau, 0) = v for all tau, t.

    ``q = (a, s)`` with s = (v, w); ``w`` selects the fixed endpoint of the
    right axis (default: the larger-angle endpoint).  The image lies in the
    open arc of ``a`` containing v.
    """
    if w is None:
        w = q.b.q
    v = q.b.other(w)
    return _f_parts(M, q.a, v, w, tau, t).vpp


def _shift_path(M: MoebiusStructure, q: HarmonicPair, parts: _FParts,
                w: CirclePoint) -> ZZPath:
    q3 = HarmonicPair(parts.a1, PointPair(parts.vpp, w))
    return compact_path(
        ZZPath(
            (q, parts.q1, parts.q2, q3),
            (Side(q.a), Side(parts.s1), Side(parts.a1)),
        )
    )


def parabolic_shift(M: MoebiusStructure, q: HarmonicPair,
                    v_target: CirclePoint, *,
                    advance: float | None = None,
                    gamma0: float = 1e-4,
                    gamma_max: float = 64.0,
                    max_iter: int = 200) -> ZZPath:
    """Valid zz-path (at most 3 sides) from ``q`` to a pair with right axis (v_target, w).

    The moved endpoint of the right axis is the one sharing an open arc of
    the left axis with ``v_target``; the other endpoint ``w`` is kept.  The
    search box A_gamma grows by doubling from ``gamma0`` until the image of
    its top edge encloses the target, then the root in tau is found by
    bisection.  ``advance`` overrides the stage-2 distance t (default: gamma).
    """
    return _parabolic_shift_info(M, q, v_target, advance=advance, gamma0=gamma0,
                                 gamma_max=gamma_max, max_iter=max_iter)[0]


def _parabolic_shift_info(M: MoebiusStructure, q: HarmonicPair,
                          v_target: CirclePoint, *,
                          advance: float | None = None,
                          gamma0: float = 1e-4,
                          gamma_max: float = 64.0,
                          max_iter: int = 200) -> tuple[ZZPath, ShiftParams]:
    a, s = q.a, q.b
    if a.has_endpoint(v_target):
        raise TargetOutsideArc("shift target coincides with a left-axis endpoint")
    target_in = in_open_arc(a.p.theta, a.q.theta, v_target.theta)
    p_in = in_open_arc(a.p.theta, a.q.theta, s.p.theta)
    v, w = (s.p, s.q) if p_in == target_in else (s.q, s.p)
    if v_target.almost(v):
        return empty_path(q), ShiftParams(0.0, 0.0, 0.0)

    def pos(point: CirclePoint) -> float:
        return chart_coord(w.theta, point.theta)

    target_pos = pos(v_target)
    gamma = gamma0
    enclosed = False
    while gamma <= gamma_max:
        t_adv = advance if advance is not None else gamma
        if t_adv > 0.0:
            lo_parts = _f_parts(M, a, v, w, -gamma, t_adv)
            hi_parts = _f_parts(M, a, v, w, +gamma, t_adv)
            flo = pos(lo_parts.vpp) - target_pos
            fhi = pos(hi_parts.vpp) - target_pos
            if flo == 0.0:
                return _shift_path(M, q, lo_parts, w), ShiftParams(-gamma, t_adv, gamma)
            if fhi == 0.0:
                return _shift_path(M, q, hi_parts, w), ShiftParams(gamma, t_adv, gamma)
            if (flo > 0.0) != (fhi > 0.0):
                enclosed = True
                break
        gamma *= 2.0
    if not enclosed:
        raise NoConvergence("shift search box never enclosed the target")

    lo, hi = -gamma, gamma
    atol = 1e-11 * max(1.0, abs(target_pos))
    best_parts = None
    best_tau = 0.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        parts = _f_parts(M, a, v, w, mid, t_adv)
        fm = pos(parts.vpp) - target_pos
        best_parts, best_tau = parts, mid
        if abs(fm) <= atol or (hi - lo) <= 1e-15 * max(1.0, gamma):
            break
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    else:
        raise NoConvergence("shift bisection hit the iteration cap")
    return _shift_path(M, q, best_parts, w), ShiftParams(best_tau, t_adv, gamma)


# ---------------------------------------------------------------------------
# Connecting two harmonic pairs
# ---------------------------------------------------------------------------

def connect(M: MoebiusStructure, q: HarmonicPair, q2: HarmonicPair, *,
            advance1: float | None = None,
            advance2: float | None = None,
            axis_tol: float = 1e-9) -> ZZPath:
    """Valid zz-path from ``q`` to ``q2`` with at most 7 sides.

    Degenerate cases first: equal pairs give the empty path, a shared axis a
    single segment.  Otherwise: one prescribed shift moves an endpoint of
    the right axis onto an endpoint of the target axis, a second shift moves
    the kept endpoint onto the other one, and a final segment runs along the
    target axis.  All admissible labelings are tried; the shortest valid
    route is returned.
    """
    if q.hm_matches(q2, HM_EQ_TOL):
        return empty_path(q)
    for aq in (q.a, q.b):
        for a2 in (q2.a, q2.b):
            if aq.matches(a2, axis_tol):
                return ZZPath((q, q2), (Side(aq),))
    best = None
    best_len = math.inf
    for B in (q2.b, q2.a):
        for oriented in (q, q.swapped()):
            for p_first, p_second in ((B.p, B.q), (B.q, B.p)):
                try:
                    path = _two_shift_route(
                        M, oriented, p_first, p_second, q2, B,
                        advance1, advance2, axis_tol,
                    )
                    length = path_length(M, path)
                except MhmError:
                    continue
                if length < best_len:
                    best, best_len = path, length
    if best is None:
        raise NoConvergence("no admissible two-shift route between the pairs")
    return best


def _two_shift_route(M: MoebiusStructure, q: HarmonicPair,
                     p_first: CirclePoint, p_second: CirclePoint,
                     q2: HarmonicPair, B: PointPair,
                     advance1: float | None, advance2: float | None,
                     axis_tol: float) -> ZZPath:
    S1 = parabolic_shift(M, q, p_first, advance=advance1)
    qA = S1.vertices[-1]
    if qA.a.has_endpoint(p_first, axis_tol):
        sA, aA = qA.a, qA.b
    elif qA.b.has_endpoint(p_first, axis_tol):
        sA, aA = qA.b, qA.a
    else:
        raise NoConvergence("first shift lost its target endpoint")
    # The second shift must move the kept endpoint, not p_first.
    if aA.has_endpoint(p_second):
        raise TargetOutsideArc("second target lies on the intermediate axis")
    second_in = in_open_arc(aA.p.theta, aA.q.theta, p_second.theta)
    moving = sA.p if in_open_arc(aA.p.theta, aA.q.theta, sA.p.theta) == second_in else sA.q
    if moving.almost(p_first, axis_tol):
        raise TargetOutsideArc("second shift would move the endpoint set by the first")
    S2 = parabolic_shift(M, HarmonicPair(aA, sA), p_second, advance=advance2)
    qB = S2.vertices[-1]
    if qB.hm_matches(q2, HM_EQ_TOL):
        return concat_paths(S1, S2, tol=axis_tol)
    segment = ZZPath((qB, q2), (Side(B),))
    return concat_paths(concat_paths(S1, S2, tol=axis_tol), segment, tol=axis_tol)


# ---------------------------------------------------------------------------
# Chart displacements and labelings
# ---------------------------------------------------------------------------

def _labelings(q: HarmonicPair, q2: HarmonicPair):
    """All joint labelings ((x,y,v,w), (x',y',v',w')) of two harmonic pairs."""
    for a, s in ((q.a, q.b), (q.b, q.a)):
        for x, y in ((a.p, a.q), (a.q, a.p)):
            for v, w in ((s.p, s.q), (s.q, s.p)):
                for a2, s2 in ((q2.a, q2.b), (q2.b, q2.a)):
                    for x2, y2 in ((a2.p, a2.q), (a2.q, a2.p)):
                        for v2, w2 in ((s2.p, s2.q), (s2.q, s2.p)):
                            yield (x, y, v, w, x2, y2, v2, w2)


def _chart_offset(M: MoebiusStructure, pole: CirclePoint,
                  p1: CirclePoint, p2: CirclePoint) -> float:
    d = M.base
    den = d(p1.theta, pole.theta) * d(p2.theta, pole.theta)
    num = d(p1.theta, p2.theta)
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / den


def labeled_displacements(M: MoebiusStructure,
                          labeling: tuple[CirclePoint, ...]) -> tuple[float, float, float, float]:
    """Normalized chart displacements (dx, dy, dv, dw) for one joint labeling.

    Left-axis offsets are measured in the chart at w, right-axis offsets in
    the chart at x, both divided by |xy|_w so the reference pair has unit
    axis length.
    """
    x, y, v, w, x2, y2, v2, w2 = labeling
    scale = _chart_offset(M, w, x, y)
    if not math.isfinite(scale) or scale == 0.0:
        return (math.inf,) * 4
    return (
        _chart_offset(M, w, x, x2) / scale,
        _chart_offset(M, w, y, y2) / scale,
        _chart_offset(M, x, v, v2) / scale,
        _chart_offset(M, x, w, w2) / scale,
    )


def hm_displacement(M: MoebiusStructure, q: HarmonicPair, q2: HarmonicPair) -> float:
    """Normalized coordinate displacement: min over labelings of the max offset."""
    if q.hm_matches(q2, HM_EQ_TOL):
        return 0.0
    best = math.inf
    for lab in _labelings(q, q2):
        disp = max(labeled_displacements(M, lab))
        best = min(best, disp)
    return best


# ---------------------------------------------------------------------------
# Upper bound by path search
# ---------------------------------------------------------------------------

def _perp_route_length(M: MoebiusStructure, q: HarmonicPair, q2: HarmonicPair,
                       D: PointPair, B: PointPair) -> float:
    if not strong_causal(D, B):
        raise NoConvergence("axes are not strong causal")
    m = common_perpendicular(M, D, B)
    r1 = HarmonicPair(D, m)
    r2 = HarmonicPair(B, m)
    return (
        line_distance(M, q, r1)
        + line_distance(M, r1, r2)
        + line_distance(M, r2, q2)
    )


def delta_upper(M: MoebiusStructure, q: HarmonicPair, q2: HarmonicPair, *,
                budget: int = 64) -> float:
    """Upper bound on the zz-distance; monotone nonincreasing in ``budget``.

    Minimum over a symmetric candidate set: a shared-axis segment, the four
    perpendicular detours, and both orientations of the two-shift route,
    refined (when budget allows) by multiplicative coordinate descent over
    the shift advances.  Returns +inf only when every route fails.
    """
    if q.hm_matches(q2, HM_EQ_TOL):
        return 0.0
    candidates: list[float] = []
    try:
        candidates.append(line_distance(M, q, q2))
    except NoCommonAxis:
        pass
    for D in (q.a, q.b):
        for B in (q2.a, q2.b):
            try:
                candidates.append(_perp_route_length(M, q, q2, D, B))
            except MhmError:
                continue
    base_orients = []
    for qq, qq2 in ((q, q2), (q2, q)):
        try:
            candidates.append(path_length(M, connect(M, qq, qq2)))
            base_orients.append((qq, qq2))
        except MhmError:
            continue
    if budget > 0 and base_orients:
        seed = max(min(1.0, hm_displacement(M, q, q2)), 1e-4)
        evals = 0
        for qq, qq2 in base_orients:
            adv = [seed, seed]

            def route(t1: float, t2: float) -> float:
                try:
                    return path_length(
                        M, connect(M, qq, qq2, advance1=t1, advance2=t2)
                    )
                except MhmError:
                    return math.inf

            current = route(*adv)
            evals += 1
            candidates.append(current)
            step = 4.0
            while evals < budget and step > 1.05:
                improved = False
                for idx in (0, 1):
                    for factor in (step, 1.0 / step):
                        if evals >= budget:
                            break
                        trial = list(adv)
                        trial[idx] *= factor
                        val = route(*trial)
                        evals += 1
                        candidates.append(val)
                        if val < current:
                            current, adv = val, trial
                            improved = True
                if not improved:
                    step = math.sqrt(step)
            if evals >= budget:
                break
    finite = [c for c in candidates if math.isfinite(c)]
    return min(finite) if finite else math.inf


# ---------------------------------------------------------------------------
# Lower bound certificate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateParams:
    """Constants of the short-path lower bound.

    ``c`` and ``t_eps`` are tied to alpha and epsilon exactly:
    c = alpha*(1+alpha)*sqrt(alpha)/16 and sinh(t_eps/2) = c*epsilon.
    """

    epsilon: float
    c: float
    t_eps: float

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ConfigError("epsilon must be positive")


def certificate_params(alpha: float, epsilon: float) -> CertificateParams:
    if not (0.0 < alpha < 1.0):
        raise ConfigError(f"alpha must be in (0, 1), got {alpha}")
    c = alpha * (1.0 + alpha) * math.sqrt(alpha) / 16.0
    return CertificateParams(epsilon=epsilon, c=c, t_eps=2.0 * math.asinh(c * epsilon))


def delta_lower_certificate(M: MoebiusStructure, q: HarmonicPair,
                            q2: HarmonicPair, params: CertificateParams,
                            alpha: float) -> float | None:
    """Certified lower bound on the zz-distance, or None outside the regime.

    Valid only for structures passing the monotonicity axiom at ``alpha``
    and for epsilon <= 1/16.  Conservative: minimized over all labelings.
    """
    expected_c = alpha * (1.0 + alpha) * math.sqrt(alpha) / 16.0
    if abs(expected_c - params.c) > 1e-12:
        raise ConfigError("certificate params were built for a different alpha")
    if params.epsilon > 1.0 / 16.0 + 1e-15:
        return None
    if q.hm_matches(q2, HM_EQ_TOL):
        return 0.0
    best = math.inf
    for lab in _labelings(q, q2):
        disp = labeled_displacements(M, lab)
        maxdisp = max(disp)
        if not math.isfinite(maxdisp):
            continue
        if maxdisp < params.epsilon:
            cand = params.c * maxdisp
        else:
            cand = 0.5 * params.t_eps
        best = min(best, cand)
    return 0.0 if not math.isfinite(best) else best
