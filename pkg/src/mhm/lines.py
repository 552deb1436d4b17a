"""Lines of harmonic pairs, common perpendiculars, strips, and width bounds.

The projection ``rho(M, a, x)`` returns the unique y making (a, (x, y))
harmonic; it is involutive and fixes the axis endpoints.  The *line* with
axis a is the family of harmonic pairs (a, (z, rho_a(z))); with the distance

    |q q'| = | ln( |xz'||yz| / (|xz||yz'|) ) |,       a = (x, y),

(z, z' taken in the same arc of a) every line is isometric to the real line.

Two disjoint non-separating pairs b, b' admit a unique *common perpendicular*
s, harmonic with both.  A *strip* (a, b, s) is a strong-causal pair with
crossed diagonals together with its perpendicular; with g = |vx|_w and
h = |vu|_w measured in the chart at w, its width is ln(h/g).

All root finding is monotone bisection on angles: no derivatives, relative
tolerance ~1e-12 in chart coordinates, iteration cap 200.  Structures may
supply exact kernels (the canonical one does); the bisection path is the
reference and the two are cross-checked in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circle import (
    DEFAULT_ANGLE_TOL,
    CirclePoint,
    PointPair,
    ccw_span,
    in_open_arc,
    normalize_angle,
    separates,
    strong_causal,
)
from .errors import (
    DegenerateTuple,
    NoCommonAxis,
    NoConvergence,
    NotAStrip,
    NotStrongCausal,
    OnAxis,
    OrientationError,
)
from .structures import HarmonicPair, MoebiusStructure, harmonic_defect_log

BISECT_ANGLE_TOL = 1e-15
BISECT_MAX_ITER = 200


# ---------------------------------------------------------------------------
# The projection rho
# ---------------------------------------------------------------------------

def rho_bisect(M: MoebiusStructure, axis: PointPair, x: CirclePoint, *,
               angle_tol: float = BISECT_ANGLE_TOL,
               max_iter: int = BISECT_MAX_ITER) -> CirclePoint:
    """Reference kernel: solve for y in the arc of ``axis`` opposite ``x``.

    The signed defect G(y) = ln(|px||qy| / (|py||qx|)) runs from -inf to
    +inf across that arc (monotone for structures with monotone charts);
    the sign change at the bracket ends is asserted.
    """
    p, q = axis.p, axis.q
    if in_open_arc(p.theta, q.theta, x.theta):
        start, end = q.theta, p.theta
    else:
        start, end = p.theta, q.theta
    span = ccw_span(start, end)
    d = M.base
    k = math.log(d(p.theta, x.theta)) - math.log(d(q.theta, x.theta))

    def G(theta: float) -> float:
        return k + math.log(d(q.theta, theta)) - math.log(d(p.theta, theta))

    lo, hi = span * 1e-12, span * (1.0 - 1e-12)
    glo, ghi = G(normalize_angle(start + lo)), G(normalize_angle(start + hi))
    if glo == 0.0:
        return CirclePoint(start + lo)
    if ghi == 0.0:
        return CirclePoint(start + hi)
    if (glo > 0.0) == (ghi > 0.0):
        raise NoConvergence("projection defect has no sign change over the arc")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gm = G(normalize_angle(start + mid))
        if gm == 0.0:
            lo = hi = mid
            break
        if (gm > 0.0) == (glo > 0.0):
            lo, glo = mid, gm
        else:
            hi = mid
        if hi - lo <= angle_tol:
            break
    else:
        raise NoConvergence("projection bisection hit the iteration cap")
    return CirclePoint(start + 0.5 * (lo + hi))


def rho(M: MoebiusStructure, axis: PointPair, x: CirclePoint, *,
        extend_endpoints: bool = True,
        endpoint_tol: float = DEFAULT_ANGLE_TOL) -> CirclePoint:
    """The unique y with (axis, (x, y)) harmonic; involutive, endpoints fixed."""
    if axis.has_endpoint(x, endpoint_tol):
        if extend_endpoints:
            return axis.p if x.almost(axis.p, endpoint_tol) else axis.q
        raise OnAxis(f"{x} coincides with an axis endpoint")
    if M.exact_rho is not None:
        return CirclePoint(M.exact_rho(axis.p.theta, axis.q.theta, x.theta))
    return rho_bisect(M, axis, x)


# ---------------------------------------------------------------------------
# Lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """The line of harmonic pairs with a fixed axis, with arclength coordinate.

    The axis is stored ordered (x, y): the coordinate of a point increases
    toward ``y``.  The basepoint (coordinate 0) is the harmonic pair whose
    moving endpoint is ``z0``; the moving endpoint always stays in the open
    arc of the axis containing ``z0``.
    """

    structure: MoebiusStructure
    x: CirclePoint
    y: CirclePoint
    z0: CirclePoint
    z0_partner: CirclePoint  # rho(axis, z0), cached for exact vertex identity

    @property
    def axis(self) -> PointPair:
        return PointPair(self.x, self.y)

    @property
    def basepoint(self) -> HarmonicPair:
        return HarmonicPair(self.axis, PointPair(self.z0, self.z0_partner))

    # -- coordinate map ----------------------------------------------------

    def coord_of(self, z: CirclePoint) -> float:
        """Signed coordinate of the line point whose moving endpoint is ``z``."""
        d = self.structure.base
        return (
            math.log(d(self.x.theta, z.theta))
            - math.log(d(self.y.theta, z.theta))
            + math.log(d(self.y.theta, self.z0.theta))
            - math.log(d(self.x.theta, self.z0.theta))
        )

    def _solve_moving(self, tau: float, *, max_iter: int = BISECT_MAX_ITER) -> CirclePoint:
        if self.structure.exact_line_point is not None:
            return CirclePoint(
                self.structure.exact_line_point(
                    self.x.theta, self.y.theta, self.z0.theta, tau
                )
            )
        # Designated arc of the axis, oriented ccw, containing z0.
        if in_open_arc(self.x.theta, self.y.theta, self.z0.theta):
            start, end = self.x.theta, self.y.theta
            sign = 1.0  # offset from start grows toward y
        else:
            start, end = self.y.theta, self.x.theta
            sign = -1.0
        span = ccw_span(start, end)
        p0 = ccw_span(start, self.z0.theta)

        def lam(offset: float) -> float:
            return self.coord_of(CirclePoint(start + offset))

        # Bracket by geometric approach to the arc ends.
        lo_off, hi_off = p0, p0
        lo_val = hi_val = 0.0
        target = tau
        if target == 0.0:
            return self.z0
        grow_toward_end = (sign > 0) == (target > 0)
        k = 1
        if grow_toward_end:
            while k <= 64:
                cand = span - (span - p0) * 0.5 ** k
                val = lam(cand)
                if (val - target) * (lo_val - target) <= 0.0:
                    hi_off, hi_val = cand, val
                    break
                lo_off, lo_val = cand, val
                k += 1
            else:
                raise NoConvergence("line coordinate bracket expansion failed")
        else:
            while k <= 64:
                cand = p0 * 0.5 ** k
                val = lam(cand)
                if (val - target) * (lo_val - target) <= 0.0:
                    hi_off, hi_val = cand, val
                    break
                lo_off, lo_val = cand, val
                k += 1
            else:
                raise NoConvergence("line coordinate bracket expansion failed")
        a_off, b_off = (lo_off, hi_off)
        fa = lam(a_off) - target
        for _ in range(max_iter):
            m = 0.5 * (a_off + b_off)
            fm = lam(m) - target
            if fm == 0.0 or abs(b_off - a_off) <= BISECT_ANGLE_TOL:
                a_off = b_off = m
                break
            if (fm > 0.0) == (fa > 0.0):
                a_off, fa = m, fm
            else:
                b_off = m
        return CirclePoint(start + 0.5 * (a_off + b_off))

    def point_with_moving(self, tau: float) -> tuple[HarmonicPair, CirclePoint, CirclePoint]:
        """Line point at coordinate ``tau`` plus its (moving, partner) endpoints."""
        if tau == 0.0:
            return self.basepoint, self.z0, self.z0_partner
        z = self._solve_moving(tau)
        zr = rho(self.structure, self.axis, z)
        return HarmonicPair(self.axis, PointPair(z, zr)), z, zr

    def point(self, tau: float) -> HarmonicPair:
        return self.point_with_moving(tau)[0]

    def coord(self, q: HarmonicPair, tol: float = 1e-9) -> float:
        """Coordinate of a harmonic pair lying on this line."""
        moving = _moving_pair(q, self.axis, tol)
        z = _endpoint_in_same_arc(self.axis, moving, self.z0)
        return self.coord_of(z)


def line_through(M: MoebiusStructure, q: HarmonicPair, axis: PointPair, *,
                 toward: CirclePoint | None = None,
                 z0: CirclePoint | None = None,
                 tol: float = 1e-9) -> Line:
    """The line with the given axis of ``q``, based at ``q``.

    ``toward`` selects the axis endpoint in whose direction the coordinate
    increases (default: the larger-angle endpoint).  ``z0`` picks which
    endpoint of the moving pair carries the coordinate (default: its
    smaller-angle endpoint); this fixes the designated arc.
    """
    moving = _moving_pair(q, axis, tol)
    if toward is None or toward.almost(axis.q, tol):
        x_end, y_end = axis.p, axis.q
    elif toward.almost(axis.p, tol):
        x_end, y_end = axis.q, axis.p
    else:
        raise DegenerateTuple("toward must be an axis endpoint")
    if z0 is None or z0.almost(moving.p, tol):
        base, partner = moving.p, moving.q
    elif z0.almost(moving.q, tol):
        base, partner = moving.q, moving.p
    else:
        raise DegenerateTuple("z0 must be an endpoint of the moving pair")
    return Line(M, x_end, y_end, base, partner)


def _moving_pair(q: HarmonicPair, axis: PointPair, tol: float) -> PointPair:
    if q.a.matches(axis, tol):
        return q.b
    if q.b.matches(axis, tol):
        return q.a
    raise NoCommonAxis(f"{q} does not have axis {axis}")


def _endpoint_in_same_arc(axis: PointPair, pair: PointPair,
                          witness: CirclePoint) -> CirclePoint:
    """Endpoint of ``pair`` lying in the same open arc of ``axis`` as ``witness``."""
    w_in = in_open_arc(axis.p.theta, axis.q.theta, witness.theta)
    p_in = in_open_arc(axis.p.theta, axis.q.theta, pair.p.theta)
    return pair.p if p_in == w_in else pair.q


def line_point(M: MoebiusStructure, line: Line, tau: float) -> HarmonicPair:
    """Point of the line at signed coordinate ``tau`` from the basepoint."""
    return line.point(tau)


def line_distance(M: MoebiusStructure, q: HarmonicPair, q2: HarmonicPair, *,
                  axis_tol: float = 1e-9) -> float:
    """Distance between two harmonic pairs sharing an axis.

    Representatives z, z' are taken in the same arc of the shared axis, which
    makes the value well defined and additive along the line.
    """
    axis, b, b2 = _shared_axis(q, q2, axis_tol)
    x, y = axis.p, axis.q
    z = b.p if in_open_arc(x.theta, y.theta, b.p.theta) else b.q
    z2 = b2.p if in_open_arc(x.theta, y.theta, b2.p.theta) else b2.q
    d = M.base
    val = (
        math.log(d(x.theta, z2.theta)) + math.log(d(y.theta, z.theta))
        - math.log(d(x.theta, z.theta)) - math.log(d(y.theta, z2.theta))
    )
    return abs(val)


def _shared_axis(q: HarmonicPair, q2: HarmonicPair,
                 tol: float) -> tuple[PointPair, PointPair, PointPair]:
    for a1 in (q.a, q.b):
        for a2 in (q2.a, q2.b):
            if a1.matches(a2, tol):
                b = q.b if a1 is q.a else q.a
                b2 = q2.b if a2 is q2.a else q2.a
                return a1, b, b2
    raise NoCommonAxis("harmonic pairs share no axis")


# ---------------------------------------------------------------------------
# Common perpendicular
# ---------------------------------------------------------------------------

def common_perpendicular(M: MoebiusStructure, b: PointPair, b2: PointPair, *,
                         angle_tol: float = BISECT_ANGLE_TOL,
                         max_iter: int = BISECT_MAX_ITER) -> PointPair:
    """The unique pair s harmonic with both ``b`` and ``b2``.

    Requires strong causal position.  Outer bisection runs over v in the arc
    of ``b`` away from ``b2`` (bracketed by the projections of b2's points),
    with w = rho(b, v) at every step; the bracketing sign change is asserted
    and monotonicity of the defect is assumed, per the uniqueness of s.
    """
    if not strong_causal(b, b2):
        raise NotStrongCausal(f"{b} and {b2} are not in strong causal position")
    vz = rho(M, b, b2.p)
    vu = rho(M, b, b2.q)
    # Both projections lie in the arc of b away from b2; bisect between them.
    if in_open_arc(b.p.theta, b.q.theta, b2.p.theta):
        start = b.q.theta  # arc (q -> p) is the far arc
    else:
        start = b.p.theta
    o1 = ccw_span(start, vz.theta)
    o2 = ccw_span(start, vu.theta)
    lo, hi = (o1, o2) if o1 < o2 else (o2, o1)
    width = hi - lo
    lo += width * 1e-9
    hi -= width * 1e-9
    d = M.base
    zt, ut = b2.p.theta, b2.q.theta

    def F(offset: float) -> tuple[float, CirclePoint, CirclePoint]:
        # signed defect with pinned roles (v, w); sorting-free so the sign
        # runs monotonically from one infinity to the other over the bracket
        v = CirclePoint(start + offset)
        w = rho(M, b, v)
        val = (
            math.log(d(v.theta, zt)) + math.log(d(w.theta, ut))
            - math.log(d(v.theta, ut)) - math.log(d(w.theta, zt))
        )
        return val, v, w

    flo, _, _ = F(lo)
    fhi, _, _ = F(hi)
    if (flo > 0.0) == (fhi > 0.0):
        raise NoConvergence("perpendicular defect has no sign change over the bracket")
    v_best = w_best = None
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm, v_best, w_best = F(mid)
        if fm == 0.0 or hi - lo <= angle_tol:
            break
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    else:
        raise NoConvergence("perpendicular bisection hit the iteration cap")
    return PointPair(v_best, w_best)


# ---------------------------------------------------------------------------
# Strips
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Strip:
    """A strong-causal pair with crossed diagonals and its common perpendicular.

    Labels follow the cyclic order x, y, z, u; v lies in the arc (x -> y)
    away from b, w in the arc (z -> u) away from a.  g = |vx|_w, h = |vu|_w,
    width = ln(h/g).
    """

    x: CirclePoint
    y: CirclePoint
    z: CirclePoint
    u: CirclePoint
    v: CirclePoint
    w: CirclePoint
    g: float
    h: float
    width: float

    @property
    def a(self) -> PointPair:
        return PointPair(self.x, self.y)

    @property
    def b(self) -> PointPair:
        return PointPair(self.u, self.z)

    @property
    def s(self) -> PointPair:
        return PointPair(self.v, self.w)


def _strip_labels(a: PointPair, b: PointPair) -> tuple[CirclePoint, ...]:
    """Resolve labels (x, y, z, u) in cyclic order from unordered pairs."""
    ax, ay = a.p, a.q
    oy = ccw_span(ax.theta, ay.theta)
    o1 = ccw_span(ax.theta, b.p.theta)
    o2 = ccw_span(ax.theta, b.q.theta)
    b1, b2 = (b.p, b.q) if o1 < o2 else (b.q, b.p)
    ob1, ob2 = min(o1, o2), max(o1, o2)
    if oy < ob1:                # order ax, ay, b1, b2
        return ax, ay, b1, b2
    if oy > ob2:                # order ax, b1, b2, ay == cyclic ay, ax, b1, b2
        return ay, ax, b1, b2
    raise NotAStrip("pairs separate each other; no strip labeling exists")


def make_strip(M: MoebiusStructure, a: PointPair, b: PointPair) -> Strip:
    """Construct the strip on (a, b); raises NotAStrip if the conditions fail."""
    if not strong_causal(a, b):
        raise NotAStrip("strip requires strong causal position")
    x, y, z, u = _strip_labels(a, b)
    if not separates(PointPair(x, z), PointPair(u, y)):
        raise NotAStrip("diagonals do not separate")
    s = common_perpendicular(M, PointPair(x, y), PointPair(u, z))
    if in_open_arc(x.theta, y.theta, s.p.theta):
        v, w = s.p, s.q
    else:
        v, w = s.q, s.p
    if not in_open_arc(z.theta, u.theta, w.theta):
        raise NoConvergence("perpendicular endpoint missed the far arc")
    d = M.base
    dw = lambda p1, p2: d(p1.theta, p2.theta) / (d(p1.theta, w.theta) * d(p2.theta, w.theta))
    g = dw(v, x)
    h = dw(v, u)
    # width via the bounded cross-ratio form of ln(h/g)
    width = (
        math.log(d(v.theta, u.theta)) + math.log(d(x.theta, w.theta))
        - math.log(d(v.theta, x.theta)) - math.log(d(u.theta, w.theta))
    )
    return Strip(x=x, y=y, z=z, u=u, v=v, w=w, g=g, h=h, width=width)


def is_narrow(M: MoebiusStructure, strip: Strip) -> bool:
    """True iff |xu|_w and |yz|_w are at most g."""
    d = M.base
    w = strip.w.theta
    dw = lambda p1, p2: d(p1.theta, p2.theta) / (d(p1.theta, w) * d(p2.theta, w))
    return dw(strip.x, strip.u) <= strip.g and dw(strip.y, strip.z) <= strip.g


@dataclass(frozen=True)
class WidthBoundsReport:
    """Signed slacks of the strip width inequalities (>= 0 when satisfied)."""

    upper_slack: float        # 2*sqrt(|xu||yz| / (|xy||zu|)) - width
    sinh_lower_slack: float   # 2*sinh(width/2) - alpha*(1+alpha)*sqrt(...)
    chart_bound_slack: float  # (e^w - 1)/(alpha(1+alpha)) * |xy|_w - max(|xu|_w, |yz|_w)
    ratio_slack: float        # min(|xu|_w/|yz|_w - alpha, 1/alpha - |xu|_w/|yz|_w)

    @property
    def min_slack(self) -> float:
        return min(self.upper_slack, self.sinh_lower_slack,
                   self.chart_bound_slack, self.ratio_slack)

    def ok(self, tol: float = 1e-8) -> bool:
        return self.min_slack >= -tol


def width_bounds(M: MoebiusStructure, strip: Strip, alpha: float) -> WidthBoundsReport:
    """Evaluate the width inequalities of a strip for a given alpha."""
    d = M.base
    x, y, z, u, w = strip.x, strip.y, strip.z, strip.u, strip.w.theta
    cross = (d(x.theta, u.theta) * d(y.theta, z.theta)) / (
        d(x.theta, y.theta) * d(z.theta, u.theta)
    )
    root = math.sqrt(cross)
    dw = lambda p1, p2: d(p1.theta, p2.theta) / (d(p1.theta, w) * d(p2.theta, w))
    xu_w = dw(x, u)
    yz_w = dw(y, z)
    xy_w = dw(x, y)
    l = strip.width
    aa = alpha * (1.0 + alpha)
    ratio = xu_w / yz_w
    return WidthBoundsReport(
        upper_slack=2.0 * root - l,
        sinh_lower_slack=2.0 * math.sinh(0.5 * l) - aa * root,
        chart_bound_slack=(math.expm1(l) / aa) * xy_w - max(xu_w, yz_w),
        ratio_slack=min(ratio - alpha, 1.0 / alpha - ratio),
    )


# ---------------------------------------------------------------------------
# Ratio distortion in a remote chart
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistortionReport:
    """Distortion of the strip diagonal ratio seen from a remote chart point.

    gamma = |xw'|_w |uw'|_w / (|yw'|_w |zw'|_w), beta = min(gamma, 1/gamma);
    bounds_ok records alpha*beta <= |xu|_w / |yz|_w <= 1/(alpha*beta).
    """

    gamma: float
    beta: float
    ratio: float
    bounds_ok: bool


def ratio_distortion(M: MoebiusStructure, strip: Strip, w: CirclePoint,
                     alpha: float, *, tol: float = 1e-12) -> DistortionReport:
    """Distortion report for a strip viewed from ``w``.

    ``w`` must lie on the arc determined by the outer pair (u, z) that
    contains the strip's own perpendicular endpoint w'; gamma equals 1
    exactly when w coincides with it.
    """
    wp = strip.w
    if not w.almost(wp):
        if in_open_arc(strip.z.theta, strip.u.theta, wp.theta) != in_open_arc(
            strip.z.theta, strip.u.theta, w.theta
        ):
            raise OrientationError("w must lie on the outer arc containing w'")
    d = M.base
    x, y, z, u = strip.x.theta, strip.y.theta, strip.z.theta, strip.u.theta
    wt, wpt = w.theta, wp.theta
    if w.almost(wp):
        gamma = 1.0
    else:
        gamma = (
            (d(x, wpt) / d(x, wt))
            * (d(u, wpt) / d(u, wt))
            * (d(y, wt) / d(y, wpt))
            * (d(z, wt) / d(z, wpt))
        )
    beta = min(gamma, 1.0 / gamma)
    ratio = (d(x, u) / (d(x, wt) * d(u, wt))) / (d(y, z) / (d(y, wt) * d(z, wt)))
    ab = alpha * beta
    bounds_ok = (ratio >= ab * (1.0 - tol)) and (ratio <= (1.0 + tol) / ab)
    return DistortionReport(gamma=gamma, beta=beta, ratio=ratio, bounds_ok=bounds_ok)
