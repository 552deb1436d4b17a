"""Exact combinatorics of the circle.

Points are angles in [0, 2*pi); all predicates here are purely cyclic-order
facts and carry no metric content.  Equality of points is always tested
against an explicit angular tolerance, never bitwise.

Conventions:
  * arcs are open and oriented counterclockwise (start -> end);
  * a ``PointPair`` is unordered and stored with endpoints sorted by angle;
  * ``separates(a, b)`` means the two points of ``b`` lie in different open
    arcs determined by ``a`` (a symmetric relation on disjoint pairs);
  * ``strong_causal(a, b)`` means four distinct endpoints and *not*
    separating, i.e. each pair lies inside one open arc of the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import Boundary, DegenerateTuple

TAU = 2.0 * math.pi

#: Default angular tolerance for point-coincidence tests (radians).
DEFAULT_ANGLE_TOL = 1e-12


def normalize_angle(theta: float) -> float:
    """Map an angle to [0, 2*pi)."""
    t = math.fmod(theta, TAU)
    if t < 0.0:
        t += TAU
    if t >= TAU:  # guard against fmod rounding exactly to TAU
        t -= TAU
    return t


def angular_distance(t1: float, t2: float) -> float:
    """Shortest angular distance between two angles, in [0, pi]."""
    d = abs(normalize_angle(t1) - normalize_angle(t2))
    return min(d, TAU - d)


def ccw_span(start: float, end: float) -> float:
    """Length of the counterclockwise arc from ``start`` to ``end``."""
    return normalize_angle(end - start)


def in_open_arc(start: float, end: float, theta: float) -> bool:
    """True iff ``theta`` lies strictly inside the ccw arc start -> end."""
    return 0.0 < normalize_angle(theta - start) < ccw_span(start, end)


@dataclass(frozen=True, slots=True)
class CirclePoint:
    """A point of the circle, canonically an angle in [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_angle(float(self.theta)))

    def almost(self, other: "CirclePoint", tol: float = DEFAULT_ANGLE_TOL) -> bool:
        return angular_distance(self.theta, other.theta) <= tol

    def __repr__(self):  # compact; angles are the canonical form
        return f"CirclePoint({self.theta:.12g})"


@dataclass(frozen=True, slots=True)
class PointPair:
    """Unordered pair of distinct circle points, stored sorted by angle."""

    p: CirclePoint
    q: CirclePoint

    def __post_init__(self):
        a, b = self.p, self.q
        if angular_distance(a.theta, b.theta) <= DEFAULT_ANGLE_TOL:
            raise DegenerateTuple(f"pair endpoints coincide: {a} ~ {b}")
        if b.theta < a.theta:
            object.__setattr__(self, "p", b)
            object.__setattr__(self, "q", a)

    def points(self) -> tuple[CirclePoint, CirclePoint]:
        return (self.p, self.q)

    def other(self, x: CirclePoint, tol: float = DEFAULT_ANGLE_TOL) -> CirclePoint:
        """The endpoint that is not ``x``."""
        if self.p.almost(x, tol):
            return self.q
        if self.q.almost(x, tol):
            return self.p
        raise DegenerateTuple(f"{x} is not an endpoint of {self}")

    def has_endpoint(self, x: CirclePoint, tol: float = DEFAULT_ANGLE_TOL) -> bool:
        return self.p.almost(x, tol) or self.q.almost(x, tol)

    def matches(self, other: "PointPair", tol: float = DEFAULT_ANGLE_TOL) -> bool:
        return (self.p.almost(other.p, tol) and self.q.almost(other.q, tol)) or (
            self.p.almost(other.q, tol) and self.q.almost(other.p, tol)
        )


@dataclass(frozen=True, slots=True)
class Arc:
    """Open counterclockwise arc from ``start`` to ``end`` (endpoints excluded)."""

    start: CirclePoint
    end: CirclePoint

    @property
    def endpoints(self) -> PointPair:
        return PointPair(self.start, self.end)

    @property
    def span(self) -> float:
        return ccw_span(self.start.theta, self.end.theta)

    def midpoint(self) -> CirclePoint:
        """A witness interior point."""
        return CirclePoint(self.start.theta + 0.5 * self.span)

    def complement(self) -> "Arc":
        return Arc(self.end, self.start)


def _require_distinct(points: tuple[CirclePoint, ...], tol: float) -> None:
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if points[i].almost(points[j], tol):
                raise DegenerateTuple(
                    f"points coincide within tol={tol}: {points[i]} ~ {points[j]}"
                )


def separates(a: PointPair, b: PointPair, tol: float = DEFAULT_ANGLE_TOL) -> bool:
    """True iff the points of ``b`` lie in different open arcs determined by ``a``.

    Symmetric in ``a`` and ``b``.  Raises DegenerateTuple unless all four
    endpoints are pairwise distinct within ``tol``.
    """
    _require_distinct((a.p, a.q, b.p, b.q), tol)
    first = in_open_arc(a.p.theta, a.q.theta, b.p.theta)
    second = in_open_arc(a.p.theta, a.q.theta, b.q.theta)
    return first != second


def strong_causal(a: PointPair, b: PointPair, tol: float = DEFAULT_ANGLE_TOL) -> bool:
    """True iff all four endpoints are distinct and the pairs do not separate.

    Equivalently each pair lies inside a single open arc determined by the
    other.  Returns False (never raises) on coincident endpoints across
    ``a`` and ``b``.
    """
    pts = (a.p, a.q, b.p, b.q)
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i].almost(pts[j], tol):
                return False
    return not separates(a, b, tol)


def arc_between(x: CirclePoint, y: CirclePoint, omega: CirclePoint,
                tol: float = DEFAULT_ANGLE_TOL) -> Arc:
    """The open arc with endpoints ``x``, ``y`` that does not contain ``omega``."""
    _require_distinct((x, y, omega), tol)
    candidate = Arc(x, y)
    if in_open_arc(x.theta, y.theta, omega.theta):
        candidate = Arc(y, x)
    return candidate


def arc_contains(arc: Arc, z: CirclePoint, tol: float = DEFAULT_ANGLE_TOL) -> bool:
    """Membership of ``z`` in the open arc.  Raises Boundary at endpoints."""
    if z.almost(arc.start, tol) or z.almost(arc.end, tol):
        raise Boundary(f"{z} coincides with an arc endpoint")
    return in_open_arc(arc.start.theta, arc.end.theta, z.theta)
