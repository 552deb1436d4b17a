"""Seeded random generators for circle configurations.

Samplers condition uniform angles on a combinatorial kind and enforce a
minimum angular gap between the sampled points, which keeps downstream
cross-ratio arithmetic away from the degenerate tail.  Per-sample RNG
streams are derived from (seed, index) so aggregations stay deterministic
regardless of evaluation order.
"""

from __future__ import annotations

import random

from .circle import TAU, CirclePoint, PointPair, separates, strong_causal
from .errors import NoSeparatingSample
from .lines import rho
from .structures import HarmonicPair, MoebiusStructure, Tetrad, chart_coord, chart_point

_MIX1 = 0x9E3779B97F4A7C15
_MIX2 = 0xBF58476D1CE4E5B9
_MASK = (1 << 63) - 1


def stream_rng(seed: int, index: int) -> random.Random:
    """Independent deterministic stream for sample ``index`` under ``seed``."""
    return random.Random((seed * _MIX1 + index * _MIX2 + 0x2545F4914F6CDD1D) & _MASK)


def _gaps_ok(thetas: list[float], min_gap: float) -> bool:
    order = sorted(t % TAU for t in thetas)
    gaps = [order[i + 1] - order[i] for i in range(len(order) - 1)]
    gaps.append(TAU - order[-1] + order[0])
    return min(gaps) >= min_gap


def sample_angles(rng: random.Random, n: int, min_gap: float,
                  max_tries: int = 10_000) -> list[float]:
    """n uniform angles with all cyclic gaps at least ``min_gap``."""
    for _ in range(max_tries):
        thetas = [rng.uniform(0.0, TAU) for _ in range(n)]
        if _gaps_ok(thetas, min_gap):
            return thetas
    raise NoSeparatingSample(f"could not place {n} points with gap {min_gap}")


def sample_point(rng: random.Random) -> CirclePoint:
    return CirclePoint(rng.uniform(0.0, TAU))


def sample_pair(rng: random.Random, min_gap: float = 1e-2) -> PointPair:
    t1, t2 = sample_angles(rng, 2, min_gap)
    return PointPair(CirclePoint(t1), CirclePoint(t2))


def sample_tetrad(kind: str, rng: random.Random, *, min_gap: float = 1e-2,
                  structure: MoebiusStructure | None = None,
                  max_tries: int = 10_000):
    """Sample a configuration of the given combinatorial kind.

    ``separating`` and ``strong-causal`` return a Tetrad (x, y, z, u) with
    (x, y), (z, u) in the requested relation; ``harmonic`` returns a
    HarmonicPair built by projection (requires ``structure``); ``strip``
    returns a (PointPair, PointPair) in strip position.
    """
    if kind == "separating":
        for _ in range(max_tries):
            thetas = sample_angles(rng, 4, min_gap)
            q = Tetrad(*(CirclePoint(t) for t in thetas))
            if separates(PointPair(q.x, q.y), PointPair(q.z, q.u)):
                return q
        raise NoSeparatingSample("no separating tetrad in retry budget")
    if kind == "strong-causal":
        for _ in range(max_tries):
            thetas = sample_angles(rng, 4, min_gap)
            q = Tetrad(*(CirclePoint(t) for t in thetas))
            if strong_causal(PointPair(q.x, q.y), PointPair(q.z, q.u)):
                return q
        raise NoSeparatingSample("no strong-causal tetrad in retry budget")
    if kind == "harmonic":
        if structure is None:
            raise ValueError("harmonic sampling needs a structure")
        return sample_harmonic(structure, rng, min_gap=min_gap)
    if kind == "strip":
        return sample_strip_pairs(rng, min_gap=min_gap)
    raise ValueError(f"unknown sample kind {kind!r}")


def sample_harmonic(M: MoebiusStructure, rng: random.Random, *,
                    min_gap: float = 1e-2,
                    max_tries: int = 10_000) -> HarmonicPair:
    """Harmonic pair built as (axis, (x, rho_axis(x)))."""
    for _ in range(max_tries):
        thetas = sample_angles(rng, 3, min_gap)
        axis = PointPair(CirclePoint(thetas[0]), CirclePoint(thetas[1]))
        x = CirclePoint(thetas[2])
        y = rho(M, axis, x)
        pts = [axis.p.theta, axis.q.theta, x.theta, y.theta]
        if _gaps_ok(pts, min_gap * 1e-3):
            return HarmonicPair(axis, PointPair(x, y))
    raise NoSeparatingSample("no harmonic pair in retry budget")


def sample_strip_pairs(rng: random.Random, *, min_gap: float = 1e-2,
                       max_tries: int = 10_000) -> tuple[PointPair, PointPair]:
    """Two pairs in strip position: strong causal with crossed diagonals."""
    for _ in range(max_tries):
        thetas = sorted(sample_angles(rng, 4, min_gap))
        # adjacent points in cyclic order form the two pairs
        roll = rng.randrange(4)
        ordered = thetas[roll:] + thetas[:roll]
        a = PointPair(CirclePoint(ordered[0]), CirclePoint(ordered[1]))
        b = PointPair(CirclePoint(ordered[2]), CirclePoint(ordered[3]))
        if strong_causal(a, b):
            return a, b
    raise NoSeparatingSample("no strip configuration in retry budget")


def perturb_harmonic(M: MoebiusStructure, q: HarmonicPair, dx: float,
                     dv: float, *, w: CirclePoint | None = None) -> HarmonicPair:
    """Nearby harmonic pair: offset x and v in normalized charts, keep w, resolve y.

    ``dx`` moves the left-axis endpoint x in the chart at w, ``dv`` the
    right-axis endpoint v in the chart at x, both in units of |xy|_w.  The
    second left-axis endpoint is recomputed by projection so the result is
    exactly harmonic.
    """
    a, s = q.a, q.b
    if w is None:
        w = s.q
    v = s.other(w)
    x, y = a.p, a.q
    scale = M.base(x.theta, y.theta) / (
        M.base(x.theta, w.theta) * M.base(y.theta, w.theta)
    )
    cw_x = chart_coord(w.theta, x.theta)
    x_new = chart_point(w.theta, cw_x + dx * scale)
    cx_v = chart_coord(x_new.theta, v.theta)
    v_new = chart_point(x_new.theta, cx_v + dv * scale) if dv else v
    s_new = PointPair(v_new, w)
    y_new = rho(M, s_new, x_new)
    return HarmonicPair(PointPair(x_new, y_new), s_new)
