"""Statistical verification suites.

Each suite draws seeded samples, evaluates one family of inequalities or
consistency identities, and returns a deterministic Report whose summary
carries the extremal slacks.  Suites never *prove* anything; they falsify.
Per-sample RNG streams derive from (seed, index), so results do not depend
on evaluation order.

Registered suites:

  axioms               ptolemy and monotonicity slacks on separating tetrads,
                       plus the max-alpha estimate
  cross-ratio          invariance of cross-ratio pairs under metric inversion
  self-contracted      nested chart intervals have increasing lengths
  harmonic-separation  harmonic pairs separate
  rho-involution       projection is involutive, endpoints fixed (bisection path)
  line-isometry        line coordinate is an isometry onto the reals (bisection path)
  width-bounds         strip width inequalities
  ratio-distortion     remote-chart distortion of the diagonal ratio
  parabolic-shift      prescribed shifts: short valid 3-side paths
  delta-nondegeneracy  0 < lower certificate <= upper bound for displaced pairs
  delta-topology       bounds track coordinate displacement sweeps
  delta-completeness   upper bound vanishes along a converging sequence
"""

from __future__ import annotations

import dataclasses
import math
import time

from .circle import (
    TAU,
    CirclePoint,
    PointPair,
    angular_distance,
    arc_between,
    in_open_arc,
    separates,
)
from .errors import ConfigError
from .lines import (
    Line,
    common_perpendicular,
    line_distance,
    make_strip,
    ratio_distortion,
    rho,
    rho_bisect,
    width_bounds,
)
from .reports import ExperimentConfig, Report, format_chart_value
from .sampling import (
    perturb_harmonic,
    sample_angles,
    sample_harmonic,
    sample_strip_pairs,
    sample_tetrad,
    stream_rng,
)
from .structures import (
    ChartMetric,
    HarmonicPair,
    MoebiusStructure,
    Tetrad,
    check_m_alpha,
    check_ptolemy,
    chart_coord,
    chart_point,
    cross_ratio,
    cross_ratio_in_chart,
    harmonic_defect,
    structure_from_name,
)
from .zigzag import (
    certificate_params,
    delta_lower_certificate,
    delta_upper,
    hm_displacement,
    parabolic_shift,
    validate_path,
    path_length,
)

MAX_EXEMPLARS = 5


def _generic(M: MoebiusStructure) -> MoebiusStructure:
    """Copy of the structure with closed-form kernels disabled."""
    return dataclasses.replace(M, exact_rho=None, exact_line_point=None)


def _points_record(points, omega: float | None) -> dict:
    omega = 0.0 if omega is None else omega
    return {
        "angles": ";".join(repr(p.theta) for p in points),
        "chart": ";".join(format_chart_value(chart_coord(omega, p.theta)) for p in points),
    }


def _finish(cfg: ExperimentConfig, summary: dict, records: list, passed: bool,
            started: float) -> Report:
    report = Report(
        config=cfg.asdict(),
        summary=summary,
        records=records,
        passed=passed,
    )
    report.runtime_seconds = time.perf_counter() - started
    return report


# ---------------------------------------------------------------------------
# Axaccording suites
# ---------------------------------------------------------------------------

def suite_axioms(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Ptolemy and monotonicity slacks over separating tetrads."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-9
    min_m = math.inf
    min_p = math.inf
    max_eq = 0.0
    alpha_est = math.inf
    violations = 0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        q = sample_tetrad("separating", rng, min_gap=cfg.min_gap)
        r = cross_ratio(M, q)
        p_slack = check_ptolemy(M, q)
        s1, s2 = check_m_alpha(M, q, cfg.alpha)
        alpha_est = min(alpha_est, (1.0 - r.r1) / r.r2, (1.0 - r.r2) / r.r1)
        min_m = min(min_m, s1, s2)
        min_p = min(min_p, p_slack)
        max_eq = max(max_eq, abs(r.r1 + r.r2 - 1.0))
        ok = s1 >= -tol and s2 >= -tol and p_slack >= -tol
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "r1": r.r1, "r2": r.r2, "ptolemy_slack": p_slack,
                   "m_slack_1": s1, "m_slack_2": s2, "ok": ok}
            rec.update(_points_record(q.points(), cfg.chart_omega))
            records.append(rec)
    alpha_est = min(1.0, max(0.0, alpha_est))
    summary = {
        "min_m_slack": min_m,
        "min_ptolemy_slack": min_p,
        "max_ptolemy_equality_defect": max_eq,
        "alpha_estimate": alpha_est,
        "violations": violations,
        "alpha": cfg.alpha,
        "tol": tol,
    }
    return _finish(cfg, summary, records, violations == 0, started)


def suite_cross_ratio(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Cross-ratio pairs agree between the base metric and any chart."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-10
    worst = 0.0
    violations = 0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        thetas = sample_angles(rng, 5, cfg.min_gap)
        q = Tetrad(*(CirclePoint(t) for t in thetas[:4]))
        omega = CirclePoint(thetas[4])
        r_base = cross_ratio(M, q)
        r_chart = cross_ratio_in_chart(ChartMetric(M, omega), q)
        dev = max(
            abs(r_base.r1 - r_chart.r1) / r_base.r1,
            abs(r_base.r2 - r_chart.r2) / r_base.r2,
        )
        worst = max(worst, dev)
        ok = dev <= tol
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "deviation": dev, "ok": ok}
            rec.update(_points_record((*q.points(), omega), cfg.chart_omega))
            records.append(rec)
    summary = {"max_relative_deviation": worst, "violations": violations, "tol": tol}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_self_contracted(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Chart intervals contract: z inside the arc (x, y) away from u implies |xz|_u < |xy|_u."""
    started = time.perf_counter()
    min_margin = math.inf
    violations = 0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        thetas = sample_angles(rng, 4, cfg.min_gap)
        x, y, u, z = (CirclePoint(t) for t in thetas)
        arc = arc_between(x, y, u)
        if not in_open_arc(arc.start.theta, arc.end.theta, z.theta):
            # relabel: take z inside by swapping with u when possible
            x, y, z, u = x, y, u, z
            arc = arc_between(x, y, u)
            if not in_open_arc(arc.start.theta, arc.end.theta, z.theta):
                continue
        cm = ChartMetric(M, u)
        margin = cm.distance(x, y) - cm.distance(x, z)
        min_margin = min(min_margin, margin)
        ok = margin > 0.0
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "margin": margin, "ok": ok}
            rec.update(_points_record((x, y, z, u), cfg.chart_omega))
            records.append(rec)
    summary = {"min_margin": min_margin, "violations": violations}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_harmonic_separation(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Sampled harmonic pairs always separate."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-9
    violations = 0
    max_defect = 0.0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        q = sample_harmonic(M, rng, min_gap=cfg.min_gap)
        defect = harmonic_defect(M, q.a, q.b)
        max_defect = max(max_defect, defect)
        ok = defect <= tol and separates(q.a, q.b)
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "defect": defect, "ok": ok}
            rec.update(_points_record(q.points(), cfg.chart_omega))
            records.append(rec)
    summary = {"max_defect": max_defect, "violations": violations, "tol": tol}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_rho_involution(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """rho is involutive (bisection kernel) and fixes axis endpoints exactly."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-9
    gen = _generic(M)
    worst = 0.0
    violations = 0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        thetas = sample_angles(rng, 3, cfg.min_gap)
        axis = PointPair(CirclePoint(thetas[0]), CirclePoint(thetas[1]))
        x = CirclePoint(thetas[2])
        y = rho_bisect(gen, axis, x)
        x_back = rho_bisect(gen, axis, y)
        err = angular_distance(x.theta, x_back.theta)
        fixed_ok = rho(gen, axis, axis.p) == axis.p and rho(gen, axis, axis.q) == axis.q
        worst = max(worst, err)
        ok = err <= tol and fixed_ok
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "involution_error": err, "endpoints_fixed": fixed_ok, "ok": ok}
            rec.update(_points_record((axis.p, axis.q, x), cfg.chart_omega))
            records.append(rec)
    summary = {"max_involution_error": worst, "violations": violations, "tol": tol}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_line_isometry(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Line coordinates are arclength: |q(t1) q(t2)| == |t1 - t2| (bisection path)."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-8
    gen = _generic(M)
    worst = 0.0
    violations = 0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        thetas = sample_angles(rng, 3, cfg.min_gap)
        axis = PointPair(CirclePoint(thetas[0]), CirclePoint(thetas[1]))
        z0 = CirclePoint(thetas[2])
        line = Line(gen, axis.p, axis.q, z0, rho_bisect(gen, axis, z0))
        t1 = rng.uniform(-5.0, 5.0)
        t2 = rng.uniform(-5.0, 5.0)
        q1 = line.point(t1)
        q2 = line.point(t2)
        err = abs(line_distance(gen, q1, q2) - abs(t1 - t2))
        worst = max(worst, err)
        ok = err <= tol
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "tau1": t1, "tau2": t2, "isometry_error": err, "ok": ok}
            rec.update(_points_record((axis.p, axis.q, z0), cfg.chart_omega))
            records.append(rec)
    summary = {"max_isometry_error": worst, "violations": violations, "tol": tol}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_width_bounds(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Strip width inequalities at the configured alpha."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-8
    min_slack = math.inf
    max_consistency = 0.0
    violations = 0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        a, b = sample_strip_pairs(rng, min_gap=cfg.min_gap)
        strip = make_strip(M, a, b)
        rep = width_bounds(M, strip, cfg.alpha)
        # consistency: |vy|_w == g and |vz|_w == h, relative
        d = M.base
        w = strip.w.theta
        vy = d(strip.v.theta, strip.y.theta) / (d(strip.v.theta, w) * d(strip.y.theta, w))
        vz = d(strip.v.theta, strip.z.theta) / (d(strip.v.theta, w) * d(strip.z.theta, w))
        cons = max(abs(vy - strip.g) / strip.g, abs(vz - strip.h) / strip.h)
        max_consistency = max(max_consistency, cons)
        min_slack = min(min_slack, rep.min_slack)
        ok = rep.ok(tol) and cons <= 1e-8
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "width": strip.width, "g": strip.g, "h": strip.h,
                   "upper_slack": rep.upper_slack,
                   "sinh_lower_slack": rep.sinh_lower_slack,
                   "chart_bound_slack": rep.chart_bound_slack,
                   "ratio_slack": rep.ratio_slack, "ok": ok}
            rec.update(_points_record((strip.x, strip.y, strip.z, strip.u), cfg.chart_omega))
            records.append(rec)
    summary = {"min_slack": min_slack, "max_perp_consistency": max_consistency,
               "violations": violations, "alpha": cfg.alpha, "tol": tol}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_ratio_distortion(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Distortion of the diagonal ratio seen from a remote chart point.

    Configurations are thin strips inside an epsilon-neighborhood of a
    reference pair, normalized to unit axis length in the chart at w; checks
    beta >= 1 - 8*eps, the alpha*beta ratio bracket, and the sinh width
    bound with the near constant (alpha*(1+alpha)*sqrt(alpha)/2)*sqrt(1-8*eps).
    """
    started = time.perf_counter()
    epsilons = (1e-2, 1e-3)
    min_beta_margin = math.inf
    min_sinh_slack = math.inf
    violations = 0
    records = []
    per_eps = max(1, cfg.samples // len(epsilons))
    idx = 0
    for eps in epsilons:
        for _ in range(per_eps):
            rng = stream_rng(cfg.seed, idx)
            idx += 1
            w_t = rng.uniform(0.0, TAU)
            x = chart_point(w_t, -0.5)
            y = chart_point(w_t, +0.5)
            v = chart_point(w_t, 0.0)
            w = CirclePoint(w_t)
            # Nested intervals around (-1/2, 1/2).  The center offset must be
            # small relative to the radius gap, otherwise the perpendicular
            # swings away and the configuration leaves the neighborhood.
            a_off = rng.uniform(0.01 * eps, 0.1 * eps)
            b_off = rng.uniform(0.01 * eps, 0.1 * eps)
            r_in, r_out = 0.5 - a_off, 0.5 + b_off
            c_in = rng.uniform(-0.02 * eps, 0.02 * eps)
            c_out = c_in + rng.uniform(-1.0, 1.0) * 0.3 * eps * (a_off + b_off)
            x2 = chart_point(w_t, c_in - r_in)
            y2 = chart_point(w_t, c_in + r_in)
            u2 = chart_point(w_t, c_out - r_out)
            z2 = chart_point(w_t, c_out + r_out)
            strip = make_strip(M, PointPair(x2, y2), PointPair(u2, z2))
            d = M.base
            scale = d(x.theta, y.theta) / (d(x.theta, w_t) * d(y.theta, w_t))

            def cw(p1, p2):
                return d(p1.theta, p2.theta) / (d(p1.theta, w_t) * d(p2.theta, w_t)) / scale

            # strip labeling may flip (x, y); align with the reference pair
            mx, my = (x, y) if cw(x, strip.x) < cw(y, strip.x) else (y, x)

            def cx(p1, p2):
                return d(p1.theta, p2.theta) / (
                    d(p1.theta, mx.theta) * d(p2.theta, mx.theta)
                ) / scale

            coords = (cw(mx, strip.x), cw(my, strip.y), cw(mx, strip.u),
                      cw(my, strip.z), cx(v, strip.v), cx(w, strip.w))
            inside = max(coords) < eps
            rep = ratio_distortion(M, strip, w, cfg.alpha)
            beta_margin = rep.beta - (1.0 - 8.0 * eps)
            c_near = 0.5 * cfg.alpha * (1.0 + cfg.alpha) * math.sqrt(cfg.alpha) \
                * math.sqrt(1.0 - 8.0 * eps)
            sinh_slack = 2.0 * math.sinh(0.5 * strip.width) - c_near * max(
                cw(strip.x, strip.u), cw(strip.y, strip.z)
            )
            min_beta_margin = min(min_beta_margin, beta_margin)
            min_sinh_slack = min(min_sinh_slack, sinh_slack)
            ok = inside and beta_margin >= 0.0 and rep.bounds_ok and sinh_slack >= -1e-12
            if not ok:
                violations += 1
            if not ok or idx <= MAX_EXEMPLARS:
                rec = {"index": idx - 1, "eps": eps, "gamma": rep.gamma,
                       "beta": rep.beta, "ratio": rep.ratio,
                       "beta_margin": beta_margin, "sinh_slack": sinh_slack,
                       "inside": inside, "ok": ok}
                rec.update(_points_record(
                    (strip.x, strip.y, strip.z, strip.u, strip.v, strip.w),
                    cfg.chart_omega))
                records.append(rec)
    summary = {"min_beta_margin": min_beta_margin, "min_sinh_slack": min_sinh_slack,
               "violations": violations, "alpha": cfg.alpha}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_parabolic_shift(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Prescribed shifts at shrinking target offsets give short valid paths."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-8
    offsets = (1e-2, 1e-3, 1e-4)
    trials = max(1, min(cfg.samples, 50))
    violations = 0
    max_endpoint_err = 0.0
    records = []
    for i in range(trials):
        rng = stream_rng(cfg.seed, i)
        q = sample_harmonic(M, rng, min_gap=max(cfg.min_gap, 0.2))
        w = q.b.q
        v = q.b.other(w)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        d = M.base
        scale = d(q.a.p.theta, q.a.q.theta) / (
            d(q.a.p.theta, w.theta) * d(q.a.q.theta, w.theta)
        )
        lengths = []
        ok = True
        for off in offsets:
            target = chart_point(w.theta, chart_coord(w.theta, v.theta) + sign * off * scale)
            path = parabolic_shift(M, q, target)
            valid, why = validate_path(M, path)
            length = path_length(M, path)
            err = _endpoint_error(path.vertices[-1], target, w)
            max_endpoint_err = max(max_endpoint_err, err)
            lengths.append(length)
            ok = ok and valid and path.n_sides <= 3 and err <= tol
        decreasing = all(lengths[k + 1] < lengths[k] for k in range(len(lengths) - 1))
        ok = ok and decreasing
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "lengths": ";".join(repr(x) for x in lengths),
                   "decreasing": decreasing, "ok": ok}
            rec.update(_points_record(q.points(), cfg.chart_omega))
            records.append(rec)
    summary = {"max_endpoint_error": max_endpoint_err, "violations": violations,
               "tol": tol}
    return _finish(cfg, summary, records, violations == 0, started)


def _endpoint_error(vertex: HarmonicPair, v_target: CirclePoint,
                    w: CirclePoint) -> float:
    """Angular mismatch between a vertex axis and the requested pair (v_target, w)."""
    best = math.inf
    for ax in vertex.axes():
        direct = max(angular_distance(ax.p.theta, v_target.theta),
                     angular_distance(ax.q.theta, w.theta))
        swapped = max(angular_distance(ax.q.theta, v_target.theta),
                      angular_distance(ax.p.theta, w.theta))
        best = min(best, direct, swapped)
    return best


def _delta_pair(M: MoebiusStructure, rng, *, lo: float, hi: float,
                min_gap: float) -> tuple[HarmonicPair, HarmonicPair]:
    q = sample_harmonic(M, rng, min_gap=min_gap)
    dx = rng.uniform(lo, hi) * (1.0 if rng.random() < 0.5 else -1.0)
    dv = rng.uniform(lo, hi) * (1.0 if rng.random() < 0.5 else -1.0)
    return q, perturb_harmonic(M, q, dx, dv)


def suite_delta_nondegeneracy(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Displaced pairs have 0 < certificate <= upper bound; equal pairs give 0."""
    started = time.perf_counter()
    params = certificate_params(cfg.alpha, cfg.epsilon)
    min_gap = max(cfg.min_gap, 0.05)
    violations = 0
    min_cert = math.inf
    max_ratio = 0.0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        q, q2 = _delta_pair(M, rng, lo=0.04, hi=0.12, min_gap=min_gap)
        disp = hm_displacement(M, q, q2)
        if disp < 1e-2:
            continue
        cert = delta_lower_certificate(M, q, q2, params, cfg.alpha)
        upper = delta_upper(M, q, q2, budget=cfg.budget)
        ok = cert is not None and 0.0 < cert <= upper
        min_cert = min(min_cert, cert if cert is not None else math.inf)
        if math.isfinite(upper) and cert:
            max_ratio = max(max_ratio, upper / cert)
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "displacement": disp, "certificate": cert,
                   "upper": upper, "ok": ok}
            rec.update(_points_record(q.points() + q2.points(), cfg.chart_omega))
            records.append(rec)
    # equal pair smoke: both bounds vanish
    rng = stream_rng(cfg.seed, cfg.samples)
    q = sample_harmonic(M, rng, min_gap=min_gap)
    zero_ok = (
        delta_lower_certificate(M, q, q, params, cfg.alpha) == 0.0
        and delta_upper(M, q, q, budget=0) == 0.0
    )
    if not zero_ok:
        violations += 1
    summary = {"min_certificate": min_cert, "max_upper_over_cert": max_ratio,
               "zero_on_equal": zero_ok, "violations": violations,
               "alpha": cfg.alpha, "epsilon": cfg.epsilon}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_delta_topology(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Bound sweep: upper bounds fall toward zero with the displacement,
    certificates stay above the displacement envelope."""
    started = time.perf_counter()
    params = certificate_params(cfg.alpha, cfg.epsilon)
    sweeps = max(1, min(cfg.samples, 20))
    displacements = (1e-1, 1e-2, 1e-3, 1e-4)
    min_gap = max(cfg.min_gap, 0.05)
    violations = 0
    records = []
    for i in range(sweeps):
        rng = stream_rng(cfg.seed, i)
        q = sample_harmonic(M, rng, min_gap=min_gap)
        uppers = []
        certs = []
        disps = []
        for dref in displacements:
            q2 = perturb_harmonic(M, q, dref, 0.0)
            disp = hm_displacement(M, q, q2)
            cert = delta_lower_certificate(M, q, q2, params, cfg.alpha)
            uppers.append(delta_upper(M, q, q2, budget=cfg.budget))
            certs.append(cert)
            disps.append(disp)
        monotone = all(uppers[k + 1] < uppers[k] for k in range(len(uppers) - 1))
        vanishing = uppers[-1] <= 1e-2
        envelope = all(
            c is not None and c >= min(params.c * d, 0.5 * params.t_eps) * (1 - 1e-9)
            for c, d in zip(certs, disps)
        )
        cert_decreasing = all(certs[k + 1] < certs[k] for k in range(len(certs) - 1))
        ok = monotone and vanishing and envelope and cert_decreasing
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i,
                   "uppers": ";".join(repr(x) for x in uppers),
                   "certs": ";".join(repr(x) for x in certs),
                   "displacements": ";".join(repr(x) for x in disps),
                   "ok": ok}
            rec.update(_points_record(q.points(), cfg.chart_omega))
            records.append(rec)
    summary = {"violations": violations, "alpha": cfg.alpha, "epsilon": cfg.epsilon}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_delta_completeness(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """A geometrically converging coordinate sequence converges in the upper bound."""
    started = time.perf_counter()
    sweeps = max(1, min(cfg.samples, 10))
    min_gap = max(cfg.min_gap, 0.05)
    violations = 0
    records = []
    for i in range(sweeps):
        rng = stream_rng(cfg.seed, i)
        q_limit = sample_harmonic(M, rng, min_gap=min_gap)
        uppers = []
        for k in range(1, 11):
            qk = perturb_harmonic(M, q_limit, 0.1 * 0.3 ** k, 0.05 * 0.3 ** k)
            uppers.append(delta_upper(M, qk, q_limit, budget=cfg.budget))
        decreasing = all(uppers[k + 1] < uppers[k] for k in range(len(uppers) - 1))
        ok = decreasing and uppers[-1] <= 1e-2 and uppers[-1] <= 0.05 * uppers[0]
        if not ok:
            violations += 1
        if not ok or i < MAX_EXEMPLARS:
            rec = {"index": i, "uppers": ";".join(repr(x) for x in uppers), "ok": ok}
            rec.update(_points_record(q_limit.points(), cfg.chart_omega))
            records.append(rec)
    summary = {"violations": violations}
    return _finish(cfg, summary, records, violations == 0, started)


def suite_fuzz(M: MoebiusStructure, cfg: ExperimentConfig) -> Report:
    """Random falsification hunt: axiom slacks plus a continuity modulus."""
    started = time.perf_counter()
    tol = cfg.tol if cfg.tol is not None else 1e-9
    min_p = math.inf
    min_m = math.inf
    violations = 0
    records = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i)
        q = sample_tetrad("separating", rng, min_gap=cfg.min_gap)
        p_slack = check_ptolemy(M, q)
        s1, s2 = check_m_alpha(M, q, cfg.alpha)
        min_p = min(min_p, p_slack)
        min_m = min(min_m, s1, s2)
        ok = p_slack >= -tol and s1 >= -tol and s2 >= -tol
        if not ok:
            violations += 1
            if len(records) < 50:
                rec = {"index": i, "ptolemy_slack": p_slack,
                       "m_slack_1": s1, "m_slack_2": s2, "ok": ok}
                rec.update(_points_record(q.points(), cfg.chart_omega))
                records.append(rec)
    moduli = {}
    rng = stream_rng(cfg.seed, cfg.samples + 1)
    for delta_exp in (1, 2, 3, 4):
        delta = 10.0 ** (-delta_exp)
        worst = 0.0
        for _ in range(200):
            t = rng.uniform(0.0, TAU)
            worst = max(worst, M.base(t, t + rng.uniform(-delta, delta)))
        moduli[f"modulus_1e-{delta_exp}"] = worst
    summary = {"min_ptolemy_slack": min_p, "min_m_slack": min_m,
               "violations": violations, "alpha": cfg.alpha, **moduli}
    return _finish(cfg, summary, records, violations == 0, started)


SUITES = {
    "axioms": suite_axioms,
    "cross-ratio": suite_cross_ratio,
    "self-contracted": suite_self_contracted,
    "harmonic-separation": suite_harmonic_separation,
    "rho-involution": suite_rho_involution,
    "line-isometry": suite_line_isometry,
    "width-bounds": suite_width_bounds,
    "ratio-distortion": suite_ratio_distortion,
    "parabolic-shift": suite_parabolic_shift,
    "delta-nondegeneracy": suite_delta_nondegeneracy,
    "delta-topology": suite_delta_topology,
    "delta-completeness": suite_delta_completeness,
    "fuzz": suite_fuzz,
}


def run_suite(cfg: ExperimentConfig) -> Report:
    """Run one named suite; deterministic for a fixed config."""
    if cfg.suite not in SUITES:
        raise ConfigError(
            f"unknown suite {cfg.suite!r}; available: {', '.join(sorted(SUITES))}"
        )
    structure = structure_from_name(cfg.structure)
    return SUITES[cfg.suite](structure, cfg)
