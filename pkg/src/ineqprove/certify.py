"""Positivity certification and the full inequality-proof pipeline.

The pipeline proves f(x) >= 0 on [a, b] (roots allowed at the endpoints) by

1. computing the endpoint limits alpha, beta of the quotient extension g;
   both must be positive, a negative one disproves the inequality outright;
2. approximating g by a degree-k minimax polynomial P with error estimate
   delta_hat (Remez exchange), verifying equioscillation;
3. checking |g - P| <= delta_hat on a dense sample grid;
4. certifying P(x) - delta_hat * margin > 0 rigorously by adaptive interval
   bisection with outward rounding.

Step 3 is a sampled check, not a proof, and step 2's delta_hat is a
numerical estimate; every report therefore carries a fixed caveat.  The
verdict vocabulary is three-valued: a failed certification never claims
disproof, only a concrete negative witness does.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import mpmath
from mpmath import mp

from .errors import (
    AlternationError,
    CertificationError,
    ConfigurationError,
    ConvergenceError,
    DomainError,
    IneqproveError,
    LimitError,
    MultiplicityError,
    PrecisionUnreachableError,
    SingularSystemError,
    ZeroLimitError,
)
from .expr import Expression, evaluate, parse
from .precision import Precision, decimal_str, to_mpf, working
from .quotient import (
    LimitMethod,
    build_quotient_function,
    endpoint_limits_numeric,
    endpoint_limits_taylor,
)
from .remez import (
    CachedFunction,
    Polynomial,
    minimax,
    verify_equioscillation,
)

CAVEAT = (
    "The verdict relies on the Remez error estimate delta_hat being a true "
    "bound for |g - P| over the whole segment at the chosen working "
    "precision; that bound is verified only on a finite sample grid. The "
    "positivity certificate is rigorous for the polynomial side alone."
)

CERTIFICATION_MIN_DIGITS = 30


class Outcome(Enum):
    PROCEED = "proceed"
    DISPROVEN_ALPHA = "disproven_alpha"
    DISPROVEN_BETA = "disproven_beta"


@dataclass(frozen=True)
class GridStatistics:
    passed: bool
    max_residual: mpmath.mpf
    max_location: mpmath.mpf
    threshold: mpmath.mpf
    sample_count: int


@dataclass(frozen=True)
class PositivityCertificate:
    """Tiling of the segment with verified positive lower bounds of P - delta*margin."""

    polynomial: Polynomial
    delta: mpmath.mpf
    margin_factor: mpmath.mpf
    subintervals: tuple
    global_min_bound: mpmath.mpf


@dataclass(frozen=True)
class ProofSettings:
    precision: Precision = Precision(50)
    tol: object = "1e-12"
    grid_multiplier: int = 64
    residual_grid_size: object = None
    margin_factor: object = "1.000001"
    equioscillation_rel_tol: object = "1e-6"
    max_iterations: int = 50
    limit_method: str = "auto"
    alpha_override: object = None
    beta_override: object = None


@dataclass(frozen=True)
class ProofReport:
    verdict: str
    function_source: str
    segment: tuple
    n: object
    m: object
    degree: int
    alpha: object = None
    beta: object = None
    limit_method: object = None
    delta_hat: object = None
    lower_bound: object = None
    upper_bound: object = None
    nodes: object = None
    polynomial: object = None
    global_min_bound: object = None
    certificate: object = None
    residual: object = None
    equioscillation: object = None
    minimax_result: object = None
    caveat: str = CAVEAT
    settings: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


def precondition_check(alpha, beta, p: Precision = Precision()) -> Outcome:
    """Both limits must be positive; a zero limit means misconfigured n, m."""
    with working(p):
        av = to_mpf(alpha)
        bv = to_mpf(beta)
        floor = mp.mpf(10) ** (-(p.decimal_digits - 10))
        for name, v in (("alpha", av), ("beta", bv)):
            if abs(v) <= floor:
                raise ZeroLimitError(
                    f"endpoint limit {name} is zero at working precision; "
                    "n, m are misconfigured (limit premise violated)",
                    endpoint=name,
                )
        if av < 0:
            return Outcome.DISPROVEN_ALPHA
        if bv < 0:
            return Outcome.DISPROVEN_BETA
        return Outcome.PROCEED


def residual_check(g, polynomial: Polynomial, delta, grid_size: int,
                   p: Precision = Precision(), extra_points=()) -> GridStatistics:
    """Sampled verification of |g - P| <= delta on Chebyshev-distributed points.

    This is evidence, not proof; the pipeline records it and the caveat says
    so.  ``extra_points`` lets callers include the equioscillation nodes.
    """
    degree = polynomial.degree
    if grid_size < 4 * (degree + 2):
        raise ConfigurationError(
            f"grid_size must be at least 4*(degree+2) = {4 * (degree + 2)}"
        )
    with working(p):
        a, b = polynomial.segment
        mid = (a + b) / 2
        hw = (b - a) / 2
        pts = [a]
        for i in range(1, grid_size - 1):
            pts.append(mid - hw * mp.cos(mp.pi * i / (grid_size - 1)))
        pts.append(b)
        pts.extend(to_mpf(x) for x in extra_points)
        dv = to_mpf(delta)
        max_res = mp.mpf(-1)
        max_loc = pts[0]
        for x in pts:
            r = abs(g(x) - polynomial.evaluate(x))
            if r > max_res:
                max_res = r
                max_loc = x
        threshold = dv * (1 + mp.mpf(10) ** -6)
        return GridStatistics(
            passed=bool(max_res <= threshold),
            max_residual=+max_res,
            max_location=+max_loc,
            threshold=+threshold,
            sample_count=len(pts),
        )


def _iv_clenshaw(ivc, u, iv):
    if len(ivc) == 1:
        return ivc[0]
    d = 2 * u
    b1 = b2 = iv.mpf(0)
    for cj in reversed(ivc[1:]):
        b1, b2 = d * b1 - b2 + cj, b1
    return u * b1 - b2 + ivc[0]


def _iv_derivative_coeffs(ivc, iv):
    """Chebyshev coefficients of d/du of sum c_j T_j(u), in interval arithmetic."""
    k = len(ivc) - 1
    if k == 0:
        return [iv.mpf(0)]
    d = [iv.mpf(0)] * k
    d[k - 1] = iv.mpf(2 * k) * ivc[k]
    if k >= 2:
        d[k - 2] = iv.mpf(2 * (k - 1)) * ivc[k - 1]
    for j in range(k - 3, -1, -1):
        d[j] = d[j + 2] + iv.mpf(2 * (j + 1)) * ivc[j + 1]
    d[0] = d[0] / 2
    return d


def _leaf_range(ivc, ivd, A, B, lo, hi, iv):
    """Rigorous (low, high) bounds of the polynomial range over [lo, hi].

    Intersects the direct interval Clenshaw enclosure with a mean-value form
    P(mid) + P'(X) (X - mid); the second is far tighter for narrow leaves at
    higher degrees, where the Clenshaw recurrence's dependency growth makes
    the direct enclosure balloon.
    """
    X = iv.mpf([lo, hi])
    span = B - A
    u = (2 * X - A - B) / span
    direct = _iv_clenshaw(ivc, u, iv)
    mid = (lo + hi) / 2
    u_mid = (2 * iv.mpf(mid) - A - B) / span
    at_mid = _iv_clenshaw(ivc, u_mid, iv)
    # d/dx = (2/(b-a)) d/du
    deriv = _iv_clenshaw(ivd, u, iv) * (iv.mpf(2) / span)
    mvf = at_mid + deriv * (X - iv.mpf(mid))
    low = max(mp.mpf(direct.a), mp.mpf(mvf.a))
    high = min(mp.mpf(direct.b), mp.mpf(mvf.b))
    return low, high


def certify_positive(polynomial: Polynomial, delta, margin_factor,
                     p: Precision = Precision(), *, rel_slack="0.01",
                     max_depth: int = 47, min_width_rel="1e-14",
                     max_subintervals: int = 200000) -> PositivityCertificate:
    """Rigorous proof that P(x) - delta*margin_factor > 0 on the segment.

    Adaptive bisection; each leaf's lower bound comes from outward-rounded
    interval evaluation of the Chebyshev form (direct Clenshaw intersected
    with a mean-value form), so ``global_min_bound`` is a true lower bound
    for P - delta*margin on [a, b].  Leaves are refined slightly past the
    first positive bound (until the enclosure is tight relative to it) so
    the reported bound is close to the real minimum.

    Raises CertificationError with the deepest failing subinterval when a
    leaf reaches the width floor without a positive bound; that signals
    delta too large for this degree, not a disproof.
    """
    if p.decimal_digits < CERTIFICATION_MIN_DIGITS:
        raise ConfigurationError(
            f"certification requires at least {CERTIFICATION_MIN_DIGITS} decimal digits, "
            f"got {p.decimal_digits}"
        )
    from mpmath import iv

    with working(p):
        dv = to_mpf(delta)
        mv = to_mpf(margin_factor)
        slack = to_mpf(rel_slack)
        if dv < 0:
            raise ConfigurationError("delta must be nonnegative")
        if not (1 < mv <= 2):
            raise ConfigurationError("margin_factor must lie in (1, 2]")
        a, b = polynomial.segment
        min_width = (b - a) * to_mpf(min_width_rel)
        old_prec = iv.prec
        iv.prec = mp.prec
        try:
            inflated = iv.mpf(dv) * iv.mpf(mv)
            ivc = [iv.mpf(c) for c in polynomial.coefficients]
            ivd = _iv_derivative_coeffs(ivc, iv)
            A = iv.mpf(a)
            B = iv.mpf(b)
            stack = [(a, b, 0)]
            leaves = []
            while stack:
                lo, hi, depth = stack.pop()
                enc_low, enc_high = _leaf_range(ivc, ivd, A, B, lo, hi, iv)
                lower = mp.mpf((iv.mpf(enc_low) - inflated).a)
                diameter = enc_high - enc_low
                at_floor = (hi - lo) <= min_width or depth >= max_depth
                if lower > 0 and (diameter <= slack * lower or at_floor):
                    leaves.append((lo, hi, +lower))
                    continue
                if at_floor:
                    raise CertificationError(
                        "positivity not certified: subinterval "
                        f"[{mpmath.nstr(lo, 17)}, {mpmath.nstr(hi, 17)}] reached the "
                        f"width floor with lower bound {mpmath.nstr(lower, 8)}; "
                        "the error bound is too large for this degree",
                        left=+lo, right=+hi, bound=+lower,
                    )
                if len(leaves) + len(stack) >= max_subintervals:
                    raise CertificationError(
                        f"positivity not certified within {max_subintervals} "
                        "subintervals; the enclosure cannot separate P from "
                        "delta at this degree",
                        left=+lo, right=+hi, bound=+lower,
                    )
                mid = (lo + hi) / 2
                stack.append((mid, hi, depth + 1))
                stack.append((lo, mid, depth + 1))
        finally:
            iv.prec = old_prec
        global_min = min(bound for _, _, bound in leaves)
        return PositivityCertificate(
            polynomial=polynomial,
            delta=+dv,
            margin_factor=+mv,
            subintervals=tuple(leaves),
            global_min_bound=+global_min,
        )


def _settings_echo(f_source, a, b, n, m, k, s: ProofSettings, residual_grid_size):
    p = s.precision
    return {
        "function": f_source,
        "interval": [decimal_str(a, p), decimal_str(b, p)],
        "n": decimal_str(n, p),
        "m": decimal_str(m, p),
        "degree": k,
        "precision_digits": p.decimal_digits,
        "tol": str(s.tol),
        "grid_multiplier": s.grid_multiplier,
        "residual_grid_size": residual_grid_size,
        "margin_factor": str(s.margin_factor),
        "equioscillation_rel_tol": str(s.equioscillation_rel_tol),
        "max_iterations": s.max_iterations,
        "limit_method": s.limit_method,
        "alpha_override": None if s.alpha_override is None else str(s.alpha_override),
        "beta_override": None if s.beta_override is None else str(s.beta_override),
    }


def _disproof_witness(f: Expression, gc: CachedFunction, p: Precision, scale):
    """Interior sample with clearly negative f, if the cache holds one."""
    with working(p):
        floor = mp.mpf(10) ** (-(p.decimal_digits - 15)) * max(mp.mpf(1), abs(scale))
        worst_x = None
        worst_g = mp.mpf(0)
        for x, gval in gc.values.items():
            if gval < worst_g:
                worst_x, worst_g = x, gval
        if worst_x is None or worst_g >= -floor:
            return None
        try:
            fv = evaluate(f, worst_x, p)
        except IneqproveError:
            return None
        if fv < -floor:
            return (+worst_x, +fv)
        return None


def prove_inequality(f, a, b, n, m, k: int,
                     settings: ProofSettings = None) -> ProofReport:
    """Run the full pipeline and return a ProofReport.

    ``f`` may be an Expression or source text.  Stage failures after the
    sign preconditions yield an 'inconclusive' verdict naming the stage; a
    negative endpoint limit or a concrete negative interior sample yields
    'disproven'.
    """
    s = settings or ProofSettings()
    p = s.precision
    if p.decimal_digits < CERTIFICATION_MIN_DIGITS:
        raise ConfigurationError(
            f"the proof pipeline certifies only at >= {CERTIFICATION_MIN_DIGITS} digits"
        )
    if isinstance(f, str):
        f = parse(f)
    if not isinstance(k, int) or k < 0:
        raise ConfigurationError(f"degree must be a nonnegative integer, got {k!r}")
    with working(p):
        av = to_mpf(a)
        bv = to_mpf(b)
        nv = to_mpf(n)
        mv = to_mpf(m)
        if not av < bv:
            raise ConfigurationError("segment must satisfy a < b")
        if nv < 0 or mv < 0:
            raise ConfigurationError("orders n, m must be nonnegative")

    residual_grid_size = s.residual_grid_size or 2 * s.grid_multiplier * (k + 2)
    echo = _settings_echo(f.source_text, av, bv, nv, mv, k, s, residual_grid_size)
    base = dict(
        function_source=f.source_text, segment=(av, bv), n=nv, m=mv, degree=k,
        settings=echo,
    )
    timings = {"g_evaluations": 0, "remez_iterations": 0,
               "residual_samples": 0, "certificate_subintervals": 0}
    diagnostics = {}

    def inconclusive(stage, message, **extra):
        diagnostics.update({"stage": stage, "message": message})
        diagnostics.update(extra)
        return ProofReport(verdict="inconclusive", timings=timings,
                           diagnostics=diagnostics, **base)

    # endpoint limits
    if s.limit_method not in ("auto", "taylor", "numeric", "user"):
        raise ConfigurationError(f"unknown limit method {s.limit_method!r}")
    has_override = s.alpha_override is not None or s.beta_override is not None
    if s.limit_method == "user" or (s.limit_method == "auto" and has_override):
        if s.alpha_override is None or s.beta_override is None:
            raise ConfigurationError("user-supplied limits need both alpha and beta")
        method = LimitMethod.USER_SUPPLIED
    elif s.limit_method == "taylor":
        method = LimitMethod.TAYLOR
    elif s.limit_method == "numeric":
        method = LimitMethod.NUMERIC
    else:
        with working(p):
            integral = nv == int(nv) and mv == int(mv)
        method = LimitMethod.TAYLOR if integral else LimitMethod.NUMERIC

    try:
        if method is LimitMethod.USER_SUPPLIED:
            with working(p):
                alpha = to_mpf(s.alpha_override)
                beta = to_mpf(s.beta_override)
        elif method is LimitMethod.TAYLOR:
            alpha, beta = endpoint_limits_taylor(f, av, bv, nv, mv, p)
            try:
                alpha_num, beta_num = endpoint_limits_numeric(f, av, bv, nv, mv, p)
                with working(p):
                    diagnostics["limit_cross_check"] = {
                        "alpha_numeric": decimal_str(alpha_num, p),
                        "beta_numeric": decimal_str(beta_num, p),
                        "alpha_relative_gap": decimal_str(
                            abs(alpha - alpha_num) / max(abs(alpha), mp.mpf(10) ** -30), p),
                        "beta_relative_gap": decimal_str(
                            abs(beta - beta_num) / max(abs(beta), mp.mpf(10) ** -30), p),
                    }
            except IneqproveError as exc:
                diagnostics["limit_cross_check"] = {"failed": str(exc)}
        else:
            alpha, beta = endpoint_limits_numeric(f, av, bv, nv, mv, p)
    except (LimitError, MultiplicityError, DomainError, PrecisionUnreachableError,
            ZeroDivisionError) as exc:
        return inconclusive("endpoint_limits", f"{type(exc).__name__}: {exc}")

    base.update(alpha=alpha, beta=beta, limit_method=method.value)

    # sign preconditions
    try:
        outcome = precondition_check(alpha, beta, p)
    except ZeroLimitError as exc:
        return inconclusive("precondition", f"ZeroLimitError: {exc}")
    if outcome is not Outcome.PROCEED:
        which = "alpha" if outcome is Outcome.DISPROVEN_ALPHA else "beta"
        diagnostics.update({
            "stage": "precondition",
            "message": f"endpoint limit {which} is negative; the inequality fails "
                       f"near that endpoint",
            "negative_limit": which,
        })
        return ProofReport(verdict="disproven", timings=timings,
                           diagnostics=diagnostics, **base)

    qf = build_quotient_function(f, av, bv, nv, mv, alpha, beta, method, p)
    gc = CachedFunction(qf.evaluate)
    with working(p):
        limit_scale = max(abs(alpha), abs(beta))

    def fold_failure(stage, exc):
        witness = _disproof_witness(f, gc, p, limit_scale)
        timings["g_evaluations"] = gc.calls
        if witness is not None:
            x, fv = witness
            diagnostics.update({
                "stage": stage,
                "message": f"{type(exc).__name__}: {exc}" if exc is not None else "negative sample",
                "witness": {"x": decimal_str(x, p), "f_value": decimal_str(fv, p)},
            })
            return ProofReport(verdict="disproven", timings=timings,
                               diagnostics=diagnostics, **base)
        if exc is None:
            return None
        return inconclusive(stage, f"{type(exc).__name__}: {exc}")

    # minimax approximation of g
    try:
        mr = minimax(gc, av, bv, k, tol=s.tol, p=p,
                     grid_multiplier=s.grid_multiplier,
                     max_iterations=s.max_iterations)
    except (ConvergenceError, AlternationError, SingularSystemError, DomainError,
            PrecisionUnreachableError) as exc:
        return fold_failure("minimax", exc)
    timings["remez_iterations"] = mr.iterations
    base.update(delta_hat=mr.delta_hat, lower_bound=mr.lower_bound,
                upper_bound=mr.upper_bound, nodes=mr.nodes,
                polynomial=mr.polynomial, minimax_result=mr)

    # equioscillation gate
    eq = verify_equioscillation(mr, gc, rel_tol=s.equioscillation_rel_tol, p=p)
    base.update(equioscillation=eq)
    diagnostics["equioscillation"] = {
        "passed": eq.passed,
        "spread": decimal_str(eq.spread, p) if eq.spread is not None else None,
        "message": eq.message,
    }
    if not eq.passed:
        result = fold_failure("equioscillation", None)
        if result is not None:
            return result
        timings["g_evaluations"] = gc.calls
        return inconclusive("equioscillation", eq.message)

    # sampled residual bound
    try:
        stats = residual_check(gc, mr.polynomial, mr.delta_hat,
                               residual_grid_size, p, extra_points=mr.nodes)
    except (DomainError, PrecisionUnreachableError) as exc:
        return fold_failure("residual_check", exc)
    timings["residual_samples"] = stats.sample_count
    base.update(residual=stats)
    diagnostics["residual_check"] = {
        "passed": stats.passed,
        "max_residual": decimal_str(stats.max_residual, p),
        "max_location": decimal_str(stats.max_location, p),
        "threshold": decimal_str(stats.threshold, p),
    }
    if not stats.passed:
        result = fold_failure("residual_check", None)
        if result is not None:
            return result
        timings["g_evaluations"] = gc.calls
        return inconclusive("residual_check",
                            "sampled residual exceeds delta_hat; the Remez result "
                            "does not bound g on this grid")

    # rigorous positivity of P - delta*margin
    try:
        cert = certify_positive(mr.polynomial, mr.delta_hat, s.margin_factor, p)
    except CertificationError as exc:
        result = fold_failure("positivity", exc)
        if result is not None:
            return result
        timings["g_evaluations"] = gc.calls
        return inconclusive(
            "positivity", str(exc),
            failing_subinterval={
                "left": decimal_str(exc.left, p) if exc.left is not None else None,
                "right": decimal_str(exc.right, p) if exc.right is not None else None,
                "bound": decimal_str(exc.bound, p) if exc.bound is not None else None,
            },
        )
    timings["certificate_subintervals"] = len(cert.subintervals)
    timings["g_evaluations"] = gc.calls
    base.update(global_min_bound=cert.global_min_bound, certificate=cert)
    diagnostics["stage"] = "complete"
    diagnostics["message"] = "all stages passed"
    return ProofReport(verdict="proven", timings=timings,
                       diagnostics=diagnostics, **base)


def report_to_json(report: ProofReport, p: Precision = None) -> str:
    """Serialize a ProofReport to its documented JSON shape.

    Field order and decimal rendering are fixed, so identical runs produce
    byte-identical output.
    """
    if p is None:
        digits = report.settings.get("precision_digits", 50)
        p = Precision(digits)
    doc = {
        "verdict": report.verdict,
        "alpha": decimal_str(report.alpha, p) if report.alpha is not None else None,
        "beta": decimal_str(report.beta, p) if report.beta is not None else None,
        "n": decimal_str(report.n, p),
        "m": decimal_str(report.m, p),
        "degree": report.degree,
        "delta_hat": decimal_str(report.delta_hat, p) if report.delta_hat is not None else None,
        "lower_bound": decimal_str(report.lower_bound, p) if report.lower_bound is not None else None,
        "upper_bound": decimal_str(report.upper_bound, p) if report.upper_bound is not None else None,
        "nodes": [decimal_str(t, p) for t in report.nodes] if report.nodes is not None else None,
        "polynomial_coefficients": (
            [decimal_str(c, p) for c in report.polynomial.coefficients]
            if report.polynomial is not None else None
        ),
        "global_min_bound": (
            decimal_str(report.global_min_bound, p)
            if report.global_min_bound is not None else None
        ),
        "caveat": report.caveat,
        "settings": report.settings,
        "timings": report.timings,
        "diagnostics": report.diagnostics,
    }
    return json.dumps(doc, indent=2, ensure_ascii=True)
