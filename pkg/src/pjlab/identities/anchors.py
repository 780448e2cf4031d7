"""Parameter anchors: n=0 quantities against Kummer-U ratios, the large-t
expansion of R_0, and the t=0 closed forms of the whole system.

At n = 0 the pipeline quantities have independent closed expressions,

    alpha_0 = U(1+beta, -alpha-1, t) / U(1+beta, -alpha, t),
    R_0     = U(beta,   -alpha,   t) / U(1+beta, -alpha, t),

and for large t the two-term expansion R_0 = t (1 + (alpha+2beta+2)/t + ...)
holds; at t = 0 everything degenerates to rational functions of
(n, alpha, beta).
"""

from __future__ import annotations

from mpmath import mp, mpf

from ..auxiliary import alpha_t0, beta_t0, R_t0, r_t0
from ..moments import kummer_u
from ..pipeline import Pipeline, build_pipeline
from ..precision import PrecisionCtx
from ..weights import WeightParams
from .registry import tolerance_for
from .report import probe_report, report

LARGE_T_PROBES = (100, 1000, 10000)


def _R0_from_u(params: WeightParams, t, ctx: PrecisionCtx):
    a, b = params.alpha, params.beta
    num = kummer_u(b, -a, t, ctx).value
    den = kummer_u(1 + b, -a, t, ctx).value
    return num / den


def check_n0_kummer(params: WeightParams, ctx: PrecisionCtx, pipe: Pipeline = None, tols=None):
    """n=0 anchors at params.t plus the large-t and t->0 probes of R_0."""
    if not params.t > 0:
        raise ValueError("n=0 Kummer anchors need t > 0")
    if pipe is None:
        pipe = build_pipeline(params, 1, ctx)
    a, b, t = params.alpha, params.beta, params.t
    out = []
    with mp.workprec(ctx.working_bits):
        u_den = kummer_u(1 + b, -a, t, ctx).value
        alpha0_ref = kummer_u(1 + b, -a - 1, t, ctx).value / u_den
        R0_ref = kummer_u(b, -a, t, ctx).value / u_den
        out.append(
            report("anchor.alpha0_ratio", 0, t, [pipe.ortho.alpha_rec[0], -alpha0_ref],
                   tolerance_for("anchor.alpha0_ratio", tols), ctx)
        )
        out.append(
            report("anchor.R0_ratio", 0, t, [pipe.aux.R[0], -R0_ref],
                   tolerance_for("anchor.R0_ratio", tols), ctx)
        )
        # large-t: remainder rem = R_0/t - 1 - (alpha+2beta+2)/t is O(1/t^2);
        # t*rem must stay bounded (decreasing here) and t^2*rem approaches a
        # constant, so consecutive decades agree within a factor of 4
        a1 = []
        a2 = []
        for tv in LARGE_T_PROBES:
            tv = mpf(tv)
            rem = _R0_from_u(params, tv, ctx) / tv - 1 - (a + 2 * b + 2) / tv
            a1.append(tv * rem)
            a2.append(tv * tv * rem)
        bounded = abs(a1[1]) <= abs(a1[0]) and abs(a1[2]) <= abs(a1[1])
        ratio = abs(a2[1]) / (abs(a2[2]) + ctx.residual_floor())
        factor4 = bool(ratio < 4 and ratio > mpf("0.25"))
        out.append(
            probe_report(
                "anchor.R0_large_t", 0, t, abs(a1[-1]), abs(a1[0]) + 1, ctx,
                notes=(
                    f"t*rem at {LARGE_T_PROBES}: "
                    + ", ".join(mp.nstr(v, 4) for v in a1)
                    + ("; t^2*rem decade ratio ok" if (bounded and factor4) else "; decay pattern violated")
                ),
            )
        )
        if not (bounded and factor4):
            out[-1] = probe_report(
                "anchor.R0_large_t", 0, t, mp.inf, mp.one, ctx,
                notes="large-t decay pattern violated",
            )
        # continuity down to the t=0 closed form R_0(0) = 1 + alpha + beta
        r0_small = _R0_from_u(params, mpf("0.001"), ctx)
        out.append(
            probe_report(
                "anchor.R0_continuity", 0, t, abs(r0_small - (1 + a + b)), mpf("0.01"), ctx,
                notes="R_0 at t=1e-3 against the t=0 value",
            )
        )
    return out


def check_t0_closed_forms(params: WeightParams, n_range, ctx: PrecisionCtx, pipe: Pipeline = None, tols=None):
    """Pipeline at t=0 against the rational closed forms, plus the
    classical limits alpha_n -> 1/2, beta_n -> 1/16 (checked on the closed
    forms themselves, including far beyond the pipeline range)."""
    if not params.t == 0:
        raise ValueError("t must be 0 for the closed-form anchors")
    n_range = sorted(n_range)
    if pipe is None:
        pipe = build_pipeline(params, max(n_range) + 1, ctx)
    out = []
    bits = ctx.working_bits
    with mp.workprec(bits):
        for n in n_range:
            out.append(
                report("anchor.t0_alpha", n, 0, [pipe.ortho.alpha_rec[n], -alpha_t0(params, n, bits)],
                       tolerance_for("anchor.t0_alpha", tols), ctx)
            )
            if n >= 1:
                out.append(
                    report("anchor.t0_beta", n, 0, [pipe.ortho.beta_rec[n], -beta_t0(params, n, bits)],
                           tolerance_for("anchor.t0_beta", tols), ctx)
                )
            out.append(
                report("anchor.t0_R", n, 0, [pipe.aux.R[n], -R_t0(params, n, bits)],
                       tolerance_for("anchor.t0_R", tols), ctx)
            )
            if n >= 1:
                out.append(
                    report("anchor.t0_r", n, 0, [pipe.aux.r[n], -r_t0(params, n, bits)],
                           tolerance_for("anchor.t0_r", tols), ctx)
                )
        # classical limits on the closed forms: gaps shrink monotonely in n
        # over the requested range and are below 1e-3 by n = 200
        gaps_a = [abs(alpha_t0(params, n, bits) - mpf("0.5")) for n in n_range if n >= 1]
        gaps_b = [abs(beta_t0(params, n, bits) - mpf(1) / 16) for n in n_range if n >= 1]
        monotone = all(x2 <= x1 for x1, x2 in zip(gaps_a, gaps_a[1:])) and all(
            x2 <= x1 for x1, x2 in zip(gaps_b, gaps_b[1:])
        )
        far = max(
            abs(alpha_t0(params, 200, bits) - mpf("0.5")),
            abs(beta_t0(params, 200, bits) - mpf(1) / 16),
        )
        value = far if monotone else mp.inf
        out.append(
            probe_report(
                "anchor.t0_limits", 200, 0, value, mpf("1e-3"), ctx,
                notes="closed-form gaps to (1/2, 1/16): monotone over range, n=200 below 1e-3",
            )
        )
    return out
