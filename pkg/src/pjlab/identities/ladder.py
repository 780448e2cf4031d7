"""Pointwise checks of the ladder relations, their compatibility
conditions, and structural facts about the orthogonal system.

Complex sample points are drawn once, with a fixed seed, from the annulus
1.5 <= |z - 1/2| <= 3: reproducible, and safely away from the poles at
0, 1 and the support [0,1].
"""

from __future__ import annotations

import random

from mpmath import mp, mpc, mpf

from ..auxiliary import an_bn_eval, an_bn_oracle
from ..moments import SHIFT_PLAIN, moment_beta_closed, moment_quad
from ..ortho import hankel_det_oracle, poly_eval, poly_eval_coeffs
from ..pipeline import Pipeline
from ..precision import PrecisionCtx
from ..quad import de_quad_unit_vec
from ..weights import v_prime_eval
from .registry import tolerance_for
from .report import normalized_residual, probe_report, report

ANNULUS_SEED = 20210617


def annulus_sample(count: int, bits: int, seed: int = ANNULUS_SEED):
    """`count` deterministic complex points with 1.5 <= |z - 1/2| <= 3."""
    rng = random.Random(seed)
    out = []
    with mp.workprec(bits):
        for _ in range(count):
            radius = mpf("1.5") + mpf("1.5") * mpf(repr(rng.random()))
            angle = 2 * mp.pi * mpf(repr(rng.random()))
            out.append(mpf("0.5") + radius * mp.exp(mpc(0, 1) * angle))
    return out


def check_ladder(pipe: Pipeline, n: int, ctx: PrecisionCtx, tols=None, points=8):
    """Ladder relations and the three compatibility conditions at order n.

    Each identity reports the worst normalized residual over the annulus
    sample; needs pipeline rows through n+1.
    """
    if n < 1 or n + 1 > pipe.n_max:
        raise ValueError("need 1 <= n <= n_max - 1")
    sys, aux, params = pipe.ortho, pipe.aux, pipe.params
    out = []
    with mp.workprec(ctx.working_bits):
        floor = ctx.residual_floor()
        zs = annulus_sample(points, ctx.working_bits)
        worst = {
            "ladder.lower": mp.zero,
            "ladder.raise": mp.zero,
            "ladder.compat_sum": mp.zero,
            "ladder.compat_diff": mp.zero,
            "ladder.compat_product": mp.zero,
        }
        for z in zs:
            pn, dpn = poly_eval(sys, n, z)
            pm, dpm = poly_eval(sys, n - 1, z)
            pp, _ = poly_eval(sys, n + 1, z)
            vp = v_prime_eval(params, z)
            An, Bn = an_bn_eval(aux, n, z)
            Am, _ = an_bn_eval(aux, n - 1, z)
            Ap, Bp = an_bn_eval(aux, n + 1, z)
            beta_n = sys.beta_rec[n]
            beta_p = sys.beta_rec[n + 1]
            cand = {
                "ladder.lower": [dpn, Bn * pn, -beta_n * An * pm],
                "ladder.raise": [dpm, -(Bn + vp) * pm, Am * pn],
                "ladder.compat_sum": [Bp, Bn, -(z - sys.alpha_rec[n]) * An, vp],
                "ladder.compat_diff": [
                    mp.one,
                    (z - sys.alpha_rec[n]) * (Bp - Bn),
                    -beta_p * Ap,
                    beta_n * Am,
                ],
                "ladder.compat_product": [
                    Bn * Bn,
                    vp * Bn,
                    sum(an_bn_eval(aux, j, z)[0] for j in range(n)),
                    -beta_n * An * Am,
                ],
            }
            for name, terms in cand.items():
                r = normalized_residual(terms, floor)
                if r > worst[name]:
                    worst[name] = r
        out = [
            _raw_report(name, n, params.t, worst[name], tolerance_for(name, tols), ctx,
                        notes=f"max over {points} annulus points")
            for name in worst
        ]
    return out


def _raw_report(name, n, t, residual, tol, ctx, notes=""):
    from .report import ResidualReport

    with mp.workprec(ctx.working_bits):
        tol = mp.mpmathify(tol)
        return ResidualReport(
            identity=name, n=n, t=t, residual=residual, tolerance=tol,
            passed=bool(residual < tol), notes=notes,
        )


def check_ladder_oracle(pipe: Pipeline, n: int, z, ctx: PrecisionCtx, tols=None):
    """Defining-integral oracle for A_n, B_n at one complex z, plus the
    integration-by-parts identity for the kernel middle term."""
    sys, aux, params = pipe.ortho, pipe.aux, pipe.params
    out = []
    with mp.workprec(ctx.working_bits):
        A_or, B_or = an_bn_oracle(sys, params, n, z, ctx)
        A_pf, B_pf = an_bn_eval(aux, n, z)
        out.append(
            report("ladder.A_integral", n, params.t, [A_or, -A_pf],
                   tolerance_for("ladder.A_integral", tols), ctx, z=z)
        )
        out.append(
            report("ladder.B_integral", n, params.t, [B_or, -B_pf],
                   tolerance_for("ladder.B_integral", tols), ctx, z=z)
        )
        # parts identity: int P_n^2 w (a y + t)/y^2 dy = -int P_n^2 w b/(y-1) dy
        a, b, t = params.alpha, params.beta, params.t

        def f(x, xc):
            w = mp.exp(a * mp.log(x) + b * mp.log(xc))
            if t > 0:
                w *= mp.exp(-t / x)
            pn, _ = poly_eval(sys, n, x)
            pn2 = pn * pn
            return (pn2 * w * (a * x + t) / (x * x), pn2 * w * (-b) / xc)

        exponent_zero = min(a - 1, 0) if t == 0 else 0
        values, _b, _nev, _ = de_quad_unit_vec(
            f, 2, ctx, exponent_zero=exponent_zero, exponent_one=b - 1
        )
        out.append(
            report("aux.parts_identity", n, params.t, [values[0], values[1]],
                   tolerance_for("aux.parts_identity", tols), ctx)
        )
    return out


def check_core_structure(pipe: Pipeline, n: int, ctx: PrecisionCtx, tols=None, points=16):
    """Structural residuals: recurrence consistency on Horner-evaluated
    polynomials, the subleading telescoping sum, the determinant oracle,
    orthogonality and the first-moment formula for alpha_n by quadrature."""
    sys, params = pipe.ortho, pipe.params
    if n < 1 or n + 1 > pipe.n_max:
        raise ValueError("need 1 <= n <= n_max - 1")
    out = []
    with mp.workprec(ctx.working_bits):
        floor = ctx.residual_floor()
        zs = annulus_sample(points, ctx.working_bits, seed=ANNULUS_SEED + 1)
        worst = mp.zero
        for z in zs:
            pn = poly_eval_coeffs(sys, n, z)
            pm = poly_eval_coeffs(sys, n - 1, z)
            pp = poly_eval_coeffs(sys, n + 1, z)
            r = normalized_residual(
                [z * pn, -pp, -sys.alpha_rec[n] * pn, -sys.beta_rec[n] * pm], floor
            )
            if r > worst:
                worst = r
        out.append(
            _raw_report("core.recurrence", n, params.t, worst,
                        tolerance_for("core.recurrence", tols), ctx,
                        notes=f"max over {points} annulus points, Horner route")
        )
        out.append(
            report("core.subleading_sum", n, params.t,
                   [sys.p1[n]] + [sys.alpha_rec[j] for j in range(n)],
                   tolerance_for("core.subleading_sum", tols), ctx)
        )
        det = hankel_det_oracle(pipe.moments[SHIFT_PLAIN], n, ctx)
        out.append(
            report("core.hankel_product", n, params.t, [det / sys.D[n], -mp.one],
                   tolerance_for("core.hankel_product", tols), ctx,
                   notes="elimination oracle over pivot product, as a ratio")
        )
        # quadrature route: orthogonality and the alpha_n moment formula
        a, b, t = params.alpha, params.beta, params.t

        def f(x, xc):
            w = mp.exp(a * mp.log(x) + b * mp.log(xc))
            if t > 0:
                w *= mp.exp(-t / x)
            pn, _ = poly_eval(sys, n, x)
            pm, _ = poly_eval(sys, n - 1, x)
            return (pn * pm * w, x * pn * pn * w, pn * pn * w)

        values, _bnds, _nev, _ = de_quad_unit_vec(f, 3, ctx, exponent_one=b)
        cross, first_moment, norm2 = values
        ortho_resid = abs(cross) / (mp.sqrt(sys.h[n] * sys.h[n - 1]) + floor)
        out.append(
            _raw_report("core.orthogonality", n, params.t, ortho_resid,
                        tolerance_for("core.orthogonality", tols), ctx,
                        notes="normalized by the geometric mean of the norms")
        )
        out.append(
            report("core.alpha_subleading", n, params.t,
                   [first_moment / norm2, -sys.alpha_rec[n]],
                   tolerance_for("core.alpha_subleading", tols), ctx,
                   notes="alpha_n as the first moment of P_n^2, by quadrature")
        )
    return out


def check_moment_routes(pipe: Pipeline, ctx: PrecisionCtx, tols=None):
    """Route agreement across the moment table (or the Beta anchor at t=0)."""
    params = pipe.params
    table = pipe.moments[SHIFT_PLAIN]
    name = "core.moment_routes"
    with mp.workprec(ctx.working_bits):
        if params.t > 0:
            if table.route_delta is None:
                return [
                    probe_report(name, 0, params.t, mp.inf, mp.one, ctx,
                                 notes="table built without cross-check")
                ]
            worst = mp.zero
            for k, d in table.route_delta.items():
                ratio = d / (table.route_budget[k] + ctx.residual_floor())
                if ratio > worst:
                    worst = ratio
            return [
                probe_report(name, table.k_max, params.t, worst, mp.one, ctx,
                             notes="max |quad-kummer| over combined bounds, all k")
            ]
        worst = mp.zero
        for k in range(0, min(table.k_max, 4) + 1):
            closed = moment_beta_closed(params, k, SHIFT_PLAIN, ctx.working_bits)
            rel = abs(table.mu[k] - closed) / closed
            if rel > worst:
                worst = rel
        return [
            probe_report(name, min(table.k_max, 4), params.t, worst, mpf("1e-40"), ctx,
                         notes="t=0 table against the Beta closed form")
        ]
