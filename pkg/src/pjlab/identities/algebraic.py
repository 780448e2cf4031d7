"""Stencil-free identity checks: the difference system satisfied by the
auxiliary quantities, the recurrence-coefficient formulas, the
subleading-coefficient algebra and the second-order difference equation
for the shifted log-derivative of the Hankel determinant.

Every residual is assembled verbatim from the displayed equations; no
identity is used to simplify another before evaluation.
"""

from __future__ import annotations

from mpmath import mp

from ..auxiliary import AuxSet, recurrence_from_aux
from ..ortho import OrthoSystem
from ..precision import PrecisionCtx
from .registry import tolerance_for
from .report import inconclusive_report, report


def check_difference_system(aux: AuxSet, sys: OrthoSystem, n: int, ctx: PrecisionCtx, tols=None):
    """Residuals of the eight coupled difference relations at order n.

    Rows n-1 (for n >= 1) and n+1 must exist in aux.
    """
    if n + 1 > aux.n_max:
        raise ValueError("need aux rows up to n+1")
    a, b, t = aux.params.alpha, aux.params.beta, aux.params.t
    R, Rs, r, rs = aux.R, aux.Rstar, aux.r, aux.rstar
    p1 = sys.p1
    out = []
    with mp.workprec(ctx.working_bits):
        s = 2 * n + a + b
        an = sys.alpha_rec[n]
        bn = sys.beta_rec[n] if n >= 1 else mp.zero

        def rep(name, terms):
            out.append(report(name, n, t, terms, tolerance_for(name, tols), ctx))

        rep("diff.rstar_pair", [rs[n + 1], rs[n], -t, an * Rs[n]])
        rep("diff.shift_gap", [Rs[n], -R[n], 2 * n + 1 + a + b])
        rep("diff.r_pair", [r[n + 1], r[n], -(1 - an) * R[n], b])
        if n >= 1:
            rep("diff.rstar_quad", [rs[n] ** 2, -t * rs[n], -bn * Rs[n] * Rs[n - 1]])
            rep("diff.r_quad", [r[n] ** 2, b * r[n], -bn * R[n] * R[n - 1]])
            rep(
                "diff.cross_quad",
                [(t - 2 * rs[n]) * (n - r[n]), -a * rs[n], -bn * (Rs[n] * R[n - 1] + Rs[n - 1] * R[n])],
            )
        rep(
            "diff.rstar_sum",
            [sum(Rs[j] for j in range(n)), -n * (t - a - n), s * (rs[n] - r[n])],
        )
        rep("diff.alpha_step", [-r[n + 1], r[n], rs[n + 1], -rs[n], an])
        rep("diff.subleading_split", [rs[n], -r[n], -p1[n]])
    return out


def check_recurrence_formulas(aux: AuxSet, sys: OrthoSystem, n: int, ctx: PrecisionCtx, tols=None):
    """Recurrence coefficients from auxiliaries and from p1(n) alone.

    Emits the alpha/beta reconstruction residuals plus the chain
    H_n -> p1 -> (R_n, r_n, beta_n); the X/Y quotient reports a singular
    point instead of failing when Y_n vanishes.
    """
    a, b, t = aux.params.alpha, aux.params.beta, aux.params.t
    R, r, rs = aux.R, aux.r, aux.rstar
    H, p1 = aux.H, sys.p1
    out = []
    with mp.workprec(ctx.working_bits):
        s = 2 * n + a + b

        def rep(name, terms, notes=""):
            out.append(report(name, n, t, terms, tolerance_for(name, tols), ctx, notes=notes))

        alpha_aux, beta_aux = recurrence_from_aux(aux, n)
        rep("rec.alpha_from_aux", [alpha_aux, -sys.alpha_rec[n]])
        if n >= 1:
            rep("rec.beta_from_aux", [beta_aux, -sys.beta_rec[n]])
        rep("disc.H_from_p1", [H[n], -s * p1[n], -n * (n + a - t)])
        rep("disc.R_from_p1", [R[n], -H[n], H[n + 1], -(2 * n + 1 + a + b)])
        if n >= 1:
            bn = sys.beta_rec[n]
            rep(
                "disc.r_from_p1",
                [s * r[n], p1[n] ** 2, (2 * n + a - t) * p1[n], -n * t, (1 - s * s) * bn],
            )
            X = (
                -2 * p1[n] ** 3
                + (3 * t - a + 2 * b - 2 * n) * p1[n] ** 2
                - (t * t - 2 * (n - b) * t - (2 * n + a) * b) * p1[n]
                - (t + b) * n * t
            ) / s
            Y = (
                (2 * n - 1 + a + b) * (2 * n + 1 + a + b)
                + 2 * p1[n] / s
                + (2 * n - 1 + a + b) * (2 * n + 2 + a + b) * p1[n + 1]
                - (2 * n + 1 + a + b) * (2 * n - 2 + a + b) * p1[n - 1]
                - (t + b) * (1 / s + s)
            )
            scale_Y = abs((2 * n - 1 + a + b) * (2 * n + 1 + a + b)) + abs((t + b) * (1 / s + s))
            if abs(Y) < ctx.residual_floor() * scale_Y:
                out.append(
                    inconclusive_report(
                        "disc.beta_from_p1", n, t, ctx, notes="Y_n vanished; quotient undefined"
                    )
                )
            else:
                rep("disc.beta_from_p1", [bn * Y, -X])
    return out


def check_discrete_sigma(aux: AuxSet, n: int, ctx: PrecisionCtx, tols=None):
    """Second-order difference equation for Htil_n = H_n - n(n+alpha+beta).

    Purely algebraic: both sides are assembled from Htil at n-1, n, n+1 as
    displayed, with the shared cubic W and the pivot Z_n.  Z_n = 0 is a
    singular point and reported as inconclusive.
    """
    if n < 1 or n + 1 > aux.n_max:
        raise ValueError("need 1 <= n <= n_max - 1")
    a, b, t = aux.params.alpha, aux.params.beta, aux.params.t
    name = "disc.H_second_difference"
    with mp.workprec(ctx.working_bits):
        s = 2 * n + a + b
        Htm = aux.htilde(n - 1)
        Htn = aux.htilde(n)
        Htp = aux.htilde(n + 1)
        phi = Htn + n * (b + t)
        Z = s * (
            (2 * n - 1 + a + b) * (2 * n + 1 + a + b)
            - (s + 1 / s) * (b + t)
            - (2 * n + 1 + a + b) * (Htm + (n - 1) * (b + t))
            + 2 * phi / (s * s)
            + (2 * n - 1 + a + b) * (Htp + (n + 1) * (b + t))
        )
        z_scale = abs(s) * (abs((2 * n - 1 + a + b) * (2 * n + 1 + a + b)) + abs((s + 1 / s) * (b + t)) + 1)
        if abs(Z) < ctx.residual_floor() * z_scale:
            return [inconclusive_report(name, n, t, ctx, notes="Z_n vanished; equation singular")]
        W = (
            -n * t * (b + t)
            + (a * b + 2 * b * (n - t) + (2 * n - t) * t) * phi / s
            + (-a + 2 * b - 2 * n + 3 * t) * phi**2 / (s * s)
            - 2 * phi**3 / (s * s * s)
        )
        Ztil = n * t + (-2 * n - a + t) * phi / s - phi**2 / (s * s) - (1 - s * s) / Z * W
        bracket = (
            -2 * Htn**2
            + 2 * Htn * (1 + Htp)
            + Htp * (2 * n - 1 + a + b)
            - Htm * (2 * n + 1 + a + b - 2 * Htn + 2 * Htp)
        )
        lhs_terms = [
            n * t,
            -(2 * n + a) * phi / s,
            Ztil / s * (-2 * n - a - t + 2 * phi / s),
            2 * Ztil**2 / (s * s),
        ]
        rhs = bracket / Z * W
        return [
            report(name, n, t, lhs_terms + [-rhs], tolerance_for(name, tols), ctx)
        ]
