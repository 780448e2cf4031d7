"""Moments of the weight by two independent routes.

mu_k(t) = int_0^1 x^k w(x;t) dx is computed (a) by tanh-sinh quadrature
over (0,1) and (b) through the Kummer function of the second kind,

    mu_k = e^(-t) Gamma(1+beta) U(1+beta, -alpha-k, t),      t > 0,

with U evaluated by its Laplace integral

    U(a,b,z) = (1/Gamma(a)) int_0^inf e^(-zs) s^(a-1) (1+s)^(b-a-1) ds,

valid here since a = 1+beta > 0 and z = t > 0.  Route (b) is the
substitution x = 1/(1+s) of route (a), evaluated on a different contour
map with different nodes, so agreement is a genuine two-route check.
At t = 0 the moments reduce to Euler Beta values, served in closed form.

Parameter shifts (dalpha, dbeta) in {-1,0}^2 index tables against
x^(dalpha) w and (1-x)^(dbeta) w; the dbeta=-1 table and the k=-1 entry
feed the 1/(1-y)- and 1/y-weighted quantities downstream.  The same U
representation covers the shifted tables because a = beta + dbeta + 1
stays positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from mpmath import mp, mpf

from .precision import DomainError, PJLabError, PositivityError, PrecisionCtx
from .quad import QuadResult, de_quad_ray_vec, de_quad_unit_vec
from .weights import WeightParams

SHIFT_PLAIN = (0, 0)
SHIFT_EDGE = (0, -1)  # (1-x)^(beta-1) table


class RouteAgreementError(PJLabError):
    """Quadrature and Kummer routes disagree beyond their combined bounds."""


@dataclass(frozen=True)
class MomentTable:
    """Moments mu[k], k = k_lo..k_max, for one parameter shift.

    Every entry carries an error bound; for t > 0 route_delta holds the
    measured quad-vs-Kummer discrepancy and route_budget the combined
    bound it was checked against.
    """

    params: WeightParams
    shift: tuple
    k_lo: int
    k_max: int
    mu: dict
    bounds: dict
    route_delta: Optional[dict] = None
    route_budget: Optional[dict] = None

    def __post_init__(self):
        for k, v in self.mu.items():
            if not v > 0:
                raise PositivityError(f"moment k={k} not positive")


def moment_beta_closed(params: WeightParams, k: int, shift=SHIFT_PLAIN, bits: int = 256):
    """t=0 moment in closed form via log-Gamma:

    Gamma(alpha+da+k+1) Gamma(beta+db+1) / Gamma(alpha+da+beta+db+k+2).
    """
    da, db = shift
    a = params.alpha + da
    b = params.beta + db
    if not a + k > -1 or not b > -1:
        raise DomainError("moment diverges at t=0 for these exponents")
    with mp.workprec(bits):
        return mp.exp(
            mp.loggamma(a + k + 1) + mp.loggamma(b + 1) - mp.loggamma(a + b + k + 2)
        )


def moment_quad(params: WeightParams, k: int, shift, ctx: PrecisionCtx) -> QuadResult:
    """One shifted moment by direct quadrature over (0,1)."""
    da, db = shift
    if da not in (-1, 0) or db not in (-1, 0):
        raise DomainError("shift components must be in {-1, 0}")
    a, b, t = params.alpha + da, params.beta + db, params.t
    if k < -1:
        raise DomainError("k must be >= -1")
    if not b > -1:
        raise DomainError("beta + dbeta must exceed -1")
    if t == 0:
        if not a + k > -1:
            raise DomainError("moment diverges at x=0 for t=0")
        # closed form is the t=0 anchor; quadrature stays available for checks
        with mp.workprec(ctx.working_bits):

            def f0(x, xc):
                return (mp.exp((a + k) * mp.log(x) + b * mp.log(xc)),)

            values, bnds, nev, _ = de_quad_unit_vec(
                f0, 1, ctx, exponent_zero=a + k, exponent_one=b
            )
            return QuadResult(values[0], bnds[0], nev)
    with mp.workprec(ctx.working_bits):

        def f(x, xc):
            return (mp.exp(-t / x + (a + k) * mp.log(x) + b * mp.log(xc)),)

        values, bnds, nev, _ = de_quad_unit_vec(f, 1, ctx, exponent_one=b)
        return QuadResult(values[0], bnds[0], nev)


def kummer_u(a, b, z, ctx: PrecisionCtx) -> QuadResult:
    """U(a, b, z) through the real Laplace integral; needs a > 0, z > 0."""
    a, b, z = mpf(a) * 1, mpf(b) * 1, mpf(z) * 1
    if not a > 0:
        raise DomainError("Laplace representation needs a > 0")
    if not z > 0:
        raise DomainError("Laplace representation needs z > 0")
    with mp.workprec(ctx.working_bits):
        am1 = a - 1
        bma = b - a - 1

        def f(s):
            return (mp.exp(-z * s + am1 * mp.log(s) + bma * mp.log(1 + s)),)

        values, bnds, nev, _ = de_quad_ray_vec(f, 1, ctx, exponent_zero=am1)
        g = mp.gamma(a)
        return QuadResult(values[0] / g, bnds[0] / g, nev)


def moment_kummer(params: WeightParams, k: int, ctx: PrecisionCtx):
    """mu_k through the Kummer route; only defined for t > 0."""
    if not params.t > 0:
        raise DomainError("Kummer route needs t > 0; use the Beta closed form at t=0")
    with mp.workprec(ctx.working_bits):
        u = kummer_u(1 + params.beta, -params.alpha - k, params.t, ctx)
        return mp.exp(-params.t) * mp.gamma(1 + params.beta) * u.value


def _kummer_vector(params: WeightParams, k_lo: int, k_max: int, want_edge: bool, ctx):
    """mu_k (and the dbeta=-1 block) through one exp-sinh pass.

    Components are e^(-t) * integrand of Gamma(1+beta') U(1+beta', -alpha-k, t)
    with the Gamma factors already absorbed:
        mu_k = e^(-t) int_0^inf e^(-ts) s^(beta') (1+s)^-(alpha+beta'+k+2) ds.
    """
    a, b, t = params.alpha, params.beta, params.t
    n_plain = k_max - k_lo + 1
    ncomp = n_plain + (k_max + 1 if want_edge else 0)

    def f(s):
        ls = mp.log(s)
        l1p = mp.log(1 + s)
        base = mp.exp(-t * s + b * ls)
        out = []
        g = mp.exp(-(a + b + k_lo + 2) * l1p)
        ginv = mp.exp(-l1p)
        for _k in range(k_lo, k_max + 1):
            out.append(base * g)
            g = g * ginv
        if want_edge:
            base2 = mp.exp(-t * s + (b - 1) * ls)
            g = mp.exp(-(a + b + 1) * l1p)
            for _k in range(0, k_max + 1):
                out.append(base2 * g)
                g = g * ginv
        return out

    exponent_zero = b - 1 if want_edge else b
    values, bnds, nev, lvl = de_quad_ray_vec(f, ncomp, ctx, exponent_zero=exponent_zero)
    with mp.workprec(ctx.working_bits + 32):
        emt = mp.exp(-t)
        plain = {k: emt * values[k - k_lo] for k in range(k_lo, k_max + 1)}
        plain_b = {k: emt * bnds[k - k_lo] for k in range(k_lo, k_max + 1)}
        edge = edge_b = None
        if want_edge:
            edge = {k: emt * values[n_plain + k] for k in range(0, k_max + 1)}
            edge_b = {k: emt * bnds[n_plain + k] for k in range(0, k_max + 1)}
    return plain, plain_b, edge, edge_b


def moment_table(
    params: WeightParams,
    k_max: int,
    shifts,
    ctx: PrecisionCtx,
    cross_check: bool = True,
):
    """Build the requested moment tables in one quadrature pass.

    Supported shifts: (0,0) (including the k=-1 entry when t>0) and
    (0,-1).  For t > 0 every entry is cross-checked against the Kummer
    route and a disagreement beyond the combined error bounds raises
    RouteAgreementError.
    """
    shifts = set(tuple(s) for s in shifts)
    if not shifts:
        raise ValueError("at least one shift required")
    unsupported = shifts - {SHIFT_PLAIN, SHIFT_EDGE}
    if unsupported:
        raise DomainError(f"moment_table serves shifts (0,0) and (0,-1); got {unsupported}")
    a, b, t = params.alpha, params.beta, params.t
    want_edge = SHIFT_EDGE in shifts
    if want_edge and not b > 0:
        raise DomainError("edge-shift table needs beta > 0")
    out = {}
    if t == 0:
        for shift in shifts:
            k_lo = 0
            mu = {k: moment_beta_closed(params, k, shift, ctx.working_bits) for k in range(k_lo, k_max + 1)}
            with mp.workprec(ctx.working_bits):
                bounds = {k: abs(v) * mpf(2) ** (-ctx.working_bits + 4) for k, v in mu.items()}
            out[shift] = MomentTable(params, shift, k_lo, k_max, mu, bounds)
        return out

    k_lo = -1
    n_plain = k_max - k_lo + 1
    ncomp = n_plain + (k_max + 1 if want_edge else 0)

    def f(x, xc):
        # inline weight_eval: one weight per node feeds the whole table
        w = mp.exp(-t / x + a * mp.log(x) + b * mp.log(xc))
        out_v = []
        pv = w / x
        for _k in range(k_lo, k_max + 1):
            out_v.append(pv)
            pv = pv * x
        if want_edge:
            pv = w / xc
            for _k in range(0, k_max + 1):
                out_v.append(pv)
                pv = pv * x
        return out_v

    exponent_one = b - 1 if want_edge else b
    values, bnds, nev, _lvl = de_quad_unit_vec(f, ncomp, ctx, exponent_one=exponent_one)

    plain_mu = {k: values[k - k_lo] for k in range(k_lo, k_max + 1)}
    plain_bounds = {k: bnds[k - k_lo] for k in range(k_lo, k_max + 1)}
    edge_mu = {k: values[n_plain + k] for k in range(0, k_max + 1)} if want_edge else None
    edge_bounds = {k: bnds[n_plain + k] for k in range(0, k_max + 1)} if want_edge else None

    route = {}
    if cross_check:
        kp, kpb, ke, keb = _kummer_vector(params, k_lo, k_max, want_edge, ctx)
        with mp.workprec(ctx.working_bits + 32):
            for shift, mu_d, b_d, ku_d, kub_d in (
                (SHIFT_PLAIN, plain_mu, plain_bounds, kp, kpb),
                (SHIFT_EDGE, edge_mu, edge_bounds, ke, keb),
            ):
                if mu_d is None or shift not in shifts:
                    continue
                delta = {}
                budget = {}
                for k, v in mu_d.items():
                    d = abs(v - ku_d[k])
                    allowed = b_d[k] + kub_d[k]
                    if d > allowed:
                        raise RouteAgreementError(
                            f"mu[{k}] shift={shift}: |quad-kummer|={mp.nstr(d, 6)} "
                            f"> combined bound {mp.nstr(allowed, 6)}"
                        )
                    delta[k] = d
                    budget[k] = allowed
                route[shift] = (delta, budget)

    if SHIFT_PLAIN in shifts:
        rd = route.get(SHIFT_PLAIN)
        out[SHIFT_PLAIN] = MomentTable(
            params, SHIFT_PLAIN, k_lo, k_max, plain_mu, plain_bounds,
            route_delta=rd[0] if rd else None, route_budget=rd[1] if rd else None,
        )
    if want_edge:
        rd = route.get(SHIFT_EDGE)
        out[SHIFT_EDGE] = MomentTable(
            params, SHIFT_EDGE, 0, k_max, edge_mu, edge_bounds,
            route_delta=rd[0] if rd else None, route_budget=rd[1] if rd else None,
        )
    return out
