"""Auxiliary quantities parametrizing the ladder-operator coefficients.

For each order n four weighted integrals are needed:

    Rstar_n = (t/h_n)     int P_n^2      w dy/y,
    R_n     = (beta/h_n)  int P_n^2      w dy/(1-y),
    rstar_n = (t/h_{n-1}) int P_{n-1}P_n w dy/y,
    r_n     = (beta/h_{n-1}) int P_{n-1}P_n w dy/(1-y),

with r_0 = rstar_0 = 0.  They are computed by expanding the polynomial
products in monomials and contracting against shifted moment tables
(k-1 offsets for 1/y, the (1-x)^(beta-1) table for 1/(1-y)); direct
quadrature of the defining integrals stays available as an oracle.  The
ladder coefficients are then rational:

    A_n(z) = Rstar_n/z^2 + R_n/z - R_n/(z-1),
    B_n(z) = rstar_n/z^2 - (n - r_n)/z - r_n/(z-1).

The logarithmic derivative of the Hankel determinant and its exact t-slope
come along for free:

    H_n = -sum_{j<n} Rstar_j,        H_n' = -n + (2n+alpha+beta) rstar_n / t,

and S_n = R_n/(2n+1+alpha+beta) is the combination satisfying the
Painleve V equation checked downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from mpmath import mp, mpf, mpmathify

from .moments import SHIFT_EDGE, SHIFT_PLAIN, MomentTable
from .ortho import OrthoSystem, poly_eval
from .precision import DomainError, PositivityError, PrecisionCtx
from .quad import de_quad_unit_vec
from .weights import WeightParams


class AuxRow(NamedTuple):
    R: mpf
    Rstar: mpf
    r: mpf
    rstar: mpf


@dataclass(frozen=True)
class AuxSet:
    """Arrays of the auxiliary quantities up to n_max.

    H[n] = -sum_{j<n} Rstar_j; Hprime[n] is the exact slope (None at t=0,
    where all 1/y-type quantities vanish with the factor t and H == 0).
    S[n] = R[n]/(2n+1+alpha+beta).
    """

    params: WeightParams
    n_max: int
    ctx: PrecisionCtx
    R: list
    Rstar: list
    r: list
    rstar: list
    H: list
    Hprime: Optional[list]
    S: list

    def htilde(self, n: int):
        a, b = self.params.alpha, self.params.beta
        with mp.workprec(self.ctx.working_bits):
            return self.H[n] - n * (n + a + b)


def _contract(coeffs_m, coeffs_n, table: MomentTable, offset: int):
    s = mp.zero
    mu = table.mu
    for i, ci in enumerate(coeffs_m):
        row = mp.zero
        for j, cj in enumerate(coeffs_n):
            row += cj * mu[i + j + offset]
        s += ci * row
    return s


def aux_compute(sys: OrthoSystem, moments: dict, n: int, ctx: PrecisionCtx) -> AuxRow:
    """Auxiliary quantities at one order from moment contractions.

    `moments` maps shifts to tables; needs (0,0) (with k=-1 for t>0) and
    (0,-1).  At t=0 the 1/y-type quantities are exactly 0 (factor t), not
    computed by limit.
    """
    plain = moments[SHIFT_PLAIN]
    edge = moments[SHIFT_EDGE]
    params = sys.params
    a, b, t = params.alpha, params.beta, params.t
    if n > sys.n_max:
        raise ValueError("n exceeds n_max")
    with mp.workprec(ctx.working_bits):
        cn = sys.coeffs[n]
        R_n = b * _contract(cn, cn, edge, 0) / sys.h[n]
        if t > 0:
            Rstar_n = t * _contract(cn, cn, plain, -1) / sys.h[n]
        else:
            Rstar_n = mp.zero
        if n == 0:
            return AuxRow(R=R_n, Rstar=Rstar_n, r=mp.zero, rstar=mp.zero)
        cm = sys.coeffs[n - 1]
        r_n = b * _contract(cm, cn, edge, 0) / sys.h[n - 1]
        if t > 0:
            rstar_n = t * _contract(cm, cn, plain, -1) / sys.h[n - 1]
        else:
            rstar_n = mp.zero
        return AuxRow(R=R_n, Rstar=Rstar_n, r=r_n, rstar=rstar_n)


def aux_build(sys: OrthoSystem, moments: dict, ctx: PrecisionCtx) -> AuxSet:
    """Fill every row 0..n_max and the derived H, H', S arrays."""
    params = sys.params
    a, b, t = params.alpha, params.beta, params.t
    R, Rstar, r, rstar = [], [], [], []
    for n in range(sys.n_max + 1):
        row = aux_compute(sys, moments, n, ctx)
        R.append(row.R)
        Rstar.append(row.Rstar)
        r.append(row.r)
        rstar.append(row.rstar)
        if t > 0 and (not row.R > 0 or not row.Rstar > 0):
            raise PositivityError(f"auxiliary integral at n={n} not positive")
    with mp.workprec(ctx.working_bits):
        H = [mp.zero]
        for n in range(1, sys.n_max + 1):
            H.append(H[-1] - Rstar[n - 1])
        Hprime = None
        if t > 0:
            Hprime = [-n + (2 * n + a + b) * rstar[n] / t for n in range(sys.n_max + 1)]
        S = [R[n] / (2 * n + 1 + a + b) for n in range(sys.n_max + 1)]
    return AuxSet(
        params=params, n_max=sys.n_max, ctx=ctx,
        R=R, Rstar=Rstar, r=r, rstar=rstar, H=H, Hprime=Hprime, S=S,
    )


def an_bn_eval(aux: AuxSet, n: int, z):
    """Ladder coefficients (A_n(z), B_n(z)) from the partial fractions."""
    z = mpmathify(z)
    if z == 0 or z == 1:
        raise DomainError("A_n, B_n have poles at z = 0 and z = 1")
    with mp.workprec(aux.ctx.working_bits):
        A = aux.Rstar[n] / z**2 + aux.R[n] / z - aux.R[n] / (z - 1)
        B = aux.rstar[n] / z**2 - (n - aux.r[n]) / z - aux.r[n] / (z - 1)
        return A, B


def an_bn_oracle(sys: OrthoSystem, params: WeightParams, n: int, z, ctx: PrecisionCtx):
    """(A_n(z), B_n(z)) straight from the defining integrals.

    The divided-difference kernel splits into t/(z^2 y) + (alpha y + t)/(z y^2)
    + beta/((z-1)(y-1)); each piece is a real integral evaluated by
    quadrature with P_n from the recurrence, so this route is independent
    of the moment contractions.  n >= 1 (B_n involves P_{n-1}).
    """
    if n < 1:
        raise ValueError("oracle needs n >= 1; B_0 is identically 0")
    z = mpmathify(z)
    a, b, t = params.alpha, params.beta, params.t
    if z == 0 or z == 1:
        raise DomainError("poles at z = 0 and z = 1")
    with mp.workprec(ctx.working_bits):

        def f(x, xc):
            w = mp.exp(a * mp.log(x) + b * mp.log(xc))
            if t > 0:
                w *= mp.exp(-t / x)
            pn, _ = poly_eval(sys, n, x)
            pm, _ = poly_eval(sys, n - 1, x)
            pn2 = pn * pn
            pm2 = pm * pm
            pnm = pn * pm
            ky = t / x
            kyy = (a * x + t) / (x * x)
            ke = -b / xc  # beta/(y-1) written through the complement
            return (
                pn2 * w, pn2 * w * ky, pn2 * w * kyy, pn2 * w * ke,
                pm2 * w, pnm * w * ky, pnm * w * kyy, pnm * w * ke,
            )

        exponent_zero = min(a - 1, 0) if t == 0 else 0
        values, _bnds, _nev, _ = de_quad_unit_vec(
            f, 8, ctx, exponent_zero=exponent_zero, exponent_one=b - 1
        )
        hn, i1, i2, i3, hm, j1, j2, j3 = values
        A = (i1 / z**2 + i2 / z + i3 / (z - 1)) / hn
        B = (j1 / z**2 + j2 / z + j3 / (z - 1)) / hm
        return A, B


def hn_from_aux(aux: AuxSet, n: int):
    """(H_n, H_n - n(n+alpha+beta), H_n') with the slope exact in t.

    At t = 0 the slope formula is undefined here (H itself vanishes since
    every Rstar_j(0) = 0) and None is returned for it.
    """
    H = aux.H[n]
    Ht = aux.htilde(n)
    Hp = aux.Hprime[n] if aux.Hprime is not None else None
    return H, Ht, Hp


def recurrence_from_aux(aux: AuxSet, n: int):
    """(alpha_n, beta_n) rebuilt from the auxiliary quantities alone:

    (2n+2+a+b) alpha_n = 2(rstar_n - r_n) + R_n - b - t,
    [1-(2n+a+b)^2] beta_n = -(rstar_n-r_n)^2 - (b+t) r_n + (t-a-2n) rstar_n + nt.
    """
    a, b, t = aux.params.alpha, aux.params.beta, aux.params.t
    with mp.workprec(aux.ctx.working_bits):
        alpha_n = (2 * (aux.rstar[n] - aux.r[n]) + aux.R[n] - b - t) / (2 * n + 2 + a + b)
        s = 2 * n + a + b
        beta_n = (
            -((aux.rstar[n] - aux.r[n]) ** 2)
            - (b + t) * aux.r[n]
            + (t - a - 2 * n) * aux.rstar[n]
            + n * t
        ) / (1 - s * s)
        return alpha_n, beta_n


# t = 0 closed forms: the system reduces to shifted Jacobi and everything
# is rational in (n, alpha, beta).


def alpha_t0(params: WeightParams, n: int, bits: int = 256):
    a, b = params.alpha, params.beta
    with mp.workprec(bits):
        s = 2 * n + a + b
        return (2 * n * n + 2 * n * (a + b + 1) + (1 + a) * (a + b)) / (s * (s + 2))


def beta_t0(params: WeightParams, n: int, bits: int = 256):
    a, b = params.alpha, params.beta
    with mp.workprec(bits):
        s = 2 * n + a + b
        return n * (n + a) * (n * n + (a + 2 * b) * n + b * (a + b)) / (s * s * (s * s - 1))


def R_t0(params: WeightParams, n: int, bits: int = 256):
    with mp.workprec(bits):
        return 2 * n + 1 + params.alpha + params.beta


def r_t0(params: WeightParams, n: int, bits: int = 256):
    a, b = params.alpha, params.beta
    with mp.workprec(bits):
        return n * (n + a) / (2 * n + a + b)
