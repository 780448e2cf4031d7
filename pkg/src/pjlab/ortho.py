"""Monic orthogonal polynomials from moments.

The moment matrix M = (mu_{j+k}) factors as M = L diag(h) L^T with L unit
lower triangular; the rows of C = L^{-1} are then exactly the monic
polynomial coefficients, the pivots are the squared norms h_n, and the
three-term recurrence coefficients fall out of the subleading column:

    x P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1},
    P_n(z) = z^n + p1(n) z^{n-1} + ...,
    alpha_n = p1(n) - p1(n+1),   beta_n = h_n / h_{n-1}.

One factorization therefore yields h_n, p1(n), alpha_n, beta_n and the
product formula D_n = prod_{j<n} h_j for the Hankel determinant; an
independent Bareiss-elimination determinant stays available as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from mpmath import mp, mpf, mpc, mpmathify

from .moments import MomentTable
from .precision import PositivityError, PrecisionCtx, StencilError
from .quad import central_d1, central_d1_3pt
from .weights import WeightParams


@dataclass(frozen=True)
class OrthoSystem:
    """Per-order data of the orthogonal system at one (alpha, beta, t).

    h[n]          squared norms, n = 0..n_max
    p1[n]         subleading coefficient of the monic P_n
    alpha_rec[n]  diagonal recurrence coefficients, n = 0..n_max-1
    beta_rec[n]   off-diagonal recurrence coefficients, n >= 1 (index 0 unused)
    D[n]          Hankel determinants prod_{j<n} h_j, n = 0..n_max+1
    coeffs[n][j]  monic coefficient of x^j in P_n (lower triangular)
    """

    params: WeightParams
    n_max: int
    ctx: PrecisionCtx
    h: list
    p1: list
    alpha_rec: list
    beta_rec: list
    D: list
    coeffs: list


def build_ortho(moments: MomentTable, n_max: int, ctx: PrecisionCtx) -> OrthoSystem:
    """Factor the moment matrix and extract the orthogonal system.

    Requires moments for k <= 2*n_max.  A non-positive pivot means the
    matrix stopped being numerically positive definite at this precision;
    the fix is a larger working_bits (PositivityError says so).
    """
    if moments.k_max < 2 * n_max:
        raise ValueError("moment table must cover k <= 2*n_max")
    mu = moments.mu
    N = n_max + 1
    with mp.workprec(ctx.working_bits):
        L = [[mp.zero] * N for _ in range(N)]
        d = [mp.zero] * N
        for i in range(N):
            for j in range(i):
                s = mu[i + j]
                for k in range(j):
                    s -= L[i][k] * L[j][k] * d[k]
                L[i][j] = s / d[j]
            s = mu[2 * i]
            for k in range(i):
                s -= L[i][k] * L[i][k] * d[k]
            L[i][i] = mp.one
            d[i] = s
            if not d[i] > 0:
                raise PositivityError(
                    f"pivot {i} non-positive: moment matrix lost definiteness; "
                    f"increase working_bits (now {ctx.working_bits})"
                )
        # C = L^{-1}: rows are monic coefficient vectors
        C = [[mp.zero] * (i + 1) for i in range(N)]
        for i in range(N):
            C[i][i] = mp.one
            for j in range(i - 1, -1, -1):
                s = mp.zero
                for k in range(j, i):
                    s += L[i][k] * C[k][j]
                C[i][j] = -s
        p1 = [mp.zero] + [C[n][n - 1] for n in range(1, N)]
        alpha_rec = [p1[n] - p1[n + 1] for n in range(N - 1)]
        beta_rec = [mp.zero] + [d[n] / d[n - 1] for n in range(1, N)]
        D = [mp.one]
        for n in range(N):
            D.append(D[-1] * d[n])
    return OrthoSystem(
        params=moments.params,
        n_max=n_max,
        ctx=ctx,
        h=d,
        p1=p1,
        alpha_rec=alpha_rec,
        beta_rec=beta_rec,
        D=D,
        coeffs=C,
    )


def hankel_det_oracle(moments: MomentTable, n: int, ctx: PrecisionCtx):
    """det(mu_{j+k})_{j,k<n} by Bareiss elimination at doubled precision.

    Fraction-free-style pivoting keeps intermediate growth polynomial; the
    doubled precision makes this an independent check on prod h_j.
    """
    if n == 0:
        return mp.one
    with mp.workprec(2 * ctx.working_bits):
        M = [[mpmathify(moments.mu[i + j]) * 1 for j in range(n)] for i in range(n)]
        prev = mp.one
        for k in range(n - 1):
            pk = M[k][k]
            if pk == 0:
                raise PositivityError("zero pivot in determinant oracle")
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) / prev
            prev = pk
        return M[n - 1][n - 1]


def poly_eval(sys: OrthoSystem, n: int, z):
    """(P_n(z), P_n'(z)) by the three-term recurrence.

    P_0 = 1 and beta_0 P_{-1} = 0; works for real or complex z.
    """
    if n > sys.n_max:
        raise ValueError("n exceeds n_max of the system")
    with mp.workprec(sys.ctx.working_bits):
        z = mpmathify(z)
        p_prev, p = mpmathify(0), mpmathify(1)
        d_prev, dcur = mpmathify(0), mpmathify(0)
        for k in range(n):
            beta_k = sys.beta_rec[k] if k >= 1 else mp.zero
            p_next = (z - sys.alpha_rec[k]) * p - beta_k * p_prev
            d_next = p + (z - sys.alpha_rec[k]) * dcur - beta_k * d_prev
            p_prev, p = p, p_next
            d_prev, dcur = dcur, d_next
        return p, dcur


def poly_eval_coeffs(sys: OrthoSystem, n: int, z):
    """P_n(z) by Horner on the stored coefficient row.

    Independent of the recurrence coefficients, which makes the recurrence
    consistency check non-circular.
    """
    if n > sys.n_max:
        raise ValueError("n exceeds n_max of the system")
    with mp.workprec(sys.ctx.working_bits):
        z = mpmathify(z)
        acc = mpmathify(0)
        for c in reversed(sys.coeffs[n]):
            acc = acc * z + c
        return acc


def hankel_Hn(systems: Sequence[OrthoSystem], n: int, ctx: PrecisionCtx):
    """H_n = t (d/dt) ln D_n from a 5-point stencil of systems in t.

    `systems` are builds at t(1 -/+ 2s), t(1 -/+ s), t (center third); the
    step is read off the builds.  Returns (H_n, H_n - n(n+alpha+beta),
    proxy) where the proxy is the 5pt-vs-3pt stencil difference.
    """
    if len(systems) != 5:
        raise ValueError("need systems at 5 stencil points")
    if n == 0:
        return mp.zero, mp.zero, mp.zero
    with mp.workprec(ctx.working_bits):
        tvals = [s.params.t for s in systems]
        t = tvals[2]
        if not t > 0:
            raise StencilError("hankel_Hn needs t > 0")
        h = tvals[3] - tvals[2]
        lnD = [mp.log(s.D[n]) for s in systems]
        d5 = central_d1(lnD, h)
        d3 = central_d1_3pt(lnD, h)
        a, b = systems[2].params.alpha, systems[2].params.beta
        H = t * d5
        return H, H - n * (n + a + b), t * abs(d5 - d3)
