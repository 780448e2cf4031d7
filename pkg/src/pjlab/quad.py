"""Double-exponential quadrature and stencil differentiation.

One tanh-sinh engine serves every integral in the library: the variable
change u -> x concentrates nodes double-exponentially at the endpoints,
which absorbs both the essential zero of the weight at x=0 and algebraic
endpoint factors without special-casing.  An exp-sinh variant covers
(0, inf).  Refinement halves the step; convergence is declared when two
successive levels agree to the target, with a configurable level cap.

Nodes on (0,1) are delivered as (x, 1-x) pairs computed independently to
full relative precision: near the right endpoint x itself rounds to
exactly 1, so any integrand factor in (1-x) must be formed from the
complement, never by subtraction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Sequence

from mpmath import mp, mpf

from .precision import (
    QUAD_GUARD_BITS,
    PrecisionCtx,
    QuadratureNonConvergence,
    StencilError,
)

INTERVAL_UNIT = (0, 1)
INTERVAL_POSITIVE = (0, "inf")

_node_cache: dict = {}
_node_lock = threading.Lock()


@dataclass(frozen=True)
class QuadResult:
    """Value, attained error bound and evaluation count of one integral."""

    value: mpf
    error_bound: mpf
    evaluations: int

    def __post_init__(self):
        if not self.error_bound >= 0:
            raise ValueError("error_bound must be nonnegative")
        if self.evaluations <= 0:
            raise ValueError("evaluations must be positive")


def _unit_nodes(prec: int, level: int, jmax: int):
    """Nodes for the (0,1) map x = (1+tanh((pi/2) sinh u))/2 at u = j*h.

    Returns a list of (x_near_one, x_near_zero, weight) for j = 0..jmax;
    by symmetry u -> -u swaps the pair.  Extended lazily and cached per
    (prec, level).
    """
    key = (prec, level, "unit")
    with _node_lock:
        lst = _node_cache.setdefault(key, [])
    if len(lst) > jmax:
        return lst
    with mp.workprec(prec), _node_lock:
        h = mpf(1) / (1 << level)
        for j in range(len(lst), jmax + 1):
            u = j * h
            eu = mp.exp(u)
            cu = (eu + 1 / eu) / 2
            z = mp.pi / 2 * ((eu - 1 / eu) / 2)
            em = mp.exp(-2 * z)
            xp = 1 / (1 + em)
            xm = em / (1 + em)
            # dx/du = (pi/2) cosh(u) sech^2(z) / 2 and sech^2(z) = 4 xp xm
            lst.append((xp, xm, mp.pi * cu * xp * xm))
    return lst


def _ray_nodes(prec: int, level: int, jmax: int):
    """Nodes for the (0,inf) map x = exp((pi/2) sinh u), u = j*h, j in Z.

    Returns (positive_side, negative_side) lists of (x, weight); index 0 of
    the positive side is the center node u = 0.
    """
    key = (prec, level, "ray")
    with _node_lock:
        pair = _node_cache.setdefault(key, ([], []))
    pos, neg = pair
    if len(pos) > jmax and len(neg) >= jmax:
        return pos, neg
    with mp.workprec(prec), _node_lock:
        h = mpf(1) / (1 << level)
        for j in range(len(pos), jmax + 1):
            u = j * h
            eu = mp.exp(u)
            cu = (eu + 1 / eu) / 2
            x = mp.exp(mp.pi / 2 * ((eu - 1 / eu) / 2))
            pos.append((x, mp.pi / 2 * cu * x))
        for j in range(len(neg) + 1, jmax + 1):
            u = -j * h
            eu = mp.exp(u)
            cu = (eu + 1 / eu) / 2
            x = mp.exp(mp.pi / 2 * ((eu - 1 / eu) / 2))
            neg.append((x, mp.pi / 2 * cu * x))
    return pos, neg


def _u_limit(prec: int, exponent, coordinate_rate: int = 2) -> mpf:
    """Walking range needed so endpoint terms decay below 2^-(prec+16).

    `exponent` is the worst algebraic endpoint behavior x^exponent of the
    integrand (> -1 for integrability).  coordinate_rate is how fast the
    endpoint coordinate shrinks with z: e^(-2z) for the (0,1) map, e^(-z)
    for the (0,inf) map.  The cap keeps node tables bounded.
    """
    e = min(mpf(exponent), mpf(0))
    if not e > -1:
        raise ValueError("endpoint exponent must be > -1")
    z_bits = mpf(prec + 16) / (coordinate_rate * (1 + e))
    u = mp.asinh(2 * z_bits * mp.log(2) / mp.pi)
    return min(u + mpf("0.5"), mpf("7.5"))


def _vector_levels(eval_level, ncomp, ctx, prec):
    """Shared refinement driver: halve the step until all components settle."""
    target = ctx.quad_target
    rel_escape = mpf(2) ** (-(prec - 12))  # roundoff floor, see module doc
    tiny = mpf(2) ** (-prec)
    S_prev = None
    S = [mp.zero] * ncomp
    evaluations = 0
    for level in range(0, ctx.max_level + 1):
        h = mpf(1) / (1 << level)
        partial, nev = eval_level(level, S)
        evaluations += nev
        S = [h * s for s in partial] if level == 0 else [sp / 2 + h * s for sp, s in zip(S, partial)]
        if S_prev is not None and level >= 2:
            deltas = [abs(s - sp) for s, sp in zip(S, S_prev)]
            if all(d <= max(target, rel_escape * abs(s)) for d, s in zip(deltas, S)):
                bounds = [d + tiny * 256 * abs(s) for d, s in zip(deltas, S)]
                return S, bounds, evaluations, level
        S_prev = list(S)
    deltas = [abs(s - sp) for s, sp in zip(S, S_prev)]
    raise QuadratureNonConvergence(
        f"no convergence within {ctx.max_level} refinements",
        best=S,
        bound=deltas,
        evaluations=evaluations,
    )


def de_quad_unit_vec(
    fvec: Callable,
    ncomp: int,
    ctx: PrecisionCtx,
    *,
    exponent_zero=0,
    exponent_one=0,
    guard_bits: int = QUAD_GUARD_BITS,
):
    """Vector tanh-sinh integration over (0,1).

    fvec(x, one_minus_x) returns a sequence of ncomp values; one weight
    evaluation per node can serve a whole moment table.  Singular endpoint
    factors must be formed from whichever of the two coordinates is small
    there (both carry full relative precision).  exponent_zero /
    exponent_one state the worst algebraic behavior at each endpoint.
    Returns (values, error_bounds, evaluations, level).
    """
    prec = ctx.working_bits + guard_bits
    with mp.workprec(prec):
        u_zero = _u_limit(prec, exponent_zero)
        u_one = _u_limit(prec, exponent_one)
        eps_trunc = mpf(2) ** (-(prec + 10))
        tiny = mpf(2) ** (-prec)

        def eval_level(level, S_running):
            h = mpf(1) / (1 << level)
            jmax = int(max(u_zero, u_one) / h) + 1
            nodes = _unit_nodes(prec, level, jmax)
            acc = [mp.zero] * ncomp
            nev = 0
            smax = max((abs(s) for s in S_running), default=mp.zero)
            js = range(0, jmax + 1) if level == 0 else range(1, jmax + 1, 2)
            j_zero = int(u_zero / h) + 1
            j_one = int(u_one / h) + 1
            consec = 0
            seen = False
            for j in js:
                xp, xm, w = nodes[j]
                big = mp.zero
                if j <= j_zero:
                    vals = fvec(xm, xp)
                    nev += 1
                    for i, v in enumerate(vals):
                        tv = w * v
                        acc[i] += tv
                        if abs(tv) > big:
                            big = abs(tv)
                if j > 0 and j <= j_one:
                    vals = fvec(xp, xm)
                    nev += 1
                    for i, v in enumerate(vals):
                        tv = w * v
                        acc[i] += tv
                        if abs(tv) > big:
                            big = abs(tv)
                scale = max(smax, max((abs(s) for s in acc), default=mp.zero))
                # cut the tail only after real mass has been seen: peaked
                # integrands are silent near u=0 and would be lost otherwise
                if big > eps_trunc * (scale + tiny):
                    seen = True
                    consec = 0
                elif seen:
                    consec += 1
                    if consec >= 2:
                        break
            return acc, nev

        return _vector_levels(eval_level, ncomp, ctx, prec)


def de_quad_ray_vec(
    fvec: Callable,
    ncomp: int,
    ctx: PrecisionCtx,
    *,
    exponent_zero=0,
    guard_bits: int = QUAD_GUARD_BITS,
):
    """Vector exp-sinh integration over (0,inf).

    fvec(x) must decay essentially as x -> inf (the outward walk truncates
    on observed decay) and behave like x^exponent_zero at the origin.
    """
    prec = ctx.working_bits + guard_bits
    with mp.workprec(prec):
        u_zero = _u_limit(prec, exponent_zero, coordinate_rate=1)
        u_top = _u_limit(prec, 0, coordinate_rate=1)
        eps_trunc = mpf(2) ** (-(prec + 10))
        tiny = mpf(2) ** (-prec)

        def eval_level(level, S_running):
            h = mpf(1) / (1 << level)
            jmax = int(max(u_zero, u_top) / h) + 1
            pos, neg = _ray_nodes(prec, level, jmax)
            acc = [mp.zero] * ncomp
            nev = 0
            smax = max((abs(s) for s in S_running), default=mp.zero)
            for direction in (1, -1):
                js = range(0, jmax + 1) if level == 0 else range(1, jmax + 1, 2)
                j_cap = int((u_top if direction == 1 else u_zero) / h) + 1
                consec = 0
                seen = False
                for j in js:
                    if direction == -1 and j == 0:
                        continue
                    if j > j_cap:
                        break
                    x, w = pos[j] if direction == 1 else neg[j - 1]
                    vals = fvec(x)
                    nev += 1
                    big = mp.zero
                    for i, v in enumerate(vals):
                        tv = w * v
                        acc[i] += tv
                        if abs(tv) > big:
                            big = abs(tv)
                    scale = max(smax, max((abs(s) for s in acc), default=mp.zero))
                    if big > eps_trunc * (scale + tiny):
                        seen = True
                        consec = 0
                    elif seen:
                        consec += 1
                        if consec >= 2:
                            break
            return acc, nev

        return _vector_levels(eval_level, ncomp, ctx, prec)


def de_quad(
    f: Callable,
    interval,
    ctx: PrecisionCtx,
    *,
    exponent_zero=0,
    exponent_one=0,
) -> QuadResult:
    """Integrate a scalar function over (0,1) or (0,inf).

    The integrand may have integrable algebraic endpoint singularities
    (declare them through the exponent keywords) or essential endpoint
    decay.  Because a plain f(x) cannot resolve points closer to 1 than
    one ulp, a declared singularity raises the internal precision until
    every node the singular factor still feels is representable; nodes
    that nonetheless round onto an endpoint contribute terms below the
    truncation threshold and are skipped.  Non-convergence raises
    QuadratureNonConvergence carrying the best estimate.
    """
    e_min = min(mpf(exponent_zero), mpf(exponent_one), mpf(0))
    if not e_min > -1:
        raise ValueError("endpoint exponents must be > -1")
    # node-resolution requirement for singular factors seen through x alone
    guard = max(QUAD_GUARD_BITS, int((ctx.working_bits + 16) / (1 + e_min)) + 32 - ctx.working_bits)
    iv = _normalize_interval(interval)
    if iv == INTERVAL_UNIT:

        def wrapped(x, xc):
            if x == 0 or x == 1:
                return (mp.zero,)
            return (f(x),)

        values, bounds, nev, _level = de_quad_unit_vec(
            wrapped,
            1,
            ctx,
            exponent_zero=exponent_zero,
            exponent_one=exponent_one,
            guard_bits=guard,
        )
    else:

        def wrapped_ray(x):
            return (f(x),)

        values, bounds, nev, _level = de_quad_ray_vec(
            wrapped_ray, 1, ctx, exponent_zero=exponent_zero, guard_bits=guard
        )
    return QuadResult(value=values[0], error_bound=bounds[0], evaluations=nev)


def _normalize_interval(interval):
    a, b = interval
    if a != 0:
        raise ValueError("interval must start at 0")
    if b == 1:
        return INTERVAL_UNIT
    if b == mp.inf or b == float("inf") or b == "inf":
        return INTERVAL_POSITIVE
    raise ValueError("interval must be (0,1) or (0,inf)")


# 5-point central stencils (exact through degree 4 / error O(h^4)) and the
# embedded 3-point rules used for the error proxy.


def central_d1(values: Sequence, h):
    vm2, vm1, _v0, vp1, vp2 = values
    return (-vp2 + 8 * vp1 - 8 * vm1 + vm2) / (12 * h)


def central_d2(values: Sequence, h):
    vm2, vm1, v0, vp1, vp2 = values
    return (-vp2 + 16 * vp1 - 30 * v0 + 16 * vm1 - vm2) / (12 * h * h)


def central_d1_3pt(values: Sequence, h):
    return (values[3] - values[1]) / (2 * h)


def central_d2_3pt(values: Sequence, h):
    return (values[3] - 2 * values[2] + values[1]) / (h * h)


def stencil_points(t, h):
    return [t - 2 * h, t - h, t, t + h, t + 2 * h]


def fd_derivative(g: Callable, t, order: int, ctx: PrecisionCtx):
    """Central-difference derivative of g at t > 0 with step h = t*fd_step_scale.

    Returns (estimate, proxy) where the proxy is the difference between the
    5-point and embedded 3-point results — an empirical error scale, not a
    rigorous bound.  order is 1 or 2.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    with mp.workprec(ctx.working_bits):
        t = mpf(t) * 1
        h = t * ctx.fd_step_scale
        pts = stencil_points(t, h)
        if pts[0] <= 0:
            raise StencilError("stencil crosses t <= 0")
        values = [g(p) for p in pts]
        if order == 1:
            est = central_d1(values, h)
            ref = central_d1_3pt(values, h)
        else:
            est = central_d2(values, h)
            ref = central_d2_3pt(values, h)
        return est, abs(est - ref)
