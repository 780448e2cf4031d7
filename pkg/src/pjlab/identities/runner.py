"""Suite orchestration: build pipelines once per grid point, dispatch every
registered identity evaluator, and return reports sorted by
(identity, n, t).

The coverage lock runs before any numerics: the union of identities the
stages below claim to evaluate must equal the registry exactly, so a
check cannot silently drop out.
"""

from __future__ import annotations

from typing import Iterable, Optional

from mpmath import mp, mpc, mpf

from ..pipeline import build_pipeline, build_stencil
from ..precision import PrecisionCtx
from ..weights import WeightParams
from .algebraic import check_difference_system, check_discrete_sigma, check_recurrence_formulas
from .anchors import check_n0_kummer, check_t0_closed_forms
from .flows import check_sigma_ode, check_toda, sigma_point
from .ladder import check_core_structure, check_ladder, check_ladder_oracle, check_moment_routes
from .p3 import check_p3_limit
from .registry import SUITES, assert_coverage
from .riccati import check_riccati_pv

# stencil step for derivatives of rebuilt pipelines: large enough that the
# truncation term dominates the pipeline noise floor in both the residual
# and shadows proxy (the ctx default is tuned for directly evaluable
# functions instead)
FLOW_FD_SCALE = mpf(2) ** (-32)

SUITE_EVALUATES = {
    "core": (
        "core.orthogonality", "core.recurrence", "core.alpha_subleading",
        "core.subleading_sum", "core.hankel_product", "core.moment_routes",
    ),
    "ladder": (
        "ladder.lower", "ladder.raise", "ladder.compat_sum", "ladder.compat_diff",
        "ladder.compat_product", "ladder.A_integral", "ladder.B_integral",
        "aux.parts_identity",
    ),
    "difference": (
        "diff.rstar_pair", "diff.shift_gap", "diff.r_pair", "diff.rstar_quad",
        "diff.r_quad", "diff.cross_quad", "diff.rstar_sum", "diff.alpha_step",
        "diff.subleading_split",
    ),
    "recurrence": (
        "rec.alpha_from_aux", "rec.beta_from_aux", "disc.H_from_p1",
        "disc.R_from_p1", "disc.r_from_p1", "disc.beta_from_p1",
    ),
    "discrete": ("disc.H_second_difference",),
    "toda": (
        "toda.alpha_flow", "toda.beta_flow", "toda.p1_flow", "toda.r_pair_flow",
        "toda.logdet_flow",
    ),
    "sigma": (
        "ode.sigma", "ode.sigma_shifted", "ode.rstar_from_H", "ode.r_from_H",
        "ode.r_flow_square",
    ),
    "pv": (
        "pv.riccati", "pv.rstar_from_R", "ode.R_quad_a", "ode.R_quad_b",
        "ode.R_repr", "ode.R_inv_repr", "pv.r_from_R", "pv.rprime_from_R",
        "pv.factored_ode", "pv.factored_second", "pv.branch_magnitude",
        "pv.painleve5",
    ),
    "n0": (
        "anchor.alpha0_ratio", "anchor.R0_ratio", "anchor.R0_large_t",
        "anchor.R0_continuity",
    ),
    "t0": (
        "anchor.t0_alpha", "anchor.t0_beta", "anchor.t0_R", "anchor.t0_r",
        "anchor.t0_limits",
    ),
    "p3": ("limit.p3_sigma", "limit.p3_decay"),
}

# suites needing t > 0 at a grid point
_T_POSITIVE_ONLY = {"toda", "sigma", "pv", "n0"}
# p3 runs through its own entry point (separate beta ladder), not the grid
DEFAULT_VERIFY_SUITES = tuple(s for s in SUITES if s != "p3")


def lock_coverage():
    assert_coverage([name for names in SUITE_EVALUATES.values() for name in names])


def run_verify(
    alpha,
    beta,
    t_grid: Iterable,
    n_max: int,
    ctx: PrecisionCtx,
    suites: Optional[Iterable[str]] = None,
    tolerances: Optional[dict] = None,
    fd_scale=None,
    p3_betas=(1000, 10000, 100000),
):
    """Evaluate the selected suites over the (n <= n_max, t in grid) rig.

    Returns reports sorted by (identity, n, t).  Pipelines carry rows
    through n_max+1 so shifted-index identities reach every requested n.
    """
    lock_coverage()
    chosen = tuple(suites) if suites else DEFAULT_VERIFY_SUITES
    unknown = set(chosen) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    if fd_scale is None:
        fd_scale = FLOW_FD_SCALE
    reports = []
    n_rows = n_max + 1
    for t in t_grid:
        params = WeightParams(alpha, beta, t)
        t_is_zero = params.t == 0
        grid_suites = [
            s for s in chosen
            if s != "p3"
            and not (t_is_zero and s in _T_POSITIVE_ONLY)
            and not (not t_is_zero and s == "t0")
        ]
        if not grid_suites:
            continue
        pipe = build_pipeline(params, n_rows, ctx)
        stencil = None
        if not t_is_zero and any(s in _T_POSITIVE_ONLY and s != "n0" for s in grid_suites):
            stencil = build_stencil(params, n_rows, ctx, fd_scale=fd_scale)
        for suite in grid_suites:
            if suite == "core":
                for n in _sample_orders(n_max, 3):
                    reports.extend(check_core_structure(pipe, n, ctx, tolerances))
                reports.extend(check_moment_routes(pipe, ctx, tolerances))
            elif suite == "ladder":
                for n in range(1, n_max + 1):
                    reports.extend(check_ladder(pipe, n, ctx, tolerances))
                for n, z in zip(_sample_orders(n_max, 2), (mpf(2), mpf(-1))):
                    reports.extend(check_ladder_oracle(pipe, n, z, ctx, tolerances))
            elif suite == "difference":
                for n in range(0, n_max + 1):
                    reports.extend(check_difference_system(pipe.aux, pipe.ortho, n, ctx, tolerances))
            elif suite == "recurrence":
                for n in range(0, n_max + 1):
                    reports.extend(check_recurrence_formulas(pipe.aux, pipe.ortho, n, ctx, tolerances))
            elif suite == "discrete":
                for n in range(1, n_max + 1):
                    reports.extend(check_discrete_sigma(pipe.aux, n, ctx, tolerances))
            elif suite == "toda":
                for n in range(0, n_max + 1):
                    reports.extend(
                        check_toda(params, n, params.t, ctx, stencil=stencil, tols=tolerances)
                    )
            elif suite == "sigma":
                for n in range(0, n_max + 1):
                    point = sigma_point(params, n, params.t, ctx, stencil=stencil)
                    reports.extend(
                        check_sigma_ode(
                            point, params, ctx, aux=pipe.aux, stencil=stencil, tols=tolerances
                        )
                    )
            elif suite == "pv":
                for n in range(1, n_max + 1):
                    reports.extend(
                        check_riccati_pv(params, n, params.t, ctx, stencil=stencil, tols=tolerances)
                    )
            elif suite == "n0":
                reports.extend(check_n0_kummer(params, ctx, pipe=pipe, tols=tolerances))
            elif suite == "t0":
                reports.extend(
                    check_t0_closed_forms(params, range(0, n_max + 1), ctx, pipe=pipe, tols=tolerances)
                )
    if "p3" in chosen:
        s_grid = [t for t in t_grid if WeightParams(alpha, beta, t).t > 0] or [1]
        reports.extend(
            check_p3_limit(min(2, n_max), s_grid[0], list(p3_betas), alpha, ctx, tols=tolerances)
        )
    return sort_reports(reports)


def _sample_orders(n_max, count):
    """Small deterministic spread of orders in 1..n_max-? for oracle checks."""
    cands = [1, 2, max(1, n_max // 2), max(1, n_max - 1)]
    out = []
    for c in cands:
        if c <= n_max and c not in out:
            out.append(c)
        if len(out) >= count:
            break
    return out


def sort_reports(reports):
    def key(rep):
        t = rep.t
        try:
            tkey = float(t)
        except (TypeError, ValueError):
            tkey = 0.0
        return (rep.identity, rep.n, tkey)

    return sorted(reports, key=key)


def all_pass(reports) -> bool:
    """True iff every conclusive report passed (inconclusives do not fail)."""
    return all(r.passed for r in reports if r.conclusive)
