"""Identity registry and coverage lock.

Every identity the library claims to verify is enumerated here with the
suite it belongs to and its tolerance class.  The runner refuses to start
if any enumerated identity lacks a bound evaluator, so a check cannot
silently drop out of the suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mpf


@dataclass(frozen=True)
class IdentityInfo:
    name: str
    suite: str
    kind: str
    summary: str


# Tolerance classes; values are defaults for the 256-bit reference rig and
# may be overridden per run.  "proxy" checks compare against the measured
# stencil error proxy instead of a fixed number; "probe" checks carry
# their own bound.
TOLERANCE_CLASSES = {
    "algebraic": mpf("1e-40"),
    "algebraic_deep": mpf("1e-35"),
    "anchor_t0": mpf("1e-30"),
    "stencil1": mpf("1e-15"),
    "riccati": mpf("1e-18"),
    "stencil2": mpf("1e-10"),
    "factored": mpf("1e-12"),
    "proxy": None,
    "probe": None,
}

_ENTRIES = [
    # structural relations of the orthogonal system
    ("core.orthogonality", "core", "algebraic", "cross-order inner products vanish (direct quadrature)"),
    ("core.recurrence", "core", "algebraic", "three-term recurrence holds for Horner-evaluated polynomials"),
    ("core.alpha_subleading", "core", "algebraic", "alpha_n equals the first-moment integral of P_n^2 (quadrature)"),
    ("core.subleading_sum", "core", "algebraic", "p1(n) telescopes minus the sum of alpha_j"),
    ("core.hankel_product", "core", "algebraic", "elimination determinant equals the pivot product"),
    ("core.moment_routes", "core", "probe", "quadrature and Kummer moment routes agree within bounds"),
    # ladder coefficients and compatibility conditions
    ("ladder.lower", "ladder", "algebraic", "lowering relation P_n' + B_n P_n = beta_n A_n P_{n-1}"),
    ("ladder.raise", "ladder", "algebraic", "raising relation for P_{n-1} against A_{n-1} P_n"),
    ("ladder.compat_sum", "ladder", "algebraic", "B_{n+1} + B_n matches (z-alpha_n) A_n - v'"),
    ("ladder.compat_diff", "ladder", "algebraic", "difference condition linking B shifts to beta A terms"),
    ("ladder.compat_product", "ladder", "algebraic", "summed condition B_n^2 + v'B_n + sum A_j = beta_n A_n A_{n-1}"),
    ("ladder.A_integral", "ladder", "algebraic", "A_n partial fractions equal the defining kernel integral"),
    ("ladder.B_integral", "ladder", "algebraic", "B_n partial fractions equal the defining kernel integral"),
    ("aux.parts_identity", "ladder", "algebraic", "integration-by-parts identity for the kernel middle term"),
    # difference system in the auxiliary quantities
    ("diff.rstar_pair", "difference", "algebraic", "rstar_{n+1} + rstar_n = t - alpha_n Rstar_n"),
    ("diff.shift_gap", "difference", "algebraic", "Rstar_n - R_n = -(2n+1+alpha+beta)"),
    ("diff.r_pair", "difference", "algebraic", "r_{n+1} + r_n = (1-alpha_n) R_n - beta"),
    ("diff.rstar_quad", "difference", "algebraic", "rstar_n^2 - t rstar_n = beta_n Rstar_n Rstar_{n-1}"),
    ("diff.r_quad", "difference", "algebraic", "r_n^2 + beta r_n = beta_n R_n R_{n-1}"),
    ("diff.cross_quad", "difference", "algebraic", "mixed quadratic tying both families of products"),
    ("diff.rstar_sum", "difference", "algebraic", "partial sums of Rstar close in finite terms"),
    ("diff.alpha_step", "difference", "algebraic", "alpha_n balances the (r, rstar) increments"),
    ("diff.subleading_split", "difference", "algebraic", "p1(n) = rstar_n - r_n"),
    # recurrence coefficients from auxiliaries
    ("rec.alpha_from_aux", "recurrence", "algebraic_deep", "alpha_n from (R_n, r_n, rstar_n)"),
    ("rec.beta_from_aux", "recurrence", "algebraic_deep", "beta_n from (r_n, rstar_n)"),
    # subleading-coefficient algebra and the discrete equation
    ("disc.H_from_p1", "discrete", "algebraic_deep", "H_n = (2n+alpha+beta) p1(n) + n(n+alpha-t)"),
    ("disc.R_from_p1", "discrete", "algebraic_deep", "R_n = H_n - H_{n+1} + 2n+1+alpha+beta"),
    ("disc.r_from_p1", "discrete", "algebraic_deep", "r_n from p1(n) and beta_n"),
    ("disc.beta_from_p1", "discrete", "algebraic_deep", "beta_n = X_n / Y_n in p1 alone"),
    ("disc.H_second_difference", "discrete", "algebraic_deep", "second-order difference equation for the shifted H"),
    # deformation flows in t
    ("toda.p1_flow", "toda", "proxy", "t p1'(n) = rstar_n"),
    ("toda.r_pair_flow", "toda", "proxy", "t rstar' = rstar + t r'"),
    ("toda.logdet_flow", "toda", "proxy", "t (ln D_n)' = -sum_{j<n} Rstar_j"),
    ("toda.alpha_flow", "toda", "proxy", "t alpha_n' = rstar_n - rstar_{n+1}"),
    ("toda.beta_flow", "toda", "proxy", "t beta_n' = (Rstar_{n-1} - Rstar_n) beta_n"),
    # second-order ODE for the log-derivative of the determinant
    ("ode.rstar_from_H", "sigma", "algebraic", "rstar_n rebuilt from (H_n, H_n')"),
    ("ode.r_from_H", "sigma", "algebraic", "r_n rebuilt from (H_n, H_n')"),
    ("ode.sigma", "sigma", "stencil1", "(tH'')^2 equals the quartic polynomial in (H, H')"),
    ("ode.sigma_shifted", "sigma", "stencil1", "same equation for the shifted H (sigma form)"),
    ("ode.r_flow_square", "sigma", "stencil1", "t^2 (r_n')^2 as a polynomial in (r_n, rstar_n)"),
    ("ode.R_quad_a", "pv", "stencil1", "first quadratic relation for R_n"),
    ("ode.R_quad_b", "pv", "stencil1", "second quadratic relation for R_n (with t r_n')"),
    ("ode.R_repr", "pv", "stencil1", "closed representation of R_n"),
    ("ode.R_inv_repr", "pv", "stencil1", "closed representation of 1/R_n"),
    # Riccati system and the Painleve V equation
    ("pv.riccati", "pv", "riccati", "t R_n' Riccati equation"),
    ("pv.rstar_from_R", "pv", "stencil1", "rstar_n recovered from (R_n, R_n', r_n)"),
    ("pv.r_from_R", "pv", "stencil1", "r_n solved from the induced linear system"),
    ("pv.rprime_from_R", "pv", "stencil2", "r_n' solved from the induced linear system"),
    ("pv.factored_ode", "pv", "factored", "factored second-order ODE: product vanishes"),
    ("pv.factored_second", "pv", "factored", "second (retained) factor vanishes"),
    ("pv.branch_magnitude", "pv", "probe", "first (discarded Riccati) factor stays away from zero"),
    ("pv.painleve5", "pv", "stencil2", "Painleve V equation for S_n = R_n/(2n+1+alpha+beta)"),
    # parameter anchors
    ("anchor.alpha0_ratio", "n0", "algebraic_deep", "alpha_0 equals the Kummer-U ratio"),
    ("anchor.R0_ratio", "n0", "algebraic_deep", "R_0 equals the Kummer-U ratio"),
    ("anchor.R0_large_t", "n0", "probe", "large-t expansion of R_0 to two terms"),
    ("anchor.R0_continuity", "n0", "probe", "R_0(t) approaches 1+alpha+beta as t -> 0"),
    ("anchor.t0_alpha", "t0", "anchor_t0", "alpha_n(0) matches the closed form"),
    ("anchor.t0_beta", "t0", "anchor_t0", "beta_n(0) matches the closed form"),
    ("anchor.t0_R", "t0", "anchor_t0", "R_n(0) matches the closed form"),
    ("anchor.t0_r", "t0", "anchor_t0", "r_n(0) matches the closed form"),
    ("anchor.t0_limits", "t0", "probe", "alpha_n(0), beta_n(0) approach 1/2, 1/16"),
    # scaling degeneration
    ("limit.p3_sigma", "p3", "probe", "rescaled equation residual at finite large beta"),
    ("limit.p3_decay", "p3", "probe", "residual decays as beta grows"),
]

REGISTRY = {name: IdentityInfo(name, suite, kind, summary) for name, suite, kind, summary in _ENTRIES}

REQUIRED_IDENTITIES = frozenset(REGISTRY)

SUITES = tuple(sorted({info.suite for info in REGISTRY.values()}))


class CoverageError(RuntimeError):
    """An enumerated identity has no bound evaluator."""


def assert_coverage(evaluated_names):
    """Fail if the runner does not evaluate every registered identity."""
    missing = REQUIRED_IDENTITIES - set(evaluated_names)
    if missing:
        raise CoverageError(f"identities without evaluators: {sorted(missing)}")
    unknown = set(evaluated_names) - REQUIRED_IDENTITIES
    if unknown:
        raise CoverageError(f"evaluators for unregistered identities: {sorted(unknown)}")


def tolerance_for(name: str, overrides=None):
    """Resolve the tolerance for one identity: class default or override."""
    info = REGISTRY[name]
    if overrides:
        if name in overrides:
            return overrides[name]
        if info.kind in overrides:
            return overrides[info.kind]
    return TOLERANCE_CLASSES[info.kind]
