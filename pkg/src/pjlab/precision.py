"""Precision contexts and shared numeric plumbing.

Everything downstream computes with mpmath under an explicit binary
precision carried by a PrecisionCtx.  Values returned by the library are
mpf/mpc objects created at the context precision (plus internal guard
bits where noted); they stay valid after the context exits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from mpmath import mp, mpf, mpmathify

# Guard bits used inside quadrature and other node-level loops so that
# table entries are accurate to roughly one ulp of the working precision.
QUAD_GUARD_BITS = 64


class PJLabError(Exception):
    """Base class for all pjlab numeric errors."""


class DomainError(PJLabError):
    """Input outside the mathematical domain of an operation."""


class PositivityError(PJLabError):
    """A quantity that must be positive came out non-positive.

    For the moment-matrix factorization this signals loss of positive
    definiteness at the working precision; increase working_bits.
    """


class QuadratureNonConvergence(PJLabError):
    """Quadrature level cap reached before the target was met.

    Carries the best estimate and the achieved bound so callers can
    decide whether the partial result is usable.
    """

    def __init__(self, message, best=None, bound=None, evaluations=0):
        super().__init__(message)
        self.best = best
        self.bound = bound
        self.evaluations = evaluations


class StencilError(PJLabError):
    """A finite-difference stencil left the admissible domain."""


def to_mpf(x: Any, bits: int) -> mpf:
    """Convert x to mpf at the given binary precision.

    Strings and integers convert exactly-then-round; floats are taken at
    their exact binary value.  Deterministic for a fixed (x, bits).
    """
    with mp.workprec(bits):
        return mpmathify(x) * 1


@dataclass(frozen=True)
class PrecisionCtx:
    """Knobs for arbitrary-precision evaluation.

    working_bits   binary precision of delivered results (>= 64)
    quad_target    absolute error goal for quadrature (> 0)
    fd_step_scale  relative stencil step for derivatives in t, in (0, 1)
    max_level      cap on step-halving refinements in quadrature
    """

    working_bits: int = 256
    quad_target: mpf = None  # type: ignore[assignment]
    fd_step_scale: mpf = None  # type: ignore[assignment]
    max_level: int = 12

    def __post_init__(self):
        if self.working_bits < 64:
            raise ValueError("working_bits must be >= 64")
        if self.max_level < 2:
            raise ValueError("max_level must be >= 2")
        with mp.workprec(self.working_bits):
            if self.quad_target is None:
                object.__setattr__(self, "quad_target", mpf(2) ** (-self.working_bits))
            else:
                object.__setattr__(self, "quad_target", mpmathify(self.quad_target) * 1)
            if self.fd_step_scale is None:
                # balances truncation against cancellation for stencils over
                # functions evaluable at full working precision
                object.__setattr__(self, "fd_step_scale", mpf(2) ** (-(self.working_bits // 4)))
            else:
                object.__setattr__(self, "fd_step_scale", mpmathify(self.fd_step_scale) * 1)
        if not self.quad_target > 0:
            raise ValueError("quad_target must be > 0")
        if not (0 < self.fd_step_scale < 1):
            raise ValueError("fd_step_scale must be in (0, 1)")

    @classmethod
    def for_order(cls, n_max: int, **kw) -> "PrecisionCtx":
        """Default precision policy for a pipeline up to order n_max.

        The moment-matrix factorization of a smooth weight on [0,1] loses a
        roughly constant number of bits per order; 24 bits per order plus a
        64-bit base is validated by the recompute-at-higher-precision tests.
        """
        return cls(working_bits=max(192, 64 + 24 * n_max), **kw)

    def with_bits(self, bits: int) -> "PrecisionCtx":
        return PrecisionCtx(working_bits=bits, max_level=self.max_level)

    def cache_key(self) -> tuple:
        return (
            self.working_bits,
            self.quad_target._mpf_,
            self.fd_step_scale._mpf_,
            self.max_level,
        )

    def residual_floor(self) -> mpf:
        """Additive denominator floor for normalized residuals (avoids 0/0)."""
        with mp.workprec(self.working_bits):
            return mpf(10) ** (-mpf(self.working_bits) / 2)


def sci_str(x, digits: int) -> str:
    """Deterministic scientific-notation rendering with a fixed digit count.

    Format: -d.dddd...e[+-]XX with exactly `digits` significant digits.
    Locale independent; used for byte-stable CSV/JSON output.
    """
    with mp.workprec(max(8 + int(digits * 3.33), 64)):
        x = mpmathify(x)
        if x == 0:
            mant = "0." + "0" * (digits - 1)
            return mant + "e+00"
        sign = "-" if x < 0 else ""
        ax = abs(x)
        e = int(mp.floor(mp.log10(ax)))
        m = ax / mpf(10) ** e
        # round half the last digit upward, then renormalize
        scaled = int(mp.nint(m * mpf(10) ** (digits - 1)))
        if scaled >= 10**digits:
            scaled //= 10
            e += 1
        s = str(scaled).rjust(digits, "0")
        mant = s[0] + "." + s[1:] if digits > 1 else s
        esign = "+" if e >= 0 else "-"
        return f"{sign}{mant}e{esign}{abs(e):02d}"
