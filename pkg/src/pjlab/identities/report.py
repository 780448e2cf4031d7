"""Residual reports: every identity check reduces to one of these."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from mpmath import mp, mpf, mpmathify

from ..precision import PrecisionCtx, sci_str


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one identity evaluation at one (n, t[, z]).

    residual is |sum of terms| / (sum of |terms| + floor), so reports are
    scale invariant across parameter choices.  passed follows
    residual < tolerance whenever the check is conclusive; singular
    configurations (vanishing pivots the identity assumes nonzero) are
    flagged conclusive=False and never counted as failures.
    """

    identity: str
    n: int
    t: object
    residual: mpf
    tolerance: mpf
    passed: bool
    z: Optional[object] = None
    conclusive: bool = True
    notes: str = ""

    def __post_init__(self):
        if self.conclusive and not self.residual < mp.inf:
            raise ValueError("residual must be finite for a conclusive report")

    def row(self, digits: int = 17) -> dict:
        return {
            "identity": self.identity,
            "n": self.n,
            "t": sci_str(self.t, digits),
            "z": None if self.z is None else str(self.z),
            "residual": sci_str(self.residual, digits),
            "tolerance": sci_str(self.tolerance, digits),
            "pass": bool(self.passed),
            "conclusive": bool(self.conclusive),
            "notes": self.notes,
        }


def normalized_residual(terms, floor):
    """|sum terms| / (sum |terms| + floor); terms may be real or complex."""
    s = mp.zero
    den = mpmathify(floor)
    for x in terms:
        s += x
        den += abs(x)
    return abs(s) / den


def report(identity, n, t, terms, tolerance, ctx: PrecisionCtx, z=None, notes=""):
    """Assemble a conclusive report from additive identity terms."""
    with mp.workprec(ctx.working_bits):
        r = normalized_residual(terms, ctx.residual_floor())
        tol = mpmathify(tolerance)
        return ResidualReport(
            identity=identity, n=n, t=t, residual=r, tolerance=tol,
            passed=bool(r < tol), z=z, notes=notes,
        )


def probe_report(identity, n, t, value, bound, ctx, z=None, notes="", larger_ok=False):
    """Report for scalar probes: pass iff value < bound (or > for larger_ok)."""
    with mp.workprec(ctx.working_bits):
        value = mpmathify(value)
        bound = mpmathify(bound)
        ok = bool(value > bound) if larger_ok else bool(value < bound)
        return ResidualReport(
            identity=identity, n=n, t=t, residual=abs(value), tolerance=bound,
            passed=ok, z=z, notes=notes or ("probe: value > bound" if larger_ok else "probe"),
        )


def inconclusive_report(identity, n, t, ctx, z=None, notes=""):
    return ResidualReport(
        identity=identity, n=n, t=t, residual=mp.zero, tolerance=mp.zero,
        passed=True, z=z, conclusive=False, notes=notes or "singular configuration",
    )
