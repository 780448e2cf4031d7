"""The deformed Jacobi weight w(x) = e^(-t/x) x^alpha (1-x)^beta on [0,1].

For t > 0 the factor e^(-t/x) forces an infinitely strong zero at x = 0
(every derivative vanishes); t = 0 recovers a shifted Jacobi weight.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, mpmathify

from .precision import DomainError

# Parameters are normalized once at a generous fixed precision so that
# equality and cache keys are stable no matter which context uses them.
PARAM_BITS = 1024


@dataclass(frozen=True)
class WeightParams:
    """The triple (alpha, beta, t): alpha > 0, beta > 0, t >= 0."""

    alpha: mpf
    beta: mpf
    t: mpf

    def __post_init__(self):
        with mp.workprec(PARAM_BITS):
            object.__setattr__(self, "alpha", mpmathify(self.alpha) * 1)
            object.__setattr__(self, "beta", mpmathify(self.beta) * 1)
            object.__setattr__(self, "t", mpmathify(self.t) * 1)
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")
        if not self.beta > 0:
            raise ValueError("beta must be > 0")
        if self.t < 0:
            raise ValueError("t must be >= 0")

    def with_t(self, t) -> "WeightParams":
        return WeightParams(self.alpha, self.beta, t)

    def cache_key(self) -> tuple:
        return (self.alpha._mpf_, self.beta._mpf_, self.t._mpf_)


def weight_eval(params: WeightParams, x, one_minus_x=None):
    """w(x) at ambient mpmath precision for x in (0,1).

    Pass one_minus_x when x is within a few ulp of 1 and the complement is
    known more accurately than 1-x can express.
    """
    x = mpmathify(x)
    xc = 1 - x if one_minus_x is None else mpmathify(one_minus_x)
    if not (x > 0 and xc > 0):
        raise DomainError("weight defined on 0 < x < 1")
    a, b, t = params.alpha, params.beta, params.t
    value = mp.exp(a * mp.log(x) + b * mp.log(xc))
    if t > 0:
        value *= mp.exp(-t / x)
    return value


def v_prime_eval(params: WeightParams, z):
    """Logarithmic slope -(ln w)'(z) = -t/z^2 - alpha/z - beta/(z-1).

    Defined for complex z away from the poles 0 and 1.
    """
    z = mpmathify(z)
    if z == 0 or z == 1:
        raise DomainError("v' has poles at z = 0 and z = 1")
    return -params.t / z**2 - params.alpha / z - params.beta / (z - 1)
