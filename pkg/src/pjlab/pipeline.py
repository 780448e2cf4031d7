"""One-stop pipeline (moments -> orthogonal system -> auxiliaries) plus
stencil machinery for derivatives of pipeline quantities in t.

Builds are cached per (params, n_max, ctx); the identity suite leans on
this heavily since every stencil point is a full rebuild at a shifted t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from mpmath import mp, mpf

from .auxiliary import AuxSet, aux_build
from .moments import SHIFT_EDGE, SHIFT_PLAIN, moment_table
from .ortho import OrthoSystem, build_ortho
from .precision import PrecisionCtx, StencilError
from .quad import central_d1, central_d1_3pt, central_d2, central_d2_3pt
from .weights import WeightParams

_pipeline_cache: dict = {}


@dataclass(frozen=True)
class Pipeline:
    params: WeightParams
    n_max: int
    ctx: PrecisionCtx
    moments: dict
    ortho: OrthoSystem
    aux: AuxSet


def build_pipeline(
    params: WeightParams,
    n_max: int,
    ctx: PrecisionCtx,
    cross_check: bool = True,
    use_cache: bool = True,
) -> Pipeline:
    key = (params.cache_key(), n_max, ctx.cache_key(), cross_check)
    if use_cache and key in _pipeline_cache:
        return _pipeline_cache[key]
    tables = moment_table(
        params, 2 * n_max + 2, {SHIFT_PLAIN, SHIFT_EDGE}, ctx, cross_check=cross_check
    )
    sys = build_ortho(tables[SHIFT_PLAIN], n_max, ctx)
    aux = aux_build(sys, tables, ctx)
    pipe = Pipeline(params=params, n_max=n_max, ctx=ctx, moments=tables, ortho=sys, aux=aux)
    if use_cache:
        _pipeline_cache[key] = pipe
    return pipe


def clear_cache():
    _pipeline_cache.clear()


@dataclass(frozen=True)
class PipelineStencil:
    """Five pipeline builds at t(1 -/+ 2s), t(1 -/+ s), t for one rig point.

    derivative(extract, order) applies the 5-point central rule to any
    scalar read off the pipelines and returns (value, proxy), the proxy
    being the 5pt-vs-3pt difference.
    """

    center: Pipeline
    step: mpf
    members: tuple

    @property
    def t(self):
        return self.center.params.t

    def values(self, extract: Callable):
        return [extract(p) for p in self.members]

    def derivative(self, extract: Callable, order: int = 1):
        vals = self.values(extract)
        with mp.workprec(self.center.ctx.working_bits):
            if order == 1:
                est = central_d1(vals, self.step)
                ref = central_d1_3pt(vals, self.step)
            elif order == 2:
                est = central_d2(vals, self.step)
                ref = central_d2_3pt(vals, self.step)
            else:
                raise ValueError("order must be 1 or 2")
            return est, abs(est - ref)


def build_stencil(
    params: WeightParams,
    n_max: int,
    ctx: PrecisionCtx,
    fd_scale=None,
    cross_check: bool = True,
) -> PipelineStencil:
    """Build the five stencil pipelines around params.t (t > 0 required)."""
    t = params.t
    if not t > 0:
        raise StencilError("stencil requires t > 0")
    with mp.workprec(ctx.working_bits):
        scale = ctx.fd_step_scale if fd_scale is None else (mp.mpmathify(fd_scale) * 1)
        h = t * scale
        if t - 2 * h <= 0:
            raise StencilError("stencil crosses t <= 0")
        ts = [t - 2 * h, t - h, t, t + h, t + 2 * h]
    members = tuple(
        build_pipeline(params.with_t(tv), n_max, ctx, cross_check=cross_check) for tv in ts
    )
    return PipelineStencil(center=members[2], step=h, members=members)
