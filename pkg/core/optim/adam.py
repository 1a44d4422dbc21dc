# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Adam with bias correction, applied in place to named parameter arrays."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional

import numpy as np

from core.errors import ArgumentError, ShapeError, UsageError


@dataclass
class AdamState:
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_params(cls, params: Mapping[str, np.ndarray], **hyper: float) -> "AdamState":
        state = cls(**hyper)
        for name, arr in params.items():
            state.m[name] = np.zeros_like(arr)
            state.v[name] = np.zeros_like(arr)
        return state


def adam_step(
    params: Mapping[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    state: AdamState,
    lr_t: float,
    *,
    skip: Optional[Iterable[str]] = None,
) -> tuple[Mapping[str, np.ndarray], AdamState]:
    """One Adam update of every parameter named in ``grads``.

    Parameters are modified in place. Names in ``skip`` keep their values and
    moments (frozen). ``state.t`` advances once per call.
    """
    if lr_t < 0:
        raise ArgumentError(f"adam_step: negative learning rate {lr_t}")
    frozen = set(skip or ())
    unknown = set(grads) - set(params)
    if unknown:
        raise UsageError(f"adam_step: gradients for unknown parameters {sorted(unknown)}")
    active = [name for name in grads if name not in frozen]
    # nothing is touched until every shape has been checked
    for name in active:
        p = params[name]
        if grads[name].shape != p.shape:
            raise ShapeError("adam_step", p.shape, grads[name].shape, detail=name)
        if name in state.m and (state.m[name].shape != p.shape or state.v[name].shape != p.shape):
            raise UsageError(f"adam_step: moment shape for {name} does not match its parameter")

    state.t += 1
    t = state.t
    b1, b2 = state.beta1, state.beta2
    correction1 = 1.0 - b1**t
    correction2 = 1.0 - b2**t

    for name in active:
        p = params[name]
        if name not in state.m:
            state.m[name] = np.zeros_like(p)
            state.v[name] = np.zeros_like(p)
        m = state.m[name]
        v = state.v[name]
        g = grads[name].astype(p.dtype, copy=False)
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * (g * g)
        m_hat = m / correction1
        v_hat = v / correction2
        p -= (lr_t * m_hat / (np.sqrt(v_hat) + state.eps)).astype(p.dtype, copy=False)
    return params, state


__all__ = ["AdamState", "adam_step"]
