"""Event-based polarizing beam splitter built on a learning machine.

Each event runs three stages: the input stage updates the machine's registers,
the transformation stage combines registers and internal vector into an
8-vector ``t``, and the output stage picks an output channel with one uniform
draw ``r`` and emits a normalized message.

Read as four complex numbers, ``t`` equals the PBS matrix acting on the
amplitudes ``(aH0, aV0, aH1, aV1)``, where ``aH_k = e^{i psiH_k} cos(xi_k) sqrt(x_k)``
and ``aV_k = e^{i psiV_k} sin(xi_k) sqrt(x_k)``: H is transmitted and V is
reflected with a factor ``i``.
"""
from __future__ import annotations

import math
from typing import NamedTuple

from .core import ONE, ZERO_TOL, Message, UnitPair
from .dlm import DlmState, dlm_update
from .rng import RandomStream


class PbsOutcome(NamedTuple):
    channel: int
    message: Message
    degenerate: bool = False


def pbs_transform(state: DlmState) -> tuple[float, ...]:
    (cH0, sH0), (cH1, sH1) = state.yH
    (cV0, sV0), (cV1, sV1) = state.yV
    (cP0, sP0), (cP1, sP1) = state.yP
    r0 = math.sqrt(state.x[0])
    r1 = math.sqrt(state.x[1])
    return (
        cH0 * cP0 * r0,
        sH0 * cP0 * r0,
        -sV1 * sP1 * r1,
        cV1 * sP1 * r1,
        cH1 * cP1 * r1,
        sH1 * cP1 * r1,
        -sV0 * sP0 * r0,
        cV0 * sP0 * r0,
    )


def _emit(a: float, b: float, c: float, d: float) -> tuple[Message, bool]:
    n_h = math.hypot(a, b)
    n_v = math.hypot(c, d)
    n = math.hypot(n_h, n_v)
    h = UnitPair(a / n_h, b / n_h) if n_h >= ZERO_TOL else ONE
    v = UnitPair(c / n_v, d / n_v) if n_v >= ZERO_TOL else ONE
    if n < ZERO_TOL:
        return Message(h, v, ONE), True
    return Message(h, v, UnitPair(n_h / n, n_v / n)), False


def pbs_select_and_emit(t: tuple[float, ...], r: float) -> PbsOutcome:
    """Output stage.

    Channel 0 is chosen iff ``t[0]**2 + t[1]**2 > r`` (strict), and then the
    message is built from ``t[0:4]``; otherwise channel 1 gets the message
    built from ``t[4:8]``. A vanishing sub-norm gives the phase pair (1, 0); a
    vanishing total norm gives polarization (1, 0) and a degenerate flag.
    """
    if t[0] * t[0] + t[1] * t[1] > r:
        msg, degenerate = _emit(t[0], t[1], t[2], t[3])
        return PbsOutcome(0, msg, degenerate)
    msg, degenerate = _emit(t[4], t[5], t[6], t[7])
    return PbsOutcome(1, msg, degenerate)


def pbs_process(state: DlmState, k: int, m: Message,
                rng: RandomStream) -> tuple[DlmState, PbsOutcome]:
    """Run one event through the beam splitter. Mutates ``state``."""
    dlm_update(state, k, m)
    outcome = pbs_select_and_emit(pbs_transform(state), rng.next_uniform())
    return state, outcome


def transform_as_complex(t: tuple[float, ...]) -> tuple[complex, complex, complex, complex]:
    """Pair up ``t`` into (b_H0, b_V0, b_H1, b_V1)."""
    return (complex(t[0], t[1]), complex(t[2], t[3]),
            complex(t[4], t[5]), complex(t[6], t[7]))
