"""Deterministic learning machine: the adaptive input stage of a beam splitter.

The machine keeps, for each input channel, the phase and polarization pairs of
the last message seen on that channel, plus a two-component internal vector
``x`` that tracks how often each channel fires via the exponential rule

    x_i <- alpha * x_i + (1 - alpha) * [i == k]

for an event on channel ``k``.
"""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field

from .core import Message, UnitPair
from .rng import RandomStream

DEFAULT_ALPHA = 0.99
_DRIFT_TOL = 1e-9


class ConfigurationError(ValueError):
    pass


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ConfigurationError(f"alpha must lie in (0, 1), got {alpha}")
    return alpha


@dataclass(slots=True)
class DlmState:
    """Registers and internal vector of one learning machine.

    ``yH[k]``, ``yV[k]``, ``yP[k]`` hold the pairs of the last message on input
    channel ``k``; ``x`` is a point on the 2-simplex.
    """

    yH: list[UnitPair]
    yV: list[UnitPair]
    yP: list[UnitPair]
    x: list[float]
    alpha: float = DEFAULT_ALPHA
    events: int = field(default=0)

    def copy(self) -> "DlmState":
        return copy.deepcopy(self)

    def check(self, tol: float = 1e-12) -> None:
        x0, x1 = self.x
        if abs(x0 + x1 - 1.0) > tol or x0 < 0.0 or x1 < 0.0:
            raise AssertionError(f"internal vector left the simplex: {self.x}")
        for reg in (*self.yH, *self.yV, *self.yP):
            if not reg.is_unit(tol):
                raise AssertionError(f"register is not a unit pair: {reg}")


def dlm_init(alpha: float, rng: RandomStream) -> DlmState:
    """Pseudo-random initial state.

    Draw order: ``r`` for ``x = (r, 1 - r)``, then one angle in [0, 2*pi) for
    each of yH[0], yH[1], yV[0], yV[1], yP[0], yP[1].
    """
    alpha = check_alpha(alpha)
    r = rng.next_uniform()
    regs = [UnitPair.from_angle(2.0 * math.pi * rng.next_uniform()) for _ in range(6)]
    return DlmState(yH=regs[0:2], yV=regs[2:4], yP=regs[4:6], x=[r, 1.0 - r], alpha=alpha)


def dlm_update(state: DlmState, k: int, m: Message) -> DlmState:
    """Store ``m`` in the channel-``k`` registers and update ``x`` in place.

    Returns the same (mutated) state object.
    """
    if k != 0 and k != 1:
        raise ValueError(f"channel must be 0 or 1, got {k!r}")
    state.yH[k] = m.h
    state.yV[k] = m.v
    state.yP[k] = m.p
    a = state.alpha
    x = state.x
    if k == 0:
        x[0] = a * x[0] + (1.0 - a)
        x[1] = a * x[1]
    else:
        x[0] = a * x[0]
        x[1] = a * x[1] + (1.0 - a)
    state.events += 1
    assert abs(x[0] + x[1] - 1.0) < _DRIFT_TOL, x
    return state
