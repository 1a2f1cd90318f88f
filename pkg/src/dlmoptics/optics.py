"""Stateless optical components acting on single messages."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (AmplitudePair, Message, UnitPair, amplitudes_to_message,
                   message_from_angles, message_to_amplitudes)

EOM_THETA = math.pi / 8


@dataclass(frozen=True)
class HwpSetting:
    theta: float


@dataclass(frozen=True)
class EomSetting:
    voltage_on: bool


def hwp_amplitudes(a: AmplitudePair, theta: float) -> AmplitudePair:
    """Half-wave plate on amplitudes: ``b = -i * [[c, s], [s, -c]] a`` with c, s of 2*theta.

    The matrix is orthogonal, so only the unit-modulus factor ``-i`` is applied
    and the norm is preserved.
    """
    c, s = math.cos(2.0 * theta), math.sin(2.0 * theta)
    aH, aV = a
    return AmplitudePair(-1j * (c * aH + s * aV), -1j * (s * aH - c * aV))


def hwp_apply(m: Message, theta: float) -> Message:
    """Rotate the polarization by ``2 * theta`` and shift phases by ``-pi/2``."""
    return amplitudes_to_message(hwp_amplitudes(message_to_amplitudes(m), theta))


def eom_apply(m: Message, setting: EomSetting | bool) -> Message:
    on = setting.voltage_on if isinstance(setting, EomSetting) else bool(setting)
    return hwp_apply(m, EOM_THETA) if on else m


def phase_shift_apply(m: Message, phi: float) -> Message:
    """Add ``phi`` to both phases; the polarization pair is untouched."""
    c, s = math.cos(phi), math.sin(phi)
    h, v, p = m
    return Message(UnitPair(h.c * c - h.s * s, h.s * c + h.c * s),
                   UnitPair(v.c * c - v.s * s, v.s * c + v.c * s), p)


def source_emit(psiH: float, psiV: float, xi: float) -> Message:
    return message_from_angles(psiH, psiV, xi)
