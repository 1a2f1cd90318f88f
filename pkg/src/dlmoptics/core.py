"""Messages carried by messengers and their amplitude form.

A message holds three unit pairs: the phase of the horizontal component, the
phase of the vertical component, and the polarization angle. In canonical form
the polarization angle lies in [0, pi/2], so any sign is carried by the phases.
"""
from __future__ import annotations

import cmath
import math
from typing import NamedTuple

UNIT_TOL = 1e-12
ZERO_TOL = 1e-12


class DegenerateAmplitudeError(ValueError):
    pass


class UnitPair(NamedTuple):
    c: float
    s: float

    @classmethod
    def from_angle(cls, angle: float) -> "UnitPair":
        return cls(math.cos(angle), math.sin(angle))

    @property
    def angle(self) -> float:
        return math.atan2(self.s, self.c)

    def is_unit(self, tol: float = UNIT_TOL) -> bool:
        return abs(self.c * self.c + self.s * self.s - 1.0) <= tol


ONE = UnitPair(1.0, 0.0)


class Message(NamedTuple):
    h: UnitPair
    v: UnitPair
    p: UnitPair

    def as_vector(self) -> tuple[float, ...]:
        """The flat 6-tuple (cos psiH, sin psiH, cos psiV, sin psiV, cos xi, sin xi)."""
        return (*self.h, *self.v, *self.p)

    @property
    def xi(self) -> float:
        return self.p.angle

    def is_valid(self, tol: float = UNIT_TOL) -> bool:
        return (self.h.is_unit(tol) and self.v.is_unit(tol) and self.p.is_unit(tol)
                and self.p.c >= 0.0 and self.p.s >= 0.0)


class AmplitudePair(NamedTuple):
    aH: complex
    aV: complex

    def norm2(self) -> float:
        return abs(self.aH) ** 2 + abs(self.aV) ** 2


def message_from_angles(psiH: float, psiV: float, xi: float) -> Message:
    """Build a canonical message from phase and polarization angles (radians).

    Negative cos/sin of ``xi`` are absorbed into ``psiH``/``psiV`` by a shift
    of pi, which leaves the represented amplitudes unchanged.
    """
    c, s = math.cos(xi), math.sin(xi)
    if c < 0.0:
        c, psiH = -c, psiH + math.pi
    if s < 0.0:
        s, psiV = -s, psiV + math.pi
    return Message(UnitPair.from_angle(psiH), UnitPair.from_angle(psiV), UnitPair(c, s))


def message_to_amplitudes(m: Message) -> AmplitudePair:
    h, v, p = m
    return AmplitudePair(complex(h.c * p.c, h.s * p.c), complex(v.c * p.s, v.s * p.s))


def _phase_pair(a: complex, mag: float) -> UnitPair:
    if mag < ZERO_TOL:
        return ONE
    return UnitPair(a.real / mag, a.imag / mag)


def amplitudes_to_message(a: AmplitudePair) -> Message:
    """Inverse of :func:`message_to_amplitudes` up to normalization.

    A component whose magnitude is below 1e-12 gets the phase pair (1, 0).

    Raises
    ------
    DegenerateAmplitudeError
        If both amplitudes vanish.
    """
    aH, aV = a
    mh, mv = abs(aH), abs(aV)
    norm = math.hypot(mh, mv)
    if norm == 0.0 or not math.isfinite(norm):
        raise DegenerateAmplitudeError("degenerate amplitude")
    return Message(_phase_pair(aH, mh), _phase_pair(aV, mv), UnitPair(mh / norm, mv / norm))


def normalize_amplitudes(a: AmplitudePair) -> AmplitudePair:
    n = math.sqrt(a.norm2())
    if n == 0.0:
        raise DegenerateAmplitudeError("degenerate amplitude")
    return AmplitudePair(a.aH / n, a.aV / n)


def equal_up_to_global_phase(a: AmplitudePair, b: AmplitudePair, tol: float = 1e-12) -> bool:
    """Compare two amplitude pairs, ignoring a common unit-modulus factor."""
    ref_a, ref_b = (a.aH, b.aH) if abs(a.aH) >= abs(a.aV) else (a.aV, b.aV)
    if abs(ref_a) < ZERO_TOL or abs(ref_b) < ZERO_TOL:
        return abs(a.aH - b.aH) <= tol and abs(a.aV - b.aV) <= tol
    g = cmath.exp(1j * (cmath.phase(ref_a) - cmath.phase(ref_b)))
    return abs(a.aH - g * b.aH) <= tol and abs(a.aV - g * b.aV) <= tol
