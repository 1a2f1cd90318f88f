import cmath
import math

import pytest
from hypothesis import given, strategies as st

from dlmoptics.core import (AmplitudePair, DegenerateAmplitudeError, Message, UnitPair,
                            amplitudes_to_message, equal_up_to_global_phase,
                            message_from_angles, message_to_amplitudes)

R2 = math.sqrt(2) / 2
angles = st.floats(-10.0, 10.0, allow_nan=False)


def close_pair(pair, expected, tol=1e-12):
    return abs(pair[0] - expected[0]) <= tol and abs(pair[1] - expected[1]) <= tol


def test_message_from_angles_identity():
    m = message_from_angles(0, 0, 0)
    assert m == Message(UnitPair(1, 0), UnitPair(1, 0), UnitPair(1, 0))
    assert m.as_vector() == (1, 0, 1, 0, 1, 0)


def test_message_from_angles_45():
    assert close_pair(message_from_angles(0, 0, math.pi / 4).p, (R2, R2))


def test_message_from_angles_absorbs_sign_into_h_phase():
    m = message_from_angles(0, 0, 3 * math.pi / 4)
    assert close_pair(m.h, (-1, 0))
    assert close_pair(m.v, (1, 0))
    assert close_pair(m.p, (R2, R2))


def test_sign_absorption_keeps_amplitudes():
    for xi in [0.3, 2.0, 3.5, 5.0, -1.0]:
        a = message_to_amplitudes(message_from_angles(0.4, -0.2, xi))
        assert abs(a.aH - cmath.exp(0.4j) * math.cos(xi)) < 1e-12
        assert abs(a.aV - cmath.exp(-0.2j) * math.sin(xi)) < 1e-12


@pytest.mark.parametrize("angles_in,expected", [
    ((0, 0, 0), (1, 0)),
    ((0, math.pi / 2, math.pi / 4), (R2, 1j * R2)),
    ((math.pi, 0, math.pi / 2), (0, 1)),
])
def test_message_to_amplitudes(angles_in, expected):
    a = message_to_amplitudes(message_from_angles(*angles_in))
    assert abs(a.aH - expected[0]) < 1e-12 and abs(a.aV - expected[1]) < 1e-12


def test_amplitudes_to_message_pure_h():
    m = amplitudes_to_message(AmplitudePair(1, 0))
    assert m == Message(UnitPair(1, 0), UnitPair(1, 0), UnitPair(1, 0))


def test_amplitudes_to_message_pure_v_with_phase():
    m = amplitudes_to_message(AmplitudePair(0, -1j))
    assert m.h == UnitPair(1, 0)
    assert close_pair(m.v, (0, -1))
    assert math.isclose(m.xi, math.pi / 2)


def test_amplitudes_to_message_inverse_example():
    m = amplitudes_to_message(AmplitudePair(R2, 1j * R2))
    assert math.isclose(m.xi, math.pi / 4)
    assert abs(m.h.angle) < 1e-12 and math.isclose(m.v.angle, math.pi / 2)


def test_amplitudes_to_message_normalizes():
    m = amplitudes_to_message(AmplitudePair(3, 4j))
    assert close_pair(m.p, (0.6, 0.8))


def test_degenerate_amplitude():
    with pytest.raises(DegenerateAmplitudeError, match="degenerate amplitude"):
        amplitudes_to_message(AmplitudePair(0, 0))


@st.composite
def amp_pairs(draw):
    xi = draw(st.floats(1e-6, math.pi / 2 - 1e-6))
    ph, pv = draw(angles), draw(angles)
    return AmplitudePair(cmath.exp(1j * ph) * math.cos(xi), cmath.exp(1j * pv) * math.sin(xi))


@given(amp_pairs())
def test_round_trip_amplitudes(a):
    b = message_to_amplitudes(amplitudes_to_message(a))
    assert abs(a.aH - b.aH) <= 1e-12 and abs(a.aV - b.aV) <= 1e-12


@given(angles, angles, st.floats(1e-6, math.pi / 2 - 1e-6))
def test_canonical_message_round_trip(ph, pv, xi):
    m = message_from_angles(ph, pv, xi)
    back = amplitudes_to_message(message_to_amplitudes(m))
    for got, want in zip(back.as_vector(), m.as_vector()):
        assert abs(got - want) <= 1e-12


@given(angles, angles, angles)
def test_messages_are_valid(ph, pv, xi):
    assert message_from_angles(ph, pv, xi).is_valid()


def test_equal_up_to_global_phase():
    a = AmplitudePair(0.6, 0.8j)
    b = AmplitudePair(0.6 * 1j, -0.8)
    assert equal_up_to_global_phase(a, b)
    assert not equal_up_to_global_phase(a, AmplitudePair(0.6, -0.8j))
