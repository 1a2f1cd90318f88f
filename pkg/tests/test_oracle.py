import math

import numpy as np
import pytest

from dlmoptics.network import build_malus_network, build_wheeler_network
from dlmoptics.oracle import (detector_probabilities, oracle_hwp, oracle_malus, oracle_pbs,
                              oracle_wheeler, propagate)
from dlmoptics.rng import RandomStream


def test_pbs_examples():
    assert np.allclose(oracle_pbs([1, 0, 0, 0]), [1, 0, 0, 0])
    assert np.allclose(oracle_pbs([0, 1, 0, 0]), [0, 0, 0, 1j])


def test_pbs_preserves_norm():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(10_000, 4)) + 1j * rng.normal(size=(10_000, 4))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b = np.array([oracle_pbs(v) for v in a])
    assert np.max(np.abs(np.linalg.norm(b, axis=1) - 1)) <= 1e-12


def test_hwp_examples():
    b = oracle_hwp([1, 0], math.pi / 4)
    assert abs(b.aH) < 1e-12 and abs(b.aV - (-1j)) < 1e-12
    b = oracle_hwp([0, 1], 0.0)
    assert abs(b.aH) < 1e-12 and abs(b.aV - 1j) < 1e-12


def test_hwp_twice_is_minus_identity():
    a = np.array([0.6, 0.8j])
    b = oracle_hwp(oracle_hwp(a, 0.37), 0.37)
    assert np.allclose([b.aH, b.aV], -a, atol=1e-12)


@pytest.mark.parametrize("phi,config,expected", [
    (0.0, "closed", 1.0),
    (0.7, "open", 0.5),
    (math.pi / 2, "closed", 0.5),
    (math.pi, "closed", 0.0),
])
def test_wheeler_examples(phi, config, expected):
    assert oracle_wheeler(phi, config) == pytest.approx(expected, abs=1e-12)


def test_wheeler_closed_form_on_degree_grid():
    for deg in range(361):
        phi = math.radians(deg)
        assert abs(oracle_wheeler(phi, "closed") - math.cos(phi / 2) ** 2) <= 1e-12
        assert abs(oracle_wheeler(phi, "open") - 0.5) <= 1e-12


def test_wheeler_bad_config():
    with pytest.raises(ValueError):
        oracle_wheeler(0.0, "random")


@pytest.mark.parametrize("deg,expected", [(0, (1, 0)), (45, (0.5, 0.5)), (60, (0.25, 0.75))])
def test_malus_examples(deg, expected):
    assert oracle_malus(math.radians(deg)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("eom_on", [False, True])
@pytest.mark.parametrize("phi", [0.0, 0.4, 2.0, 5.5])
def test_total_probability_and_dark_port(eom_on, phi):
    probs = propagate(build_wheeler_network(0.99, RandomStream(0), phi), eom_on)
    assert sum(probs.values()) == pytest.approx(1.0, abs=1e-12)
    assert probs["exceptional"] <= 1e-24


def test_malus_network_interpretation():
    net = build_malus_network(0.99, RandomStream(0), theta=1.0)
    p0, p1 = detector_probabilities(net, False)
    assert p0 == pytest.approx(math.cos(1.0) ** 2) and p0 + p1 == pytest.approx(1.0)
