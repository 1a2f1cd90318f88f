"""Quantum-amplitude reference for the event-based networks.

The oracle walks the same :class:`~dlmoptics.network.Network` wiring as the
event loop, but propagates complex amplitudes through exact component matrices
instead of routing messengers. It never looks at learning-machine state.
"""
from __future__ import annotations

import math

import numpy as np

from .core import AmplitudePair, message_to_amplitudes
from .network import (Detector, Eom, Hwp, Network, Pbs, PhaseShift, Sink, Source,
                      build_malus_network, build_wheeler_network)
from .optics import EOM_THETA
from .rng import RandomStream

# Acts on (aH0, aV0, aH1, aV1): H is transmitted, V is reflected with a factor i.
PBS_MATRIX = np.array([
    [1, 0, 0, 0],
    [0, 0, 0, 1j],
    [0, 0, 1, 0],
    [0, 1j, 0, 0],
], dtype=complex)


def hwp_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    return -1j * np.array([[c, s], [s, -c]], dtype=complex)


def oracle_pbs(a) -> np.ndarray:
    return PBS_MATRIX @ np.asarray(a, dtype=complex)


def oracle_hwp(a, theta: float) -> AmplitudePair:
    b = hwp_matrix(theta) @ np.asarray(a, dtype=complex)
    return AmplitudePair(complex(b[0]), complex(b[1]))


def propagate(net: Network, eom_on: bool) -> dict[str, float]:
    """Probability arriving at every terminal node of ``net``.

    EOM nodes act as a HWP at pi/8 when ``eom_on`` and as identity otherwise.
    """
    zero = np.zeros(2, dtype=complex)
    inbox: dict[tuple[str, int], np.ndarray] = {}
    result: dict[str, float] = {}

    def inp(nid, ch):
        return inbox.get((nid, ch), zero)

    def send(nid, ch, amp):
        dst = net.edges[(nid, ch)]
        inbox[dst] = inbox.get(dst, zero) + amp

    for nid in net.topological_order():
        node = net.nodes[nid]
        if isinstance(node, Source):
            send(nid, 0, np.array(message_to_amplitudes(node.emit()), dtype=complex))
        elif isinstance(node, Pbs):
            b = oracle_pbs(np.concatenate([inp(nid, 0), inp(nid, 1)]))
            send(nid, 0, b[:2])
            send(nid, 1, b[2:])
        elif isinstance(node, Hwp):
            send(nid, 0, hwp_matrix(node.theta) @ inp(nid, 0))
        elif isinstance(node, Eom):
            a = inp(nid, 0)
            send(nid, 0, hwp_matrix(EOM_THETA) @ a if eom_on else a)
        elif isinstance(node, PhaseShift):
            send(nid, 0, np.exp(1j * node.phi) * inp(nid, 0))
        elif isinstance(node, (Detector, Sink)):
            a = inp(nid, 0)
            result[nid] = float(np.vdot(a, a).real)
        else:
            raise TypeError(f"oracle cannot interpret {type(node).__name__}")
    return result


def detector_probabilities(net: Network, eom_on: bool) -> tuple[float, float]:
    """(p0, p1) conditioned on a detector firing (sinks excluded)."""
    probs = propagate(net, eom_on)
    p = {0: 0.0, 1: 0.0}
    for nid, val in probs.items():
        node = net.nodes[nid]
        if isinstance(node, Detector):
            p[node.label] += val
    total = p[0] + p[1]
    return p[0] / total, p[1] / total


_ORACLE_RNG_SEED = 0


def oracle_wheeler(phi: float, config: str) -> float:
    """D0 probability for the Wheeler wiring at phase shift ``phi``."""
    if config not in ("open", "closed"):
        raise ValueError(f"config must be 'open' or 'closed', got {config!r}")
    net = build_wheeler_network(0.99, RandomStream(_ORACLE_RNG_SEED), phi)
    return detector_probabilities(net, config == "closed")[0]


def oracle_malus(xi: float) -> tuple[float, float]:
    net = build_malus_network(0.99, RandomStream(_ORACLE_RNG_SEED), xi)
    return detector_probabilities(net, False)
