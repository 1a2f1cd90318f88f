"""Wiring of components into experiments and the one-messenger event loop.

A :class:`Network` is a set of named nodes plus edges mapping
``(node id, output channel)`` to ``(node id, input channel)``. Exactly one
messenger is in flight at any time; it starts at the source and is handed from
node to node until it reaches a terminal node (a detector or a sink).
"""
from __future__ import annotations

import copy
import math
from collections import Counter
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Union

from .core import Message
from .dlm import DlmState, check_alpha, dlm_init
from .optics import eom_apply, hwp_apply, phase_shift_apply, source_emit
from .pbs import pbs_process
from .rng import RandomStream

EOM_MODES = ("open", "closed", "random")


class NetworkError(RuntimeError):
    """Raised for a misconfigured network."""


@dataclass
class Source:
    psiH: float = 0.0
    psiV: float = 0.0
    xi: float = 0.0

    def emit(self) -> Message:
        return source_emit(self.psiH, self.psiV, self.xi)


@dataclass
class Pbs:
    state: DlmState
    stream: RandomStream
    arrivals: list[int] = field(default_factory=lambda: [0, 0])
    n_degenerate: int = 0


@dataclass
class Wollaston(Pbs):
    """A PBS fed through input channel 0 only."""


@dataclass
class Hwp:
    theta: float


@dataclass
class Eom:
    voltage_on: bool = False


@dataclass
class PhaseShift:
    phi: float = 0.0


@dataclass
class Detector:
    label: int


@dataclass
class Sink:
    """Terminal node that counts messengers leaving a nominally dark channel."""

    count: int = 0


Node = Union[Source, Pbs, Wollaston, Hwp, Eom, PhaseShift, Detector, Sink]

_TERMINAL = (Detector, Sink)


def output_channels(node: Node) -> tuple[int, ...]:
    if isinstance(node, Pbs):
        return (0, 1)
    if isinstance(node, _TERMINAL):
        return ()
    return (0,)


@dataclass
class Network:
    nodes: dict[str, Node]
    edges: dict[tuple[str, int], tuple[str, int]]
    source: str
    control: tuple[str, str] | None = None
    name: str = "network"
    emitted: int = 0
    _in_flight: bool = field(default=False, repr=False)

    def __post_init__(self):
        self.validate()
        self._src_msg = None
        self._has_eom = bool(self.eom_ids)

    @property
    def eom_ids(self) -> list[str]:
        return [k for k, n in self.nodes.items() if isinstance(n, Eom)]

    def validate(self) -> None:
        sources = [k for k, n in self.nodes.items() if isinstance(n, Source)]
        if sources != [self.source]:
            raise NetworkError(f"network needs exactly one source, found {sources}")
        if not any(isinstance(n, Detector) for n in self.nodes.values()):
            raise NetworkError("network has no detector")
        for (src, ch), (dst, dch) in self.edges.items():
            if src not in self.nodes or dst not in self.nodes:
                raise NetworkError(f"edge {(src, ch)} -> {(dst, dch)} names an unknown node")
            if ch not in output_channels(self.nodes[src]):
                raise NetworkError(f"node {src!r} has no output channel {ch}")
            if isinstance(self.nodes[dst], Source):
                raise NetworkError("edges may not lead into the source")
            if isinstance(self.nodes[dst], Wollaston) and dch != 0:
                raise NetworkError(f"Wollaston {dst!r} accepts input channel 0 only")
        for nid, node in self.nodes.items():
            for ch in output_channels(node):
                if (nid, ch) not in self.edges:
                    raise NetworkError(f"output channel {ch} of {nid!r} is not connected")
        try:
            self.topological_order()
        except CycleError as exc:
            raise NetworkError(f"network contains a cycle: {exc.args[1]}") from None

    def topological_order(self) -> list[str]:
        ts = TopologicalSorter({nid: set() for nid in self.nodes})
        for (src, _), (dst, _) in self.edges.items():
            ts.add(dst, src)
        return list(ts.static_order())

    @property
    def setting(self) -> float:
        if self.control is None:
            return 0.0
        nid, attr = self.control
        return getattr(self.nodes[nid], attr)

    def set_setting(self, value: float) -> None:
        """Set the swept parameter (radians): theta for Malus, phi for Wheeler."""
        if self.control is None:
            raise NetworkError(f"{self.name} has no swept parameter")
        nid, attr = self.control
        setattr(self.nodes[nid], attr, float(value))
        self._src_msg = None

    def checkpoint(self) -> "Network":
        return copy.deepcopy(self)


@dataclass(frozen=True, slots=True)
class DetectionRecord:
    """Outcome of one event.

    ``detector`` is the label of the firing detector, or None when the
    messenger ended in a sink. ``eom`` is the EOM voltage choice (1 = on).
    """

    detector: int | None
    eom: int
    setting: float
    degenerate: bool = False
    path: tuple[tuple[str, int, int], ...] | None = None

    @property
    def exceptional(self) -> bool:
        return self.detector is None


@dataclass
class DataSet:
    records: list[DetectionRecord]
    setting: float
    eom_mode: str

    def __len__(self) -> int:
        return len(self.records)

    def tally(self, warmup: int = 0, eom: int | None = None) -> Counter:
        """Counts of ``0``, ``1`` and ``"exceptional"`` after dropping ``warmup`` events."""
        counts: Counter = Counter({0: 0, 1: 0, "exceptional": 0})
        for rec in self.records[warmup:]:
            if eom is not None and rec.eom != eom:
                continue
            counts["exceptional" if rec.detector is None else rec.detector] += 1
        return counts


def route_one_event(net: Network, eom_mode: str, rng: RandomStream,
                    log_path: bool = False) -> DetectionRecord:
    """Send one messenger from the source to a terminal node.

    In ``random`` mode the EOM choice is drawn from ``rng`` right after the
    messenger leaves the first beam splitter it meets, and before it can
    reach any EOM.
    """
    if eom_mode not in EOM_MODES:
        raise ValueError(f"eom mode must be one of {EOM_MODES}, got {eom_mode!r}")
    if net._in_flight:
        raise NetworkError("a messenger is already in flight")
    if not net._has_eom:
        choice = 0
    elif eom_mode == "random":
        choice = None
    else:
        choice = 1 if eom_mode == "closed" else 0

    nodes, edges = net.nodes, net.edges
    if net._src_msg is None:
        net._src_msg = nodes[net.source].emit()
    msg = net._src_msg
    path = [] if log_path else None
    degenerate = False
    nid, out_ch = net.source, 0
    net._in_flight = True
    net.emitted += 1
    try:
        while True:
            try:
                nid, in_ch = edges[(nid, out_ch)]
            except KeyError:
                raise NetworkError(f"no edge from output {out_ch} of {nid!r}") from None
            node = nodes[nid]
            if isinstance(node, Pbs):
                node.arrivals[in_ch] += 1
                _, outcome = pbs_process(node.state, in_ch, msg, node.stream)
                out_ch, msg = outcome.channel, outcome.message
                if outcome.degenerate:
                    node.n_degenerate += 1
                    degenerate = True
                if choice is None:
                    choice = 1 if rng.next_uniform() < 0.5 else 0
            elif isinstance(node, Hwp):
                msg, out_ch = hwp_apply(msg, node.theta), 0
            elif isinstance(node, PhaseShift):
                msg, out_ch = phase_shift_apply(msg, node.phi), 0
            elif isinstance(node, Eom):
                if choice is None:
                    choice = 1 if rng.next_uniform() < 0.5 else 0
                node.voltage_on = bool(choice)
                msg, out_ch = eom_apply(msg, node.voltage_on), 0
            elif isinstance(node, Detector):
                if path is not None:
                    path.append((nid, in_ch, -1))
                return DetectionRecord(node.label, choice or 0, net.setting, degenerate,
                                       tuple(path) if path is not None else None)
            elif isinstance(node, Sink):
                node.count += 1
                if path is not None:
                    path.append((nid, in_ch, -1))
                return DetectionRecord(None, choice or 0, net.setting, degenerate,
                                       tuple(path) if path is not None else None)
            else:
                raise NetworkError(f"cannot route through {type(node).__name__} {nid!r}")
            if path is not None:
                path.append((nid, in_ch, out_ch))
    finally:
        net._in_flight = False


def run_events(net: Network, n_events: int, eom_mode: str, rng: RandomStream,
               log_paths: bool = False) -> DataSet:
    """Route ``n_events`` messengers in sequence; learning machines keep their state."""
    if n_events < 1:
        raise ValueError(f"number of events must be >= 1, got {n_events}")
    records = [route_one_event(net, eom_mode, rng, log_paths) for _ in range(n_events)]
    return DataSet(records, net.setting, eom_mode)


def _pbs_node(node_id: str, alpha: float, rng: RandomStream, cls=Pbs) -> Pbs:
    return cls(dlm_init(alpha, rng.split(f"init:{node_id}")), rng.split(node_id))


def build_malus_network(alpha: float, rng: RandomStream, theta: float = 0.0) -> Network:
    """Source -> PBS input 0; PBS outputs 0/1 -> detectors D0/D1.

    ``theta`` is the source polarization angle in radians.
    """
    alpha = check_alpha(alpha)
    nodes: dict[str, Node] = {
        "source": Source(0.0, 0.0, theta),
        "pbs": _pbs_node("pbs", alpha, rng),
        "d0": Detector(0),
        "d1": Detector(1),
    }
    edges = {
        ("source", 0): ("pbs", 0),
        ("pbs", 0): ("d0", 0),
        ("pbs", 1): ("d1", 0),
    }
    return Network(nodes, edges, "source", control=("source", "xi"), name="malus")


def build_wheeler_network(alpha: float, rng: RandomStream, phi: float = 0.0) -> Network:
    """Mach-Zehnder interferometer with a switchable output beam splitter.

    The 45-degree source feeds ``pbs_in``. Arm 0 carries the phase shift ``phi``;
    each arm has a HWP at pi/4 before ``pbs_out``. Output 1 of ``pbs_out`` goes
    through the EOM into a Wollaston prism and detectors D0/D1; output 0 is a
    sink for exceptional events.
    """
    alpha = check_alpha(alpha)
    nodes: dict[str, Node] = {
        "source": Source(0.0, 0.0, math.pi / 4),
        "pbs_in": _pbs_node("pbs_in", alpha, rng),
        "phase": PhaseShift(phi),
        "hwp0": Hwp(math.pi / 4),
        "hwp1": Hwp(math.pi / 4),
        "pbs_out": _pbs_node("pbs_out", alpha, rng),
        "eom": Eom(),
        "wollaston": _pbs_node("wollaston", alpha, rng, Wollaston),
        "d0": Detector(0),
        "d1": Detector(1),
        "exceptional": Sink(),
    }
    edges = {
        ("source", 0): ("pbs_in", 0),
        ("pbs_in", 0): ("phase", 0),
        ("phase", 0): ("hwp0", 0),
        ("hwp0", 0): ("pbs_out", 0),
        ("pbs_in", 1): ("hwp1", 0),
        ("hwp1", 0): ("pbs_out", 1),
        ("pbs_out", 1): ("eom", 0),
        ("pbs_out", 0): ("exceptional", 0),
        ("eom", 0): ("wollaston", 0),
        ("wollaston", 0): ("d0", 0),
        ("wollaston", 1): ("d1", 0),
    }
    return Network(nodes, edges, "source", control=("phase", "phi"), name="wheeler")
