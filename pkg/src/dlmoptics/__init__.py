"""Event-by-event simulation of single-photon optics with adaptive beam splitters."""
from .core import (AmplitudePair, Message, UnitPair, amplitudes_to_message,
                   message_from_angles, message_to_amplitudes)
from .dlm import DlmState, dlm_init, dlm_update
from .network import (DataSet, DetectionRecord, Network, build_malus_network,
                      build_wheeler_network, route_one_event, run_events)
from .oracle import oracle_malus, oracle_wheeler
from .pbs import PbsOutcome, pbs_process, pbs_select_and_emit, pbs_transform
from .rng import RandomStream

__version__ = "0.1.0"
