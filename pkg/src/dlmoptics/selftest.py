"""Oracle-equivalence and invariant checks runnable without pytest."""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .core import UnitPair, message_from_angles
from .dlm import DlmState, dlm_update
from .oracle import PBS_MATRIX, oracle_wheeler
from .pbs import pbs_select_and_emit, pbs_transform, transform_as_complex
from .rng import RandomStream


class CheckResult(NamedTuple):
    name: str
    ok: bool
    detail: str


def random_state(gen: np.random.Generator, alpha: float = 0.99) -> DlmState:
    ang = gen.uniform(0.0, 2 * math.pi, size=6)
    regs = [UnitPair(math.cos(a), math.sin(a)) for a in ang]
    r = float(gen.uniform())
    return DlmState(yH=regs[0:2], yV=regs[2:4], yP=regs[4:6], x=[r, 1.0 - r], alpha=alpha)


def input_amplitudes(state: DlmState) -> np.ndarray:
    """(aH0, aV0, aH1, aV1) encoded by the registers and internal vector."""
    out = []
    for k in (0, 1):
        h, v, p = state.yH[k], state.yV[k], state.yP[k]
        sq = math.sqrt(state.x[k])
        out += [complex(h.c, h.s) * p.c * sq, complex(v.c, v.s) * p.s * sq]
    return np.array(out)


def check_transform_matches_matrix(n_states: int = 10_000, seed: int = 1) -> CheckResult:
    gen = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_states):
        st = random_state(gen)
        expected = PBS_MATRIX @ input_amplitudes(st)
        got = np.array(transform_as_complex(pbs_transform(st)))
        worst = max(worst, float(np.max(np.abs(got - expected))))
    return CheckResult("transform == PBS matrix", worst <= 1e-12, f"max error {worst:.2e}")


def check_wheeler_oracle() -> CheckResult:
    worst = 0.0
    for deg in range(361):
        phi = math.radians(deg)
        worst = max(worst, abs(oracle_wheeler(phi, "closed") - math.cos(phi / 2) ** 2),
                    abs(oracle_wheeler(phi, "open") - 0.5))
    return CheckResult("wheeler oracle closed form", worst <= 1e-12, f"max error {worst:.2e}")


def check_dlm_invariants(n_sequences: int = 2000, max_len: int = 8, seed: int = 2) -> CheckResult:
    """Simplex preservation and exact agreement with the unrolled recurrence."""
    gen = np.random.default_rng(seed)
    msg = message_from_angles(0.0, 0.0, 0.0)
    bad = 0
    for _ in range(n_sequences):
        st = random_state(gen, alpha=float(gen.uniform(0.01, 0.999)))
        a = st.alpha
        x1_0 = st.x[1]
        ks = gen.integers(0, 2, size=int(gen.integers(1, max_len + 1)))
        for k in ks:
            dlm_update(st, int(k), msg)
            if abs(st.x[0] + st.x[1] - 1.0) > 1e-12 or min(st.x) < 0.0:
                bad += 1
        n = len(ks)
        x1 = a ** n * x1_0 + (1 - a) * sum(a ** (n - 1 - j) for j, k in enumerate(ks) if k == 1)
        if abs(st.x[1] - x1) > 1e-12:
            bad += 1
    return CheckResult("learning machine invariants", bad == 0, f"{bad} violations")


def check_output_frequencies(n_states: int = 10, n_draws: int = 20_000,
                             seed: int = 3) -> CheckResult:
    gen = np.random.default_rng(seed)
    stream = RandomStream(seed)
    worst = 0.0
    for _ in range(n_states):
        t = pbs_transform(random_state(gen))
        p = t[0] ** 2 + t[1] ** 2
        hits = sum(pbs_select_and_emit(t, stream.next_uniform()).channel == 0
                   for _ in range(n_draws))
        sigma = math.sqrt(max(p * (1 - p), 1e-300) / n_draws)
        worst = max(worst, abs(hits / n_draws - p) / sigma if p * (1 - p) > 0 else
                    (0.0 if hits / n_draws == p else math.inf))
    return CheckResult("output stage frequencies", worst <= 3.0, f"worst deviation {worst:.2f} sigma")


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_transform_matches_matrix,
    check_wheeler_oracle,
    check_dlm_invariants,
    check_output_frequencies,
)


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
