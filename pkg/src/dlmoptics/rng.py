"""Seedable uniform streams for the event loop.

Two modes are available:

``pseudo``
    Counter-based SplitMix64. The n-th draw (n = 1, 2, ...) of a stream with
    64-bit seed ``s`` is ``mix(s + n * 0x9E3779B97F4A7C15 mod 2**64) >> 11``
    scaled by ``2**-53``, where ``mix`` is::

        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        z = z ^ (z >> 31)

    with all products taken mod 2**64. These constants fully determine the
    stream, so sequences are portable across implementations.

``systematic``
    The additive sequence ``frac((offset + n) * gamma)`` with
    ``gamma = (sqrt(5) - 1) / 2``. A root stream has ``offset = 0``.

Child streams are derived with :meth:`RandomStream.split`. The label is hashed
with SHA-256 (first 8 bytes, big-endian) and the child seed is
``mix(seed ^ hash)``; a systematic child uses ``offset = child_seed % 2**20``.
"""
from __future__ import annotations

import hashlib
import math

import numpy as np

GOLDEN64 = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1
GAMMA = (math.sqrt(5.0) - 1.0) / 2.0

MODES = ("pseudo", "systematic")

_BLOCK = 2048
_OFFSET_RANGE = 1 << 20


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def _label_hash(label: str) -> int:
    digest = hashlib.sha256(str(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def parse_seed(text: str | int) -> int:
    """Accept a seed as int, decimal string or ``0x``-prefixed hex string."""
    if isinstance(text, int):
        return text & MASK64
    return int(str(text).strip(), 0) & MASK64


class RandomStream:
    """A deterministic stream of uniform numbers in [0, 1).

    Draws are produced in blocks internally; the observable sequence only
    depends on ``(seed, mode, offset)``.
    """

    __slots__ = ("seed", "mode", "offset", "count", "_buf", "_pos")

    def __init__(self, seed: int = 0, mode: str = "pseudo", offset: int = 0):
        if mode not in MODES:
            raise ValueError(f"unknown rng mode {mode!r}; expected one of {MODES}")
        self.seed = int(seed) & MASK64
        self.mode = mode
        self.offset = int(offset)
        self.count = 0
        self._buf: list[float] = []
        self._pos = 0

    def __repr__(self) -> str:
        return (f"RandomStream(seed={self.seed:#x}, mode={self.mode!r}, "
                f"offset={self.offset}, count={self.count})")

    def _refill(self) -> None:
        start = self.count + 1
        n = np.arange(start, start + _BLOCK, dtype=np.uint64)
        if self.mode == "pseudo":
            with np.errstate(over="ignore"):
                z = np.uint64(self.seed) + n * np.uint64(GOLDEN64)
                z = _mix64_array(z)
            vals = (z >> np.uint64(11)).astype(np.float64) * 2.0 ** -53
        else:
            k = n.astype(np.float64) + float(self.offset)
            vals = np.mod(k * GAMMA, 1.0)
        self._buf = vals.tolist()
        self._pos = 0

    def next_uniform(self) -> float:
        if self._pos >= len(self._buf):
            self._refill()
        v = self._buf[self._pos]
        self._pos += 1
        self.count += 1
        return v

    __call__ = next_uniform

    def split(self, label: str) -> "RandomStream":
        """Derive an independent child stream keyed by ``label``.

        The child depends only on this stream's seed, mode and the label, never
        on how many values have been drawn.
        """
        child_seed = mix64(self.seed ^ _label_hash(label))
        offset = child_seed % _OFFSET_RANGE if self.mode == "systematic" else 0
        return RandomStream(child_seed, self.mode, offset)


def next_uniform(stream: RandomStream) -> float:
    return stream.next_uniform()


def split(stream: RandomStream, label: str) -> RandomStream:
    return stream.split(label)
