"""Self-contained splitmix64 stream used by every Monte Carlo run.

The generator identity is part of the reproducibility contract: published
tables can be replayed bit-exactly by any implementation of the same
algorithm, so the constants are spelled out here rather than delegated to a
platform RNG.

* ``mix64`` is the splitmix64 output finalizer (xor-shift-multiply with
  constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).
* A :class:`SplitMix64` stream seeded with ``s`` emits
  ``mix64(s + (j+1) * 0x9E3779B97F4A7C15)`` as its j-th 64-bit word.
* ``u = (word >> 11) / 2**53`` is the uniform variate; its 53 bits make the
  exact-threshold comparisons in :mod:`wfuse.fusion_model` unambiguous.
* Run ``i`` of a batch with master seed ``s`` uses an independent stream
  seeded with ``mix64(s + i)``, so batches are order- and
  parallelism-independent.
"""

from __future__ import annotations

__all__ = ["MASK64", "mix64", "SplitMix64", "stream_for_run"]

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

_INV_2_53 = 2.0 ** -53


def mix64(x: int) -> int:
    """64-bit xor-shift-multiply finalizer (the splitmix64 mixer)."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _MIX_A) & MASK64
    x ^= x >> 27
    x = (x * _MIX_B) & MASK64
    x ^= x >> 31
    return x


class SplitMix64:
    """Minimal splitmix64 stream with a stdlib-``random``-style ``random()``."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next64(self) -> int:
        """Next raw 64-bit word."""
        self._state = (self._state + _GOLDEN) & MASK64
        return mix64(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits (an exact dyadic)."""
        return (self.next64() >> 11) * _INV_2_53

    def spawn(self, key: int) -> "SplitMix64":
        """Derived independent stream; used for nested substreams."""
        return SplitMix64(mix64((self._state ^ key) & MASK64))


def stream_for_run(master_seed: int, run_index: int) -> SplitMix64:
    """The per-run stream contract: seed ``mix64(master_seed + run_index)``."""
    return SplitMix64(mix64((master_seed + run_index) & MASK64))
