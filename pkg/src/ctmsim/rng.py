"""Seeded deterministic pseudorandom generator with value semantics.

Every draw the machine ever makes comes from here, which is what turns a
probabilistic machine into a deterministic one: same seed, same lifetime,
same trace. The generator is a 64-bit additive-sequence mixer (splitmix
style) chosen for bit-exact portability; it is not cryptographic and does
not need to be.
"""

from __future__ import annotations

from dataclasses import dataclass

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


@dataclass(frozen=True)
class RngState:
    """Immutable generator state: a single 64-bit word."""

    state: int

    def __post_init__(self) -> None:
        if not 0 <= self.state <= MASK64:
            raise ValueError(f"rng state out of 64-bit range: {self.state}")


def seed_rng(seed: int) -> RngState:
    """Build a state whose internal word equals the seed. Any 64-bit value is legal."""
    return RngState(seed)


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & MASK64
    return z ^ (z >> 31)


def next_u64(s: RngState) -> tuple[int, RngState]:
    """Advance by the odd constant and return the mixed word. Pure: no hidden state."""
    word = (s.state + _GAMMA) & MASK64
    return _mix(word), RngState(word)


def next_below(s: RngState, n: int) -> tuple[int, RngState]:
    """Uniform integer in [0, n) by rejection sampling (no modulo bias).

    Draws 64-bit values, rejecting those at or above the largest multiple
    of n that fits in 64 bits; the state advances once per draw.
    """
    if n < 1:
        raise ValueError(f"next_below requires n >= 1, got {n}")
    limit = ((1 << 64) // n) * n
    while True:
        value, s = next_u64(s)
        if value < limit:
            return value % n, s


def fork_stream(s: RngState, label: int) -> RngState:
    """Derive an independent child stream from a parent state and a 64-bit label.

    Distinct labels give distinct streams with overwhelming probability;
    forking never consumes draws from the parent.
    """
    value, _ = next_u64(seed_rng((s.state ^ label) & MASK64))
    return seed_rng(value)
