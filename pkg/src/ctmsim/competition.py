"""The formal competition for admission to the short-term-memory stage.

A complete binary tournament over the processor-indexed candidate list,
padded to a power of two. Deterministic mode folds a total-order compare
up the tree (equivalent to a global argmax); prg mode picks each node's
survivor with probability proportional to clamped weight, using the
machine's seeded generator so the outcome is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chunks import Chunk
from .rng import RngState, next_below

MODE_DETERMINISTIC = "deterministic"
MODE_PRG = "prg"
MODES = (MODE_DETERMINISTIC, MODE_PRG)


@dataclass(frozen=True)
class NodeOutcome:
    """Diagnostic record of one internal node: not part of the trace."""

    level: int
    slot: int
    winner_origin: int | None
    drew_rng: bool


def compare(a: Chunk, b: Chunk) -> Chunk:
    """Total-order winner of two chunks.

    Infinite beats finite; two infinites go to the lower origin id; two
    finites go to the larger weight, ties to the lower origin id.
    """
    wa, wb = a.weight, b.weight
    if wa.infinite or wb.infinite:
        if wa.infinite and wb.infinite:
            return a if a.origin <= b.origin else b
        return a if wa.infinite else b
    if wa.micro != wb.micro:
        return a if wa.micro > wb.micro else b
    return a if a.origin <= b.origin else b


def _clamp_mass(micro: int) -> int:
    # Selection mass must be positive even for losing evaluations.
    return max(micro, 0) + 1


def compete(
    candidates: Sequence[Chunk | None],
    mode: str,
    rng: RngState,
) -> tuple[Chunk | None, RngState, list[NodeOutcome]]:
    """Run the tournament; returns (winner or None, advanced rng, node log).

    The candidate list must have exactly one slot per processor, in id
    order. Absent slots are byes. The rng advances only in prg mode, once
    per node where two finite-weight chunks meet, nodes taken in leaf
    order level by level.
    """
    if mode not in MODES:
        raise ValueError(f"unknown competition mode: {mode!r}")
    n = len(candidates)
    if n == 0:
        raise ValueError("candidate list must have one slot per processor")

    size = 1
    while size < n:
        size *= 2
    layer: list[Chunk | None] = list(candidates) + [None] * (size - n)

    outcomes: list[NodeOutcome] = []
    level = 0
    while len(layer) > 1:
        nxt: list[Chunk | None] = []
        for slot in range(0, len(layer), 2):
            left, right = layer[slot], layer[slot + 1]
            drew = False
            if left is None or right is None:
                winner = left if right is None else right
            elif mode == MODE_DETERMINISTIC:
                winner = compare(left, right)
            elif left.weight.infinite or right.weight.infinite:
                # An infinite survivor wins its node outright, no draw.
                winner = compare(left, right)
            else:
                wl = _clamp_mass(left.weight.micro)
                wr = _clamp_mass(right.weight.micro)
                u, rng = next_below(rng, wl + wr)
                winner = left if u < wl else right
                drew = True
            nxt.append(winner)
            outcomes.append(NodeOutcome(
                level=level,
                slot=slot // 2,
                winner_origin=None if winner is None else winner.origin,
                drew_rng=drew,
            ))
        layer = nxt
        level += 1
    return layer[0], rng, outcomes
