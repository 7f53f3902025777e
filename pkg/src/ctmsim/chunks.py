"""Chunks and gists: the unit of information that competes for the stage.

A chunk is (origin processor, creation tick, gist, weight). Gists are a
small tagged union; weights are fixed-point micro-units (1 unit = 10^6
micro) or the special infinite weight that only non-standard processors
may emit. Everything serializes to stable, float-free JSON so traces are
byte-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

# Query kinds.
WHICH_MOVE = "which-move"
WHAT_IF = "what-if"
WHY = "why"
QUERY_KINDS = (WHICH_MOVE, WHAT_IF, WHY)

# Serialized gist size cap in bytes: a chunk carries a *small* amount of information.
G_MAX = 256

# |finite weight| cap: 10^6 whole units expressed in micro-units.
W_MAX_MICRO = 10**12


@dataclass(frozen=True)
class Query:
    query: str            # one of QUERY_KINDS
    options: tuple[int, ...]


@dataclass(frozen=True)
class Suggestion:
    option: int
    note: str             # short heuristic token, e.g. "center"


@dataclass(frozen=True)
class Evaluation:
    option: int
    value: int            # utility in micro-units, mover's perspective


@dataclass(frozen=True)
class Commit:
    option: int


@dataclass(frozen=True)
class Comment:
    tag: str


@dataclass(frozen=True)
class Seizure:
    option: int           # the forbidden option being blocked


Gist = Query | Suggestion | Evaluation | Commit | Comment | Seizure

_GIST_KIND = {
    Query: "query",
    Suggestion: "suggestion",
    Evaluation: "evaluation",
    Commit: "commit",
    Comment: "comment",
    Seizure: "seizure",
}


def gist_kind(g: Gist) -> str:
    return _GIST_KIND[type(g)]


def gist_to_obj(g: Gist) -> dict:
    if isinstance(g, Query):
        return {"kind": "query", "query": g.query, "options": list(g.options)}
    if isinstance(g, Suggestion):
        return {"kind": "suggestion", "option": g.option, "note": g.note}
    if isinstance(g, Evaluation):
        return {"kind": "evaluation", "option": g.option, "value": g.value}
    if isinstance(g, Commit):
        return {"kind": "commit", "option": g.option}
    if isinstance(g, Comment):
        return {"kind": "comment", "tag": g.tag}
    if isinstance(g, Seizure):
        return {"kind": "seizure", "option": g.option}
    raise TypeError(f"not a gist: {g!r}")


def gist_from_obj(obj: dict) -> Gist:
    kind = obj["kind"]
    if kind == "query":
        return Query(obj["query"], tuple(obj["options"]))
    if kind == "suggestion":
        return Suggestion(obj["option"], obj["note"])
    if kind == "evaluation":
        return Evaluation(obj["option"], obj["value"])
    if kind == "commit":
        return Commit(obj["option"])
    if kind == "comment":
        return Comment(obj["tag"])
    if kind == "seizure":
        return Seizure(obj["option"])
    raise ValueError(f"unknown gist kind: {kind!r}")


def gist_size(g: Gist) -> int:
    """Serialized size in bytes, checked against G_MAX at submission time."""
    return len(json.dumps(gist_to_obj(g), separators=(",", ":")))


@dataclass(frozen=True)
class Weight:
    """Competition weight: finite micro-units or infinite.

    Infinite weight is the lever of a non-standard processor; the kernel
    rejects it from standard ones. Total order lives in competition.compare.
    """

    micro: int = 0
    infinite: bool = False

    @staticmethod
    def finite(micro: int) -> "Weight":
        if abs(micro) > W_MAX_MICRO:
            raise ValueError(f"finite weight beyond cap: {micro}")
        return Weight(micro=micro)

    @staticmethod
    def inf() -> "Weight":
        return Weight(infinite=True)

    def to_obj(self) -> int | str:
        return "inf" if self.infinite else self.micro

    @staticmethod
    def from_obj(obj: int | str) -> "Weight":
        if obj == "inf":
            return Weight.inf()
        if isinstance(obj, int):
            return Weight.finite(obj)
        raise ValueError(f"bad weight: {obj!r}")


@dataclass(frozen=True)
class Chunk:
    origin: int           # submitting processor id
    tick: int             # creation tick
    gist: Gist
    weight: Weight

    def to_obj(self) -> dict:
        return {
            "origin": self.origin,
            "tick": self.tick,
            "gist": gist_to_obj(self.gist),
            "weight": self.weight.to_obj(),
        }

    @staticmethod
    def from_obj(obj: dict) -> "Chunk":
        return Chunk(
            origin=obj["origin"],
            tick=obj["tick"],
            gist=gist_from_obj(obj["gist"]),
            weight=Weight.from_obj(obj["weight"]),
        )
