"""The event trace: the simulator's ground truth, serialized as JSON Lines.

One event per line, first line is the effective config echo. Field order
is fixed and nothing is a float, so identical configs produce byte-identical
files; replay verification depends on that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .chunks import Chunk, Gist, gist_from_obj, gist_to_obj


@dataclass(frozen=True)
class Submission:
    t: int
    chunk: Chunk


@dataclass(frozen=True)
class Win:
    t: int
    chunk: Chunk
    competitors: int


@dataclass(frozen=True)
class Broadcast:
    t: int
    chunk: Chunk


@dataclass(frozen=True)
class Reception:
    t: int
    proc: int
    chunk: Chunk


@dataclass(frozen=True)
class LinkSend:
    t: int
    src: int
    dst: int
    gist: Gist


@dataclass(frozen=True)
class LinkDeliver:
    t: int
    src: int
    dst: int
    gist: Gist


@dataclass(frozen=True)
class LinkFormed:
    t: int
    src: int
    dst: int
    kind: str


@dataclass(frozen=True)
class WorldAction:
    t: int
    option: int


@dataclass(frozen=True)
class Halt:
    t: int
    reason: str


Event = (
    Submission | Win | Broadcast | Reception
    | LinkSend | LinkDeliver | LinkFormed | WorldAction | Halt
)

EVENT_TAG = {
    Submission: "submission",
    Win: "win",
    Broadcast: "broadcast",
    Reception: "reception",
    LinkSend: "link_send",
    LinkDeliver: "link_deliver",
    LinkFormed: "link_formed",
    WorldAction: "world_action",
    Halt: "halt",
}

# Intra-tick ordering: phase rank, then processor id where applicable.
# A: receptions and link deliveries, then the halt check; B: submissions and
# link sends per processor; C: the win; D: broadcast, any link formations it
# causes, then the world action.
PHASE_RANK = {
    "reception": 0,
    "link_deliver": 1,
    "halt": 2,
    "submission": 3,
    "link_send": 3,
    "win": 4,
    "broadcast": 5,
    "link_formed": 6,
    "world_action": 7,
}


def event_tag(ev: Event) -> str:
    return EVENT_TAG[type(ev)]


def event_to_obj(ev: Event) -> dict:
    if isinstance(ev, Submission):
        return {"t": ev.t, "ev": "submission", "chunk": ev.chunk.to_obj()}
    if isinstance(ev, Win):
        return {"t": ev.t, "ev": "win", "chunk": ev.chunk.to_obj(), "competitors": ev.competitors}
    if isinstance(ev, Broadcast):
        return {"t": ev.t, "ev": "broadcast", "chunk": ev.chunk.to_obj()}
    if isinstance(ev, Reception):
        return {"t": ev.t, "ev": "reception", "proc": ev.proc, "chunk": ev.chunk.to_obj()}
    if isinstance(ev, LinkSend):
        return {"t": ev.t, "ev": "link_send", "src": ev.src, "dst": ev.dst, "gist": gist_to_obj(ev.gist)}
    if isinstance(ev, LinkDeliver):
        return {"t": ev.t, "ev": "link_deliver", "src": ev.src, "dst": ev.dst, "gist": gist_to_obj(ev.gist)}
    if isinstance(ev, LinkFormed):
        return {"t": ev.t, "ev": "link_formed", "src": ev.src, "dst": ev.dst, "kind": ev.kind}
    if isinstance(ev, WorldAction):
        return {"t": ev.t, "ev": "world_action", "option": ev.option}
    if isinstance(ev, Halt):
        return {"t": ev.t, "ev": "halt", "reason": ev.reason}
    raise TypeError(f"not an event: {ev!r}")


def event_from_obj(obj: dict) -> Event:
    tag = obj["ev"]
    t = obj["t"]
    if tag == "submission":
        return Submission(t, Chunk.from_obj(obj["chunk"]))
    if tag == "win":
        return Win(t, Chunk.from_obj(obj["chunk"]), obj["competitors"])
    if tag == "broadcast":
        return Broadcast(t, Chunk.from_obj(obj["chunk"]))
    if tag == "reception":
        return Reception(t, obj["proc"], Chunk.from_obj(obj["chunk"]))
    if tag == "link_send":
        return LinkSend(t, obj["src"], obj["dst"], gist_from_obj(obj["gist"]))
    if tag == "link_deliver":
        return LinkDeliver(t, obj["src"], obj["dst"], gist_from_obj(obj["gist"]))
    if tag == "link_formed":
        return LinkFormed(t, obj["src"], obj["dst"], obj["kind"])
    if tag == "world_action":
        return WorldAction(t, obj["option"])
    if tag == "halt":
        return Halt(t, obj["reason"])
    raise ValueError(f"unknown event tag: {tag!r}")


def _dumps(obj: dict) -> str:
    # Compact separators and preserved insertion order: the byte contract.
    return json.dumps(obj, separators=(",", ":"))


@dataclass
class Trace:
    """Config echo plus the totally ordered event list."""

    config: dict
    events: list[Event]

    def to_jsonl(self) -> str:
        lines = [_dumps(self.config)]
        lines.extend(_dumps(event_to_obj(ev)) for ev in self.events)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_jsonl(text: str) -> "Trace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty trace: missing config echo line")
        config = json.loads(lines[0])
        if not isinstance(config, dict):
            raise ValueError("trace line 1 is not a config object")
        events = [event_from_obj(json.loads(ln)) for ln in lines[1:]]
        return Trace(config=config, events=events)
