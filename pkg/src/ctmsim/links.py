"""Unconscious point-to-point channels between processors, with habituation.

The kernel watches the broadcast stream for question/answer patterns:
a broadcast what-if query from one processor answered by a later broadcast
evaluation from another. Each completed pattern bumps a counter for that
(src, dst, kind) edge; at the habituation threshold the edge forms, a
link-formed event is recorded, and the asker starts sending that kind of
query down the link instead of submitting it to the competition. Link
traffic never touches the stage: no win, no broadcast, no reception.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chunks import WHAT_IF, Chunk, Commit, Evaluation, Gist, Query, gist_kind

# Query kinds that migrate onto links once practiced. Only the what-if loop
# habituates here; the opening which-move query must stay conscious or no
# deliberation would be visible at all.
HABITUABLE_KINDS = (WHAT_IF,)


class LinkError(ValueError):
    """Sending on an edge that has not formed."""


@dataclass
class _OpenQuestion:
    asker: int
    option: int


@dataclass
class LinkGraph:
    """Directed (src, dst, gist kind) edges with repetition counters."""

    threshold: int = 3
    counters: dict[tuple[int, int, str], int] = field(default_factory=dict)
    formed: set[tuple[int, int, str]] = field(default_factory=set)
    _outbox: list[tuple[int, int, Gist]] = field(default_factory=list)
    _open_questions: list[_OpenQuestion] = field(default_factory=list)

    def record_pattern(self, src: int, dst: int, kind: str) -> bool:
        """Count one completed conscious pattern; True when the edge just formed."""
        key = (src, dst, kind)
        if key in self.formed:
            return False
        self.counters[key] = self.counters.get(key, 0) + 1
        if self.counters[key] >= self.threshold:
            self.formed.add(key)
            return True
        return False

    def is_formed(self, src: int, dst: int, kind: str) -> bool:
        return (src, dst, kind) in self.formed

    def formed_from(self, src: int) -> set[tuple[int, str]]:
        """Outgoing formed edges for one processor, as (dst, kind)."""
        return {(d, k) for (s, d, k) in self.formed if s == src}

    def send(self, src: int, dst: int, gist: Gist) -> None:
        """Enqueue a message on a formed edge for delivery next tick."""
        if not self.is_formed(src, dst, gist_kind_for_link(gist)):
            raise LinkError(f"no formed link {src}->{dst} for {gist!r}")
        self._outbox.append((src, dst, gist))

    def drain_outbox(self) -> list[tuple[int, int, Gist]]:
        """Messages sent last tick, in send order; delivered this tick."""
        pending, self._outbox = self._outbox, []
        return pending

    def observe_broadcast(self, chunk: Chunk) -> list[tuple[int, int, str]]:
        """Update pattern counters from one conscious broadcast.

        Returns the edges that formed as a result. A what-if query opens a
        question; the first later evaluation of the same option answers it.
        A commit or a fresh which-move query closes the deliberation and
        clears unanswered questions.
        """
        gist = chunk.gist
        formed_now: list[tuple[int, int, str]] = []
        if isinstance(gist, Query):
            if gist.query == WHAT_IF and len(gist.options) == 1:
                self._open_questions.append(_OpenQuestion(chunk.origin, gist.options[0]))
            elif gist.query != WHAT_IF:
                self._open_questions.clear()
        elif isinstance(gist, Evaluation):
            for i, q in enumerate(self._open_questions):
                if q.option == gist.option:
                    del self._open_questions[i]
                    if self.record_pattern(q.asker, chunk.origin, WHAT_IF):
                        formed_now.append((q.asker, chunk.origin, WHAT_IF))
                    break
        elif isinstance(gist, Commit):
            self._open_questions.clear()
        return formed_now


def gist_kind_for_link(gist: Gist) -> str:
    """The habituation kind a link message falls under."""
    if isinstance(gist, Query):
        return gist.query
    return gist_kind(gist)
