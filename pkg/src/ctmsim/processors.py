"""The long-term-memory processor roster.

Each processor is an isolated state machine: it sees only the broadcasts
and link messages delivered to it, a read-only view of the bound world,
and its own forked random stream. The built-in kinds together enact one
deliberation: the world model notices a choice and asks which move to
make; inner speech walks the options aloud ("if I do this, then what?");
the proposer floats hunches; the evaluator answers with exact utilities;
the decider commits to the best answer it has heard; and the optional
external operator vetoes forbidden choices with infinite-weight seizures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chunks import (
    WHAT_IF,
    WHICH_MOVE,
    Chunk,
    Commit,
    Evaluation,
    Gist,
    Query,
    Seizure,
    Suggestion,
    Weight,
)
from .rng import RngState

KIND_MODEL_OF_THE_WORLD = "model_of_the_world"
KIND_INNER_SPEECH = "inner_speech"
KIND_MOVE_PROPOSER = "move_proposer"
KIND_CONSEQUENCE_EVALUATOR = "consequence_evaluator"
KIND_DECIDER = "decider"
KIND_EXTERNAL_OPERATOR = "external_operator"

PROCESSOR_KINDS = (
    KIND_MODEL_OF_THE_WORLD,
    KIND_INNER_SPEECH,
    KIND_MOVE_PROPOSER,
    KIND_CONSEQUENCE_EVALUATOR,
    KIND_DECIDER,
    KIND_EXTERNAL_OPERATOR,
)

# Default competition weights in micro-units. Chosen so a deliberation
# unfolds over several ticks: commit > which-move > what-if > evaluation >
# suggestions. All overridable per processor in config.
DEFAULT_QUERY_WEIGHT = 800_000
DEFAULT_WHAT_IF_WEIGHT = 700_000
DEFAULT_EVAL_WEIGHT = 600_000
DEFAULT_COMMIT_WEIGHT = 900_000
DEFAULT_SUGGESTION_WEIGHT = 100_000
DEFAULT_DECIDER_DEADLINE = 20


def decide(ledger: dict[int, int]) -> int:
    """Argmax option of a non-empty utility ledger; ties to the smallest id."""
    if not ledger:
        raise ValueError("decide requires a non-empty ledger")
    return min(ledger, key=lambda opt: (-ledger[opt], opt))


@dataclass(frozen=True)
class ProcessorSpec:
    id: int
    kind: str
    standard: bool
    params: dict

    def to_obj(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "standard": self.standard,
            "params": self.params,
        }


@dataclass
class StepContext:
    """What a processor may see during its step: the clock, the world, and
    its own formed outgoing links."""

    tick: int
    world: object                      # worlds.World binding, read-only by convention
    links_from: set[tuple[int, str]]   # formed (dst, kind) edges for this processor


@dataclass
class StepOutput:
    submission: Chunk | None = None
    link_sends: list[tuple[int, Gist]] = field(default_factory=list)


class Processor:
    """Base: private memory only, plus the spec and a forked rng stream."""

    def __init__(self, spec: ProcessorSpec, rng: RngState):
        self.spec = spec
        self.rng = rng

    @property
    def id(self) -> int:
        return self.spec.id

    def on_reception(self, chunk: Chunk) -> None:
        """Pay conscious attention to the previous tick's broadcast."""

    def on_link_message(self, src: int, gist: Gist) -> None:
        """Receive unconscious chatter from a formed link."""

    def step(self, ctx: StepContext) -> StepOutput:
        """Phase-B turn: at most one submission plus any link sends."""
        return StepOutput()

    def _chunk(self, tick: int, gist: Gist, weight: Weight) -> Chunk:
        return Chunk(origin=self.id, tick=tick, gist=gist, weight=weight)


class ModelOfTheWorld(Processor):
    """Notices when the bound world offers a real choice and raises the
    which-move question; goes quiet while a deliberation is open."""

    def __init__(self, spec: ProcessorSpec, rng: RngState):
        super().__init__(spec, rng)
        self.query_weight: int = spec.params["query_weight"]
        self.episode_open = False

    def on_reception(self, chunk: Chunk) -> None:
        gist = chunk.gist
        if isinstance(gist, Query) and gist.query == WHICH_MOVE:
            self.episode_open = True
        elif isinstance(gist, Commit):
            self.episode_open = False

    def step(self, ctx: StepContext) -> StepOutput:
        if self.episode_open:
            return StepOutput()
        options = ctx.world.legal_options()
        if len(options) < 2:
            return StepOutput()
        gist = Query(WHICH_MOVE, tuple(options))
        return StepOutput(submission=self._chunk(ctx.tick, gist, Weight.finite(self.query_weight)))


class InnerSpeech(Processor):
    """Narrates the deliberation one option at a time: a what-if query per
    option that has not yet been asked about or evaluated. Once a what-if
    link has formed, the narration moves off the stage onto the link."""

    def __init__(self, spec: ProcessorSpec, rng: RngState):
        super().__init__(spec, rng)
        self.what_if_weight: int = spec.params["what_if_weight"]
        self.options: tuple[int, ...] | None = None
        self.asked: set[int] = set()
        self.evaluated: set[int] = set()

    def on_reception(self, chunk: Chunk) -> None:
        gist = chunk.gist
        if isinstance(gist, Query) and gist.query == WHICH_MOVE:
            self.options = gist.options
            self.asked = set()
            self.evaluated = set()
        elif isinstance(gist, Evaluation):
            self.evaluated.add(gist.option)
        elif isinstance(gist, Commit):
            self.options = None

    def step(self, ctx: StepContext) -> StepOutput:
        if self.options is None:
            return StepOutput()
        pending = [o for o in self.options if o not in self.asked and o not in self.evaluated]
        if not pending:
            return StepOutput()
        opt = min(pending)
        self.asked.add(opt)
        gist = Query(WHAT_IF, (opt,))
        link_dsts = sorted(dst for (dst, kind) in ctx.links_from if kind == WHAT_IF)
        if link_dsts:
            return StepOutput(link_sends=[(dst, gist) for dst in link_dsts])
        return StepOutput(submission=self._chunk(ctx.tick, gist, Weight.finite(self.what_if_weight)))


class MoveProposer(Processor):
    """Floats one heuristic suggestion per tick from its weight table while a
    deliberation is open; these almost always lose the competition, which is
    the point: submitted but never broadcast, they are the machine's
    unconscious chatter."""

    def __init__(self, spec: ProcessorSpec, rng: RngState):
        super().__init__(spec, rng)
        self.table: dict[int, tuple[int, str]] = {
            int(opt): (entry["weight"], entry["note"])
            for opt, entry in spec.params["table"].items()
        }
        self.default_weight: int = spec.params["default_weight"]
        self.options: tuple[int, ...] | None = None
        self.proposed: set[int] = set()

    def on_reception(self, chunk: Chunk) -> None:
        gist = chunk.gist
        if isinstance(gist, Query) and gist.query == WHICH_MOVE:
            self.options = gist.options
            self.proposed = set()
        elif isinstance(gist, Commit):
            self.options = None

    def _entry(self, opt: int) -> tuple[int, str]:
        return self.table.get(opt, (self.default_weight, "fallback"))

    def step(self, ctx: StepContext) -> StepOutput:
        if self.options is None:
            return StepOutput()
        pending = [o for o in self.options if o not in self.proposed]
        if not pending:
            return StepOutput()
        opt = min(pending, key=lambda o: (-self._entry(o)[0], o))
        self.proposed.add(opt)
        weight, note = self._entry(opt)
        gist = Suggestion(opt, note)
        return StepOutput(submission=self._chunk(ctx.tick, gist, Weight.finite(weight)))


class ConsequenceEvaluator(Processor):
    """Works through the option queue one exact evaluation per tick,
    resubmitting the current answer until it is broadcast. The queue fills
    from the which-move query; link-delivered what-ifs can also enqueue."""

    def __init__(self, spec: ProcessorSpec, rng: RngState):
        super().__init__(spec, rng)
        self.depth: int | None = spec.params["depth"]
        self.eval_weight: int = spec.params["eval_weight"]
        self.queue: list[int] = []
        self.current: tuple[int, int] | None = None   # (option, value)
        self.done: set[int] = set()

    def on_reception(self, chunk: Chunk) -> None:
        gist = chunk.gist
        if isinstance(gist, Query) and gist.query == WHICH_MOVE:
            self.queue = list(gist.options)
            self.current = None
            self.done = set()
        elif isinstance(gist, Evaluation):
            self.done.add(gist.option)
            if self.current is not None and self.current[0] == gist.option:
                self.current = None
            if gist.option in self.queue:
                self.queue.remove(gist.option)
        elif isinstance(gist, Commit):
            self.queue = []
            self.current = None

    def on_link_message(self, src: int, gist: Gist) -> None:
        if isinstance(gist, Query) and gist.query == WHAT_IF:
            for opt in gist.options:
                already = opt in self.done or opt in self.queue or (
                    self.current is not None and self.current[0] == opt)
                if not already:
                    self.queue.append(opt)

    def step(self, ctx: StepContext) -> StepOutput:
        if self.current is None and self.queue:
            opt = self.queue.pop(0)
            self.current = (opt, ctx.world.option_value(opt, self.depth))
        if self.current is None:
            return StepOutput()
        opt, value = self.current
        gist = Evaluation(opt, value)
        return StepOutput(submission=self._chunk(ctx.tick, gist, Weight.finite(self.eval_weight)))


class _DeliberationMirror:
    """Shared bookkeeping for anyone who must know what the machine is about
    to commit: the decider itself, and the operator that shadows it."""

    def __init__(self, deadline: int):
        self.deadline = deadline
        self.options: tuple[int, ...] | None = None
        self.ledger: dict[int, int] = {}
        self.excluded: set[int] = set()
        self.query_tick: int = 0

    def on_reception(self, chunk: Chunk) -> None:
        gist = chunk.gist
        if isinstance(gist, Query) and gist.query == WHICH_MOVE:
            self.options = gist.options
            self.ledger = {}
            self.excluded = set()
            self.query_tick = chunk.tick
        elif isinstance(gist, Evaluation):
            self.ledger[gist.option] = gist.value
        elif isinstance(gist, Seizure):
            self.excluded.add(gist.option)
        elif isinstance(gist, Commit):
            self.options = None

    def _viable(self) -> list[int]:
        assert self.options is not None
        return [o for o in self.options if o not in self.excluded]

    def ready(self, tick: int) -> bool:
        """True when every viable option is evaluated or the deadline hit."""
        if self.options is None:
            return False
        viable = self._viable()
        if all(o in self.ledger for o in viable):
            return True
        return tick >= self.query_tick + self.deadline

    def pending_best(self) -> int | None:
        """The option a commit right now would carry, or None if nothing viable."""
        if self.options is None:
            return None
        viable = self._viable()
        scored = {o: v for o, v in self.ledger.items() if o in set(viable)}
        if scored:
            return decide(scored)
        if viable:
            return min(viable)   # deadline with an empty ledger: take the first option
        return None


class Decider(Processor):
    """Converges on whichever option it reckons best: commits once every
    viable option is evaluated, or when its deadline expires."""

    def __init__(self, spec: ProcessorSpec, rng: RngState):
        super().__init__(spec, rng)
        self.commit_weight: int = spec.params["commit_weight"]
        self.mirror = _DeliberationMirror(deadline=spec.params["deadline"])

    def on_reception(self, chunk: Chunk) -> None:
        self.mirror.on_reception(chunk)

    def step(self, ctx: StepContext) -> StepOutput:
        if not self.mirror.ready(ctx.tick):
            return StepOutput()
        best = self.mirror.pending_best()
        if best is None:
            return StepOutput()
        gist = Commit(best)
        return StepOutput(submission=self._chunk(ctx.tick, gist, Weight.finite(self.commit_weight)))


class ExternalOperator(Processor):
    """The non-standard processor modeling an outside controller: it shadows
    the decider, and the moment the machine is about to commit a forbidden
    option it blocks the thought with an infinite-weight seizure. The
    deadline must match the decider's so the shadow stays in lockstep."""

    def __init__(self, spec: ProcessorSpec, rng: RngState):
        super().__init__(spec, rng)
        self.forbidden: set[int] = set(spec.params["forbidden"])
        self.mirror = _DeliberationMirror(deadline=spec.params["deadline"])

    def on_reception(self, chunk: Chunk) -> None:
        self.mirror.on_reception(chunk)

    def step(self, ctx: StepContext) -> StepOutput:
        if not self.mirror.ready(ctx.tick):
            return StepOutput()
        best = self.mirror.pending_best()
        if best is None or best not in self.forbidden:
            return StepOutput()
        gist = Seizure(best)
        return StepOutput(submission=self._chunk(ctx.tick, gist, Weight.inf()))


_BUILDERS = {
    KIND_MODEL_OF_THE_WORLD: ModelOfTheWorld,
    KIND_INNER_SPEECH: InnerSpeech,
    KIND_MOVE_PROPOSER: MoveProposer,
    KIND_CONSEQUENCE_EVALUATOR: ConsequenceEvaluator,
    KIND_DECIDER: Decider,
    KIND_EXTERNAL_OPERATOR: ExternalOperator,
}

# Per-kind param schema: name -> default (None means "no default but optional
# null is legal", used for the evaluator's unlimited depth).
_PARAM_DEFAULTS: dict[str, dict] = {
    KIND_MODEL_OF_THE_WORLD: {"query_weight": DEFAULT_QUERY_WEIGHT},
    KIND_INNER_SPEECH: {"what_if_weight": DEFAULT_WHAT_IF_WEIGHT},
    KIND_MOVE_PROPOSER: {"table": {}, "default_weight": DEFAULT_SUGGESTION_WEIGHT},
    KIND_CONSEQUENCE_EVALUATOR: {"depth": None, "eval_weight": DEFAULT_EVAL_WEIGHT},
    KIND_DECIDER: {"deadline": DEFAULT_DECIDER_DEADLINE, "commit_weight": DEFAULT_COMMIT_WEIGHT},
    KIND_EXTERNAL_OPERATOR: {"forbidden": [], "deadline": DEFAULT_DECIDER_DEADLINE},
}


def normalize_params(kind: str, params: dict) -> dict:
    """Fill defaults in schema order; reject unknown keys."""
    schema = _PARAM_DEFAULTS[kind]
    unknown = sorted(set(params) - set(schema))
    if unknown:
        raise ValueError(f"unknown params for {kind}: {unknown}")
    out = {}
    for key, default in schema.items():
        out[key] = params.get(key, default)
    if kind == KIND_MOVE_PROPOSER:
        out["table"] = {
            str(opt): {"weight": entry["weight"], "note": entry["note"]}
            for opt, entry in sorted(out["table"].items(), key=lambda kv: int(kv[0]))
        }
    if kind == KIND_EXTERNAL_OPERATOR:
        out["forbidden"] = sorted(set(out["forbidden"]))
    return out


def validate_spec(spec: ProcessorSpec) -> list[str]:
    out: list[str] = []
    where = f"processor {spec.id}"
    if spec.kind not in PROCESSOR_KINDS:
        out.append(f"{where}: unknown kind {spec.kind!r}")
        return out
    if spec.kind == KIND_EXTERNAL_OPERATOR:
        if spec.standard:
            out.append(f"{where}: external_operator must be non-standard "
                       "(only non-standard processors may emit infinite weight)")
    elif not spec.standard:
        out.append(f"{where}: kind {spec.kind} must be standard")
    try:
        normalize_params(spec.kind, spec.params)
    except (ValueError, KeyError, TypeError) as exc:
        out.append(f"{where}: bad params: {exc}")
        return out
    for key, value in spec.params.items():
        if key.endswith("weight") and not (isinstance(value, int) and 0 <= value <= 10**12):
            out.append(f"{where}: {key} must be an integer in [0, 10^12]")
    if spec.kind == KIND_CONSEQUENCE_EVALUATOR:
        depth = spec.params.get("depth")
        if depth is not None and not (isinstance(depth, int) and depth >= 0):
            out.append(f"{where}: depth must be null or a non-negative integer")
    if spec.kind == KIND_DECIDER and not (isinstance(spec.params.get("deadline", 1), int)
                                          and spec.params.get("deadline", 1) >= 1):
        out.append(f"{where}: deadline must be an integer >= 1")
    return out


def build_processor(spec: ProcessorSpec, rng: RngState) -> Processor:
    normalized = ProcessorSpec(spec.id, spec.kind, spec.standard,
                               normalize_params(spec.kind, spec.params))
    return _BUILDERS[spec.kind](normalized, rng)
