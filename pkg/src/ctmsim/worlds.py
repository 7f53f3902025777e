"""Deterministic environments the machine can be bound to.

Two worlds: a 3x3 two-player game with an exact negamax oracle (the
desk-scale stand-in for any game whose decision takes more than one tick),
and a toroidal Game of Life grid where the agent's two options are to
toggle a designated cell or leave it alone before the next generation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

X = "X"
O = "O"
EMPTY = "-"

WIN_MICRO = 1_000_000

LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),   # rows
    (0, 3, 6), (1, 4, 7), (2, 5, 8),   # columns
    (0, 4, 8), (2, 4, 6),              # diagonals
)


class WorldError(ValueError):
    """Illegal move or malformed world state."""


# ----------------------------------------------------------------------
# Two-player game
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GameState:
    board: str            # 9 chars over "XO-", row-major
    to_move: str          # X or O


def _line_marks(board: str) -> set[str]:
    marks = set()
    for a, b, c in LINES:
        if board[a] == board[b] == board[c] != EMPTY:
            marks.add(board[a])
    return marks


def derived_mover(board: str) -> str:
    """X moves first, so equal counts mean X to move."""
    return X if board.count(X) == board.count(O) else O


def legal_moves(g: GameState) -> list[int]:
    """Empty cells in row-major order; empty list iff the board is full."""
    return [i for i in range(9) if g.board[i] == EMPTY]


def apply_move(g: GameState, option: int) -> GameState:
    if option not in range(9) or g.board[option] != EMPTY:
        raise WorldError(f"illegal move {option} on {g.board!r}")
    board = g.board[:option] + g.to_move + g.board[option + 1:]
    return GameState(board, O if g.to_move == X else X)


def terminal_value(g: GameState) -> int | None:
    """Utility in micro-units from X's perspective, or None if non-terminal."""
    marks = _line_marks(g.board)
    if X in marks:
        return WIN_MICRO
    if O in marks:
        return -WIN_MICRO
    if EMPTY not in g.board:
        return 0
    return None


@lru_cache(maxsize=None)
def _negamax(board: str, to_move: str, depth: int | None) -> int:
    """Value from the mover's perspective; cutoff leaves score 0."""
    tv = terminal_value(GameState(board, to_move))
    if tv is not None:
        return tv if to_move == X else -tv
    if depth == 0:
        return 0
    child_depth = None if depth is None else depth - 1
    other = O if to_move == X else X
    best = None
    for i in range(9):
        if board[i] == EMPTY:
            child = board[:i] + to_move + board[i + 1:]
            v = -_negamax(child, other, child_depth)
            if best is None or v > best:
                best = v
    assert best is not None
    return best


def minimax_value(g: GameState, depth: int | None = None) -> tuple[int, int | None]:
    """Exact game value from X's perspective plus the mover's best option.

    Ties break to the smallest option id; the best option is None on a
    terminal board. depth=None searches the full subtree; a depth-limited
    search scores cutoff leaves 0.
    """
    tv = terminal_value(g)
    if tv is not None:
        return tv, None
    child_depth = None if depth is None else depth - 1
    other = O if g.to_move == X else X
    best_v: int | None = None
    best_opt: int | None = None
    if depth == 0:
        return 0, min(legal_moves(g))
    for i in legal_moves(g):
        child = g.board[:i] + g.to_move + g.board[i + 1:]
        v = -_negamax(child, other, child_depth)
        if best_v is None or v > best_v:
            best_v, best_opt = v, i
    assert best_v is not None
    return (best_v if g.to_move == X else -best_v), best_opt


def best_move(g: GameState, depth: int | None = None) -> int:
    if terminal_value(g) is not None:
        raise WorldError("no best move on a terminal board")
    opt = minimax_value(g, depth)[1]
    assert opt is not None
    return opt


def game_option_value(g: GameState, option: int, depth: int | None = None) -> int:
    """Utility to the mover of choosing the option, in micro-units.

    This is what the machine's evaluator reports: a depth-limited negamax
    of the resulting position, signed so that bigger is better for whoever
    is deciding now.
    """
    nxt = apply_move(g, option)
    child_depth = None if depth is None else depth - 1
    return -_negamax(nxt.board, nxt.to_move, child_depth)


# ----------------------------------------------------------------------
# Game of Life on a torus
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LifeGrid:
    width: int
    height: int
    alive: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise WorldError("grid dimensions must be >= 1")


def life_step(grid: LifeGrid) -> LifeGrid:
    """One synchronous generation: birth on 3 neighbors, survival on 2 or 3."""
    w, h = grid.width, grid.height
    counts: dict[tuple[int, int], int] = {}
    for (x, y) in grid.alive:
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if dx == 0 and dy == 0:
                    continue
                cell = ((x + dx) % w, (y + dy) % h)
                counts[cell] = counts.get(cell, 0) + 1
    nxt = {
        cell for cell, n in counts.items()
        if n == 3 or (n == 2 and cell in grid.alive)
    }
    return LifeGrid(w, h, frozenset(nxt))


def toggle_cell(grid: LifeGrid, cell: tuple[int, int]) -> LifeGrid:
    alive = set(grid.alive)
    if cell in alive:
        alive.remove(cell)
    else:
        alive.add(cell)
    return LifeGrid(grid.width, grid.height, frozenset(alive))


def render_grid(grid: LifeGrid) -> str:
    rows = []
    for y in range(grid.height):
        rows.append("".join("#" if (x, y) in grid.alive else "." for x in range(grid.width)))
    return "\n".join(rows)


# ----------------------------------------------------------------------
# World bindings used by the kernel
# ----------------------------------------------------------------------

LIFE_LEAVE = 0
LIFE_TOGGLE = 1
_LIFE_CELL_MICRO = 1_000   # utility per live cell in the next generation


class GameWorld:
    """Game binding; with reset_on_action the position snaps back after every
    committed move, giving a repeatable drill for habituation runs."""

    kind = "game"

    def __init__(self, initial: GameState, reset_on_action: bool = False):
        self.initial = initial
        self.state = initial
        self.reset_on_action = reset_on_action

    def legal_options(self) -> list[int]:
        if self.is_terminal():
            return []
        return legal_moves(self.state)

    def option_value(self, option: int, depth: int | None = None) -> int:
        return game_option_value(self.state, option, depth)

    def apply_action(self, option: int) -> None:
        nxt = apply_move(self.state, option)
        self.state = self.initial if self.reset_on_action else nxt

    def is_terminal(self) -> bool:
        return terminal_value(self.state) is not None

    def to_obj(self) -> dict:
        return {
            "kind": "game",
            "board": self.initial.board,
            "reset_on_action": self.reset_on_action,
        }


class LifeWorld:
    """Life binding: the agent watches the whole grid and owns one designated
    cell. Options are leave (0) or toggle (1); each action advances one
    generation, and options are valued by the live-cell count that results."""

    kind = "life"

    def __init__(self, grid: LifeGrid, target: tuple[int, int]):
        if not (0 <= target[0] < grid.width and 0 <= target[1] < grid.height):
            raise WorldError(f"target cell {target} outside grid")
        self.initial = grid
        self.grid = grid
        self.target = target

    def legal_options(self) -> list[int]:
        return [LIFE_LEAVE, LIFE_TOGGLE]

    def option_value(self, option: int, depth: int | None = None) -> int:
        nxt = life_step(self._after(option))
        return len(nxt.alive) * _LIFE_CELL_MICRO

    def apply_action(self, option: int) -> None:
        self.grid = life_step(self._after(option))

    def _after(self, option: int) -> LifeGrid:
        if option == LIFE_LEAVE:
            return self.grid
        if option == LIFE_TOGGLE:
            return toggle_cell(self.grid, self.target)
        raise WorldError(f"illegal life option {option}")

    def is_terminal(self) -> bool:
        return False

    def to_obj(self) -> dict:
        return {
            "kind": "life",
            "width": self.initial.width,
            "height": self.initial.height,
            "alive": sorted([list(c) for c in self.initial.alive]),
            "target": list(self.target),
        }


World = GameWorld | LifeWorld


def validate_world_obj(obj: object) -> list[str]:
    """Config-level checks; returns human-readable violations."""
    out: list[str] = []
    if not isinstance(obj, dict):
        return ["world: must be an object"]
    kind = obj.get("kind")
    if kind == "game":
        allowed = {"kind", "board", "reset_on_action"}
        out.extend(f"world: unknown field {k!r}" for k in sorted(set(obj) - allowed))
        board = obj.get("board")
        if not isinstance(board, str) or len(board) != 9 or any(c not in "XO-" for c in board):
            out.append("world: board must be 9 chars over \"XO-\"")
            return out
        xs, os_ = board.count(X), board.count(O)
        if xs - os_ not in (0, 1):
            out.append(f"world: mark counts X={xs} O={os_} violate X-O in {{0,1}}")
        marks = _line_marks(board)
        if len(marks) > 1:
            out.append("world: both players have winning lines")
        for mark in (X, O):
            lines = sum(1 for a, b, c in LINES if board[a] == board[b] == board[c] == mark)
            if lines > 1:
                out.append(f"world: player {mark} has {lines} winning lines")
        if "reset_on_action" in obj and not isinstance(obj["reset_on_action"], bool):
            out.append("world: reset_on_action must be a boolean")
    elif kind == "life":
        allowed = {"kind", "width", "height", "alive", "target"}
        out.extend(f"world: unknown field {k!r}" for k in sorted(set(obj) - allowed))
        w, h = obj.get("width"), obj.get("height")
        if not (isinstance(w, int) and isinstance(h, int) and w >= 1 and h >= 1):
            out.append("world: width/height must be integers >= 1")
            return out
        alive = obj.get("alive", [])
        if not isinstance(alive, list) or any(
            not (isinstance(c, list) and len(c) == 2 and all(isinstance(v, int) for v in c))
            for c in alive
        ):
            out.append("world: alive must be a list of [x,y] pairs")
            return out
        for cx, cy in alive:
            if not (0 <= cx < w and 0 <= cy < h):
                out.append(f"world: live cell [{cx},{cy}] outside grid")
        target = obj.get("target")
        if not (isinstance(target, list) and len(target) == 2 and all(isinstance(v, int) for v in target)
                and 0 <= target[0] < w and 0 <= target[1] < h):
            out.append("world: target must be an in-range [x,y] pair")
    else:
        out.append(f"world: unknown kind {kind!r}")
    return out


def build_world(obj: dict) -> World:
    """Build the binding from a validated config object."""
    if obj["kind"] == "game":
        board = obj["board"]
        state = GameState(board, derived_mover(board))
        return GameWorld(state, reset_on_action=obj.get("reset_on_action", False))
    grid = LifeGrid(obj["width"], obj["height"], frozenset(tuple(c) for c in obj.get("alive", [])))
    return LifeWorld(grid, tuple(obj["target"]))


def normalize_world_obj(obj: dict) -> dict:
    """Canonical echo form with defaults materialized."""
    if obj["kind"] == "game":
        return {
            "kind": "game",
            "board": obj["board"],
            "reset_on_action": obj.get("reset_on_action", False),
        }
    return {
        "kind": "life",
        "width": obj["width"],
        "height": obj["height"],
        "alive": sorted([list(c) for c in obj.get("alive", [])]),
        "target": list(obj["target"]),
    }
