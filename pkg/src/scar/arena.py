"""The move structure shared by every solver in the package.

A position assigns one vertex to each of N tokens: cops 1..N-1 and the robber
(token N). A *state* is a position plus whose turn it is; turns cycle
1, 2, ..., N, 1, ... and exactly one token moves per turn, either staying put
or crossing one edge. Time is counted in single token moves throughout.

A state is a *capture* state when some cop shares the robber's vertex.
Capture states are absorbing: they keep successor lists (the move structure
is defined uniformly) but every solver treats them as terminal.

States are packed densely: index = ((x1*V + x2)*V + ... + xN)*N + (mover-1),
so |states| = V^N * N. Successor lists are stored once in CSR form and are
ordered by ascending target vertex of the moving token.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IllegalMoveError, StateCountExceededError, ValidationError
from .graphs import Graph, is_path_graph, path_order

INFINITY = math.inf

DEFAULT_MAX_STATES = 10**7


@dataclass(frozen=True)
class GameParams:
    """Player count and payoff parameters for the discounted games.

    gamma is the per-move discount in (0,1); epsilon in [0, 1/(N-1)] splits a
    cop's payoff between "I captured" and "someone else captured". Passing
    allow_wide_epsilon=True relaxes the epsilon cap to 1/2.
    """

    n_players: int
    gamma: Fraction
    epsilon: Fraction
    allow_wide_epsilon: bool = False

    def __post_init__(self):
        n = self.n_players
        if not isinstance(n, int) or n < 3:
            raise ValidationError(f"need at least 3 players (2 cops), got {n}")
        if not isinstance(self.gamma, Fraction) or not 0 < self.gamma < 1:
            raise ValidationError(f"gamma must be a rational in (0,1), got {self.gamma}")
        cap = Fraction(1, 2) if self.allow_wide_epsilon else Fraction(1, n - 1)
        if not isinstance(self.epsilon, Fraction) or not 0 <= self.epsilon <= cap:
            raise ValidationError(
                f"epsilon must be a rational in [0, {cap}]"
                f"{' (wide)' if self.allow_wide_epsilon else ''}, got {self.epsilon}"
            )


@dataclass(frozen=True)
class State:
    """Cop positions (ordered, cops are distinguishable), robber position,
    and the 1-based index of the token that moves next."""

    cops: tuple[int, ...]
    robber: int
    mover: int

    def literal(self) -> str:
        return format_state(self)

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.literal()


def format_state(s: State) -> str:
    """Render as the CLI literal "c1,...,ck;r;n"."""
    return ",".join(str(c) for c in s.cops) + f";{s.robber};{s.mover}"


def parse_state(text: str, n_players: int, vertex_count: int) -> State:
    """Parse "c1,...,ck;r;n" (0-based vertices, 1-based mover)."""
    parts = text.strip().split(";")
    if len(parts) != 3:
        raise ValidationError(f"state literal must have three ';' fields: {text!r}")
    try:
        cops = tuple(int(c) for c in parts[0].split(","))
        robber = int(parts[1])
        mover = int(parts[2])
    except ValueError:
        raise ValidationError(f"non-integer field in state literal {text!r}") from None
    if len(cops) != n_players - 1:
        raise ValidationError(
            f"state literal {text!r} lists {len(cops)} cops; expected {n_players - 1}"
        )
    for v in (*cops, robber):
        if not 0 <= v < vertex_count:
            raise ValidationError(f"vertex {v} out of range in state literal {text!r}")
    if not 1 <= mover <= n_players:
        raise ValidationError(f"mover {mover} out of range 1..{n_players} in {text!r}")
    return State(cops, robber, mover)


class Arena:
    """Dense state space + CSR successor table for one (graph, N) pair."""

    def __init__(self, graph: Graph, n_players: int, max_states: int = DEFAULT_MAX_STATES):
        if not isinstance(n_players, int) or n_players < 2:
            raise ValidationError(f"need at least 2 players, got {n_players}")
        v = graph.vertex_count
        n_states = v**n_players * n_players
        if n_states > max_states:
            raise StateCountExceededError(
                f"arena would hold {n_states} states (> cap {max_states})"
            )
        self.graph = graph
        self.n_players = n_players
        self.n_states = n_states
        self._strides = [v ** (n_players - j) for j in range(1, n_players + 1)]
        self.capture_mask = self._build_capture_mask()
        self.offsets, self.targets = self._build_successors()
        self._pred: tuple[np.ndarray, np.ndarray] | None = None

    # -- construction -------------------------------------------------------

    def _build_capture_mask(self) -> np.ndarray:
        v, n = self.graph.vertex_count, self.n_players
        mixes = np.arange(v**n, dtype=np.int64)
        robber = mixes % v
        cap = np.zeros(v**n, dtype=bool)
        for j in range(1, n):  # cop tokens
            cap |= (mixes // self._strides[j - 1]) % v == robber
        return np.repeat(cap, n)

    def _build_successors(self) -> tuple[np.ndarray, np.ndarray]:
        g, n, v = self.graph, self.n_players, self.graph.vertex_count
        idx = np.arange(self.n_states, dtype=np.int64)
        mover0 = (idx % n).astype(np.int64)
        mix = idx // n
        degp1 = np.array([g.degree(u) + 1 for u in range(v)], dtype=np.int64)

        moving_vertex = np.empty(self.n_states, dtype=np.int64)
        for tok in range(1, n + 1):
            sel = mover0 == tok - 1
            moving_vertex[sel] = (mix[sel] // self._strides[tok - 1]) % v

        counts = degp1[moving_vertex]
        offsets = np.zeros(self.n_states + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        targets = np.empty(offsets[-1], dtype=np.int64)

        for tok in range(1, n + 1):
            stride = self._strides[tok - 1] * n
            mover_delta = 1 if tok < n else 1 - n
            for u in range(v):
                sel = np.nonzero((mover0 == tok - 1) & (moving_vertex == u))[0]
                if sel.size == 0:
                    continue
                base = offsets[sel]
                for rank, w in enumerate(g.closed_neighborhood(u)):
                    targets[base + rank] = sel + (w - u) * stride + mover_delta
        return offsets, targets

    # -- state codec --------------------------------------------------------

    def index(self, s: State) -> int:
        n, v = self.n_players, self.graph.vertex_count
        if len(s.cops) != n - 1:
            raise ValidationError(f"state has {len(s.cops)} cops; arena expects {n - 1}")
        if not 1 <= s.mover <= n:
            raise ValidationError(f"mover {s.mover} out of range")
        mix = 0
        for x in (*s.cops, s.robber):
            if not 0 <= x < v:
                raise ValidationError(f"vertex {x} out of range")
            mix = mix * v + x
        return mix * n + (s.mover - 1)

    def state_of(self, idx: int) -> State:
        n, v = self.n_players, self.graph.vertex_count
        if not 0 <= idx < self.n_states:
            raise ValidationError(f"state index {idx} out of range")
        mover = idx % n + 1
        mix = idx // n
        digits = []
        for _ in range(n):
            digits.append(mix % v)
            mix //= v
        digits.reverse()
        return State(tuple(digits[:-1]), digits[-1], mover)

    # -- queries ------------------------------------------------------------

    def is_capture(self, s: State | int) -> bool:
        idx = s if isinstance(s, int) else self.index(s)
        return bool(self.capture_mask[idx])

    def mover_of(self, idx: int) -> int:
        return idx % self.n_players + 1

    def succ_indices(self, idx: int) -> np.ndarray:
        return self.targets[self.offsets[idx] : self.offsets[idx + 1]]

    def successors(self, s: State) -> list[State]:
        return [self.state_of(int(j)) for j in self.succ_indices(self.index(s))]

    def noncapture_indices(self) -> np.ndarray:
        return np.nonzero(~self.capture_mask)[0]

    def robber_mover_mask(self) -> np.ndarray:
        idx = np.arange(self.n_states, dtype=np.int64)
        return idx % self.n_players == self.n_players - 1

    def predecessors(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR table of predecessor lists (reverse of the successor table),
        built on first use and cached."""
        if self._pred is None:
            rows = np.repeat(
                np.arange(self.n_states, dtype=np.int64), np.diff(self.offsets)
            )
            order = np.argsort(self.targets, kind="stable")
            pred_targets = rows[order]
            counts = np.bincount(self.targets, minlength=self.n_states)
            pred_offsets = np.zeros(self.n_states + 1, dtype=np.int64)
            np.cumsum(counts, out=pred_offsets[1:])
            self._pred = (pred_offsets, pred_targets)
        return self._pred


def build_arena(
    graph: Graph, n_players: int, max_states: int = DEFAULT_MAX_STATES
) -> Arena:
    return Arena(graph, n_players, max_states=max_states)


def is_capture(s: State) -> bool:
    """Position-only capture test (no arena needed)."""
    return s.robber in s.cops


def concat_ranges(starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Concatenation of arange(starts[i], ends[i]) without a Python loop."""
    counts = ends - starts
    keep = counts > 0
    starts, counts = starts[keep], counts[keep]
    if starts.size == 0:
        return np.empty(0, dtype=np.int64)
    step = np.ones(int(counts.sum()), dtype=np.int64)
    step[0] = starts[0]
    cuts = np.cumsum(counts[:-1])
    step[cuts] = starts[1:] - (starts[:-1] + counts[:-1] - 1)
    return np.cumsum(step)


def _flood(offsets: np.ndarray, targets: np.ndarray, seed: np.ndarray,
           blocked: np.ndarray) -> np.ndarray:
    """Mask of states reachable from the seed mask without ever stepping
    into (or out of) a blocked state; seeds are included as-is."""
    seen = seed & ~blocked
    frontier = np.nonzero(seen)[0]
    while frontier.size:
        nbrs = targets[concat_ranges(offsets[frontier], offsets[frontier + 1])]
        nbrs = np.unique(nbrs)
        nbrs = nbrs[~seen[nbrs] & ~blocked[nbrs]]
        seen[nbrs] = True
        frontier = nbrs
    return seen


def reachable_noncapture(arena: Arena, s0: State | int) -> np.ndarray:
    """Sorted indices of every noncapture state reachable from s0 along
    successor steps that never enter a capture state (s0 included)."""
    start = s0 if isinstance(s0, int) else arena.index(s0)
    if arena.capture_mask[start]:
        raise ValidationError("reachability is defined from a noncapture state")
    seed = np.zeros(arena.n_states, dtype=bool)
    seed[start] = True
    return np.nonzero(_flood(arena.offsets, arena.targets, seed, arena.capture_mask))[0]


@dataclass(frozen=True)
class Play:
    """A simulated trajectory. capture_time is the number of token moves
    before the first capture state (inf when the play provably cycles or the
    step budget ran out); capturing_cops lists the 1-based cop indices at the
    robber's vertex when capture happened."""

    states: tuple[State, ...]
    capture_time: int | float
    capturing_cops: frozenset[int]
    cycled: bool = False


def simulate(arena: Arena, s0: State | int, profile, max_steps: int | None = None) -> Play:
    """Run a positional profile from s0.

    `profile` maps a noncapture state index to the chosen successor index
    (a dict or a callable). Deterministic profiles must repeat a state before
    2*|states| moves, so the default budget makes the inf verdict certain.
    """
    idx = s0 if isinstance(s0, int) else arena.index(s0)
    if max_steps is None:
        max_steps = 2 * arena.n_states
    choose = profile if callable(profile) else profile.__getitem__
    trail = [idx]
    visited = {idx}
    cycled = False
    while not arena.capture_mask[trail[-1]] and len(trail) <= max_steps:
        cur = trail[-1]
        nxt = int(choose(cur))
        lo, hi = arena.offsets[cur], arena.offsets[cur + 1]
        if nxt not in arena.targets[lo:hi]:
            raise IllegalMoveError(
                f"{arena.state_of(nxt).literal()} is not a successor of "
                f"{arena.state_of(cur).literal()}"
            )
        trail.append(nxt)
        if nxt in visited:
            cycled = True
            break
        visited.add(nxt)

    states = tuple(arena.state_of(i) for i in trail)
    last = trail[-1]
    if arena.capture_mask[last]:
        robber = states[-1].robber
        cops = frozenset(i + 1 for i, c in enumerate(states[-1].cops) if c == robber)
        return Play(states, len(trail) - 1, cops, cycled=False)
    return Play(states, INFINITY, frozenset(), cycled=cycled)


def all_cops_one_side(g: Graph, s: State) -> bool:
    """On a path graph: do all cops sit strictly on one side of the robber?

    Raises ValidationError when g is not a path.
    """
    if not is_path_graph(g):
        raise ValidationError("one-side test is defined on path graphs only")
    pos = {v: i for i, v in enumerate(path_order(g))}
    rp = pos[s.robber]
    return all(pos[c] < rp for c in s.cops) or all(pos[c] > rp for c in s.cops)
