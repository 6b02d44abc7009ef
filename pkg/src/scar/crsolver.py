"""Joint capture-time game and the classic simultaneous-move game.

The capture-time game plays on an `Arena`: every cop move minimizes, the
robber move maximizes, capture states count 0, and the value of a state is
the number of token moves the cops need to force a capture (INT_INF when the
robber escapes forever). This single table drives everything downstream:
optimal-move sets, attribution of the capture to one cop, the invariant-check
targets, and the punishment play for the robber.

`classic_cop_win` solves the textbook pursuit variant on the same graph for
comparison: all cops relocate simultaneously in one turn, then the robber
moves, every token may stay put.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arena import DEFAULT_MAX_STATES, INFINITY, Arena, State
from .errors import StateCountExceededError, UniquenessViolationError, ValidationError
from .fixpoint import INT_INF, solve_layers
from .graphs import Graph


class CrSolution:
    """Value table plus optimal-move structure for the capture-time game."""

    def __init__(self, arena: Arena, values: np.ndarray):
        self.arena = arena
        self.values = values
        self._edge_opt: np.ndarray | None = None
        self._opt_offsets: np.ndarray | None = None
        self._opt_targets: np.ndarray | None = None
        self._capture_mask_bits: np.ndarray | None = None
        self._capturer: np.ndarray | None = None

    # -- values ---------------------------------------------------------------

    def capture_time(self, s: State | int) -> int | float:
        idx = s if isinstance(s, int) else self.arena.index(s)
        v = self.values[idx]
        return INFINITY if v >= INT_INF else int(v)

    def finite_mask(self) -> np.ndarray:
        return self.values < INT_INF

    # -- optimal moves ----------------------------------------------------------

    @property
    def edge_opt(self) -> np.ndarray:
        """Boolean per CSR edge: does this move attain the mover's optimum?

        Cop movers keep value-minimizing moves, the robber keeps maximizing
        ones. At a state of value INT_INF the cop rows keep every move (all
        are equally hopeless) and the robber rows keep exactly the moves that
        stay at INT_INF.
        """
        if self._edge_opt is None:
            a = self.arena
            sv = self.values[a.targets]
            seg = a.offsets[:-1]
            lo = np.minimum.reduceat(sv, seg)
            hi = np.maximum.reduceat(sv, seg)
            best = np.where(~a.robber_mover_mask(), lo, hi)
            self._edge_opt = sv == np.repeat(best, np.diff(a.offsets))
        return self._edge_opt

    def _opt_csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._opt_targets is None:
            a = self.arena
            keep = self.edge_opt
            counts = np.add.reduceat(keep.astype(np.int64), a.offsets[:-1])
            offsets = np.zeros(a.n_states + 1, dtype=np.int64)
            np.cumsum(counts, out=offsets[1:])
            self._opt_offsets = offsets
            self._opt_targets = a.targets[keep]
        return self._opt_offsets, self._opt_targets

    def opt_indices(self, idx: int) -> np.ndarray:
        if self.arena.capture_mask[idx]:
            raise ValidationError("no moves are defined from a capture state")
        offsets, targets = self._opt_csr()
        return targets[offsets[idx] : offsets[idx + 1]]

    def opt_moves(self, s: State) -> tuple[State, ...]:
        idx = self.arena.index(s)
        return tuple(self.arena.state_of(int(j)) for j in self.opt_indices(idx))

    # -- attribution ------------------------------------------------------------

    def _cop_bits(self) -> np.ndarray:
        """Per state, the bitmask of cops that can be credited with capture.

        Capture states carry the cops sitting on the robber. A finite
        noncapture state carries the union over all optimal plays from it,
        computed along increasing value (optimal moves always step the value
        down by exactly one, so successors are already resolved).
        """
        if self._capture_mask_bits is not None:
            return self._capture_mask_bits
        a = self.arena
        v, n = a.graph.vertex_count, a.n_players
        mixes = np.arange(v**n, dtype=np.int64)
        robber = mixes % v
        mix_bits = np.zeros(v**n, dtype=np.uint32)
        for j in range(1, n):
            at_robber = (mixes // a._strides[j - 1]) % v == robber
            mix_bits |= at_robber.astype(np.uint32) << (j - 1)
        bits = np.repeat(mix_bits, n)
        bits[~a.capture_mask] = 0

        offsets, targets = self._opt_csr()
        order = np.argsort(self.values, kind="stable")
        vals = self.values
        for idx in order:
            t = vals[idx]
            if t == 0 or t >= INT_INF:
                continue
            m = np.uint32(0)
            for j in targets[offsets[idx] : offsets[idx + 1]]:
                m |= bits[j]
            bits[idx] = m
        self._capture_mask_bits = bits
        return bits

    def _walk_to_capture(self, start: int, bit: int) -> tuple[State, ...]:
        offsets, targets = self._opt_csr()
        bits = self._cop_bits()
        trail = [start]
        while not self.arena.capture_mask[trail[-1]]:
            for j in targets[offsets[trail[-1]] : offsets[trail[-1] + 1]]:
                if bits[j] & bit:
                    trail.append(int(j))
                    break
            else:  # pragma: no cover - bits are unions over these successors
                raise AssertionError("attribution bit lost along optimal play")
        return tuple(self.arena.state_of(i) for i in trail)

    def capturer_table(self) -> np.ndarray:
        """int8 per state: the unique capturing cop on finite noncapture
        states, 0 elsewhere. Raises UniquenessViolationError (with two
        witness plays) if any state admits optimal captures by two cops."""
        if self._capturer is not None:
            return self._capturer
        a = self.arena
        bits = self._cop_bits()
        finite_nc = (~a.capture_mask) & self.finite_mask()
        multi = finite_nc & ((bits & (bits - 1)) != 0)
        if multi.any():
            idx = int(np.nonzero(multi)[0][0])
            m = int(bits[idx])
            first = m & -m
            second_m = m & ~first
            second = second_m & -second_m
            raise UniquenessViolationError(
                f"state {a.state_of(idx).literal()} admits optimal captures by "
                f"cop {first.bit_length()} and cop {second.bit_length()}",
                play_a=self._walk_to_capture(idx, first),
                play_b=self._walk_to_capture(idx, second),
            )
        capturer = np.zeros(a.n_states, dtype=np.int8)
        for b in range(a.n_players - 1):
            capturer[finite_nc & (bits == np.uint32(1 << b))] = b + 1
        self._capturer = capturer
        return capturer


def solve_capture_time(arena: Arena) -> CrSolution:
    """Solve the joint capture-time game on the arena (cached per arena)."""
    sol = getattr(arena, "_cr_solution", None)
    if sol is None:
        init = np.where(arena.capture_mask, 0, INT_INF).astype(np.int64)
        values = solve_layers(
            arena.offsets,
            arena.targets,
            ~arena.robber_mover_mask(),
            arena.capture_mask,
            init,
        )
        sol = CrSolution(arena, values)
        arena._cr_solution = sol
    return sol


def capture_attribution(sol: CrSolution, s: State | int) -> tuple[int, int]:
    """(capturing cop, capture time) for a noncapture state of finite value."""
    idx = s if isinstance(s, int) else sol.arena.index(s)
    if sol.arena.capture_mask[idx]:
        raise ValidationError("attribution is defined for noncapture states")
    t = sol.values[idx]
    if t >= INT_INF:
        raise ValidationError("attribution is defined only where capture is forced")
    return int(sol.capturer_table()[idx]), int(t)


# ---------------------------------------------------------------------------
# classic simultaneous-move pursuit
# ---------------------------------------------------------------------------


@dataclass
class ClassicArena:
    """State space for the k-cop simultaneous-move game: (cop k-tuple, robber,
    whose turn), cops relocating as one block. index = (mix(cops)*V + r)*2 + turn
    with turn 0 = cops."""

    graph: Graph
    cop_count: int
    n_states: int
    offsets: np.ndarray
    targets: np.ndarray
    capture: np.ndarray
    cop_turn: np.ndarray

    def index(self, cops: tuple[int, ...], robber: int, turn: int) -> int:
        v = self.graph.vertex_count
        mix = 0
        for c in cops:
            mix = mix * v + c
        return (mix * v + robber) * 2 + turn


def build_classic_arena(
    graph: Graph, cop_count: int, max_states: int = DEFAULT_MAX_STATES
) -> ClassicArena:
    v, k = graph.vertex_count, cop_count
    if not isinstance(k, int) or k < 1:
        raise ValidationError(f"need at least one cop, got {k}")
    n_states = v**k * v * 2
    if n_states > max_states:
        raise StateCountExceededError(
            f"classic arena would hold {n_states} states (> cap {max_states})"
        )
    nbhd = [np.array(graph.closed_neighborhood(u), dtype=np.int64) for u in range(v)]
    degp1 = np.array([len(nb) for nb in nbhd], dtype=np.int64)

    # every joint relocation of the k cops, per cop mix
    mix_succ: list[np.ndarray] = []
    for mix in range(v**k):
        digits = []
        rem = mix
        for _ in range(k):
            digits.append(rem % v)
            rem //= v
        digits.reverse()
        acc = np.zeros(1, dtype=np.int64)
        for u in digits:
            acc = (acc[:, None] * v + nbhd[u][None, :]).ravel()
        mix_succ.append(acc)

    counts = np.empty(n_states, dtype=np.int64)
    counts[0::2] = np.repeat(np.array([len(a) for a in mix_succ], dtype=np.int64), v)
    counts[1::2] = np.tile(degp1, v**k)
    offsets = np.zeros(n_states + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    targets = np.empty(offsets[-1], dtype=np.int64)

    nb2 = [2 * nb for nb in nbhd]
    for mix in range(v**k):
        cop_block = mix_succ[mix] * (2 * v) + 1
        rob_base = mix * (2 * v)
        state = mix * v * 2
        for r in range(v):
            lo = offsets[state]
            targets[lo : lo + len(cop_block)] = cop_block + 2 * r
            lo = offsets[state + 1]
            targets[lo : lo + len(nb2[r])] = rob_base + nb2[r]
            state += 2

    mixes = np.arange(v**k, dtype=np.int64)
    robber_row = np.arange(v, dtype=np.int64)[None, :]
    cap_mr = np.zeros((v**k, v), dtype=bool)
    for i in range(k):
        cap_mr |= ((mixes // v ** (k - 1 - i)) % v)[:, None] == robber_row
    capture = np.repeat(cap_mr.ravel(), 2)
    cop_turn = np.arange(n_states, dtype=np.int64) % 2 == 0
    return ClassicArena(graph, k, n_states, offsets, targets, capture, cop_turn)


def classic_values(arena: ClassicArena) -> np.ndarray:
    init = np.where(arena.capture, 0, INT_INF).astype(np.int64)
    return solve_layers(arena.offsets, arena.targets, arena.cop_turn, arena.capture, init)


def classic_cop_win(graph: Graph, cop_count: int, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Do k cops win the simultaneous-move game from *every* start (cops to
    move first)?"""
    arena = build_classic_arena(graph, cop_count, max_states)
    vals = classic_values(arena)
    return bool((vals[arena.cop_turn] < INT_INF).all())


def classic_cop_win_placement(
    graph: Graph, cop_count: int, max_states: int = DEFAULT_MAX_STATES
) -> bool:
    """Variant where the cops choose their starting tuple first and the robber
    answers with the worst vertex for them."""
    arena = build_classic_arena(graph, cop_count, max_states)
    vals = classic_values(arena)
    v = graph.vertex_count
    cop_vals = (vals[0::2] < INT_INF).reshape(v**cop_count, v)
    return bool(cop_vals.all(axis=1).any())


def classic_cop_number(
    graph: Graph, k_max: int | None = None, max_states: int = DEFAULT_MAX_STATES
) -> int | float:
    """Least k <= k_max with classic_cop_win, else math.inf. k_max defaults
    to the vertex count (every graph is caught by that many cops)."""
    if k_max is None:
        k_max = graph.vertex_count
    for k in range(1, k_max + 1):
        if classic_cop_win(graph, k, max_states):
            return k
    return math.inf
