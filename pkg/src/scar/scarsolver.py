"""Per-player discounted payoff games, solved exactly over the rationals.

For each cop m there is a zero-sum-in-spirit game on the shared arena: token
m maximizes its own expected payoff, every other token (the remaining cops
and the robber) minimizes it. A play that reaches a capture state after t
token moves pays gamma^t times a terminal coefficient that depends on who
sits on the robber:

    every cop captures at once   -> 1/(N-1) each,
    m is one of K < N-1 captors  -> (1-eps)/K,
    m is not a captor            -> eps/(N-1-K),
    the robber is never caught   -> 0.

Values are fractions.Fraction throughout; value iteration starts at zero,
increases monotonically, and stops on exact fixpoint equality, so results
carry no rounding at all. A final full Bellman sweep re-checks every residual
before the solution is returned.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .arena import Arena, GameParams, State, concat_ranges
from .errors import NonConvergenceError, ValidationError

Q0 = Fraction(0)


def terminal_payoff(s: State, m: int, params: GameParams) -> Fraction:
    """Terminal coefficient for cop m at capture state s (before discounting)."""
    n = params.n_players
    if len(s.cops) != n - 1:
        raise ValidationError(f"state has {len(s.cops)} cops; expected {n - 1}")
    if not 1 <= m <= n - 1:
        raise ValidationError(f"payoffs are defined for cops 1..{n - 1}, got {m}")
    captors = sum(1 for c in s.cops if c == s.robber)
    if captors == 0:
        raise ValidationError(f"{s.literal()} is not a capture state")
    if captors == n - 1:
        return Fraction(1, n - 1)
    if s.cops[m - 1] == s.robber:
        return (1 - params.epsilon) / captors
    return params.epsilon / (n - 1 - captors)


class GameSolution:
    """Exact value table for one player's discounted game on an arena."""

    def __init__(
        self,
        arena: Arena,
        player: int,
        gamma: Fraction,
        values: list,
        rounds: int,
        max_mask: np.ndarray | None = None,
    ):
        self.arena = arena
        self.player = player
        self.gamma = gamma
        self.values = values
        self.rounds = rounds
        if max_mask is None:
            max_mask = np.arange(arena.n_states) % arena.n_players == player - 1
        self._max_mask = max_mask
        self._edge_opt: np.ndarray | None = None
        self._opt_offsets: np.ndarray | None = None
        self._opt_targets: np.ndarray | None = None

    def value(self, s: State | int) -> Fraction:
        idx = s if isinstance(s, int) else self.arena.index(s)
        return self.values[idx]

    @property
    def edge_opt(self) -> np.ndarray:
        """Boolean per CSR edge: does the move attain the mover's optimum
        under the roles this game was solved with?"""
        if self._edge_opt is None:
            a = self.arena
            eo = np.zeros(len(a.targets), dtype=bool)
            offsets, targets, values = a.offsets, a.targets, self.values
            mx = self._max_mask
            for i in a.noncapture_indices():
                lo, hi = offsets[i], offsets[i + 1]
                tv = [values[t] for t in targets[lo:hi]]
                best = max(tv) if mx[i] else min(tv)
                for k, val in enumerate(tv):
                    if val == best:
                        eo[lo + k] = True
            self._edge_opt = eo
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


_multi_slice = concat_ranges


def _iterate(
    arena: Arena,
    gamma: Fraction,
    max_mask: np.ndarray,
    terminal: list,
    cap_rounds: int,
) -> tuple[list, int]:
    """Monotone exact value iteration from zero. Only states whose successor
    values moved are recomputed each round (the fixpoint is the same; the
    worklist just skips provably settled states)."""
    offsets, targets = arena.offsets, arena.targets
    pred_offsets, pred_targets = arena.predecessors()
    capture = arena.capture_mask
    values = list(terminal)
    frontier = arena.noncapture_indices()
    touched = np.zeros(arena.n_states, dtype=bool)

    for rounds in range(1, cap_rounds + 1):
        changed: list[int] = []
        for i in frontier:
            lo, hi = offsets[i], offsets[i + 1]
            tv = [values[t] for t in targets[lo:hi]]
            new = gamma * (max(tv) if max_mask[i] else min(tv))
            old = values[i]
            if new != old:
                if new < old:
                    raise AssertionError("value iteration decreased a value")
                values[i] = new
                changed.append(i)
        if not changed:
            # verify the fixpoint with one full Bellman sweep
            for i in arena.noncapture_indices():
                lo, hi = offsets[i], offsets[i + 1]
                tv = [values[t] for t in targets[lo:hi]]
                if values[i] != gamma * (max(tv) if max_mask[i] else min(tv)):
                    raise AssertionError("nonzero Bellman residual at fixpoint")
            return values, rounds
        ch = np.asarray(changed, dtype=np.int64)
        touched[:] = False
        touched[pred_targets[_multi_slice(pred_offsets[ch], pred_offsets[ch + 1])]] = True
        frontier = np.nonzero(touched & ~capture)[0]
    raise NonConvergenceError(f"no fixpoint within {cap_rounds} rounds")


def solve_game(
    arena: Arena, player: int, params: GameParams, cap_rounds: int | None = None
) -> GameSolution:
    """Solve cop `player`'s discounted game on the arena."""
    n = arena.n_players
    if params.n_players != n:
        raise ValidationError(
            f"params are for {params.n_players} players, arena has {n}"
        )
    if not 1 <= player <= n - 1:
        raise ValidationError(f"player must be a cop in 1..{n - 1}, got {player}")
    terminal = [Q0] * arena.n_states
    for idx in np.nonzero(arena.capture_mask)[0]:
        terminal[idx] = terminal_payoff(arena.state_of(int(idx)), player, params)
    max_mask = np.arange(arena.n_states) % n == player - 1
    cap = 4 * arena.n_states if cap_rounds is None else cap_rounds
    values, rounds = _iterate(arena, params.gamma, max_mask, terminal, cap)
    return GameSolution(arena, player, params.gamma, values, rounds)


def solve_discounted_capture(
    arena: Arena, gamma: Fraction, cap_rounds: int | None = None
) -> GameSolution:
    """The survival-time game in discounted form: every cop maximizes
    gamma^(capture time) with terminal coefficient 1, the robber minimizes
    it (gamma < 1, so small capture times are worth more). Its value is
    gamma**T and its optimal-move sets match the capture-time game's
    exactly, which the test suite uses as a cross-check."""
    if not isinstance(gamma, Fraction) or not 0 < gamma < 1:
        raise ValidationError(f"gamma must be a rational in (0,1), got {gamma}")
    terminal = [Q0] * arena.n_states
    one = Fraction(1)
    for idx in np.nonzero(arena.capture_mask)[0]:
        terminal[idx] = one
    max_mask = ~np.asarray(arena.robber_mover_mask())
    cap = 4 * arena.n_states if cap_rounds is None else cap_rounds
    values, rounds = _iterate(arena, gamma, max_mask, terminal, cap)
    return GameSolution(arena, arena.n_players, gamma, values, rounds, max_mask=max_mask)


def opt_move_table(sol: GameSolution, token: int) -> dict[State, tuple[State, ...]]:
    """Optimal moves of `token` in sol's game, at every noncapture state where
    it is token's turn to move."""
    a = sol.arena
    if not 1 <= token <= a.n_players:
        raise ValidationError(f"token {token} out of range 1..{a.n_players}")
    table: dict[State, tuple[State, ...]] = {}
    for idx in a.noncapture_indices():
        if a.mover_of(int(idx)) == token:
            table[a.state_of(int(idx))] = sol.opt_moves(a.state_of(int(idx)))
    return table
