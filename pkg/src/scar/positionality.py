"""Do positional trigger profiles exist? Decided by per-state set tests.

A trigger profile plays "everyone follows their own favourite plan" until
someone deviates, then switches every token to the deviant's punishment
plan. The profile can be realized positionally iff, at every reachable
noncapture state, each cop's own-game optimal move set meets the robber's
capture-time-optimal set:

    positional_exists  <=>  for all m in {1..N-1} and reachable noncapture s:
                            opt_game_m(s) intersects opt_capture_time(s)
    nonpositional_exists <=> some such opt_game_m(s) is not a subset of
                            opt_capture_time(s)

(The robber's own game m = N is skipped: it *is* the capture-time game, so
its condition holds identically — the test suite re-derives this instead of
assuming it.) Both existence questions reduce to these per-state set tests
because the optimal strategy sets of all games involved are exactly the
products of their per-state arg-opt sets. At least one of the two booleans
is always true.

Verdicts only ever use full arg-opt sets. Concrete tables (for simulation)
use the canonical tie-break: the move with the lowest target vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arena import (
    DEFAULT_MAX_STATES,
    INFINITY,
    Arena,
    GameParams,
    Play,
    State,
    _flood,
    build_arena,
    reachable_noncapture,
)
from .crsolver import CrSolution, solve_capture_time
from .errors import IllegalMoveError, ValidationError
from .graphs import Graph
from .scarsolver import GameSolution, solve_game


@dataclass(frozen=True)
class PositionalityVerdict:
    n_players: int
    gamma: Fraction
    epsilon: Fraction
    s0: State
    positional_exists: bool
    nonpositional_exists: bool
    # (mover n, game m, state) for every reachable state where cop m's
    # optimal set misses the capture-time-optimal set entirely
    witnesses: tuple[tuple[int, int, State], ...]


def _state_tests(
    arena: Arena, cr: CrSolution, games: dict[int, GameSolution]
) -> tuple[dict[int, np.ndarray], dict[int, np.ndarray]]:
    """Per-state outcomes of the two set tests for every cop game m:
    meets[m][i] — cop m's optimal edge set at state i intersects the
    capture-time-optimal set; inside[m][i] — it is contained in it.
    Capture rows are vacuously True. Start-independent."""
    rows = np.repeat(np.arange(arena.n_states), np.diff(arena.offsets))
    cr_keep = cr.edge_opt
    nc = ~arena.capture_mask
    meets: dict[int, np.ndarray] = {}
    inside: dict[int, np.ndarray] = {}
    for m, sol in games.items():
        keep = sol.edge_opt
        met = np.bincount(rows[keep & cr_keep], minlength=arena.n_states)
        opt = np.bincount(rows[keep], minlength=arena.n_states)
        meets[m] = ~nc | (met > 0)
        inside[m] = ~nc | (met == opt)
    return meets, inside


def _verdict(
    arena: Arena,
    tests: tuple[dict[int, np.ndarray], dict[int, np.ndarray]],
    params: GameParams,
    s0: State,
    reachable: np.ndarray,
) -> PositionalityVerdict:
    meets, inside = tests
    fail_pairs: list[tuple[int, int]] = []
    nonpositional = False
    for m in sorted(meets):
        fail_pairs.extend((int(i), m) for i in reachable[~meets[m][reachable]])
        if not inside[m][reachable].all():
            nonpositional = True
    fail_pairs.sort()
    witnesses = tuple(
        (arena.mover_of(i), m, arena.state_of(i)) for i, m in fail_pairs
    )
    positional = not fail_pairs
    assert positional or nonpositional, "a trigger profile always exists"
    return PositionalityVerdict(
        params.n_players,
        params.gamma,
        params.epsilon,
        s0,
        positional,
        nonpositional,
        witnesses,
    )


def solve_all_games(arena: Arena, params: GameParams) -> dict[int, GameSolution]:
    """One discounted solve per cop, shared by every start-state query."""
    return {m: solve_game(arena, m, params) for m in range(1, arena.n_players)}


def check_positionality(arena: Arena, s0: State, params: GameParams) -> PositionalityVerdict:
    cr = solve_capture_time(arena)
    games = solve_all_games(arena, params)
    tests = _state_tests(arena, cr, games)
    return _verdict(arena, tests, params, s0, reachable_noncapture(arena, s0))


def check_positionality_many(
    arena: Arena, params: GameParams, starts: list[State]
) -> list[PositionalityVerdict]:
    """check_positionality over many starts, with the games solved once and
    the per-start questions answered by two backward reachability sweeps
    (can this start reach a state failing the intersection / subset test?).
    Verdict booleans are exact; witness tuples are left empty here — query a
    single start when the offending states themselves are wanted."""
    cr = solve_capture_time(arena)
    games = solve_all_games(arena, params)
    meets, inside = _state_tests(arena, cr, games)
    all_meet = np.logical_and.reduce([meets[m] for m in sorted(meets)])
    all_inside = np.logical_and.reduce([inside[m] for m in sorted(inside)])
    pred_offsets, pred_targets = arena.predecessors()
    sees_fail = _flood(pred_offsets, pred_targets, ~all_meet, arena.capture_mask)
    sees_loose = _flood(pred_offsets, pred_targets, ~all_inside, arena.capture_mask)
    out = []
    for s0 in starts:
        idx = arena.index(s0)
        if arena.capture_mask[idx]:
            raise ValidationError("start states must be noncapture")
        positional = not bool(sees_fail[idx])
        nonpositional = bool(sees_loose[idx])
        assert positional or nonpositional, "a trigger profile always exists"
        out.append(
            PositionalityVerdict(
                params.n_players,
                params.gamma,
                params.epsilon,
                s0,
                positional,
                nonpositional,
                (),
            )
        )
    return out


def scan_region(
    g: Graph,
    n_players: int,
    s0: State,
    gamma_grid: list[Fraction],
    epsilon_grid: list[Fraction],
    allow_wide_epsilon: bool = False,
    max_states: int = DEFAULT_MAX_STATES,
) -> list[PositionalityVerdict]:
    """One verdict per (epsilon, gamma) grid point, epsilon outermost, with
    the arena, the capture-time solution and the reachable set shared."""
    arena = build_arena(g, n_players, max_states)
    cr = solve_capture_time(arena)
    reach = reachable_noncapture(arena, arena.index(s0))
    out = []
    for eps in epsilon_grid:
        for gamma in gamma_grid:
            params = GameParams(n_players, gamma, eps, allow_wide_epsilon)
            games = solve_all_games(arena, params)
            tests = _state_tests(arena, cr, games)
            out.append(_verdict(arena, tests, params, s0, reach))
    return out


# ---------------------------------------------------------------------------
# concrete trigger profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriggerProfile:
    """Canonical move tables (state index -> successor index, noncapture
    states only). cooperative[s] is the mover's own-plan move; punishment[m]
    is the table everyone switches to once player m deviates (m = N for the
    robber, whose punishment plan is the capture-time game's)."""

    cooperative: dict[int, int]
    punishment: dict[int, dict[int, int]]


def build_trigger_profile(cr: CrSolution, games: dict[int, GameSolution]) -> TriggerProfile:
    arena = cr.arena
    n = arena.n_players
    if sorted(games) != list(range(1, n)):
        raise ValidationError(f"need one solved game per cop 1..{n - 1}")
    cooperative: dict[int, int] = {}
    punishment: dict[int, dict[int, int]] = {m: {} for m in range(1, n + 1)}
    for i in arena.noncapture_indices():
        i = int(i)
        mover = arena.mover_of(i)
        own = cr if mover == n else games[mover]
        cooperative[i] = int(own.opt_indices(i).min())
        for m in range(1, n):
            punishment[m][i] = int(games[m].opt_indices(i).min())
        punishment[n][i] = int(cr.opt_indices(i).min())
    return TriggerProfile(cooperative, punishment)


@dataclass(frozen=True)
class TriggerRun:
    """A simulated trigger play. switch_time is the 1-based move number of
    the first deviation (None if the play never left cooperative mode);
    punished_player is the deviant it reacted to."""

    play: Play
    switch_time: int | None
    punished_player: int | None


def simulate_trigger(
    arena: Arena,
    profile: TriggerProfile,
    s0: State | int,
    deviant: tuple[int, dict[int, int]] | None = None,
    max_steps: int | None = None,
) -> TriggerRun:
    """Run the trigger controller from s0, optionally replacing one player's
    moves with an alternative table. Everyone follows profile.cooperative
    until the deviant's chosen move first differs from it; from the next
    move on the others follow profile.punishment[deviant]. The deviant keeps
    playing its own table throughout."""
    idx = s0 if isinstance(s0, int) else arena.index(s0)
    if max_steps is None:
        max_steps = 4 * arena.n_states
    dev_player, dev_table = deviant if deviant is not None else (None, None)
    if dev_player is not None and not 1 <= dev_player <= arena.n_players:
        raise ValidationError(f"deviant player {dev_player} out of range")

    trail = [idx]
    punishing = False
    switch_time: int | None = None
    visited = {(False, idx)}
    cycled = False
    while not arena.capture_mask[trail[-1]] and len(trail) <= max_steps:
        cur = trail[-1]
        mover = arena.mover_of(cur)
        if dev_player is not None and mover == dev_player:
            nxt = int(dev_table[cur])
            lo, hi = arena.offsets[cur], arena.offsets[cur + 1]
            if nxt not in arena.targets[lo:hi]:
                raise IllegalMoveError(
                    f"{arena.state_of(nxt).literal()} is not a successor of "
                    f"{arena.state_of(cur).literal()}"
                )
            if not punishing and nxt != profile.cooperative[cur]:
                punishing = True
                switch_time = len(trail)  # this move's 1-based number
        elif punishing:
            nxt = profile.punishment[dev_player][cur]
        else:
            nxt = profile.cooperative[cur]
        trail.append(nxt)
        key = (punishing, nxt)
        if key in visited:
            cycled = True
            break
        visited.add(key)

    states = tuple(arena.state_of(i) for i in trail)
    last = trail[-1]
    if arena.capture_mask[last]:
        fin = states[-1]
        cops = frozenset(i + 1 for i, c in enumerate(fin.cops) if c == fin.robber)
        play = Play(states, len(trail) - 1, cops, cycled=False)
    else:
        play = Play(states, INFINITY, frozenset(), cycled=cycled)
    return TriggerRun(play, switch_time, dev_player if switch_time is not None else None)
