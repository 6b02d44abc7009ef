"""Capture-time game: values against the reference solver, optimal move
structure, capture attribution, and the classic simultaneous-move game."""

import math

import numpy as np
import pytest

from scar import (
    State,
    ValidationError,
    build_arena,
    builtin,
    capture_attribution,
    simulate,
    solve_capture_time,
)
from scar.crsolver import (
    build_classic_arena,
    classic_cop_number,
    classic_cop_win,
    classic_cop_win_placement,
    classic_values,
)
from scar.fixpoint import INT_INF

from oracles import capture_times, cell


@pytest.mark.parametrize(
    "name, k, n",
    [("path", 2, 3), ("path", 3, 3), ("cycle", 3, 3), ("cycle", 4, 3), ("star", 3, 3), ("path", 2, 4)],
)
def test_values_match_reference(name, k, n):
    g = builtin(name, k)
    a = build_arena(g, n)
    sol = solve_capture_time(a)
    want = capture_times(g, n)
    for s, t in want.items():
        got = sol.capture_time(State(*s))
        assert got == t, f"{s}: {got} != {t}"


def test_p2_hand_values():
    a = build_arena(builtin("path", 2), 3)
    sol = solve_capture_time(a)
    assert sol.capture_time(State((0, 0), 1, 1)) == 1
    assert sol.capture_time(State((0, 0), 1, 2)) == 1
    assert sol.capture_time(State((0, 0), 1, 3)) == 2


def test_cycles_are_always_caught_but_petersen_is_not():
    # two cops corner a robber on any cycle, even stacked on one vertex
    a = build_arena(builtin("cycle", 4), 3)
    sol = solve_capture_time(a)
    assert sol.capture_time(State((0, 0), 2, 3)) == 5
    # on the Petersen graph two cops never force capture
    ap = build_arena(builtin("petersen"), 3)
    solp = solve_capture_time(ap)
    assert solp.capture_time(State((0, 0), 6, 3)) == math.inf
    assert solp.capture_time(State((0, 5), 9, 1)) == math.inf


def test_cop_opt_moves_step_the_value_down():
    a = build_arena(builtin("path", 4), 3)
    sol = solve_capture_time(a)
    for i in range(a.n_states):
        if a.capture_mask[i] or sol.values[i] >= INT_INF:
            continue
        if a.mover_of(i) == 3:
            continue
        for j in sol.opt_indices(i):
            assert sol.values[int(j)] == sol.values[i] - 1


def test_robber_opt_moves_are_argmax():
    a = build_arena(builtin("cycle", 5), 3)
    sol = solve_capture_time(a)
    for i in np.nonzero(a.robber_mover_mask() & ~a.capture_mask)[0]:
        succ = a.succ_indices(int(i))
        best = sol.values[succ].max()
        want = set(map(int, succ[sol.values[succ] == best]))
        assert set(map(int, sol.opt_indices(int(i)))) == want


def test_opt_moves_rejects_capture_states():
    a = build_arena(builtin("path", 2), 3)
    sol = solve_capture_time(a)
    with pytest.raises(ValidationError):
        sol.opt_indices(a.index(State((1, 0), 1, 1)))


def test_greedy_play_realizes_the_capture_time():
    """Following lowest-target optimal moves reproduces T-hat exactly."""
    for name, k in (("path", 3), ("path", 4), ("cycle", 3), ("star", 3)):
        g = builtin(name, k)
        a = build_arena(g, 3)
        sol = solve_capture_time(a)
        table = {
            int(i): int(sol.opt_indices(int(i)).min())
            for i in np.nonzero(~a.capture_mask)[0]
        }
        for i in np.nonzero(~a.capture_mask)[0]:
            t = sol.capture_time(int(i))
            play = simulate(a, int(i), table)
            assert play.capture_time == t


def test_attribution_on_paths():
    a = build_arena(builtin("path", 3), 3)
    sol = solve_capture_time(a)
    # cop 1 steps 0->1, cop 2 waits, the robber is stuck at 2, cop 1 lands:
    # four single-token moves, always credited to cop 1
    cop, t = capture_attribution(sol, State((0, 0), 2, 1))
    assert (cop, t) == (1, 4)
    cop, t = capture_attribution(sol, State((0, 2), 1, 2))
    assert t == 1
    assert cop == 2  # cop 2 is adjacent and moves now


def test_attribution_rejects_bad_queries():
    a = build_arena(builtin("petersen"), 3)
    sol = solve_capture_time(a)
    with pytest.raises(ValidationError):
        capture_attribution(sol, State((0, 0), 0, 1))  # capture state
    with pytest.raises(ValidationError):
        capture_attribution(sol, State((0, 0), 6, 3))  # robber escapes


def test_attribution_never_ambiguous_on_suite(suite_graphs):
    for name in ("p2", "p3", "p4", "c3", "c4", "c5", "k3", "k4", "s3", "tail_cycle"):
        a = build_arena(suite_graphs[name], 3)
        sol = solve_capture_time(a)
        sol.capturer_table()  # raises UniquenessViolationError on ambiguity


def test_attribution_consistent_with_greedy_play(suite_graphs):
    a = build_arena(suite_graphs["tail_cycle"], 3)
    sol = solve_capture_time(a)
    table = {
        int(i): int(sol.opt_indices(int(i)).min())
        for i in np.nonzero(~a.capture_mask)[0]
    }
    finite = sol.finite_mask() & ~a.capture_mask
    for i in np.nonzero(finite)[0]:
        cop, t = capture_attribution(sol, int(i))
        play = simulate(a, int(i), table)
        assert play.capture_time == t
        assert play.capturing_cops == {cop}


# -- classic (simultaneous relocation) game ----------------------------------


def test_classic_arena_shape():
    g = builtin("path", 3)
    ca = build_classic_arena(g, 1)
    assert ca.n_states == 3 * 3 * 2
    idx = ca.index((1,), 2, 0)
    assert ca.cop_turn[idx]


@pytest.mark.parametrize(
    "name, k, want",
    [
        ("path", 5, 1),
        ("cycle", 3, 1),
        ("complete", 4, 1),
        ("star", 3, 1),
        ("cycle", 4, 2),
        ("cycle", 6, 2),
        ("petersen", None, 3),
    ],
)
def test_classic_cop_numbers(name, k, want):
    g = builtin(name, k) if k else builtin(name)
    assert classic_cop_number(g) == want


def test_classic_universal_and_placement_agree_on_suite(suite_graphs):
    """Universal winning implies winning after choosing a start; on these
    graphs the two notions coincide for every k."""
    for name in ("p3", "c4", "k3", "s3", "tail_cycle"):
        g = suite_graphs[name]
        for k in (1, 2):
            universal = classic_cop_win(g, k)
            placed = classic_cop_win_placement(g, k)
            assert universal == placed


def test_classic_cop_number_inf_when_k_max_too_small():
    assert classic_cop_number(builtin("petersen"), k_max=2) == math.inf
