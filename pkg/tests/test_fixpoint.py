"""Both fixpoint backends must produce the same greatest fixpoint (the
Cython kernel sweeps in place, the numpy fallback sweeps synchronously;
uniqueness of the fixpoint makes the order irrelevant)."""

import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scar import NonConvergenceError, build_arena, builtin
from scar.fixpoint import INT_INF, backend_name, solve_layers


def cr_inputs(name, k, n):
    a = build_arena(builtin(name, k) if k else builtin(name), n)
    minimizing = ~a.robber_mover_mask()
    frozen = a.capture_mask.copy()
    init = np.zeros(a.n_states, dtype=np.int64)
    return a, minimizing, frozen, init


@pytest.mark.parametrize("name, k, n", [("path", 4, 3), ("cycle", 5, 3), ("petersen", None, 3)])
def test_backends_agree_on_capture_time_instances(name, k, n):
    a, minimizing, frozen, init = cr_inputs(name, k, n)
    got_np = solve_layers(a.offsets, a.targets, minimizing, frozen, init, backend="numpy")
    got_c = solve_layers(a.offsets, a.targets, minimizing, frozen, init, backend="compiled")
    assert np.array_equal(got_np, got_c)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_backends_agree_on_random_roles(data):
    """Random minimizing/frozen role assignments on a real successor table."""
    a = build_arena(builtin("cycle", 4), 3)
    n = a.n_states
    minimizing = np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)))
    frozen = np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)))
    frozen |= a.capture_mask  # keep at least the capture sinks frozen
    init = np.zeros(n, dtype=np.int64)
    got_np = solve_layers(a.offsets, a.targets, minimizing, frozen, init, backend="numpy")
    got_c = solve_layers(a.offsets, a.targets, minimizing, frozen, init, backend="compiled")
    assert np.array_equal(got_np, got_c)


def test_values_are_a_fixpoint_and_layered():
    a, minimizing, frozen, init = cr_inputs("path", 3, 3)
    vals = solve_layers(a.offsets, a.targets, minimizing, frozen, init)
    for i in range(a.n_states):
        succ = vals[a.succ_indices(i)]
        if frozen[i]:
            assert vals[i] == init[i]
            continue
        best = succ.min() if minimizing[i] else succ.max()
        want = INT_INF if best >= INT_INF else best + 1
        assert vals[i] == want


@pytest.mark.parametrize("backend", ["numpy", "compiled"])
def test_cap_zero_raises(backend):
    a, minimizing, frozen, init = cr_inputs("path", 3, 3)
    with pytest.raises(NonConvergenceError):
        solve_layers(a.offsets, a.targets, minimizing, frozen, init, cap=0, backend=backend)


def test_frozen_sinks_can_hold_inf():
    """A frozen INT_INF state must act as a dead end, not a target."""
    a, minimizing, frozen, init = cr_inputs("path", 3, 3)
    frozen2 = frozen.copy()
    init2 = init.copy()
    # freeze one noncapture state at INF: nobody may pass through it for free
    i = int(np.nonzero(~a.capture_mask)[0][0])
    frozen2[i] = True
    init2[i] = INT_INF
    vals = solve_layers(a.offsets, a.targets, minimizing, frozen2, init2)
    assert vals[i] == INT_INF


def test_pure_python_env_selects_numpy_backend():
    out = subprocess.run(
        [sys.executable, "-c", "from scar.fixpoint import backend_name; print(backend_name())"],
        env={"SCAR_PURE": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
        cwd="/",
    )
    assert out.stdout.strip() == "numpy"


def test_default_backend_is_compiled_here():
    # the wheel in this environment builds the extension; if this ever fails
    # the numpy fallback still keeps the package working
    assert backend_name() in ("compiled", "numpy")
