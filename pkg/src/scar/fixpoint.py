"""Integer min-max layer fixpoint over a CSR successor table.

One routine serves every reachability-flavoured solve in the package:

    val[s] = init[s]                          if frozen[s]
    val[s] = 1 + min over successors          if minimizing[s]
    val[s] = 1 + max over successors          otherwise

iterated from "all unknown = INT_INF" down to its greatest fixpoint. A state
ends up finite exactly when the min-side can force the play into a frozen
zero state, and the finite value is the number of token moves it needs
against worst-case max-side play.

Instantiations: capture-time solve (cops minimize), coalition attractors
(coalition minimizes, everyone else maximizes), guarantee tests on restricted
move tables, and the classic simultaneous-move game.

Two interchangeable backends: a Cython kernel (built at install time) and a
vectorized numpy fallback. Set SCAR_PURE=1 to force the fallback; both return
identical arrays (greatest fixpoints are unique, whatever the sweep order).
"""

from __future__ import annotations

import os

import numpy as np

from .errors import NonConvergenceError

INT_INF = 2**62

_BACKEND = "numpy"
if not os.environ.get("SCAR_PURE"):
    try:
        from . import _ckernel  # compiled at install time; optional

        _BACKEND = "compiled"
    except ImportError:
        _ckernel = None
else:  # pragma: no cover - exercised via subprocess in tests
    _ckernel = None


def backend_name() -> str:
    return _BACKEND


def _rounds_numpy(offsets, targets, minimizing, frozen, vals, cap):
    seg_starts = offsets[:-1]
    active = ~frozen
    for rounds in range(1, cap + 1):
        sv = vals[targets]
        lo = np.minimum.reduceat(sv, seg_starts)
        hi = np.maximum.reduceat(sv, seg_starts)
        red = np.where(minimizing, lo, hi)
        new = np.where(red >= INT_INF, INT_INF, red + 1)
        new = np.where(active, new, vals)
        if (new > vals).any():
            raise AssertionError("fixpoint iteration increased a value")
        if np.array_equal(new, vals):
            return vals, rounds
        vals[:] = new
    return None, cap


def solve_layers(
    offsets: np.ndarray,
    targets: np.ndarray,
    minimizing: np.ndarray,
    frozen: np.ndarray,
    init: np.ndarray,
    cap: int | None = None,
    backend: str | None = None,
) -> np.ndarray:
    """Run the fixpoint; returns the int64 value array (INT_INF = never).

    `frozen` states keep their `init` value (targets get 0, dead sinks get
    INT_INF); all other entries of `init` are ignored and start at INT_INF.
    """
    n = len(minimizing)
    vals = np.where(frozen, init, INT_INF).astype(np.int64)
    if cap is None:
        cap = n + 2
    use = backend or _BACKEND
    if use == "compiled" and _ckernel is not None:
        rounds = _ckernel.minmax_rounds(
            np.ascontiguousarray(offsets, dtype=np.int64),
            np.ascontiguousarray(targets, dtype=np.int64),
            np.ascontiguousarray(minimizing, dtype=np.uint8),
            np.ascontiguousarray(frozen, dtype=np.uint8),
            vals,
            cap,
            INT_INF,
        )
        if rounds == -1:
            raise NonConvergenceError(f"no fixpoint within {cap} sweeps")
        if rounds == -2:  # pragma: no cover - kernel self-check
            raise AssertionError("fixpoint iteration increased a value")
        return vals
    out, rounds = _rounds_numpy(offsets, targets, minimizing.astype(bool), frozen.astype(bool), vals, cap)
    if out is None:
        raise NonConvergenceError(f"no fixpoint within {cap} rounds")
    return out
