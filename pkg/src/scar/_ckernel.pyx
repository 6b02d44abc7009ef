# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""In-place Gauss-Seidel sweeps for the integer min-max layer fixpoint.

Same greatest fixpoint as the numpy Jacobi fallback, usually in far fewer
passes because a sweep sees values already improved earlier in the sweep.
Returns the number of sweeps used, -1 if `cap` sweeps were not enough, -2 if
a value ever increased (which would mean a bug, not bad input).
"""


def minmax_rounds(
    const long long[::1] offsets,
    const long long[::1] targets,
    const unsigned char[::1] minimizing,
    const unsigned char[::1] frozen,
    long long[::1] vals,
    long long cap,
    long long inf,
):
    cdef Py_ssize_t n = vals.shape[0]
    cdef Py_ssize_t i, j
    cdef long long lo, hi, best, v, newv, rnd
    cdef bint changed
    for rnd in range(1, cap + 1):
        changed = 0
        for i in range(n):
            if frozen[i]:
                continue
            lo = offsets[i]
            hi = offsets[i + 1]
            best = vals[targets[lo]]
            if minimizing[i]:
                for j in range(lo + 1, hi):
                    v = vals[targets[j]]
                    if v < best:
                        best = v
            else:
                for j in range(lo + 1, hi):
                    v = vals[targets[j]]
                    if v > best:
                        best = v
            if best >= inf:
                newv = inf
            else:
                newv = best + 1
            if newv < vals[i]:
                vals[i] = newv
                changed = 1
            elif newv > vals[i]:
                return -2
        if not changed:
            return rnd
    return -1
