# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairing-graph cycle-type enumeration (hot kernel).

Semantically identical to ``_cycles_py.cycle_type_counts``: tally the
cycle types of the pairing multigraphs of all (2n)! permutations. The
permutations are generated in lexicographic order in place; each cycle
type is folded into an integer key in base n+1 and tallied through a tiny
linear-probe registry (there are only p(n) distinct types).
"""

cdef enum:
    MAX_N = 12          # (2n)! enumeration is far out of reach before keys overflow
    MAX_TYPES = 128     # p(12) = 77 partitions

cdef inline bint _next_perm(int* a, int m) noexcept:
    cdef int i = m - 2
    cdef int j, t, lo, hi
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = m - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    lo = i + 1
    hi = m - 1
    while lo < hi:
        t = a[lo]; a[lo] = a[hi]; a[hi] = t
        lo += 1
        hi -= 1
    return True


def cycle_type_counts(int n):
    """Tally pairing-graph cycle types over every permutation of 2n symbols.

    Returns a map exponent-vector -> count; counts sum to (2n)!.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return {(): 1}
    if n > MAX_N:
        raise ValueError(f"n too large for the compiled kernel (max {MAX_N})")

    cdef int m = 2 * n
    cdef int perm[2 * MAX_N]
    cdef int partner[2 * MAX_N]
    cdef int stamp[2 * MAX_N]
    cdef unsigned long long power[MAX_N + 1]
    cdef unsigned long long keys[MAX_TYPES]
    cdef long long counts[MAX_TYPES]
    cdef int ntypes = 0
    cdef int i, k, a, b, v, w, start, edges, tick
    cdef unsigned long long key, base

    base = <unsigned long long>(n + 1)
    power[0] = 1
    for i in range(1, n + 1):
        power[i] = power[i - 1] * base
    for i in range(m):
        perm[i] = i
        stamp[i] = 0
    tick = 0

    while True:
        for k in range(0, m, 2):
            a = perm[k]
            b = perm[k + 1]
            partner[a] = b
            partner[b] = a
        tick += 1
        key = 0
        for start in range(m):
            if stamp[start] == tick:
                continue
            v = start
            edges = 0
            while True:
                stamp[v] = tick
                w = v ^ 1
                stamp[w] = tick
                edges += 1
                v = partner[w]
                edges += 1
                if v == start:
                    break
            key += power[(edges >> 1) - 1]
        for i in range(ntypes):
            if keys[i] == key:
                counts[i] += 1
                break
        else:
            keys[ntypes] = key
            counts[ntypes] = 1
            ntypes += 1
        if not _next_perm(perm, m):
            break

    result = {}
    for i in range(ntypes):
        key = keys[i]
        jvec = []
        for k in range(n):
            jvec.append(key % base)
            key //= base
        result[tuple(jvec)] = counts[i]
    return result
