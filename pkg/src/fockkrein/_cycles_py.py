"""Pure-Python pairing-graph cycle-type enumeration (fallback backend).

For a permutation of {0, .., 2n-1}, the pairing multigraph has the fixed
matching edges (2k, 2k+1) and the permuted matching edges
(perm[2k], perm[2k+1]). Two perfect matchings decompose into alternating
cycles of even edge count; the cycle type counts cycles by half their edge
number. The compiled backend in ``_cycles_cy`` implements the identical
walk; this module is the reference implementation and the import-time
fallback.
"""

from itertools import permutations


def pairing_cycle_type(perm) -> tuple[int, ...]:
    """Cycle type (j_1, .., j_n) of one pairing multigraph; j_k counts
    cycles with 2k edges, so sum k*j_k = n."""
    m = len(perm)
    if m % 2 != 0:
        raise ValueError("permutation must act on an even number of symbols")
    if sorted(perm) != list(range(m)):
        raise ValueError("not a permutation of 0..2n-1")
    n = m // 2
    partner = [0] * m
    for k in range(n):
        a, b = perm[2 * k], perm[2 * k + 1]
        partner[a] = b
        partner[b] = a
    counts = [0] * (n + 1)
    seen = [False] * m
    for start in range(m):
        if seen[start]:
            continue
        v = start
        edges = 0
        while True:
            seen[v] = True
            w = v ^ 1
            seen[w] = True
            edges += 1
            v = partner[w]
            edges += 1
            if v == start:
                break
        counts[edges // 2] += 1
    return tuple(counts[1:])


def cycle_type_counts(n: int) -> dict[tuple[int, ...], int]:
    """Tally pairing-graph cycle types over every permutation of 2n symbols.

    Returns a map exponent-vector -> count; counts sum to (2n)!.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return {(): 1}
    m = 2 * n
    counts: dict[tuple[int, ...], int] = {}
    partner = [0] * m
    stamp = [0] * m
    tick = 0
    for perm in permutations(range(m)):
        for k in range(0, m, 2):
            a, b = perm[k], perm[k + 1]
            partner[a] = b
            partner[b] = a
        tick += 1
        j = [0] * n
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
            j[edges // 2 - 1] += 1
        key = tuple(j)
        counts[key] = counts.get(key, 0) + 1
    return counts
