"""Compiled depth-first core of the short-code search.

Candidates are N-subsets of the right block, stored as int64 bitmasks and
addressed by their index in an ascending array.  Sets of candidates are
uint64 bitsets over those indices.  The search keeps, for the rows chosen so
far, the symmetric difference of every subset of them (``sums[i]`` for the
subset encoded by the bits of ``i``), so a new row only needs the subsets
that contain it.
"""

import numpy as np
from numba import njit

PAIRWISE, STRUCTURE, WEIGHT = 0, 1, 2


@njit(cache=True, inline="always")
def popcount(x):
    x = np.uint64(x)
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, inline="always")
def lowest_bit_index(word):
    low = word & (~word + np.uint64(1))
    return popcount(low - np.uint64(1))


@njit(cache=True)
def weight_ok(N, size, sym_weight):
    """Window test for the codeword of a row subset of ``size`` rows.

    Besides the codeword itself, the codeword obtained by adding the all-rows
    sum (weight N+1, empty right part) must also lie in the window unless the
    subset already is all N+1 rows.
    """
    w = size + sym_weight
    if w < N + 1 or w > 2 * N:
        return False
    if size <= N and (sym_weight < size or sym_weight > N - 1 + size):
        return False
    return True


@njit(cache=True)
def structure_ok(z, x, o, ground):
    a = popcount(z & x & ~o)
    b = popcount(z & x & o)
    c = popcount(z & o & ~x)
    d = popcount(z & ~(x | o) & ground)
    return a == c and b == d and abs(a - b) <= 1


@njit(cache=True)
def filter_level(N, cand, avail, pair_row, chosen, r, sums, structure, out, counts):
    """Keep the candidates in ``avail`` that stay admissible after row ``chosen[r]``.

    ``sums`` must already hold the 2^(r+1) subset sums including the new row.
    Eliminations are tallied per rule in ``counts``.  Returns survivors.
    """
    W = avail.shape[0]
    ground = (np.int64(1) << np.int64(2 * N - 1)) - 1
    x = chosen[r]
    half = 1 << r
    kept = 0
    for w in range(W):
        a0 = avail[w]
        word = a0 & pair_row[w]
        counts[PAIRWISE] += popcount(a0 & ~pair_row[w])
        outw = np.uint64(0)
        while word:
            k = w * 64 + lowest_bit_index(word)
            bit = np.uint64(1) << np.uint64(k & 63)
            word ^= bit
            z = cand[k]
            if structure:
                bad = False
                for q in range(r):
                    if not structure_ok(z, x, chosen[q], ground):
                        bad = True
                        break
                if bad:
                    counts[STRUCTURE] += 1
                    continue
            bad = False
            for i in range(half):
                s = sums[half + i] ^ z
                if not weight_ok(N, popcount(i) + 2, popcount(s)):
                    bad = True
                    break
            if bad:
                counts[WEIGHT] += 1
                continue
            outw |= bit
            kept += 1
        out[w] = outw
    return kept


@njit(cache=True)
def explore(N, cand, compat, index_of, prefix, avail0, lo, hi, structure, stop_first, max_keep):
    """Exhaust all completions of ``prefix`` whose next row index lies in [lo, hi).

    Rows after the prefix are taken in increasing candidate order.  Returns
    ``(nodes, counts, n_found, found)`` where ``found`` holds up to
    ``max_keep`` complete families in discovery order.
    """
    W = avail0.shape[0]
    r0 = prefix.shape[0]
    sums = np.zeros(1 << (N + 1), dtype=np.int64)
    chosen = np.zeros(N + 1, dtype=np.int64)
    for q in range(r0):
        chosen[q] = prefix[q]
        half = 1 << q
        for i in range(half):
            sums[half + i] = sums[i] ^ prefix[q]
    avail = np.zeros((N + 2, W), dtype=np.uint64)
    for w in range(W):
        avail[r0, w] = avail0[w]
    cursor = np.zeros(N + 2, dtype=np.int64)
    counts = np.zeros(3, dtype=np.int64)
    found = np.zeros((max(max_keep, 1), N + 1), dtype=np.int64)
    nodes = 0
    n_found = 0
    r = r0
    cursor[r0] = lo
    while r >= r0:
        need = N + 1 - r
        if need <= 2:
            X = sums[(1 << r) - 1]
            full = (1 << r) - 1
            start = lo if r == r0 else 0
            stop = hi if r == r0 else W * 64
            for w in range(W):
                word = avail[r, w]
                while word:
                    y = w * 64 + lowest_bit_index(word)
                    word ^= np.uint64(1) << np.uint64(y & 63)
                    if y < start or y >= stop:
                        continue
                    if need == 1:
                        if cand[y] != X:
                            continue
                        nodes += 1
                        if n_found < max_keep:
                            for q in range(r):
                                found[n_found, q] = chosen[q]
                            found[n_found, r] = cand[y]
                        n_found += 1
                        if stop_first:
                            return nodes, counts, n_found, found
                        continue
                    f = X ^ cand[y]
                    j = index_of[f] if f < index_of.shape[0] else -1
                    if j <= y or not ((avail[r, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)):
                        counts[WEIGHT] += 1
                        continue
                    ok = True
                    for i in range(1 << r):
                        s = sums[i] ^ X
                        if i == full:
                            continue
                        if not weight_ok(N, popcount(i) + 2, popcount(s)):
                            ok = False
                            break
                    if not ok:
                        counts[WEIGHT] += 1
                        continue
                    nodes += 2
                    if n_found < max_keep:
                        for q in range(r):
                            found[n_found, q] = chosen[q]
                        found[n_found, r] = cand[y]
                        found[n_found, r + 1] = f
                    n_found += 1
                    if stop_first:
                        return nodes, counts, n_found, found
            r -= 1
            continue

        y = -1
        c = cursor[r]
        w = c >> 6
        first = True
        while w < W:
            word = avail[r, w]
            if first:
                word &= ~((np.uint64(1) << np.uint64(c & 63)) - np.uint64(1))
                first = False
            if word:
                y = w * 64 + lowest_bit_index(word)
                break
            w += 1
        if y < 0 or (r == r0 and y >= hi):
            r -= 1
            continue
        cursor[r] = y + 1
        x = cand[y]
        nodes += 1
        half = 1 << r
        for i in range(half):
            sums[half + i] = sums[i] ^ x
        chosen[r] = x
        kept = filter_level(N, cand, avail[r], compat[y], chosen, r, sums, structure, avail[r + 1], counts)
        if kept < need - 1:
            continue
        r += 1
        cursor[r] = 0
    return nodes, counts, n_found, found
