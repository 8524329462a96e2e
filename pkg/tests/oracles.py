"""Brute-force reference implementations, deliberately independent of the library."""

import itertools

import numpy as np


def column(table, m, c):
    return [(v >> (m - 1 - c)) & 1 for v in table]


def four_point_affine(col):
    """f(u)^f(v)^f(u^v)^f(0) == 0 for all u, v  <=>  f is affine over GF(2)."""
    f = np.asarray(col, dtype=np.uint8)
    idx = np.arange(len(f))
    x = idx[:, None] ^ idx[None, :]
    return not np.any(f[:, None] ^ f[None, :] ^ f[x] ^ f[0])


def all_affine_columns(j):
    """Every affine function of j variables, as {column tuple: (a0, coeffs)}."""
    out = {}
    for a0 in (0, 1):
        for coeffs in itertools.product((0, 1), repeat=j):
            col = []
            for x in range(1 << j):
                v = a0
                for i, a in enumerate(coeffs):
                    v ^= a & (x >> (j - 1 - i)) & 1
                col.append(v)
            out[tuple(col)] = (a0, coeffs)
    return out


def gl_order(n):
    """Count invertible n x n matrices over GF(2) by row-reducing every matrix."""
    count = 0
    for rows in itertools.product(range(1 << n), repeat=n):
        rows = list(rows)
        rank = 0
        for bit in reversed(range(n)):
            pivot = next((r for r in range(rank, n) if rows[r] >> bit & 1), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for r in range(n):
                if r != rank and rows[r] >> bit & 1:
                    rows[r] ^= rows[rank]
            rank += 1
        count += rank == n
    return count


def wire_permutation_tables(n):
    """Tables of the n! gates that just reorder their input wires."""
    tables = set()
    for perm in itertools.permutations(range(n)):
        table = []
        for x in range(1 << n):
            bits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
            y = 0
            for i in perm:
                y = (y << 1) | bits[i]
            table.append(y)
        tables.add(tuple(table))
    return tables


def single_free_hits(table, n, m, want):
    """All (pattern, varied input, output) where the 1-input restriction equals ``want``.

    ``pattern`` spells the fixing in input order with 2 marking the free input.
    """
    hits = []
    for j in range(n):
        for rest in itertools.product((0, 1), repeat=n - 1):
            fixed = list(rest)
            words = []
            for xv in (0, 1):
                bits = fixed[:j] + [xv] + fixed[j:]
                words.append(table[int("".join(map(str, bits)), 2)])
            pattern = tuple(fixed[:j] + [2] + fixed[j:])
            for c in range(m):
                col = tuple((w >> (m - 1 - c)) & 1 for w in words)
                if col == want:
                    hits.append((pattern, j, c))
    return sorted(hits)
