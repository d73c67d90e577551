"""Hot inner loops over bitmask-encoded subsets of the ground set.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with identical results. The public names at the bottom of this
module are bound to the numba versions unless numba is missing or the
environment variable ``TANGLETREE_DISABLE_NUMBA`` is set to a true value
(``1``, ``true``, ``yes``). Both families stay importable under their
suffixed names so tests and benchmarks can compare them directly.

Masks are int64 with bit ``i`` standing for ground-set element ``i``.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_FLAG = os.environ.get("TANGLETREE_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")


def inverse_table(p):
    """Multiplicative inverses mod the prime ``p`` (entry 0 is unused)."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def graph_order_table_numpy(incidence, n):
    """Boundary size of every edge subset.

    ``incidence[v]`` is the mask of edges incident with vertex ``v``.
    Entry ``X`` of the result counts vertices meeting both ``X`` and its
    complement.
    """
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    rest = full ^ masks
    out = np.zeros(1 << n, dtype=np.int64)
    for inc in np.asarray(incidence, dtype=np.int64):
        out += ((masks & inc) != 0) & ((rest & inc) != 0)
    return out


def rank_table_numpy(matrix, p, chunk=4096):
    """GF(p) rank of every column subset, by batched elimination."""
    matrix = np.asarray(matrix, dtype=np.int64) % p
    r, n = matrix.shape
    inv = inverse_table(p)
    total = 1 << n
    out = np.zeros(total, dtype=np.int64)
    if r == 0 or n == 0:
        return out
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = (masks[:, None] >> shifts[None, :]) & 1
        work = matrix[None, :, :] * bits[:, None, :]
        used = np.zeros((len(masks), r), dtype=bool)
        for c in range(n):
            cand = (work[:, :, c] != 0) & ~used
            has = cand.any(axis=1)
            if not has.any():
                continue
            rows = np.nonzero(has)[0]
            piv = cand[rows].argmax(axis=1)
            pivot_rows = work[rows, piv, :]
            scale = inv[pivot_rows[:, c]]
            pivot_rows = (pivot_rows * scale[:, None]) % p
            factors = work[rows, :, c].copy()
            factors[np.arange(len(rows)), piv] = 0
            block = work[rows] - factors[:, :, None] * pivot_rows[:, None, :]
            block %= p
            block[np.arange(len(rows)), piv, :] = pivot_rows
            work[rows] = block
            used[rows, piv] = True
        out[start:start + len(masks)] = used.sum(axis=1)
    return out


def submodular_violations_numpy(table, n, limit):
    """Pairs ``X < Y`` with ``f(X) + f(Y) < f(X & Y) + f(X | Y)``."""
    table = np.asarray(table, dtype=np.int64)
    total = 1 << n
    ys = np.arange(total, dtype=np.int64)
    found = []
    for x in range(total - 1):
        y = ys[x + 1:]
        bad = table[x] + table[y] < table[x & y] + table[x | y]
        if bad.any():
            for yy in y[bad][: limit - len(found)]:
                found.append((x, int(yy)))
            if len(found) >= limit:
                break
    return np.array(found, dtype=np.int64).reshape(-1, 2)


def covers_numpy(smalls, count, side, full):
    """True if ``side`` together with at most two of ``smalls[:count]`` covers ``full``.

    Repetition is allowed, so ``side`` alone or with one other set counts.
    """
    if side == full:
        return True
    s = np.asarray(smalls[:count], dtype=np.int64)
    if count == 0:
        return False
    with_side = s | side
    if (with_side == full).any():
        return True
    return bool(((with_side[:, None] | s[None, :]) == full).any())


def nested_with_all_numpy(cands, members, full):
    """For each candidate side, whether it is nested with every member side."""
    a = np.asarray(cands, dtype=np.int64)[:, None]
    c = np.asarray(members, dtype=np.int64)[None, :]
    if c.shape[1] == 0:
        return np.ones(a.shape[0], dtype=bool)
    b = full ^ a
    d = full ^ c
    ok = ((a & d) == 0) | ((a & c) == 0) | ((b & d) == 0) | ((b & c) == 0)
    return ok.all(axis=1)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def graph_order_table_numba(incidence, n):
        total = 1 << n
        full = total - 1
        out = np.zeros(total, dtype=np.int64)
        for x in range(total):
            rest = full ^ x
            cnt = 0
            for v in range(incidence.shape[0]):
                inc = incidence[v]
                if (x & inc) != 0 and (rest & inc) != 0:
                    cnt += 1
            out[x] = cnt
        return out

    @njit(cache=True)
    def _rank_table_numba(matrix, p, inv):
        r, n = matrix.shape
        total = 1 << n
        out = np.zeros(total, dtype=np.int64)
        work = np.zeros((r, n), dtype=np.int64)
        for x in range(total):
            k = 0
            for j in range(n):
                if (x >> j) & 1:
                    for i in range(r):
                        work[i, k] = matrix[i, j]
                    k += 1
            rank = 0
            for c in range(k):
                if rank == r:
                    break
                piv = -1
                for i in range(rank, r):
                    if work[i, c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != rank:
                    for j in range(c, k):
                        tmp = work[piv, j]
                        work[piv, j] = work[rank, j]
                        work[rank, j] = tmp
                s = inv[work[rank, c]]
                for j in range(c, k):
                    work[rank, j] = (work[rank, j] * s) % p
                for i in range(rank + 1, r):
                    f = work[i, c]
                    if f != 0:
                        for j in range(c, k):
                            work[i, j] = (work[i, j] - f * work[rank, j]) % p
                rank += 1
            out[x] = rank
        return out

    def rank_table_numba(matrix, p):
        matrix = np.ascontiguousarray(np.asarray(matrix, dtype=np.int64) % p)
        return _rank_table_numba(matrix, np.int64(p), inverse_table(p))

    @njit(cache=True)
    def _submodular_violations_numba(table, n, limit):
        total = 1 << n
        out = np.zeros((limit, 2), dtype=np.int64)
        k = 0
        for x in range(total - 1):
            tx = table[x]
            for y in range(x + 1, total):
                if tx + table[y] < table[x & y] + table[x | y]:
                    out[k, 0] = x
                    out[k, 1] = y
                    k += 1
                    if k == limit:
                        return out
        return out[:k]

    def submodular_violations_numba(table, n, limit):
        table = np.ascontiguousarray(table, dtype=np.int64)
        return _submodular_violations_numba(table, n, limit)

    @njit(cache=True)
    def covers_numba(smalls, count, side, full):
        if side == full:
            return True
        for i in range(count):
            a = side | smalls[i]
            if a == full:
                return True
            for j in range(i, count):
                if (a | smalls[j]) == full:
                    return True
        return False

    @njit(cache=True)
    def _nested_with_all_numba(cands, members, full):
        out = np.ones(cands.shape[0], dtype=np.bool_)
        for i in range(cands.shape[0]):
            a = cands[i]
            b = full ^ a
            for j in range(members.shape[0]):
                c = members[j]
                d = full ^ c
                if (a & d) != 0 and (a & c) != 0 and (b & d) != 0 and (b & c) != 0:
                    out[i] = False
                    break
        return out

    def nested_with_all_numba(cands, members, full):
        return _nested_with_all_numba(
            np.asarray(cands, dtype=np.int64),
            np.asarray(members, dtype=np.int64),
            np.int64(full),
        )


if USE_NUMBA:
    graph_order_table = graph_order_table_numba
    rank_table = rank_table_numba
    submodular_violations = submodular_violations_numba
    covers = covers_numba
    nested_with_all = nested_with_all_numba
else:
    graph_order_table = graph_order_table_numpy
    rank_table = rank_table_numpy
    submodular_violations = submodular_violations_numpy
    covers = covers_numpy
    nested_with_all = nested_with_all_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
