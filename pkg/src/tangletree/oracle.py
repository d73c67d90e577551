"""Definitional brute force for tangles, kept independent of the engine.

No order tables, no kernels, no reuse of lower-order tangles: every order
is searched from scratch over all bipartitions of order at most ``k``
taken in ascending mask order, and a partial orientation is abandoned only
when the raw axioms already fail on it (a violated axiom involves at most
three sides, so it stays violated in every completion).
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .connectivity import ConnectivitySystem
from .errors import ResourceError

ORACLE_CAP = 8


def _violates(smalls: list[int], new: int, full: int, allow_trivial: bool) -> bool:
    if not allow_trivial and bin(full ^ new).count("1") == 1:
        return True
    pool = smalls + [new]
    for x, y in combinations_with_replacement(pool, 2):
        if new | x | y == full:
            return True
    return False


def brute_force_tangles(system: ConnectivitySystem, order: int, allow_trivial: bool = False,
                        cap: int = ORACLE_CAP) -> set[tuple[int, ...]]:
    """Small-side sets of all tangles of ``order``, as sorted tuples."""
    if system.n > cap:
        raise ResourceError(f"oracle is limited to {cap} elements, input has {system.n}")
    full = system.full
    k = order - 1
    reps = [x for x in range(1 << system.n) if x < full ^ x and system.evaluate(x) <= k]
    found = set()

    def search(i, smalls):
        if i == len(reps):
            found.add(tuple(sorted(smalls)))
            return
        for side in (reps[i], full ^ reps[i]):
            if not _violates(smalls, side, full, allow_trivial):
                smalls.append(side)
                search(i + 1, smalls)
                smalls.pop()

    search(0, [])
    return found


def brute_force_catalog(system: ConnectivitySystem, allow_trivial: bool = False,
                        cap: int = ORACLE_CAP) -> dict[int, set[tuple[int, ...]]]:
    """Tangles of orders 1, 2, ... until an order has none.

    With ``allow_trivial`` the search stops once every bipartition is
    oriented.
    """
    top = max(system.evaluate(x) for x in range(1 << system.n)) + 1
    out = {}
    order = 1
    while True:
        level = brute_force_tangles(system, order, allow_trivial, cap)
        if not level:
            return out
        out[order] = level
        if order > top:
            return out
        order += 1


def brute_force_maximal(system: ConnectivitySystem, levels) -> set[tuple[int, tuple[int, ...]]]:
    """``(order, small sides)`` of tangles not included in any tangle of higher order."""
    out = set()
    for k, level in levels.items():
        higher = [set(t) for j, lv in levels.items() if j > k for t in lv]
        for t in level:
            if not any(set(t) <= h for h in higher):
                out.add((k, t))
    return out
