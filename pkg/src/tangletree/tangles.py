"""Tangles: axiom checking, enumeration by order, maximality, distinguishers.

A tangle of order ``k + 1`` is stored as the sorted tuple of its small
sides, one for every separation of order at most ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

from . import _kernels
from .connectivity import ConnectivitySystem, indices, popcount
from .separations import Separation


@dataclass(frozen=True, order=True)
class Tangle:
    order: int
    small_sides: tuple[int, ...]

    @cached_property
    def small(self) -> frozenset[int]:
        return frozenset(self.small_sides)

    def is_small(self, side: int) -> bool:
        return side in self.small

    def orients(self, sep: Separation) -> bool:
        return sep.order < self.order

    def is_big(self, side: int, full: int) -> bool:
        return (full ^ side) in self.small

    def __repr__(self):
        return f"Tangle(order={self.order}, small={[indices(s) for s in self.small_sides]})"


class Verdict(NamedTuple):
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def is_tangle(system: ConnectivitySystem, order: int, small_sides: Iterable[int],
              allow_trivial: bool = False) -> Verdict:
    """Check the tangle axioms for a proposed set of small sides.

    On rejection the verdict carries a witness: the offending side, the
    separation left unoriented or oriented twice, or a covering triple.
    """
    full = system.full
    k = order - 1
    smalls = sorted(set(small_sides))
    small = set(smalls)
    for s in smalls:
        if not 0 <= s <= full:
            return Verdict(False, "not a side", (s,))
        if system.order(s) > k:
            return Verdict(False, "side of a separation above the tangle's domain", (s,))
    table = system.order_table()
    for a in np.nonzero(table <= k)[0]:
        a = int(a)
        b = full ^ a
        if a > b:
            continue
        if a in small and b in small:
            return Verdict(False, "both sides small", (a, b))
        if a not in small and b not in small:
            return Verdict(False, "separation not oriented", (a, b))
    arr = np.array(smalls, dtype=np.int64)
    for i, s in enumerate(smalls):
        if _kernels.covers(arr, i + 1, s, full):
            return Verdict(False, "three small sides cover the ground set",
                           _covering_triple(smalls[: i + 1], s, full))
    if not allow_trivial:
        for s in smalls:
            if popcount(full ^ s) == 1:
                return Verdict(False, "small side is the complement of a single element",
                               (s, full ^ s))
    return Verdict(True)


def _covering_triple(smalls, s, full):
    for i, x in enumerate(smalls):
        for y in smalls[i:]:
            if s | x | y == full:
                return tuple(sorted((x, y, s)))
    raise AssertionError("covers() reported a cover that does not exist")


def _bipartitions(table: np.ndarray, full: int, lo, hi) -> list[int]:
    """Representatives (smaller mask) of bipartitions with ``lo <= order <= hi``."""
    masks = np.arange(len(table), dtype=np.int64)
    keep = (masks < (full ^ masks)) & (table <= hi)
    if lo is not None:
        keep &= table >= lo
    return [int(m) for m in masks[keep]]


def _extend(base: tuple[int, ...], reps: list[int], full: int,
            allow_trivial: bool) -> list[tuple[int, ...]]:
    """All ways to orient ``reps`` on top of the small sides ``base``.

    Depth-first over ``reps`` in order; a side may be declared small when
    it does not, with at most two small sides so far, cover the ground
    set. Orientations forced by containment show up as covers, so no
    branch is cut that could still complete.
    """
    m = len(reps)
    smalls = np.zeros(len(base) + m, dtype=np.int64)
    smalls[: len(base)] = base
    count = len(base)
    out = []

    def admissible(side):
        if not allow_trivial and popcount(full ^ side) == 1:
            return False
        return not _kernels.covers(smalls, count, side, full)

    taken: list[int] = []
    i, start = 0, 0
    while True:
        if i == m:
            out.append(tuple(sorted(smalls[:count].tolist())))
            placed = False
        else:
            placed = False
            for c in range(start, 2):
                side = reps[i] if c == 0 else full ^ reps[i]
                if admissible(side):
                    smalls[count] = side
                    count += 1
                    taken.append(c)
                    i, start = i + 1, 0
                    placed = True
                    break
        if not placed:
            if not taken:
                break
            c = taken.pop()
            count -= 1
            i, start = i - 1, c + 1
    return sorted(out)


class TangleCatalog:
    """All tangles of a system, grouped by order, with maximality flags."""

    def __init__(self, system: ConnectivitySystem, levels: dict[int, list[Tangle]]):
        self.system = system
        self.levels = levels
        self.tangles: list[Tangle] = [t for k in sorted(levels) for t in levels[k]]
        self._index = {t: i for i, t in enumerate(self.tangles)}
        self.maximal_flags = self._flag_maximal()

    def _flag_maximal(self) -> list[bool]:
        flags = [True] * len(self.tangles)
        orders = sorted(self.levels)
        for k in orders:
            for t in self.levels.get(k + 1, ()):
                low = Tangle(k, tuple(s for s in t.small_sides if self.system.order(s) <= k - 1))
                if low in self._index:
                    flags[self._index[low]] = False
        return flags

    def __len__(self):
        return len(self.tangles)

    def __iter__(self):
        return iter(self.tangles)

    def index(self, t: Tangle) -> int:
        return self._index[t]

    def is_maximal(self, t: Tangle) -> bool:
        return self.maximal_flags[self._index[t]]

    def maximal(self) -> list[Tangle]:
        return [t for t, f in zip(self.tangles, self.maximal_flags) if f]

    def counts(self) -> dict[int, int]:
        return {k: len(v) for k, v in sorted(self.levels.items()) if v}


def _levels(system: ConnectivitySystem, max_order=None, allow_trivial=False):
    system.check_cap()
    table = system.order_table()
    full = system.full
    top = int(table.max()) + 1
    levels: dict[int, list[Tangle]] = {}
    current = [Tangle(1, t) for t in _extend((), _bipartitions(table, full, None, 0), full,
                                              allow_trivial)]
    k = 1
    while current:
        levels[k] = current
        if k == max_order or k > top:
            break
        reps = _bipartitions(table, full, k, k)
        nxt = []
        for t in current:
            nxt.extend(Tangle(k + 1, s) for s in _extend(t.small_sides, reps, full, allow_trivial))
        current = sorted(nxt)
        k += 1
    return levels


def enumerate_tangles(system: ConnectivitySystem, order: int,
                      allow_trivial: bool = False) -> list[Tangle]:
    """All tangles of the given order, canonically sorted.

    Built by extending each tangle of the previous order, since every tangle
    restricts to a tangle of each lower order.
    """
    if order < 1:
        raise ValueError("tangle order must be at least 1")
    return _levels(system, order, allow_trivial).get(order, [])


def all_tangles(system: ConnectivitySystem, allow_trivial: bool = False) -> TangleCatalog:
    """Tangles of every order, stopping at the first order that has none.

    With ``allow_trivial`` a tangle may orient every separation and then
    repeat forever at higher orders; enumeration stops one order above the
    largest separation order in that case.
    """
    return TangleCatalog(system, _levels(system, None, allow_trivial))


def includes(t_low: Tangle, t_high: Tangle) -> bool:
    return t_low.order <= t_high.order and t_low.small <= t_high.small


def distinguishes(s: Separation, t1: Tangle, t2: Tangle) -> bool:
    if s.order > min(t1.order, t2.order) - 1:
        return False
    return (s.a in t1.small and s.b in t2.small) or (s.b in t1.small and s.a in t2.small)


def min_distinguishing_order(system: ConnectivitySystem, t1: Tangle, t2: Tangle):
    """Least order of a separation distinguishing the two tangles, or ``None``."""
    full = system.full
    best = None
    for a in t1.small_sides:
        if (full ^ a) in t2.small:
            o = system.order(a)
            if best is None or o < best:
                best = o
    return best


def efficient_pool(system: ConnectivitySystem, catalog: TangleCatalog) -> dict[Separation, tuple[int, int]]:
    """Separations distinguishing some pair of tangles efficiently.

    Maps each oriented separation to the first (canonical) pair of catalog
    indices it distinguishes efficiently. Closed under inversion.
    """
    full = system.full
    pool: dict[Separation, tuple[int, int]] = {}
    for i, j in combinations(range(len(catalog)), 2):
        t1, t2 = catalog.tangles[i], catalog.tangles[j]
        m = min_distinguishing_order(system, t1, t2)
        if m is None:
            continue
        for a in t1.small_sides:
            if (full ^ a) in t2.small and system.order(a) == m:
                s = Separation(m, a, full ^ a)
                pool.setdefault(s, (i, j))
                pool.setdefault(s.inverse(), (i, j))
    return dict(sorted(pool.items()))
