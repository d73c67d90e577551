"""Building nested separation sets that distinguish all maximal tangles.

``greedy_extend`` keeps adding a pool separation that is nested with
everything chosen so far until none is left; any such maximal set
distinguishes every pair of maximal tangles efficiently, whatever the
order of choices. ``stratified_construct`` does the same one order at a
time, lowest first. ``prune_minimal`` then drops redundant tree edges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .connectivity import ConnectivitySystem
from .errors import PreconditionError
from .separations import Separation, is_nested
from .tangles import Tangle, TangleCatalog, distinguishes, efficient_pool, min_distinguishing_order


class NestedSet:
    """A symmetric, pairwise nested set of oriented separations.

    ``provenance`` maps every member to the pair of catalog indices it was
    recorded as distinguishing efficiently (``None`` when unknown).
    """

    def __init__(self, seps: Iterable[Separation] = (), provenance=None):
        self.provenance: dict[Separation, tuple[int, int] | None] = {}
        provenance = provenance or {}
        for s in seps:
            self.add(s, provenance.get(s, provenance.get(s.inverse())))

    def add(self, s: Separation, prov=None):
        self.provenance[s] = prov
        self.provenance[s.inverse()] = prov

    def discard_bipartition(self, s: Separation):
        self.provenance.pop(s, None)
        self.provenance.pop(s.inverse(), None)

    def copy(self) -> "NestedSet":
        out = NestedSet()
        out.provenance = dict(self.provenance)
        return out

    def __contains__(self, s):
        return s in self.provenance

    def __iter__(self):
        return iter(sorted(self.provenance))

    def __len__(self):
        return len(self.provenance)

    def __eq__(self, other):
        if isinstance(other, NestedSet):
            return set(self.provenance) == set(other.provenance)
        return NotImplemented

    def __repr__(self):
        return f"NestedSet({len(self.bipartitions())} bipartitions)"

    def seps(self) -> set[Separation]:
        return set(self.provenance)

    def bipartitions(self) -> list[Separation]:
        """One orientation per bipartition (smaller first mask), canonically sorted."""
        return sorted({s.representative() for s in self.provenance})

    def is_nested(self) -> bool:
        b = self.bipartitions()
        return all(is_nested(s, t) for i, s in enumerate(b) for t in b[i + 1:])


def _as_nested_set(seps) -> NestedSet:
    if seps is None:
        return NestedSet()
    if isinstance(seps, NestedSet):
        return seps.copy()
    return NestedSet(seps)


def _check_seed(seed: NestedSet, pool):
    if not seed.is_nested():
        raise PreconditionError("seed separations are not pairwise nested")
    for s in seed:
        if s not in pool:
            raise PreconditionError(f"seed separation {s!r} distinguishes no pair of tangles efficiently")
        if seed.provenance[s] is None:
            seed.provenance[s] = pool[s]


def _addable(system, pool_seps, chosen: NestedSet) -> list[Separation]:
    cands = [s for s in pool_seps if s not in chosen]
    if not cands:
        return []
    members = np.array([s.a for s in chosen.bipartitions()], dtype=np.int64)
    ok = _kernels.nested_with_all(np.array([s.a for s in cands], dtype=np.int64),
                                  members, system.full)
    return [s for s, keep in zip(cands, ok) if keep]


def greedy_extend(system: ConnectivitySystem, catalog: TangleCatalog, seed=None,
                  random_seed: int | None = None, pool=None,
                  observer: Callable[[NestedSet, list[Separation]], None] | None = None) -> NestedSet:
    """Extend ``seed`` to a maximal nested subset of the efficient pool.

    Each round adds one addable pool separation with its inverse: the first
    in canonical order, or, when ``random_seed`` is given, one drawn
    uniformly by a generator seeded with it. ``observer`` is called before
    every choice with the current set and the addable candidates (an empty
    list on the final call).
    """
    if pool is None:
        pool = efficient_pool(system, catalog)
    chosen = _as_nested_set(seed)
    _check_seed(chosen, pool)
    rng = random.Random(random_seed) if random_seed is not None else None
    pool_seps = sorted(pool)
    while True:
        addable = _addable(system, pool_seps, chosen)
        if observer is not None:
            observer(chosen, addable)
        if not addable:
            return chosen
        s = addable[0] if rng is None else rng.choice(addable)
        chosen.add(s, pool[s])


def stratified_construct(system: ConnectivitySystem, catalog: TangleCatalog, pool=None) -> NestedSet:
    """Lowest order first: exhaust addable pool separations of order 0, then 1, ..."""
    if pool is None:
        pool = efficient_pool(system, catalog)
    chosen = NestedSet()
    for k in sorted({s.order for s in pool}):
        stratum = sorted(s for s in pool if s.order == k)
        while True:
            addable = _addable(system, stratum, chosen)
            if not addable:
                break
            chosen.add(addable[0], pool[addable[0]])
    return chosen


@dataclass(frozen=True)
class PairCheck:
    i: int
    j: int
    min_order: int | None
    witness: Separation | None  # an efficient distinguisher from the set, if any
    distinguished: bool  # some member distinguishes the pair at all

    @property
    def efficient(self) -> bool:
        return self.witness is not None


@dataclass
class DistinguishReport:
    pairs: list[PairCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.efficient for p in self.pairs)

    def failures(self) -> list[PairCheck]:
        return [p for p in self.pairs if not p.efficient]


def maximal_pairs(catalog: TangleCatalog):
    """``(i, j, min_order)`` for every unordered pair of maximal tangles."""
    idx = [catalog.index(t) for t in catalog.maximal()]
    out = []
    for i, j in combinations(idx, 2):
        t1, t2 = catalog.tangles[i], catalog.tangles[j]
        out.append((i, j, min_distinguishing_order(catalog.system, t1, t2)))
    return out


def _check_pairs(catalog, seps, pairs) -> DistinguishReport:
    report = DistinguishReport()
    seps = sorted(seps)
    for i, j, m in pairs:
        t1, t2 = catalog.tangles[i], catalog.tangles[j]
        hits = [s for s in seps if distinguishes(s, t1, t2)]
        eff = next((s for s in hits if s.order == m), None)
        report.pairs.append(PairCheck(i, j, m, eff, bool(hits)))
    return report


def verify_distinguishing(catalog: TangleCatalog, seps) -> DistinguishReport:
    """Check that every pair of maximal tangles has an efficient distinguisher in ``seps``."""
    return _check_pairs(catalog, seps, maximal_pairs(catalog))


def prune_minimal(catalog: TangleCatalog, seps) -> NestedSet:
    """Drop bipartitions, in canonical order, while every maximal pair stays efficiently distinguished.

    One pass suffices: a bipartition that cannot be dropped from a set can
    not be dropped from any subset either.
    """
    chosen = _as_nested_set(seps)
    pairs = maximal_pairs(catalog)
    report = _check_pairs(catalog, chosen.seps(), pairs)
    if not report.passed:
        bad = report.failures()[0]
        raise PreconditionError(
            f"maximal tangles {bad.i} and {bad.j} are not efficiently distinguished"
        )
    for b in chosen.bipartitions():
        trial = chosen.copy()
        trial.discard_bipartition(b)
        if _check_pairs(catalog, trial.seps(), pairs).passed:
            chosen = trial
    return chosen


def undistinguished_pairs(catalog: TangleCatalog, seps) -> list[tuple[Tangle, Tangle, int]]:
    """Maximal pairs lacking an efficient distinguisher, with their minimum order."""
    return [(catalog.tangles[p.i], catalog.tangles[p.j], p.min_order)
            for p in verify_distinguishing(catalog, seps).failures()]
