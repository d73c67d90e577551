"""Ground sets and symmetric submodular order functions.

A side of a separation is an ``int`` bitmask over the ground set: bit ``i``
is element ``i`` in input order. Three order functions are built in:

* graph boundary: elements are edges, the order of a side is the number of
  vertices meeting edges on both sides;
* matroid connectivity ``r(X) + r(E - X) - r(E)`` for a matrix over GF(p);
* an explicit table listing all ``2**n`` values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import InputError, ResourceError

DEFAULT_CAP = 16
MAX_PRIME = 251


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def indices(mask: int) -> list[int]:
    """Element indices in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements) -> int:
    m = 0
    for i in elements:
        m |= 1 << i
    return m


class GroundSet:
    """A finite ground set of ``n >= 1`` labelled elements."""

    def __init__(self, labels: Sequence[str]):
        labels = [str(x) for x in labels]
        if not labels:
            raise InputError("ground set must contain at least one element")
        if len(set(labels)) != len(labels):
            raise InputError("element labels must be pairwise distinct")
        self.labels = tuple(labels)
        self.n = len(labels)
        self.full = (1 << self.n) - 1

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"GroundSet(n={self.n})"

    def complement(self, side: int) -> int:
        return self.full ^ side

    def contains(self, side: int) -> bool:
        return 0 <= side <= self.full

    def side(self, elements) -> int:
        """Mask for an iterable of element indices."""
        m = mask_of(elements)
        if not self.contains(m):
            raise InputError(f"element index out of range for n={self.n}")
        return m


class ConnectivitySystem:
    """A ground set with a memoized symmetric submodular order oracle.

    Subclasses implement :meth:`evaluate` (direct, uncached) and may
    override :meth:`_compute_table` with a vectorized kernel.
    """

    kind = "abstract"

    def __init__(self, ground: GroundSet, cap: int = DEFAULT_CAP):
        self.ground = ground
        self.cap = cap
        self._memo: dict[int, int] = {}
        self._table: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> int:
        return self.ground.full

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"

    def check_cap(self, cap: int | None = None):
        limit = self.cap if cap is None else cap
        if self.n > limit:
            raise ResourceError(
                f"ground set has {self.n} elements, above the exhaustive cap of "
                f"{limit} (raise it with --cap)"
            )

    def evaluate(self, side: int) -> int:
        raise NotImplementedError

    def order(self, side: int) -> int:
        """Order of the separation ``(side, complement)``, memoized."""
        if self._table is not None:
            return int(self._table[side])
        try:
            return self._memo[side]
        except KeyError:
            value = self.evaluate(side)
            self._memo[side] = value
            return value

    def _compute_table(self) -> np.ndarray:
        return np.array([self.evaluate(x) for x in range(1 << self.n)], dtype=np.int64)

    def order_table(self) -> np.ndarray:
        """Orders of all ``2**n`` sides as an int64 array indexed by mask."""
        if self._table is None:
            self.check_cap()
            table = self._compute_table()
            table.setflags(write=False)
            self._table = table
        return self._table


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def graph_order(edges: Sequence[tuple], side: int) -> int:
    """Number of vertices incident with edges of ``side`` and of its complement."""
    inside, outside = set(), set()
    for i, (u, v) in enumerate(edges):
        target = inside if (side >> i) & 1 else outside
        target.add(u)
        target.add(v)
    return len(inside & outside)


class GraphSystem(ConnectivitySystem):
    """Edges of a multigraph with the vertex-boundary order function.

    Parallel edges and loops are allowed; a loop contributes its vertex only
    when that vertex also meets an edge on the other side.
    """

    kind = "graph"

    def __init__(self, edges, labels=None, cap: int = DEFAULT_CAP):
        edges = [tuple(e) for e in edges]
        for e in edges:
            if len(e) != 2:
                raise InputError(f"edge {e!r} is not a vertex pair")
        if labels is None:
            labels = _edge_labels(edges)
        super().__init__(GroundSet(labels), cap)
        self.edges = edges
        vertices = sorted({v for e in edges for v in e}, key=str)
        self.vertices = vertices
        inc = {v: 0 for v in vertices}
        for i, (u, v) in enumerate(edges):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        self.incidence = [inc[v] for v in vertices]

    def evaluate(self, side: int) -> int:
        rest = self.full ^ side
        return sum(1 for inc in self.incidence if inc & side and inc & rest)

    def _compute_table(self):
        inc = np.array(self.incidence, dtype=np.int64)
        return _kernels.graph_order_table(inc, self.n)


def _edge_labels(edges):
    labels, seen = [], {}
    for u, v in edges:
        base = f"{u}-{v}"
        k = seen.get(base, 0)
        seen[base] = k + 1
        labels.append(base if k == 0 else f"{base}#{k}")
    return labels


# ---------------------------------------------------------------------------
# matroids over prime fields
# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _check_matrix(matrix, p):
    if not _is_prime(p) or p > MAX_PRIME:
        raise InputError(f"field size {p} must be a prime at most {MAX_PRIME}")
    rows = [list(r) for r in matrix]
    if rows and len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    for r in rows:
        for x in r:
            if not isinstance(x, (int, np.integer)) or not 0 <= x < p:
                raise InputError(f"matrix entry {x!r} is not in GF({p})")
    return rows


def matroid_rank(matrix, p: int, subset: int) -> int:
    """Rank over GF(p) of the columns indexed by ``subset``.

    Plain row reduction on Python ints; used for single evaluations and as
    the reference for the batched table kernels.
    """
    rows = _check_matrix(matrix, p)
    cols = indices(subset)
    if rows and cols and cols[-1] >= len(rows[0]):
        raise InputError("subset refers to a column outside the matrix")
    return _rank_mod_p(rows, p, cols)


def _rank_mod_p(rows, p, cols):
    a = [[row[j] % p for j in cols] for row in rows]
    rank = 0
    for c in range(len(cols)):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


class MatroidSystem(ConnectivitySystem):
    """Column matroid of an ``r x n`` matrix over GF(p) with its connectivity function."""

    kind = "matroid-rank"

    def __init__(self, matrix, p: int, labels=None, cap: int = DEFAULT_CAP):
        rows = _check_matrix(matrix, p)
        ncols = len(rows[0]) if rows else 0
        if ncols == 0:
            raise InputError("matrix must have at least one column")
        if labels is None:
            labels = [f"c{j}" for j in range(ncols)]
        super().__init__(GroundSet(labels), cap)
        if len(labels) != ncols:
            raise InputError("label count does not match column count")
        self.p = p
        self._rows = rows
        self.matrix = np.array(rows, dtype=np.int64).reshape(len(rows), ncols)
        self._rank_memo: dict[int, int] = {}
        self._rank_table: np.ndarray | None = None
        self.total_rank = self.rank(self.full)

    def rank(self, subset: int) -> int:
        if self._rank_table is not None:
            return int(self._rank_table[subset])
        if subset not in self._rank_memo:
            self._rank_memo[subset] = _rank_mod_p(self._rows, self.p, indices(subset))
        return self._rank_memo[subset]

    def evaluate(self, side: int) -> int:
        return matroid_order(self, side)

    def _compute_table(self):
        ranks = _kernels.rank_table(self.matrix, self.p)
        self._rank_table = ranks
        masks = np.arange(1 << self.n, dtype=np.int64)
        return ranks + ranks[self.full ^ masks] - ranks[self.full]


def matroid_order(system: MatroidSystem, side: int) -> int:
    """Connectivity ``r(X) + r(E - X) - r(E)`` of a side."""
    return system.rank(side) + system.rank(system.full ^ side) - system.total_rank


# ---------------------------------------------------------------------------
# explicit tables
# ---------------------------------------------------------------------------


class TableSystem(ConnectivitySystem):
    """Order function given by an explicit value for every subset.

    With ``validate=True`` (the default) the table must be complete and
    symmetric; submodularity is checked exhaustively up to ``cap`` elements
    and by sampling above it.
    """

    kind = "explicit-table"

    def __init__(self, n: int, values: dict, labels=None, cap: int = DEFAULT_CAP,
                 validate: bool = True):
        if labels is None:
            labels = [str(i) for i in range(n)]
        super().__init__(GroundSet(labels), cap)
        if len(labels) != n:
            raise InputError("label count does not match n")
        self.values = {int(k): int(v) for k, v in values.items()}
        for k in self.values:
            if not 0 <= k <= self.full:
                raise InputError(f"table key {k:#x} is not a subset of a {n}-element set")
        if validate:
            missing = [x for x in range(1 << n) if x not in self.values]
            if missing:
                raise InputError(f"table has no entry for subset {missing[0]:#x}")
            mode = "exhaustive" if n <= cap else "sampled"
            report = validate_system(self, mode=mode)
            if not report.ok:
                raise InputError(f"table is not a connectivity function: {report.violations[0]}")

    def evaluate(self, side: int) -> int:
        try:
            return self.values[side]
        except KeyError:
            raise InputError(f"table has no entry for subset {side:#x}") from None

    def _compute_table(self):
        return np.array([self.evaluate(x) for x in range(1 << self.n)], dtype=np.int64)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "symmetry" or "submodularity"
    x: int
    y: int

    def __str__(self):
        if self.kind == "symmetry":
            return f"symmetry: f({self.x:#x}) != f({self.y:#x})"
        return f"submodularity: f({self.x:#x}) + f({self.y:#x}) < f(meet) + f(join)"


@dataclass
class ValidationReport:
    mode: str
    checked_pairs: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_system(system: ConnectivitySystem, mode: str = "exhaustive",
                    count: int = 1000, seed: int = 0, limit: int = 100) -> ValidationReport:
    """Search for symmetry and submodularity violations.

    ``mode="exhaustive"`` checks every side and every pair (n at most 16);
    ``mode="sampled"`` checks ``count`` random pairs and their complements.
    At most ``limit`` violations are collected.
    """
    n, full = system.n, system.full
    if mode == "exhaustive":
        table = system.order_table()
        masks = np.arange(1 << n, dtype=np.int64)
        report = ValidationReport(mode, (1 << n) * ((1 << n) - 1) // 2)
        asym = np.nonzero(table != table[full ^ masks])[0]
        for x in asym:
            if x < (full ^ x) and len(report.violations) < limit:
                report.violations.append(Violation("symmetry", int(x), int(full ^ x)))
        for x, y in _kernels.submodular_violations(table, n, limit - len(report.violations)):
            report.violations.append(Violation("submodularity", int(x), int(y)))
        return report
    if mode != "sampled":
        raise InputError(f"unknown validation mode {mode!r}")
    rng = random.Random(seed)
    f = system.order
    report = ValidationReport(mode, count)
    for _ in range(count):
        x, y = rng.getrandbits(n), rng.getrandbits(n)
        for a in (x, y):
            if f(a) != f(full ^ a) and len(report.violations) < limit:
                report.violations.append(Violation("symmetry", a, full ^ a))
        if f(x) + f(y) < f(x & y) + f(x | y) and len(report.violations) < limit:
            report.violations.append(Violation("submodularity", x, y))
    return report
