"""Tree-decompositions of a ground set and where tangles live in them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .connectivity import ConnectivitySystem, GroundSet, indices, popcount
from .errors import PreconditionError
from .separations import Separation, is_nested
from .tangles import Tangle, TangleCatalog


@dataclass(frozen=True)
class TreeEdge:
    u: int
    v: int
    sep: Separation  # (union of parts on u's side, union on v's side)


class TreeDecomposition:
    """A tree with one (possibly empty) part of the ground set per node."""

    def __init__(self, ground: GroundSet, parts: list[int], edges: list[TreeEdge]):
        self.ground = ground
        self.parts = list(parts)
        self.edges = list(edges)
        self.adj: dict[int, list[int]] = {i: [] for i in range(len(parts))}
        for k, e in enumerate(self.edges):
            self.adj[e.u].append(k)
            self.adj[e.v].append(k)

    def __repr__(self):
        return f"TreeDecomposition({len(self.parts)} nodes)"

    @property
    def nodes(self) -> range:
        return range(len(self.parts))

    def other(self, k: int, node: int) -> int:
        e = self.edges[k]
        return e.v if node == e.u else e.u

    def side_nodes(self, k: int, node: int) -> set[int]:
        """Nodes in the component of ``node`` after deleting edge ``k``."""
        seen = {node}
        todo = [node]
        while todo:
            x = todo.pop()
            for j in self.adj[x]:
                if j == k:
                    continue
                y = self.other(j, x)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def union_of(self, nodes) -> int:
        m = 0
        for t in nodes:
            m |= self.parts[t]
        return m

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.parts) - 1:
            return False
        seen = {0}
        todo = deque([0])
        while todo:
            x = todo.popleft()
            for k in self.adj[x]:
                y = self.other(k, x)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(self.parts)

    def is_partition(self) -> bool:
        acc = 0
        for p in self.parts:
            if acc & p:
                return False
            acc |= p
        return acc == self.ground.full

    def separations(self) -> set[Separation]:
        """Both orientations of every edge separation."""
        out = set()
        for e in self.edges:
            out.add(e.sep)
            out.add(e.sep.inverse())
        return out


def edge_separation(td: TreeDecomposition, k: int, system: ConnectivitySystem | None = None) -> Separation:
    """Recompute the separation of edge ``k`` from the parts.

    The order is taken from ``system`` when given, else from the stored edge.
    """
    e = td.edges[k]
    a = td.union_of(td.side_nodes(k, e.u))
    b = td.union_of(td.side_nodes(k, e.v))
    order = system.order(a) if system is not None else e.sep.order
    return Separation(order, a, b)


def nested_to_tree(ground: GroundSet, seps) -> TreeDecomposition:
    """Tree-decomposition whose edge separations are exactly ``seps``.

    Every bipartition is represented by its side avoiding element 0. Those
    sides form a laminar family; each becomes a node whose parent is its
    least proper superset (the root, standing for the whole ground set, if
    there is none). The empty side is hung from the root.
    """
    seps = set(seps)
    full = ground.full
    for s in seps:
        if s.inverse() not in seps:
            raise PreconditionError(f"separation set is not symmetric: {s!r} lacks its inverse")
        if s.a | s.b != full or s.a & s.b:
            raise PreconditionError(f"{s!r} is not a bipartition of the ground set")
    reps = sorted({s.a for s in seps if not s.a & 1}, key=lambda m: (popcount(m), m))
    order_of = {s.a: s.order for s in seps}
    for x, y in combinations(reps, 2):
        if x & y and (x | y) not in (x, y):
            raise PreconditionError(
                f"separations with sides {indices(x)} and {indices(y)} are not nested")

    parent: dict[int, int | None] = {}
    for i, x in enumerate(reps):
        parent[x] = None
        if x == 0:
            continue
        for y in reps[i + 1:]:
            if y != x and x & y == x:
                parent[x] = y
                break
    children: dict[int | None, list[int]] = {}
    for x in reps:
        children.setdefault(parent[x], []).append(x)

    ids: dict[int | None, int] = {None: 0}
    queue = deque([None])
    order = [None]
    while queue:
        x = queue.popleft()
        for c in sorted(children.get(x, ())):
            ids[c] = len(order)
            order.append(c)
            queue.append(c)

    parts, edges = [], []
    for x in order:
        own = full if x is None else x
        for c in children.get(x, ()):
            own &= ~c
        parts.append(own)
        if x is not None:
            p = ids[parent[x]]
            edges.append(TreeEdge(p, ids[x], Separation(order_of[x], full ^ x, x)))
    return TreeDecomposition(ground, parts, edges)


@dataclass(frozen=True)
class HomeSubtree:
    tangle: Tangle
    nodes: frozenset[int]


def home_subtree(system: ConnectivitySystem, td: TreeDecomposition, t: Tangle) -> HomeSubtree:
    """Smallest subtree towards which ``t`` orients every edge leaving it.

    Every edge of order below the tangle's order is oriented by it; the
    component on the small side is discarded.
    """
    alive = set(td.nodes)
    for k, e in enumerate(td.edges):
        if system.order(e.sep.a) >= t.order:
            continue
        if t.is_small(e.sep.a):
            alive -= td.side_nodes(k, e.u)
        elif t.is_small(e.sep.b):
            alive -= td.side_nodes(k, e.v)
        else:
            raise PreconditionError(f"{t!r} does not orient edge {k} of order {e.sep.order}")
    return HomeSubtree(t, frozenset(alive))


def lives_in(system: ConnectivitySystem, td: TreeDecomposition, t: Tangle, nodes) -> bool:
    """Whether ``t`` orients every edge leaving the connected node set ``nodes`` towards it."""
    nodes = set(nodes)
    if not nodes:
        raise ValueError("node set must be nonempty")
    start = next(iter(nodes))
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for k in td.adj[x]:
            y = td.other(k, x)
            if y in nodes and y not in seen:
                seen.add(y)
                todo.append(y)
    if seen != nodes:
        return False
    for e in td.edges:
        if (e.u in nodes) == (e.v in nodes):
            continue
        outside = e.sep.b if e.u in nodes else e.sep.a
        if system.order(outside) >= t.order or not t.is_small(outside):
            return False
    return True


@dataclass
class CorollaryReport:
    node_tangles: dict[int, list[int]] = field(default_factory=dict)  # node -> catalog indices homed there
    spread: list[int] = field(default_factory=list)  # maximal tangles without a single-node home
    empty_nodes: list[int] = field(default_factory=list)  # nodes where no maximal tangle lives
    shared_nodes: list[int] = field(default_factory=list)  # nodes hosting several maximal tangles

    @property
    def passed(self) -> bool:
        return not (self.spread or self.empty_nodes or self.shared_nodes)

    def messages(self) -> list[str]:
        if self.empty_nodes and not any(self.node_tangles.values()) and not self.spread:
            return ["there are no tangles, so no part can host one"]
        out = [f"no maximal tangle lives in node {t}" for t in self.empty_nodes]
        out += [f"maximal tangle {i} does not live in a single part" for i in self.spread]
        out += [f"several maximal tangles live in node {t}" for t in self.shared_nodes]
        return out


def verify_corollary(system: ConnectivitySystem, td: TreeDecomposition,
                     catalog: TangleCatalog) -> CorollaryReport:
    """Check that nodes and maximal tangles correspond one to one via homes."""
    report = CorollaryReport({t: [] for t in td.nodes})
    for t in catalog.maximal():
        home = home_subtree(system, td, t).nodes
        i = catalog.index(t)
        if len(home) == 1:
            report.node_tangles[next(iter(home))].append(i)
        else:
            report.spread.append(i)
    for node, homed in report.node_tangles.items():
        if not homed:
            report.empty_nodes.append(node)
        elif len(homed) > 1:
            report.shared_nodes.append(node)
    return report


def check_structure(td: TreeDecomposition, system: ConnectivitySystem | None = None) -> list[str]:
    """Structural problems: not a tree, parts not a partition, stale edge data."""
    problems = []
    if not td.is_partition():
        problems.append("parts do not partition E")
    if not td.is_tree():
        problems.append("edges do not form a tree on the nodes")
        return problems
    for k, e in enumerate(td.edges):
        s = edge_separation(td, k, system)
        if (s.a, s.b) != (e.sep.a, e.sep.b):
            problems.append(f"edge {k}: recorded sides differ from the union of parts")
        elif s.order != e.sep.order:
            problems.append(f"edge {k}: recorded order {e.sep.order} != {s.order}")
    return problems


def tree_is_nested(td: TreeDecomposition) -> bool:
    seps = sorted(td.separations())
    return all(is_nested(s, t) for i, s in enumerate(seps) for t in seps[i + 1:])
