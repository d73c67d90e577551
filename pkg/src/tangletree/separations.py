"""Oriented separations, nestedness and corners."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .connectivity import ConnectivitySystem, indices


@dataclass(frozen=True, order=True)
class Separation:
    """An oriented bipartition ``(a, b)`` of the ground set with its order.

    Field order makes the default sort the canonical one: ascending order,
    then ascending mask of ``a``.
    """

    order: int
    a: int
    b: int

    @classmethod
    def of(cls, system: ConnectivitySystem, side: int) -> "Separation":
        return cls(system.order(side), side, system.full ^ side)

    @property
    def full(self) -> int:
        return self.a | self.b

    def inverse(self) -> "Separation":
        return Separation(self.order, self.b, self.a)

    def bipartition(self) -> tuple[int, int]:
        """Unordered key: the side with the smaller mask comes first."""
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)

    def representative(self) -> "Separation":
        """The orientation whose first side has the smaller mask."""
        return self if self.a < self.b else self.inverse()

    def __repr__(self):
        return f"Separation({indices(self.a)} | {indices(self.b)}, order={self.order})"


def sides_nested(a: int, c: int, full: int) -> bool:
    """Nestedness of ``(a, full - a)`` and ``(c, full - c)`` from masks alone."""
    b, d = full ^ a, full ^ c
    return not (a & c and a & d and b & c and b & d)


def is_nested(s1: Separation, s2: Separation) -> bool:
    """True iff some side of ``s1`` is contained in some side of ``s2``."""
    return sides_nested(s1.a, s2.a, s1.full)


class CornerQuad(NamedTuple):
    meet_ac: Separation  # (A & C, B | D)
    join_ac: Separation  # (A | C, B & D)
    meet_ad: Separation  # (A & D, B | C)
    join_ad: Separation  # (A | D, B & C)


def corners(system: ConnectivitySystem, s1: Separation, s2: Separation) -> CornerQuad:
    a, c, d = s1.a, s2.a, s2.b
    return CornerQuad(
        Separation.of(system, a & c),
        Separation.of(system, a | c),
        Separation.of(system, a & d),
        Separation.of(system, a | d),
    )


def enumerate_separations(system: ConnectivitySystem, max_order) -> list[Separation]:
    """All oriented separations of order at most ``max_order``, by ascending first side."""
    table = system.order_table()
    masks = np.nonzero(table <= max_order)[0]
    full = system.full
    return [Separation(int(table[m]), int(m), full ^ int(m)) for m in masks]


def symmetric_closure(seps: Iterable[Separation]) -> set[Separation]:
    out = set()
    for s in seps:
        out.add(s)
        out.add(s.inverse())
    return out


def is_nested_set(seps: Iterable[Separation]) -> bool:
    seps = list(seps)
    return all(is_nested(s, t) for i, s in enumerate(seps) for t in seps[i + 1:])
