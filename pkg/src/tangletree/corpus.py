"""Small named instances used throughout the tests and the docs."""

from .connectivity import GraphSystem, MatroidSystem

BOWTIE_EDGES = [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]
BOWTIE_LABELS = ["e1", "e2", "e3", "f1", "f2", "f3"]

TRIPLE_BOWTIE_EDGES = [
    (0, 1), (1, 2), (0, 2),
    (0, 3), (3, 4), (0, 4),
    (0, 5), (5, 6), (0, 6),
]

K4_EDGES = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]

TRIANGLE_GF2 = [[1, 0, 1], [0, 1, 1]]
U24_GF3 = [[1, 0, 1, 1], [0, 1, 1, 2]]


def path3(cap=16):
    return GraphSystem([(1, 2), (2, 3)], labels=["a", "b"], cap=cap)


def cycle3(cap=16):
    return GraphSystem([(1, 2), (2, 3), (1, 3)], labels=["e1", "e2", "e3"], cap=cap)


def k4(cap=16):
    return GraphSystem(K4_EDGES, cap=cap)


def bowtie(cap=16):
    return GraphSystem(BOWTIE_EDGES, labels=BOWTIE_LABELS, cap=cap)


def triple_bowtie(cap=16):
    return GraphSystem(TRIPLE_BOWTIE_EDGES, cap=cap)


def triangle_matroid(cap=16):
    return MatroidSystem(TRIANGLE_GF2, 2, cap=cap)


def u24(cap=16):
    return MatroidSystem(U24_GF3, 3, cap=cap)


def petersen(cap=16):
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return GraphSystem(outer + spokes + inner, cap=cap)


FIXTURES = {
    "P3": path3,
    "C3": cycle3,
    "K4": k4,
    "bowtie": bowtie,
    "triple_bowtie": triple_bowtie,
    "triangle_matroid": triangle_matroid,
    "U24": u24,
}
