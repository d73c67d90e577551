import random
import sys
from pathlib import Path

import pytest

from tangletree import corpus
from tangletree.connectivity import GraphSystem, MatroidSystem, TableSystem

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def bowtie():
    return corpus.bowtie()


@pytest.fixture
def triple_bowtie():
    return corpus.triple_bowtie()


@pytest.fixture
def k4():
    return corpus.k4()


def random_graph(rng, n_edges, n_vertices):
    return GraphSystem([(rng.randrange(n_vertices), rng.randrange(n_vertices))
                        for _ in range(n_edges)])


def cut_table(rng, n, density=0.5, max_weight=3):
    """Weighted cut function on ``n`` points: symmetric and submodular by construction."""
    weights = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                weights[u, v] = rng.randint(1, max_weight)
    values = {}
    for x in range(1 << n):
        values[x] = sum(w for (u, v), w in weights.items() if ((x >> u) & 1) != ((x >> v) & 1))
    return TableSystem(n, values)


def random_matroid(rng, rows, cols, p):
    return MatroidSystem([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], p)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
