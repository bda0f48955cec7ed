import itertools

import pytest

from fdsrank import kernels
from fdsrank.digraph import Digraph


@pytest.fixture(scope="session", autouse=True)
def jit_warmup():
    kernels.warmup()


def small_digraphs(n: int):
    """Every labeled digraph on n vertices (loops included)."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
    for bits in range(1 << len(pairs)):
        yield Digraph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


def random_digraph(rng, n_max=4, p=0.4):
    n = rng.randint(1, n_max)
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
    return Digraph(n, [pr for pr in pairs if rng.random() < p])


def all_tables(q, d):
    return itertools.product(range(q), repeat=q ** d)
