import random

import pytest


def random_multigraph(rng, n, m, arity=2, allow_loops=True):
    """Uniform endpoints; loops and duplicate edges happen naturally."""
    edges = []
    for _ in range(m):
        e = tuple(rng.randint(1, n) for _ in range(arity))
        if not allow_loops and len(set(e)) < arity:
            e = tuple(rng.sample(range(1, n + 1), arity))
        edges.append(e)
    return edges


def pa_graph(n, m, rng, mix=0.5):
    """Preferential attachment by sampling past endpoints from a reservoir."""
    reservoir = []
    edges = []
    for _ in range(m):
        pair = []
        for _ in range(2):
            if reservoir and rng.random() >= mix:
                pair.append(reservoir[rng.randrange(len(reservoir))])
            else:
                pair.append(rng.randint(1, n))
        edges.append(tuple(pair))
        reservoir.extend(pair)
    return edges


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
