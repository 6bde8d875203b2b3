"""Shared graph corpus for the test suite.

Closed-form families (cycles, complete, bouquet, Petersen) plus seeded
configuration-model cubic multigraphs. The configuration model pairs
stubs uniformly, so every sample is exactly 3-regular even when it picks
up loops or doubled edges.
"""

import random

from graphzeta import MultiGraph, bouquet_graph, complete_graph, cycle_graph, petersen_graph


def random_regular(n: int, degree: int = 3, seed: int = 0) -> MultiGraph:
    if n * degree % 2:
        raise ValueError("n * degree must be even")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(degree)]
    rng.shuffle(stubs)
    edges = tuple((stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2))
    return MultiGraph(n, edges, name=f"cubic{n}s{seed}")


K4 = complete_graph(4)
PETERSEN = petersen_graph()
B2 = bouquet_graph(2)
LOOP = bouquet_graph(1)
CYCLES = {n: cycle_graph(n) for n in range(1, 13)}

RANDOM_CUBIC = [
    random_regular(6, 3, 1),
    random_regular(8, 3, 2),
    random_regular(10, 3, 3),
    random_regular(12, 3, 4),
]

REGULAR_CORPUS = [K4, PETERSEN, B2, CYCLES[3], CYCLES[5], CYCLES[8]] + RANDOM_CUBIC
