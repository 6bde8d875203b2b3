"""Finite undirected multigraphs and their adjacency spectra.

Conventions used throughout the package:

* loops and parallel edges are allowed;
* a loop at x contributes 2 to degree(x) and 2 to the adjacency entry (x, x);
* the Euler characteristic is chi = vertex_count - edge_count.

Graphs are immutable; derived quantities (degrees, adjacency matrix,
spectrum) are cached on first use.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cache, cached_property
from pathlib import Path

import numpy as np

from .errors import InputError, NumericError


@dataclass(frozen=True)
class MultiGraph:
    """An undirected multigraph on vertices 0 .. vertex_count-1.

    Edges are stored as ordered pairs so that voltage assignments can refer
    to a definite orientation, but the graph itself is undirected: (x, y)
    and (y, x) describe the same edge.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    name: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.vertex_count, int) or self.vertex_count < 1:
            raise InputError("vertex_count must be a positive integer")
        normalized = []
        for edge in self.edges:
            if len(edge) != 2:
                raise InputError(f"edge {edge!r} is not a pair")
            x, y = int(edge[0]), int(edge[1])
            if not (0 <= x < self.vertex_count and 0 <= y < self.vertex_count):
                raise InputError(
                    f"edge ({x}, {y}) has an endpoint outside 0..{self.vertex_count - 1}"
                )
            normalized.append((x, y))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges)

    @cached_property
    def loop_count(self) -> int:
        return sum(1 for x, y in self.edges if x == y)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Symmetric adjacency matrix; loops count 2 on the diagonal."""
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.float64)
        for x, y in self.edges:
            a[x, y] += 1.0
            a[y, x] += 1.0
        a.setflags(write=False)
        return a

    @cached_property
    def degree_sequence(self) -> tuple[int, ...]:
        degrees = [0] * self.vertex_count
        for x, y in self.edges:
            degrees[x] += 1
            degrees[y] += 1
        return tuple(degrees)

    @cached_property
    def incidences(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: (edge_index, other_endpoint) pairs; loops appear twice."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for idx, (x, y) in enumerate(self.edges):
            inc[x].append((idx, y))
            inc[y].append((idx, x))
        return tuple(tuple(entries) for entries in inc)

    @cached_property
    def component_labels(self) -> tuple[int, ...]:
        labels = [-1] * self.vertex_count
        current = 0
        for start in range(self.vertex_count):
            if labels[start] >= 0:
                continue
            labels[start] = current
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for _, other in self.incidences[v]:
                    if labels[other] < 0:
                        labels[other] = current
                        queue.append(other)
            current += 1
        return tuple(labels)

    @property
    def component_count(self) -> int:
        return max(self.component_labels) + 1

    @property
    def is_connected(self) -> bool:
        return self.component_count == 1


@dataclass(frozen=True)
class RegularityInfo:
    """Degree data of a graph; q = degree - 1 is defined only when regular."""

    is_regular: bool
    q: int | None
    degree_sequence: tuple[int, ...]
    chi: int


@dataclass(frozen=True)
class SpectrumData:
    """Adjacency eigenvalues sorted ascending, with the trivial bound max degree."""

    eigenvalues: np.ndarray
    spectral_bound: int


def build_graph(
    vertex_count: int,
    edges: "list[tuple[int, int]] | tuple[tuple[int, int], ...]",
    name: str | None = None,
) -> MultiGraph:
    """Construct a multigraph, validating endpoints and vertex count."""
    return MultiGraph(vertex_count, tuple((int(x), int(y)) for x, y in edges), name)


def regularity(g: MultiGraph) -> RegularityInfo:
    degrees = g.degree_sequence
    is_regular = len(set(degrees)) == 1
    q = degrees[0] - 1 if is_regular else None
    return RegularityInfo(is_regular, q, degrees, g.euler_characteristic)


@cache
def spectrum(g: MultiGraph) -> SpectrumData:
    """Eigenvalues of the adjacency matrix via the dense symmetric solver.

    Eigenvalues come back sorted ascending. Solver failure is reported as a
    NumericError rather than a partial spectrum.
    """
    try:
        eigs = np.linalg.eigvalsh(g.adjacency)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolver failed: {exc}") from exc
    eigs.setflags(write=False)
    bound = max(g.degree_sequence) if g.vertex_count else 0
    return SpectrumData(eigenvalues=eigs, spectral_bound=int(bound))


# ---------------------------------------------------------------------------
# standard construction helpers


def cycle_graph(n: int) -> MultiGraph:
    """The n-cycle; n=1 is a single loop, n=2 a doubled edge."""
    if n < 1:
        raise InputError("cycle length must be >= 1")
    return MultiGraph(n, tuple((i, (i + 1) % n) for i in range(n)), name=f"C{n}")


def path_graph(n: int) -> MultiGraph:
    if n < 1:
        raise InputError("path needs at least one vertex")
    return MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)), name=f"P{n}")


def complete_graph(n: int) -> MultiGraph:
    edges = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    return MultiGraph(n, edges, name=f"K{n}")


def bouquet_graph(loops: int) -> MultiGraph:
    """One vertex carrying the given number of loops."""
    if loops < 0:
        raise InputError("loop count must be >= 0")
    return MultiGraph(1, tuple((0, 0) for _ in range(loops)), name=f"B{loops}")


def petersen_graph() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph(10, tuple(outer + spokes + inner), name="Petersen")


# ---------------------------------------------------------------------------
# JSON graph format: {"vertices": int, "edges": [[a, b], ...], "name": optional}


def graph_to_json(g: MultiGraph) -> dict:
    doc: dict = {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges]}
    if g.name is not None:
        doc["name"] = g.name
    return doc


def graph_from_json(doc: dict) -> MultiGraph:
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise InputError('graph JSON needs "vertices" and "edges" keys')
    try:
        vertices = int(doc["vertices"])
        edges = [(int(e[0]), int(e[1])) for e in doc["edges"]]
    except (TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return build_graph(vertices, edges, doc.get("name"))


def save_graph(g: MultiGraph, path: "str | Path") -> None:
    Path(path).write_text(json.dumps(graph_to_json(g), sort_keys=True) + "\n")


def load_graph(path: "str | Path") -> MultiGraph:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"graph file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"graph file {path} is not valid JSON: {exc}") from exc
    return graph_from_json(doc)
