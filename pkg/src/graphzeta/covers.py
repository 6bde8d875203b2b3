"""Abelian voltage assignments, derived covering graphs, and towers.

A voltage assignment labels each edge of a base graph, in its stored
orientation, with an element of an abelian group; the reversed orientation
carries the negated element. The derived graph has vertex set
V(base) x G and, for every base edge (x, y) with voltage s and every g in
G, an edge from (x, g) to (y, g + s). Towers are increasing chains of such
covers sharing one base, with level indices N_1 = 1 | N_2 | N_3 | ...
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as iter_product
from pathlib import Path
from typing import Sequence

from .errors import InputError, NumericError, ResourceError
from .graphs import MultiGraph, build_graph, load_graph

DEFAULT_SIZE_CAP = 10_000


@dataclass(frozen=True)
class VoltageAssignment:
    """Edge voltages in a product of cyclic groups or in free abelian Z^k.

    `orders` gives the cyclic orders (n_1, ..., n_k) of a finite group, or
    None for the free abelian group of the given rank. `voltages` holds one
    k-tuple per base edge, aligned with the base's edge order and applying
    to the stored orientation.
    """

    voltages: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...] | None
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise InputError("voltage rank must be >= 1")
        if self.orders is not None:
            if len(self.orders) != self.rank:
                raise InputError("orders and rank disagree")
            if any(n < 1 for n in self.orders):
                raise InputError("cyclic orders must be >= 1")
        for sigma in self.voltages:
            if len(sigma) != self.rank:
                raise InputError(f"voltage {sigma!r} does not have rank {self.rank}")

    @property
    def is_finite(self) -> bool:
        return self.orders is not None

    @classmethod
    def cyclic(cls, shifts: Sequence[int], order: int) -> "VoltageAssignment":
        return cls(tuple((int(s),) for s in shifts), (int(order),), 1)

    @classmethod
    def free(cls, voltages: Sequence[Sequence[int]], rank: int | None = None) -> "VoltageAssignment":
        vs = tuple(tuple(int(c) for c in sigma) for sigma in voltages)
        if rank is None:
            if not vs:
                raise InputError("rank is required for an empty voltage list")
            rank = len(vs[0])
        return cls(vs, None, int(rank))

    @classmethod
    def product(
        cls, voltages: Sequence[Sequence[int]], orders: Sequence[int]
    ) -> "VoltageAssignment":
        return cls(
            tuple(tuple(int(c) for c in sigma) for sigma in voltages),
            tuple(int(n) for n in orders),
            len(orders),
        )

    def reduced(self, orders: Sequence[int]) -> "VoltageAssignment":
        """The same voltages taken modulo the given cyclic orders."""
        orders = tuple(int(n) for n in orders)
        if len(orders) != self.rank:
            raise InputError("orders and rank disagree")
        vs = tuple(
            tuple(c % n for c, n in zip(sigma, orders)) for sigma in self.voltages
        )
        return VoltageAssignment(vs, orders, self.rank)


def _group_elements(orders: tuple[int, ...]) -> list[tuple[int, ...]]:
    return list(iter_product(*(range(n) for n in orders)))


def _group_index(orders: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    return {g: i for i, g in enumerate(_group_elements(orders))}


def derived_graph(base: MultiGraph, volt: VoltageAssignment) -> MultiGraph:
    """The covering graph derived from a finite abelian voltage assignment.

    Vertex (x, g) is stored at index x * |G| + index(g), with group elements
    enumerated lexicographically; this fixes the covering projection to
    index // |G|.
    """
    if not volt.is_finite:
        raise InputError("derived_graph needs a finite voltage group")
    if len(volt.voltages) != base.edge_count:
        raise InputError(
            f"{len(volt.voltages)} voltages for {base.edge_count} edges"
        )
    orders = volt.orders
    assert orders is not None
    elements = _group_elements(orders)
    index = _group_index(orders)
    size = len(elements)
    edges = []
    for (x, y), sigma in zip(base.edges, volt.voltages):
        for gi, g in enumerate(elements):
            h = tuple((a + b) % n for a, b, n in zip(g, sigma, orders))
            edges.append((x * size + gi, y * size + index[h]))
    name = None
    if base.name:
        name = f"{base.name}~{'x'.join(str(n) for n in orders)}"
    return build_graph(base.vertex_count * size, edges, name)


def covering_projection(base: MultiGraph, cover: MultiGraph) -> tuple[int, ...]:
    """The index // fiber-size projection used by derived graphs."""
    if cover.vertex_count % base.vertex_count:
        raise InputError("cover size is not a multiple of base size")
    fiber = cover.vertex_count // base.vertex_count
    return tuple(w // fiber for w in range(cover.vertex_count))


def validate_cover(
    cover: MultiGraph, base: MultiGraph, projection: Sequence[int]
) -> bool:
    """Check that projection is a covering map: surjective, constant fiber
    sizes, and a local isomorphism on every vertex star."""
    if len(projection) != cover.vertex_count:
        raise InputError("projection length must equal the cover's vertex count")
    proj = [int(p) for p in projection]
    if any(not 0 <= p < base.vertex_count for p in proj):
        raise InputError("projection hits a vertex outside the base")
    fibers = [0] * base.vertex_count
    for p in proj:
        fibers[p] += 1
    if min(fibers) == 0 or len(set(fibers)) != 1:
        return False
    base_stars = [
        tuple(sorted(other for _, other in base.incidences[x]))
        for x in range(base.vertex_count)
    ]
    for w in range(cover.vertex_count):
        star = tuple(sorted(proj[other] for _, other in cover.incidences[w]))
        if star != base_stars[proj[w]]:
            return False
    return True


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True)
class TowerLevel:
    graph: MultiGraph
    index: int
    connected: bool
    component_count: int


@dataclass(frozen=True)
class Tower:
    """A chain of covers of one base; level 1 is the base itself."""

    base: MultiGraph
    levels: tuple[TowerLevel, ...]
    provenance: str
    limit_verified: bool = False

    def __post_init__(self) -> None:
        if not self.levels:
            raise InputError("a tower needs at least one level")
        first = self.levels[0]
        if first.index != 1 or first.graph is not self.base and first.graph != self.base:
            raise InputError("the first level of a tower must be the base at index 1")
        for prev, cur in zip(self.levels, self.levels[1:]):
            if cur.index % prev.index:
                raise InputError(
                    f"tower indices must form a divisibility chain ({prev.index} !| {cur.index})"
                )
        for level in self.levels:
            g = level.graph
            if g.vertex_count != level.index * self.base.vertex_count:
                raise InputError("level size must be index * base size")
            if g.euler_characteristic != level.index * self.base.euler_characteristic:
                raise InputError("level Euler characteristic must scale with the index")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(level.index for level in self.levels)


def _finish_level(base: MultiGraph, graph: MultiGraph, index: int) -> TowerLevel:
    if not validate_cover(graph, base, covering_projection(base, graph)):
        raise NumericError("internal error: derived graph failed cover validation")
    return TowerLevel(
        graph=graph,
        index=index,
        connected=graph.is_connected,
        component_count=graph.component_count,
    )


def cyclic_tower(
    base: MultiGraph, shifts: Sequence[int], orders: Sequence[int]
) -> Tower:
    """Covers over Z/n for a divisibility chain of orders starting at 1.

    The integer voltages are reduced modulo each order, so the levels are
    the finite quotients of the single Z-cover the shifts describe.
    """
    orders = [int(n) for n in orders]
    if not orders or orders[0] != 1:
        raise InputError("orders must start at 1 (the base level)")
    for a, b in zip(orders, orders[1:]):
        if b % a:
            raise InputError(f"orders must form a divisibility chain ({a} !| {b})")
    if len(shifts) != base.edge_count:
        raise InputError(f"{len(shifts)} shifts for {base.edge_count} edges")
    levels = [TowerLevel(base, 1, base.is_connected, base.component_count)]
    for n in orders[1:]:
        volt = VoltageAssignment.cyclic(shifts, n).reduced((n,))
        levels.append(_finish_level(base, derived_graph(base, volt), n))
    increasing = all(b > a for a, b in zip(orders, orders[1:]))
    return Tower(
        base=base,
        levels=tuple(levels),
        provenance=f"cyclic covers, shifts {list(map(int, shifts))}, orders {orders}",
        limit_verified=increasing,
    )


def lattice_tower(
    base: MultiGraph, voltages: Sequence[Sequence[int]], orders: Sequence[int]
) -> Tower:
    """Covers over (Z/n)^k for a chain of n, the finite quotients of a Z^k cover."""
    volt_free = VoltageAssignment.free(voltages)
    k = volt_free.rank
    orders = [int(n) for n in orders]
    if not orders or orders[0] != 1:
        raise InputError("orders must start at 1 (the base level)")
    for a, b in zip(orders, orders[1:]):
        if b % a:
            raise InputError(f"orders must form a divisibility chain ({a} !| {b})")
    if len(volt_free.voltages) != base.edge_count:
        raise InputError(
            f"{len(volt_free.voltages)} voltages for {base.edge_count} edges"
        )
    levels = [TowerLevel(base, 1, base.is_connected, base.component_count)]
    for n in orders[1:]:
        volt = volt_free.reduced((n,) * k)
        levels.append(_finish_level(base, derived_graph(base, volt), n**k))
    increasing = all(b > a for a, b in zip(orders, orders[1:]))
    return Tower(
        base=base,
        levels=tuple(levels),
        provenance=f"(Z/n)^{k} covers, voltages {[list(v) for v in volt_free.voltages]}, n in {orders}",
        limit_verified=increasing,
    )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def spanning_tree_edges(g: MultiGraph, root: int = 0) -> tuple[int, ...]:
    """Edge indices of the breadth-first spanning tree grown from `root`."""
    if not g.is_connected:
        raise InputError("spanning tree requires a connected graph")
    visited = [False] * g.vertex_count
    visited[root] = True
    tree: list[int] = []
    frontier = [root]
    while frontier:
        nxt: list[int] = []
        for v in frontier:
            for eidx, other in g.incidences[v]:
                if not visited[other]:
                    visited[other] = True
                    tree.append(eidx)
                    nxt.append(other)
        frontier = nxt
    return tuple(sorted(tree))


def homology_tower(
    base: MultiGraph, p: int, depth: int, size_cap: int = DEFAULT_SIZE_CAP
) -> Tower:
    """Iterated mod-p homology covers.

    At each step a breadth-first spanning tree from vertex 0 is chosen;
    the j-th non-tree edge receives the j-th standard generator of
    (Z/p)^r, r = edges - vertices + 1, and the next level is the derived
    graph. Level sizes grow fast; the construction stops with a
    ResourceError naming the offending level once the cap would be passed.
    """
    if not _is_prime(p):
        raise InputError(f"p = {p} is not prime")
    if depth < 0:
        raise InputError("depth must be >= 0")
    if not base.is_connected:
        raise InputError("homology towers need a connected base")
    levels = [TowerLevel(base, 1, True, 1)]
    proj_to_base = list(range(base.vertex_count))
    current = base
    index = 1
    for step in range(depth):
        rank = current.edge_count - current.vertex_count + 1
        if rank == 0:
            levels.append(TowerLevel(current, index, current.is_connected, 1))
            continue
        growth = p**rank
        next_size = current.vertex_count * growth
        if next_size > size_cap:
            raise ResourceError(
                f"homology tower level {step + 2} needs {next_size} vertices, "
                f"over the cap of {size_cap}"
            )
        tree = set(spanning_tree_edges(current))
        generator = 0
        voltages = []
        for eidx in range(current.edge_count):
            if eidx in tree:
                voltages.append((0,) * rank)
            else:
                sigma = [0] * rank
                sigma[generator] = 1
                generator += 1
                voltages.append(tuple(sigma))
        volt = VoltageAssignment.product(voltages, (p,) * rank)
        nxt = derived_graph(current, volt)
        if not validate_cover(nxt, current, covering_projection(current, nxt)):
            raise NumericError("internal error: homology cover failed validation")
        proj_to_base = [proj_to_base[w // growth] for w in range(nxt.vertex_count)]
        if not validate_cover(nxt, base, proj_to_base):
            raise NumericError("internal error: composed projection is not a covering")
        index *= growth
        current = nxt
        levels.append(
            TowerLevel(current, index, current.is_connected, current.component_count)
        )
    return Tower(
        base=base,
        levels=tuple(levels),
        provenance=f"iterated mod-{p} homology covers, depth {depth}",
        limit_verified=True,
    )


# ---------------------------------------------------------------------------
# JSON formats


def voltage_from_json(doc: dict) -> VoltageAssignment:
    """Voltage file: {"voltages": [[..], ..], "orders": [n, ..]} or {"rank": k}."""
    if "voltages" not in doc:
        raise InputError('voltage JSON needs a "voltages" key')
    voltages = doc["voltages"]
    if voltages and isinstance(voltages[0], (int, float)):
        voltages = [[v] for v in voltages]
    if "orders" in doc:
        return VoltageAssignment.product(voltages, doc["orders"])
    if "rank" in doc:
        return VoltageAssignment.free(voltages, int(doc["rank"]))
    if voltages:
        return VoltageAssignment.free(voltages)
    raise InputError('voltage JSON needs "orders" or "rank"')


def load_voltages(path: "str | Path") -> VoltageAssignment:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"voltage file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"voltage file {path} is not valid JSON: {exc}") from exc
    return voltage_from_json(doc)


def tower_from_spec(
    doc: dict, base_dir: "str | Path" = ".", size_cap: int | None = None
) -> Tower:
    """Tower spec: {"base": graph-file, "kind": "cyclic"|"homology", ...}.

    Cyclic towers need "voltages" (one integer per base edge) and
    "orders"; homology towers need "p" and "depth" and accept "size_cap".
    Relative base paths resolve against `base_dir`.
    """
    if "base" not in doc or "kind" not in doc:
        raise InputError('tower spec needs "base" and "kind"')
    base_path = Path(doc["base"])
    if not base_path.is_absolute():
        base_path = Path(base_dir) / base_path
    base = load_graph(base_path)
    kind = doc["kind"]
    if kind == "cyclic":
        if "voltages" not in doc or "orders" not in doc:
            raise InputError('cyclic tower spec needs "voltages" and "orders"')
        return cyclic_tower(base, doc["voltages"], doc["orders"])
    if kind == "homology":
        if "p" not in doc or "depth" not in doc:
            raise InputError('homology tower spec needs "p" and "depth"')
        cap = size_cap if size_cap is not None else int(doc.get("size_cap", DEFAULT_SIZE_CAP))
        return homology_tower(base, int(doc["p"]), int(doc["depth"]), cap)
    raise InputError(f'unknown tower kind {kind!r} (expected "cyclic" or "homology")')


def load_tower_spec(path: "str | Path", size_cap: int | None = None) -> Tower:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"tower spec not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"tower spec {path} is not valid JSON: {exc}") from exc
    return tower_from_spec(doc, Path(path).parent, size_cap)
