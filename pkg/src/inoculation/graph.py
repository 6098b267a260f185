"""Undirected graphs and connected-component computations on the vulnerable subgraph.

Nodes are dense integers 0..n-1.  An inoculation set I is any collection of
node ids; the vulnerable graph is the input graph with the nodes of I and
their incident edges removed.  Component queries are answered with bitmask
flood fill, which keeps exhaustive subset sweeps cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

InoculationSet = frozenset  # subset of node ids

try:
    _popcount = int.bit_count  # 3.11+
except AttributeError:  # pragma: no cover - depends on interpreter version
    def _popcount(x: int) -> int:
        return bin(x).count("1")


@dataclass(frozen=True)
class Graph:
    """Validated undirected graph. `connected` is informational: disconnected
    graphs are accepted, but several game-level guarantees assume connectivity."""

    n: int
    edges: tuple[tuple[int, int], ...]
    neighbor_masks: tuple[int, ...]
    connected: bool

    def neighbors(self, u: int) -> list[int]:
        return _mask_to_nodes(self.neighbor_masks[u])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def _mask_to_nodes(mask: int) -> list[int]:
    nodes = []
    while mask:
        low = mask & -mask
        nodes.append(low.bit_length() - 1)
        mask ^= low
    return nodes


def _nodes_to_mask(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


def _component_masks(neighbor_masks: tuple[int, ...] | list[int], alive: int) -> list[int]:
    """Connected components of the subgraph induced on the `alive` bitmask."""
    comps = []
    remaining = alive
    while remaining:
        frontier = remaining & -remaining
        comp = frontier
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                reach |= neighbor_masks[low.bit_length() - 1]
            frontier = reach & alive & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def _flood_from(neighbor_masks: tuple[int, ...] | list[int], alive: int, start: int) -> int:
    """Mask of the component containing `start` within the `alive` submask."""
    comp = (1 << start) & alive
    frontier = comp
    while frontier:
        reach = 0
        f = frontier
        while f:
            low = f & -f
            f ^= low
            reach |= neighbor_masks[low.bit_length() - 1]
        frontier = reach & alive & ~comp
        comp |= frontier
    return comp


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validate and build a Graph; flags whether it is connected."""
    if n < 0:
        raise ValueError("node count must be nonnegative")
    masks = [0] * n
    normalized: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) has endpoint out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
        normalized.append(key)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    full = (1 << n) - 1
    connected = n <= 1 or len(_component_masks(masks, full)) == 1
    return Graph(n=n, edges=tuple(sorted(normalized)), neighbor_masks=tuple(masks),
                 connected=connected)


INOCULATED = -1  # component_id sentinel for inoculated nodes


@dataclass(frozen=True)
class ComponentStructure:
    """Components of the vulnerable graph: per-node component index
    (INOCULATED for members of I), component sizes, and per-node size k."""

    component_id: tuple[int, ...]
    sizes: tuple[int, ...]
    k: tuple[int, ...]

    component_masks: tuple[int, ...] = ()

    @property
    def sum_squared_sizes(self) -> int:
        return sum(s * s for s in self.sizes)


def as_inoculation_set(g: Graph, members: Iterable[int]) -> frozenset:
    I = frozenset(members)
    for v in I:
        if not (0 <= v < g.n):
            raise ValueError(f"inoculated node {v} out of range for n={g.n}")
    return I


def vulnerable_components(g: Graph, I: Iterable[int]) -> ComponentStructure:
    """Components of g after removing the inoculated nodes and their edges."""
    I = as_inoculation_set(g, I)
    alive = g.full_mask & ~_nodes_to_mask(I)
    masks = _component_masks(g.neighbor_masks, alive)
    component_id = [INOCULATED] * g.n
    sizes = []
    for idx, comp in enumerate(masks):
        size = _popcount(comp)
        sizes.append(size)
        for v in _mask_to_nodes(comp):
            component_id[v] = idx
    k = [0 if component_id[v] == INOCULATED else sizes[component_id[v]] for v in range(g.n)]
    return ComponentStructure(component_id=tuple(component_id), sizes=tuple(sizes),
                              k=tuple(k), component_masks=tuple(masks))


def deinoculation_component(g: Graph, I: Iterable[int], j: int) -> int:
    """Size of the component containing j once j is removed from I.

    Equals 1 plus the sizes of the distinct vulnerable components adjacent
    to j, so the existing component structure is enough; no recomputation.
    """
    I = as_inoculation_set(g, I)
    if j not in I:
        raise ValueError(f"node {j} is not inoculated")
    comps = vulnerable_components(g, I)
    return 1 + sum(comps.sizes[idx] for idx in _adjacent_component_ids(g, comps, j))


def _adjacent_component_ids(g: Graph, comps: ComponentStructure, j: int) -> list[int]:
    ids = []
    nbr = g.neighbor_masks[j]
    for idx, comp in enumerate(comps.component_masks):
        if comp & nbr:
            ids.append(idx)
    return ids


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_from_dict(obj: dict) -> Graph:
    try:
        n = obj["n"]
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph object: {exc}") from exc
    if not isinstance(n, int):
        raise ValueError("graph field 'n' must be an integer")
    return build_graph(n, edges)


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_dict(g), fh)
        fh.write("\n")
