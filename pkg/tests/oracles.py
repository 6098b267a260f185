"""Reference implementations used only for cross-checking.

Everything here is deliberately written against plain adjacency structures
(BFS, union-find) rather than the package's bitmask kernel, so agreement is
meaningful.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction


def adjacency(n: int, edges) -> list[set]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def components_bfs(n: int, edges, inoculated) -> tuple[list[int], list[set]]:
    """Per-node component size k (0 for inoculated) and component member sets."""
    adj = adjacency(n, edges)
    inoculated = set(inoculated)
    seen = set(inoculated)
    members: list[set] = []
    for start in range(n):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        members.append(comp)
    k = [0] * n
    for comp in members:
        for v in comp:
            k[v] = len(comp)
    return k, members


def union_find_sizes(n: int, edges, inoculated) -> list[int]:
    """Component sizes again, via union-find this time."""
    inoculated = set(inoculated)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u not in inoculated and v not in inoculated:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    counts: dict[int, int] = {}
    for v in range(n):
        if v not in inoculated:
            counts[find(v)] = counts.get(find(v), 0) + 1
    return sorted(counts.values())


def social_cost_by_attack_simulation(C, L, n: int, edges, inoculated) -> Fraction:
    """Average total damage over all n equally likely attack entry points,
    plus the inoculation spending."""
    inoculated = set(inoculated)
    k, _ = components_bfs(n, edges, inoculated)
    total_damage = Fraction(0)
    for start in range(n):
        if start in inoculated:
            continue  # attack fizzles
        total_damage += Fraction(L) * k[start]  # everyone in the component loses L
    return Fraction(C) * len(inoculated) + total_damage / n


def restored_component_size(n: int, edges, inoculated, j: int) -> int:
    """Size of j's component after removing j from the inoculated set,
    recomputed from scratch."""
    k, _ = components_bfs(n, edges, set(inoculated) - {j})
    return k[j]


def is_equilibrium_by_flips(C, L, n: int, edges, inoculated) -> bool:
    """No node strictly improves by flipping its pure choice.  Comparisons in
    exact rational arithmetic so ties behave the same as the checker."""
    inoculated = set(inoculated)
    C, L = Fraction(C), Fraction(L)
    k, _ = components_bfs(n, edges, inoculated)
    for v in range(n):
        if v in inoculated:
            restored = restored_component_size(n, edges, inoculated, v)
            if L * restored / n < C:
                return False
        else:
            if C < L * k[v] / n:
                return False
    return True


def random_graph(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def random_connected_graph(rng: random.Random, n: int, extra_p: float = 0.2) -> list[tuple[int, int]]:
    """Random spanning tree plus extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for idx in range(1, n):
        anchor = order[rng.randrange(idx)]
        edges.add(tuple(sorted((order[idx], anchor))))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_p:
                edges.add((u, v))
    return sorted(edges)


def bfs_component_size(adj: list[set], blocked: set, start: int) -> int:
    """Size of start's component when blocked nodes are removed."""
    comp = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in blocked and w not in comp:
                comp.add(w)
                queue.append(w)
    return len(comp)


def equilibrium_masks_by_flips(C, L, n: int, edges) -> set:
    """Bitmasks of all inoculation sets that survive single-flip deviation
    testing, sweeping every one of the 2^n subsets.

    Thresholds are cross-multiplied integers so ties behave exactly."""
    adj = adjacency(n, edges)
    q = Fraction(n) * Fraction(C) / Fraction(L)
    t_num, t_den = q.numerator, q.denominator
    masks = set()
    for mask in range(1 << n):
        inoculated = {v for v in range(n) if (mask >> v) & 1}
        k = [0] * n
        seen = set(inoculated)
        for start in range(n):
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if w not in seen and w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            for v in comp:
                k[v] = len(comp)
        ok = True
        for v in range(n):
            if v in inoculated:
                restored = bfs_component_size(adj, inoculated - {v}, v)
                if restored * t_den < t_num:   # de-inoculating improves
                    ok = False
                    break
            elif k[v] * t_den > t_num:         # inoculating improves
                ok = False
                break
        if ok:
            masks.add(mask)
    return masks
