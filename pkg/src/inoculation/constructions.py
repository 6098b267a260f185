"""Cycle-graph constructions.

The cost-sharing scheme on a cycle inoculates m evenly spaced nodes, where m
is chosen near sqrt(n*L/C): each vulnerable node pays C/(s_c+1) toward its
nearest inoculated node (s_c = its component size, ties broken clockwise)
and each inoculated node self-funds the remaining gap, so every funded
column sums to C.  With an exact split (m | n, epsilon = 0) every deviation
ties; shrinking m by a factor (1 - epsilon) makes deviations strictly
losing.

The classic baseline for comparison is the cheapest pure equilibrium of the
original game: exact by enumeration at small n, and by a scan over the
evenly-spaced family at large n (the scan is certified against enumeration
for all n <= 18 in the test suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .classic_game import (
    DEFAULT_ENUMERATION_LIMIT,
    GameParams,
    enumerate_classic_equilibria,
)
from .costshare_game import PaymentMatrix
from .graph import Graph, build_graph, vulnerable_components


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs at least 3 nodes, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def evenly_spaced_inoculation(n: int, m: int) -> frozenset:
    """m nodes at positions floor(r*n/m); component sizes differ by <= 1."""
    if not 1 <= m <= n:
        raise ValueError(f"m={m} out of range 1..{n}")
    return frozenset((r * n) // m for r in range(m))


@dataclass(frozen=True)
class CycleEquilibriumSpec:
    """Shape of a cycle scheme: node count n, inoculated count m, minimum
    component size s (n = m*(s+1) when the split is exact), the robustness
    parameter epsilon, and the vulnerable-to-funded-node assignment."""

    n: int
    m: int
    s: int
    epsilon: float
    assignment: dict[int, int]


def scheme_inoculation_count(params: GameParams, n: int, epsilon: float = 0.0) -> int:
    return round((1 - epsilon) * math.sqrt(n * params.L / params.C))


def cycle_payment_scheme(
    params: GameParams, n: int, epsilon: float = 0.0,
) -> tuple[PaymentMatrix, CycleEquilibriumSpec]:
    """Equal-share payment scheme on the n-cycle.

    Returns the payment matrix together with the spec describing it.  Raises
    when the parameters leave m < 1 or would make some component empty
    (s < 1).
    """
    if not 0 <= epsilon < 1:
        raise ValueError(f"epsilon={epsilon} outside [0, 1)")
    g = cycle_graph(n)
    m = scheme_inoculation_count(params, n, epsilon)
    if m < 1:
        raise ValueError(f"parameters give m={m} < 1 inoculated nodes")
    s = n // m - 1
    if s < 1:
        raise ValueError(f"parameters give component size s={s} < 1")
    positions = sorted(evenly_spaced_inoculation(n, m))
    I = frozenset(positions)
    comps = vulnerable_components(g, I)

    assignment: dict[int, int] = {}
    for v in range(n):
        if v in I:
            continue
        cw = min((p - v) % n for p in positions)
        ccw = min((v - p) % n for p in positions)
        assignment[v] = (v + cw) % n if cw <= ccw else (v - ccw) % n

    external = {p: 0.0 for p in positions}
    entries = []
    for v, target in sorted(assignment.items()):
        share = params.C / (comps.k[v] + 1)
        entries.append((v, target, share))
        external[target] += share
    for p in positions:
        gap = params.C - external[p]
        if gap > 0:
            entries.append((p, p, gap))
    A = PaymentMatrix(n=n, entries=tuple(entries))
    spec = CycleEquilibriumSpec(n=n, m=m, s=s, epsilon=epsilon, assignment=assignment)
    return A, spec


def _cycle_gaps(n: int, m: int) -> list[int]:
    """Distances between consecutive evenly spaced positions (cyclically)."""
    positions = [(r * n) // m for r in range(m)]
    return [positions[r + 1] - positions[r] for r in range(m - 1)] + \
        [n - positions[m - 1] + positions[0]]


def cycle_equilibrium_scan(params: GameParams, n: int) -> tuple[frozenset, float]:
    """Cheapest classic equilibrium among evenly spaced inoculation sets
    (including the empty set), all comparisons in exact arithmetic.

    Component sizes are gaps minus one; de-inoculating a node merges its two
    flanking components, so only the largest gap and the smallest adjacent
    gap pair decide whether m qualifies.
    """
    if n < 3:
        raise ValueError(f"cycle needs at least 3 nodes, got {n}")
    t = params.threshold_exact(n)
    t_num, t_den = t.numerator, t.denominator
    C, L = Fraction(params.C), Fraction(params.L)
    best: tuple[Fraction, int] | None = None
    if n * t_den <= t_num:  # nobody inoculates; the whole cycle is one component
        best = (L * n, 0)
    for m in range(1, n + 1):
        gaps = _cycle_gaps(n, m)
        if (max(gaps) - 1) * t_den > t_num:
            continue
        if m == 1:
            merged = n
        else:
            merged = min(a + b for a, b in zip(gaps, gaps[1:] + gaps[:1])) - 1
        if merged * t_den < t_num:
            continue
        ssq = sum((gap - 1) * (gap - 1) for gap in gaps)
        cost = C * m + L * ssq / n
        if best is None or cost < best[0]:
            best = (cost, m)
    if best is None:
        raise RuntimeError(f"no evenly spaced equilibrium exists for n={n}")
    cost, m = best
    members = evenly_spaced_inoculation(n, m) if m else frozenset()
    return members, float(cost)


def best_classic_cycle_equilibrium(
    params: GameParams, n: int, enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> tuple[frozenset, float]:
    """Cheapest pure classic equilibrium on the n-cycle: exhaustive when n is
    small enough, otherwise the evenly-spaced scan."""
    if n <= enumeration_limit:
        equilibria = enumerate_classic_equilibria(params, cycle_graph(n), enumeration_limit)
        if not equilibria:
            raise RuntimeError(f"no pure equilibrium found on the {n}-cycle")
        return equilibria[0]
    return cycle_equilibrium_scan(params, n)
