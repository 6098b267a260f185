"""The classic inoculation game.

Each node independently chooses whether to buy protection at cost C.  An
attacker then infects one uniformly random node; infection spreads through
the vulnerable graph, and every infected node loses L.  A vulnerable node in
a component of size k is infected with probability k/n, so its expected cost
is L*k/n, and the threshold component size at which a node is indifferent is
t = n*C/L.

A pure profile (an inoculation set I) is an equilibrium iff
  (a) every vulnerable component has size <= t, and
  (b) removing any j from I would create a component of size >= t.
Ties count as equilibria on both sides.  Threshold comparisons are done in
exact rational arithmetic (binary floats are rationals), so tie cases are
decided exactly rather than by epsilon.

Mixed profiles assign each node an inoculation probability a_i.  S_i denotes
the expected size of i's component conditioned on i staying vulnerable, the
expectation taken over the other nodes' independent draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import (
    Graph,
    _component_masks,
    _flood_from,
    _mask_to_nodes,
    _nodes_to_mask,
    _popcount,
    as_inoculation_set,
    vulnerable_components,
)


@dataclass(frozen=True)
class GameParams:
    """Inoculation cost C and infection loss L, in the same currency units."""

    C: float
    L: float

    def __post_init__(self) -> None:
        if not self.C > 0:
            raise ValueError("C must be positive")
        if not self.L > 0:
            raise ValueError("L must be positive")

    def threshold(self, n: int) -> float:
        return n * self.C / self.L

    def threshold_exact(self, n: int) -> Fraction:
        return Fraction(n) * Fraction(self.C) / Fraction(self.L)


@dataclass(frozen=True)
class Violation:
    node: int
    deviation: str
    current_cost: float
    deviating_cost: float


@dataclass(frozen=True)
class EquilibriumReport:
    is_equilibrium: bool
    violations: tuple[Violation, ...]
    # per-node (best alternative cost - current cost); filled by strict checks
    margins: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        assert self.is_equilibrium == (len(self.violations) == 0)


def individual_cost_classic(params: GameParams, g: Graph, I: Iterable[int], i: int) -> float:
    """C for inoculated i, otherwise the expected infection loss L*k_i/n."""
    I = as_inoculation_set(g, I)
    if i in I:
        return params.C * 1.0
    k = vulnerable_components(g, I).k[i]
    return params.L * k / g.n


def individual_cost_classic_exact(params: GameParams, g: Graph, I: Iterable[int], i: int) -> Fraction:
    I = as_inoculation_set(g, I)
    if i in I:
        return Fraction(params.C)
    k = vulnerable_components(g, I).k[i]
    return Fraction(params.L) * k / g.n


def social_cost_exact(params: GameParams, g: Graph, I: Iterable[int]) -> Fraction:
    """C*|I| + (L/n) * sum of squared component sizes, as an exact rational."""
    I = as_inoculation_set(g, I)
    comps = vulnerable_components(g, I)
    return Fraction(params.C) * len(I) + Fraction(params.L) * comps.sum_squared_sizes / g.n


def social_cost(params: GameParams, g: Graph, I: Iterable[int]) -> float:
    return float(social_cost_exact(params, g, I))


def check_classic_equilibrium(params: GameParams, g: Graph, I: Iterable[int]) -> EquilibriumReport:
    """Condition check: component sizes vs t and de-inoculation sizes vs t.

    Equivalent to testing that no single node strictly improves by flipping
    its choice; the correspondence is exercised against a flip oracle in the
    test suite.
    """
    I = as_inoculation_set(g, I)
    comps = vulnerable_components(g, I)
    t = params.threshold_exact(g.n)
    violations: list[Violation] = []
    for v in range(g.n):
        if v in I:
            continue
        if comps.k[v] > t:  # vulnerable node prefers to inoculate
            violations.append(Violation(
                node=v, deviation="inoculate",
                current_cost=params.L * comps.k[v] / g.n, deviating_cost=params.C * 1.0))
    for j in sorted(I):
        nbr = g.neighbor_masks[j]
        created = 1 + sum(size for comp, size in zip(comps.component_masks, comps.sizes)
                          if comp & nbr)
        if created < t:  # inoculated node prefers to stop paying
            violations.append(Violation(
                node=j, deviation="de-inoculate",
                current_cost=params.C * 1.0, deviating_cost=params.L * created / g.n))
    return EquilibriumReport(is_equilibrium=not violations, violations=tuple(violations))


DEFAULT_ENUMERATION_LIMIT = 20


def _subset_cost_exact(params: GameParams, g: Graph, mask: int, ssq: int) -> Fraction:
    return Fraction(params.C) * _popcount(mask) + Fraction(params.L) * ssq / g.n


def enumerate_classic_equilibria(
    params: GameParams, g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> list[tuple[frozenset, float]]:
    """All pure equilibria with their social costs, cheapest first."""
    if g.n > limit:
        raise ValueError(f"graph too large for enumeration: n={g.n} > limit={limit}")
    t = params.threshold_exact(g.n)
    full = g.full_mask
    nbrs = g.neighbor_masks
    found: list[tuple[Fraction, int]] = []
    for mask in range(1 << g.n):
        comp_masks = _component_masks(nbrs, full & ~mask)
        sizes = [_popcount(c) for c in comp_masks]
        if any(s > t for s in sizes):
            continue
        ok = True
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            nbr = nbrs[low.bit_length() - 1]
            created = 1 + sum(s for c, s in zip(comp_masks, sizes) if c & nbr)
            if created < t:
                ok = False
                break
        if ok:
            ssq = sum(s * s for s in sizes)
            found.append((_subset_cost_exact(params, g, mask, ssq), mask))
    found.sort()
    return [(frozenset(_mask_to_nodes(mask)), float(cost)) for cost, mask in found]


def social_optimum_bruteforce(
    params: GameParams, g: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> tuple[frozenset, float]:
    """Exhaustive minimizer of the social cost over all inoculation sets."""
    if g.n > limit:
        raise ValueError(f"graph too large for enumeration: n={g.n} > limit={limit}")
    full = g.full_mask
    nbrs = g.neighbor_masks
    best_cost: Fraction | None = None
    best_mask = 0
    for mask in range(1 << g.n):
        ssq = sum(_popcount(c) ** 2 for c in _component_masks(nbrs, full & ~mask))
        cost = _subset_cost_exact(params, g, mask, ssq)
        if best_cost is None or cost < best_cost:
            best_cost, best_mask = cost, mask
    return frozenset(_mask_to_nodes(best_mask)), float(best_cost)


@dataclass(frozen=True)
class MixedProfile:
    """Per-node inoculation probabilities."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        for p in self.probs:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")

    @classmethod
    def pure(cls, n: int, I: Iterable[int]) -> "MixedProfile":
        members = frozenset(I)
        return cls(tuple(1.0 if v in members else 0.0 for v in range(n)))


@dataclass(frozen=True)
class MixedCostResult:
    cost: float
    s_values: tuple[float, ...]
    stderr: float | None = None
    samples: int | None = None


DEFAULT_EXACT_LIMIT = 16


def _expected_component_size_exact(g: Graph, probs: list[Fraction], i: int) -> Fraction:
    """S_i: expected size of i's component with i forced vulnerable, summing
    over the other nodes' outcomes.  Zero-probability branches are pruned, so
    degenerate 0/1 profiles cost a single path."""
    others = [v for v in range(g.n) if v != i]
    nbrs = g.neighbor_masks
    full = g.full_mask
    total = Fraction(0)

    def recurse(idx: int, inoc_mask: int, prob: Fraction) -> None:
        nonlocal total
        if prob == 0:
            return
        if idx == len(others):
            comp = _flood_from(nbrs, full & ~inoc_mask, i)
            total += prob * _popcount(comp)
            return
        v = others[idx]
        p = probs[v]
        recurse(idx + 1, inoc_mask | (1 << v), prob * p)
        recurse(idx + 1, inoc_mask, prob * (1 - p))

    recurse(0, 0, Fraction(1))
    return total


def expected_component_size(g: Graph, profile: MixedProfile, i: int) -> float:
    probs = [Fraction(p) for p in profile.probs]
    return float(_expected_component_size_exact(g, probs, i))


def _mixed_cost_exact(params: GameParams, g: Graph, profile: MixedProfile) -> tuple[Fraction, list[Fraction]]:
    probs = [Fraction(p) for p in profile.probs]
    s_exact = [_expected_component_size_exact(g, probs, i) for i in range(g.n)]
    C, L = Fraction(params.C), Fraction(params.L)
    cost = sum((probs[i] * C + (1 - probs[i]) * L * s_exact[i] / g.n for i in range(g.n)),
               Fraction(0))
    return cost, s_exact


def _sample_masks(g: Graph, profile: MixedProfile, samples: int, seed: int | None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    probs = np.asarray(profile.probs)
    if g.n <= 62:
        weights = np.uint64(1) << np.arange(g.n, dtype=np.uint64)
        out = np.zeros(samples, dtype=np.uint64)
        chunk = max(1, min(samples, 4_000_000 // max(g.n, 1)))
        done = 0
        while done < samples:
            m = min(chunk, samples - done)
            draws = rng.random((m, g.n)) < probs
            out[done:done + m] = (draws.astype(np.uint64) * weights).sum(axis=1)
            done += m
        return out
    # wide graphs: fall back to python ints held in an object array
    out = np.empty(samples, dtype=object)
    for s in range(samples):
        draws = rng.random(g.n) < probs
        out[s] = _nodes_to_mask(np.flatnonzero(draws).tolist())
    return out


def _mixed_cost_montecarlo(
    params: GameParams, g: Graph, profile: MixedProfile, samples: int, seed: int | None,
) -> MixedCostResult:
    masks = _sample_masks(g, profile, samples, seed)
    uniq, counts = np.unique(masks, return_counts=True)
    full = g.full_mask
    nbrs = g.neighbor_masks
    n = g.n
    C, L = params.C, params.L
    costs = np.empty(len(uniq), dtype=float)
    k_sum = [0.0] * n   # weighted k_i over samples where i is vulnerable
    k_cnt = [0.0] * n
    for idx, (m, w) in enumerate(zip(uniq, counts)):
        mask = int(m)
        comp_masks = _component_masks(nbrs, full & ~mask)
        ssq = 0
        for comp in comp_masks:
            size = _popcount(comp)
            ssq += size * size
            fw = float(w)
            for v in _mask_to_nodes(comp):
                k_sum[v] += fw * size
                k_cnt[v] += fw
        costs[idx] = C * _popcount(mask) + L / n * ssq
    w = counts.astype(float)
    total = w.sum()
    mean = float((costs * w).sum() / total)
    var = float(((costs - mean) ** 2 * w).sum() / (total - 1)) if total > 1 else 0.0
    stderr = math.sqrt(var / total)
    s_values = tuple(k_sum[v] / k_cnt[v] if k_cnt[v] > 0 else math.nan for v in range(n))
    return MixedCostResult(cost=mean, s_values=s_values, stderr=stderr, samples=samples)


def expected_social_cost_mixed(
    params: GameParams,
    g: Graph,
    profile: MixedProfile,
    mode: str = "exact",
    samples: int = 100_000,
    seed: int | None = None,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> MixedCostResult:
    """Expected social cost sum_i [a_i*C + (1-a_i)*(L/n)*S_i].

    Exact mode enumerates outcomes in rational arithmetic (n capped by
    exact_limit); on a 0/1 profile the result is bit-identical to
    social_cost of the corresponding set.  Monte Carlo mode samples whole
    profiles with a seedable generator and reports a standard error.
    """
    if len(profile.probs) != g.n:
        raise ValueError("profile length does not match graph size")
    if mode == "exact":
        if g.n > exact_limit:
            raise ValueError(f"exact mode infeasible: n={g.n} > exact_limit={exact_limit}")
        cost, s_exact = _mixed_cost_exact(params, g, profile)
        return MixedCostResult(cost=float(cost), s_values=tuple(float(s) for s in s_exact))
    if mode == "montecarlo":
        if samples < 2:
            raise ValueError("montecarlo mode needs at least 2 samples")
        return _mixed_cost_montecarlo(params, g, profile, samples, seed)
    raise ValueError(f"unknown mode {mode!r}")


def check_mixed_necessary_conditions(
    params: GameParams,
    g: Graph,
    profile: MixedProfile,
    tol: float = 1e-9,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> EquilibriumReport:
    """Necessary (not sufficient) equilibrium conditions on the S_i values:
    S_i >= t where a_i = 1, S_i <= t where a_i = 0, S_i = t (within tol)
    where a_i is fractional."""
    if len(profile.probs) != g.n:
        raise ValueError("profile length does not match graph size")
    if g.n > exact_limit:
        raise ValueError(f"exact S_i computation infeasible: n={g.n} > exact_limit={exact_limit}")
    probs = [Fraction(p) for p in profile.probs]
    t = params.threshold_exact(g.n)
    violations: list[Violation] = []
    for i in range(g.n):
        s_i = _expected_component_size_exact(g, probs, i)
        a = profile.probs[i]
        loss = float(Fraction(params.L) * s_i / g.n)
        if a == 1.0:
            bad, label = s_i < t, "stop inoculating"
        elif a == 0.0:
            bad, label = s_i > t, "inoculate"
        else:
            bad = abs(s_i - t) > Fraction(tol)
            label = "shift to the cheaper pure strategy"
        if bad:
            current = a * params.C + (1 - a) * loss
            violations.append(Violation(node=i, deviation=label,
                                        current_cost=current,
                                        deviating_cost=min(params.C * 1.0, loss)))
    return EquilibriumReport(is_equilibrium=not violations, violations=tuple(violations))
