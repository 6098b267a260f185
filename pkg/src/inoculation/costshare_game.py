"""The cost-sharing variant of the inoculation game.

A strategy is a row of nonnegative contributions toward every node's
inoculation; node j is inoculated when its column sum reaches C.  A node's
cost is its row sum plus its expected infection loss.

At any pure equilibrium four conditions are necessary: (1) no row sum
exceeds C, (2) every column sum is 0 or C, (3) no vulnerable component
exceeds the threshold t = n*C/L, and (4) locality: nobody contributes toward
an inoculation whose removal would leave their own component unchanged.
Necessity is what these checks certify; they are not jointly sufficient.

Full verification is done by exhaustive best response.  A replacement row is
dominated unless it pays each funded node exactly its residual (the gap left
by the other players' contributions): paying less wastes the whole payment,
paying more is pure excess.  Best response therefore searches subsets of the
candidate nodes that could change the player's component, paying residuals,
and candidates whose residual exceeds the largest possible loss reduction
are pruned.  This dominance reasoning is stress-tested by random
perturbation in the test suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .classic_game import EquilibriumReport, GameParams, Violation
from .graph import (
    Graph,
    _flood_from,
    _mask_to_nodes,
    _nodes_to_mask,
    _popcount,
    vulnerable_components,
)

EPS_PAY = 1e-9   # inoculation threshold slack and column-sum classification
EPS_EQ = 1e-9    # deviation comparison slack; ties count as equilibrium


@dataclass(frozen=True)
class PaymentMatrix:
    """Sparse nonnegative payment matrix; entry (i, j, amount) is i's
    contribution toward inoculating j.  Zero entries are dropped."""

    n: int
    entries: tuple[tuple[int, int, float], ...]
    _row_sums: tuple[float, ...] = field(repr=False, default=())
    _col_sums: tuple[float, ...] = field(repr=False, default=())

    def __post_init__(self) -> None:
        seen = set()
        kept = []
        for i, j, amount in self.entries:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"payment ({i},{j}) out of range for n={self.n}")
            if amount < 0:
                raise ValueError(f"negative payment {amount} at ({i},{j})")
            if (i, j) in seen:
                raise ValueError(f"duplicate payment entry ({i},{j})")
            seen.add((i, j))
            if amount > 0:
                kept.append((i, j, float(amount)))
        kept.sort()
        rows = [0.0] * self.n
        cols = [0.0] * self.n
        for i, j, amount in kept:
            rows[i] += amount
            cols[j] += amount
        object.__setattr__(self, "entries", tuple(kept))
        object.__setattr__(self, "_row_sums", tuple(rows))
        object.__setattr__(self, "_col_sums", tuple(cols))

    def row(self, i: int) -> dict[int, float]:
        return {j: amount for pi, j, amount in self.entries if pi == i}

    def row_sum(self, i: int) -> float:
        return self._row_sums[i]

    def column_sum(self, j: int) -> float:
        return self._col_sums[j]

    @property
    def column_sums(self) -> tuple[float, ...]:
        return self._col_sums

    def total(self) -> float:
        return sum(amount for _, _, amount in self.entries)

    def replace_row(self, i: int, row: Mapping[int, float]) -> "PaymentMatrix":
        kept = [e for e in self.entries if e[0] != i]
        kept.extend((i, j, float(a)) for j, a in row.items() if a != 0)
        return PaymentMatrix(n=self.n, entries=tuple(kept))

    @classmethod
    def from_dense(cls, a: list[list[float]]) -> "PaymentMatrix":
        n = len(a)
        entries = [(i, j, row[j]) for i, row in enumerate(a) for j in range(n) if row[j] != 0]
        return cls(n=n, entries=tuple(entries))


def diagonal_payments(n: int, members: Iterable[int], C: float) -> PaymentMatrix:
    """Classic profile embedded as self-payments of C."""
    return PaymentMatrix(n=n, entries=tuple((i, i, float(C)) for i in sorted(set(members))))


def payments_to_dict(A: PaymentMatrix) -> dict:
    return {"n": A.n, "payments": [[i, j, amount] for i, j, amount in A.entries]}


def payments_from_dict(obj: dict) -> PaymentMatrix:
    try:
        n = obj["n"]
        entries = tuple((int(i), int(j), float(a)) for i, j, a in obj["payments"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed payments object: {exc}") from exc
    if not isinstance(n, int):
        raise ValueError("payments field 'n' must be an integer")
    return PaymentMatrix(n=n, entries=entries)


def load_payments(path: str) -> PaymentMatrix:
    with open(path) as fh:
        return payments_from_dict(json.load(fh))


def save_payments(A: PaymentMatrix, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(payments_to_dict(A), fh)
        fh.write("\n")


def induced_inoculation_set(params: GameParams, A: PaymentMatrix) -> frozenset:
    """Nodes whose column sums reach C (within EPS_PAY)."""
    return frozenset(j for j in range(A.n) if A.column_sum(j) >= params.C - EPS_PAY)


def individual_cost_share(params: GameParams, g: Graph, A: PaymentMatrix, i: int) -> float:
    """Row sum plus expected loss under the induced inoculation set."""
    if g.n != A.n:
        raise ValueError("payment matrix size does not match graph")
    I = induced_inoculation_set(params, A)
    k = vulnerable_components(g, I).k[i]
    return A.row_sum(i) + params.L * k / g.n


def _others_column_sums(A: PaymentMatrix, i: int) -> list[float]:
    cols = [0.0] * A.n
    for pi, j, amount in A.entries:
        if pi != i:
            cols[j] += amount
    return cols


def row_replacement_cost(
    params: GameParams, g: Graph, A: PaymentMatrix, i: int, row: Mapping[int, float],
) -> float:
    """Cost for i if its row were replaced by `row`, everyone else unchanged."""
    others = _others_column_sums(A, i)
    for j, amount in row.items():
        others[j] += amount
    inoc_mask = 0
    for j, col in enumerate(others):
        if col >= params.C - EPS_PAY:
            inoc_mask |= 1 << j
    comp = _flood_from(g.neighbor_masks, g.full_mask & ~inoc_mask, i)
    return sum(row.values()) + params.L * _popcount(comp) / g.n


def check_necessary_conditions(params: GameParams, g: Graph, A: PaymentMatrix) -> EquilibriumReport:
    """The four necessary equilibrium conditions; each violation is reported
    with the node (and, for locality, the payment) that witnesses it."""
    if g.n != A.n:
        raise ValueError("payment matrix size does not match graph")
    C = params.C
    violations: list[Violation] = []
    for i in range(g.n):
        if A.row_sum(i) > C + EPS_PAY:
            violations.append(Violation(
                node=i, deviation="row sum exceeds C",
                current_cost=A.row_sum(i), deviating_cost=C * 1.0))
    for j in range(g.n):
        col = A.column_sum(j)
        if col > EPS_PAY and abs(col - C) > EPS_PAY:
            violations.append(Violation(
                node=j, deviation="column sum is neither 0 nor C",
                current_cost=col, deviating_cost=C * 1.0))
    I = induced_inoculation_set(params, A)
    comps = vulnerable_components(g, I)
    t = params.threshold_exact(g.n)
    oversized = set()
    for v in range(g.n):
        if comps.k[v] > t and comps.component_id[v] not in oversized:
            oversized.add(comps.component_id[v])
            violations.append(Violation(
                node=v, deviation="vulnerable component exceeds threshold",
                current_cost=float(comps.k[v]), deviating_cost=float(t)))
    inoc_mask = _nodes_to_mask(I)
    alive = g.full_mask & ~inoc_mask
    created_mask: dict[int, int] = {}
    for i, j, amount in A.entries:
        if j not in I or i == j:
            continue
        if j not in created_mask:
            created_mask[j] = _flood_from(g.neighbor_masks, alive | (1 << j), j)
        # payment is local only if returning j would enlarge i's own component
        if i in I or not (created_mask[j] >> i) & 1:
            violations.append(Violation(
                node=i, deviation=f"nonlocal payment toward {j}",
                current_cost=amount, deviating_cost=0.0))
    return EquilibriumReport(is_equilibrium=not violations, violations=tuple(violations))


@dataclass(frozen=True)
class BestResponse:
    node: int
    payments: dict[int, float]
    cost: float


DEFAULT_SEARCH_LIMIT = 20


def best_response_share(
    params: GameParams,
    g: Graph,
    A: PaymentMatrix,
    i: int,
    limit: int = DEFAULT_SEARCH_LIMIT,
    exclude_current: bool = False,
) -> BestResponse:
    """Exact best replacement row for node i.

    Searches subsets of candidate targets at their residual prices.  With
    exclude_current=True the row funding exactly i's currently funded set is
    skipped, which yields the best genuine deviation (cost may be +inf when
    no deviation can change anything); the margin against the current cost
    then measures strictness.
    """
    if g.n != A.n:
        raise ValueError("payment matrix size does not match graph")
    C, L, n = params.C, params.L, g.n
    others = _others_column_sums(A, i)
    base_mask = 0
    for j, col in enumerate(others):
        if col >= C - EPS_PAY:
            base_mask |= 1 << j
    current_row = {j: a for j, a in A.row(i).items() if a > 0}
    current_targets = frozenset(current_row)

    def is_current_row(chosen: frozenset) -> bool:
        # skip only a literal reproduction of i's row (funded set and prices)
        return chosen == current_targets and all(
            abs(current_row[j] - (C - others[j])) <= 1e-12 for j in chosen)

    if (base_mask >> i) & 1:
        candidates: list[int] = []   # i stays inoculated for free; paying never helps
        k_max = 0
    else:
        comp_mask = _flood_from(g.neighbor_masks, g.full_mask & ~base_mask, i)
        k_max = _popcount(comp_mask)
        candidates = [j for j in _mask_to_nodes(comp_mask)
                      if C - others[j] <= L * k_max / n]
        if len(candidates) > limit:
            raise ValueError(
                f"best-response candidate set too large: {len(candidates)} > limit={limit}")

    best_cost = math.inf
    best_set: frozenset | None = None
    for sub in range(1 << len(candidates)):
        chosen = frozenset(candidates[b] for b in range(len(candidates)) if (sub >> b) & 1)
        if exclude_current and is_current_row(chosen):
            continue
        funded = base_mask | _nodes_to_mask(chosen)
        comp = _flood_from(g.neighbor_masks, g.full_mask & ~funded, i)
        cost = sum(C - others[j] for j in chosen) + L * _popcount(comp) / n
        if cost < best_cost:
            best_cost = cost
            best_set = chosen
    if best_set is None:   # every row was excluded: no deviation is available
        return BestResponse(node=i, payments={}, cost=math.inf)
    return BestResponse(node=i, payments={j: C - others[j] for j in sorted(best_set)},
                        cost=best_cost)


def check_costshare_equilibrium(
    params: GameParams,
    g: Graph,
    A: PaymentMatrix,
    eps_eq: float = EPS_EQ,
    strict: bool = False,
    limit: int = DEFAULT_SEARCH_LIMIT,
) -> EquilibriumReport:
    """Per-node best-response sweep.  Weak mode allows ties; strict mode
    requires every genuine deviation to cost strictly more, and reports the
    per-node margins (best deviation cost minus current cost)."""
    if g.n != A.n:
        raise ValueError("payment matrix size does not match graph")
    I = induced_inoculation_set(params, A)
    comps = vulnerable_components(g, I)
    violations: list[Violation] = []
    margins: list[float] = []
    for i in range(g.n):
        current = A.row_sum(i) + params.L * comps.k[i] / g.n
        br = best_response_share(params, g, A, i, limit=limit, exclude_current=strict)
        margin = br.cost - current
        margins.append(margin)
        bad = margin <= eps_eq if strict else margin < -eps_eq
        if bad:
            violations.append(Violation(
                node=i, deviation=f"replace payments with {br.payments}",
                current_cost=current, deviating_cost=br.cost))
    return EquilibriumReport(is_equilibrium=not violations, violations=tuple(violations),
                             margins=tuple(margins))


@dataclass(frozen=True)
class DeinoculationAnalysis:
    """What returning inoculated node u to the vulnerable graph would create:
    the adjacent components (id, size t_j), their total t, the resulting
    component size t+1, and the complements t_hat_j = t - t_j."""

    node: int
    adjacent_components: tuple[tuple[int, int], ...]
    t: int
    created_size: int
    t_hat: tuple[int, ...]


def analyze_deinoculation(params: GameParams, g: Graph, A: PaymentMatrix, u: int) -> DeinoculationAnalysis:
    I = induced_inoculation_set(params, A)
    if u not in I:
        raise ValueError(f"node {u} is not inoculated under the given payments")
    comps = vulnerable_components(g, I)
    nbr = g.neighbor_masks[u]
    adjacent = tuple((idx, size) for idx, (mask, size)
                     in enumerate(zip(comps.component_masks, comps.sizes)) if mask & nbr)
    t = sum(size for _, size in adjacent)
    return DeinoculationAnalysis(
        node=u, adjacent_components=adjacent, t=t, created_size=t + 1,
        t_hat=tuple(t - size for _, size in adjacent))


def check_deinoculation_size_bound(params: GameParams, g: Graph, A: PaymentMatrix) -> EquilibriumReport:
    """Structural bounds that hold at any verified equilibrium: every
    de-inoculation component has size >= sqrt(n*C/L) - 1, and each adjacent
    component satisfies n*C/L <= t*(t_hat_j + 2) + 1.  Diagnostic only; a
    violation on an arbitrary matrix does not by itself refute equilibrium
    candidacy elsewhere."""
    thr = params.threshold_exact(g.n)
    bound = math.sqrt(params.threshold(g.n)) - 1
    violations: list[Violation] = []
    for u in sorted(induced_inoculation_set(params, A)):
        analysis = analyze_deinoculation(params, g, A, u)
        created = analysis.created_size
        if Fraction(created + 1) ** 2 < thr:   # created < sqrt(thr) - 1, exactly
            violations.append(Violation(
                node=u, deviation="de-inoculation component below size bound",
                current_cost=float(created), deviating_cost=bound))
        for (comp_id, size), t_hat in zip(analysis.adjacent_components, analysis.t_hat):
            if thr > analysis.t * (t_hat + 2) + 1:
                violations.append(Violation(
                    node=u,
                    deviation=f"adjacent component {comp_id} fails the contribution inequality",
                    current_cost=float(analysis.t * (t_hat + 2) + 1),
                    deviating_cost=float(thr)))
    return EquilibriumReport(is_equilibrium=not violations, violations=tuple(violations))
