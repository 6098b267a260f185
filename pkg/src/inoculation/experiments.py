"""Scaling study on cycles and delimited-output plumbing.

For each requested n the study builds the cost-sharing scheme, verifies it
when n is within the verification budget, and compares its social cost with
the best classic pure equilibrium and with the social optimum.  Results are
plain rows, written as CSV or JSON that parses back bit-for-bit.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass

import numpy as np

from .classic_game import GameParams, social_cost, social_optimum_bruteforce
from .classic_game import DEFAULT_ENUMERATION_LIMIT
from .constructions import (
    best_classic_cycle_equilibrium,
    cycle_graph,
    cycle_payment_scheme,
    evenly_spaced_inoculation,
    scheme_inoculation_count,
)
from .costshare_game import check_costshare_equilibrium, induced_inoculation_set

CSV_HEADER = "n,C,L,classic_best_cost,costshare_cost,social_optimum,ratio,verified"
DEFAULT_VERIFY_LIMIT = 2048


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    C: float
    L: float
    classic_best_cost: float
    costshare_cost: float
    social_optimum: float
    ratio: float
    verified: bool

    @property
    def price_of_stability(self) -> float:
        """Optimum relative to the constructed equilibrium; 1 means the
        equilibrium is socially optimal."""
        return self.social_optimum / self.costshare_cost


def _optimum_estimate(params: GameParams, n: int) -> float:
    """Beyond enumeration reach: evaluate the evenly spaced set of the
    cost-minimizing size round(sqrt(n*L/C))."""
    m = scheme_inoculation_count(params, n)
    m = max(1, min(n, m))
    g = cycle_graph(n)
    return social_cost(params, g, evenly_spaced_inoculation(n, m))


def run_scaling_experiment(
    L: float,
    C: float,
    sizes: list[int],
    verify_limit: int = DEFAULT_VERIFY_LIMIT,
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> list[ExperimentRow]:
    params = GameParams(C=C, L=L)
    rows = []
    for n in sizes:
        g = cycle_graph(n)
        A, _ = cycle_payment_scheme(params, n, epsilon=0.0)
        I = induced_inoculation_set(params, A)
        costshare_cost = social_cost(params, g, I)
        verified = False
        if n <= verify_limit:
            report = check_costshare_equilibrium(params, g, A)
            verified = report.is_equilibrium
            if not verified:
                warnings.warn(f"scheme at n={n} failed equilibrium verification; "
                              f"row marked unverified")
        _, classic_best = best_classic_cycle_equilibrium(params, n, enumeration_limit)
        if n <= enumeration_limit:
            _, optimum = social_optimum_bruteforce(params, g, enumeration_limit)
        else:
            optimum = _optimum_estimate(params, n)
        rows.append(ExperimentRow(
            n=n, C=float(C), L=float(L),
            classic_best_cost=classic_best, costshare_cost=costshare_cost,
            social_optimum=optimum, ratio=classic_best / costshare_cost,
            verified=verified))
    return rows


def log_log_slope(rows: list[ExperimentRow]) -> float:
    """Least-squares slope of log(ratio) against log(n)."""
    if len(rows) < 2:
        raise ValueError("need at least two rows to fit a slope")
    x = np.log([row.n for row in rows])
    y = np.log([row.ratio for row in rows])
    return float(np.polyfit(x, y, 1)[0])


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_rows_csv(rows: list[ExperimentRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER.split(","))
        for r in rows:
            writer.writerow([r.n, _fmt(r.C), _fmt(r.L), _fmt(r.classic_best_cost),
                             _fmt(r.costshare_cost), _fmt(r.social_optimum),
                             _fmt(r.ratio), "true" if r.verified else "false"])


def read_rows_csv(path: str) -> list[ExperimentRow]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER.split(","):
            raise ValueError(f"unexpected CSV header: {header}")
        rows = []
        for rec in reader:
            if not rec:
                continue
            rows.append(ExperimentRow(
                n=int(rec[0]), C=float(rec[1]), L=float(rec[2]),
                classic_best_cost=float(rec[3]), costshare_cost=float(rec[4]),
                social_optimum=float(rec[5]), ratio=float(rec[6]),
                verified=rec[7] == "true"))
    return rows


def write_rows_json(rows: list[ExperimentRow], path: str) -> None:
    payload = {"rows": [{
        "n": r.n, "C": r.C, "L": r.L,
        "classic_best_cost": r.classic_best_cost,
        "costshare_cost": r.costshare_cost,
        "social_optimum": r.social_optimum,
        "ratio": r.ratio, "verified": r.verified,
    } for r in rows]}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_rows_json(path: str) -> list[ExperimentRow]:
    with open(path) as fh:
        payload = json.load(fh)
    return [ExperimentRow(**obj) for obj in payload["rows"]]
