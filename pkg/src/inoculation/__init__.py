"""Network inoculation games: the classic per-node game, its cost-sharing
extension, equilibrium verification, brute-force oracles, and the cycle
constructions showing how cost sharing improves the best equilibrium."""

from .classic_game import (
    EquilibriumReport,
    GameParams,
    MixedCostResult,
    MixedProfile,
    Violation,
    check_classic_equilibrium,
    check_mixed_necessary_conditions,
    enumerate_classic_equilibria,
    expected_component_size,
    expected_social_cost_mixed,
    individual_cost_classic,
    individual_cost_classic_exact,
    social_cost,
    social_cost_exact,
    social_optimum_bruteforce,
)
from .constructions import (
    CycleEquilibriumSpec,
    best_classic_cycle_equilibrium,
    cycle_equilibrium_scan,
    cycle_graph,
    cycle_payment_scheme,
    evenly_spaced_inoculation,
    scheme_inoculation_count,
)
from .costshare_game import (
    EPS_EQ,
    EPS_PAY,
    BestResponse,
    DeinoculationAnalysis,
    PaymentMatrix,
    analyze_deinoculation,
    best_response_share,
    check_costshare_equilibrium,
    check_deinoculation_size_bound,
    check_necessary_conditions,
    diagonal_payments,
    individual_cost_share,
    induced_inoculation_set,
    load_payments,
    payments_from_dict,
    payments_to_dict,
    row_replacement_cost,
    save_payments,
)
from .experiments import (
    CSV_HEADER,
    ExperimentRow,
    log_log_slope,
    read_rows_csv,
    read_rows_json,
    run_scaling_experiment,
    write_rows_csv,
    write_rows_json,
)
from .graph import (
    ComponentStructure,
    Graph,
    InoculationSet,
    as_inoculation_set,
    build_graph,
    deinoculation_component,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    save_graph,
    vulnerable_components,
)
from .cli import cli_dispatch

__version__ = "0.1.0"

__all__ = [
    "BestResponse",
    "CSV_HEADER",
    "ComponentStructure",
    "CycleEquilibriumSpec",
    "DeinoculationAnalysis",
    "EPS_EQ",
    "EPS_PAY",
    "EquilibriumReport",
    "ExperimentRow",
    "GameParams",
    "Graph",
    "InoculationSet",
    "MixedCostResult",
    "MixedProfile",
    "PaymentMatrix",
    "Violation",
    "analyze_deinoculation",
    "as_inoculation_set",
    "best_classic_cycle_equilibrium",
    "best_response_share",
    "build_graph",
    "check_classic_equilibrium",
    "check_costshare_equilibrium",
    "check_deinoculation_size_bound",
    "check_mixed_necessary_conditions",
    "check_necessary_conditions",
    "cli_dispatch",
    "cycle_equilibrium_scan",
    "cycle_graph",
    "cycle_payment_scheme",
    "deinoculation_component",
    "diagonal_payments",
    "enumerate_classic_equilibria",
    "evenly_spaced_inoculation",
    "expected_component_size",
    "expected_social_cost_mixed",
    "graph_from_dict",
    "graph_to_dict",
    "individual_cost_classic",
    "individual_cost_classic_exact",
    "individual_cost_share",
    "induced_inoculation_set",
    "load_graph",
    "load_payments",
    "log_log_slope",
    "payments_from_dict",
    "payments_to_dict",
    "read_rows_csv",
    "read_rows_json",
    "row_replacement_cost",
    "run_scaling_experiment",
    "save_graph",
    "save_payments",
    "scheme_inoculation_count",
    "social_cost",
    "social_cost_exact",
    "social_optimum_bruteforce",
    "vulnerable_components",
    "write_rows_csv",
    "write_rows_json",
]
