"""Simulation harness: synthetic genomes, causal scenarios, phenotypes and metrics."""
from .selection_metrics import (
    SelectionMetrics,
    aggregate_selection_metrics,
    calculate_fdr,
    calculate_fscore,
    calculate_power,
    mean_and_standard_error,
    score_selection,
)
from .genotypes import SimulatedGenome, SimulationConfig, simulate_genotypes
from .scenarios import InfeasibleScenarioError, Scenario, even_split, place_causal, satisfies_scenario
from .phenotypes import simulate_phenotype
from .study import METHODS, SimulationStudy, aggregate_records, format_metrics_table, run_study
from .benchmark import BenchmarkRow, benchmark, chain_network, random_network

__all__ = [
    "SelectionMetrics",
    "aggregate_selection_metrics",
    "calculate_fdr",
    "calculate_fscore",
    "calculate_power",
    "mean_and_standard_error",
    "score_selection",
    "SimulatedGenome",
    "SimulationConfig",
    "simulate_genotypes",
    "InfeasibleScenarioError",
    "Scenario",
    "even_split",
    "place_causal",
    "satisfies_scenario",
    "simulate_phenotype",
    "METHODS",
    "SimulationStudy",
    "aggregate_records",
    "format_metrics_table",
    "run_study",
    "BenchmarkRow",
    "benchmark",
    "chain_network",
    "random_network",
]
