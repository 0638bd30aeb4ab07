"""Repeated simulation study comparing selection methods across scenarios and networks."""
import logging
from collections import defaultdict
from datetime import datetime
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from association.scores import association_scores
from association.univariate import univariate_baseline
from genotype_data.loaders import _write_lines, format_number
from genotype_data.models import Dataset
from genotype_data.random_streams import derive_int_seed, derive_rng
from genotype_data.serialization import write_json
from model_selection.cross_validation import AllCellsFilteredError, CvConfig, cross_validate
from snp_network.builders import NetworkKind, build_network
from snp_network.network import remove_edges
from .genotypes import SimulatedGenome, SimulationConfig, simulate_genotypes
from .phenotypes import simulate_phenotype
from .scenarios import Scenario, place_causal
from .selection_metrics import aggregate_selection_metrics, score_selection, SelectionMetrics

logger = logging.getLogger(__name__)

METHODS = ("scones", "univariate", "oracle", "random")
NO_NETWORK = "-"
STUDY_MAX_SELECTED_FRAC = 0.1
# chi-square scale keeps arc capacities inside int32 for the Dinic solver
study_scorer = partial(association_scores, normalize=True)


def default_study_cv_config() -> CvConfig:
    """CV settings used in simulations.

    The default 7 x 7 grid is read in units of the median fold score, and only
    cells selecting more than a tenth of the SNPs are filtered.
    """
    return CvConfig(relative_grid=True, grid_unit="median", max_selected_frac=STUDY_MAX_SELECTED_FRAC)


class SimulationStudy:
    """Runs every (scenario, repeat) task and aggregates per-method metrics.

    Handles:
    - simulating genomes, causal sets and phenotypes per repeat
    - running each method (and each network / edge-removal fraction for the
      network-guided method)
    - aggregating mean and standard error across repeats
    - writing JSON, TSV and markdown reports
    """

    def __init__(
        self,
        config: SimulationConfig,
        cv_config: Optional[CvConfig] = None,
        networks: Sequence[str] = ("gs",),
        removal_fractions: Sequence[float] = (0.0,),
        alpha: float = 0.05,
        n_jobs: int = 1,
    ):
        self.config = config
        self.cv_config = cv_config or default_study_cv_config()
        self.networks = [NetworkKind(k) for k in networks]
        self.removal_fractions = sorted(set(float(f) for f in removal_fractions))
        if any(not 0.0 <= f <= 1.0 for f in self.removal_fractions):
            raise ValueError("Edge-removal fractions must be in [0, 1]")
        self.alpha = alpha
        self.n_jobs = n_jobs

    def _network_selections(
        self, genome: SimulatedGenome, dataset: Dataset, scenario: Scenario, repeat: int
    ) -> List[Tuple[str, float, Tuple[int, ...], bool]]:
        seed = self.config.rng_seed
        out = []
        for kind in self.networks:
            network = build_network(
                kind, genome.snp_map, genome.genes, genome.interactions, window=self.config.window
            )
            for fraction in self.removal_fractions:
                pruned = remove_edges(
                    network, fraction, derive_int_seed(seed, "remove-edges", kind.value, fraction, repeat)
                )
                cv_config = self.cv_config.model_copy(update={
                    "rng_seed": derive_int_seed(seed, "cv", scenario.value, repeat),
                    "n_jobs": 1,
                })
                try:
                    selected = cross_validate(dataset, pruned, cv_config, scorer=study_scorer).final_selection
                    failed = False
                except AllCellsFilteredError as e:
                    logger.warning("Scenario %s repeat %d on %s: %s", scenario.value, repeat, kind.value, e)
                    selected, failed = (), True
                out.append((kind.value, fraction, selected, failed))
        return out

    def run_task(self, scenario: Scenario, repeat: int, methods: Sequence[str]) -> List[Dict[str, Any]]:
        """Simulate one repeat of one scenario and score every method on it."""
        config, seed = self.config, self.config.rng_seed
        genome = simulate_genotypes(config, repeat)
        causal = place_causal(
            scenario, genome.snp_map, genome.genes, genome.interactions, config.n_causal,
            derive_rng(seed, "causal", scenario.value, repeat), window=config.window,
        )
        phenotype, _ = simulate_phenotype(
            genome.genotypes, causal, config.effect_sd, config.noise_sd,
            derive_rng(seed, "phenotype", scenario.value, repeat),
        )
        dataset = Dataset(genotypes=genome.genotypes, phenotype=phenotype)

        selections: List[Tuple[str, str, float, Tuple[int, ...], bool]] = []
        for method in methods:
            if method == "scones":
                for network, fraction, selected, failed in self._network_selections(
                    genome, dataset, scenario, repeat
                ):
                    selections.append((method, network, fraction, selected, failed))
            elif method == "univariate":
                result = univariate_baseline(genome.genotypes, phenotype, None, self.alpha)
                selections.append((method, NO_NETWORK, 0.0, result.selected, False))
            elif method == "oracle":
                selections.append((method, NO_NETWORK, 0.0, tuple(causal.tolist()), False))
            elif method == "random":
                rng = derive_rng(seed, "random-selection", scenario.value, repeat)
                picked = np.sort(rng.choice(config.n, size=config.n_causal, replace=False))
                selections.append((method, NO_NETWORK, 0.0, tuple(picked.tolist()), False))
            else:
                raise ValueError(f"Unknown method {method!r}; choose from {METHODS}")

        records = []
        for method, network, fraction, selected, failed in selections:
            metrics = score_selection(selected, causal, config.n)
            records.append({
                "scenario": scenario.value,
                "method": method,
                "network": network,
                "removal_fraction": fraction,
                "repeat": repeat,
                "failed": failed,
                **metrics.to_dict(),
            })
        return records

    def run(self, scenarios: Sequence[str], methods: Sequence[str], repeats: int) -> Dict[str, Any]:
        """Run all tasks and aggregate.

        Returns:
            Dictionary with the configuration, one aggregated cell per
            (scenario, method, network, removal_fraction) and the raw records
        """
        if repeats < 1:
            raise ValueError("repeats must be >= 1")
        scenarios = [Scenario(s) for s in scenarios]
        unknown = [m for m in methods if m not in METHODS]
        if unknown:
            raise ValueError(f"Unknown methods {unknown}; choose from {METHODS}")

        tasks = [(s, r) for s in scenarios for r in range(repeats)]
        logger.info("Running %d simulation tasks", len(tasks))
        outputs = Parallel(n_jobs=self.n_jobs, prefer="threads")(
            delayed(self.run_task)(s, r, methods) for s, r in tasks
        )
        records = sorted(
            (rec for task_records in outputs for rec in task_records),
            key=lambda r: (r["scenario"], r["method"], r["network"], r["removal_fraction"], r["repeat"]),
        )
        return {
            "evaluation_type": "simulation_study",
            "config": self.config.model_dump(),
            "cv_config": self.cv_config.model_dump(),
            "scenarios": [s.value for s in scenarios],
            "methods": list(methods),
            "repeats": repeats,
            "cells": aggregate_records(records),
            "records": records,
            "timestamp": datetime.now().isoformat(),
        }

    def generate_report(self, results: Dict[str, Any], output_path) -> Dict[str, Path]:
        """Write results.json, metrics.tsv and report.md into ``output_path``."""
        output_dir = Path(output_path)
        output_dir.mkdir(parents=True, exist_ok=True)

        report_results = {k: v for k, v in results.items() if k != "timestamp"}
        paths = {
            "json": write_json(report_results, output_dir / "results.json"),
            "tsv": output_dir / "metrics.tsv",
            "markdown": output_dir / "report.md",
        }
        _write_lines(paths["tsv"], format_metrics_table(results))
        with open(paths["markdown"], "w", newline="\n") as f:
            f.write(self._format_markdown_report(results))
        return paths

    def _format_markdown_report(self, results: Dict[str, Any]) -> str:
        config = results["config"]
        lines = ["# Simulation Study Report", ""]
        lines.append(f"**Scenarios**: {', '.join(results['scenarios'])}")
        lines.append(f"**Repeats**: {results['repeats']}")
        lines.append(f"**Individuals x SNPs**: {config['m']} x {config['n']}, {config['n_causal']} causal")
        lines.append(
            f"**Assumed effect/noise SD**: {format_number(config['effect_sd'])} / "
            f"{format_number(config['noise_sd'])} (assumed defaults)"
        )
        lines.append("")
        lines.append("| Scenario | Method | Network | Removed | F-score | SE | Power | FDR | #Selected |")
        lines.append("|---|---|---|---|---|---|---|---|---|")
        for cell in results["cells"]:
            se = cell["fscore"]["se"]
            lines.append(
                f"| {cell['scenario']} | {cell['method']} | {cell['network']} | "
                f"{cell['removal_fraction']:.2f} | {cell['fscore']['mean']:.4f} | "
                f"{'-' if se is None else f'{se:.4f}'} | {cell['power']['mean']:.4f} | "
                f"{cell['fdr']['mean']:.4f} | {cell['n_selected']['mean']:.1f} |"
            )
        lines.append("")
        return "\n".join(lines)


def aggregate_records(records: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Group records by (scenario, method, network, removal_fraction) and aggregate."""
    groups: Dict[tuple, List[Dict[str, Any]]] = defaultdict(list)
    for rec in records:
        groups[(rec["scenario"], rec["method"], rec["network"], rec["removal_fraction"])].append(rec)

    cells = []
    for key in sorted(groups):
        group = sorted(groups[key], key=lambda r: r["repeat"])
        metrics = [
            SelectionMetrics(power=r["power"], fdr=r["fdr"], fscore=r["fscore"], n_selected=r["n_selected"])
            for r in group
        ]
        aggregated = aggregate_selection_metrics(metrics)
        scenario, method, network, fraction = key
        cells.append({
            "scenario": scenario,
            "method": method,
            "network": network,
            "removal_fraction": fraction,
            "repeats": aggregated["repeats"],
            "n_failed": sum(1 for r in group if r["failed"]),
            **{name: {"mean": aggregated[name]["mean"], "se": aggregated[name]["se"]}
               for name in ("fscore", "power", "fdr", "n_selected")},
        })
    return cells


def format_metrics_table(results: Dict[str, Any]) -> List[str]:
    """TSV lines: one row per aggregated cell."""
    config = results["config"]
    lines = [
        f"# effect_sd={format_number(config['effect_sd'])}\tnoise_sd={format_number(config['noise_sd'])}",
        "\t".join([
            "scenario", "method", "network", "removal_fraction", "repeats", "n_failed",
            "fscore_mean", "fscore_se", "power_mean", "fdr_mean", "n_selected_mean",
        ]),
    ]
    for cell in results["cells"]:
        se = cell["fscore"]["se"]
        lines.append("\t".join([
            cell["scenario"], cell["method"], cell["network"], format_number(cell["removal_fraction"]),
            str(cell["repeats"]), str(cell["n_failed"]),
            format_number(cell["fscore"]["mean"]), "NA" if se is None else format_number(se),
            format_number(cell["power"]["mean"]), format_number(cell["fdr"]["mean"]),
            format_number(cell["n_selected"]["mean"]),
        ]))
    return lines


def run_study(
    scenarios: Sequence[str],
    methods: Sequence[str],
    repeats: int,
    config: SimulationConfig,
    networks: Sequence[str] = ("gs",),
    removal_fractions: Sequence[float] = (0.0,),
    cv_config: Optional[CvConfig] = None,
    n_jobs: int = 1,
) -> Dict[str, Any]:
    """Convenience wrapper around ``SimulationStudy.run``."""
    study = SimulationStudy(
        config, cv_config=cv_config, networks=networks, removal_fractions=removal_fractions, n_jobs=n_jobs
    )
    return study.run(scenarios, methods, repeats)
