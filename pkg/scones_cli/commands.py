"""Subcommand implementations.

Each command reads its inputs, delegates to the library packages, writes its
outputs into the run directory and returns a summary dict for printing.
"""
import argparse
import logging
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from association import association_scores, read_scores, top_principal_components, univariate_baseline
from association.scores import write_scores
from genotype_data import (
    Covariates,
    Dataset,
    align,
    load_covariates,
    load_gene_annotation,
    load_genotypes,
    load_interactions,
    load_phenotype,
    load_snp_list,
    load_snp_map,
    maf_filter,
)
from genotype_data.models import SnpMap
from genotype_data.serialization import write_json
from model_selection import CvConfig, cross_validate, gene_support, log_grid, reference_recovery, ridge_predictivity
from model_selection.folds import assign_folds
from scones import RegularizationParams, select
from simulation import SimulationConfig, SimulationStudy, benchmark
from snp_network import NetworkKind, SnpNetwork, build_network, read_edge_list, write_edge_list
from .reporting import write_baseline, write_benchmark, write_cv_report, write_selection

logger = logging.getLogger(__name__)

NETWORK_CHOICES = ("gs", "gm", "gm-window", "gi")


def parse_float_list(text: str) -> List[float]:
    """Parse ``a,b,c`` or ``log:lo,hi,count``."""
    text = text.strip()
    if text.startswith("log:"):
        parts = text[4:].split(",")
        if len(parts) != 3:
            raise ValueError(f"Expected log:lo,hi,count, got {text!r}")
        return log_grid(float(parts[0]), float(parts[1]), int(parts[2]))
    values = [float(v) for v in text.split(",") if v.strip()]
    if not values:
        raise ValueError(f"Empty value list {text!r}")
    return values


def parse_int_list(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def parse_str_list(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def input_paths(args: argparse.Namespace) -> Dict[str, Optional[str]]:
    """Every input file option that was given."""
    names = (
        "genotypes", "phenotype", "covariates", "map", "genes", "interactions",
        "network_file", "scores", "selected", "candidate_genes", "reference_snps",
    )
    return {name: getattr(args, name, None) for name in names}


def load_dataset(args: argparse.Namespace) -> Tuple[Dataset, SnpMap]:
    """Load, align and MAF-filter the genotype inputs; add principal components if asked.

    Returns:
        (dataset, SNP map restricted to the dataset's SNPs in column order)
    """
    genotypes = load_genotypes(args.genotypes)
    phenotype = load_phenotype(args.phenotype)
    covariates = load_covariates(args.covariates) if getattr(args, "covariates", None) else None
    snp_map = load_snp_map(args.map)

    dataset = align(genotypes, phenotype, covariates, snp_map)
    filtered, _ = maf_filter(dataset.genotypes, args.maf)
    dataset = Dataset(
        genotypes=filtered,
        phenotype=dataset.phenotype,
        covariates=dataset.covariates,
        dropped_individuals=dataset.dropped_individuals,
        dropped_snps=dataset.dropped_snps,
    )

    n_pcs = getattr(args, "pcs", 0) or 0
    if n_pcs:
        pcs = top_principal_components(dataset.genotypes, n_pcs)
        if dataset.covariates is not None and dataset.covariates.n_covariates:
            pcs = Covariates(
                values=np.hstack([dataset.covariates.values, pcs.values]),
                labels=dataset.covariates.labels + pcs.labels,
                individual_ids=pcs.individual_ids,
            )
        dataset = Dataset(
            genotypes=dataset.genotypes,
            phenotype=dataset.phenotype,
            covariates=pcs,
            dropped_individuals=dataset.dropped_individuals,
            dropped_snps=dataset.dropped_snps,
        )

    logger.info("Dataset: %d individuals x %d SNPs", dataset.n_individuals, dataset.n_snps)
    return dataset, snp_map.restrict(dataset.genotypes.snp_ids)


def load_gene_list(path) -> List[str]:
    """One gene id per line; a leading ``gene_id`` header is skipped."""
    lines = [line.strip() for line in Path(path).read_text().splitlines() if line.strip()]
    return lines[1:] if lines and lines[0] == "gene_id" else lines


def network_window(args: argparse.Namespace) -> int:
    """``gm`` links SNPs inside the gene body; ``gm-window`` and ``gi`` use --window."""
    return 0 if args.network == "gm" else args.window


def load_network(args: argparse.Namespace, snp_map: SnpMap) -> SnpNetwork:
    """Read --network-file or build the --network kind over ``snp_map``."""
    if getattr(args, "network_file", None):
        return read_edge_list(args.network_file, snp_map.snp_ids)
    kind = NetworkKind.GM if args.network == "gm-window" else NetworkKind(args.network)
    if kind is not NetworkKind.GS and not args.genes:
        raise ValueError(f"--network {args.network} requires --genes")
    if kind is NetworkKind.GI and not args.interactions:
        raise ValueError("--network gi requires --interactions")
    genes = load_gene_annotation(args.genes) if args.genes else None
    interactions = load_interactions(args.interactions) if kind is NetworkKind.GI else None
    return build_network(kind, snp_map, genes, interactions, window=network_window(args))


def cmd_build_network(args: argparse.Namespace, out_dir: Path) -> Dict[str, Any]:
    snp_map = load_snp_map(args.map)
    network = load_network(args, snp_map)
    path = out_dir / "network.tsv"
    write_edge_list(network, path)
    return {"n_snps": network.n, "n_edges": network.n_edges, "edge_list": str(path)}


def cmd_select(args: argparse.Namespace, out_dir: Path) -> Dict[str, Any]:
    params = RegularizationParams(lam=args.lam, eta=args.eta)
    if args.scores:
        scores = read_scores(args.scores)
        snp_map = load_snp_map(args.map)
        missing = set(scores.snp_ids) - set(snp_map.snp_ids)
        if missing:
            raise ValueError(f"{len(missing)} scored SNPs are missing from the SNP map")
        snp_map = snp_map.restrict(scores.snp_ids)
        by_id = dict(zip(scores.snp_ids, scores.c))
        c = np.array([by_id[s] for s in snp_map.snp_ids])
    else:
        if not (args.genotypes and args.phenotype):
            raise ValueError("select needs --scores or both --genotypes and --phenotype")
        dataset, snp_map = load_dataset(args)
        computed = association_scores(dataset, normalize=args.normalize_scores)
        write_scores(computed, out_dir / "scores.tsv")
        c = computed.c

    network = load_network(args, snp_map)
    result = select(c, network, params, solver=args.solver, scale_bits=args.scale_bits)
    write_selection(result, snp_map.snp_ids, out_dir)
    return result.to_report()


def cmd_cv(args: argparse.Namespace, out_dir: Path) -> Dict[str, Any]:
    dataset, snp_map = load_dataset(args)
    network = load_network(args, snp_map)
    config = CvConfig(
        k=args.folds,
        lambda_grid=parse_float_list(args.lambda_grid),
        eta_grid=parse_float_list(args.eta_grid),
        max_selected_frac=args.max_selected_frac,
        rng_seed=args.seed,
        criterion=args.criterion,
        cardinality_filter=not args.no_cardinality_filter,
        strict_any_fold=args.strict_any_fold,
        relative_grid=args.relative_grid,
        grid_unit=args.grid_unit,
        ridge_penalty=args.ridge_penalty,
        solver=args.solver,
        scale_bits=args.scale_bits,
        n_jobs=args.threads,
    )
    scorer = partial(association_scores, normalize=True) if args.normalize_scores else None
    report = cross_validate(dataset, network, config, scorer=scorer)
    write_cv_report(report, out_dir)
    chosen = report.chosen_cell
    return {
        "lambda": chosen.lam,
        "eta": chosen.eta,
        "mean_consistency": chosen.mean_consistency,
        "n_final": len(report.final_selection),
    }


def cmd_simulate(args: argparse.Namespace, out_dir: Path) -> Dict[str, Any]:
    config = SimulationConfig(
        m=args.m,
        n=args.n,
        n_causal=args.n_causal,
        maf_low=args.maf_low,
        effect_sd=args.effect_sd,
        noise_sd=args.noise_sd,
        window=args.sim_window,
        rng_seed=args.seed,
    )
    cv_config = CvConfig(
        k=args.folds,
        lambda_grid=parse_float_list(args.lambda_grid),
        eta_grid=parse_float_list(args.eta_grid),
        max_selected_frac=args.max_selected_frac,
        relative_grid=True,
        grid_unit=args.grid_unit,
        solver=args.solver,
        scale_bits=args.scale_bits,
    )
    study = SimulationStudy(
        config,
        cv_config=cv_config,
        networks=parse_str_list(args.networks),
        removal_fractions=parse_float_list(args.remove_edges_frac),
        alpha=args.alpha,
        n_jobs=args.threads,
    )
    results = study.run(parse_str_list(args.scenario), parse_str_list(args.methods), args.repeats)
    study.generate_report(results, out_dir)
    return {
        f"{c['scenario']}/{c['method']}/{c['network']}/{c['removal_fraction']:g}": c["fscore"]["mean"]
        for c in results["cells"]
    }


def cmd_evaluate(args: argparse.Namespace, out_dir: Path) -> Dict[str, Any]:
    dataset, snp_map = load_dataset(args)
    column = dataset.genotypes.snp_index()
    selected_ids = load_snp_list(args.selected)
    unknown = [s for s in selected_ids if s not in column]
    if unknown:
        logger.warning("%d selected SNPs are not in the filtered dataset", len(unknown))
    selected = sorted(column[s] for s in selected_ids if s in column)

    folds = assign_folds(dataset.genotypes.individual_ids, args.folds, args.seed)
    result = ridge_predictivity(dataset, selected, folds, ridge_penalty=args.ridge_penalty)
    report: Dict[str, Any] = {
        "r2": result.r2,
        "fold_r2": result.fold_r2,
        "empty_selection": result.empty_selection,
        "degenerate_folds": result.degenerate_folds,
        "n_selected": len(selected),
        "ridge_penalty": args.ridge_penalty,
    }
    kept_ids = [snp_map.snp_ids[i] for i in selected]
    if args.candidate_genes:
        if not args.genes:
            raise ValueError("--candidate-genes requires --genes")
        candidates = load_gene_list(args.candidate_genes)
        support = gene_support(kept_ids, snp_map, load_gene_annotation(args.genes), candidates, args.window)
        report["gene_support"] = support.to_dict()
    if args.reference_snps:
        report["reference_recovery"] = reference_recovery(kept_ids, load_snp_list(args.reference_snps))

    write_json(report, out_dir / "predictivity.json")
    return {"r2": result.r2, "n_selected": len(selected)}


def cmd_baseline(args: argparse.Namespace, out_dir: Path) -> Dict[str, Any]:
    dataset, _ = load_dataset(args)
    result = univariate_baseline(dataset.genotypes, dataset.phenotype, dataset.covariates, args.alpha)
    write_baseline(result, dataset.genotypes.snp_ids, out_dir)
    return {"n_selected": len(result.selected), "threshold": args.alpha / dataset.n_snps}


def cmd_benchmark(args: argparse.Namespace, out_dir: Path) -> Dict[str, Any]:
    rows = benchmark(
        parse_int_list(args.sizes),
        shapes=parse_str_list(args.shapes),
        mean_degree=args.mean_degree,
        repeats=args.repeats,
        lam=args.lam,
        eta=args.eta,
        rng_seed=args.seed,
        solver=args.solver,
    )
    write_benchmark(rows, out_dir)
    return {f"{r.shape}/{r.n}": r.seconds for r in rows}
