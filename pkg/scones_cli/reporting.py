"""Report writers for the subcommands: JSON for reports, TSV for tables."""
from pathlib import Path
from typing import Dict, List, Sequence

from association.univariate import UnivariateResult
from genotype_data.loaders import _write_lines, format_number, write_snp_list
from genotype_data.serialization import write_json
from model_selection.cross_validation import CvReport
from scones.selection import SelectionResult
from simulation.benchmark import BenchmarkRow


def write_selection(result: SelectionResult, snp_ids: Sequence[str], out_dir) -> Dict[str, Path]:
    """selected_snps.tsv plus selection.json {lambda, eta, objective, cut_value, n_selected}."""
    out_dir = Path(out_dir)
    snps = out_dir / "selected_snps.tsv"
    write_snp_list([snp_ids[i] for i in result.selected], snps)
    return {"snps": snps, "report": write_json(result.to_report(), out_dir / "selection.json")}


def cv_cells_table(report: CvReport) -> List[str]:
    lines = ["lambda\teta\tmean_consistency\tmean_cardinality\tmax_cardinality\tfiltered\tpredictivity"]
    for cell in report.cells:
        lines.append("\t".join([
            format_number(cell.lam),
            format_number(cell.eta),
            format_number(cell.mean_consistency),
            format_number(cell.mean_cardinality),
            str(cell.max_cardinality),
            "1" if cell.filtered else "0",
            "NA" if cell.predictivity is None else format_number(cell.predictivity),
        ]))
    return lines


def write_cv_report(report: CvReport, out_dir) -> Dict[str, Path]:
    """cv_report.json, cv_cells.tsv and final_snps.tsv."""
    out_dir = Path(out_dir)
    cells = out_dir / "cv_cells.tsv"
    _write_lines(cells, cv_cells_table(report))
    snps = out_dir / "final_snps.tsv"
    write_snp_list(report.final_snp_ids, snps)
    return {
        "report": write_json(report.to_dict(), out_dir / "cv_report.json"),
        "cells": cells,
        "snps": snps,
    }


def write_baseline(result: UnivariateResult, snp_ids: Sequence[str], out_dir) -> Dict[str, Path]:
    """univariate.tsv (per-SNP statistics), selected_snps.tsv and baseline.json."""
    out_dir = Path(out_dir)
    chosen = set(result.selected)
    lines = ["snp_id\tt_statistic\tp_value\tselected"]
    for i, snp_id in enumerate(snp_ids):
        lines.append("\t".join([
            snp_id,
            format_number(result.t_statistics[i]),
            format_number(result.p_values[i]),
            "1" if i in chosen else "0",
        ]))
    table = out_dir / "univariate.tsv"
    _write_lines(table, lines)
    snps = out_dir / "selected_snps.tsv"
    write_snp_list(result.selected_ids(snp_ids), snps)
    summary = {
        "alpha": result.alpha,
        "threshold": result.alpha / len(snp_ids),
        "n_snps": len(snp_ids),
        "n_selected": len(result.selected),
    }
    return {"table": table, "snps": snps, "report": write_json(summary, out_dir / "baseline.json")}


def write_benchmark(rows: List[BenchmarkRow], out_dir) -> Dict[str, Path]:
    out_dir = Path(out_dir)
    lines = ["shape\tn\tn_edges\tseconds\tn_selected"]
    lines += [
        f"{r.shape}\t{r.n}\t{r.n_edges}\t{format_number(r.seconds)}\t{r.n_selected}" for r in rows
    ]
    table = out_dir / "benchmark.tsv"
    _write_lines(table, lines)
    return {"table": table, "report": write_json([r.to_dict() for r in rows], out_dir / "benchmark.json")}
