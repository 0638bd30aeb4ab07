"""Command-line entry point.

Usage:
    python scripts/scones.py build-network --map toy/map.tsv --network gs --out-dir runs/net
    python scripts/scones.py select --genotypes toy/genotypes.tsv --phenotype toy/phenotype.tsv \\
        --map toy/map.tsv --network gs --lambda 1 --eta 2
    python scripts/scones.py cv --genotypes toy/genotypes.tsv --phenotype toy/phenotype.tsv \\
        --map toy/map.tsv --network gm-window --genes toy/genes.tsv --threads 4
"""
import argparse
import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Callable, Dict, List, Optional

from genotype_data.errors import InfeasibleConfigurationError
from simulation.study import STUDY_MAX_SELECTED_FRAC
from . import __version__
from .commands import (
    NETWORK_CHOICES,
    cmd_baseline,
    cmd_benchmark,
    cmd_build_network,
    cmd_cv,
    cmd_evaluate,
    cmd_select,
    cmd_simulate,
    input_paths,
)
from .config import Settings, configure_logging, get_settings
from .manifest import RunManifest, input_digests, prepare_run_directory, write_manifest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3

COMMANDS: Dict[str, Callable] = {
    "build-network": cmd_build_network,
    "select": cmd_select,
    "cv": cmd_cv,
    "simulate": cmd_simulate,
    "evaluate": cmd_evaluate,
    "baseline": cmd_baseline,
    "benchmark": cmd_benchmark,
}

# Options that only describe where or how fast a run executes; excluded from the manifest
# configuration so that equal configurations give equal manifests.
_EXECUTION_ONLY = {"out_dir", "threads", "log_level"}


def _add_common(parser: argparse.ArgumentParser, settings: Settings):
    parser.add_argument("--seed", type=int, default=0, help="Master random seed (default: 0)")
    parser.add_argument(
        "--threads", type=int, default=settings.threads,
        help=f"Worker threads; results do not depend on it (default: {settings.threads})",
    )
    parser.add_argument("--out-dir", type=str, default=None, help="Run directory (default: <output_dir>/<subcommand>_<time>)")
    parser.add_argument("--log-level", type=str, default=None, help="Overrides SCONES_LOG_LEVEL")


def _add_solver(parser: argparse.ArgumentParser, settings: Settings):
    parser.add_argument(
        "--solver", choices=("dinic", "boykov_kolmogorov"), default=settings.flow_solver,
        help=f"Max-flow algorithm (default: {settings.flow_solver})",
    )
    parser.add_argument(
        "--scale-bits", type=int, default=settings.flow_scale_bits,
        help=f"Fixed-point precision of the flow capacities (default: {settings.flow_scale_bits})",
    )


def _add_data(parser: argparse.ArgumentParser, settings: Settings, required: bool = True):
    parser.add_argument("--genotypes", type=str, required=required, help="Genotype TSV (individuals x SNPs)")
    parser.add_argument("--phenotype", type=str, required=required, help="Phenotype TSV")
    parser.add_argument("--covariates", type=str, default=None, help="Optional covariate TSV")
    parser.add_argument("--map", type=str, required=True, help="SNP map TSV (snp_id, chromosome, position)")
    parser.add_argument(
        "--maf", type=float, default=settings.default_maf,
        help=f"Minimum minor allele frequency (default: {settings.default_maf})",
    )
    parser.add_argument("--pcs", type=int, default=0, help="Add the top k genotype principal components as covariates")


def _add_network(parser: argparse.ArgumentParser, settings: Settings):
    parser.add_argument("--network", choices=NETWORK_CHOICES, default="gs", help="Network kind (default: gs)")
    parser.add_argument("--network-file", type=str, default=None, help="Read the network from an edge list instead")
    parser.add_argument("--genes", type=str, default=None, help="Gene annotation TSV (gm, gm-window, gi)")
    parser.add_argument("--interactions", type=str, default=None, help="Gene interaction TSV (gi)")
    parser.add_argument(
        "--window", type=int, default=settings.default_window,
        help=f"Gene proximity window in bp (default: {settings.default_window})",
    )


def _add_grid(
    parser: argparse.ArgumentParser, settings: Settings, default_grid: str, default_cap: Optional[float] = None
):
    cap = settings.max_selected_frac if default_cap is None else default_cap
    parser.add_argument(
        "--folds", type=int, default=settings.default_folds,
        help=f"Number of CV folds (default: {settings.default_folds})",
    )
    parser.add_argument("--lambda-grid", type=str, default=default_grid, help=f"Comma list or log:lo,hi,count (default: {default_grid})")
    parser.add_argument("--eta-grid", type=str, default=default_grid, help=f"Comma list or log:lo,hi,count (default: {default_grid})")
    parser.add_argument(
        "--max-selected-frac", type=float, default=cap,
        help=f"Cardinality cap as a fraction of SNPs (default: {cap})",
    )


def build_parser(settings: Optional[Settings] = None) -> argparse.ArgumentParser:
    """Parser with one subparser per command."""
    settings = settings or get_settings()
    parser = argparse.ArgumentParser(prog="scones", description="Network-guided SNP selection by minimum cut")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("build-network", help="Build a SNP network and write its edge list")
    p.add_argument("--map", type=str, required=True, help="SNP map TSV")
    _add_network(p, settings)
    _add_common(p, settings)

    p = sub.add_parser("select", help="Select SNPs at a fixed (lambda, eta)")
    _add_data(p, settings, required=False)
    p.add_argument("--scores", type=str, default=None, help="Precomputed score TSV (snp_id, c)")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="Connectivity weight")
    p.add_argument("--eta", type=float, required=True, help="Sparsity penalty per SNP")
    p.add_argument("--normalize-scores", action="store_true", help="Divide computed scores by the residual sum of squares")
    _add_network(p, settings)
    _add_solver(p, settings)
    _add_common(p, settings)

    p = sub.add_parser("cv", help="Choose (lambda, eta) by cross-validated selection consistency")
    _add_data(p, settings)
    _add_network(p, settings)
    _add_grid(p, settings, "log:0.001,1000,7")
    p.add_argument("--criterion", choices=("consistency", "predictivity"), default="consistency")
    p.add_argument("--no-cardinality-filter", action="store_true", help="Keep cells that exceed the cap")
    p.add_argument("--strict-any-fold", action="store_true", help="Filter a cell if any fold exceeds the cap")
    p.add_argument("--relative-grid", action="store_true", help="Grid values are multiples of a fold score unit")
    p.add_argument("--grid-unit", choices=("mean", "median"), default="mean", help="Score unit of --relative-grid")
    p.add_argument("--normalize-scores", action="store_true", help="Divide fold scores by the residual sum of squares")
    p.add_argument("--ridge-penalty", type=float, default=settings.ridge_penalty)
    _add_solver(p, settings)
    _add_common(p, settings)

    p = sub.add_parser("simulate", help="Run the simulation study")
    p.add_argument("--scenario", type=str, default="a,b,c,d,e,f", help="Comma list of scenarios a-f")
    p.add_argument("--methods", type=str, default="scones,univariate", help="Comma list: scones,univariate,oracle,random")
    p.add_argument("--networks", type=str, default="gs", help="Comma list: gs,gm,gi")
    p.add_argument("--repeats", type=int, default=30)
    p.add_argument("--m", type=int, default=200, help="Individuals")
    p.add_argument("--n", type=int, default=1000, help="SNPs")
    p.add_argument("--n-causal", type=int, default=20)
    p.add_argument("--maf-low", type=float, default=0.1)
    p.add_argument("--effect-sd", type=float, default=1.0)
    p.add_argument("--noise-sd", type=float, default=2.8)
    p.add_argument("--sim-window", type=int, default=2000, help="Gene window of the simulated genome")
    p.add_argument("--remove-edges-frac", type=str, default="0", help="Comma list of edge-removal fractions")
    p.add_argument("--alpha", type=float, default=0.05, help="Baseline family-wise level")
    _add_grid(p, settings, "log:0.001,1000,7", default_cap=STUDY_MAX_SELECTED_FRAC)
    p.add_argument("--grid-unit", choices=("mean", "median"), default="median", help="Score unit of the relative grids")
    _add_solver(p, settings)
    _add_common(p, settings)

    p = sub.add_parser("evaluate", help="Cross-validated ridge predictivity of a SNP selection")
    _add_data(p, settings)
    p.add_argument("--selected", type=str, required=True, help="Selected SNP list TSV")
    p.add_argument("--folds", type=int, default=settings.default_folds)
    p.add_argument("--ridge-penalty", type=float, default=settings.ridge_penalty)
    p.add_argument("--genes", type=str, default=None, help="Gene annotation TSV for --candidate-genes")
    p.add_argument("--candidate-genes", type=str, default=None, help="One candidate gene id per line")
    p.add_argument("--reference-snps", type=str, default=None, help="Reference SNP list to measure recovery of")
    p.add_argument("--window", type=int, default=settings.default_window)
    _add_common(p, settings)

    p = sub.add_parser("baseline", help="Bonferroni-corrected univariate selection")
    _add_data(p, settings)
    p.add_argument("--alpha", type=float, default=0.05, help="Family-wise level (default: 0.05)")
    _add_common(p, settings)

    p = sub.add_parser("benchmark", help="Time single selections on synthetic networks")
    p.add_argument("--sizes", type=str, default="1000,10000,100000")
    p.add_argument("--shapes", type=str, default="chain,random")
    p.add_argument("--mean-degree", type=float, default=4.0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=2.0)
    _add_solver(p, settings)
    _add_common(p, settings)

    return parser


def run_configuration(args: argparse.Namespace) -> Dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _EXECUTION_ONLY}


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID

    configure_logging(args.log_level or settings.log_level)
    if args.threads < 1:
        print("Error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INVALID

    out_dir = args.out_dir or str(
        Path(settings.output_dir) / f"{args.subcommand}_{datetime.now().strftime('%Y%m%d_%H%M%S')}"
    )

    try:
        digests = input_digests(input_paths(args))
        out_path = prepare_run_directory(out_dir)

        print("=" * 60)
        print(f"scones {args.subcommand}")
        print("=" * 60)
        print(f"Output: {out_path}")
        print()

        start = time.perf_counter()
        summary = COMMANDS[args.subcommand](args, out_path)
        duration = time.perf_counter() - start

        write_manifest(
            RunManifest(
                subcommand=args.subcommand,
                configuration=run_configuration(args),
                input_digests=digests,
                tool_version=__version__,
                seed=args.seed,
                duration_seconds=round(duration, 3),
            ),
            out_path,
        )
    except InfeasibleConfigurationError as e:
        logger.error("Infeasible configuration: %s", e)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, FileNotFoundError) as e:
        logger.error("Invalid input: %s", e)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID

    print("=" * 60)
    print("SUMMARY")
    print("=" * 60)
    for key, value in summary.items():
        print(f"  {key}: {value}")
    print()
    print(f"Results saved to: {out_path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
