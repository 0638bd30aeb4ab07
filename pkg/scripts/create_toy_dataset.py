#!/usr/bin/env python3
"""Write a small, consistent set of input files from the simulator.

The files (genotypes, phenotype, SNP map, gene annotation, gene interactions
and the causal SNP list) can be fed straight to scripts/scones.py.

Usage:
    python scripts/create_toy_dataset.py --output toy --m 100 --n 300 --scenario c
"""
import argparse
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from genotype_data import (
    write_gene_annotation,
    write_genotypes,
    write_interactions,
    write_phenotype,
    write_snp_list,
    write_snp_map,
)
from genotype_data.random_streams import derive_rng
from simulation import Scenario, SimulationConfig, place_causal, simulate_genotypes, simulate_phenotype


def parse_args():
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description="Create a toy GWAS dataset")
    parser.add_argument("--output", type=str, required=True, help="Output directory")
    parser.add_argument("--m", type=int, default=100, help="Individuals (default: 100)")
    parser.add_argument("--n", type=int, default=300, help="SNPs (default: 300)")
    parser.add_argument("--n-causal", type=int, default=10, help="Causal SNPs (default: 10)")
    parser.add_argument("--scenario", type=str, default="c", help="Causal placement a-f (default: c)")
    parser.add_argument("--noise-sd", type=float, default=1.0, help="Noise standard deviation (default: 1.0)")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    return parser.parse_args()


def main():
    args = parse_args()
    out = Path(args.output)

    print("=" * 60)
    print("TOY DATASET")
    print("=" * 60)
    print(f"Individuals x SNPs: {args.m} x {args.n}")
    print(f"Causal SNPs: {args.n_causal} (scenario {args.scenario})")
    print(f"Output: {out}")
    print("=" * 60)

    try:
        config = SimulationConfig(
            m=args.m, n=args.n, n_causal=args.n_causal, noise_sd=args.noise_sd, rng_seed=args.seed
        )
        genome = simulate_genotypes(config)
        causal = place_causal(
            Scenario(args.scenario), genome.snp_map, genome.genes, genome.interactions,
            config.n_causal, derive_rng(args.seed, "causal"), window=config.window,
        )
        phenotype, _ = simulate_phenotype(
            genome.genotypes, causal, config.effect_sd, config.noise_sd, derive_rng(args.seed, "phenotype")
        )
    except ValueError as e:
        print(f"Error: {e}")
        return 2

    write_genotypes(genome.genotypes, out / "genotypes.tsv")
    write_phenotype(phenotype, out / "phenotype.tsv")
    write_snp_map(genome.snp_map, out / "map.tsv")
    write_gene_annotation(genome.genes, out / "genes.tsv")
    write_interactions(genome.interactions, out / "interactions.tsv")
    write_snp_list([genome.snp_map.snp_ids[i] for i in causal], out / "causal_snps.tsv")

    print(f"\nGenes: {len(genome.genes)}, interactions: {len(genome.interactions)}")
    print(f"Files written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
