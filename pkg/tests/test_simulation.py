"""Tests for the simulation harness: genomes, scenarios, phenotypes, metrics and the study runner."""
import json

import numpy as np
import pytest
from pydantic import ValidationError

from model_selection import CvConfig
from simulation import (
    InfeasibleScenarioError,
    Scenario,
    SimulationConfig,
    SimulationStudy,
    benchmark,
    even_split,
    mean_and_standard_error,
    place_causal,
    run_study,
    satisfies_scenario,
    score_selection,
    simulate_genotypes,
    simulate_phenotype,
)


@pytest.fixture
def small_config():
    """400 SNPs on 5 chromosomes: two genes per chromosome, two groups of five interacting genes."""
    return SimulationConfig(m=60, n=400, n_causal=8, rng_seed=11)


@pytest.fixture
def quick_cv():
    return CvConfig(
        k=3, lambda_grid=[0.1, 1.0], eta_grid=[1.0, 4.0], max_selected_frac=0.1, relative_grid=True
    )


class TestSelectionMetrics:
    """Test power, FDR and F-score."""

    def test_values(self):
        metrics = score_selection({1, 2, 3}, {2, 3, 4, 5}, 10)

        assert metrics.power == pytest.approx(0.5)
        assert metrics.fdr == pytest.approx(1 / 3)
        assert metrics.fscore == pytest.approx(4 / 7)
        assert metrics.n_selected == 3

    def test_empty_selection(self):
        metrics = score_selection([], [0, 1], 5)
        assert (metrics.power, metrics.fdr, metrics.fscore) == (0.0, 0.0, 0.0)

    def test_perfect_selection(self):
        assert score_selection([4, 7], [7, 4], 8).fscore == 1.0

    def test_matches_set_formulas_on_every_subset_pair(self):
        n = 6
        subsets = [{i for i in range(n) if mask >> i & 1} for mask in range(1 << n)]
        for selected in subsets:
            for causal in subsets:
                metrics = score_selection(selected, causal, n)
                hits = len(selected & causal)
                assert metrics.n_selected == len(selected)
                if not selected:
                    assert (metrics.power, metrics.fdr, metrics.fscore) == (0.0, 0.0, 0.0)
                    continue
                assert metrics.power == pytest.approx(hits / len(causal) if causal else 0.0)
                assert metrics.fdr == pytest.approx(1.0 - hits / len(selected))
                assert metrics.fscore == pytest.approx(2.0 * hits / (len(selected) + len(causal)))

    def test_matches_set_formulas_on_random_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(500):
            n = int(rng.integers(7, 21))
            selected = set(np.flatnonzero(rng.random(n) < 0.4).tolist())
            causal = set(np.flatnonzero(rng.random(n) < 0.3).tolist())
            metrics = score_selection(selected, causal, n)
            hits = len(selected & causal)
            expected = 2.0 * hits / (len(selected) + len(causal)) if selected else 0.0
            assert metrics.fscore == pytest.approx(expected)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            score_selection([5], [0], 5)

    def test_mean_and_standard_error(self):
        summary = mean_and_standard_error([1.0, 2.0, 3.0])
        assert summary["mean"] == pytest.approx(2.0)
        assert summary["se"] == pytest.approx(np.sqrt(1 / 3))
        assert mean_and_standard_error([0.4])["se"] is None


class TestSimulateGenotypes:
    """Test synthetic genomes."""

    def test_seeded(self, small_config):
        a = simulate_genotypes(small_config, 0)
        b = simulate_genotypes(small_config, 0)
        c = simulate_genotypes(small_config, 1)

        assert np.array_equal(a.genotypes.values, b.genotypes.values)
        assert not np.array_equal(a.genotypes.values, c.genotypes.values)

    def test_layout(self, small_config):
        genome = simulate_genotypes(small_config)

        assert genome.genotypes.values.shape == (60, 400)
        assert genome.genotypes.snp_ids == genome.snp_map.snp_ids
        assert len(genome.snp_map.chromosome_blocks()) == 5
        assert len(genome.genes) == 10
        # two cliques of five genes
        assert len(genome.interactions) == 20

    def test_maf_half(self):
        genome = simulate_genotypes(SimulationConfig(m=10, n=20, n_causal=2, maf_low=0.5))
        assert np.all(genome.allele_frequencies == 0.5)
        assert set(np.unique(genome.genotypes.values)) <= {0, 1, 2}

    def test_allele_frequencies_within_sampling_band(self):
        config = SimulationConfig(m=500, n=300, n_causal=2, maf_low=0.2, rng_seed=3)
        genome = simulate_genotypes(config)
        q = genome.allele_frequencies
        observed = genome.genotypes.values.mean(axis=0) / 2.0
        minor = np.minimum(observed, 1.0 - observed)
        band = 4.5 * np.sqrt(q * (1.0 - q) / (2 * config.m))

        assert np.all((q >= 0.2) & (q <= 0.5))
        assert np.all(np.abs(observed - q) <= band)
        assert np.all(minor >= 0.2 - band)

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            SimulationConfig(n=10, n_causal=20)
        with pytest.raises(ValidationError):
            SimulationConfig(maf_low=0.6)


class TestPlaceCausal:
    """Test the structural scenarios."""

    @pytest.mark.parametrize("scenario", [s.value for s in Scenario])
    def test_placement_satisfies_scenario(self, small_config, scenario):
        genome = simulate_genotypes(small_config)
        for seed in range(5):
            causal = place_causal(
                scenario, genome.snp_map, genome.genes, genome.interactions, 10,
                np.random.default_rng(seed),
            )
            assert len(set(causal.tolist())) == 10
            assert satisfies_scenario(scenario, causal, genome.snp_map, genome.genes, genome.interactions)

    def test_sequence_run_is_consecutive(self, small_config):
        genome = simulate_genotypes(small_config)
        causal = place_causal("b", genome.snp_map, genome.genes, genome.interactions, 6,
                              np.random.default_rng(2))
        assert causal.tolist() == list(range(int(causal[0]), int(causal[0]) + 6))

    def test_five_genes_split_evenly(self, small_config):
        genome = simulate_genotypes(small_config)
        causal = set(place_causal("f", genome.snp_map, genome.genes, genome.interactions, 12,
                                  np.random.default_rng(4)).tolist())
        near = genome.genes.snps_near(genome.snp_map, 2000)
        counts = sorted(len(causal & set(v.tolist())) for v in near.values() if causal & set(v.tolist()))

        assert counts == [2, 2, 2, 3, 3]

    def test_random_placement_fails_structural_check(self, small_config):
        genome = simulate_genotypes(small_config)
        spread = [0, 100, 200, 300]
        assert not satisfies_scenario("c", spread, genome.snp_map, genome.genes, genome.interactions)

    def test_infeasible(self, small_config):
        genome = simulate_genotypes(small_config)
        with pytest.raises(InfeasibleScenarioError):
            place_causal("c", genome.snp_map, genome.genes, genome.interactions, 100, np.random.default_rng(0))
        with pytest.raises(InfeasibleScenarioError):
            place_causal("f", genome.snp_map, genome.genes, genome.interactions, 3, np.random.default_rng(0))

    def test_even_split(self):
        assert even_split(7, 3) == [3, 2, 2]
        assert even_split(20, 5) == [4] * 5


class TestSimulatePhenotype:
    """Test additive phenotypes."""

    def test_noise_free_with_weights(self, small_config):
        genome = simulate_genotypes(small_config)
        phenotype, w = simulate_phenotype(
            genome.genotypes, [3, 9], 1.0, 0.0, np.random.default_rng(0), weights=[2.0, -0.5]
        )
        expected = 2.0 * genome.genotypes.values[:, 3] - 0.5 * genome.genotypes.values[:, 9]

        assert phenotype.values == pytest.approx(expected)
        assert np.flatnonzero(w).tolist() == [3, 9]
        assert phenotype.individual_ids == genome.genotypes.individual_ids

    def test_variance_matches_weights_and_noise(self):
        genome = simulate_genotypes(SimulationConfig(m=4000, n=20, n_causal=5, rng_seed=8))
        causal = [1, 4, 7, 12, 18]
        weights = np.array([1.0, -0.5, 2.0, 0.8, -1.2])
        phenotype, _ = simulate_phenotype(
            genome.genotypes, causal, 1.0, 1.5, np.random.default_rng(1), weights=weights
        )
        q = genome.allele_frequencies[causal]
        expected = float(np.sum(weights ** 2 * 2.0 * q * (1.0 - q))) + 1.5 ** 2

        assert np.var(phenotype.values, ddof=1) == pytest.approx(expected, rel=0.1)

    def test_weight_count_mismatch(self, small_config):
        genome = simulate_genotypes(small_config)
        with pytest.raises(ValueError):
            simulate_phenotype(genome.genotypes, [1, 2], 1.0, 1.0, np.random.default_rng(0), weights=[1.0])

    def test_negative_sd(self, small_config):
        genome = simulate_genotypes(small_config)
        with pytest.raises(ValueError):
            simulate_phenotype(genome.genotypes, [1], -1.0, 1.0, np.random.default_rng(0))


class TestSimulationStudy:
    """Test the repeated study and its report."""

    def test_run_and_report(self, tmp_path, small_config, quick_cv):
        study = SimulationStudy(small_config, cv_config=quick_cv, networks=("gs", "gi"))
        results = study.run(["c"], ["scones", "univariate", "oracle", "random"], repeats=2)

        # scones on two networks plus three network-free methods
        assert len(results["cells"]) == 5
        assert len(results["records"]) == 10
        oracle = next(c for c in results["cells"] if c["method"] == "oracle")
        assert oracle["fscore"]["mean"] == 1.0
        assert oracle["repeats"] == 2

        paths = study.generate_report(results, tmp_path / "report")
        saved = json.loads(paths["json"].read_text())
        assert "timestamp" not in saved
        assert saved["scenarios"] == ["c"]
        tsv = paths["tsv"].read_text().splitlines()
        assert tsv[1].startswith("scenario\tmethod\tnetwork")
        assert len(tsv) == 2 + 5
        assert "| Scenario | Method |" in paths["markdown"].read_text()

    def test_thread_count_does_not_change_records(self, small_config, quick_cv):
        serial = SimulationStudy(small_config, cv_config=quick_cv).run(["a", "b"], ["scones"], repeats=2)
        threaded = SimulationStudy(small_config, cv_config=quick_cv, n_jobs=3).run(["a", "b"], ["scones"], repeats=2)
        assert serial["records"] == threaded["records"]

    def test_edge_removal_cells(self, small_config, quick_cv):
        study = SimulationStudy(small_config, cv_config=quick_cv, removal_fractions=(0.0, 0.5))
        results = study.run(["c"], ["scones"], repeats=1)
        assert [c["removal_fraction"] for c in results["cells"]] == [0.0, 0.5]

    def test_run_study_wrapper(self, small_config):
        results = run_study(["a", "f"], ["oracle", "random"], 3, small_config)

        assert results["repeats"] == 3
        assert [(c["scenario"], c["method"]) for c in results["cells"]] == [
            ("a", "oracle"), ("a", "random"), ("f", "oracle"), ("f", "random"),
        ]
        assert all(c["fscore"]["se"] is not None for c in results["cells"])

    def test_random_selection_power(self):
        results = run_study(["a"], ["random"], 200, SimulationConfig(m=10, n=1000, n_causal=20))
        assert results["cells"][0]["power"]["mean"] == pytest.approx(0.02, abs=0.01)

    def test_single_repeat_has_no_standard_error(self, tmp_path, small_config):
        study = SimulationStudy(small_config)
        results = study.run(["a"], ["oracle"], repeats=1)
        assert results["cells"][0]["fscore"]["se"] is None

        paths = study.generate_report(results, tmp_path / "report")
        row = paths["tsv"].read_text().splitlines()[2].split("	")
        assert row[7] == "NA"

    def test_unknown_method(self, small_config):
        with pytest.raises(ValueError):
            SimulationStudy(small_config).run(["a"], ["lasso"], repeats=1)

    def test_bad_removal_fraction(self, small_config):
        with pytest.raises(ValueError):
            SimulationStudy(small_config, removal_fractions=(1.5,))


class TestBenchmark:
    """Test solver timing rows."""

    def test_rows(self):
        rows = benchmark([10, 50], repeats=1)

        assert [(r.shape, r.n) for r in rows] == [("chain", 10), ("chain", 50), ("random", 10), ("random", 50)]
        assert rows[0].n_edges == 9
        assert all(r.seconds >= 0 for r in rows)

    def test_unknown_shape(self):
        with pytest.raises(ValueError):
            benchmark([10], shapes=("star",))

    def test_too_small(self):
        with pytest.raises(ValueError):
            benchmark([1])


@pytest.mark.slow
class TestMethodRanking:
    """Desk-scale study at the default configuration."""

    @staticmethod
    def _fscore(results, method, removal_fraction=0.0):
        cell = next(
            c for c in results["cells"]
            if c["method"] == method and c["removal_fraction"] == removal_fraction
        )
        return cell["fscore"]["mean"]

    def test_sequence_network_beats_univariate_on_runs(self):
        results = run_study(["b"], ["scones", "univariate"], 30, SimulationConfig(), networks=("gs",), n_jobs=4)
        assert self._fscore(results, "scones") - self._fscore(results, "univariate") >= 0.10

    def test_gene_membership_network_beats_univariate_and_tolerates_edge_loss(self):
        results = run_study(
            ["c"], ["scones", "univariate"], 30, SimulationConfig(),
            networks=("gm",), removal_fractions=(0.0, 0.05), n_jobs=4,
        )
        full = self._fscore(results, "scones", 0.0)
        pruned = self._fscore(results, "scones", 0.05)

        assert full - self._fscore(results, "univariate") >= 0.10
        assert abs(pruned - full) < 0.05


@pytest.mark.slow
class TestSolverScaling:
    """Wall-clock growth of a single solve on chain networks."""

    def test_tenfold_size_costs_under_thirtyfold_time(self):
        small, large = benchmark([10_000, 100_000], shapes=("chain",), repeats=3)

        assert large.seconds < 10.0
        assert large.seconds / max(small.seconds, 1e-3) < 30.0
