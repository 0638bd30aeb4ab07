"""Tests for the min-cut selection: graph layout, solvers and exactness against brute force."""
import numpy as np
import pytest

from genotype_data import FlowCertificateError
from scones import (
    SOLVERS,
    RegularizationParams,
    build_augmented_graph,
    cut_constant,
    max_flow_min_cut,
    objective_value,
    parametric_sweep,
    select,
)
from snp_network import SnpNetwork
from oracles import brute_force_best, brute_force_objectives, component_law, random_instance


def _path(n):
    return SnpNetwork.from_edges(n, [(i, i + 1) for i in range(n - 1)])


class TestRegularizationParams:
    """Test parameter validation."""

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            RegularizationParams(lam=-1.0, eta=0.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            RegularizationParams(lam=0.0, eta=float("inf"))


class TestAugmentedGraph:
    """Test terminal and pair capacities."""

    def test_two_snp_layout(self):
        """c=(3,1), eta=2, lam=1, one edge: A_s0 = 1, A_1t = 1, A_01 = 1."""
        graph = build_augmented_graph(np.array([3.0, 1.0]), _path(2), RegularizationParams(1.0, 2.0))

        assert graph.source_caps.tolist() == [1.0, 0.0]
        assert graph.sink_caps.tolist() == [0.0, 1.0]
        assert graph.pair_caps.tolist() == [1.0]
        assert (graph.source, graph.sink) == (2, 3)

        dense = graph.to_csr(1.0).toarray()
        assert dense[2, 0] == 1 and dense[1, 3] == 1
        assert dense[0, 1] == 1 and dense[1, 0] == 1

    def test_eta_zero_attaches_all_to_source(self):
        graph = build_augmented_graph(np.array([1.0, 2.0, 0.5]), _path(3), RegularizationParams(1.0, 0.0))
        assert np.all(graph.source_caps > 0)
        assert not graph.sink_caps.any()

    def test_score_equal_to_eta_is_detached(self):
        graph = build_augmented_graph(np.array([2.0, 3.0]), _path(2), RegularizationParams(1.0, 2.0))
        assert graph.source_caps[0] == 0.0 and graph.sink_caps[0] == 0.0
        assert graph.n_edges == 2

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            build_augmented_graph(np.array([1.0]), _path(2), RegularizationParams(1.0, 1.0))

    def test_full_scale_kept_for_large_capacities(self):
        graph = build_augmented_graph(np.array([1e9, 0.0]), _path(2), RegularizationParams(1.0, 0.0))

        assert graph.fixed_point_scale(20) == 2 ** 20
        assert not graph.fits_int32(2 ** 20)
        with pytest.raises(OverflowError):
            graph.to_csr(2 ** 20)

    def test_capacities_beyond_int64_are_python_ints(self):
        graph = build_augmented_graph(np.array([1e17, 0.0]), _path(2), RegularizationParams(1.0, 0.5))
        src, snk, pair = graph.integer_capacities(2 ** 20)

        assert src.dtype == object
        assert src[0] == int(1e17 - 0.5) * 2 ** 20
        assert snk[1] == 2 ** 19
        assert pair[0] == 2 ** 20


class TestMaxFlowMinCut:
    """Test the flow solvers and source-side extraction."""

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_no_source_edges(self, solver):
        graph = build_augmented_graph(np.array([1.0, 0.5]), _path(2), RegularizationParams(1.0, 2.0))
        cut = max_flow_min_cut(graph, solver=solver)

        assert cut.flow_value == 0.0
        assert cut.source_side.size == 0

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_single_source_only_snp(self, solver):
        net = SnpNetwork(n=1, rows=[], cols=[], weights=[])
        graph = build_augmented_graph(np.array([5.0]), net, RegularizationParams(0.0, 0.0))
        cut = max_flow_min_cut(graph, solver=solver)

        assert cut.flow_value == 0.0
        assert cut.source_side.tolist() == [0]

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_three_node_path_matches_enumeration(self, solver):
        c = np.array([3.0, 0.0, 3.0])
        params = RegularizationParams(1.0, 1.0)
        graph = build_augmented_graph(c, _path(3), params)
        cut = max_flow_min_cut(graph, solver=solver)

        best_cut = min(
            graph.partition_weight(np.flatnonzero(np.array(bits)))
            for bits in np.ndindex(2, 2, 2)
        )
        assert cut.flow_value == pytest.approx(best_cut)
        assert cut.flow_value == pytest.approx(graph.partition_weight(cut.source_side))

    def test_int32_overflow_goes_to_boykov_kolmogorov(self):
        c = np.array([3e6, 5000.0001, 0.0])
        graph = build_augmented_graph(c, _path(3), RegularizationParams(1.0, 5000.0))
        cut = max_flow_min_cut(graph, solver="dinic")

        assert cut.solver == "boykov_kolmogorov"
        assert cut.scale == 2 ** 20
        assert cut.source_side.tolist() == [0, 1]
        assert cut.flow_value == pytest.approx(graph.partition_weight(cut.source_side), abs=1e-6)

    def test_flow_total_beyond_int32_stays_on_dinic(self):
        # every high SNP drains 300 into its low neighbour; the total overflows int32
        c = np.tile([600.0, 0.0], 2500)
        graph = build_augmented_graph(c, _path(5000), RegularizationParams(500.0, 300.0))
        cut = max_flow_min_cut(graph, solver="dinic")

        assert cut.solver == "dinic"
        assert cut.integer_flow == 2500 * 300 * 2 ** 20
        assert cut.source_side.tolist() == []

    def test_unknown_solver(self):
        graph = build_augmented_graph(np.array([3.0]), SnpNetwork(n=1, rows=[], cols=[], weights=[]),
                                      RegularizationParams(0.0, 1.0))
        with pytest.raises(ValueError):
            max_flow_min_cut(graph, solver="push_relabel")


class TestSelect:
    """Test exact selection."""

    def test_lambda_zero_threshold(self):
        result = select(np.array([3.0, 1.0]), _path(2), RegularizationParams(0.0, 2.0))

        assert result.selected == (0,)
        assert result.objective == pytest.approx(1.0)

    def test_path_selects_bridge(self):
        """c=(3,0,3), eta=1, lam=1 on a path: all three SNPs, objective 3."""
        c = np.array([3.0, 0.0, 3.0])
        net = _path(3)
        params = RegularizationParams(1.0, 1.0)
        result = select(c, net, params)

        assert result.selected == (0, 1, 2)
        assert result.objective == pytest.approx(3.0)
        assert objective_value(c, net, [1, 0, 1], params) == pytest.approx(2.0)

    def test_all_below_eta(self):
        result = select(np.array([0.5, 1.0, 1.5]), _path(3), RegularizationParams(2.0, 2.0))

        assert result.selected == ()
        assert result.objective == 0.0

    def test_objective_cut_identity(self):
        c = np.array([4.0, 1.0, 0.0, 2.5])
        net = SnpNetwork.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [1.0, 0.5, 2.0, 1.5])
        params = RegularizationParams(0.75, 1.25)
        result = select(c, net, params)

        assert result.objective == pytest.approx(-(result.cut_value + cut_constant(c, params)))
        report = result.to_report()
        assert set(report) == {"lambda", "eta", "objective", "cut_value", "n_selected"}

    def test_tie_returns_minimal_maximizer(self):
        """A SNP with c_p == eta and no edges adds nothing and is left out."""
        net = SnpNetwork(n=2, rows=[], cols=[], weights=[])
        result = select(np.array([2.0, 5.0]), net, RegularizationParams(0.0, 2.0))
        assert result.selected == (1,)

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_matches_brute_force(self, solver):
        """Random dyadic instances up to 10 nodes agree with exhaustive search."""
        rng = np.random.default_rng(2024)
        for _ in range(150):
            n = int(rng.integers(1, 11))
            c, net = random_instance(rng, n, float(rng.uniform(0.0, 0.5)))
            lam = int(rng.integers(0, 21)) / 4.0
            eta = int(rng.integers(0, 21)) / 4.0
            result = select(c, net, RegularizationParams(lam, eta), solver=solver)
            best, minimal = brute_force_best(c, net, lam, eta)

            assert result.objective == pytest.approx(best, abs=1e-9)
            assert set(result.selected) == minimal

    @pytest.mark.slow
    def test_matches_brute_force_fourteen_nodes(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            n = int(rng.integers(1, 15))
            c, net = random_instance(rng, n, float(rng.uniform(0.0, 0.5)))
            lam = int(rng.integers(0, 21)) / 4.0
            eta = int(rng.integers(0, 21)) / 4.0
            result = select(c, net, RegularizationParams(lam, eta))
            best = max(v for v, _ in brute_force_objectives(c, net, lam, eta))

            assert result.objective == pytest.approx(best, abs=1e-9)

    def test_lambda_zero_closed_form(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = int(rng.integers(1, 30))
            c, net = random_instance(rng, n, 0.3)
            eta = int(rng.integers(0, 41)) / 4.0
            result = select(c, net, RegularizationParams(0.0, eta))

            assert set(result.selected) == set(np.flatnonzero(c > eta).tolist())

    def test_large_lambda_component_law(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            n = int(rng.integers(2, 25))
            c, net = random_instance(rng, n, float(rng.uniform(0.0, 0.3)))
            eta = int(rng.integers(0, 41)) / 4.0
            # every edge weight is at least 0.5
            lam = 2.0 * float(np.abs(c - eta).sum()) + 1.0
            result = select(c, net, RegularizationParams(lam, eta))

            assert set(result.selected) == component_law(c, net, eta)

    def test_scaling_all_inputs_keeps_selection(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            n = int(rng.integers(1, 11))
            c, net = random_instance(rng, n, 0.4)
            lam = int(rng.integers(0, 9)) / 4.0
            eta = int(rng.integers(0, 21)) / 4.0
            base = select(c, net, RegularizationParams(lam, eta)).selected
            for gamma in (0.25, 3.0, 1000.0):
                scaled = select(gamma * c, net, RegularizationParams(gamma * lam, gamma * eta))
                assert scaled.selected == base

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_repeated_calls_identical(self, solver):
        rng = np.random.default_rng(13)
        _, net = random_instance(rng, 12, 0.4)
        c = rng.uniform(0.0, 10.0, size=12)
        params = RegularizationParams(0.7, 2.3)
        first = select(c, net, params, solver=solver)
        second = select(c, net, params, solver=solver)

        assert first == second

    def test_float_scores_match_exhaustive_search(self):
        """Non-dyadic scores at the default scale reach the exhaustive optimum."""
        rng = np.random.default_rng(3)
        for _ in range(200):
            n = int(rng.integers(2, 11))
            _, net = random_instance(rng, n, 0.4)
            c = rng.uniform(0.0, 10.0, size=n)
            lam, eta = rng.uniform(0.0, 5.0, size=2)
            result = select(c, net, RegularizationParams(lam, eta))
            best = max(v for v, _ in brute_force_objectives(c, net, lam, eta))

            assert result.objective == pytest.approx(best, abs=1e-9)

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_small_margin_next_to_large_score(self, solver):
        """A margin of 1e-4 over eta survives next to a score of 3e6."""
        net = SnpNetwork(n=2, rows=[], cols=[], weights=[])
        result = select(np.array([5000.0001, 3e6]), net, RegularizationParams(0.0, 5000.0), solver=solver)

        assert result.selected == (0, 1)
        assert result.cut_value == 0.0

    def test_lambda_zero_closed_form_large_scores(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            n = int(rng.integers(1, 30))
            _, net = random_instance(rng, n, 0.3)
            c = rng.uniform(0.0, 1e6, size=n)
            eta = float(rng.uniform(0.0, 1e6))
            result = select(c, net, RegularizationParams(0.0, eta))

            assert set(result.selected) == set(np.flatnonzero(c > eta).tolist())


class TestParametricSweep:
    """Test the ascending-eta sweep."""

    def test_repeated_eta(self):
        c = np.array([3.0, 0.0, 3.0])
        results = parametric_sweep(c, _path(3), 1.0, [1.0, 1.0])
        assert results[0].selected == results[1].selected

    def test_zero_then_above_max(self):
        c = np.array([3.0, 0.5, 2.0])
        results = parametric_sweep(c, _path(3), 0.5, [0.0, 10.0])

        assert results[1].selected == ()
        assert set(results[0].selected) >= set(results[1].selected)

    def test_unsorted_rejected(self):
        with pytest.raises(ValueError):
            parametric_sweep(np.array([1.0, 2.0]), _path(2), 1.0, [2.0, 1.0])

    def test_nested_and_exact(self):
        rng = np.random.default_rng(12)
        etas = [k / 2.0 for k in range(0, 21)]
        for _ in range(200):
            n = int(rng.integers(1, 11))
            c, net = random_instance(rng, n, 0.4)
            lam = int(rng.integers(0, 9)) / 4.0
            results = parametric_sweep(c, net, lam, etas)

            for earlier, later in zip(results, results[1:]):
                assert set(later.selected) <= set(earlier.selected)
            for eta, result in zip(etas[::5], results[::5]):
                assert set(result.selected) == brute_force_best(c, net, lam, eta)[1]

    def test_nested_with_large_scores(self):
        """Sweeps that cross the int32 limit still nest and match the lambda=0 threshold."""
        rng = np.random.default_rng(14)
        _, net = random_instance(rng, 40, 0.1)
        c = rng.uniform(0.0, 1e6, size=40)
        etas = np.linspace(0.0, 1.1e6, 23).tolist()

        nested = parametric_sweep(c, net, 0.5, etas)
        for earlier, later in zip(nested, nested[1:]):
            assert set(later.selected) <= set(earlier.selected)
        for eta, result in zip(etas, parametric_sweep(c, net, 0.0, etas)):
            assert set(result.selected) == set(np.flatnonzero(c > eta).tolist())


class TestCertificate:
    """The certificate error type is part of the public surface."""

    def test_is_runtime_error(self):
        assert issubclass(FlowCertificateError, RuntimeError)
