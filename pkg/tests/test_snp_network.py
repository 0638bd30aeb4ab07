"""Unit tests for SNP network construction and edge-list I/O."""
import numpy as np
import pytest

from genotype_data import GeneAnnotation, GeneInteractionList, SnpMap
from snp_network import (
    NetworkKind,
    SnpNetwork,
    build_gi,
    build_gm,
    build_gs,
    build_network,
    laplacian_quadratic,
    read_edge_list,
    remove_edges,
    write_edge_list,
)


@pytest.fixture
def two_gene_map():
    """Gene A ends just before s1; gene B spans s5, s6 and s7."""
    snp_map = SnpMap(
        snp_ids=tuple(f"s{i}" for i in range(1, 8)),
        chromosomes=("1",) * 7,
        positions=np.array([100, 150, 200, 5000, 9000, 9100, 9200]),
    )
    genes = GeneAnnotation(
        gene_ids=("A", "B"),
        chromosomes=("1", "1"),
        starts=np.array([90, 8900]),
        ends=np.array([99, 9300]),
    )
    return snp_map, genes


class TestSnpNetwork:
    """Test the network container."""

    def test_from_edges_collapses_and_orients(self):
        net = SnpNetwork.from_edges(4, [(2, 1), (1, 2), (3, 3), (0, 3)])

        assert net.edges() == [(0, 3, 1.0), (1, 2, 1.0)]

    def test_rejects_duplicates_and_bad_weights(self):
        with pytest.raises(ValueError):
            SnpNetwork(n=3, rows=[0, 0], cols=[1, 1], weights=[1.0, 1.0])
        with pytest.raises(ValueError):
            SnpNetwork(n=3, rows=[0], cols=[1], weights=[0.0])
        with pytest.raises(ValueError):
            SnpNetwork(n=3, rows=[1], cols=[1], weights=[1.0])

    def test_degrees_and_adjacency(self):
        net = SnpNetwork.from_edges(3, [(0, 1), (1, 2)], [2.0, 3.0])

        assert net.degrees.tolist() == [2.0, 5.0, 3.0]
        dense = net.adjacency().toarray()
        assert np.array_equal(dense, dense.T)
        assert dense[1, 2] == 3.0

    def test_subnetwork(self):
        net = SnpNetwork.from_edges(4, [(0, 1), (1, 2), (2, 3)], snp_ids=("a", "b", "c", "d"))
        sub = net.subnetwork([1, 2, 3])

        assert sub.snp_ids == ("b", "c", "d")
        assert sub.edge_set() == {(0, 1), (1, 2)}


class TestLaplacianQuadratic:
    """Test f^T L f."""

    def test_constant_vector(self):
        net = SnpNetwork.from_edges(4, [(0, 1), (1, 2), (0, 3)], [1.0, 2.5, 0.5])
        assert laplacian_quadratic(net, np.ones(4)) == 0.0

    def test_path_alternating(self):
        net = SnpNetwork.from_edges(3, [(0, 1), (1, 2)])
        assert laplacian_quadratic(net, [1, 0, 1]) == pytest.approx(2.0)

    def test_empty_edges(self):
        net = SnpNetwork(n=3, rows=[], cols=[], weights=[])
        assert laplacian_quadratic(net, [5.0, -1.0, 2.0]) == 0.0

    def test_length_mismatch(self):
        net = SnpNetwork.from_edges(3, [(0, 1)])
        with pytest.raises(ValueError):
            laplacian_quadratic(net, [1.0, 0.0])

    def test_matches_dense_laplacian(self):
        """Agrees with f^T (D - W) f on random weighted graphs."""
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(2, 50))
            a = rng.integers(0, n, size=3 * n)
            b = rng.integers(0, n, size=3 * n)
            net = SnpNetwork.from_arrays(n, a, b, rng.uniform(0.1, 3.0, size=3 * n))
            w = net.adjacency().toarray()
            laplacian = np.diag(w.sum(axis=1)) - w
            f = rng.standard_normal(n)
            expected = float(f @ laplacian @ f)

            assert laplacian_quadratic(net, f) == pytest.approx(expected, rel=1e-10, abs=1e-12)


class TestBuilders:
    """Test GS, GM and GI constructions."""

    def test_gs_path(self, five_snp_map):
        net = build_gs(five_snp_map)
        assert net.edge_set() == {(0, 1), (1, 2), (2, 3), (3, 4)}

    def test_gs_no_cross_chromosome_edges(self):
        snp_map = SnpMap(
            snp_ids=("a", "b", "c", "d", "e"),
            chromosomes=("1", "1", "1", "2", "2"),
            positions=[10, 20, 30, 10, 20],
        )
        assert build_gs(snp_map).n_edges == 3

    def test_gs_single_snp(self):
        snp_map = SnpMap(snp_ids=("a",), chromosomes=("1",), positions=[10])
        assert build_gs(snp_map).n_edges == 0

    def test_gm_links_gene_members(self, two_gene_map):
        snp_map, genes = two_gene_map
        gs = build_gs(snp_map)
        gm = build_gm(snp_map, genes, window=10)

        assert (4, 6) in gm.edge_set() and (4, 6) not in gs.edge_set()
        assert gs.edge_set() <= gm.edge_set()

    def test_gm_window_boundary(self):
        """A SNP exactly ``window`` bp past the gene end is connected."""
        snp_map = SnpMap(snp_ids=("a", "b", "c"), chromosomes=("1", "1", "1"), positions=[5000, 20000, 30000])
        genes = GeneAnnotation(gene_ids=("G",), chromosomes=("1",), starts=[1000], ends=[10000])
        gm = build_gm(snp_map, genes, window=20000)

        assert (0, 2) in gm.edge_set()

    def test_gm_single_nearby_snp_adds_nothing(self, five_snp_map):
        genes = GeneAnnotation(gene_ids=("G",), chromosomes=("1",), starts=[2000], ends=[2000])
        gm = build_gm(five_snp_map, genes, window=0)
        assert gm.edge_set() == build_gs(five_snp_map).edge_set()

    def test_gi_bipartite_edges(self):
        """Genes with 2 and 3 disjoint SNPs add the 2 x 3 cross edges."""
        snp_map = SnpMap(
            snp_ids=("a1", "a2", "b1", "b2", "b3"),
            chromosomes=("1", "1", "2", "2", "2"),
            positions=[100, 200, 100, 200, 300],
        )
        genes = GeneAnnotation(gene_ids=("A", "B"), chromosomes=("1", "2"), starts=[100, 100], ends=[200, 300])
        interactions = GeneInteractionList(pairs=(("A", "B"),))
        gm = build_gm(snp_map, genes, window=0)
        gi = build_gi(snp_map, genes, interactions, window=0)

        new_edges = gi.edge_set() - gm.edge_set()
        assert new_edges == {(p, q) for p in (0, 1) for q in (2, 3, 4)}

    def test_gi_missing_gene_equals_gm(self, two_gene_map):
        snp_map, genes = two_gene_map
        interactions = GeneInteractionList(pairs=(("A", "Z"),))
        gi = build_gi(snp_map, genes, interactions, window=100)

        assert gi.edge_set() == build_gm(snp_map, genes, window=100).edge_set()

    def test_gi_overlapping_genes_no_self_loop(self):
        snp_map = SnpMap(snp_ids=("a", "b"), chromosomes=("1", "1"), positions=[100, 200])
        genes = GeneAnnotation(gene_ids=("A", "B"), chromosomes=("1", "1"), starts=[100, 100], ends=[200, 200])
        gi = build_gi(snp_map, genes, GeneInteractionList(pairs=(("A", "B"),)), window=0)

        assert gi.edge_set() == {(0, 1)}
        assert np.all(gi.rows < gi.cols)

    def test_monotone_constructions(self, two_gene_map):
        snp_map, genes = two_gene_map
        interactions = GeneInteractionList(pairs=(("A", "B"),))
        gs = build_network(NetworkKind.GS, snp_map)
        gm = build_network("gm", snp_map, genes, window=200)
        gi = build_network("gi", snp_map, genes, interactions, window=200)

        assert gs.edge_set() <= gm.edge_set() <= gi.edge_set()
        assert np.all(gi.weights == 1.0)

    def test_dispatch_requires_inputs(self, five_snp_map):
        with pytest.raises(ValueError):
            build_network("gm", five_snp_map)
        genes = GeneAnnotation(gene_ids=("G",), chromosomes=("1",), starts=[0], ends=[10])
        with pytest.raises(ValueError):
            build_network("gi", five_snp_map, genes)


class TestRemoveEdges:
    """Test random edge deletion."""

    @staticmethod
    def _ten_edges():
        return SnpNetwork.from_edges(11, [(i, i + 1) for i in range(10)])

    def test_fraction_zero_is_identity(self):
        net = self._ten_edges()
        assert remove_edges(net, 0.0, 1).edge_set() == net.edge_set()

    def test_fraction_one_removes_all(self):
        assert remove_edges(self._ten_edges(), 1.0, 1).n_edges == 0

    def test_floor_rule(self):
        net = self._ten_edges()
        assert remove_edges(net, 0.5, 1).n_edges == 5
        assert remove_edges(net, 0.19, 1).n_edges == 9

    def test_seeded(self):
        net = self._ten_edges()
        assert remove_edges(net, 0.3, 4).edge_set() == remove_edges(net, 0.3, 4).edge_set()

    def test_fraction_range(self):
        with pytest.raises(ValueError):
            remove_edges(self._ten_edges(), 1.5, 0)


class TestEdgeListIO:
    """Test edge-list files."""

    def test_written_twice_identically(self, tmp_path, five_snp_map):
        net = build_gs(five_snp_map)
        write_edge_list(net, tmp_path / "a.tsv")
        write_edge_list(build_gs(five_snp_map), tmp_path / "b.tsv")

        assert (tmp_path / "a.tsv").read_bytes() == (tmp_path / "b.tsv").read_bytes()
        lines = (tmp_path / "a.tsv").read_text().splitlines()
        assert lines[0] == "snp_id_a\tsnp_id_b\tweight"
        assert lines[1] == "rs1\trs2\t1"
        assert len(lines) == 5

    def test_read_back_against_subset(self, tmp_path, five_snp_map):
        write_edge_list(build_gs(five_snp_map), tmp_path / "net.tsv")
        net = read_edge_list(tmp_path / "net.tsv", ("rs1", "rs2", "rs4", "rs5"))

        assert net.n == 4
        assert net.edge_set() == {(0, 1), (2, 3)}
