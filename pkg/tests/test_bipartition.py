"""Tests for bipartition statistics, cardinalities and the canonical regions."""

import math

import pytest

from src.errors import LatticeTooSmallError, RegionError, SpecParseError
from src.lattice.bipartition import (
    Bipartition,
    annulus_bipartition,
    canonical_topo_bipartitions,
    collective_strings,
    group_cardinalities,
    region_stats,
    string_support,
    synthetic_stats,
    topo_relation_violations,
    whole_system_stats,
)
from src.lattice.colex import PerColor
from src.lattice.regions import parse_region_spec

from .conftest import synthetic_topo_stats


class TestHexagonStats:
    def test_counts(self, hexagon_region):
        _, stats = hexagon_region
        assert stats.sigma_a == PerColor(1, 0, 0)
        assert stats.sigma_ab_by_color == PerColor(0, 3, 3)
        assert stats.sigma_b == PerColor(2, 0, 0)
        assert (stats.m_a, stats.m_b) == (1, 1)
        assert stats.components[0].sigma == PerColor(2, 3, 3)
        assert stats.consistency_errors() == []

    def test_cardinalities(self, hexagon_region):
        _, stats = hexagon_region
        cards = group_cardinalities(stats)
        assert cards == (7.0, 1.0, 2.0)
        assert cards.log_ratio == pytest.approx(-4 * math.log(2.0))

    def test_complement_swaps(self, hexagon_region):
        _, stats = hexagon_region
        swapped = stats.complement()
        assert swapped.sigma_a == stats.sigma_b
        assert swapped.sigma_b == stats.sigma_a
        assert (swapped.m_a, swapped.m_b) == (stats.m_b, stats.m_a)
        assert swapped.consistency_errors() == []
        assert group_cardinalities(swapped).log2_da == group_cardinalities(stats).log2_db

    def test_collective_strings_lie_in_a(self, hexagon_region):
        bp, _ = hexagon_region
        strings = collective_strings(bp.colex, bp)
        assert len(strings) == 3
        for string in strings:
            assert string_support(bp.colex, string.plaquette_factors) <= bp.a_qubits

    @pytest.mark.parametrize("outer, inner", [(0, 0), (1, 0), (2, 1)])
    def test_collective_strings_overlap_plaquettes_evenly(self, torus99, outer, inner):
        bp = Bipartition(torus99, torus99.plaquette_support(40)) if outer == 0 else annulus_bipartition(torus99, outer, inner)
        strings = collective_strings(torus99, bp)
        assert strings
        for string in strings:
            support = string_support(torus99, string.plaquette_factors)
            for plaquette in torus99.plaquettes:
                assert len(support & torus99.plaquette_support(plaquette.id)) % 2 == 0


class TestBipartition:
    def test_empty_a_rejected(self, torus33):
        with pytest.raises(RegionError, match="A is empty"):
            Bipartition(torus33, frozenset())

    def test_empty_b_rejected(self, torus33):
        with pytest.raises(RegionError, match="B is empty"):
            Bipartition(torus33, frozenset(range(torus33.n_qubits)))

    def test_out_of_range(self, torus33):
        with pytest.raises(RegionError, match="out of range"):
            Bipartition.from_qubits(torus33, [0, 99])

    def test_foreign_lattice(self, torus33, torus99):
        bp = Bipartition(torus99, torus99.plaquette_support(0))
        with pytest.raises(RegionError):
            region_stats(torus33, bp)


class TestWholeSystem:
    def test_whole_system(self, torus33):
        stats = whole_system_stats(torus33)
        assert stats.m_b == 0
        cards = group_cardinalities(stats)
        assert cards.log2_da == cards.log2_group == 7.0
        assert cards.log2_db == 0.0
        with pytest.raises(RegionError):
            stats.complement()


class TestSyntheticStats:
    def test_defaults(self):
        stats = synthetic_stats((1, 2, 3), [(4, 3, 2), (5, 5, 5)], (2, 2, 2))
        assert stats.n_per_color == 10
        assert stats.sigma_b == PerColor(7, 6, 5)
        assert stats.m_b == 2

    def test_sum_rule_violation(self):
        with pytest.raises(RegionError, match="sum rule"):
            synthetic_stats((1, 1, 1), [(2, 2, 3)], (0, 0, 0))

    def test_negative_counts(self):
        with pytest.raises(RegionError, match="negative"):
            synthetic_stats((1, 1, 1), [(2, 2, 2)], (5, 0, 0))


class TestAnnulus:
    def test_annulus_has_two_b_components(self, torus99):
        stats = region_stats(torus99, annulus_bipartition(torus99, 2, 1))
        assert stats.m_b == 2
        assert stats.m_a == 1
        assert all(c.enclosed for c in stats.components)

    def test_disk(self, torus99):
        stats = region_stats(torus99, annulus_bipartition(torus99, 1, 0))
        assert (stats.m_a, stats.m_b) == (1, 1)

    def test_bad_radii(self, torus99):
        with pytest.raises(RegionError):
            annulus_bipartition(torus99, 1, 1)

    def test_too_small(self, torus33):
        with pytest.raises(LatticeTooSmallError):
            annulus_bipartition(torus33, 2, 1)


class TestCanonicalRegions:
    def test_torus_relations(self, torus_topo_stats):
        assert topo_relation_violations(torus_topo_stats) == []
        assert [(s.m_a, s.m_b) for s in torus_topo_stats] == [(1, 2), (1, 1), (1, 1), (2, 1)]

    def test_planar_relations(self, planar_topo_stats):
        assert topo_relation_violations(planar_topo_stats) == []

    def test_nested(self, torus99):
        geometry = canonical_topo_bipartitions(torus99, 2, 1)
        a1, a2, a3, a4 = (bp.a_qubits for bp in geometry.bipartitions)
        assert a2 < a1 and a3 < a1 and a4 == a2 & a3

    def test_too_small(self, torus33):
        with pytest.raises(LatticeTooSmallError):
            canonical_topo_bipartitions(torus33, 2, 1)

    def test_requires_inner_radius(self, torus99):
        with pytest.raises(RegionError):
            canonical_topo_bipartitions(torus99, 2, 0)

    def test_synthetic_relations_hold(self):
        four = synthetic_topo_stats(80, (10, 9, 8), (2, 1, 3), (1, 2, 2), (3, 4, 5), (6, 7, 8), (1, 0, 2), (0, 1, 1))
        assert topo_relation_violations(four) == []

    def test_wrong_count(self, torus_topo_stats):
        assert topo_relation_violations(torus_topo_stats[:3])


class TestRegionSpec:
    def test_hexagon(self, torus33):
        request = parse_region_spec(torus33, "hexagon:4")
        assert request.bipartitions[0].a_qubits == torus33.plaquette_support(4)
        assert not request.is_topological

    def test_qubits(self, torus33):
        request = parse_region_spec(torus33, "qubits:1,2,5")
        assert request.bipartitions[0].a_qubits == frozenset({1, 2, 5})

    def test_levinwen(self, torus99):
        request = parse_region_spec(torus99, "levinwen:2,1")
        assert request.is_topological
        assert len(request.bipartitions) == 4

    @pytest.mark.parametrize("spec, position", [
        ("disk:1", 0),
        ("hexagon", 7),
        ("annulus:2", 8),
        ("qubits:1,x", 9),
    ])
    def test_errors(self, torus33, spec, position):
        with pytest.raises(SpecParseError) as excinfo:
            parse_region_spec(torus33, spec)
        assert excinfo.value.position == position
