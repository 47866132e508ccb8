"""Tests for lattice construction, validation and spec parsing."""

import numpy as np
import pytest

from src.errors import LatticeError, SpecParseError
from src.lattice.colex import (
    COLOR_ORDER,
    Color,
    PerColor,
    build_torus_colex,
    build_triangular_colex,
    gf2_rank,
    parse_lattice_spec,
    recolor_link,
    validate,
)


class TestTorus:
    def test_counts(self, torus33):
        assert torus33.n_plaquettes == 9
        assert torus33.n_qubits == 18
        assert len(torus33.links) == 27
        assert torus33.n_per_color == 3
        assert torus33.color_totals() == PerColor(3, 3, 3)

    def test_validates(self, torus33, torus99):
        for colex in (torus33, torus99):
            report = validate(colex)
            assert report.passed, [c.reason for c in report.failed()]

    def test_global_constraint_products(self, torus99):
        products = [
            np.bitwise_xor.reduce(torus99.incidence[torus99.plaquettes_by_color(c)], axis=0)
            for c in COLOR_ORDER
        ]
        assert np.array_equal(products[0], products[1])
        assert np.array_equal(products[1], products[2])

    def test_rank_is_3n_minus_2(self, torus33):
        assert gf2_rank(torus33.incidence) == 3 * torus33.n_per_color - 2

    def test_six_neighbors(self, torus99):
        assert len(torus99.plaquette_neighbors(0)) == 6

    @pytest.mark.parametrize("lu, lv", [(4, 3), (3, 5), (0, 3)])
    def test_rejects_sides_not_multiple_of_three(self, lu, lv):
        with pytest.raises(LatticeError, match="multiple of 3"):
            build_torus_colex(lu, lv)

    def test_support_out_of_range(self, torus33):
        with pytest.raises(LatticeError):
            torus33.plaquette_support(9)


class TestTriangular:
    def test_smallest_code(self, steane):
        assert steane.n_qubits == 7
        assert steane.n_plaquettes == 3
        assert sorted(len(p.support) for p in steane.plaquettes) == [4, 4, 4]
        assert steane.n_per_color is None

    @pytest.mark.parametrize("size", [1, 2, 3, 6])
    def test_validates(self, size):
        report = validate(build_triangular_colex(size))
        assert report.passed, [c.reason for c in report.failed()]
        assert report.get("encoded_qubit").value == 1.0

    def test_size_six_counts(self, triangular6):
        assert triangular6.n_qubits == 127
        assert triangular6.n_plaquettes == 63

    def test_unsupported_size(self):
        with pytest.raises(LatticeError, match="available sizes"):
            build_triangular_colex(0)


class TestValidateFaults:
    def test_recolored_link_is_named(self, torus33):
        link = torus33.links[0]
        wrong = next(c for c in Color if c != link.color)
        report = validate(recolor_link(torus33, 0, wrong))
        assert not report.passed
        failed = report.get("link_colors")
        assert not failed.passed
        assert "c-link connects c-plaquettes" in failed.reason

    def test_other_checks_unaffected_by_recolor(self, torus33):
        report = validate(recolor_link(torus33, 0, torus33.links[0].color.bar))
        assert report.get("trivalent").passed
        assert report.get("global_constraint").passed


class TestColor:
    def test_bar_cycles(self):
        assert Color.RED.bar.bar.bar == Color.RED

    def test_from_letter(self):
        assert Color.from_letter("g") == Color.GREEN
        with pytest.raises(ValueError):
            Color.from_letter("x")


class TestParseLatticeSpec:
    def test_torus(self):
        assert parse_lattice_spec("torus:3x6").dims == (3, 6)

    def test_triangular(self):
        assert parse_lattice_spec("triangular:2").label == "triangular:2"

    @pytest.mark.parametrize("spec, position", [
        ("torus", 5),
        ("sphere:3", 0),
        ("torus:3y3", 7),
    ])
    def test_errors_carry_position(self, spec, position):
        with pytest.raises(SpecParseError) as excinfo:
            parse_lattice_spec(spec)
        assert excinfo.value.position == position
        assert "^" in str(excinfo.value)

    def test_too_large(self):
        with pytest.raises(SpecParseError, match="exceeds"):
            parse_lattice_spec("torus:303x3")
