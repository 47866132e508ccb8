"""Tests for the thermal couplings."""

import math

import pytest

from src.errors import ThermoError
from src.lattice.colex import Color, PerColor
from src.thermo.couplings import Couplings, coupling_k, make_couplings, zeta


class TestCouplingK:
    def test_reference_value(self):
        assert coupling_k(1.0, 1.0) == pytest.approx(0.2723414, abs=1e-7)

    @pytest.mark.parametrize("x", [0.05, 0.3, 0.5, 0.51, 2.0, 10.0])
    def test_matches_log_tanh(self, x):
        assert coupling_k(x, 1.0) == pytest.approx(-math.log(math.tanh(x)), rel=1e-12)

    def test_large_ratio_stays_positive(self):
        k = coupling_k(200.0, 1.0)
        assert 0 < k == pytest.approx(2.0 * math.exp(-400.0), rel=1e-12)

    def test_edge_cases(self):
        assert coupling_k(1.0, 0.0) == 0.0
        assert coupling_k(math.inf, 3.0) == 0.0
        assert coupling_k(math.inf, math.inf) == 0.0
        assert coupling_k(1.0, math.inf) == math.inf
        assert coupling_k(0.0, 1.0) == math.inf

    def test_monotone_in_temperature(self):
        values = [coupling_k(1.0, t) for t in (0.1, 0.5, 1.0, 2.0, 10.0)]
        assert values == sorted(values)

    @pytest.mark.parametrize("lambda_x, temperature", [(1.0, -0.1), (-1.0, 1.0), (math.nan, 1.0), (1.0, math.nan)])
    def test_invalid(self, lambda_x, temperature):
        with pytest.raises(ThermoError):
            coupling_k(lambda_x, temperature)


def test_zeta():
    assert zeta(1.0, 0.5) == pytest.approx(math.exp(2.0))
    assert zeta(1.0, 0.0) == math.inf
    assert zeta(1000.0, 1.0) == math.inf


class TestCouplings:
    def test_make_couplings_per_color(self):
        couplings = make_couplings((1.0, 2.0, math.inf), 1.0)
        assert couplings.k.red == pytest.approx(coupling_k(1.0, 1.0))
        assert couplings.k.blue == pytest.approx(coupling_k(2.0, 1.0))
        assert couplings.k.green == 0.0

    def test_hard_colors(self):
        couplings = make_couplings((1.0, 1.0, 1.0), 2.0, hard=(Color.BLUE,))
        assert couplings.of(Color.BLUE) == 0.0
        assert couplings.lambda_x.blue == math.inf
        assert couplings.of(Color.RED) > 0
        assert couplings.hard == frozenset({Color.BLUE})

    def test_degenerate(self):
        assert make_couplings((1.0, 1.0, 1.0), math.inf).degenerate
        assert make_couplings((0.0, 0.0, 0.0), 1.0).all_infinite
        mixed = make_couplings((0.0, 1.0, 1.0), 1.0)
        assert mixed.any_infinite and not mixed.degenerate

    def test_zero(self):
        assert make_couplings((1.0, 2.0, 3.0), 0.0).is_zero

    def test_x_y(self):
        couplings = Couplings.from_k(2.0, 0.0, 1.0)
        assert couplings.x == PerColor(pytest.approx(math.cosh(1.0)), 1.0, pytest.approx(math.cosh(0.5)))
        assert couplings.y.blue == 0.0

    def test_from_k_rejects_negative(self):
        with pytest.raises(ThermoError):
            Couplings.from_k(-1.0, 0.0, 0.0)
