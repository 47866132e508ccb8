"""Tests for S_A, the Renyi traces, I_AB and the limiting values."""

import dataclasses
import math

import numpy as np
import pytest

from src.errors import ThermoError
from src.lattice.bipartition import synthetic_stats, whole_system_stats
from src.thermo.couplings import Couplings, make_couplings
from src.thermo.entropy import (
    entanglement_entropy,
    log_trace_rho_n,
    mutual_information,
    renyi_entropy,
    trace_rho_n,
)
from src.thermo.fterms import f_terms
from src.thermo.limits import (
    entropy_high_temperature,
    entropy_order_gap,
    entropy_size_first,
    entropy_temperature_first,
    entropy_zero_temperature,
    mutual_information_high_temperature,
    mutual_information_order_gap,
    mutual_information_size_first,
    mutual_information_temperature_first,
)

LN2 = math.log(2.0)
TEMPERATURES = [0.1, 0.3, 0.7, 1.0, 2.0, 5.0, 20.0]


def split_stats(n):
    """A thin region (no plaquettes solely in A) whose B splits into N/3 and 2N/3 parts."""
    third = n // 3
    return synthetic_stats((0, 0, 0), [(third,) * 3, (n - third,) * 3], (10, 10, 10))


class TestSingleHexagon:
    def test_ground_state(self, hexagon_region):
        _, stats = hexagon_region
        couplings = make_couplings((1.0, 1.0, 1.0), 0.0)
        assert entanglement_entropy(stats, couplings).s_total == pytest.approx(4 * LN2, abs=1e-12)
        assert trace_rho_n(stats, couplings, 2) == pytest.approx(1 / 16, rel=1e-12)
        assert entropy_zero_temperature(stats) == pytest.approx(4 * LN2)

    def test_infinite_temperature(self, hexagon_region):
        _, stats = hexagon_region
        breakdown = entanglement_entropy(stats, make_couplings((1.0, 1.0, 1.0), math.inf))
        assert breakdown.s_total == entropy_high_temperature(stats)
        assert breakdown.s_total == pytest.approx(5 * LN2)
        assert breakdown.s_bits == pytest.approx(5.0)

    def test_continuous_into_infinite_coupling(self, hexagon_region):
        _, stats = hexagon_region
        finite = entanglement_entropy(stats, Couplings.from_k(1e6, 1e6, 1e6)).s_total
        infinite = entanglement_entropy(stats, Couplings.from_k(math.inf, math.inf, math.inf)).s_total
        assert finite == pytest.approx(infinite, abs=1e-9)

    def test_bounded_by_limits(self, hexagon_region):
        _, stats = hexagon_region
        low, high = entropy_zero_temperature(stats), entropy_high_temperature(stats)
        for temperature in TEMPERATURES:
            s = entanglement_entropy(stats, make_couplings((1.0, 1.0, 1.0), temperature)).s_total
            assert low - 1e-9 <= s <= high + 1e-9

    def test_renyi_ordering(self, hexagon_region):
        _, stats = hexagon_region
        for temperature in TEMPERATURES:
            couplings = make_couplings((0.5, 1.0, 2.0), temperature)
            s1 = renyi_entropy(stats, couplings, 1)
            s2 = renyi_entropy(stats, couplings, 2)
            s3 = renyi_entropy(stats, couplings, 3)
            s4 = renyi_entropy(stats, couplings, 4)
            assert s4 <= s3 + 1e-12 <= s2 + 2e-12 <= s1 + 3e-12

    def test_traces_decrease_with_order(self, hexagon_region):
        _, stats = hexagon_region
        couplings = make_couplings((1.0, 1.0, 1.0), 1.0)
        assert log_trace_rho_n(stats, couplings, 3) < log_trace_rho_n(stats, couplings, 2) < 0.0

    def test_breakdown_sums(self, hexagon_region):
        _, stats = hexagon_region
        b = entanglement_entropy(stats, make_couplings((1.0, 1.0, 1.0), 0.8))
        assert b.s_total == pytest.approx(b.term_log_group + b.shifted_log_z0 + b.shifted_df)

    def test_breakdown_log_z0_is_absolute(self, hexagon_region):
        _, stats = hexagon_region
        couplings = make_couplings((0.5, 1.0, 2.0), 0.8)
        b = entanglement_entropy(stats, couplings)
        assert b.log_z0 == pytest.approx(f_terms(couplings, stats).log_z0, rel=1e-12)


class TestMutualInformation:
    def test_ground_state(self, torus33, hexagon_region):
        _, stats = hexagon_region
        mi = mutual_information(stats, stats.complement(), whole_system_stats(torus33), make_couplings((1, 1, 1), 0.0))
        assert mi.s_ab == pytest.approx(0.0, abs=1e-12)
        assert mi.value == pytest.approx(mutual_information_temperature_first(stats))
        assert mi.value == pytest.approx(4 * LN2)

    def test_infinite_temperature(self, torus33, hexagon_region):
        _, stats = hexagon_region
        couplings = make_couplings((1, 1, 1), math.inf)
        mi = mutual_information(stats, stats.complement(), whole_system_stats(torus33), couplings)
        assert mi.value == pytest.approx(mutual_information_high_temperature(stats), abs=1e-12)

    def test_nonnegative(self, torus33, hexagon_region):
        _, stats = hexagon_region
        whole = whole_system_stats(torus33)
        for temperature in TEMPERATURES:
            mi = mutual_information(stats, stats.complement(), whole, make_couplings((1, 1, 1), temperature))
            assert mi.value >= -1e-9

    def test_argument_checks(self, torus33, hexagon_region):
        _, stats = hexagon_region
        couplings = make_couplings((1, 1, 1), 1.0)
        with pytest.raises(ThermoError, match="whole-system"):
            mutual_information(stats, stats.complement(), stats, couplings)
        with pytest.raises(ThermoError, match="swapped"):
            mutual_information(stats, stats, whole_system_stats(torus33), couplings)


class TestOrderOfLimits:
    @pytest.mark.parametrize("n", [300, 3000])
    def test_entropy_gap(self, n):
        stats = split_stats(n)
        size_first = entanglement_entropy(stats, make_couplings((1, 1, 1), 1.0)).s_total
        temperature_first = entanglement_entropy(stats, make_couplings((1, 1, 1), 1.0 / 50)).s_total
        assert size_first == pytest.approx(entropy_size_first(stats), abs=1e-9)
        assert temperature_first == pytest.approx(entropy_temperature_first(stats), abs=1e-9)
        assert size_first - temperature_first == pytest.approx(2 * LN2, abs=1e-4)
        assert entropy_order_gap(stats) == pytest.approx(2 * (stats.m_b - 1) * LN2)

    def test_mutual_information_gap(self):
        n, s, t = 10 ** 10, 10 ** 9, 10 ** 9
        stats = synthetic_stats((s,) * 3, [(t,) * 3, (n - s - t,) * 3], (10, 10, 10), a_components=[(s + 10,) * 3])
        whole = synthetic_stats((n,) * 3, [], (0, 0, 0))

        def value(k):
            return mutual_information(stats, stats.complement(), whole, Couplings.from_k(k, k, k)).value

        size_first, temperature_first = value(1e-8), value(1e-14)
        assert size_first == pytest.approx(mutual_information_size_first(stats), abs=1e-4)
        assert temperature_first == pytest.approx(mutual_information_temperature_first(stats), abs=1e-4)
        assert size_first - temperature_first == pytest.approx(mutual_information_order_gap(stats), abs=1e-4)
        assert mutual_information_order_gap(stats) == pytest.approx(2 * LN2)

    def test_mutual_information_gap_formula(self):
        stats = split_stats(300)
        assert mutual_information_order_gap(stats) == pytest.approx(2 * LN2)
        assert mutual_information_size_first(stats) - mutual_information_temperature_first(stats) == \
            pytest.approx((stats.m_a + stats.m_b - 1) * LN2)

    def test_limits_need_torus(self):
        stats = synthetic_stats((1, 1, 1), [(2, 2, 2)], (1, 1, 1), boundary_kind="planar_triangular")
        with pytest.raises(ThermoError, match="torus"):
            entropy_size_first(stats)


def test_rejects_inconsistent_stats():
    stats = split_stats(300)
    broken = dataclasses.replace(stats, m_b=3)
    with pytest.raises(ThermoError, match="inconsistent"):
        entanglement_entropy(broken, make_couplings((1, 1, 1), 1.0))


def test_large_system_stays_finite():
    stats = split_stats(3 * 10 ** 6)
    for temperature in (0.05, 1.0, 100.0):
        s = entanglement_entropy(stats, make_couplings((1, 1, 1), temperature)).s_total
        assert np.isfinite(s) and s >= 0
