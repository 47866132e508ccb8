"""Closed-form limiting values of S_A and I_AB and the order-of-limits gaps."""

import math

from ..errors import ThermoError
from ..lattice.bipartition import RegionStats, group_cardinalities

LN2 = math.log(2.0)


def entropy_high_temperature(stats: RegionStats) -> float:
    """S_A at k = inf for finite N: ln(|G| / d_B); on the torus (Sigma_AB + Sigma_A - 2 m_A) ln 2."""
    cards = group_cardinalities(stats)
    return (cards.log2_group - cards.log2_db) * LN2


def entropy_zero_temperature(stats: RegionStats) -> float:
    """S_A of the ground state: -ln(d_A d_B / |G|)."""
    return -group_cardinalities(stats).log_ratio


def _torus_only(stats: RegionStats) -> None:
    if not stats.is_torus:
        raise ThermoError("order-of-limits values are defined on the torus")


def entropy_temperature_first(stats: RegionStats) -> float:
    """T -> 0 before N -> inf: (Sigma_AB - 2 m_A - 2 m_B + 2) ln 2."""
    _torus_only(stats)
    return (stats.sigma_ab - 2 * stats.m_a - 2 * stats.m_b + 2) * LN2


def entropy_size_first(stats: RegionStats) -> float:
    """N -> inf before T -> 0: (Sigma_AB - 2 m_A) ln 2."""
    _torus_only(stats)
    return (stats.sigma_ab - 2 * stats.m_a) * LN2


def entropy_order_gap(stats: RegionStats) -> float:
    """Size-first minus temperature-first entropy, 2 (m_B - 1) ln 2."""
    return entropy_size_first(stats) - entropy_temperature_first(stats)


def mutual_information_high_temperature(stats: RegionStats) -> float:
    """I_AB at k = inf: (Sigma_AB - 2 m_A - 2 m_B + 2) ln 2 / 2."""
    _torus_only(stats)
    return 0.5 * (stats.sigma_ab - 2 * stats.m_a - 2 * stats.m_b + 2) * LN2


def mutual_information_temperature_first(stats: RegionStats) -> float:
    """I_AB of the ground state, equal to its S_A."""
    return entropy_temperature_first(stats)


def mutual_information_size_first(stats: RegionStats) -> float:
    """N -> inf before T -> 0: (Sigma_AB - m_A - m_B + 1) ln 2."""
    _torus_only(stats)
    return (stats.sigma_ab - stats.m_a - stats.m_b + 1) * LN2


def mutual_information_order_gap(stats: RegionStats) -> float:
    """Size-first minus temperature-first mutual information, (m_A + m_B - 1) ln 2."""
    return mutual_information_size_first(stats) - mutual_information_temperature_first(stats)
