"""Entanglement entropy, Renyi traces and mutual information in closed form."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ..errors import ThermoError
from ..lattice.bipartition import RegionStats, group_cardinalities
from .couplings import Couplings
from .fterms import LN4, _active_components, replica_terms, shift_m, shifted_terms


@dataclass(frozen=True)
class EntropyBreakdown:
    """
    S_A split into its three contributions.

    shifted_log_z0 and shifted_df are ln Z_0 - M and the derivative term + M, so
    the common shift M cancels between them; shift is M itself (inf when some k
    is infinite).
    """
    s_total: float
    term_log_group: float
    shifted_log_z0: float
    shifted_df: float
    shift: float

    @property
    def log_z0(self) -> float:
        """Absolute ln Z_0."""
        return self.shift + self.shifted_log_z0

    @property
    def s_bits(self) -> float:
        return self.s_total / math.log(2.0)


def _closed_high_temperature(stats: RegionStats, couplings: Couplings) -> bool:
    """All k infinite and every active component touches all three colors."""
    if not couplings.all_infinite:
        return False
    return all(min(c.sigma) > 0 for c in _active_components(stats))


def entanglement_entropy(stats: RegionStats, couplings: Couplings) -> EntropyBreakdown:
    """
    Von Neumann entropy S_A of the thermal reduced state, in nats.

    Args:
        stats: Region statistics of the bipartition
        couplings: Thermal couplings k_r, k_b, k_g (may be 0 or inf)

    Returns:
        EntropyBreakdown whose s_total is S_A
    """
    cards = group_cardinalities(stats)
    term_group = -cards.log_ratio
    if _closed_high_temperature(stats, couplings):
        shifted = shifted_terms(stats, couplings)
        s_total = (cards.log2_group - cards.log2_db) * math.log(2.0)
        return EntropyBreakdown(s_total, term_group, shifted.log_norm, s_total - term_group - shifted.log_norm,
                                math.inf)
    shifted = shifted_terms(stats, couplings)
    s_total = term_group + shifted.log_norm - shifted.derivative
    return EntropyBreakdown(s_total, term_group, shifted.log_norm, -shifted.derivative,
                            shift_m(stats, couplings))


def log_trace_rho_n(stats: RegionStats, couplings: Couplings, n: int) -> float:
    """ln Tr rho_A^n for integer n >= 1."""
    cards = group_cardinalities(stats)
    logs, signs = replica_terms(stats, couplings, n)
    prefix = (n - 1) * cards.log_ratio
    if not stats.is_torus:
        if signs[0] <= 0:
            raise ThermoError(f"non-positive replica term for '{stats.label}' at n={n}")
        return float(prefix + logs[0])
    shifted = shifted_terms(stats, couplings)
    total, sign = logsumexp(logs, b=signs, return_sign=True)
    if sign <= 0:
        raise ThermoError(f"non-positive Tr rho^{n} for '{stats.label}'")
    return float(prefix - LN4 - n * shifted.log_norm + total)


def trace_rho_n(stats: RegionStats, couplings: Couplings, n: int) -> float:
    return math.exp(log_trace_rho_n(stats, couplings, n))


def renyi_entropy(stats: RegionStats, couplings: Couplings, n: int) -> float:
    """S_n = ln Tr rho^n / (1 - n); n = 1 is the von Neumann entropy."""
    if n == 1:
        return entanglement_entropy(stats, couplings).s_total
    return log_trace_rho_n(stats, couplings, n) / (1 - n)


@dataclass(frozen=True)
class MutualInformation:
    s_a: float
    s_b: float
    s_ab: float

    @property
    def value(self) -> float:
        return 0.5 * (self.s_a + self.s_b - self.s_ab)


def mutual_information(stats_a: RegionStats, stats_b: RegionStats, stats_ab: RegionStats,
                       couplings: Couplings) -> MutualInformation:
    """
    I_AB = (S_A + S_B - S_AB) / 2 with S_AB the entropy of the whole system.

    Args:
        stats_a: Statistics of the bipartition
        stats_b: Statistics of the swapped bipartition
        stats_ab: Whole-system pseudo-bipartition (m_B = 0)
        couplings: Thermal couplings

    Returns:
        MutualInformation with the three entropies
    """
    if stats_ab.m_b != 0:
        raise ThermoError("S_AB must come from the whole-system pseudo-bipartition (m_B = 0)")
    kinds = {stats_a.boundary_kind, stats_b.boundary_kind, stats_ab.boundary_kind}
    sizes = {stats_a.n_plaquettes, stats_b.n_plaquettes, stats_ab.n_plaquettes}
    if len(kinds) != 1 or len(sizes) != 1:
        raise ThermoError("mutual information needs statistics of a single lattice")
    if not np.array_equal(stats_a.sigma_a.as_array(), stats_b.sigma_b.as_array()):
        raise ThermoError("stats_b is not the swapped bipartition of stats_a")
    return MutualInformation(
        entanglement_entropy(stats_a, couplings).s_total,
        entanglement_entropy(stats_b, couplings).s_total,
        entanglement_entropy(stats_ab, couplings).s_total,
    )
