"""Topological entanglement entropy from four nested bipartitions."""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp, xlogy

from ..config import settings
from ..errors import ThermoError
from ..lattice.bipartition import RegionStats, group_cardinalities, topo_relation_violations
from ..lattice.colex import PerColor
from .couplings import Couplings, coupling_k
from .entropy import entanglement_entropy
from .fterms import FLIPPED, XI_SIGNS, _active_components
from .transfer import _scaled, xi_from_arguments, xi_values

# Sign of S_j in S_topo = -S_1 + S_2 + S_3 - S_4
TOPO_SIGNS = (-1, 1, 1, -1)


@dataclass
class TopoEntropy:
    """S_topo with the entropies it was assembled from."""
    value: float
    constant: float
    entropies: list[float] = field(default_factory=list)
    direct: Optional[float] = None

    @property
    def thermal_part(self) -> float:
        """S_topo minus its ground-state constant."""
        return self.value - self.constant


def _require_relations(four_stats: Sequence[RegionStats]) -> None:
    problems = topo_relation_violations(four_stats)
    if problems:
        raise ThermoError("bipartitions do not satisfy the topological relations: " + "; ".join(problems))


def topo_constant(four_stats: Sequence[RegionStats]) -> float:
    """-sum_j sigma_j ln(d_A d_B / |G|)_j, the ground-state value (4 ln 2)."""
    return float(sum(-s * group_cardinalities(st).log_ratio for s, st in zip(TOPO_SIGNS, four_stats)))


def _direct_torus_component_sum(stats: RegionStats, couplings: Couplings) -> float:
    """sum_f sum_i (F_f / 4Z_0) v_{f,i} with v built from xi ln xi."""
    k = couplings.k_array
    n = stats.n_per_color
    # sign pattern (red, blue, green) of each F term
    sigma_f = np.ones((4, 3))
    for f, flipped in enumerate(FLIPPED):
        sigma_f[f, list(flipped)] = -1
    log_4z0 = float(logsumexp(sigma_f @ (k * n / 2.0)))
    total = 0.0
    for component in stats.components:
        xi = xi_values(couplings, component.sigma)
        p = np.asarray(xi.p)
        s_i = xi.log_shift
        xi_log_xi = xlogy(p, p) + p * s_i
        for f in range(4):
            exponent = float(sigma_f[f] @ (k * (n - component.sigma.as_array()) / 2.0))
            total += math.exp(exponent + s_i - log_4z0) * float(XI_SIGNS[f] @ xi_log_xi)
    return total


def _direct_planar_component_sum(stats: RegionStats, couplings: Couplings) -> float:
    total = 0.0
    for component in stats.enclosed_components:
        xi = xi_values(couplings, component.sigma)
        p = np.asarray(xi.p)
        total += float(np.sum(xlogy(p, p) + p * xi.log_shift)) - xi.log_shift
    return total


def topological_entropy_direct(four_stats: Sequence[RegionStats], couplings: Couplings) -> float:
    """
    S_topo from the explicit four-term cancellation, without forming each S_j.

    Bulk and normalisation contributions cancel through the sum rules, leaving
    the ground-state constant and the B-component terms.
    """
    _require_relations(four_stats)
    if couplings.any_infinite:
        raise ThermoError("direct topological entropy needs finite couplings")
    value = topo_constant(four_stats)
    for sign, stats in zip(TOPO_SIGNS, four_stats):
        if stats.is_torus:
            value -= sign * _direct_torus_component_sum(stats, couplings)
        else:
            value -= sign * _direct_planar_component_sum(stats, couplings)
    return value


def _component_scale(four_stats: Sequence[RegionStats], couplings: Couplings) -> float:
    scale = 1.0
    for stats in four_stats:
        for component in _active_components(stats):
            scale += sum(_scaled(couplings.k_array[c], component.sigma[c]) for c in range(3)) / 2.0
    return scale


def topological_breakdown(four_stats: Sequence[RegionStats], couplings: Couplings,
                          check: bool = True) -> TopoEntropy:
    """
    S_topo = -S_1 + S_2 + S_3 - S_4, cross-checked against the direct form.

    Args:
        four_stats: Statistics of the four canonical bipartitions
        couplings: Thermal couplings
        check: Also evaluate the direct form when all couplings are finite

    Returns:
        TopoEntropy with the composed value

    Raises:
        ThermoError: if the bipartitions violate the relations or the two forms disagree
    """
    _require_relations(four_stats)
    entropies = [entanglement_entropy(st, couplings).s_total for st in four_stats]
    value = float(sum(s * e for s, e in zip(TOPO_SIGNS, entropies)))
    result = TopoEntropy(value, topo_constant(four_stats), entropies)
    if check and not couplings.any_infinite:
        result.direct = topological_entropy_direct(four_stats, couplings)
        tolerance = settings.tolerances.two_path * _component_scale(four_stats, couplings)
        if not abs(result.direct - value) <= tolerance:
            raise ThermoError(
                f"topological entropy paths disagree: composed {value:.15g}, direct {result.direct:.15g}"
            )
    return result


def topological_entropy(four_stats: Sequence[RegionStats], couplings: Couplings) -> float:
    return topological_breakdown(four_stats, couplings).value


def topo_color_limits(four_stats: Sequence[RegionStats], couplings: Couplings) -> float:
    """
    S_topo minus its ground-state constant when at least one color is hard-constrained.

    In the thermodynamic limit this tends to -ln 2 with one soft color, -2 ln 2 with
    two and 0 with none.
    """
    if not (couplings.k_array == 0).any():
        raise ThermoError("topo_color_limits needs at least one hard-constrained color (k = 0)")
    return topological_breakdown(four_stats, couplings).thermal_part


def thermodynamic_topo_gap(couplings: Couplings, inner_sigma: PerColor) -> float:
    """
    S_topo - 4 ln 2 once the outer system is infinite: sum_m p_m ln p_m of the
    inner B component, between -2 ln 2 and 0.
    """
    p = np.asarray(xi_values(couplings, inner_sigma).p)
    return float(np.sum(xlogy(p, p)))


def gap_from_arguments(b: float, g: float, r: float) -> float:
    p = np.asarray(xi_from_arguments(b, g, r).p)
    return float(np.sum(xlogy(p, p)))


def half_drop_temperature(lambda_x: float, sigma_prime: float) -> float:
    """
    Temperature where the thermodynamic gap reaches -ln 2 for uniform couplings.

    Args:
        lambda_x: Uniform lambda_x > 0
        sigma_prime: Total plaquette count of the inner component (Sigma' = 3 Sigma)

    Returns:
        T with gap(T) = -ln 2
    """
    if not lambda_x > 0 or math.isinf(lambda_x):
        raise ThermoError(f"lambda_x must be finite and > 0, got {lambda_x}")
    per_color = sigma_prime / 3.0
    if per_color <= 0:
        raise ThermoError(f"inner component must be non-empty, got Sigma' = {sigma_prime}")

    def excess(temperature: float) -> float:
        arg = _scaled(coupling_k(lambda_x, temperature), per_color) / 2.0
        return gap_from_arguments(arg, arg, arg) + math.log(2.0)

    low, high = 1e-3 * lambda_x, 1e3 * lambda_x
    if excess(low) * excess(high) > 0:
        raise ThermoError(f"no half-drop temperature in [{low:g}, {high:g}] for Sigma' = {sigma_prime}")
    return float(brentq(excess, low, high, xtol=1e-14 * lambda_x, rtol=1e-12))


def t_drop(lambda_x: float, sigma_prime: float) -> float:
    """Crossover estimate T_drop = lambda_x / ln sqrt(2 Sigma')."""
    if not lambda_x > 0:
        raise ThermoError(f"lambda_x must be > 0, got {lambda_x}")
    if sigma_prime < 2:
        raise ThermoError(f"Sigma' must be >= 2, got {sigma_prime}")
    return lambda_x / math.log(math.sqrt(2.0 * sigma_prime))
