"""
The four F terms of the reduced-state character sum.

F_1 is the plain product over A plaquettes and B components; F_2..F_4 flip the
sign of the couplings of two colors, (r, b), (b, g) and (r, g) respectively.
Everything is evaluated relative to the shift M = sum_c k_c Sigma_c / 2 so that
large systems and infinite couplings stay finite.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp, xlogy

from ..errors import ThermoError
from ..lattice.bipartition import ComponentStats, RegionStats
from ..lattice.colex import TORUS
from .couplings import Couplings
from .transfer import _scaled, xi_values

LN2 = math.log(2.0)
LN4 = math.log(4.0)

# Color indices (red=0, blue=1, green=2) whose coupling sign is flipped in F_j
FLIPPED = ((), (0, 1), (1, 2), (0, 2))

# Sign of (xi1, xi2, xi3, xi4) inside the component factor of F_j
XI_SIGNS = np.array([
    [1, 1, 1, 1],
    [-1, 1, -1, 1],
    [-1, -1, 1, 1],
    [1, -1, -1, 1],
])


def bulk_plus(k: float) -> float:
    """Shifted derivative contribution of one A plaquette with unflipped coupling."""
    if k == 0:
        return 0.0
    q = math.exp(-k)
    m = -math.expm1(-k)
    atanh_q = 0.5 * (math.log1p(q) - math.log(m))
    return math.log1p(q) - LN2 - m * atanh_q


def bulk_minus(k: float) -> float:
    """Shifted derivative contribution of one A plaquette with flipped coupling."""
    if k == 0:
        return 0.0
    q = math.exp(-k)
    if q == 0:
        return 1.0 - LN2
    m = -math.expm1(-k)
    atanh_q = 0.5 * (math.log1p(q) - math.log(m))
    return math.log1p(q) - LN2 + m * atanh_q / q


def bulk_replica(k: float, n: int, flipped: bool) -> float:
    """ln((1+q)^n +- (1-q)^n) - n ln 2 with q = e^{-k}; -inf when it vanishes."""
    q = math.exp(-k)
    m = -math.expm1(-k)
    if m == 0:
        return 0.0
    ratio_log = n * (math.log(m) - math.log1p(q))
    if flipped:
        if ratio_log == 0.0:
            return -math.inf
        return n * math.log1p(q) + math.log(-math.expm1(ratio_log)) - n * LN2
    return n * math.log1p(q) + math.log1p(math.exp(ratio_log)) - n * LN2


def component_p(couplings: Couplings, component: ComponentStats) -> np.ndarray:
    """Normalised eigenvalue weights p_1..p_4 of a component."""
    return np.asarray(xi_values(couplings, component.sigma).p)


def _check_stats(stats: RegionStats) -> None:
    errors = stats.consistency_errors()
    if errors:
        raise ThermoError(f"inconsistent region statistics '{stats.label}': " + "; ".join(errors))
    if stats.is_torus and stats.n_per_color is None:
        raise ThermoError("torus statistics need N")
    if not stats.is_torus:
        partial = [c for c in stats.components if not c.enclosed and c.string_rank > 0]
        if partial:
            raise ThermoError(
                f"region '{stats.label}': a B component carries {partial[0].string_rank} independent "
                "collective string(s); only fully enclosed or string-free components are supported"
            )


def _active_components(stats: RegionStats) -> tuple[ComponentStats, ...]:
    return stats.components if stats.is_torus else stats.enclosed_components


def shift_m(stats: RegionStats, couplings: Couplings) -> float:
    """M = sum_c k_c (Sigma_A^c + sum_i Sigma_i^c) / 2 (torus: k_c N / 2)."""
    k = couplings.k_array
    counts = stats.sigma_a.as_array() + sum(
        (c.sigma.as_array() for c in _active_components(stats)), np.zeros(3)
    )
    return float(sum(_scaled(k[c], counts[c]) for c in range(3)) / 2.0)


@dataclass(frozen=True)
class ShiftedTerms:
    """
    F terms relative to the shift M.

    log_f[j] = ln F_j - M, log_norm = ln Z_0 - M and derivative = sum_j (F_j/4Z_0) d_j - M,
    where d_j is the logarithmic k-derivative of F_j.
    """
    log_f: np.ndarray
    log_norm: float
    derivative: float
    component_alpha: np.ndarray
    bulk: np.ndarray
    component_plogp: np.ndarray


def shifted_terms(stats: RegionStats, couplings: Couplings) -> ShiftedTerms:
    """Evaluate the F terms of a bipartition in the shifted log domain."""
    _check_stats(stats)
    k = couplings.k_array
    sigma_a = stats.sigma_a.as_array()
    components = _active_components(stats)
    n_terms = 4 if stats.is_torus else 1

    bulk = np.zeros(n_terms)
    for j in range(n_terms):
        for c in range(3):
            if sigma_a[c] == 0:
                continue
            value = bulk_minus(k[c]) if c in FLIPPED[j] else bulk_plus(k[c])
            bulk[j] += sigma_a[c] * value

    # plogp[j, i] = sum_m s_jm p_m ln p_m with 0 ln 0 = 0
    plogp = np.zeros((n_terms, len(components)))
    for i, component in enumerate(components):
        p = component_p(couplings, component)
        plogp[:, i] = XI_SIGNS[:n_terms] @ xlogy(p, p)

    if not stats.is_torus:
        derivative = float(bulk[0] + plogp[0].sum())
        return ShiftedTerms(np.zeros(1), 0.0, derivative, np.zeros((1, len(components))), bulk, plogp)

    n = stats.n_per_color
    log_f = np.array([-sum(_scaled(k[c], n) for c in FLIPPED[j]) for j in range(4)])
    alpha = np.array([
        [-sum(_scaled(k[c], n - comp.sigma[c]) for c in FLIPPED[j]) for comp in components]
        for j in range(4)
    ]).reshape(4, len(components))
    total = float(logsumexp(log_f))
    weights = np.exp(log_f - total)
    derivative = float(weights @ bulk + (np.exp(alpha - total) * plogp).sum())
    return ShiftedTerms(log_f, total - LN4, derivative, alpha, bulk, plogp)


@dataclass(frozen=True)
class FTerms:
    """Absolute F_j, their log-derivatives g_j = (k d/dk F_j) / F_j and ln Z_0."""
    boundary_kind: str
    log_f: np.ndarray
    g: np.ndarray
    log_z0: float
    shift: float

    @property
    def f(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_f)

    @property
    def df(self) -> np.ndarray:
        return self.f * self.g

    @property
    def weights(self) -> np.ndarray:
        """F_j / (4 Z_0) on the torus, [1] in the plane."""
        norm = self.log_z0 + (LN4 if self.boundary_kind == TORUS else 0.0)
        return np.exp(self.log_f - norm)


def f_terms(couplings: Couplings, stats: RegionStats) -> FTerms:
    """
    Absolute F terms for finite couplings.

    Raises:
        ThermoError: if any k is infinite; use entanglement_entropy for those limits
    """
    if couplings.any_infinite:
        raise ThermoError("F terms need finite couplings; k = inf is only handled by the entropy limit paths")
    shifted = shifted_terms(stats, couplings)
    m = shift_m(stats, couplings)
    with np.errstate(over="ignore"):
        phase = np.exp(shifted.component_alpha - shifted.log_f[:, None])
        g = m + shifted.bulk + (phase * shifted.component_plogp).sum(axis=1)
    return FTerms(stats.boundary_kind, m + shifted.log_f, g, m + shifted.log_norm, m)


def replica_terms(stats: RegionStats, couplings: Couplings, n: int) -> tuple[np.ndarray, np.ndarray]:
    """
    ln|F_j^(n)| - n M and the sign of F_j^(n) for every F index.

    Args:
        stats: Region statistics
        couplings: Thermal couplings, may be infinite
        n: Replica index >= 1

    Returns:
        (log magnitudes, signs), one entry per F term
    """
    if not n > 0:
        raise ThermoError(f"replica index must be > 0, got {n}")
    _check_stats(stats)
    k = couplings.k_array
    sigma_a = stats.sigma_a.as_array()
    n_terms = 4 if stats.is_torus else 1
    logs = np.zeros(n_terms)
    signs = np.ones(n_terms)
    for j in range(n_terms):
        for c in range(3):
            if sigma_a[c] > 0:
                logs[j] += sigma_a[c] * bulk_replica(k[c], n, c in FLIPPED[j])
        for component in _active_components(stats):
            p = component_p(couplings, component)
            with np.errstate(divide="ignore"):
                value, sign = logsumexp(n * np.log(p), b=XI_SIGNS[j], return_sign=True)
            logs[j] += value
            signs[j] *= sign if sign != 0 else 1.0
    return logs, signs


def f_term_replica(couplings: Couplings, stats: RegionStats, n: int, j: int) -> tuple[float, float]:
    """Signed log of F_j^(n) (j = 1..4) for finite couplings: (ln|F|, sign)."""
    if couplings.any_infinite:
        raise ThermoError("absolute replica F terms need finite couplings")
    logs, signs = replica_terms(stats, couplings, n)
    if not 1 <= j <= len(logs):
        raise ThermoError(f"F index must be in 1..{len(logs)}, got {j}")
    return n * shift_m(stats, couplings) + float(logs[j - 1]), float(signs[j - 1])


def log_z0(couplings: Couplings, stats: RegionStats) -> Optional[float]:
    """ln Z_0 for finite couplings, None when the shift is infinite."""
    if couplings.any_infinite:
        return None
    return shift_m(stats, couplings) + shifted_terms(stats, couplings).log_norm
