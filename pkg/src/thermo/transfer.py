"""Ising-chain partition functions, the four xi eigenvalues and the 4x4 transfer matrix."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ..errors import ThermoError
from ..lattice.colex import PerColor
from .couplings import Couplings

# Character signs of (xi1, xi2, xi3, xi4) in string_partition, per boundary pattern
STRING_PATTERNS = {
    "ppp": (1, 1, 1, 1),
    "aap": (-1, 1, -1, 1),
    "paa": (-1, -1, 1, 1),
    "apa": (1, -1, -1, 1),
}

# Exponent signs (red, blue, green) of the matrix entry f(s xor s')
_KERNEL_SIGNS = np.array([
    [1, 1, 1],     # A = e^{r+b+g}
    [1, -1, -1],   # R = e^{r-b-g}
    [-1, 1, -1],   # B = e^{b-r-g}
    [-1, -1, 1],   # G = e^{g-r-b}
])


def _scaled(k: float, count: float) -> float:
    """k * count with 0 * inf = 0."""
    return 0.0 if count == 0 else k * count


def ising_partition(k: float, n: int, boundary: str = "periodic", j_product: int = 1) -> float:
    """
    Closed Ising-chain partition function 2^n [sinh^n(k/2) +- J cosh^n(k/2)].

    Args:
        k: Coupling k >= 0
        n: Chain length
        boundary: 'periodic' (+J) or 'antiperiodic' (-J)
        j_product: Product of the bond signs, +1 or -1

    Returns:
        The partition function as a float
    """
    if n < 1:
        raise ThermoError(f"chain length must be >= 1, got {n}")
    if boundary not in ("periodic", "antiperiodic"):
        raise ThermoError(f"unknown boundary '{boundary}'")
    if j_product not in (1, -1):
        raise ThermoError(f"bond sign product must be +1 or -1, got {j_product}")
    sign = j_product if boundary == "periodic" else -j_product
    half = k / 2.0
    return float(2.0 ** n * (math.sinh(half) ** n + sign * math.cosh(half) ** n))


@dataclass(frozen=True)
class XiQuad:
    """
    The four eigenvalues xi1..xi4 of one component, held through their
    normalised weights p_m = xi_m e^{-(b+g+r)} so large arguments stay finite.
    """
    arguments: tuple[float, float, float]
    p: tuple[float, float, float, float]

    @property
    def log_shift(self) -> float:
        return float(sum(self.arguments))

    @property
    def log_xi(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.asarray(self.p)) + self.log_shift

    @property
    def values(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_xi)

    @property
    def xi1(self) -> float:
        return float(self.values[0])

    @property
    def xi2(self) -> float:
        return float(self.values[1])

    @property
    def xi3(self) -> float:
        return float(self.values[2])

    @property
    def xi4(self) -> float:
        return float(self.values[3])


def xi_from_arguments(b: float, g: float, r: float) -> XiQuad:
    """
    xi1 = sinh b cosh g cosh r + cosh b sinh g sinh r, xi2 and xi3 by permuting
    the distinguished argument to g and r, xi4 = cosh b cosh g cosh r + sinh b sinh g sinh r.
    Arguments may be +inf.
    """
    for value in (b, g, r):
        if math.isnan(value) or value < 0:
            raise ThermoError(f"xi arguments must be >= 0, got {(b, g, r)}")
    a_b, a_g, a_r = (math.exp(-2.0 * v) for v in (b, g, r))
    m_b, m_g, m_r = (-math.expm1(-2.0 * v) for v in (b, g, r))
    p_b, p_g, p_r = 1.0 + a_b, 1.0 + a_g, 1.0 + a_r
    p = (
        (m_b * p_g * p_r + p_b * m_g * m_r) / 8.0,
        (m_g * p_b * p_r + p_g * m_b * m_r) / 8.0,
        (m_r * p_b * p_g + p_r * m_b * m_g) / 8.0,
        (p_b * p_g * p_r + m_b * m_g * m_r) / 8.0,
    )
    return XiQuad((b, g, r), p)


def component_arguments(couplings: Couplings, sigma: PerColor) -> tuple[float, float, float]:
    """(b, g, r) = k_c Sigma^c / 2 for a component."""
    k = couplings.k
    return (
        _scaled(k.blue, sigma.blue) / 2.0,
        _scaled(k.green, sigma.green) / 2.0,
        _scaled(k.red, sigma.red) / 2.0,
    )


def xi_values(couplings: Couplings, sigma: PerColor) -> XiQuad:
    return xi_from_arguments(*component_arguments(couplings, sigma))


def string_partition(xi: XiQuad, n: int, pattern: str = "ppp",
                     j_r: int = 1, j_b: int = 1, j_g: int = 1) -> float:
    """
    Partition function of the three coupled Ising strings of one component,
    4^n [s1 J_b xi1^n + s2 J_g xi2^n + s3 J_r xi3^n + xi4^n].
    """
    if pattern not in STRING_PATTERNS:
        raise ThermoError(f"unknown boundary pattern '{pattern}' (expected one of {', '.join(STRING_PATTERNS)})")
    signs = np.asarray(STRING_PATTERNS[pattern]) * np.array([j_b, j_g, j_r, 1])
    log_abs, sign = logsumexp(n * xi.log_xi, b=signs, return_sign=True)
    with np.errstate(over="ignore"):
        return float(sign * np.exp(log_abs + n * math.log(4.0)))


def transfer_matrix(couplings: Couplings, sigma: PerColor,
                    j_r: int = 1, j_b: int = 1, j_g: int = 1) -> np.ndarray:
    """
    4x4 transfer matrix M[s, s'] = f(s xor s') over the Klein group.

    Its eigenvalues are {4 J_b xi1, 4 J_g xi2, 4 J_r xi3, 4 xi4}.
    """
    if j_r * j_b * j_g != 1:
        raise ThermoError(
            f"bond signs (J_r, J_b, J_g) = {(j_r, j_b, j_g)} must multiply to +1; "
            "flipping J_b alone is not admissible"
        )
    b, g, r = component_arguments(couplings, sigma)
    if any(math.isinf(v) for v in (b, g, r)):
        raise ThermoError("transfer matrix needs finite arguments")
    exponents = _KERNEL_SIGNS @ np.array([j_r * r, j_b * b, j_g * g])
    kernel = np.exp(exponents)
    states = np.arange(4)
    return kernel[states[:, None] ^ states[None, :]]


def transfer_eigenvalues(xi: XiQuad, j_r: int = 1, j_b: int = 1, j_g: int = 1) -> np.ndarray:
    """Expected transfer-matrix spectrum, sorted ascending."""
    return np.sort(4.0 * xi.values * np.array([j_b, j_g, j_r, 1]))
