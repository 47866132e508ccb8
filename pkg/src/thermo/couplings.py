"""Temperature and per-color couplings of the hard-constrained thermal state."""

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import ThermoError
from ..lattice.colex import COLOR_ORDER, Color, PerColor


def coupling_k(lambda_x: float, temperature: float) -> float:
    """
    k = -ln tanh(lambda_x / T), resolved on the extended reals.

    T = 0 or lambda_x = +inf gives k = 0; T = +inf with finite lambda_x, or
    lambda_x = 0 with T > 0, gives k = +inf.
    """
    if math.isnan(temperature) or temperature < 0:
        raise ThermoError(f"temperature must be >= 0, got {temperature}")
    if math.isnan(lambda_x) or lambda_x < 0:
        raise ThermoError(f"lambda_x must be >= 0 or +inf, got {lambda_x}")
    if math.isinf(lambda_x) or temperature == 0:
        return 0.0
    if math.isinf(temperature) or lambda_x == 0:
        return math.inf
    x = lambda_x / temperature
    if x >= 0.5:
        # ln coth x = 2 atanh(e^{-2x}) keeps full precision for large x
        return 2.0 * math.atanh(math.exp(-2.0 * x))
    return -math.log(math.tanh(x))


def zeta(lambda_x: float, temperature: float) -> float:
    """Characteristic defect-separation scale e^{lambda_x / T}."""
    if temperature == 0:
        return math.inf
    return math.exp(lambda_x / temperature) if lambda_x / temperature < 709 else math.inf


@dataclass(frozen=True)
class Couplings:
    """Thermal couplings; k holds k_c per color in (red, blue, green) order."""
    temperature: float
    lambda_x: PerColor
    k: PerColor
    hard: frozenset[Color] = frozenset()

    @classmethod
    def from_k(cls, k_r: float, k_b: float, k_g: float) -> "Couplings":
        """Couplings specified directly through k (temperature left undefined)."""
        for value in (k_r, k_b, k_g):
            if math.isnan(value) or value < 0:
                raise ThermoError(f"k must be >= 0, got {value}")
        return cls(math.nan, PerColor(math.nan, math.nan, math.nan), PerColor(k_r, k_b, k_g))

    @property
    def k_array(self) -> np.ndarray:
        return self.k.as_array()

    def of(self, color: Color) -> float:
        return self.k.of(color)

    @property
    def x(self) -> PerColor:
        with np.errstate(over="ignore"):
            return PerColor.from_sequence(np.cosh(self.k_array / 2.0))

    @property
    def y(self) -> PerColor:
        with np.errstate(over="ignore"):
            return PerColor.from_sequence(np.sinh(self.k_array / 2.0))

    @property
    def any_infinite(self) -> bool:
        return bool(np.isinf(self.k_array).any())

    @property
    def all_infinite(self) -> bool:
        return bool(np.isinf(self.k_array).all())

    @property
    def degenerate(self) -> bool:
        """Every k infinite (T = +inf or all lambda_x = 0 at T > 0)."""
        return self.all_infinite

    @property
    def is_zero(self) -> bool:
        return bool((self.k_array == 0).all())


def make_couplings(
    lambda_x: Sequence[float],
    temperature: float,
    hard: Iterable[Color] = (),
) -> Couplings:
    """
    Build couplings from per-color lambda_x (R, B, G) and a temperature.

    Args:
        lambda_x: lambda_x per color in (red, blue, green) order; +inf is hard
        temperature: T >= 0, may be +inf
        hard: Colors forced to the hard-constrained limit (k = 0)

    Returns:
        Couplings with k resolved per color
    """
    hard_set = frozenset(hard)
    lam = PerColor.from_sequence(float(v) for v in lambda_x)
    lam = PerColor.from_sequence(math.inf if c in hard_set else lam.of(c) for c in COLOR_ORDER)
    k = PerColor.from_sequence(coupling_k(lam.of(c), float(temperature)) for c in COLOR_ORDER)
    return Couplings(float(temperature), lam, k, hard_set)
