"""Explicit enumeration of the X-type stabilizer group of a small colex."""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from ..config import settings
from ..errors import OracleError, OracleGuardError
from ..lattice.bipartition import Bipartition
from ..lattice.colex import Colex, Color, gf2_rank
from ..thermo.couplings import Couplings
from ..thermo.transfer import _scaled

# Flip sets are packed into int64 masks
MAX_PACKED_QUBITS = 62


def generator_ids(colex: Colex) -> list[int]:
    """
    Independent plaquette generators.

    On the torus the highest-id blue and highest-id red plaquettes are dropped:
    the two global constraints make them products of the others.
    """
    ids = [p.id for p in colex.plaquettes]
    if colex.is_torus:
        for color in (Color.BLUE, Color.RED):
            ids.remove(max(colex.plaquettes_by_color(color)))
    return ids


def check_group_guard(colex: Colex) -> None:
    n_generators = len(generator_ids(colex))
    limit = settings.oracle.max_generators
    if n_generators > limit:
        raise OracleGuardError(
            f"{colex.label}: {n_generators} generators exceed the oracle limit of {limit} (|G| = 2^{n_generators})"
        )
    if colex.n_qubits > MAX_PACKED_QUBITS:
        raise OracleGuardError(f"{colex.label}: {colex.n_qubits} qubits exceed {MAX_PACKED_QUBITS}")


@dataclass(frozen=True)
class GroupElement:
    """One group element: its generator bits and the qubits it flips (both as bit masks)."""
    plaquette_bits: int
    qubit_flips: int
    counts: tuple[int, int, int]

    @property
    def qubit_flip_set(self) -> frozenset[int]:
        return frozenset(q for q in range(self.qubit_flips.bit_length()) if self.qubit_flips >> q & 1)


class GroupTable:
    """
    Vectorised table of all 2^g group elements.

    Row i is the element whose generator bits are the binary digits of i.
    counts[i] holds (n_r, n_b, n_g), the number of generators of each color.
    """

    def __init__(self, colex: Colex):
        check_group_guard(colex)
        self.colex = colex
        self.generators = np.asarray(generator_ids(colex), dtype=np.int64)
        masks = np.array([
            sum(1 << q for q in colex.plaquettes[p].support) for p in self.generators
        ], dtype=np.int64)
        colors = [colex.plaquettes[p].color for p in self.generators]

        codes = np.arange(1 << len(self.generators), dtype=np.int64)
        flips = np.zeros_like(codes)
        counts = np.zeros((codes.size, 3), dtype=np.int64)
        for bit, (mask, color) in enumerate(zip(masks, colors)):
            selected = (codes >> bit) & 1
            flips ^= selected * mask
            counts[:, color.index] += selected
        self.codes = codes
        self.flips = flips
        self.counts = counts

    @property
    def order(self) -> int:
        return int(self.codes.size)

    def element(self, index: int) -> GroupElement:
        return GroupElement(int(self.codes[index]), int(self.flips[index]), tuple(int(c) for c in self.counts[index]))

    def qubit_mask(self, qubits) -> int:
        return sum(1 << q for q in qubits)

    def trivial_on(self, qubits) -> np.ndarray:
        """Boolean row selector of the elements acting trivially on the given qubits."""
        return (self.flips & self.qubit_mask(qubits)) == 0

    @cached_property
    def distinct_flips(self) -> int:
        return int(np.unique(self.flips).size)


def enumerate_group(colex: Colex, table: Optional[GroupTable] = None) -> Iterator[GroupElement]:
    """Yield every group element once."""
    table = table or GroupTable(colex)
    for index in range(table.order):
        yield table.element(index)


# Color subsets whose counts are complemented, one per representation of an element
_COMPLEMENTS = ((), (1, 2), (0, 2), (0, 1))


def _exponent(k, counts, complemented, n_per_color) -> float:
    terms = [_scaled(k[c], n_per_color - counts[c] if c in complemented else counts[c]) for c in range(3)]
    return -(terms[0] + terms[1] + terms[2])


def eta_exponents(counts: Sequence[float], couplings: Couplings, n_per_color: Optional[int]) -> tuple[list, list]:
    """Numerator and denominator exponents of the thermal weight of one element."""
    k = couplings.k_array
    n = [float(v) for v in counts]
    if n_per_color is None:
        return [_exponent(k, n, (), 0)], [0.0]
    numerator = [_exponent(k, n, s, n_per_color) for s in _COMPLEMENTS]
    denominator = [_exponent(k, [0.0, 0.0, 0.0], s, n_per_color) for s in _COMPLEMENTS]
    # sorted so the four representations of one element sum identically
    return sorted(numerator), sorted(denominator)


def eta_weight(counts: Sequence[float], couplings: Couplings, n_per_color: Optional[int] = None) -> float:
    """
    Thermal weight eta_T of a group element from its color counts (n_r, n_b, n_g).

    With n_per_color set (torus) it is the quotient of the two four-term
    exponential sums; without it (planar) it reduces to e^{-sum_c k_c n_c}.
    """
    if n_per_color is not None and any(not 0 <= v <= n_per_color for v in counts):
        raise OracleError(f"counts {tuple(counts)} outside [0, {n_per_color}]")
    numerator, denominator = eta_exponents(counts, couplings, n_per_color)
    return float(math.exp(logsumexp(numerator) - logsumexp(denominator)))


def eta_table(table: GroupTable, couplings: Couplings, rows: np.ndarray) -> np.ndarray:
    n = table.colex.n_per_color
    return np.array([eta_weight(table.counts[i], couplings, n) for i in rows])


def enumerate_local_subgroup(colex: Colex, bp: Bipartition, table: Optional[GroupTable] = None) -> tuple[int, int]:
    """
    Exact |G_A| and |G_B|.

    Within the oracle guard they are counted by the restriction test over all of G;
    larger lattices use |G_A| = 2^(rank H - rank H|_B) over GF(2).
    """
    try:
        table = table or GroupTable(colex)
    except OracleGuardError:
        incidence = colex.incidence
        full = gf2_rank(incidence)
        a_cols = sorted(bp.a_qubits)
        b_cols = sorted(bp.b_qubits)
        log2_a = full - gf2_rank(incidence[:, b_cols])
        log2_b = full - gf2_rank(incidence[:, a_cols])
        return 1 << log2_a, 1 << log2_b
    return int(table.trivial_on(bp.b_qubits).sum()), int(table.trivial_on(bp.a_qubits).sum())

