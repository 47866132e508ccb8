"""Dense reduced density matrices and their spectra, for cross-checking the closed forms."""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np
from scipy.special import xlogy

from ..config import settings
from ..errors import OracleError, OracleGuardError
from ..lattice.bipartition import Bipartition
from ..lattice.colex import Colex
from ..thermo.couplings import Couplings
from .group import GroupTable, eta_table


@dataclass
class ReducedDensityMatrix:
    """rho_A in the computational basis of A; bit t of a basis index is qubit a_qubits[t]."""
    matrix: np.ndarray
    a_qubits: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def _restricted_index(flips: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    index = np.zeros_like(flips)
    for position, qubit in enumerate(qubits):
        index |= ((flips >> qubit) & 1) << position
    return index


def reduced_density_matrix(
    colex: Colex,
    bp: Bipartition,
    couplings: Couplings,
    table: Optional[GroupTable] = None,
) -> ReducedDensityMatrix:
    """
    rho_A = (1/|G|) sum_{h in G} sum_{g in G_A} eta_T(g) |h_A><h_A g_A|.

    G_A is found by testing every element for trivial action on B.

    Raises:
        OracleGuardError: if |A| or the group exceed the configured limits
        OracleError: if the assembled matrix is not a valid density matrix
    """
    limit = settings.oracle.max_region_qubits
    if len(bp.a_qubits) > limit:
        raise OracleGuardError(f"|A| = {len(bp.a_qubits)} exceeds the dense limit of {limit} qubits")
    table = table or GroupTable(colex)
    a_qubits = tuple(sorted(bp.a_qubits))
    dimension = 1 << len(a_qubits)

    rows_a = _restricted_index(table.flips, a_qubits)
    multiplicity = np.bincount(rows_a, minlength=dimension).astype(float) / table.order
    occupied = np.flatnonzero(multiplicity)

    local = np.flatnonzero(table.trivial_on(bp.b_qubits))
    etas = eta_table(table, couplings, local)
    matrix = np.zeros((dimension, dimension))
    for element, eta in zip(local, etas):
        shift = rows_a[element]
        np.add.at(matrix, (occupied, occupied ^ shift), multiplicity[occupied] * eta)

    rdm = ReducedDensityMatrix(matrix, a_qubits)
    tol = settings.tolerances
    if abs(rdm.trace - 1.0) > tol.density_trace:
        raise OracleError(f"Tr rho_A = {rdm.trace:.15g} differs from 1")
    if not np.allclose(matrix, matrix.T, rtol=0, atol=1e-14):
        raise OracleError("rho_A is not symmetric")
    if rdm.eigenvalues.min() < tol.eigenvalue_floor:
        raise OracleError(f"rho_A has a negative eigenvalue {rdm.eigenvalues.min():.3e}")
    return rdm


def brute_entropy_and_traces(rdm: Union[ReducedDensityMatrix, np.ndarray]) -> tuple[float, float, float]:
    """
    Spectral von Neumann entropy and the traces of rho^2 and rho^3.

    Eigenvalues are clipped at 0 and 0 ln 0 = 0.
    """
    matrix = rdm.matrix if isinstance(rdm, ReducedDensityMatrix) else np.asarray(rdm, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise OracleError(f"density matrix must be square, got shape {matrix.shape}")
    if not np.allclose(matrix, matrix.T, rtol=0, atol=1e-12):
        raise OracleError("density matrix is not symmetric")
    eigenvalues = np.clip(np.linalg.eigvalsh(matrix), 0.0, None)
    entropy = float(-np.sum(xlogy(eigenvalues, eigenvalues)))
    square = matrix @ matrix
    return entropy, float(np.trace(square)), float(np.trace(square @ matrix))


@dataclass
class OracleResult:
    """Brute-force quantities of one (lattice, region, couplings) point."""
    entropy: float
    trace2: float
    trace3: float
    eigenvalue_min: float
    trace: float

    def to_dict(self) -> dict:
        return {
            "entropy": self.entropy,
            "trace2": self.trace2,
            "trace3": self.trace3,
            "eigenvalue_min": self.eigenvalue_min,
            "trace": self.trace,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OracleResult":
        return cls(**{key: float(data[key]) for key in ("entropy", "trace2", "trace3", "eigenvalue_min", "trace")})


def oracle_result(colex: Colex, bp: Bipartition, couplings: Couplings,
                  table: Optional[GroupTable] = None) -> OracleResult:
    rdm = reduced_density_matrix(colex, bp, couplings, table)
    entropy, trace2, trace3 = brute_entropy_and_traces(rdm)
    return OracleResult(entropy, trace2, trace3, float(rdm.eigenvalues.min()), rdm.trace)
