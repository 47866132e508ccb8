"""Configuration and settings for Color Code Thermal Entanglement."""

from pathlib import Path
from pydantic import BaseModel, Field


class ToleranceConfig(BaseModel):
    """Numerical tolerances used by checks and invariants."""
    entropy_abs: float = Field(default=1e-8, description="Closed form vs oracle entropy, absolute")
    trace_rel: float = Field(default=1e-10, description="Closed form vs oracle Tr rho^n, relative")
    weight_sum: float = Field(default=1e-14, description="Normalisation of the four F weights")
    two_path: float = Field(default=1e-9, description="Composition vs direct topological entropy")
    nonnegative: float = Field(default=1e-9, description="Slack allowed below zero for entropies")
    eigenvalue_floor: float = Field(default=-1e-12, description="Smallest admissible rho eigenvalue")
    density_trace: float = Field(default=1e-12, description="Admissible |Tr rho - 1|")


class OracleConfig(BaseModel):
    """Resource guards for brute-force enumeration."""
    max_generators: int = Field(default=24, description="Largest generator count enumerated explicitly")
    max_region_qubits: int = Field(default=14, description="Largest |A| for a dense density matrix")


class LatticeConfig(BaseModel):
    """Shipped lattice families."""
    triangular_sizes: list[int] = Field(
        default_factory=lambda: list(range(1, 13)),
        description="Available triangular code sizes"
    )
    max_torus_side: int = Field(default=300, description="Largest torus side accepted by the CLI")


class SweepDefaults(BaseModel):
    """Defaults for the sweep command."""
    lambda_x: tuple[float, float, float] = Field(default=(1.0, 1.0, 1.0), description="lambda_x per color (R, B, G)")
    temps: str = Field(default="0.05:5:0.05", description="Temperature grid a:b:step")
    ksigma_temperature: float = Field(default=1.0, description="Fixed T used by KSigma sweeps")


class VerifyGrid(BaseModel):
    """Grid used by the verification harness."""
    points: int = Field(default=50, description="Temperatures per lambda setting (log spaced)")
    t_min_ratio: float = Field(default=0.02, description="Smallest T in units of lambda")
    t_max_ratio: float = Field(default=50.0, description="Largest T in units of lambda")
    uniform_lambdas: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    mixed_lambdas: list[tuple[float, float, float]] = Field(default_factory=lambda: [(0.5, 1.0, 2.0)])
    renyi_orders: list[int] = Field(default_factory=lambda: [2, 3])
    eta_samples: int = Field(default=200, description="Random count vectors for eta invariance")
    seed: int = Field(default=7, description="Default random seed")


class CacheConfig(BaseModel):
    """Cache configuration."""
    ttl_hours: int = Field(default=24 * 30, description="Cache TTL in hours")
    max_size_mb: int = Field(default=200, description="Max cache size in MB")


class Settings(BaseModel):
    """Main application settings."""
    cache_dir: Path = Field(default_factory=lambda: Path(__file__).parent.parent / "data" / "cache")

    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    lattice: LatticeConfig = Field(default_factory=LatticeConfig)
    sweep: SweepDefaults = Field(default_factory=SweepDefaults)
    verify: VerifyGrid = Field(default_factory=VerifyGrid)
    cache: CacheConfig = Field(default_factory=CacheConfig)

    def ensure_dirs(self) -> None:
        """Ensure the cache directory exists."""
        self.cache_dir.mkdir(parents=True, exist_ok=True)


# Global settings instance
settings = Settings()
