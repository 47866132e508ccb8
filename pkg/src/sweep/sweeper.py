"""Parameter sweeps over temperature or KSigma."""

import math
import re
from typing import Callable, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationInfo, field_validator
from rich.console import Console
from rich.progress import Progress

from ..config import settings
from ..errors import SpecParseError
from ..lattice.bipartition import region_stats, whole_system_stats
from ..lattice.colex import COLOR_ORDER, Color, Colex, parse_lattice_spec
from ..lattice.regions import RegionRequest, parse_region_spec
from ..thermo.couplings import make_couplings
from ..thermo.entropy import entanglement_entropy, mutual_information
from ..thermo.topological import gap_from_arguments, topo_constant, topological_entropy

console = Console(stderr=True)

LN2 = math.log(2.0)

_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_GRID = re.compile(rf"^({_NUMBER}):({_NUMBER}):({_NUMBER})$")


def parse_grid(spec: str, kind: str = "grid") -> list[float]:
    """
    Expand 'a:b:step' into a, a + step, ... <= b.

    Raises:
        SpecParseError: on malformed text, step <= 0, or b < a
    """
    match = _GRID.match(spec.strip())
    if not match:
        parts = spec.split(":")
        position = 0
        for part in parts[:3]:
            if not re.fullmatch(_NUMBER, part.strip()):
                break
            position += len(part) + 1
        else:
            position = len(spec)
        message = "expected a:b:step" if len(parts) != 3 else "not a number"
        raise SpecParseError(spec, min(position, len(spec)), message, kind)
    start, stop, step = (float(g) for g in match.groups())
    if step <= 0:
        raise SpecParseError(spec, match.start(3), "step must be > 0", kind)
    if stop < start:
        raise SpecParseError(spec, match.start(2), f"end {stop:g} is below start {start:g}", kind)
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [float(v) for v in start + step * np.arange(count)]


def parse_lambda_x(text: str) -> tuple[float, float, float]:
    """'R,B,G' (or a single value for all colors); 'inf' marks a hard color."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        parts = parts * 3
    if len(parts) != 3:
        raise SpecParseError(text, len(text), "expected R,B,G", "lambda-x")
    values = []
    position = 0
    for part in parts:
        try:
            value = float(part)
        except ValueError:
            raise SpecParseError(text, position, f"'{part}' is not a number", "lambda-x") from None
        if math.isnan(value) or value < 0:
            raise SpecParseError(text, position, "lambda_x must be >= 0", "lambda-x")
        values.append(value)
        position += len(part) + 1
    return tuple(values)


def parse_hard_colors(text: Optional[str]) -> tuple[Color, ...]:
    if not text:
        return ()
    colors = []
    position = 0
    for part in text.split(","):
        try:
            colors.append(Color.from_letter(part.strip()))
        except ValueError:
            raise SpecParseError(text, position, f"unknown color '{part}'", "hard-x") from None
        position += len(part) + 1
    return tuple(colors)


class SweepConfig(BaseModel):
    """One sweep request."""
    lattice: str = Field(description="Lattice spec, e.g. torus:9x9 or triangular:6")
    region: str = Field(description="Region spec, e.g. hexagon:0 or levinwen:2,1")
    lambda_x: tuple[float, float, float] = Field(default=settings.sweep.lambda_x, description="lambda_x (R, B, G)")
    temps: Optional[str] = Field(default=None, description="Temperature grid a:b:step")
    ksigma: Optional[str] = Field(default=None, description="KSigma grid a:b:step")
    hard: tuple[Color, ...] = Field(default=(), description="Hard-constrained colors")
    format: Literal["csv", "json"] = Field(default="csv", description="Output format")
    mutual: bool = Field(default=False, description="Also emit I_AB")

    @field_validator("temps", "ksigma")
    @classmethod
    def _grid_parses(cls, value: Optional[str], info: ValidationInfo) -> Optional[str]:
        if value is not None:
            parse_grid(value, info.field_name)
        return value

    @property
    def temperatures(self) -> list[float]:
        return parse_grid(self.temps or settings.sweep.temps, "temps")

    @property
    def ksigma_values(self) -> list[float]:
        return parse_grid(self.ksigma, "ksigma") if self.ksigma else []


def _empty_row(temperature: float, k) -> dict:
    return {
        "T": temperature,
        "k_r": float(k.red),
        "k_b": float(k.blue),
        "k_g": float(k.green),
        "S_A_nats": None,
        "S_A_ln2": None,
        "S_topo_nats": None,
        "S_topo_ln2": None,
        "I_AB_nats": None,
    }


class EntropySweeper:
    """Evaluates entropies over a grid in deterministic grid order."""

    def __init__(self, config: SweepConfig, colex: Optional[Colex] = None):
        self.config = config
        self.colex = colex or parse_lattice_spec(config.lattice)
        self.request: Optional[RegionRequest] = None

    def run(self, progress_callback: Optional[Callable[[str, int, int], None]] = None) -> list[dict]:
        """
        Run the sweep.

        Args:
            progress_callback: Optional callback(stage, current, total)

        Returns:
            One row dict per grid point
        """
        if self.config.ksigma:
            return self._ksigma_rows()
        return self._temperature_rows(progress_callback)

    def _temperature_rows(self, progress_callback) -> list[dict]:
        config = self.config
        self.request = parse_region_spec(self.colex, config.region)
        stats = [region_stats(self.colex, bp) for bp in self.request.bipartitions]
        primary = stats[0]
        if config.mutual:
            swapped = primary.complement()
            whole = whole_system_stats(self.colex)

        temperatures = config.temperatures
        rows = []
        with Progress(console=console, transient=True) as progress:
            task = progress.add_task("[cyan]Sweeping...", total=len(temperatures))
            for i, temperature in enumerate(temperatures):
                progress.update(task, advance=1, description=f"[cyan]T = {temperature:.4g}")
                if progress_callback:
                    progress_callback("sweep", i + 1, len(temperatures))
                couplings = make_couplings(config.lambda_x, temperature, config.hard)
                row = _empty_row(temperature, couplings.k)
                s_a = entanglement_entropy(primary, couplings).s_total
                row["S_A_nats"] = s_a
                row["S_A_ln2"] = s_a / LN2
                if self.request.is_topological:
                    s_topo = topological_entropy(stats, couplings)
                    row["S_topo_nats"] = s_topo
                    row["S_topo_ln2"] = s_topo / LN2
                if config.mutual:
                    row["I_AB_nats"] = mutual_information(primary, swapped, whole, couplings).value
                rows.append(row)
        return rows

    def _ksigma_rows(self) -> list[dict]:
        """
        Thermodynamic-limit S_topo = S_cc + gap with Sigma^c = KSigma / k_c.

        S_cc is the ground-state constant of the levinwen geometry; T stays fixed.
        """
        config = self.config
        self.request = parse_region_spec(self.colex, config.region)
        if not self.request.is_topological:
            raise SpecParseError(config.region, 0, "KSigma sweeps need a levinwen:R,r region", "region spec")
        constant = topo_constant(self.request.geometry.stats)
        temperature = config.temperatures[0] if config.temps else settings.sweep.ksigma_temperature
        couplings = make_couplings(config.lambda_x, temperature, config.hard)
        soft = [couplings.of(c) > 0 for c in COLOR_ORDER]
        rows = []
        for ksigma in config.ksigma_values:
            half = ksigma / 2.0
            r, b, g = (half if is_soft else 0.0 for is_soft in soft)
            s_topo = constant + gap_from_arguments(b, g, r)
            row = _empty_row(temperature, couplings.k)
            row["S_topo_nats"] = s_topo
            row["S_topo_ln2"] = s_topo / LN2
            row["KSigma"] = ksigma
            rows.append(row)
        return rows
