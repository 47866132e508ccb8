"""Exception hierarchy for color code entropy computations."""

from typing import Optional


class ColorCodeError(Exception):
    """Base class for all domain errors."""


class LatticeError(ColorCodeError):
    """Invalid lattice construction or lookup."""


class RegionError(ColorCodeError):
    """Invalid bipartition or region request."""


class LatticeTooSmallError(RegionError):
    """Requested region geometry does not fit on the lattice."""


class ThermoError(ColorCodeError):
    """Invalid thermal input or inconsistent region statistics."""


class OracleError(ColorCodeError):
    """Brute-force oracle produced an invalid object."""


class OracleGuardError(OracleError):
    """Oracle resource guard exceeded."""


class SpecParseError(ColorCodeError):
    """A lattice, region or grid spec string failed to parse."""

    def __init__(self, spec: str, position: int, message: str, kind: Optional[str] = None):
        self.spec = spec
        self.position = position
        self.kind = kind or "spec"
        pointer = " " * position + "^"
        super().__init__(
            f"invalid {self.kind} '{spec}' at position {position}: {message}\n  {spec}\n  {pointer}"
        )
