"""Region spec strings: hexagon:ID, annulus:R,r, levinwen:R,r and qubits:1,2,5."""

from dataclasses import dataclass
from typing import Optional

from ..errors import SpecParseError
from .bipartition import Bipartition, TopoGeometry, annulus_bipartition, canonical_topo_bipartitions
from .colex import Colex

REGION_KINDS = ("hexagon", "annulus", "levinwen", "qubits")

_ARITY = {"hexagon": 1, "annulus": 2, "levinwen": 2}


@dataclass
class RegionRequest:
    """A parsed region spec resolved on a lattice."""
    kind: str
    spec: str
    bipartitions: list[Bipartition]
    geometry: Optional[TopoGeometry] = None

    @property
    def is_topological(self) -> bool:
        return self.geometry is not None


def _parse_integers(spec: str, body: str, offset: int) -> list[int]:
    values = []
    position = offset
    for token in body.split(","):
        stripped = token.strip()
        if not stripped:
            raise SpecParseError(spec, position, "empty value", "region spec")
        try:
            values.append(int(stripped))
        except ValueError:
            raise SpecParseError(spec, position, f"'{stripped}' is not an integer", "region spec") from None
        position += len(token) + 1
    return values


def parse_region_spec(colex: Colex, spec: str) -> RegionRequest:
    """
    Parse a region spec and build its bipartition(s) on the lattice.

    Args:
        colex: Lattice the region lives on
        spec: One of hexagon:ID, annulus:R,r, levinwen:R,r, qubits:1,2,5

    Returns:
        RegionRequest; levinwen yields the four canonical bipartitions
    """
    kind, sep, body = spec.partition(":")
    if not sep:
        raise SpecParseError(spec, len(spec), "expected KIND:ARGS", "region spec")
    if kind not in REGION_KINDS:
        raise SpecParseError(
            spec, 0, f"unknown region kind '{kind}' (expected one of {', '.join(REGION_KINDS)})", "region spec"
        )
    offset = len(kind) + 1
    values = _parse_integers(spec, body, offset)
    arity = _ARITY.get(kind)
    if arity is not None and len(values) != arity:
        raise SpecParseError(spec, offset, f"{kind} takes {arity} value(s), got {len(values)}", "region spec")

    if kind == "hexagon":
        support = colex.plaquette_support(values[0])
        return RegionRequest(kind, spec, [Bipartition(colex, support, spec)])
    if kind == "annulus":
        return RegionRequest(kind, spec, [annulus_bipartition(colex, values[0], values[1], label=spec)])
    if kind == "levinwen":
        geometry = canonical_topo_bipartitions(colex, values[0], values[1])
        return RegionRequest(kind, spec, list(geometry.bipartitions), geometry)
    return RegionRequest(kind, spec, [Bipartition.from_qubits(colex, values, spec)])
