"""JSON dump of a lattice."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel

from ..lattice.colex import Colex


class PlaquetteEntry(BaseModel):
    id: int
    color: str
    support: list[int]


class LinkEntry(BaseModel):
    a: int
    b: int
    color: str


class LatticeDump(BaseModel):
    """Serializable description of a colex."""
    label: str
    boundary_kind: str
    dims: list[int]
    n_qubits: int
    plaquettes: list[PlaquetteEntry]
    links: list[LinkEntry]

    @classmethod
    def from_colex(cls, colex: Colex) -> "LatticeDump":
        return cls(
            label=colex.label,
            boundary_kind=colex.boundary_kind,
            dims=list(colex.dims),
            n_qubits=colex.n_qubits,
            plaquettes=[
                PlaquetteEntry(id=p.id, color=p.color.value, support=list(p.support)) for p in colex.plaquettes
            ],
            links=[LinkEntry(a=link.a, b=link.b, color=link.color.value) for link in colex.links],
        )


def dump_lattice(colex: Colex, out: Optional[Path] = None) -> str:
    """Render the lattice as JSON, writing it to out when given."""
    text = LatticeDump.from_colex(colex).model_dump_json(indent=2) + "\n"
    if out is not None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, newline="")
    return text
