"""Two-colex lattices: hexagonal torus codes and planar triangular color codes."""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

import networkx as nx
import numpy as np

from ..config import settings
from ..errors import LatticeError, SpecParseError
from ..verification.checks import CheckReport, CheckResult

TORUS = "torus"
PLANAR = "planar_triangular"


class Color(Enum):
    """Plaquette and link colors."""
    RED = "red"
    GREEN = "green"
    BLUE = "blue"

    @property
    def bar(self) -> "Color":
        """Cyclic color transformation red -> green -> blue -> red."""
        return _BAR[self]

    @property
    def index(self) -> int:
        """Position in the (red, blue, green) order used for per-color data."""
        return COLOR_ORDER.index(self)

    @property
    def letter(self) -> str:
        return self.value[0]

    @classmethod
    def from_letter(cls, letter: str) -> "Color":
        for color in cls:
            if color.letter == letter.lower() or color.value == letter.lower():
                return color
        raise ValueError(f"unknown color '{letter}'")


_BAR = {Color.RED: Color.GREEN, Color.GREEN: Color.BLUE, Color.BLUE: Color.RED}

# Order of per-color values everywhere: matches --lambda-x R,B,G and the k_r,k_b,k_g columns
COLOR_ORDER = (Color.RED, Color.BLUE, Color.GREEN)

# Hexagon (u, v) gets COLOR_CYCLE[(u - v) % 3]
COLOR_CYCLE = (Color.RED, Color.GREEN, Color.BLUE)


class PerColor(NamedTuple):
    """Per-color values in (red, blue, green) order."""
    red: float
    blue: float
    green: float

    def of(self, color: Color) -> float:
        return self[color.index]

    @property
    def total(self) -> float:
        return self.red + self.blue + self.green

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    @classmethod
    def from_mapping(cls, values: dict[Color, float]) -> "PerColor":
        return cls(values.get(Color.RED, 0), values.get(Color.BLUE, 0), values.get(Color.GREEN, 0))

    @classmethod
    def from_sequence(cls, values: Iterable[float]) -> "PerColor":
        items = tuple(values)
        if len(items) != 3:
            raise ValueError(f"expected three per-color values, got {len(items)}")
        return cls(*items)


@dataclass(frozen=True)
class Plaquette:
    """A colored face; its support is the cyclically ordered qubit boundary."""
    id: int
    color: Color
    support: tuple[int, ...]
    coords: tuple[int, int]


@dataclass(frozen=True)
class Link:
    """An edge between two qubits, colored like the plaquettes it joins."""
    a: int
    b: int
    color: Color


@dataclass(frozen=True, eq=False)
class Colex:
    """Immutable trivalent three-colorable lattice with qubits on vertices."""
    boundary_kind: str
    dims: tuple[int, ...]
    n_qubits: int
    plaquettes: tuple[Plaquette, ...]
    links: tuple[Link, ...]
    label: str = ""

    @property
    def n_plaquettes(self) -> int:
        return len(self.plaquettes)

    @property
    def is_torus(self) -> bool:
        return self.boundary_kind == TORUS

    @property
    def n_per_color(self) -> Optional[int]:
        """N, the plaquettes of each color on the torus; None on planar lattices."""
        if not self.is_torus:
            return None
        return self.n_plaquettes // 3

    def plaquette_support(self, plaquette_id: int) -> frozenset[int]:
        """Qubits acted on by the X-type and Z-type operators of one plaquette."""
        if not 0 <= plaquette_id < self.n_plaquettes:
            raise LatticeError(
                f"plaquette id {plaquette_id} out of range [0, {self.n_plaquettes})"
            )
        return frozenset(self.plaquettes[plaquette_id].support)

    @cached_property
    def qubit_plaquettes(self) -> tuple[tuple[int, ...], ...]:
        """Plaquette ids containing each qubit."""
        owners: list[list[int]] = [[] for _ in range(self.n_qubits)]
        for plaquette in self.plaquettes:
            for q in plaquette.support:
                owners[q].append(plaquette.id)
        return tuple(tuple(o) for o in owners)

    def plaquettes_of_qubit(self, qubit: int) -> tuple[int, ...]:
        return self.qubit_plaquettes[qubit]

    @cached_property
    def incidence(self) -> np.ndarray:
        """Plaquette-by-qubit 0/1 matrix."""
        matrix = np.zeros((self.n_plaquettes, self.n_qubits), dtype=np.uint8)
        for plaquette in self.plaquettes:
            matrix[plaquette.id, list(plaquette.support)] = 1
        return matrix

    @cached_property
    def plaquette_graph(self) -> nx.Graph:
        """Plaquettes adjacent iff their supports share qubits."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_plaquettes))
        for owners in self.qubit_plaquettes:
            for i, p in enumerate(owners):
                for q in owners[i + 1:]:
                    graph.add_edge(p, q)
        return graph

    def plaquette_neighbors(self, plaquette_id: int) -> list[int]:
        return sorted(self.plaquette_graph.neighbors(plaquette_id))

    @cached_property
    def qubit_graph(self) -> nx.Graph:
        """Qubits adjacent iff they co-occur in some plaquette support."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_qubits))
        for plaquette in self.plaquettes:
            support = plaquette.support
            for i, a in enumerate(support):
                for b in support[i + 1:]:
                    graph.add_edge(a, b)
        return graph

    @cached_property
    def link_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_qubits))
        graph.add_edges_from((link.a, link.b) for link in self.links)
        return graph

    @cached_property
    def border_plaquettes(self) -> frozenset[int]:
        """Plaquettes containing a qubit that belongs to fewer than three plaquettes."""
        border = set()
        for owners in self.qubit_plaquettes:
            if len(owners) < 3:
                border.update(owners)
        return frozenset(border)

    @cached_property
    def coords_index(self) -> dict[tuple[int, int], int]:
        return {p.coords: p.id for p in self.plaquettes}

    def plaquette_at(self, coords: tuple[int, int]) -> Optional[int]:
        """Plaquette id at axial coordinates (wrapped on the torus), or None."""
        u, v = coords
        if self.is_torus:
            u, v = u % self.dims[0], v % self.dims[1]
        return self.coords_index.get((u, v))

    def plaquettes_by_color(self, color: Color) -> list[int]:
        return [p.id for p in self.plaquettes if p.color == color]

    def color_totals(self) -> PerColor:
        return PerColor.from_mapping({c: len(self.plaquettes_by_color(c)) for c in Color})


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank over GF(2) via Gaussian elimination."""
    work = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    rows, cols = work.shape
    rank = 0
    col = 0
    for r in range(rows):
        while col < cols and not work[r:, col].any():
            col += 1
        if col >= cols:
            break
        pivot = r + int(np.flatnonzero(work[r:, col])[0])
        if pivot != r:
            work[[r, pivot]] = work[[pivot, r]]
        mask = work[:, col].astype(bool)
        mask[r] = False
        work[mask] ^= work[r]
        rank += 1
        col += 1
    return rank


def _link_color(owners_a: tuple[int, ...], owners_b: tuple[int, ...], plaquettes: list[Plaquette]) -> Color:
    """A link takes the color of the plaquettes touching exactly one of its ends."""
    exclusive = set(owners_a) ^ set(owners_b)
    if not exclusive:
        raise LatticeError("link endpoints share all their plaquettes")
    return plaquettes[min(exclusive)].color


def _make_links(n_qubits: int, pairs: Iterable[tuple[int, int]], plaquettes: list[Plaquette]) -> tuple[Link, ...]:
    owners: list[list[int]] = [[] for _ in range(n_qubits)]
    for plaquette in plaquettes:
        for q in plaquette.support:
            owners[q].append(plaquette.id)
    links = []
    for a, b in sorted({(min(a, b), max(a, b)) for a, b in pairs}):
        links.append(Link(a, b, _link_color(tuple(owners[a]), tuple(owners[b]), plaquettes)))
    return tuple(links)


def build_torus_colex(lu: int, lv: int) -> Colex:
    """
    Build the hexagonal color code on an lu x lv torus.

    Hexagon (u, v) has id u*lv + v and color COLOR_CYCLE[(u - v) % 3]. Each hexagon
    cell owns two qubits: up(u, v) = 2*id touches hexagons (u,v), (u+1,v), (u,v+1),
    and down(u, v) = 2*id + 1 touches (u+1,v), (u,v+1), (u+1,v+1).

    Args:
        lu: Number of hexagon rows, a positive multiple of 3
        lv: Number of hexagon columns, a positive multiple of 3

    Returns:
        Colex with lu*lv plaquettes and 2*lu*lv qubits
    """
    for name, side in (("lu", lu), ("lv", lv)):
        if side < 3 or side % 3:
            raise LatticeError(
                f"{name}={side} is not a positive multiple of 3: the three-coloring "
                f"(u - v) mod 3 only closes around the torus when both sides are multiples of 3"
            )

    def cell(u: int, v: int) -> int:
        return (u % lu) * lv + (v % lv)

    def up(u: int, v: int) -> int:
        return 2 * cell(u, v)

    def down(u: int, v: int) -> int:
        return 2 * cell(u, v) + 1

    plaquettes = []
    for u in range(lu):
        for v in range(lv):
            support = (up(u, v), down(u - 1, v), up(u - 1, v),
                       down(u - 1, v - 1), up(u, v - 1), down(u, v - 1))
            plaquettes.append(Plaquette(cell(u, v), COLOR_CYCLE[(u - v) % 3], support, (u, v)))

    pairs = []
    for u in range(lu):
        for v in range(lv):
            a = up(u, v)
            pairs.extend([(a, down(u, v)), (a, down(u, v - 1)), (a, down(u - 1, v))])

    n_qubits = 2 * lu * lv
    return Colex(
        boundary_kind=TORUS,
        dims=(lu, lv),
        n_qubits=n_qubits,
        plaquettes=tuple(plaquettes),
        links=_make_links(n_qubits, pairs, plaquettes),
        label=f"torus:{lu}x{lv}",
    )


# Fine triangular lattice directions in cyclic order
_FINE_DIRECTIONS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def build_triangular_colex(size: int) -> Colex:
    """
    Build the planar triangular color code of the given size.

    Points (i, j) with i, j >= 0 and i + j <= 3*size form a fine triangular
    lattice; points with (i - j) % 3 == 1 are plaquette centres and all others
    are qubits. Size 1 is the 7-qubit code.
    """
    available = settings.lattice.triangular_sizes
    if size not in available:
        raise LatticeError(
            f"unsupported triangular size {size}; available sizes: "
            f"{', '.join(str(s) for s in available)}"
        )
    extent = 3 * size

    def inside(i: int, j: int) -> bool:
        return i >= 0 and j >= 0 and i + j <= extent

    points = sorted(((i, j) for j in range(extent + 1) for i in range(extent + 1 - j)),
                    key=lambda p: (p[1], p[0]))
    centres = [p for p in points if (p[0] - p[1]) % 3 == 1]
    qubit_points = [p for p in points if (p[0] - p[1]) % 3 != 1]
    qubit_id = {p: idx for idx, p in enumerate(qubit_points)}

    plaquettes = []
    for pid, (i, j) in enumerate(centres):
        support = tuple(qubit_id[(i + di, j + dj)] for di, dj in _FINE_DIRECTIONS if inside(i + di, j + dj))
        beta = (i - j - 1) // 3
        plaquettes.append(Plaquette(pid, COLOR_CYCLE[j % 3], support, (j + beta, beta)))

    pairs = []
    for (i, j), q in qubit_id.items():
        for di, dj in _FINE_DIRECTIONS[:3]:
            other = (i + di, j + dj)
            if other in qubit_id:
                pairs.append((q, qubit_id[other]))

    return Colex(
        boundary_kind=PLANAR,
        dims=(size,),
        n_qubits=len(qubit_points),
        plaquettes=tuple(plaquettes),
        links=_make_links(len(qubit_points), pairs, plaquettes),
        label=f"triangular:{size}",
    )


def recolor_link(colex: Colex, link_index: int, color: Color) -> Colex:
    """Copy of the lattice with one link recolored (fault injection for validate)."""
    links = list(colex.links)
    links[link_index] = dataclasses.replace(links[link_index], color=color)
    return dataclasses.replace(colex, links=tuple(links))


def validate(colex: Colex) -> CheckReport:
    """Check the colex invariants; failures become report entries."""
    report = CheckReport(label=colex.label)
    owners = colex.qubit_plaquettes
    plaquettes = colex.plaquettes

    # Degree, counting one virtual border link per missing plaquette on planar lattices
    degree = np.zeros(colex.n_qubits, dtype=int)
    for link in colex.links:
        degree[link.a] += 1
        degree[link.b] += 1
    if colex.is_torus:
        effective = degree
    else:
        effective = degree + np.array([3 - len(o) for o in owners])
    bad = np.flatnonzero(effective != 3)
    report.checks.append(CheckResult(
        "trivalent", bad.size == 0,
        "every qubit has degree 3" if bad.size == 0 else f"{bad.size} qubits with degree != 3 (first: {int(bad[0])})",
    ))

    clashes = [(p, q) for p, q in colex.plaquette_graph.edges if plaquettes[p].color == plaquettes[q].color]
    report.checks.append(CheckResult(
        "proper_coloring", not clashes,
        "adjacent plaquettes differ in color" if not clashes else f"{len(clashes)} same-colored adjacent pairs, e.g. {clashes[0]}",
    ))

    wrong_links = []
    for idx, link in enumerate(colex.links):
        shared = set(owners[link.a]) & set(owners[link.b])
        exclusive = set(owners[link.a]) ^ set(owners[link.b])
        ok = all(plaquettes[p].color == link.color for p in exclusive) and \
            all(plaquettes[p].color != link.color for p in shared)
        if not ok:
            wrong_links.append(idx)
    report.checks.append(CheckResult(
        "link_colors", not wrong_links,
        "c-link connects c-plaquettes" if not wrong_links
        else f"c-link connects c-plaquettes violated on {len(wrong_links)} links (first: {wrong_links[0]})",
    ))

    overlaps = (colex.incidence.astype(np.int64) @ colex.incidence.T.astype(np.int64)) % 2
    odd = int(np.count_nonzero(overlaps))
    report.checks.append(CheckResult(
        "even_overlaps", odd == 0,
        "all plaquette supports overlap evenly" if odd == 0 else f"{odd // 2} plaquette pairs overlap oddly",
    ))

    if colex.is_torus:
        counts_ok = all(len(o) == 3 and len({plaquettes[p].color for p in o}) == 3 for o in owners)
        reason = "one plaquette per color at every qubit"
    else:
        counts_ok = all(1 <= len(o) <= 3 and len({plaquettes[p].color for p in o}) == len(o) for o in owners)
        reason = "at most one plaquette per color at every qubit"
    report.checks.append(CheckResult("qubit_plaquette_count", counts_ok, reason if counts_ok else "violated: " + reason))

    if colex.is_torus:
        _torus_checks(colex, report)
    else:
        _planar_checks(colex, report)
    return report


def _torus_checks(colex: Colex, report: CheckReport) -> None:
    totals = colex.color_totals()
    n = colex.n_plaquettes // 3
    per_color_ok = colex.n_plaquettes % 3 == 0 and all(t == n for t in totals)
    report.checks.append(CheckResult(
        "plaquette_count", per_color_ok,
        f"3N plaquettes with N={n} per color" if per_color_ok else f"per-color counts {tuple(totals)}",
        value=float(colex.n_plaquettes),
    ))
    qubits_ok = colex.n_qubits == 2 * colex.n_plaquettes
    report.checks.append(CheckResult(
        "qubit_count", qubits_ok, f"{colex.n_qubits} qubits for {colex.n_plaquettes} plaquettes",
        value=float(colex.n_qubits), threshold=float(2 * colex.n_plaquettes),
    ))
    products = {
        color: np.bitwise_xor.reduce(colex.incidence[colex.plaquettes_by_color(color)], axis=0)
        for color in Color
    }
    constraint_ok = np.array_equal(products[Color.GREEN], products[Color.BLUE]) and \
        np.array_equal(products[Color.BLUE], products[Color.RED])
    report.checks.append(CheckResult(
        "global_constraint", constraint_ok,
        "green, blue and red plaquette products coincide" if constraint_ok
        else "per-color plaquette products differ",
    ))
    hexagonal = all(len(set(p.support)) == 6 for p in colex.plaquettes)
    report.checks.append(CheckResult(
        "hexagonal_support", hexagonal, "every support has 6 qubits" if hexagonal else "non-hexagonal support found",
    ))


def _planar_checks(colex: Colex, report: CheckReport) -> None:
    rank = gf2_rank(colex.incidence)
    independent = rank == colex.n_plaquettes
    report.checks.append(CheckResult(
        "independence", independent, f"GF(2) rank {rank} of {colex.n_plaquettes} plaquettes",
        value=float(rank), threshold=float(colex.n_plaquettes),
    ))
    encoded = colex.n_qubits - 2 * colex.n_plaquettes
    report.checks.append(CheckResult(
        "encoded_qubit", encoded == 1, f"{colex.n_qubits} - 2*{colex.n_plaquettes} = {encoded} encoded qubits",
        value=float(encoded), threshold=1.0,
    ))


_LATTICE_RE = {
    "torus": re.compile(r"(\d+)x(\d+)"),
    "triangular": re.compile(r"(\d+)"),
}


def parse_lattice_spec(spec: str) -> Colex:
    """Build a lattice from 'torus:LUxLV' or 'triangular:SIZE'."""
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise SpecParseError(spec, len(spec), "expected 'torus:LUxLV' or 'triangular:SIZE'", "lattice spec")
    if kind not in _LATTICE_RE:
        raise SpecParseError(spec, 0, f"unknown lattice kind '{kind}'", "lattice spec")
    offset = len(kind) + 1
    match = _LATTICE_RE[kind].fullmatch(rest)
    if not match:
        position = offset + _first_mismatch(rest, "0123456789x" if kind == "torus" else "0123456789")
        raise SpecParseError(spec, position, "malformed dimensions", "lattice spec")
    if kind == "torus":
        lu, lv = int(match.group(1)), int(match.group(2))
        limit = settings.lattice.max_torus_side
        if max(lu, lv) > limit:
            raise SpecParseError(spec, offset, f"torus side exceeds {limit}", "lattice spec")
        return build_torus_colex(lu, lv)
    return build_triangular_colex(int(match.group(1)))


def _first_mismatch(text: str, allowed: str) -> int:
    for pos, char in enumerate(text):
        if char not in allowed:
            return pos
    return len(text)
