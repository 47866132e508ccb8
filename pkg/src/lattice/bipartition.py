"""Bipartitions, their counting statistics, collective strings and subgroup cardinalities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import networkx as nx
import numpy as np

from ..errors import LatticeTooSmallError, RegionError
from .colex import COLOR_ORDER, TORUS, Colex, Color, PerColor, gf2_rank

ZERO = PerColor(0, 0, 0)


@dataclass(frozen=True)
class Bipartition:
    """A/B split of the qubits of a lattice; B is the complement of A."""
    colex: Colex
    a_qubits: frozenset[int]
    label: str = ""

    def __post_init__(self):
        if not self.a_qubits:
            raise RegionError(f"region '{self.label}': A is empty")
        if len(self.a_qubits) >= self.colex.n_qubits:
            raise RegionError(f"region '{self.label}': B is empty")
        bad = [q for q in self.a_qubits if not 0 <= q < self.colex.n_qubits]
        if bad:
            raise RegionError(f"region '{self.label}': qubit {bad[0]} out of range [0, {self.colex.n_qubits})")

    @classmethod
    def from_qubits(cls, colex: Colex, qubits: Iterable[int], label: str = "") -> "Bipartition":
        return cls(colex, frozenset(int(q) for q in qubits), label)

    @property
    def b_qubits(self) -> frozenset[int]:
        return frozenset(range(self.colex.n_qubits)) - self.a_qubits

    def complement(self) -> "Bipartition":
        return Bipartition(self.colex, self.b_qubits, f"~{self.label}" if self.label else "")


@dataclass(frozen=True)
class ComponentStats:
    """
    One connected component of a region.

    sigma counts, per color, the plaquettes intersecting the component: those acting
    solely on it plus the boundary plaquettes it shares with the other region.
    """
    sigma: PerColor
    qubits: frozenset[int] = frozenset()
    string_rank: int = 2
    enclosed: bool = True
    link_connected: bool = True


@dataclass(frozen=True)
class RegionStats:
    """All counting data of a bipartition consumed by the closed forms."""
    boundary_kind: str
    sigma_a: PerColor
    sigma_b: PerColor
    sigma_ab_by_color: PerColor
    m_a: int
    m_b: int
    components: tuple[ComponentStats, ...]
    a_components: tuple[ComponentStats, ...] = ()
    n_per_color: Optional[int] = None
    n_plaquettes: PerColor = ZERO
    label: str = ""

    @property
    def sigma_ab(self) -> int:
        return int(self.sigma_ab_by_color.total)

    @property
    def is_torus(self) -> bool:
        return self.boundary_kind == TORUS

    @property
    def enclosed_components(self) -> tuple[ComponentStats, ...]:
        return tuple(c for c in self.components if c.enclosed)

    def complement(self) -> "RegionStats":
        """Statistics of the swapped bipartition (B becomes A)."""
        if self.m_b == 0:
            raise RegionError("the whole-system pseudo-bipartition has no complement")
        return RegionStats(
            boundary_kind=self.boundary_kind,
            sigma_a=self.sigma_b,
            sigma_b=self.sigma_a,
            sigma_ab_by_color=self.sigma_ab_by_color,
            m_a=self.m_b,
            m_b=self.m_a,
            components=self.a_components,
            a_components=self.components,
            n_per_color=self.n_per_color,
            n_plaquettes=self.n_plaquettes,
            label=f"~{self.label}" if self.label else "",
        )

    def consistency_errors(self) -> list[str]:
        """Violations of the counting invariants, empty when consistent."""
        errors = []
        arrays = {
            "sigma_a": self.sigma_a, "sigma_b": self.sigma_b, "sigma_ab": self.sigma_ab_by_color,
        }
        for name, values in arrays.items():
            if min(values) < 0:
                errors.append(f"{name} has negative counts {tuple(values)}")
        for component in self.components:
            if min(component.sigma) < 0:
                errors.append(f"component counts {tuple(component.sigma)} are negative")
        if self.m_a < 1 or self.m_b < 0:
            errors.append(f"invalid component counts m_a={self.m_a}, m_b={self.m_b}")
        if self.m_b != len(self.components):
            errors.append(f"m_b={self.m_b} but {len(self.components)} component entries")
        if self.is_torus and self.n_per_color is not None:
            totals = self.sigma_a.as_array() + sum((c.sigma.as_array() for c in self.components), np.zeros(3))
            if not np.allclose(totals, self.n_per_color, rtol=0, atol=0.5):
                errors.append(f"per-color sum rule sigma_a + sum_i sigma_i = N fails: {tuple(totals)} vs N={self.n_per_color}")
        return errors


class CardinalityTriple(NamedTuple):
    """log2 of |G|, d_A = |G_A| and d_B = |G_B|."""
    log2_group: float
    log2_da: float
    log2_db: float

    @property
    def log_ratio(self) -> float:
        """ln(d_A d_B / |G|) in nats."""
        return (self.log2_da + self.log2_db - self.log2_group) * np.log(2.0)


@dataclass(frozen=True)
class CollectiveString:
    """A product of two colors of plaquettes around one enclosed component, acting solely on A."""
    color: Color
    component: int
    plaquette_factors: frozenset[int]


def _per_color_counts(colex: Colex, plaquette_ids: Iterable[int]) -> PerColor:
    counts = {c: 0 for c in Color}
    for pid in plaquette_ids:
        counts[colex.plaquettes[pid].color] += 1
    return PerColor.from_mapping(counts)


def string_support(colex: Colex, plaquette_ids: Iterable[int]) -> frozenset[int]:
    """Qubits flipped by the product of the given plaquette operators (mod-2 support)."""
    ids = list(plaquette_ids)
    if not ids:
        return frozenset()
    row = np.bitwise_xor.reduce(colex.incidence[ids], axis=0)
    return frozenset(int(q) for q in np.flatnonzero(row))


def _component_stats(colex: Colex, qubits: frozenset[int], other: frozenset[int]) -> ComponentStats:
    plaquettes = {p for q in qubits for p in colex.plaquettes_of_qubit(q)}
    rows = []
    for color in COLOR_ORDER:
        factors = [p for p in plaquettes if colex.plaquettes[p].color != color]
        support = string_support(colex, factors)
        if support and support <= other:
            rows.append(np.bitwise_xor.reduce(colex.incidence[factors], axis=0))
    rank = gf2_rank(np.array(rows)) if rows else 0
    link_connected = nx.is_connected(colex.link_graph.subgraph(qubits))
    return ComponentStats(
        sigma=_per_color_counts(colex, plaquettes),
        qubits=qubits,
        string_rank=rank,
        enclosed=colex.is_torus or rank == 2,
        link_connected=link_connected,
    )


def region_components(colex: Colex, qubits: frozenset[int]) -> list[frozenset[int]]:
    """Connected components of a qubit set; qubits are adjacent iff they share a plaquette."""
    subgraph = colex.qubit_graph.subgraph(qubits)
    components = [frozenset(c) for c in nx.connected_components(subgraph)]
    return sorted(components, key=min)


def region_stats(colex: Colex, bp: Bipartition) -> RegionStats:
    """
    Exact counts of a bipartition by support inspection.

    Args:
        colex: Lattice the bipartition lives on
        bp: The bipartition

    Returns:
        RegionStats with per-color Sigma_A, Sigma_B, Sigma_AB and component data
    """
    if bp.colex is not colex:
        raise RegionError("bipartition belongs to a different lattice")
    a = bp.a_qubits
    b = bp.b_qubits
    solely_a, solely_b, boundary = [], [], []
    for plaquette in colex.plaquettes:
        support = set(plaquette.support)
        inside = support & a
        if len(inside) == len(support):
            solely_a.append(plaquette.id)
        elif not inside:
            solely_b.append(plaquette.id)
        else:
            boundary.append(plaquette.id)

    b_parts = region_components(colex, b)
    a_parts = region_components(colex, a)
    return RegionStats(
        boundary_kind=colex.boundary_kind,
        sigma_a=_per_color_counts(colex, solely_a),
        sigma_b=_per_color_counts(colex, solely_b),
        sigma_ab_by_color=_per_color_counts(colex, boundary),
        m_a=len(a_parts),
        m_b=len(b_parts),
        components=tuple(_component_stats(colex, part, a) for part in b_parts),
        a_components=tuple(_component_stats(colex, part, b) for part in a_parts),
        n_per_color=colex.n_per_color,
        n_plaquettes=colex.color_totals(),
        label=bp.label,
    )


def whole_system_stats(colex: Colex) -> RegionStats:
    """Pseudo-bipartition with A = every qubit and B empty (m_B = 0)."""
    totals = colex.color_totals()
    everything = frozenset(range(colex.n_qubits))
    return RegionStats(
        boundary_kind=colex.boundary_kind,
        sigma_a=totals,
        sigma_b=ZERO,
        sigma_ab_by_color=ZERO,
        m_a=1,
        m_b=0,
        components=(),
        a_components=(ComponentStats(totals, everything, 2 if colex.is_torus else 0, colex.is_torus),),
        n_per_color=colex.n_per_color,
        n_plaquettes=totals,
        label="whole-system",
    )


def _as_component(value) -> ComponentStats:
    if isinstance(value, ComponentStats):
        return value
    return ComponentStats(PerColor.from_sequence(value))


def synthetic_stats(
    sigma_a: Sequence[float],
    components: Sequence[Sequence[float]],
    sigma_ab: Sequence[float],
    m_a: int = 1,
    n_per_color: Optional[int] = None,
    boundary_kind: str = TORUS,
    sigma_b: Optional[Sequence[float]] = None,
    a_components: Sequence[Sequence[float]] = (),
    label: str = "synthetic",
) -> RegionStats:
    """
    Region statistics built from counts alone, for thermodynamic-limit proxies.

    On the torus N defaults to sigma_a + sum of component sigmas (per color, which
    must agree across colors) and sigma_b to N - sigma_a - sigma_ab.
    """
    sa = PerColor.from_sequence(sigma_a)
    sab = PerColor.from_sequence(sigma_ab)
    comps = tuple(_as_component(c) for c in components)
    totals = sa.as_array() + sum((c.sigma.as_array() for c in comps), np.zeros(3))
    if boundary_kind == TORUS and n_per_color is None:
        n_per_color = int(round(totals[0]))
    if sigma_b is None:
        if boundary_kind == TORUS:
            sb = PerColor.from_sequence(n_per_color - sa.as_array() - sab.as_array())
        else:
            sb = PerColor.from_sequence(totals - sa.as_array() - sab.as_array())
    else:
        sb = PerColor.from_sequence(sigma_b)
    a_comps = tuple(_as_component(c) for c in a_components)
    if not a_comps:
        a_comps = tuple(ComponentStats(ZERO) for _ in range(m_a))
    n_plaquettes = PerColor.from_sequence(sa.as_array() + sb.as_array() + sab.as_array())
    stats = RegionStats(
        boundary_kind=boundary_kind,
        sigma_a=sa,
        sigma_b=sb,
        sigma_ab_by_color=sab,
        m_a=m_a,
        m_b=len(comps),
        components=comps,
        a_components=a_comps,
        n_per_color=n_per_color if boundary_kind == TORUS else None,
        n_plaquettes=n_plaquettes,
        label=label,
    )
    errors = stats.consistency_errors()
    if errors:
        raise RegionError("; ".join(errors))
    return stats


def group_cardinalities(stats: RegionStats, boundary_kind: Optional[str] = None) -> CardinalityTriple:
    """
    Stabilizer subgroup sizes as base-2 logarithms.

    Torus: |G| = 2^(3N-2), d_A = 2^(Sigma_A + 2 m_B - 2), d_B = 2^(Sigma_B + 2 m_A - 2).
    Planar: |G| = 2^P and each component contributes its number of independent
    collective strings (2 when enclosed) with no global reduction.
    """
    kind = boundary_kind or stats.boundary_kind
    sigma_a = stats.sigma_a.total
    sigma_b = stats.sigma_b.total
    if kind == TORUS:
        n = stats.n_per_color
        if n is None:
            raise RegionError("torus statistics need N")
        log2_group = 3 * n - 2
        log2_da = sigma_a + 2 * stats.m_b - 2 if stats.m_b > 0 else log2_group
        log2_db = sigma_b + 2 * stats.m_a - 2 if stats.m_b > 0 else 0
        return CardinalityTriple(float(log2_group), float(log2_da), float(log2_db))
    log2_group = stats.n_plaquettes.total
    log2_da = sigma_a + sum(c.string_rank for c in stats.components)
    log2_db = sigma_b + sum(c.string_rank for c in stats.a_components) if stats.m_b > 0 else 0
    return CardinalityTriple(float(log2_group), float(log2_da), float(log2_db))


def collective_strings(colex: Colex, bp: Bipartition) -> list[CollectiveString]:
    """
    Collective strings of every enclosed B component.

    For component i and color X the string multiplies all plaquettes of the two
    other colors that intersect B_i; its support must lie in A.
    """
    a = bp.a_qubits
    strings = []
    for index, part in enumerate(region_components(colex, bp.b_qubits)):
        stats = _component_stats(colex, part, a)
        if not stats.enclosed:
            continue
        plaquettes = {p for q in part for p in colex.plaquettes_of_qubit(q)}
        for color in COLOR_ORDER:
            factors = frozenset(p for p in plaquettes if colex.plaquettes[p].color != color)
            if not string_support(colex, factors) <= a:
                raise RegionError(f"collective string {color.value} of component {index} leaves A")
            strings.append(CollectiveString(color, index, factors))
    return strings


# Canonical four-region geometry

@dataclass
class TopoGeometry:
    """The four nested bipartitions whose entropy combination isolates S_topo."""
    center: int
    outer_radius: int
    inner_radius: int
    bipartitions: list[Bipartition] = field(default_factory=list)
    stats: list[RegionStats] = field(default_factory=list)


def plaquette_distances(colex: Colex, center: int) -> dict[int, int]:
    return dict(nx.single_source_shortest_path_length(colex.plaquette_graph, center))


def canonical_center(colex: Colex) -> int:
    """Torus: the middle hexagon. Planar: the plaquette farthest from the border."""
    if colex.is_torus:
        lu, lv = colex.dims
        return colex.plaquette_at((lu // 2, lv // 2))
    depth = nx.multi_source_dijkstra_path_length(colex.plaquette_graph, set(colex.border_plaquettes))
    best = max(depth.values())
    return min(p for p, d in depth.items() if d == best)


def support_of(colex: Colex, plaquette_ids: Iterable[int]) -> frozenset[int]:
    return frozenset(q for p in plaquette_ids for q in colex.plaquettes[p].support)


def _check_fits(colex: Colex, center: int, distances: dict[int, int], outer_radius: int) -> None:
    if colex.is_torus:
        # The ball of radius R + 2 must not wrap around the torus
        for d in range(1, outer_radius + 3):
            size = sum(1 for x in distances.values() if x == d)
            if size != 6 * d:
                raise LatticeTooSmallError(
                    f"{colex.label} too small for outer radius {outer_radius}: ring {d} wraps around the torus"
                )
        return
    border = colex.border_plaquettes
    touching = [p for p, d in distances.items() if d <= outer_radius and p in border]
    if touching:
        raise LatticeTooSmallError(
            f"{colex.label} too small for outer radius {outer_radius}: ring "
            f"{distances[touching[0]]} reaches the lattice border"
        )


def annulus_bipartition(colex: Colex, outer_radius: int, inner_radius: int,
                        center: Optional[int] = None, label: str = "") -> Bipartition:
    """A = supports of rings <= R minus supports of rings <= r - 1 around the centre."""
    if not outer_radius > inner_radius >= 0:
        raise RegionError(f"annulus needs R > r >= 0, got R={outer_radius}, r={inner_radius}")
    center = canonical_center(colex) if center is None else center
    distances = plaquette_distances(colex, center)
    _check_fits(colex, center, distances, outer_radius)
    outer = support_of(colex, (p for p, d in distances.items() if d <= outer_radius))
    inner = support_of(colex, (p for p, d in distances.items() if d <= inner_radius - 1))
    return Bipartition(colex, outer - inner, label or f"annulus:{outer_radius},{inner_radius}")


_EXPECTED_M = ((1, 2), (1, 1), (1, 1), (2, 1))


def topo_relation_violations(four_stats: Sequence[RegionStats]) -> list[str]:
    """Violations of the component-count and sum-rule relations among the four regions."""
    if len(four_stats) != 4:
        return [f"expected four bipartitions, got {len(four_stats)}"]
    s1, s2, s3, s4 = four_stats
    problems = []
    for index, (stats, expected) in enumerate(zip(four_stats, _EXPECTED_M), start=1):
        if (stats.m_a, stats.m_b) != expected:
            problems.append(f"bipartition {index}: (m_A, m_B) = {(stats.m_a, stats.m_b)}, expected {expected}")
        errors = stats.consistency_errors()
        if errors:
            problems.append(f"bipartition {index}: " + "; ".join(errors))
    if len({s.boundary_kind for s in four_stats}) != 1 or len({s.n_per_color for s in four_stats}) != 1:
        problems.append("bipartitions come from different lattices")
    lhs = s1.sigma_a.as_array() + s4.sigma_a.as_array()
    rhs = s2.sigma_a.as_array() + s3.sigma_a.as_array()
    if not np.array_equal(lhs, rhs):
        problems.append(f"sum rule Sigma_1A + Sigma_4A = Sigma_2A + Sigma_3A fails: {tuple(lhs)} vs {tuple(rhs)}")
    lhs = s1.sigma_ab_by_color.as_array() + s4.sigma_ab_by_color.as_array()
    rhs = s2.sigma_ab_by_color.as_array() + s3.sigma_ab_by_color.as_array()
    if not np.array_equal(lhs, rhs):
        problems.append(f"sum rule Sigma_1AB + Sigma_4AB = Sigma_2AB + Sigma_3AB fails: {tuple(lhs)} vs {tuple(rhs)}")
    return problems


def canonical_topo_bipartitions(colex: Colex, outer_radius: int, inner_radius: int) -> TopoGeometry:
    """
    Build the four bipartitions of the topological entropy combination.

    Bipartition 1 is the annulus of plaquette rings r..R (B = inner disk + outside).
    Bipartitions 2 and 3 each cut the annulus once along opposite rays, and
    bipartition 4 cuts it twice into two disjoint arcs.

    Args:
        colex: Lattice to place the regions on
        outer_radius: R, outermost ring of A
        inner_radius: r >= 1, innermost ring of A

    Returns:
        TopoGeometry with the four bipartitions and their statistics
    """
    if not outer_radius > inner_radius >= 1:
        raise RegionError(f"levinwen needs R > r >= 1, got R={outer_radius}, r={inner_radius}")
    center = canonical_center(colex)
    distances = plaquette_distances(colex, center)
    _check_fits(colex, center, distances, outer_radius)

    annulus = annulus_bipartition(colex, outer_radius, inner_radius, center).a_qubits
    cu, cv = colex.plaquettes[center].coords
    cuts = []
    for du, dv in ((1, 0), (-1, 0)):
        ray = []
        for t in range(inner_radius, outer_radius + 2):
            pid = colex.plaquette_at((cu + t * du, cv + t * dv))
            if pid is None or distances.get(pid) != t:
                raise LatticeTooSmallError(
                    f"{colex.label} too small for levinwen:{outer_radius},{inner_radius}: cut ray leaves the lattice"
                )
            ray.append(pid)
        cuts.append(support_of(colex, ray))

    regions = [annulus, annulus - cuts[0], annulus - cuts[1], annulus - cuts[0] - cuts[1]]
    geometry = TopoGeometry(center, outer_radius, inner_radius)
    for index, a_qubits in enumerate(regions, start=1):
        bp = Bipartition(colex, a_qubits, f"levinwen:{outer_radius},{inner_radius}#{index}")
        geometry.bipartitions.append(bp)
        geometry.stats.append(region_stats(colex, bp))

    problems = topo_relation_violations(geometry.stats)
    if problems:
        raise LatticeTooSmallError(
            f"{colex.label} too small for levinwen:{outer_radius},{inner_radius}: " + "; ".join(problems)
        )
    return geometry
