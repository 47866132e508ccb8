"""Verification harness: closed-form entropies against the brute-force oracle."""

import math
from typing import Callable, Optional

import numpy as np
from rich.console import Console
from rich.progress import Progress

from ..config import settings
from ..data.cache_manager import CacheManager, oracle_identifier
from ..errors import ColorCodeError, OracleGuardError
from ..lattice.bipartition import (
    Bipartition,
    CardinalityTriple,
    RegionStats,
    group_cardinalities,
    region_stats,
)
from ..lattice.colex import Colex, PerColor, validate
from ..oracle.density import OracleResult, oracle_result
from ..oracle.group import GroupTable, enumerate_local_subgroup, eta_weight
from ..thermo.couplings import Couplings, make_couplings
from ..thermo.entropy import entanglement_entropy, trace_rho_n
from ..thermo.fterms import f_terms
from .checks import CheckReport, CheckResult, DeviationTracker

console = Console(stderr=True)

CardinalityFn = Callable[[RegionStats], CardinalityTriple]


def verification_regions(colex: Colex) -> list[Bipartition]:
    """
    Small regions exercised by the oracle.

    Torus: one hexagon, two adjacent hexagons and the complement of the pair.
    Planar: one plaquette and its complement.
    """
    first = colex.plaquette_support(0)
    if not colex.is_torus:
        single = Bipartition(colex, first, "plaquette:0")
        return [single, single.complement()]
    neighbor = colex.plaquette_neighbors(0)[0]
    pair = Bipartition(colex, first | colex.plaquette_support(neighbor), f"hexagons:0,{neighbor}")
    regions = [Bipartition(colex, first, "hexagon:0"), pair]
    if pair.b_qubits:
        regions.append(pair.complement())
    return regions


def temperature_grid(lambda_ref: float, points: int) -> list[float]:
    """Log-spaced temperatures plus the exact endpoints T = 0 and T = inf."""
    grid = settings.verify
    temps = np.geomspace(grid.t_min_ratio * lambda_ref, grid.t_max_ratio * lambda_ref, points)
    return [0.0, *(float(t) for t in temps), math.inf]


class Verifier:
    """Runs every oracle-vs-closed-form check on one lattice."""

    def __init__(
        self,
        colex: Colex,
        lattice_spec: str,
        points: Optional[int] = None,
        seed: Optional[int] = None,
        cache: Optional[CacheManager] = None,
        cardinality_fn: CardinalityFn = group_cardinalities,
    ):
        self.colex = colex
        self.lattice_spec = lattice_spec
        self.points = points or settings.verify.points
        self.seed = settings.verify.seed if seed is None else seed
        self.cache = cache
        self.cardinality_fn = cardinality_fn
        self.table: Optional[GroupTable] = None

    def run(self, progress_callback: Optional[Callable[[str, int, int], None]] = None) -> CheckReport:
        """
        Run the complete verification.

        Args:
            progress_callback: Optional callback(stage, current, total)

        Returns:
            CheckReport with one entry per check; passed only if all pass
        """
        report = CheckReport(self.colex.label)

        # Step 1: Lattice structure
        console.print("[bold blue]Step 1: Validating lattice...[/bold blue]")
        for check in validate(self.colex).checks:
            report.add(CheckResult(f"lattice:{check.name}", check.passed, check.reason, check.value, check.threshold))

        # Step 2: Enumerate the group
        console.print("[bold blue]Step 2: Enumerating stabilizer group...[/bold blue]")
        self.table = GroupTable(self.colex)
        console.print(f"|G| = {self.table.order} ({self.table.distinct_flips} distinct flip sets)")
        report.add(self._group_order_check())

        regions = []
        for bp in verification_regions(self.colex):
            if len(bp.a_qubits) > settings.oracle.max_region_qubits:
                console.print(f"[yellow]Skipping region {bp.label}: |A| = {len(bp.a_qubits)} too large[/yellow]")
                continue
            stats = region_stats(self.colex, bp)
            if any(not c.enclosed and c.string_rank > 0 for c in stats.components):
                console.print(f"[yellow]Skipping region {bp.label}: partially enclosed B component[/yellow]")
                continue
            regions.append((bp, stats))

        # Step 3: Subgroup cardinalities
        console.print("[bold blue]Step 3: Checking subgroup cardinalities...[/bold blue]")
        for bp, stats in regions:
            report.add(self._cardinality_check(bp, stats))

        # Step 4: Representation invariance of eta
        console.print("[bold blue]Step 4: Checking thermal weight invariance...[/bold blue]")
        report.add(self._eta_invariance_check())

        # Step 5: Entropies and traces over the grid
        console.print("[bold blue]Step 5: Comparing entropies and traces...[/bold blue]")
        for check in self._grid_checks(regions, progress_callback):
            report.add(check)

        if report.passed:
            console.print(f"[bold green]All {len(report.checks)} checks passed[/bold green]")
        else:
            console.print(f"[bold red]{len(report.failed())} of {len(report.checks)} checks failed[/bold red]")
        return report

    def _group_order_check(self) -> CheckResult:
        n = self.colex.n_per_color
        expected = 3 * n - 2 if self.colex.is_torus else self.colex.n_plaquettes
        passed = self.table.distinct_flips == 2 ** expected
        return CheckResult(
            "group_order",
            passed,
            f"{self.table.distinct_flips} distinct elements, expected 2^{expected}",
            value=float(self.table.distinct_flips),
            threshold=float(2 ** expected),
        )

    def _cardinality_check(self, bp: Bipartition, stats: RegionStats) -> CheckResult:
        counted_a, counted_b = enumerate_local_subgroup(self.colex, bp, self.table)
        cards = self.cardinality_fn(stats)
        expected_a, expected_b = 2.0 ** cards.log2_da, 2.0 ** cards.log2_db
        passed = counted_a == expected_a and counted_b == expected_b
        return CheckResult(
            f"cardinality:{bp.label}",
            passed,
            f"|G_A| = {counted_a} (formula {expected_a:g}), |G_B| = {counted_b} (formula {expected_b:g})",
        )

    def _eta_invariance_check(self) -> CheckResult:
        n = self.colex.n_per_color
        if n is None:
            return CheckResult("eta_invariance", True, "planar: single representation per element")
        rng = np.random.default_rng(self.seed)
        samples = settings.verify.eta_samples
        mismatches = 0
        worst = ""
        for _ in range(samples):
            counts = rng.integers(0, n + 1, size=3)
            couplings = Couplings.from_k(*rng.exponential(1.0, size=3))
            r, b, g = (int(v) for v in counts)
            forms = [(r, b, g), (r, n - b, n - g), (n - r, b, n - g), (n - r, n - b, g)]
            values = {eta_weight(form, couplings, n) for form in forms}
            if len(values) != 1:
                mismatches += 1
                worst = f"counts {(r, b, g)}"
        reason = f"{samples} samples, four representations agree exactly" if not mismatches else \
            f"{mismatches}/{samples} samples disagree, e.g. {worst}"
        return CheckResult("eta_invariance", mismatches == 0, reason, value=float(mismatches), threshold=0.0)

    def _lambda_settings(self) -> list[PerColor]:
        grid = settings.verify
        uniform = [PerColor(v, v, v) for v in grid.uniform_lambdas]
        return uniform + [PerColor.from_sequence(v) for v in grid.mixed_lambdas]

    def _oracle(self, bp: Bipartition, lam: PerColor, temperature: float, couplings: Couplings) -> OracleResult:
        identifier = oracle_identifier(self.lattice_spec, bp.label, lam, temperature)
        if self.cache is not None:
            cached = self.cache.get_oracle(identifier)
            if cached is not None:
                return OracleResult.from_dict(cached)
        result = oracle_result(self.colex, bp, couplings, self.table)
        if self.cache is not None:
            self.cache.set_oracle(identifier, result.to_dict())
        return result

    def _grid_checks(self, regions, progress_callback) -> list[CheckResult]:
        tol = settings.tolerances
        entropy = DeviationTracker("entropy", tol.entropy_abs)
        traces = {
            n: DeviationTracker(f"trace_rho_{n}", tol.trace_rel) for n in settings.verify.renyi_orders if n in (2, 3)
        }
        density_trace = DeviationTracker("density_trace", tol.density_trace)
        eigen = DeviationTracker("eigenvalue_floor", -tol.eigenvalue_floor)
        nonnegative = DeviationTracker("entropy_nonnegative", tol.nonnegative)
        weight_sum = DeviationTracker("weight_sum", tol.weight_sum)

        points = [
            (lam, temperature)
            for lam in self._lambda_settings()
            for temperature in temperature_grid(float(np.mean(lam)), self.points)
        ]
        total = len(points) * len(regions)
        done = 0
        with Progress(console=console) as progress:
            task = progress.add_task("[cyan]Grid...", total=total)
            for lam, temperature in points:
                couplings = make_couplings(lam, temperature)
                for bp, stats in regions:
                    done += 1
                    progress.update(task, advance=1, description=f"[cyan]{bp.label} T={temperature:.4g}")
                    if progress_callback:
                        progress_callback("grid", done, total)
                    where = f"{bp.label}, lambda={tuple(lam)}, T={temperature:.6g}"
                    try:
                        brute = self._oracle(bp, lam, temperature, couplings)
                        closed = entanglement_entropy(stats, couplings).s_total
                        entropy.update(abs(closed - brute.entropy), where)
                        nonnegative.update(max(0.0, -closed), where)
                        if not couplings.any_infinite:
                            weight_sum.update(abs(f_terms(couplings, stats).weights.sum() - 1.0), where)
                        oracle_traces = {2: brute.trace2, 3: brute.trace3}
                        for n, tracker in traces.items():
                            expected = oracle_traces[n]
                            tracker.update(abs(trace_rho_n(stats, couplings, n) - expected) / expected, where)
                    except OracleGuardError:
                        raise
                    except ColorCodeError as e:
                        console.print(f"[yellow]Error at {where}: {e}[/yellow]")
                        entropy.update(math.inf, where)
                        continue
                    density_trace.update(abs(brute.trace - 1.0), where)
                    eigen.update(max(0.0, -brute.eigenvalue_min), where)

        return [entropy.to_result(), *(t.to_result() for t in traces.values()),
                density_trace.to_result(), eigen.to_result(), nonnegative.to_result(), weight_sum.to_result()]
