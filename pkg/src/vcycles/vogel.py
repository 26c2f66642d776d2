"""Vogel's intersection algorithm on projective varieties.

Starting from the variety X and a linear system W of degree-e forms, the run
cuts with one random section per step, splits off the part supported inside
the base locus by saturation, and records the degree the line bundle O(e)
loses to that part.  The per-step losses sum to the discrepancy; the degree
of the rational map is deg_X O(e) minus the discrepancy, and also the number
of residual points after the last step.  Cycles are carried as saturated
ideals throughout; degrees are differences of top-dimensional Hilbert
degrees, so no primary decomposition is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Optional, Sequence

from .errors import DisagreementError, GenericityError, NonDominantError
from .groebner import hilbert_data
from .ideals import (
    RETRY_BUDGET,
    Ideal,
    Rng,
    combination_rows,
    ideal_sum,
    saturate,
)
from .poly import DEFAULT_PRIME, GF, CoefficientField, Polynomial, Ring


@dataclass(frozen=True)
class VogelProblem:
    """A generically finite rational map given by a linear system.

    ring has N+1 projective coordinates; variety is the homogeneous ideal of
    an irreducible X (zero ideal for X = P^N); system is the list of forms
    spanning W, all of degree `twist`.  Irreducibility and dominance are
    caller promises; violations surface as genericity or dominance errors.
    """

    ring: Ring
    variety: Ideal
    system: tuple
    twist: int
    seed: int = 1
    name: str = ""

    def __post_init__(self):
        if not self.system:
            raise ValueError("the linear system is empty")
        for f in self.system:
            if not f.is_homogeneous() or f.total_degree() != self.twist:
                raise ValueError(
                    f"system forms must be homogeneous of degree {self.twist}"
                )
        if not self.variety.is_homogeneous():
            raise ValueError("variety ideal must be homogeneous")
        basis = self.variety.groebner()
        if all(basis.contains(f) for f in self.system):
            raise ValueError("the system lies in the variety ideal: base locus is all of X")

    @property
    def ambient_dim(self) -> int:
        return self.ring.nvars - 1

    @property
    def dimension(self) -> int:
        """Projective dimension n of X."""
        return hilbert_data(self.variety.groebner()).dimension

    @property
    def variety_degree(self) -> int:
        return hilbert_data(self.variety.groebner()).degree

    @property
    def bundle_degree(self) -> int:
        """deg_X O(twist) = twist^n times the projective degree of X."""
        return self.twist ** self.dimension * self.variety_degree

    def map_to_field(self, coefficient_field: CoefficientField) -> "VogelProblem":
        return VogelProblem(
            ring=self.ring.to_field(coefficient_field),
            variety=self.variety.map_to_field(coefficient_field),
            system=tuple(f.map_to_field(coefficient_field) for f in self.system),
            twist=self.twist,
            seed=self.seed,
            name=self.name,
        )


@dataclass(frozen=True)
class VogelStep:
    j: int
    section_coefficients: tuple
    cut_dimension: int
    cut_degree: int          # top-dimensional degree of R^{j-1} cap D_j
    residual_degree: int     # top-dimensional degree of R^j
    vcycle_bundle_degree: int  # deg_{V^j} O(e) = e^{n-j} (cut - residual)
    residual: Ideal
    resamples: int = 0


@dataclass(frozen=True)
class VogelTrace:
    problem: VogelProblem
    base: Ideal
    steps: tuple
    seed: int

    @property
    def delta(self) -> int:
        return sum(s.vcycle_bundle_degree for s in self.steps)

    @property
    def residual_points(self) -> int:
        return self.steps[-1].residual_degree if self.steps else self.problem.bundle_degree

    @property
    def vcycle_degrees(self) -> tuple:
        return tuple(s.vcycle_bundle_degree for s in self.steps)

    def check_invariants(self):
        """Dimension descent and the per-step degree bookkeeping."""
        n = self.problem.dimension
        e = self.problem.twist
        prev_deg = self.problem.variety_degree
        for s in self.steps:
            if s.cut_dimension != n - s.j:
                raise AssertionError(f"step {s.j}: cut dimension {s.cut_dimension}")
            if s.cut_degree != e * prev_deg:
                raise AssertionError(
                    f"step {s.j}: cut degree {s.cut_degree} != {e} * {prev_deg}"
                )
            if s.vcycle_bundle_degree < 0:
                raise AssertionError(f"step {s.j}: negative v-cycle degree")
            lhs = e ** (n - s.j + 1) * prev_deg - s.vcycle_bundle_degree
            rhs = e ** (n - s.j) * s.residual_degree
            if lhs != rhs:
                raise AssertionError(f"step {s.j}: residual degree bookkeeping broken")
            prev_deg = s.residual_degree
        return True


@dataclass(frozen=True)
class MapDegreeReport:
    problem: VogelProblem
    bundle_degree: int
    delta: int
    map_degree: int
    residual_points: int
    vcycle_degrees: tuple
    runs: tuple  # (label, seed, field description, delta) per verification run
    trace: VogelTrace


def irrelevant_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.gens())


def base_locus(problem: VogelProblem) -> Ideal:
    """Saturated ideal of the scheme-theoretic base locus; unit ideal when
    the system is base-point free."""
    total = Ideal(problem.ring, list(problem.variety.gens) + list(problem.system))
    sat, _ = saturate(total, irrelevant_ideal(problem.ring))
    return sat


def vogel_run(problem: VogelProblem, seed: Optional[int] = None, base: Optional[Ideal] = None) -> VogelTrace:
    """Run the intersection algorithm; returns the full step-by-step trace."""
    rng = Rng(problem.seed if seed is None else seed)
    ring = problem.ring
    n = problem.dimension
    e = problem.twist
    if base is None:
        base = base_locus(problem)
    current = problem.variety
    current_dim = n
    steps = []
    for j in range(1, n + 1):
        picked = None
        current_basis_polys = list(current.groebner().polys)
        for attempt in range(RETRY_BUDGET):
            child = rng.split(101 * j + attempt)
            combos, rows = combination_rows(list(problem.system), 1, child)
            section = combos[0]
            cut = Ideal(ring, current_basis_polys + [section])
            cut_data = hilbert_data(cut.groebner())
            if cut_data.dimension == current_dim - 1:
                picked = (section, tuple(rows[0]), cut, cut_data, attempt)
                break
        if picked is None:
            raise GenericityError(
                f"step {j}: no drawn section dropped the dimension by one "
                f"within {RETRY_BUDGET} attempts"
            )
        section, coeffs, cut, cut_data, resamples = picked
        residual, _ = saturate(cut, base)
        if residual.is_unit():
            raise NonDominantError(
                f"step {j}: the residual cycle became empty; the map is not "
                "dominant and generically finite onto the target",
                step=j,
            )
        res_data = hilbert_data(residual.groebner())
        if res_data.dimension != n - j:
            raise GenericityError(
                f"step {j}: residual dimension {res_data.dimension} != {n - j}"
            )
        vdeg = e ** (n - j) * (cut_data.degree - res_data.degree)
        steps.append(
            VogelStep(
                j=j,
                section_coefficients=coeffs,
                cut_dimension=cut_data.dimension,
                cut_degree=cut_data.degree,
                residual_degree=res_data.degree,
                vcycle_bundle_degree=vdeg,
                residual=residual,
                resamples=resamples,
            )
        )
        current = residual
        current_dim = n - j
    trace = VogelTrace(problem=problem, base=base, steps=tuple(steps), seed=rng.seed)
    trace.check_invariants()
    return trace


def discrepancy(trace: VogelTrace) -> int:
    """Sum of the bundle degrees lost to the v-cycles."""
    return trace.delta


def map_degree(
    problem: VogelProblem,
    verify: bool = True,
    prime: int = DEFAULT_PRIME,
) -> MapDegreeReport:
    """Degree of the rational map: runs the algorithm under the primary seed
    and, unless verify is off, under a second seed and over GF(prime); the
    three discrepancies must agree."""
    shared_base = base_locus(problem)
    primary = vogel_run(problem, seed=problem.seed, base=shared_base)
    field_label = repr(problem.ring.field)
    runs = [("primary", problem.seed, field_label, primary.delta)]
    if verify:
        second = vogel_run(problem, seed=problem.seed + 1, base=shared_base)
        runs.append(("second-seed", problem.seed + 1, field_label, second.delta))
        if problem.ring.field.char == 0:
            modular_problem = problem.map_to_field(GF(prime))
            modular = vogel_run(modular_problem, seed=problem.seed)
            runs.append(
                ("modular", problem.seed, repr(modular_problem.ring.field), modular.delta)
            )
        deltas = {r[3] for r in runs}
        if len(deltas) != 1:
            raise DisagreementError(f"verification runs disagree on the discrepancy: {runs}")
        if second.residual_points != primary.residual_points:
            raise DisagreementError(
                f"residual point counts differ between seeds: "
                f"{primary.residual_points} vs {second.residual_points}"
            )
    bundle = problem.bundle_degree
    delta = primary.delta
    degree = bundle - delta
    if degree != primary.residual_points:
        raise AssertionError(
            f"map degree {degree} != residual point count {primary.residual_points}"
        )
    if degree < 1:
        raise NonDominantError(f"computed map degree {degree} < 1", step=None)
    return MapDegreeReport(
        problem=problem,
        bundle_degree=bundle,
        delta=delta,
        map_degree=degree,
        residual_points=primary.residual_points,
        vcycle_degrees=primary.vcycle_degrees,
        runs=tuple(runs),
        trace=primary,
    )
