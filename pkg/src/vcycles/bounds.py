"""Closed-form evaluators for the theta-divisor singularity bounds, the
known Gauss-map degrees, and the low-genus stratification tables.

All arithmetic is exact arbitrary-precision integers.  The conjectural
refinements (multiplicity at most floor((g+1)/2), the theta-null count
bound) are surfaced only as report footnotes, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

FLAG_SIMPLE_NON_JACOBIAN = "simple-non-jacobian"
FLAG_MINIMAL_CLASS = "minimal-class"
_KNOWN_FLAGS = {FLAG_SIMPLE_NON_JACOBIAN, FLAG_MINIMAL_CLASS}


@dataclass(frozen=True)
class SingularComponent:
    """One irreducible component of the singular locus of a theta divisor."""

    dim: int
    mult: int
    theta_degree: int = 1
    flags: frozenset = frozenset()

    def __post_init__(self):
        if self.mult < 2:
            raise ValueError("a singular component has multiplicity at least 2")
        if self.theta_degree < 1:
            raise ValueError("theta degree is at least 1 (the polarization is ample)")
        unknown = set(self.flags) - _KNOWN_FLAGS
        if unknown:
            raise ValueError(f"unknown component flags {sorted(unknown)}")


@dataclass(frozen=True)
class SingularityProfile:
    """Abstract singular-locus data of a g-dimensional ppav theta divisor."""

    g: int
    components: tuple

    def __post_init__(self):
        if self.g < 3:
            raise ValueError("profiles need dimension at least 3")
        for comp in self.components:
            if not 0 <= comp.dim <= self.g - 1:
                raise ValueError(f"component dimension {comp.dim} out of range")


def profile(g: int, rows: Sequence) -> SingularityProfile:
    """Build a profile from (dim, mult, degree[, flags]) rows."""
    comps = []
    for row in rows:
        d, m, deg = row[0], row[1], row[2]
        flags = frozenset(row[3]) if len(row) > 3 else frozenset()
        comps.append(SingularComponent(dim=d, mult=m, theta_degree=deg, flags=flags))
    return SingularityProfile(g=g, components=tuple(comps))


@dataclass(frozen=True)
class BoundReport:
    lhs: int
    rhs: int
    feasible: bool
    implied_max_gauss_degree: int
    rule: str  # main | ran | hodge
    per_component: tuple = ()
    footnotes: tuple = ()


_FOOTNOTES = (
    "conjecturally the multiplicity at any point of an indecomposable ppav "
    "theta divisor is at most floor((g+1)/2)",
    "conjecturally an indecomposable ppav has fewer than 2^(g-1)(2^g+1)-3^g "
    "vanishing theta-nulls",
)


def component_bound(g: int, comp: SingularComponent) -> tuple:
    """(contribution, rule) for one component: mult(mult-1)^(g-d-1) times the
    best available lower bound for its theta degree."""
    degree = comp.theta_degree
    rule = "main"
    if FLAG_SIMPLE_NON_JACOBIAN in comp.flags and comp.dim == 1:
        # a curve in a simple non-Jacobian ppav has theta degree > g
        if g + 1 > degree:
            degree, rule = g + 1, "ran"
    if FLAG_MINIMAL_CLASS in comp.flags:
        minimal = math.factorial(g) // math.factorial(g - comp.dim)
        if minimal > degree:
            degree, rule = minimal, "hodge"
    contribution = comp.mult * (comp.mult - 1) ** (g - comp.dim - 1) * degree
    return contribution, rule


def multbound_check(p: SingularityProfile, gauss_degree: Optional[int] = None) -> BoundReport:
    """Feasibility of the singular-locus profile against the degree budget.

    The left side sums mult(mult-1)^(g-dim-1) * theta-degree over components
    (flags raise the substituted degree); the right side is g! minus the
    Gauss-map degree, defaulting to the universal budget g! - 4.
    """
    g = p.g
    if gauss_degree is not None:
        if gauss_degree % 2 or gauss_degree < 4:
            raise ValueError("a known Gauss-map degree is even and at least 4")
        rhs = math.factorial(g) - gauss_degree
    else:
        rhs = math.factorial(g) - 4
    lhs = 0
    rows = []
    rule = "main"
    biggest = -1
    for comp in p.components:
        contribution, comp_rule = component_bound(g, comp)
        lhs += contribution
        rows.append((comp, contribution, comp_rule))
        if contribution > biggest:
            biggest = contribution
            rule = comp_rule
    return BoundReport(
        lhs=lhs,
        rhs=rhs,
        feasible=lhs <= rhs,
        implied_max_gauss_degree=math.factorial(g) - lhs,
        rule=rule,
        per_component=tuple(rows),
        footnotes=_FOOTNOTES,
    )


def smooth_in_codim1_check(g: int) -> BoundReport:
    """A codimension-one singular component is impossible whenever algebraic
    (g-2, g-2) classes are integer multiples of the minimal class: the
    minimal degree already exhausts the whole budget."""
    if g < 3:
        raise ValueError("needs g >= 3")
    comp = SingularComponent(
        dim=g - 2, mult=2, theta_degree=1, flags=frozenset([FLAG_MINIMAL_CLASS])
    )
    report = multbound_check(SingularityProfile(g=g, components=(comp,)))
    if report.feasible:
        raise AssertionError("codimension-one component unexpectedly feasible")
    return report


def max_isolated_points(g: int) -> int:
    """Most isolated singular points a theta divisor can carry: (g!-4)/2."""
    if g < 3:
        raise ValueError("needs g >= 3")
    return (math.factorial(g) - 4) // 2


def max_isolated_multiplicity(g: int) -> int:
    """Largest m with m(m-1)^(g-1) within the isolated-point budget g!-4."""
    if g < 3:
        raise ValueError("needs g >= 3")
    budget = math.factorial(g) - 4
    m = 2
    while (m + 1) * m ** (g - 1) <= budget:
        m += 1
    return m


def known_degrees(g: int) -> dict:
    """Gauss-map degrees known in closed form for each class of ppav."""
    if g < 2:
        raise ValueError("needs g >= 2")
    table = {
        "decomposable": 0,
        "hyperelliptic-jacobian": 2 ** (g - 1),
        "nonhyperelliptic-jacobian": math.comb(2 * g - 2, g - 1),
        "smooth-theta": math.factorial(g),
    }
    if g == 5:
        table["cubic-threefold-intermediate-jacobian"] = 72
    return table


def clemens_griffiths_degree() -> int:
    """Gauss-map degree for the intermediate Jacobian of a smooth cubic
    threefold: ordered pairs of disjoint lines on a cubic surface (27*16)
    divided by the degree (6) of the difference map onto the theta divisor."""
    assert 27 * 16 % 6 == 0
    return 27 * 16 // 6


def genus4_degree(theta_null_count: int) -> int:
    """Gauss-map degree of an indecomposable abelian fourfold that is not a
    Jacobian: each vanishing theta-null is an ordinary double point costing
    two, so the degree is 24 - 2k; at most ten theta-nulls can vanish."""
    if not 0 <= theta_null_count <= 10:
        raise ValueError("an abelian fourfold carries at most 10 vanishing theta-nulls")
    return 24 - 2 * theta_null_count


@dataclass(frozen=True)
class Stratum:
    g: int
    max_degree: int   # the locus of Gauss degree <= max_degree
    description: str
    components: tuple = ()


def strata_tables(g: int) -> tuple:
    """The known stratification of the moduli space by Gauss-map degree, as
    structured regression data for g = 2, 3, 4."""
    if g == 2:
        return (
            Stratum(2, 0, "decomposable surfaces", ("A1 x A1",)),
            Stratum(2, 2, "all abelian surfaces", ("A2",)),
        )
    if g == 3:
        return (
            Stratum(3, 0, "decomposable threefolds", ("A3-dec",)),
            Stratum(3, 2, "decomposable threefolds", ("A3-dec",)),
            Stratum(3, 4, "closure of hyperelliptic Jacobians", ("Hbar3",)),
            Stratum(3, 6, "all abelian threefolds", ("A3",)),
        )
    if g == 4:
        return (
            Stratum(4, 0, "decomposable fourfolds",
                    ("A1 x A3 (dim 7)", "A2 x A2 (dim 6)")),
            Stratum(4, 4, "decomposable fourfolds and the Varley fourfold",
                    ("A4-dec", "{A_V} (one point)")),
            Stratum(4, 8, "hyperelliptic Jacobians plus a small extra component",
                    ("H4 (dim 7)", "extra component (dim 2)")),
            Stratum(4, 20, "Jacobians plus an extra component",
                    ("J4 (dim 9)", "extra component (dim 8)")),
            Stratum(4, 24, "all abelian fourfolds", ("A4",)),
        )
    raise ValueError("strata tables cover g = 2, 3, 4 only")


def table_text(table: dict) -> str:
    """Aligned text rendering of a degree table."""
    width = max(len(k) for k in table)
    lines = [f"{k.ljust(width)}  {v}" for k, v in table.items()]
    return "\n".join(lines)
