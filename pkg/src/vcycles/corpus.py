"""The built-in regression corpus: every desk-scale worked example with its
expected values, runnable one by one or end to end (`run_all`).

Problems with generic data carry frozen coefficient choices so that results
are reproducible byte for byte; the seeded draws inside each run supply the
genericity that matters.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

from . import bounds as bounds_mod
from .errors import NonDominantError
from .groebner import hilbert_data, staircase_count
from .ideals import Ideal, Rng, dehomogenize_ideal
from .multiplicity import (
    LocalModel,
    colength_at_point,
    hilbert_samuel_multiplicity,
    local_model_multiplicity,
    point_query,
    samuel_multiplicity,
)
from .oracles import blowup_example, fiber_degree, macaulay_colength, segre_discrepancy_linear
from .poly import QQ, Ring
from .vogel import VogelProblem, base_locus, map_degree, vogel_run

CUBICS_THROUGH_LINE = (
    "-8*x1^3 + 5*x1^2*x2 + 9*x2^3 - x1^2*x3 + 5*x1*x2*x3 - 8*x2*x3^2 - 3*x1^2*x4"
    " + 13*x1*x2*x4 - 8*x2^2*x4 - 3*x1*x3*x4 + 2*x2*x3*x4 - 6*x1*x4^2 - 4*x2*x4^2",
    "8*x1^3 - 12*x1^2*x2 - 15*x1*x2^2 - 6*x2^3 - 4*x1^2*x3 + 8*x1*x2*x3 - 5*x2^2*x3"
    " - 7*x1*x3^2 - 3*x2*x3^2 - 9*x1^2*x4 - 7*x1*x2*x4 - 5*x2^2*x4 - x1*x3*x4"
    " + 5*x2*x3*x4 + 4*x1*x4^2 + 7*x2*x4^2",
    "3*x1^3 - 16*x1^2*x2 - 3*x1*x2^2 + 6*x2^3 - x1^2*x3 + 17*x1*x2*x3 + x2^2*x3"
    " - 8*x1*x3^2 - 8*x2*x3^2 - 6*x1^2*x4 - 11*x1*x2*x4 + 9*x2^2*x4 + 7*x1*x3*x4"
    " + 9*x2*x3*x4 - 9*x1*x4^2 - x2*x4^2",
    "-8*x1^3 + 4*x1^2*x2 + 13*x1*x2^2 + 7*x2^3 - 6*x1^2*x3 + 8*x1*x2*x3 - 7*x2^2*x3"
    " - 4*x1*x3^2 + 6*x2*x3^2 + 7*x1^2*x4 - x1*x2*x4 - 2*x2^2*x4 - 9*x1*x3*x4"
    " + 5*x2*x3*x4 + 4*x1*x4^2 - 8*x2*x4^2",
)

NET_OF_CONICS = (
    "3*x^2 + 3*x*y - 3*y^2 - 4*x*z - 2*y*z",
    "-2*x^2 - 5*x*y - 7*y^2 - x*z + 3*y*z",
    "7*x^2 + 8*x*y - 7*y^2 + 6*x*z - 3*y*z",
)

GENERIC_CUBICS_P3 = (
    "4*x1^3 + 9*x1^2*x2 + 3*x1*x2^2 + x2^3 - 3*x1^2*x3 - 3*x1*x2*x3 - 7*x2^2*x3"
    " + 5*x1*x3^2 - 7*x2*x3^2 + 3*x3^3 + 2*x1^2*x4 - 5*x1*x2*x4 + 7*x2^2*x4"
    " - 4*x1*x3*x4 + 6*x2*x3*x4 - 8*x3^2*x4 + 9*x1*x4^2 + x2*x4^2 - x3*x4^2 + 8*x4^3",
    "-9*x1^3 + 4*x1^2*x2 + 8*x1*x2^2 - 8*x2^3 - 3*x1^2*x3 - 7*x1*x2*x3 + 2*x2^2*x3"
    " + 7*x1*x3^2 - 3*x2*x3^2 - 4*x3^3 + 2*x1^2*x4 + 5*x1*x2*x4 - 5*x2^2*x4"
    " - 3*x1*x3*x4 - 4*x2*x3*x4 + 7*x3^2*x4 + 5*x1*x4^2 + 5*x2*x4^2 - 4*x3*x4^2 - 8*x4^3",
    "-6*x1^3 - 9*x1^2*x2 + 4*x1*x2^2 - 9*x2^3 - 4*x1^2*x3 - 7*x1*x2*x3 + 3*x2^2*x3"
    " - 7*x1*x3^2 - 5*x2*x3^2 - 3*x3^3 + 6*x1^2*x4 + 4*x1*x2*x4 + x2^2*x4"
    " - 5*x1*x3*x4 + 7*x2*x3*x4 - 8*x3^2*x4 + 3*x2*x4^2 - 3*x3*x4^2 + 5*x4^3",
    "-x1^3 + 8*x1^2*x2 + 2*x1*x2^2 - 6*x2^3 + 3*x1^2*x3 + 6*x1*x2*x3 - 6*x2^2*x3"
    " - 5*x1*x3^2 - 5*x2*x3^2 - 4*x3^3 - 5*x1^2*x4 - 8*x1*x2*x4 - 6*x2^2*x4"
    " - 5*x1*x3*x4 + 4*x3^2*x4 + 4*x1*x4^2 - 4*x2*x4^2 - 5*x3*x4^2 - 3*x4^3",
)


def cubics_through_line_problem(seed: int = 1) -> VogelProblem:
    """Generic web of cubic surfaces through the line x1 = x2 = 0 in P^3."""
    ring = Ring(QQ, ["x1", "x2", "x3", "x4"])
    return VogelProblem(
        ring=ring,
        variety=Ideal(ring, []),
        system=tuple(ring.parse(s) for s in CUBICS_THROUGH_LINE),
        twist=3,
        seed=seed,
        name="cubics-through-line",
    )


def quadric_cone_problem(seed: int = 1) -> VogelProblem:
    """The singular quadric surface with the vertex-projection system."""
    ring = Ring(QQ, ["x", "y", "w", "z"])
    x, y, w, _ = ring.gens()
    return VogelProblem(
        ring=ring,
        variety=Ideal(ring, [x**2 + y**2 + w**2]),
        system=(x, y, w),
        twist=1,
        seed=seed,
        name="quadric-cone",
    )


def identity_plane_problem(seed: int = 1) -> VogelProblem:
    ring = Ring(QQ, ["x", "y", "z"])
    return VogelProblem(
        ring=ring,
        variety=Ideal(ring, []),
        system=tuple(ring.gens()),
        twist=1,
        seed=seed,
        name="identity-plane",
    )


def net_of_conics_problem(seed: int = 1) -> VogelProblem:
    """Three generic conics through the point [0:0:1]."""
    ring = Ring(QQ, ["x", "y", "z"])
    return VogelProblem(
        ring=ring,
        variety=Ideal(ring, []),
        system=tuple(ring.parse(s) for s in NET_OF_CONICS),
        twist=2,
        seed=seed,
        name="net-of-conics",
    )


def generic_cubics_problem(seed: int = 1) -> VogelProblem:
    """Four generic cubics on P^3 with empty base locus."""
    ring = Ring(QQ, ["x1", "x2", "x3", "x4"])
    return VogelProblem(
        ring=ring,
        variety=Ideal(ring, []),
        system=tuple(ring.parse(s) for s in GENERIC_CUBICS_P3),
        twist=3,
        seed=seed,
        name="generic-cubics",
    )


def cone_vertex_query():
    """Samuel multiplicity of the vertex system on the affine cone chart."""
    ring = Ring(QQ, ["x", "y", "w"])
    x, y, w = ring.gens()
    return point_query(
        ambient=Ideal(ring, [x**2 + y**2 + w**2]),
        target=[x, y, w],
        center=(0, 0, 0),
    )


def fermat_jacobian_query():
    """The cubic-threefold singularity model: the cubic plus four partials."""
    ring = Ring(QQ, [f"x{i}" for i in range(1, 6)])
    gens = ring.gens()
    cubic = ring.zero()
    for v in gens:
        cubic = cubic + v**3
    target = [cubic] + [gens[i] ** 2 for i in range(4)]
    return point_query(
        ambient=Ideal(ring, []), target=target, center=(0,) * 5, local_dim=5
    )


def fermat_jacobian_ideal() -> Ideal:
    ring = Ring(QQ, [f"x{i}" for i in range(1, 6)])
    gens = ring.gens()
    cubic = ring.zero()
    for v in gens:
        cubic = cubic + v**3
    return Ideal(ring, [gens[i] ** 2 for i in range(4)] + [cubic])


# ---------------------------------------------------------------------------
# runnable corpus entries


@dataclass
class CorpusResult:
    name: str
    ok: bool
    details: str
    seconds: float


def _entry(name: str, fn: Callable[[], str]) -> CorpusResult:
    start = time.perf_counter()
    try:
        details = fn()
        ok = True
    except Exception as exc:  # noqa: BLE001 - report, do not crash the table
        details = f"{type(exc).__name__}: {exc}"
        ok = False
    return CorpusResult(name=name, ok=ok, details=details, seconds=time.perf_counter() - start)


def _expect(label: str, got, expected):
    if got != expected:
        raise AssertionError(f"{label}: got {got}, expected {expected}")


def run_all(seed: int = 1) -> list:
    """Execute the whole corpus; returns one result row per entry."""
    results = []
    shared = {}

    def line_degree():
        problem = cubics_through_line_problem(seed)
        report = map_degree(problem)
        shared["line-report"] = report
        shared["line-problem"] = problem
        _expect("bundle degree", report.bundle_degree, 27)
        _expect("discrepancy", report.delta, 7)
        _expect("map degree", report.map_degree, 20)
        _expect("v-cycle degrees", report.vcycle_degrees, (0, 3, 4))
        _expect("residual points", report.residual_points, 20)
        return "deg_X L = 27, delta = 7, deg f = 20, steps (0, 3, 4)"

    results.append(_entry("cubics-through-line degree", line_degree))

    def segre_check():
        value = segre_discrepancy_linear(3, 1, 3)
        _expect("closed form", value, 7)
        report = shared.get("line-report")
        if report is not None:
            _expect("matches the run", value, report.delta)
        return "Segre closed form 9 - 2 = 7 agrees with the run"

    results.append(_entry("linear-base-locus closed form", segre_check))

    def blowup_check():
        for k in range(13):
            record = blowup_example(k)
            _expect(f"delta at k={k}", record.delta, 7 - k)
            _expect(f"map degree at k={k}", record.map_degree, 20)
            _expect(f"sign at k={k}", record.delta < 0, k > 7)
        return "blow-up record: delta = 7 - k, degree 20, negative iff k > 7"

    results.append(_entry("blow-up closed form", blowup_check))

    def cone_check():
        problem = quadric_cone_problem(seed)
        base = base_locus(problem)
        chart = dehomogenize_ideal(base, 3)
        _expect("base-locus colength", colength_at_point(chart, (0, 0, 0)), 1)
        _expect(
            "vertex multiplicity",
            samuel_multiplicity(cone_vertex_query(), Rng(seed)).value,
            2,
        )
        try:
            vogel_run(problem, seed=seed)
        except NonDominantError as exc:
            _expect("failing step", exc.step, 2)
            return "reduced base point, vertex multiplicity 2, non-dominant at step 2"
        raise AssertionError("the cone projection unexpectedly looked dominant")

    results.append(_entry("quadric cone", cone_check))

    def local_models():
        for g, ell in ((3, 2), (4, 4), (5, 3)):
            outcome = local_model_multiplicity(
                LocalModel(dimension=g, hessian_rank=g - 1, exponent=ell), verify=True
            )
            _expect(f"model ({g},{ell})", (outcome.value, outcome.verified), (ell, True))
        _expect(
            "theta-null fourfold degree",
            math.factorial(4) - local_model_multiplicity(
                LocalModel(4, 3, 4)).value,
            20,
        )
        return "models (3,2), (4,4), (5,3) verified; fourfold degree 24 - 4 = 20"

    results.append(_entry("corank-one local models", local_models))

    def cubic_threefold():
        ideal = fermat_jacobian_ideal()
        _expect("staircase", staircase_count(ideal.groebner()), 48)
        _expect("local", colength_at_point(ideal, (0,) * 5), 48)
        _expect("macaulay", macaulay_colength(ideal), 48)
        _expect(
            "samuel", samuel_multiplicity(fermat_jacobian_query(), Rng(seed)).value, 48
        )
        degree = math.factorial(5) - 48
        _expect("gauss degree", degree, bounds_mod.clemens_griffiths_degree())
        return "colength 48 three independent ways; degree 120 - 48 = 72"

    results.append(_entry("cubic threefold", cubic_threefold))

    def bounds_suite():
        _expect("isolated points g=5", bounds_mod.max_isolated_points(5), 58)
        _expect("isolated multiplicity g=4", bounds_mod.max_isolated_multiplicity(4), 2)
        report = bounds_mod.multbound_check(bounds_mod.profile(4, [(0, 3, 1)]))
        _expect("triple point feasible", report.feasible, False)
        for g in range(3, 9):
            _expect(f"codim-1 g={g}", bounds_mod.smooth_in_codim1_check(g).feasible, False)
        table = bounds_mod.known_degrees(5)
        _expect(
            "known degrees g=5",
            (
                table["hyperelliptic-jacobian"],
                table["nonhyperelliptic-jacobian"],
                table["smooth-theta"],
                table["cubic-threefold-intermediate-jacobian"],
            ),
            (16, 70, 120, 72),
        )
        for k in range(11):
            _expect(f"fourfold degree k={k}", bounds_mod.genus4_degree(k), 24 - 2 * k)
        return "isolated-point, codimension-one, and degree tables as expected"

    results.append(_entry("bound suite", bounds_suite))

    def fiber_checks():
        problem = shared.get("line-problem") or cubics_through_line_problem(seed)
        report = shared.get("line-report")
        expected_line = report.map_degree if report else 20
        _expect(
            "line fiber",
            fiber_degree(problem, Rng(seed + 40)),
            expected_line,
        )
        _expect("identity fiber", fiber_degree(identity_plane_problem(seed), Rng(seed)), 1)
        net = net_of_conics_problem(seed)
        net_report = map_degree(net)
        _expect("net degree", net_report.map_degree, 3)
        _expect("net delta", net_report.delta, 1)
        _expect("net fiber", fiber_degree(net, Rng(seed)), 3)
        return "fiber counts match the runs: 20, 1, 3"

    results.append(_entry("fiber-count oracle", fiber_checks))

    return results


def render_results(results) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        mark = "pass" if r.ok else "FAIL"
        lines.append(f"{r.name.ljust(width)}  {mark}  {r.seconds:6.2f}s  {r.details}")
    total = sum(r.seconds for r in results)
    failed = sum(1 for r in results if not r.ok)
    lines.append(
        f"{str(len(results)).rjust(width)} entries, {failed} failing, {total:.2f}s total"
    )
    return "\n".join(lines)
