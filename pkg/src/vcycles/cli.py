"""Command-line driver.

Subcommands: `degree` (run the intersection algorithm on a problem file),
`multiplicity` (Samuel multiplicity at the file's center), `bounds`
(closed-form inequality and table evaluation), `examples run-all` (the whole
regression corpus).

Exit codes: 0 success, 2 parse error, 3 non-dominant input, 4 genericity
exhaustion, 5 verification disagreement, 1 anything else (including corpus
mismatches).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

from . import __version__
from . import bounds as bounds_mod
from .errors import (
    DisagreementError,
    GenericityError,
    NonDominantError,
    ParseError,
    VcyclesError,
)
from .groebner import staircase_count
from .ideals import Ideal, Rng
from .multiplicity import (
    MultiplicityQuery,
    colength_at_point,
    hilbert_samuel_multiplicity,
    linear_center_query,
    point_query,
    samuel_multiplicity,
)
from .oracles import macaulay_colength
from .poly import DEFAULT_PRIME, GF, QQ
from .problemfile import file_digest, load_problem
from .vogel import map_degree

SCHEMA_VERSION = 1

EXIT_PARSE = 2
EXIT_NON_DOMINANT = 3
EXIT_GENERICITY = 4
EXIT_DISAGREEMENT = 5


def _field_from_flag(text):
    text = (text or "q").replace(" ", "").lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        return GF(int(text.split(":", 1)[1]))
    raise ParseError(f"bad --field value {text!r} (use q or fp:<prime>)")


def _report(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def _json_value(value):
    if value == math.inf:
        return "infinite"
    return value


def cmd_degree(args) -> int:
    pf = load_problem(args.file)
    if args.field:
        wanted = _field_from_flag(args.field)
        if wanted != pf.ring.field:
            pf.ring = pf.ring.to_field(wanted)
            pf.ideal_gens = tuple(g.map_to_field(wanted) for g in pf.ideal_gens)
            pf.system = tuple(g.map_to_field(wanted) for g in pf.system)
    if args.seed is not None:
        pf.seed = args.seed
    problem = pf.vogel_problem()
    report = map_degree(problem, verify=not args.no_verify, prime=args.prime)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "degree",
        "input": str(args.file),
        "digest": file_digest(args.file),
        "seed": problem.seed,
        "field": repr(problem.ring.field),
        "results": {
            "bundle_degree": report.bundle_degree,
            "delta": report.delta,
            "map_degree": report.map_degree,
            "residual_points": report.residual_points,
            "vcycle_degrees": list(report.vcycle_degrees),
        },
        "trace": [
            {
                "step": s.j,
                "section_coefficients": list(s.section_coefficients),
                "cut_degree": s.cut_degree,
                "residual_degree": s.residual_degree,
                "vcycle_bundle_degree": s.vcycle_bundle_degree,
                "resamples": s.resamples,
            }
            for s in report.trace.steps
        ],
        "runs": [list(r) for r in report.runs],
        "versions": {"package": __version__},
    }
    steps = ", ".join(str(d) for d in report.vcycle_degrees)
    _report(
        payload,
        args.json,
        [
            f"degX L = {report.bundle_degree}, delta = {report.delta}, "
            f"deg f = {report.map_degree}",
            f"per-step v-cycle degrees: ({steps})",
            f"residual points: {report.residual_points}",
            "verification: "
            + "; ".join(f"{label} (seed {seed}, {field}): delta {d}" for label, seed, field, d in report.runs),
        ],
    )
    return 0


def cmd_multiplicity(args) -> int:
    pf = load_problem(args.file)
    if args.seed is not None:
        pf.seed = args.seed
    if not pf.system:
        raise ParseError("a multiplicity problem needs a `system:` section")
    ambient = Ideal(pf.ring, list(pf.ideal_gens))
    if pf.center_ideal_gens:
        query = linear_center_query(ambient, list(pf.system), pf.center_ideal())
    elif pf.center is not None:
        query = point_query(ambient, list(pf.system), pf.center)
    else:
        raise ParseError("a multiplicity problem needs `center:` or `center-ideal:`")
    rng = Rng(pf.seed)
    result = samuel_multiplicity(query, rng)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "multiplicity",
        "input": str(args.file),
        "digest": file_digest(args.file),
        "seed": pf.seed,
        "field": repr(pf.ring.field),
        "results": {
            "multiplicity": _json_value(result.value),
            "method": result.method,
            "local_dim": query.local_dim,
            "stabilization_exponent": result.stabilization_exponent,
        },
        "trace": [[s, _json_value(v)] for s, v in result.trials],
        "versions": {"package": __version__},
    }
    lines = [
        f"multiplicity = {result.value}  (method {result.method}, "
        f"local dim {query.local_dim})",
        "trials: " + ", ".join(f"seed {s}: {v}" for s, v in result.trials),
    ]
    if pf.genus is not None:
        implied = math.factorial(pf.genus) - result.value
        payload["results"]["implied_gauss_degree"] = implied
        lines.append(
            f"implied Gauss-map degree if this is the only singular component: "
            f"{math.factorial(pf.genus)} - {result.value} = {implied}"
        )
    if args.cross_check and query.center_ideal is None:
        scheme = Ideal(pf.ring, list(pf.ideal_gens) + list(pf.system))
        groebner_len = staircase_count(scheme.groebner())
        macaulay_len = macaulay_colength(scheme)
        local_len = colength_at_point(scheme, query.center)
        if groebner_len != macaulay_len:
            raise DisagreementError(
                f"staircase colength {groebner_len} != Macaulay colength {macaulay_len}"
            )
        cross = {
            "scheme_colength_groebner": _json_value(groebner_len),
            "scheme_colength_macaulay": _json_value(macaulay_len),
            "scheme_colength_local": _json_value(local_len),
        }
        # the Hilbert-function route grows target powers; keep it to small cases
        depth = query.local_dim + 2
        power_size = math.comb(len(query.target) + depth - 1, depth)
        if power_size <= 200:
            hs = hilbert_samuel_multiplicity(query, T=depth)
            if hs.value != result.value:
                raise DisagreementError(
                    f"Hilbert-Samuel value {hs.value} != generic reduction {result.value}"
                )
            cross["hilbert_samuel"] = _json_value(hs.value)
            hs_text = f"hilbert-samuel {hs.value}"
        else:
            hs_text = "hilbert-samuel skipped (power ideal too large)"
        payload["results"]["cross_check"] = cross
        lines.append(
            f"cross-check: {hs_text}; scheme colength "
            f"groebner/macaulay/local = {groebner_len}/{macaulay_len}/{local_len}"
        )
    _report(payload, args.json, lines)
    return 0


def _parse_component(text: str):
    parts = text.split(",")
    if len(parts) < 3:
        raise ParseError(f"--component needs d,m,deg[,flag...]: {text!r}")
    d, m, deg = int(parts[0]), int(parts[1]), int(parts[2])
    flags = tuple(p.strip() for p in parts[3:] if p.strip())
    return (d, m, deg, flags)


def cmd_bounds(args) -> int:
    g = args.g
    results = {}
    lines = []
    rows = []
    if args.profile:
        pf = load_problem(args.profile)
        spec = pf.singularity_profile()
        if pf.genus != g:
            raise ParseError(f"profile file genus {pf.genus} != argument {g}")
        rows = list(pf.profile_rows)
    if args.component:
        rows.extend(_parse_component(c) for c in args.component)
    if rows:
        report = bounds_mod.multbound_check(
            bounds_mod.profile(g, rows), gauss_degree=args.gauss_degree
        )
        results["profile_check"] = {
            "lhs": report.lhs,
            "rhs": report.rhs,
            "feasible": report.feasible,
            "implied_max_gauss_degree": report.implied_max_gauss_degree,
            "rule": report.rule,
        }
        verdict = "feasible" if report.feasible else "infeasible"
        lines.append(
            f"profile check: lhs {report.lhs} vs rhs {report.rhs}: {verdict} "
            f"(rule {report.rule}; max possible Gauss degree {report.implied_max_gauss_degree})"
        )
        lines.append("  note: " + report.footnotes[0])
    if args.max_isolated:
        value = bounds_mod.max_isolated_points(g)
        results["max_isolated_points"] = value
        lines.append(f"max isolated singular points: {value}")
    if args.max_multiplicity:
        value = bounds_mod.max_isolated_multiplicity(g)
        results["max_isolated_multiplicity"] = value
        lines.append(f"max isolated-point multiplicity: {value}")
    if args.known_degrees:
        table = bounds_mod.known_degrees(g)
        results["known_degrees"] = table
        lines.append(bounds_mod.table_text(table))
    if args.theta_nulls is not None:
        value = bounds_mod.genus4_degree(args.theta_nulls)
        results["fourfold_degree"] = value
        lines.append(
            f"fourfold with {args.theta_nulls} vanishing theta-nulls: degree {value}"
        )
    if args.smooth_codim1:
        report = bounds_mod.smooth_in_codim1_check(g)
        results["smooth_in_codim1"] = {
            "lhs": report.lhs,
            "rhs": report.rhs,
            "feasible": report.feasible,
        }
        lines.append(
            f"codimension-one component: {report.lhs} > {report.rhs}, impossible "
            "(theta divisors are smooth in codimension one here)"
        )
    if args.strata:
        table = bounds_mod.strata_tables(g)
        results["strata"] = [dataclasses.asdict(s) for s in table]
        for s in table:
            lines.append(f"G_{s.max_degree}: {s.description}: " + "; ".join(s.components))
    if not results:
        raise ParseError("bounds: nothing requested (see --help)")
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "bounds",
        "input": f"g={g}",
        "seed": None,
        "field": "ZZ",
        "results": results,
        "versions": {"package": __version__},
    }
    _report(payload, args.json, lines)
    return 0


def cmd_examples(args) -> int:
    from .corpus import render_results, run_all

    results = run_all(seed=args.seed if args.seed is not None else 1)
    if args.json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "examples",
            "results": [
                {
                    "name": r.name,
                    "ok": r.ok,
                    "details": r.details,
                    "seconds": round(r.seconds, 3),
                }
                for r in results
            ],
            "versions": {"package": __version__},
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(render_results(results))
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcycles",
        description=(
            "exact discrepancy and degree computations for rational maps "
            "given by linear systems, with Samuel multiplicities and "
            "theta-divisor singularity bounds"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_degree = sub.add_parser("degree", help="run the intersection algorithm on a problem file")
    p_degree.add_argument("file")
    p_degree.add_argument("--seed", type=int, default=None)
    p_degree.add_argument("--field", default=None, help="q (default) or fp:<prime>")
    p_degree.add_argument("--prime", type=int, default=DEFAULT_PRIME,
                          help="verification prime for the modular run")
    p_degree.add_argument("--no-verify", action="store_true",
                          help="skip the second-seed and modular verification runs")
    p_degree.add_argument("--json", action="store_true")
    p_degree.set_defaults(fn=cmd_degree)

    p_mult = sub.add_parser("multiplicity", help="Samuel multiplicity at the file's center")
    p_mult.add_argument("file")
    p_mult.add_argument("--seed", type=int, default=None)
    p_mult.add_argument("--cross-check", action="store_true",
                        help="also run the Hilbert-Samuel and Macaulay paths")
    p_mult.add_argument("--json", action="store_true")
    p_mult.set_defaults(fn=cmd_multiplicity)

    p_bounds = sub.add_parser("bounds", help="singularity bounds and degree tables")
    p_bounds.add_argument("g", type=int)
    p_bounds.add_argument("--component", action="append", default=[],
                          metavar="d,m,deg[,flag...]")
    p_bounds.add_argument("--profile", default=None, help="profile file")
    p_bounds.add_argument("--gauss-degree", type=int, default=None)
    p_bounds.add_argument("--max-isolated", action="store_true")
    p_bounds.add_argument("--max-multiplicity", action="store_true")
    p_bounds.add_argument("--known-degrees", action="store_true")
    p_bounds.add_argument("--theta-nulls", type=int, default=None, metavar="K")
    p_bounds.add_argument("--smooth-codim1", action="store_true")
    p_bounds.add_argument("--strata", action="store_true")
    p_bounds.add_argument("--json", action="store_true")
    p_bounds.set_defaults(fn=cmd_bounds)

    p_examples = sub.add_parser("examples", help="regression corpus")
    p_examples.add_argument("action", choices=["run-all"])
    p_examples.add_argument("--seed", type=int, default=None)
    p_examples.add_argument("--json", action="store_true")
    p_examples.set_defaults(fn=cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonDominantError as exc:
        print(f"non-dominant input: {exc}", file=sys.stderr)
        return EXIT_NON_DOMINANT
    except GenericityError as exc:
        print(f"genericity failure: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except DisagreementError as exc:
        print(f"verification disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except VcyclesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
