"""Command-line front end.

Exit codes: 0 success, 1 usage or schema error, 2 inconclusive points
present, 3 internal inconsistency (invalid algebra, nonzero square of the
differential).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import alexander_modules as am
from . import corpus
from . import invariant_pipeline as pipeline
from . import laurent_ring as lr
from . import residue_systems as rs
from .aomoto_complex import cohomology_dims, validate_algebra
from .errors import (
    AlgebraInvalidError,
    DimensionError,
    InconclusiveSearchError,
    InconsistentDifferentialError,
    ParseError,
    SchemaError,
)
from .exact_kernel import (
    cyclotomic_poly,
    divisors,
    euler_phi,
    format_rational,
    parse_rational,
)
from .invariant_pipeline import compact_univariate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INCONSISTENT = 3


@dataclass
class Report:
    command: list
    digest: str
    results: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "digest": self.digest,
            "results": self.results,
            "warnings": self.warnings,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [
            "command: " + " ".join(self.command),
            "digest: " + self.digest,
        ]
        lines.extend(_flatten("results", self.results))
        for w in self.warnings:
            lines.append("warning: " + w)
        return "\n".join(lines)


def _flatten(prefix: str, value) -> list[str]:
    if isinstance(value, dict):
        out = []
        for key, sub in value.items():
            out.extend(_flatten(f"{prefix}.{key}", sub))
        return out
    if isinstance(value, list):
        rendered = ", ".join(_render_scalar(x) for x in value)
        return [f"{prefix}: [{rendered}]"]
    return [f"{prefix}: {_render_scalar(value)}"]


def _render_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    return str(value)


def _digest_file(path: str) -> str:
    with open(path, "rb") as handle:
        return "sha256:" + hashlib.sha256(handle.read()).hexdigest()


def _resolve_scenario_path(token: str) -> str:
    if os.path.exists(token):
        return token
    try:
        return corpus.bundled_scenario_path(token)
    except KeyError:
        raise SchemaError("", f"scenario file or bundled name not found: {token!r}")


def _parse_fraction_list(text: str, expect: int, what: str) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",")] if text else []
    try:
        values = tuple(parse_rational(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise SchemaError("", f"{what} must be a comma-separated list of rationals")
    if len(values) != expect:
        raise SchemaError("", f"{what} must have {expect} entries, got {len(values)}")
    return values


def _point_str(point: lr.TorsionPoint) -> str:
    return str(point)


# ---------------------------------------------------------------------------
# Factored display of univariate characteristic polynomials.


def format_charpoly(poly: lr.LaurentPoly) -> str:
    """Canonical text for a characteristic polynomial.

    Univariate polynomials are factored over cyclotomic polynomials by trial
    division, with complete ``t^e - 1`` groups recombined; whatever remains is
    printed expanded.  Multivariate polynomials are printed expanded.
    """
    if poly.is_zero:
        return "0"
    if poly.nvars != 1:
        return lr.format_poly(poly)
    work = lr.normalize_unit(poly)
    original_degree = work.max_exponents()[0]
    mults: dict[int, int] = {}
    # phi(k) >= sqrt(k) for k > 6, so cyclotomic factors of a degree-d
    # polynomial have index at most max(6, d^2).
    for k in range(1, max(6, original_degree * original_degree) + 1):
        if work.is_one:
            break
        if euler_phi(k) > work.max_exponents()[0]:
            continue
        phi_k = _cyclotomic_laurent(k)
        while True:
            quotient = lr.divide_exact(work, phi_k)
            if quotient is None:
                break
            work = lr.normalize_unit(quotient)
            mults[k] = mults.get(k, 0) + 1
    factors = []
    for e in range(original_degree, 0, -1):
        ds = divisors(e)
        if not all(mults.get(d, 0) > 0 for d in ds):
            continue
        count = min(mults[d] for d in ds)
        factors.append((e, count))
        for d in ds:
            mults[d] -= count
    parts = []
    for e, count in sorted(factors):
        base = "(t-1)" if e == 1 else f"(t^{e}-1)"
        parts.append(base + (f"^{count}" if count > 1 else ""))
    for d in sorted(mults):
        count = mults[d]
        if count > 0:
            base = "(" + compact_univariate(cyclotomic_poly(d)) + ")"
            parts.append(base + (f"^{count}" if count > 1 else ""))
    if not work.is_one:
        rest = _compact_univariate_poly(work)
        parts.append(f"({rest})" if parts else rest)
    return "*".join(parts) if parts else "1"


def _cyclotomic_laurent(k: int) -> lr.LaurentPoly:
    coeffs = cyclotomic_poly(k)
    return lr.LaurentPoly(1, {(e,): c for e, c in enumerate(coeffs)})


def _compact_univariate_poly(poly: lr.LaurentPoly) -> str:
    degree = poly.max_exponents()[0]
    coeffs = [poly.terms.get((e,), Fraction(0)) for e in range(degree + 1)]
    return compact_univariate(coeffs)


# ---------------------------------------------------------------------------
# Commands.


def _cmd_validate(args) -> Report:
    path = _resolve_scenario_path(args.scenario)
    report = Report(command=_echo(args), digest=_digest_file(path))
    scenario = pipeline.load_scenario(path, validate=False)
    violations = validate_algebra(scenario.algebra)
    if violations:
        raise AlgebraInvalidError(violations)
    report.results = {
        "name": scenario.name,
        "valid": True,
        "components": scenario.components,
        "degrees": list(scenario.degrees),
        "betti": list(pipeline.untwisted_betti(scenario)),
    }
    return report


def _load_for_compute(args) -> tuple[pipeline.Scenario, Report]:
    path = _resolve_scenario_path(args.scenario)
    scenario = pipeline.load_scenario(path)
    return scenario, Report(command=_echo(args), digest=_digest_file(path))


def _cmd_aomoto(args) -> Report:
    scenario, report = _load_for_compute(args)
    alpha = _parse_fraction_list(args.alpha, scenario.nparams, "--alpha")
    rho = rs.residues(scenario.residue_system, alpha)
    dims = cohomology_dims(scenario.algebra, scenario.one_form(alpha))
    admissible = rs.is_admissible(scenario.residue_system, alpha)
    report.results = {
        "alpha": [format_rational(a) for a in alpha],
        "admissible": admissible,
        "residues": {label: format_rational(v) for label, v in rho},
        "dims": list(dims),
    }
    return report


def _cmd_twisted(args) -> Report:
    scenario, report = _load_for_compute(args)
    beta = _parse_fraction_list(args.beta, scenario.nparams, "--beta")
    try:
        alpha = pipeline.admissible_representative(scenario, beta, args.bound)
        if alpha is None:
            raise InconclusiveSearchError(
                beta, scenario.effective_bound(args.bound), scenario.name
            )
        dims = cohomology_dims(scenario.algebra, scenario.one_form(alpha))
        report.results = {
            "beta": [format_rational(b) for b in beta],
            "alpha": [format_rational(a) for a in alpha],
            "dims": list(dims),
        }
    except InconclusiveSearchError as exc:
        report.results = {
            "beta": [format_rational(b) for b in beta],
            "alpha": None,
            "dims": None,
        }
        report.warnings.append(str(exc))
    return report


def _cmd_admissible(args) -> Report:
    scenario, report = _load_for_compute(args)
    beta = _parse_fraction_list(args.beta, scenario.nparams, "--beta")
    alpha = pipeline.admissible_representative(scenario, beta, args.bound)
    results = {
        "beta": [format_rational(b) for b in beta],
        "bound": scenario.effective_bound(args.bound),
        "found": alpha is not None,
    }
    if alpha is None:
        results["alpha"] = None
        report.warnings.append(
            "no admissible representative inside the search box; this does "
            "not certify non-admissibility"
        )
    else:
        results["alpha"] = [format_rational(a) for a in alpha]
        results["residues"] = {
            label: format_rational(v)
            for label, v in rs.residues(scenario.residue_system, alpha)
        }
    report.results = results
    return report


def _cmd_charvar(args) -> Report:
    scenario, report = _load_for_compute(args)
    scan = pipeline.charvar_scan(scenario, args.level, args.degree, args.bound)
    buckets = {
        str(dim): [_point_str(p) for p in points]
        for dim, points in scan.by_dimension.items()
    }
    report.results = {
        "level": args.level,
        "degree": args.degree,
        "total_points": args.level ** scenario.nparams,
        "buckets": buckets,
    }
    for point in scan.inconclusive:
        report.warnings.append(f"inconclusive at beta={_point_str(point)}")
    return report


def _cmd_milnor(args) -> Report:
    scenario, report = _load_for_compute(args)
    try:
        delta = pipeline.milnor_charpoly(scenario, args.m, args.bound)
    except InconclusiveSearchError as exc:
        report.results = {"m": args.m, "delta": None}
        report.warnings.append(str(exc))
        return report
    report.results = {
        "m": args.m,
        "order": delta.order,
        "multiplicities": list(delta.multiplicities),
        "degree": delta.degree,
        "delta": delta.factored_str(),
    }
    return report


def _cmd_module(args) -> Report:
    pres = am.load_presentation(args.presentation)
    report = Report(command=_echo(args), digest=_digest_file(args.presentation))
    if args.op == "charpoly":
        if args.i < 0:
            raise SchemaError("", "--i must be >= 0 for --op charpoly")
        poly = am.char_poly(pres, args.i)
        report.results = {
            "op": "charpoly",
            "i": args.i,
            "charpoly": format_charpoly(poly),
            "expanded": lr.format_poly(poly),
        }
    elif args.op == "support":
        if args.level is None:
            raise SchemaError("", "--level is required for --op support")
        points = am.support_scan(pres, args.level)
        report.results = {
            "op": "support",
            "level": args.level,
            "count": len(points),
            "points": [_point_str(p) for p in points],
        }
    elif args.op == "fitting":
        if args.level is None:
            raise SchemaError("", "--level is required for --op fitting")
        if args.i < 1:
            raise SchemaError("", "--i must be >= 1 for --op fitting")
        points = am.fitting_variety_scan(pres, args.i, args.level)
        report.results = {
            "op": "fitting",
            "i": args.i,
            "level": args.level,
            "count": len(points),
            "points": [_point_str(p) for p in points],
        }
    return report


def _echo(args) -> list:
    return list(args._argv)


# ---------------------------------------------------------------------------
# Argument parsing.


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alexinv",
        description=(
            "Exact Alexander invariants and twisted cohomology of "
            "hypersurface arrangement complements"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument(
            "--format",
            choices=("text", "json"),
            default="text",
            help="report format (default: text)",
        )

    def add_scenario(p):
        p.add_argument(
            "scenario",
            help="scenario file path or bundled scenario name "
            f"({', '.join(corpus.bundled_scenario_names())})",
        )

    p = sub.add_parser("validate", help="schema and algebra checks of a scenario")
    add_scenario(p)
    add_common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("aomoto", help="complex dimensions at explicit residues")
    add_scenario(p)
    p.add_argument("--alpha", required=True, help="comma-separated rationals")
    add_common(p)
    p.set_defaults(func=_cmd_aomoto)

    p = sub.add_parser("twisted", help="twisted cohomology at residue classes")
    add_scenario(p)
    p.add_argument("--beta", required=True, help="comma-separated rationals")
    p.add_argument("--bound", type=int, default=3, help="search box (default 3)")
    add_common(p)
    p.set_defaults(func=_cmd_twisted)

    p = sub.add_parser("admissible", help="search for admissible residues")
    add_scenario(p)
    p.add_argument("--beta", required=True, help="comma-separated rationals")
    p.add_argument("--bound", type=int, default=3, help="search box (default 3)")
    add_common(p)
    p.set_defaults(func=_cmd_admissible)

    p = sub.add_parser("charvar", help="jumping-locus scan over torsion points")
    add_scenario(p)
    p.add_argument("--level", type=int, required=True, help="torsion level N")
    p.add_argument("--degree", type=int, required=True, help="cohomology degree k")
    p.add_argument("--bound", type=int, default=3, help="search box (default 3)")
    add_common(p)
    p.set_defaults(func=_cmd_charvar)

    p = sub.add_parser("milnor", help="monodromy characteristic polynomial")
    add_scenario(p)
    p.add_argument("--m", type=int, required=True, help="cohomology degree")
    p.add_argument("--bound", type=int, default=3, help="search box (default 3)")
    add_common(p)
    p.set_defaults(func=_cmd_milnor)

    p = sub.add_parser("module", help="invariants of a presented module")
    p.add_argument("--presentation", required=True, help="presentation JSON file")
    p.add_argument(
        "--op", choices=("charpoly", "support", "fitting"), required=True
    )
    p.add_argument("--i", type=int, default=0, help="ideal/variety index")
    p.add_argument("--level", type=int, default=None, help="torsion level N")
    add_common(p)
    p.set_defaults(func=_cmd_module)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    args._argv = ["alexinv"] + argv
    try:
        report = args.func(args)
    except (SchemaError, ParseError, DimensionError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraInvalidError as exc:
        print(f"error: algebra invariants violated: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except InconsistentDifferentialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_INCONCLUSIVE if report.warnings else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
