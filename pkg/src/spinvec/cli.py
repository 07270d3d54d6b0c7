"""Command line front end.

    spinvec single --j 1/2 --m 1/2
    spinvec couple --n 2 --j 1 --m 0 [--path 1,2] [--sample 100000]
    spinvec sample --n 2 --j 0 --m 0 --axis x --samples 1000000
    spinvec paper-table [--tolerance 1e-10]

Global flags ``--json``, ``--tolerance`` and ``--seed`` go before or after
the subcommand. Exit codes: 0 success, 2 usage error, 3 a numerical check
failed.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from .analysis import VerificationError, vector_sum_report
from .composite import MAX_SITES, SpinSystem, total_component, total_j_squared
from .coupling import CoupledState, coupled_state, single_spin_state
from .golden import run_checks
from .linalg import ATOL, DimensionError
from .sampler import DEFAULT_SAMPLES, compare_moments, estimate_moments, exact_moments, sample
from .schema import SCHEMA_VERSION
from .spin_ops import AXES, format_half, parse_quantum_number

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 2, 3
DEFAULT_TOLERANCE = ATOL
SIGMAS = 5.0


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # subparsers suppress their defaults so flags given before the subcommand survive
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=default(False),
                   help="print one JSON document instead of text")
    p.add_argument("--tolerance", type=float, default=default(DEFAULT_TOLERANCE),
                   help="absolute tolerance of numerical checks (default 1e-10)")
    p.add_argument("--seed", type=int, default=default(0), help="sampler seed (default 0)")
    return p


def _add_state_args(p: argparse.ArgumentParser, with_n: bool) -> None:
    if with_n:
        p.add_argument("--n", type=int, required=True, help=f"number of spin-1/2 sites (1..{MAX_SITES})")
    p.add_argument("--j", help='total angular momentum, e.g. "1", "3/2"')
    p.add_argument("--m", help='projection, e.g. "-1/2"')
    p.add_argument("--twice-j", type=int, help="2j as an integer (alternative to --j)")
    p.add_argument("--twice-m", type=int, help="2m as an integer (alternative to --m)")
    if with_n:
        p.add_argument("--path", help="coupling path: comma-separated 2j after each site, e.g. 1,2,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinvec",
        description="Vector model of angular momentum: projections, fluctuations and "
                    "correlations of coupled spins. Angular momentum in units of hbar.",
        parents=[_common_flags(suppress=False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags(suppress=True)

    p = sub.add_parser("single", parents=[common], help="report for one spin-j particle")
    _add_state_args(p, with_n=False)

    p = sub.add_parser("couple", parents=[common], help="report for |j,m> of N spin-1/2 particles")
    _add_state_args(p, with_n=True)
    p.add_argument("--sample", type=int, metavar="N", help="also sample N measurements per axis")

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo check along one axis")
    _add_state_args(p, with_n=True)
    p.add_argument("--axis", choices=AXES, default="x")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)

    sub.add_parser("paper-table", parents=[common], help="reproduce every headline value")
    return parser


def _quantum_numbers(args, parser) -> tuple[int, int]:
    def pick(text, twice, name):
        if text is not None and twice is not None:
            parser.error(f"give either --{name} or --twice-{name}, not both")
        if twice is not None:
            return twice
        if text is None:
            parser.error(f"--{name} (or --twice-{name}) is required")
        try:
            return parse_quantum_number(text)
        except ValueError as exc:
            parser.error(str(exc))

    return pick(args.j, args.twice_j, "j"), pick(args.m, args.twice_m, "m")


def _state_from_args(args, parser) -> CoupledState:
    twice_j, twice_m = _quantum_numbers(args, parser)
    try:
        if args.command == "single":
            if twice_j <= 0:
                parser.error("a single particle needs j > 0")
            return single_spin_state(twice_j, twice_m)
        path = None
        if args.path:
            try:
                path = [int(v) for v in args.path.split(",")]
            except ValueError:
                parser.error(f"--path must be comma-separated integers, got {args.path!r}")
        return coupled_state(SpinSystem(args.n), twice_j, twice_m, path)
    except (ValueError, DimensionError) as exc:
        parser.error(str(exc))


def _state_checks(state: CoupledState, report, tol: float) -> list[dict]:
    j, m = state.twice_j / 2, state.twice_m / 2
    jz = total_component("z", state.system).expectation(state).real
    rows = [
        ("<J^2> = j(j+1)", j * (j + 1), total_j_squared(state.system, state)),
        ("<Jz> = m", m, jz),
        ("composed vector = choice B (residual)", 0.0, report.composition_residual),
        ("sum of budgets = choice B magnitude^2",
         report.magnitude_b_sq,
         sum(b.total for b in report.budgets.values()) + float(report.projection_sum @ report.projection_sum)),
    ]
    out = []
    for name, expected, computed in rows:
        delta = abs(float(computed) - expected)
        out.append({"name": name, "expected": float(expected), "computed": float(computed),
                    "delta": delta, "tolerance": tol, "passed": delta <= tol})
    return out


def _sampler_section(state: CoupledState, axes, n_samples: int, seed: int) -> dict:
    section = {"n_samples": n_samples, "seed": seed, "sigmas": SIGMAS, "axes": {}}
    ok = True
    for axis in axes:
        exact = exact_moments(state, axis, n_samples)
        empirical = estimate_moments(sample(state, axis, n_samples, seed))
        rows = compare_moments(exact, empirical, SIGMAS)
        ok &= all(r["within_tolerance"] for r in rows)
        section["axes"][axis] = {"exact": exact.to_dict(), "empirical": empirical.to_dict(),
                                 "comparison": rows}
    section["all_within_tolerance"] = ok
    return section


def _document(command: str, request: dict, **body) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "units": "hbar",
            "request": request, **body}


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    return f"{x:.10g}"


def _print_report_text(doc: dict, out) -> None:
    r = doc["report"]
    print(f"# {doc['command']}: N={r['n_sites']} site j={r['site_j']}  |j,m> = |{r['j']}, {r['m']}>"
          f"  ({r['provenance']}{', path ' + ','.join(map(str, r['coupling_path'])) if r['coupling_path'] else ''})",
          file=out)
    print("# angular momentum in units of hbar", file=out)
    print(f"{'axis':<6}{'choice A':>14}{'choice B':>14}{'class':>13}"
          f"{'var J':>14}{'site vars':>14}{'2*sum cov':>14}  correlation", file=out)
    for n, axis in enumerate(AXES):
        b = r["noise_budgets"][axis]
        print(f"{axis:<6}{_fmt(r['choice_a'][n]):>14}{_fmt(r['choice_b'][n]):>14}"
              f"{r['classification'][axis]:>13}{_fmt(b['total']):>14}"
              f"{_fmt(b['uncorrelated_part']):>14}{_fmt(b['correlation_part']):>14}  "
              f"{b['correlation_class']}", file=out)
    print(f"choice A magnitude^2     {_fmt(r['magnitude_a_sq'])}", file=out)
    print(f"choice B magnitude^2     {_fmt(r['magnitude_b_sq'])}", file=out)
    print(f"<J^2>                    {_fmt(r['j_squared'])}", file=out)
    print(f"effective unit           {_fmt(r['effective_unit'])}", file=out)
    if r["n_sites"] > 1:
        print("per-particle vectors:", file=out)
        for i, (v, rule) in enumerate(zip(r["particle_vectors"], r["z_sign_rules"]), start=1):
            print(f"  S{i} = {_fmt(v)}  (z sign: {rule})", file=out)
        for axis in AXES:
            c = r["correlations"][axis]
            pairs = [f"<S{axis}{i + 1} S{axis}{k + 1}>={_fmt(c[i][k])}"
                     for i in range(len(c)) for k in range(i + 1, len(c))]
            print(f"  pair terms {axis}: " + ", ".join(pairs), file=out)
        print(f"composed vector          {_fmt(r['composed'])}  magnitude^2 {_fmt(r['composed_sq'])}",
              file=out)
        print(f"naive direct sum         {_fmt(r['naive_sum'])}  magnitude^2 {_fmt(r['naive_sq'])}",
              file=out)
    _print_checks_text(doc["checks"], out)
    if "sampler" in doc:
        _print_sampler_text(doc["sampler"], out)


def _print_checks_text(items, out) -> None:
    for item in items:
        status = "PASS" if item["passed"] else "FAIL"
        print(f"[{status}] {item['name']}: expected {_fmt(item['expected'])}, "
              f"got {_fmt(item['computed'])} (delta {item['delta']:.3g}, tol {item['tolerance']:g})",
              file=out)


def _print_sampler_text(section: dict, out) -> None:
    print(f"sampler: n={section['n_samples']} seed={section['seed']} "
          f"tolerance {section['sigmas']:g} standard errors", file=out)
    for axis, data in section["axes"].items():
        for row in data["comparison"]:
            status = "ok " if row["within_tolerance"] else "OFF"
            print(f"  [{status}] {row['quantity']:<18} exact {_fmt(row['exact']):>14}  "
                  f"sampled {_fmt(row['empirical']):>14}  se {_fmt(row['standard_error'])}", file=out)


_SIGNED_FLAGS = ("--j", "--m", "--twice-j", "--twice-m")
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse takes "-1/2" for an option; "--m -1/2" becomes "--m=-1/2"
    out: list[str] = []
    for token in argv:
        if out and out[-1] in _SIGNED_FLAGS and _NEGATIVE.match(token):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    tol, seed = args.tolerance, args.seed
    if not 0 <= seed < 2**64:
        parser.error("--seed must be a non-negative 64-bit integer")

    if args.command == "paper-table":
        results = run_checks(tol)
        doc = _document("paper-table", {"tolerance": tol},
                        items=[r.to_dict() for r in results],
                        all_passed=all(r.passed for r in results))
        if args.json:
            print(json.dumps(doc), file=out)
        else:
            print("# golden values, angular momentum in units of hbar", file=out)
            _print_checks_text(doc["items"], out)
            print(f"{sum(r.passed for r in results)}/{len(results)} passed", file=out)
        return EXIT_OK if doc["all_passed"] else EXIT_VERIFY

    state = _state_from_args(args, parser)
    request = {"n_sites": state.system.n_sites, "j": format_half(state.twice_j),
               "m": format_half(state.twice_m), "path": args.__dict__.get("path"),
               "tolerance": tol, "seed": seed}

    if args.command == "sample":
        if args.samples < 2:
            parser.error("--samples must be at least 2")
        request.update(axis=args.axis, samples=args.samples)
        section = _sampler_section(state, [args.axis], args.samples, seed)
        doc = _document("sample", request, state={
            "n_sites": state.system.n_sites, "j": format_half(state.twice_j),
            "m": format_half(state.twice_m), "coupling_path": list(state.coupling_path),
            "provenance": state.provenance}, sampler=section)
        if args.json:
            print(json.dumps(doc), file=out)
        else:
            print(f"# sample: N={state.system.n_sites} {state.label}, axis {args.axis}", file=out)
            _print_sampler_text(section, out)
        return EXIT_OK if section["all_within_tolerance"] else EXIT_VERIFY

    try:
        report = vector_sum_report(state)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    checks = _state_checks(state, report, tol)
    body = {"report": report.to_dict(), "checks": checks}
    passed = all(c["passed"] for c in checks)
    if args.command == "couple" and args.sample:
        if args.sample < 2:
            parser.error("--sample must be at least 2")
        request["sample"] = args.sample
        body["sampler"] = _sampler_section(state, AXES, args.sample, seed)
        passed &= body["sampler"]["all_within_tolerance"]
    doc = _document(args.command, request, **body)
    if args.json:
        print(json.dumps(doc), file=out)
    else:
        _print_report_text(doc, out)
    return EXIT_OK if passed else EXIT_VERIFY


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
