"""Command line entry point: ``hopf-spectra <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .betti import betti_regular_locus
from .graph import (
    DEFAULT_THETAS,
    GraphCurve,
    ThetaConfig,
    classify,
    profile,
    ramification_report,
)
from .linsys import (
    DimensionAnomaly,
    GeneralMemberError,
    LinearSystemError,
    construct_max_weight,
    construct_profile,
    construct_tangency_stratum,
)
from .spectral import genus_parity_check, irreducible_factors, linear_root, spectral_invariants
from .survey import survey
from .verify import run_all

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("HOPF_SPECTRA_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"HOPF_SPECTRA_SEED must be an integer, got {raw!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}")


def load_curve(path: str) -> GraphCurve:
    try:
        return GraphCurve.from_json(_load_json(path))
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"malformed curve in {path}: {exc}")


def load_thetas(path: str | None) -> ThetaConfig:
    if path is None:
        return DEFAULT_THETAS
    try:
        return ThetaConfig.from_json(_load_json(path))
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"malformed theta config in {path}: {exc}")


def analyze(D: GraphCurve, T: ThetaConfig = DEFAULT_THETAS) -> dict:
    """Full report for one curve; non-smooth curves get a jump verdict instead."""
    report = {"curve": D.to_json(), "thetas": T.to_json()["thetas"], "smooth": D.smooth}
    if not D.smooth:
        gcd = D.vertical_components()
        roots = _rational_roots(gcd)
        where = ", ".join(str(r) for r in roots) if roots else str(gcd)
        report["verdict"] = f"has jumps: vertical component at {where}"
        report["vertical_components"] = gcd.to_json()
        return report
    report["profiles"] = [profile(D, a).to_json() for a in T]
    report["classification"] = classify(D, T).to_json()
    if D.n >= 2:
        report["ramification"] = ramification_report(D, T).to_json()
    S = spectral_invariants(D, T)
    report["spectral"] = S.to_json()
    report["spectral"]["parity_check"] = genus_parity_check(S)
    return report


def _rational_roots(f) -> list:
    return [linear_root(g) for g in irreducible_factors(f) if g.degree == 1]


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_analyze(args) -> int:
    _emit(analyze(load_curve(args.curve), load_thetas(args.thetas)))
    return EXIT_OK


def cmd_construct(args) -> int:
    T = load_thetas(args.thetas)
    seed = args.seed if args.seed is not None else default_seed()
    if args.kind == "profile":
        c = construct_profile(args.theta, _int_list(args.profile), args.n, seed=seed, T=T,
                              max_attempts=args.max_attempts)
    elif args.kind == "tangency":
        c = construct_tangency_stratum(_int_list(args.pattern), args.n, seed=seed, T=T,
                                       max_attempts=args.max_attempts)
    else:
        c = construct_max_weight(args.i1, args.i2, args.n, seed=seed, T=T,
                                 max_attempts=args.max_attempts)
    _emit({"seed": seed, **c.to_json()})
    return EXIT_OK


def cmd_survey(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    if args.n < 2 or args.samples < 1:
        raise InputError("survey needs --n >= 2 and --samples >= 1")
    stats = survey(args.n, args.samples, args.bound, seed, jobs=args.jobs)
    if args.csv:
        sys.stdout.write(stats.to_csv())
    else:
        _emit(stats.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    if not 2 <= args.n_min <= args.n_max:
        raise InputError("need 2 <= --n-min <= --n-max")
    results = run_all(args.n_min, args.n_max, seed, samples=args.samples,
                      survey_samples=args.survey_samples)
    matrix: dict[str, dict[str, bool]] = {}
    for r in results:
        matrix.setdefault(str(r.n), {})[r.name] = r.passed
    failed = [r.to_json() for r in results if not r.passed]
    _emit({"seed": seed, "passed": not failed, "matrix": matrix, "failures": failed})
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_betti(args) -> int:
    try:
        out = betti_regular_locus(args.n, _int_list(args.betti_a))
    except ValueError as exc:
        raise InputError(str(exc))
    _emit({"n": args.n, "betti_a": _int_list(args.betti_a), "betti": out})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopf-spectra",
        description="Profiles, weights and spectral invariants of bidegree (n,1) graph curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report on one curve")
    p.add_argument("--curve", required=True, help="curve JSON file")
    p.add_argument("--thetas", help="theta config JSON file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build a witness curve for a stratum")
    kinds = p.add_subparsers(dest="kind", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--seed", type=int)
    common.add_argument("--thetas")
    common.add_argument("--max-attempts", type=int, default=64)
    k = kinds.add_parser("profile", parents=[common], help="prescribed restricted profile")
    k.add_argument("--theta", type=int, required=True)
    k.add_argument("--profile", required=True, help='e.g. "3,2"')
    k = kinds.add_parser("tangency", parents=[common], help="simple tangency to listed thetas")
    k.add_argument("--pattern", required=True, help='e.g. "1,2"')
    k = kinds.add_parser("maxweight", parents=[common], help="profile (n) at two thetas")
    k.add_argument("--i1", type=int, default=1)
    k.add_argument("--i2", type=int, default=2)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("survey", help="random sampling statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--survey-samples", type=int, default=50)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("betti", help="Betti numbers of the regular locus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--betti-a", required=True, help='e.g. "1,1"')
    p.set_defaults(func=cmd_betti)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, LinearSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GeneralMemberError, DimensionAnomaly) as exc:
        diag = getattr(exc, "diagnostics", None)
        print(f"error: {exc}" + (f"\n{json.dumps(diag)}" if diag else ""), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
