"""Command-line frontend.

Subcommands: ``validate``, ``cohomology``, ``check``, ``search``, ``certify``,
``reproduce``, ``check-identities``.  Fixtures are file paths (DSL, JSON, or a
Salamon tuple) or catalog references written ``@name``.  Exit codes: 0 for
success/witness/valid, 1 internal error, 2 validation failure or a failed
check, 3 certified nonexistence where existence was queried, 4 unknown,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import load_spec_text, parse_form, validate_spec
from .catalog import UnknownFixture, load_catalog
from .certificates import certificate_check, load_certificate, shipped_certificate_names
from .cohomology import THEORIES, cohomology_dims
from .expr import parse_scalar
from .feasibility import (MODES, build_ansatz, positivity_check,
                          residual_conformal, residual_pluriclosed,
                          witness_search)
from .library import base_fixture_name, witness_candidates
from .reports import emit_report
from .scalars import EMPTY_REGISTRY, GaussRat
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_CERTIFIED = 3
EXIT_UNKNOWN = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_params(pairs: list[str]) -> dict[str, GaussRat]:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValueError(f"--param expects name=value, got {pair!r}")
        name, value = pair.split("=", 1)
        out[name.strip()] = parse_scalar(value, EMPTY_REGISTRY).const_value()
    return out


def _load_spec(ref: str, params: dict[str, GaussRat]):
    if ref.startswith("@"):
        return load_catalog(ref[1:], **params)
    with open(ref, "r", encoding="utf-8") as fh:
        spec = load_spec_text(fh.read())
    if params:
        spec = spec.instantiate(params)
    return spec


def cmd_validate(args) -> int:
    spec = _load_spec(args.spec, _parse_params(args.param))
    rep = validate_spec(spec)
    obj = {"fixture": spec.name or args.spec,
           "jacobi_valid": rep.jacobi_valid,
           "integrable": rep.integrable,
           "unimodular": rep.unimodular,
           "nilpotent": rep.nilpotent,
           "abelian_J": rep.abelian_J,
           "failures": rep.failures}
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_cohomology(args) -> int:
    spec = _load_spec(args.spec, _parse_params(args.param))
    theta = parse_form(args.theta, spec.frame, spec.params) if args.theta else None
    rep = cohomology_dims(spec, args.theory, theta)
    obj = {"fixture": spec.name or args.spec, "theory": args.theory,
           "dimensions": dict(rep.as_sorted_items())}
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        print(f"{args.theory} dimensions of {obj['fixture']}:")
        for key, value in rep.as_sorted_items():
            print(f"  {key:>6}: {value}")
    return EXIT_OK


def cmd_check(args) -> int:
    spec = _load_spec(args.spec, _parse_params(args.param))
    if args.omega is None:
        raise ValueError("check needs --omega (and optionally --theta)")
    omega = parse_form(args.omega, spec.frame, spec.params)
    theta = parse_form(args.theta, spec.frame, spec.params) if args.theta \
        else parse_form("0", spec.frame)
    n = spec.frame.n
    power = {"lcK": 1, "lcht": 1, "kahler": 1, "lcb": n - 1, "balanced": n - 1}.get(args.structure)
    if args.structure == "pluriclosed":
        ok_res = residual_pluriclosed(spec, omega).is_empty()
    elif args.structure == "kGauduchon":
        from .feasibility import k_gauduchon_scalar
        ok_res = k_gauduchon_scalar(spec, omega, args.k).is_zero()
    elif power is not None:
        ok_res = residual_conformal(spec, omega, theta, power).is_empty()
    else:
        raise ValueError(f"cannot check structure {args.structure!r} directly")
    profile, positive = positivity_check(omega)
    obj = {"fixture": spec.name or args.spec, "structure": args.structure,
           "residual_empty": ok_res, "positive": positive,
           "minors": [str(m.const_value()) for m in profile.minors]}
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")) if args.format == "json"
          else "\n".join(f"{k}: {v}" for k, v in obj.items()))
    return EXIT_OK if (ok_res and positive) else EXIT_INVALID


def cmd_search(args) -> int:
    params = _parse_params(args.param)
    spec = _load_spec(args.spec, params)
    ansatz = build_ansatz(spec, args.structure)
    # consult the shipped certificates first: a validated proof settles it
    base = base_fixture_name(spec)
    for cname in shipped_certificate_names():
        cert = load_certificate(cname)
        from .certificates import certificate_mode
        if cert["fixture"] != base or certificate_mode(cert) != args.structure:
            continue
        cert_params = {k: parse_scalar(v, EMPTY_REGISTRY).const_value()
                       for k, v in cert.get("params", {}).items()}
        if cert_params and any(params.get(k) != v for k, v in cert_params.items()):
            continue
        if cert.get("assume_nonzero") and not cert_params:
            hyptext = ", ".join(cert["assume_nonzero"])
            assumed = all(_hypothesis_holds(h, params) for h in cert["assume_nonzero"])
            if not assumed:
                continue
        else:
            hyptext = ""
        from .certificates import build_system_for_certificate
        cspec, cansatz, _ = build_system_for_certificate(cert)
        if certificate_check(cspec, cansatz, cert).valid:
            obj = {"status": "CERTIFIED_NONEXISTENCE", "certificate": cname}
            if hyptext:
                obj["hypotheses"] = hyptext
            print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
            return EXIT_CERTIFIED
    cands = witness_candidates(spec, ansatz, params)
    w = witness_search(spec, ansatz, budget=args.budget, seed=args.seed,
                       suggested=cands)
    if w is None:
        print(json.dumps({"status": "UNKNOWN"}, sort_keys=True, separators=(",", ":")))
        return EXIT_UNKNOWN
    obj = {"status": "WITNESS", "assignment": w.as_strings(), "theta": str(w.theta),
           "minors": [str(m) for m in w.minors]}
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    return EXIT_OK


def _hypothesis_holds(expr_text: str, params: dict[str, GaussRat]) -> bool:
    try:
        reg = EMPTY_REGISTRY
        for name in params:
            reg = reg.with_complex(name)
        value = parse_scalar(expr_text, reg).evaluate(params, check_constraints=False)
        return value.is_const() and bool(value.const_value())
    except Exception:
        return False


def cmd_certify(args) -> int:
    cert = load_certificate(args.certificate)
    spec = _load_spec(args.spec, _parse_params(args.param)) if args.spec != "@auto" else None
    if spec is None:
        from .certificates import check_certificate
        res = check_certificate(cert)
    else:
        from .certificates import certificate_mode
        ansatz = build_ansatz(spec, certificate_mode(cert),
                              reduce_offdiag=cert.get("reduce_offdiag", False))
        res = certificate_check(spec, ansatz, cert)
    obj = {"certificate": cert.get("name", args.certificate), "valid": res.valid}
    if not res.valid:
        obj["failure"] = str(res.failure)
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    return EXIT_OK if res.valid else EXIT_INVALID


def cmd_reproduce(args) -> int:
    if not args.suite:
        raise SystemExit(EXIT_USAGE)
    report = run_suite(args.suite, seed=args.seed)
    sys.stdout.write(emit_report(report, args.format))
    return EXIT_OK if report.all_expected() else EXIT_INVALID


def cmd_check_identities(args) -> int:
    report = run_suite("lefschetz", seed=args.seed)
    sys.stdout.write(emit_report(report, args.format))
    return EXIT_OK if report.all_expected() else EXIT_INVALID


def build_parser() -> _Parser:
    parser = _Parser(prog="invarforms",
                     description="exact invariant exterior calculus workbench")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"),
                       default=argparse.SUPPRESS)

    p = sub.add_parser("validate", help="validate a structure-equation file")
    p.add_argument("spec")
    p.add_argument("--param", action="append", default=[])
    add_format(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("cohomology", help="dimension tables of the invariant complexes")
    p.add_argument("spec")
    p.add_argument("--theory", choices=THEORIES, required=True)
    p.add_argument("--theta", default=None)
    p.add_argument("--param", action="append", default=[])
    add_format(p)
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("check", help="verify explicit structure data")
    p.add_argument("spec")
    p.add_argument("--structure", choices=MODES, required=True)
    p.add_argument("--omega", default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--k", type=int, default=1, help="degree for kGauduchon checks")
    p.add_argument("--param", action="append", default=[])
    add_format(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("search", help="search for a witness")
    p.add_argument("spec")
    p.add_argument("--structure", choices=MODES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--param", action="append", default=[])
    add_format(p)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("certify", help="validate a nonexistence certificate")
    p.add_argument("spec", help="fixture reference, or @auto to use the certificate header")
    p.add_argument("certificate")
    p.add_argument("--param", action="append", default=[])
    add_format(p)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("reproduce", help="run a reproduction suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(fn=cmd_reproduce)

    p = sub.add_parser("check-identities", help="operator identity pass/fail matrix")
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(fn=cmd_check_identities)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UnknownFixture, FileNotFoundError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # pragma: no cover - internal errors
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
