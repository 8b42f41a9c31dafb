"""Command line front end: classify, truncate, verify, bound.

Exit codes: 0 success or suite pass, 1 suite failure, 2 input error,
3 internal invariant breach, 4 order cap exceeded. All reports are single
JSON lines so runs are byte-comparable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dedekind import TruncationParams
from .errors import OrderCapError, SpecError
from .extension import ExtensionTruncation, classify
from .power_aut import centralizer_bound, phi_order, pi0_pi1, symbolic_centralizer_order, M_value
from .specio import classification_report, load_spec_file, resolve_spec_token
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_CAP = 4


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")


def cmd_classify(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec_path)
    report = classification_report(spec)
    _emit(report)
    if report["classification"] == "invalid":
        print("invalid spec: " + "; ".join(report["violations"]), file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_truncate(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec_path)
    params = TruncationParams(args.depth, args.tail_primes)
    ext = ExtensionTruncation(spec, params)
    group = ext.cayley(name=args.spec_path)
    from .bruteforce import write_table

    write_table(group, args.out)
    _emit({"order": group.order, "faithful": ext.faithful, "out": args.out})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        print(
            f"unknown suite {args.suite!r}; available: {', '.join(sorted(SUITES))}",
            file=sys.stderr,
        )
        return EXIT_INPUT
    options: dict = {}
    if args.suite == "lemma32":
        options = {"p": args.p, "max_order": args.max_order}
    elif args.suite in ("prop22", "example21", "lucido"):
        options = {"max_order": args.max_order}
    elif args.suite in ("thm45", "cor42", "prop41"):
        options = {"spec": args.spec}
    report = run_suite(args.suite, **options)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_bound(args: argparse.Namespace) -> int:
    spec = load_spec_file(args.spec_path)
    report = classification_report(spec)
    if report["classification"] == "invalid":
        _emit(report)
        print("invalid spec: " + "; ".join(report["violations"]), file=sys.stderr)
        return EXIT_INPUT
    d, phi = spec.dedekind, spec.phi
    m = phi_order(phi, d)
    if m == 1:
        _emit({"m": 1, "per_k": {}, "note": "identity automorphism, no nontrivial powers"})
        return EXIT_OK
    pi0, pi1 = pi0_pi1(phi, d, m)
    per_k = {
        str(k): symbolic_centralizer_order(phi, d, k).to_json() for k in range(1, m)
    }
    result = classify(spec)
    payload = {
        "m": m,
        "pi0": list(pi0),
        "pi1": list(pi1),
        "M": M_value(d),
        "per_k": per_k,
        "centralizer_bound": centralizer_bound(phi, d, 1).to_json(),
        "global_bound": result.certificate.bound if result.is_fci else "infinite",
    }
    _emit(payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcigroups",
        description="Classify cyclic-over-Dedekind group specs and verify their "
        "centralizer bounds on finite truncations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="Classify a spec file and print its certificate.")
    p_classify.add_argument("spec_path")
    p_classify.set_defaults(func=cmd_classify)

    p_trunc = sub.add_parser("truncate", help="Write a finite truncation as a Cayley table file.")
    p_trunc.add_argument("spec_path")
    p_trunc.add_argument("--depth", type=int, default=1, help="quasicyclic truncation depth")
    p_trunc.add_argument("--tail-primes", type=int, default=0, help="number of tail primes to include")
    p_trunc.add_argument("--out", required=True, help="output path for the table file")
    p_trunc.set_defaults(func=cmd_truncate)

    p_verify = sub.add_parser("verify", help="Run a verification suite.")
    p_verify.add_argument("suite")
    p_verify.add_argument("--p", type=int, default=None, help="restrict lemma32 to one prime")
    p_verify.add_argument("--max-order", type=int, default=None, dest="max_order")
    p_verify.add_argument("--spec", default="bundled/all", help="spec token for truncation suites")
    p_verify.set_defaults(func=cmd_verify)

    p_bound = sub.add_parser("bound", help="Print the symbolic per-power centralizer orders and bounds.")
    p_bound.add_argument("spec_path")
    p_bound.set_defaults(func=cmd_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OrderCapError as exc:
        print(f"order cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except Exception as exc:  # internal invariant breach
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
