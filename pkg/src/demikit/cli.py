"""Command-line reporter.

Exit codes: 0 success/pass, 1 verdict-fail, 2 usage error, 3 divergence.
Verdicts live in the report files and exit codes, never only in logs, so
CI can assert on them.
"""

from __future__ import annotations

import argparse
import sys

from . import certify, reports
from .errors import DemikitError, UnknownMappingError
from .mappings import get_mapping
from .relaxation import verify_lemma
from .solver import krasnoselskij, solve_demicontractive
from .space import as_vector

PROG = "demikit"


def _parse_x0(text: str):
    try:
        return as_vector([float(part) for part in text.split(",") if part != ""])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector literal {text!r}: {exc}")


def _add_sampling_flags(p: argparse.ArgumentParser):
    p.add_argument("--points-per-axis", type=int, default=certify.DEFAULT_POINTS_PER_AXIS)
    p.add_argument("--extra-random", type=int, default=certify.DEFAULT_EXTRA_RANDOM)
    p.add_argument("--seed", type=int, default=certify.DEFAULT_SEED)
    p.add_argument("--cert-tol", type=float, default=certify.DEFAULT_TOL)


def _emit(args, text: str, default_stdout: bool = True) -> None:
    if getattr(args, "output", None):
        reports.write_text(args.output, text)
    elif default_stdout:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Certify operator classes, relax operators, and run "
                    "Krasnoselskij-Mann fixed-point iteration.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="run every applicable class check")
    p.add_argument("--mapping", required=True)
    _add_sampling_flags(p)
    p.add_argument("--k", type=float, default=None,
                   help="check SPC/DC at this constant instead of estimating")
    p.add_argument("--k-ceiling", type=float, default=certify.DEFAULT_K_CEILING)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("estimate-k", help="estimate minimal class constants")
    p.add_argument("--mapping", required=True)
    _add_sampling_flags(p)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify-lemma",
                       help="test quasi-nonexpansiveness of the relaxation")
    p.add_argument("--mapping", required=True)
    _add_sampling_flags(p)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--auto-k", action="store_true",
                   help="use the estimated demicontractive constant")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--output", default=None)

    p = sub.add_parser("iterate", help="run the Mann iteration")
    p.add_argument("--mapping", required=True)
    p.add_argument("--x0", type=_parse_x0, required=True,
                   help="comma-separated coordinates, e.g. 1 or 0.5,0.5")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="constant step; mutually exclusive with --k/--auto-k")
    p.add_argument("--k", type=float, default=None,
                   help="certified constant; step becomes (1-k)/2")
    p.add_argument("--auto-k", action="store_true")
    _add_sampling_flags(p)
    p.add_argument("--residual-tol", type=float, default=1e-8)
    p.add_argument("--step-tol", type=float, default=0.0)
    p.add_argument("--max-iters", type=int, default=10000)
    p.add_argument("--output", default=None)

    p = sub.add_parser("diagram",
                       help="membership matrix for the bundled gallery")
    _add_sampling_flags(p)
    p.add_argument("--k-ceiling", type=float, default=certify.DEFAULT_K_CEILING)
    p.add_argument("--output", default=None, help="JSON report path")
    p.add_argument("--matrix-csv", default=None, help="matrix CSV path")
    return parser


def _sampling_config(args) -> dict:
    return {
        "points_per_axis": args.points_per_axis,
        "extra_random": args.extra_random,
        "seed": args.seed,
        "cert_tol": args.cert_tol,
    }


def _membership_cert(mapping, class_id, args, k_override):
    """SPC/DC membership: check at the given k, or estimate-then-confirm."""
    est = certify.estimate_k_spc if class_id == "SPC" else certify.estimate_k_dc
    chk = certify.check_spc if class_id == "SPC" else certify.check_dc
    common = (args.points_per_axis, args.extra_random, args.seed)
    if k_override is not None:
        cert = chk(mapping, k_override, *common, args.cert_tol)
        return cert, None
    if class_id == "DC" and mapping.fixed_points.kind != "known":
        return chk(mapping, 0.0, *common, args.cert_tol), None
    k_hat = est(mapping, *common)
    if k_hat <= args.k_ceiling:
        cert = chk(mapping, min(k_hat + 1e-9, 1.0 - 1e-12), *common, args.cert_tol)
    else:
        cert = chk(mapping, args.k_ceiling, *common, args.cert_tol)
        cert.verdict = "violated"
    cert.constant = k_hat
    return cert, k_hat


def cmd_classify(args) -> int:
    mapping = get_mapping(args.mapping)
    common = (args.points_per_axis, args.extra_random, args.seed)
    certs = [
        certify.check_ne(mapping, *common, args.cert_tol),
        certify.check_qne(mapping, *common, args.cert_tol),
    ]
    spc_cert, _ = _membership_cert(mapping, "SPC", args, args.k)
    dc_cert, k_hat_dc = _membership_cert(mapping, "DC", args, args.k)
    certs += [spc_cert, dc_cert]
    if mapping.fixed_points.kind == "known":
        if args.k is not None:
            lam_a = certify.convert_constants("k_to_lambda", args.k)
        else:
            lam_a = certify.convert_constants("k_to_lambda", min(k_hat_dc, 1.0 - 1e-12)) \
                if k_hat_dc is not None and k_hat_dc < 1.0 else None
        if lam_a is not None and lam_a > 0.0:
            certs.append(certify.check_condition_a(mapping, lam_a, *common,
                                                   args.cert_tol))
    config = {"mapping": args.mapping, **_sampling_config(args),
              "k": args.k, "k_ceiling": args.k_ceiling,
              "output": args.output, "format": args.format}
    if args.format == "csv":
        rows = [("class_id,verdict,constant,max_violation")]
        for c in certs:
            const = "" if c.constant is None else reports.f17(c.constant)
            mv = "" if c.max_violation is None else reports.f17(c.max_violation)
            rows.append(f"{c.class_id},{c.verdict},{const},{mv}")
        _emit(args, "\n".join(rows) + "\n")
    else:
        body = {"label": mapping.label, "domain": mapping.domain.describe(),
                "fixed_points_kind": mapping.fixed_points.kind,
                "certificates": [c.to_json_dict() for c in certs]}
        _emit(args, reports.dumps_json(reports.json_report("classify", config, body)))
    return 0


def cmd_estimate_k(args) -> int:
    mapping = get_mapping(args.mapping)
    common = (args.points_per_axis, args.extra_random, args.seed)
    k_spc = certify.estimate_k_spc(mapping, *common)
    pairs: list[tuple[str, object]] = [("k_spc", k_spc)]
    body: dict = {"label": mapping.label, "k_spc": k_spc, "k_dc": None,
                  "lambda_a": None}
    if mapping.fixed_points.kind == "known":
        k_dc = certify.estimate_k_dc(mapping, *common)
        body["k_dc"] = k_dc
        pairs.append(("k_dc", k_dc))
        if k_dc < 1.0:
            body["lambda_a"] = certify.convert_constants("k_to_lambda", k_dc)
            pairs.append(("lambda_a", body["lambda_a"]))
    config = {"mapping": args.mapping, **_sampling_config(args),
              "output": args.output, "format": args.format}
    if args.format == "csv":
        _emit(args, reports.kv_csv(pairs))
    else:
        _emit(args, reports.dumps_json(reports.json_report("estimate-k", config, body)))
    return 0


def cmd_verify_lemma(args) -> int:
    mapping = get_mapping(args.mapping)
    if args.auto_k:
        k = certify.estimate_k_dc(mapping, args.points_per_axis,
                                  args.extra_random, args.seed)
    elif args.k is not None:
        k = args.k
    else:
        raise DemikitError("verify-lemma needs --k or --auto-k")
    report = verify_lemma(mapping, k, args.lam, args.points_per_axis,
                          args.extra_random, args.seed, args.cert_tol)
    config = {"mapping": args.mapping, **_sampling_config(args),
              "k": k, "auto_k": bool(args.auto_k), "lambda": args.lam,
              "output": args.output}
    _emit(args, reports.dumps_json(reports.json_report(
        "verify-lemma", config, report.to_json_dict())))
    if report.verdict == "fail" and report.in_lemma_range:
        return 1
    return 0


def cmd_iterate(args) -> int:
    mapping = get_mapping(args.mapping)
    chosen = {"lambda": args.lam, "k": args.k, "auto_k": bool(args.auto_k)}
    if args.lam is not None:
        traj = krasnoselskij(mapping, args.x0, args.lam,
                             residual_tol=args.residual_tol,
                             step_tol=args.step_tol, max_iters=args.max_iters)
    else:
        if args.auto_k:
            k = certify.estimate_k_dc(mapping, args.points_per_axis,
                                      args.extra_random, args.seed)
        elif args.k is not None:
            k = args.k
        else:
            raise DemikitError("iterate needs --lambda, --k, or --auto-k")
        traj, lam_star = solve_demicontractive(
            mapping, k, args.x0, residual_tol=args.residual_tol,
            step_tol=args.step_tol, max_iters=args.max_iters)
        chosen["k"] = k
        chosen["lambda"] = lam_star
    _emit(args, traj.to_csv())
    sys.stderr.write(
        f"{PROG}: iterate {mapping.label} -> {traj.termination} after "
        f"{traj.iterations} iterations (lambda={chosen['lambda']})\n")
    if traj.termination == "diverged":
        return 3
    if traj.termination == "max-iters":
        return 1
    return 0


def cmd_diagram(args) -> int:
    report = certify.reproduce_diagram(args.points_per_axis, args.extra_random,
                                       args.seed, args.cert_tol, args.k_ceiling)
    config = {**_sampling_config(args), "k_ceiling": args.k_ceiling,
              "output": args.output, "matrix_csv": args.matrix_csv}
    if args.matrix_csv:
        reports.write_text(args.matrix_csv, report.matrix_csv())
    _emit(args, reports.dumps_json(reports.json_report(
        "diagram", config, report.to_json_dict())))
    if not report.matches:
        for entry in report.diff:
            sys.stderr.write(
                f"{PROG}: diagram mismatch {entry['mapping']}/{entry['class_id']}: "
                f"computed={entry['computed']} expected={entry['expected']}\n")
        return 1
    return 0


_COMMANDS = {
    "classify": cmd_classify,
    "estimate-k": cmd_estimate_k,
    "verify-lemma": cmd_verify_lemma,
    "iterate": cmd_iterate,
    "diagram": cmd_diagram,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UnknownMappingError as exc:
        sys.stderr.write(f"{PROG}: unknown-mapping: {exc}\n")
        return 2
    except DemikitError as exc:
        sys.stderr.write(f"{PROG}: {exc.code}: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
