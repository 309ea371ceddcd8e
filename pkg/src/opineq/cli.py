"""Command line entry point: ``check run``, ``check falsify`` and ``check eval``.

Exit codes are 0 when everything passes, 1 when a violation or
counterexample is found and 2 on a configuration error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .functions import get_function, test_operator_concave, test_operator_decreasing
from .harness import ALL_IDS, ConfigError, SuiteConfig, evaluate_witness, run_suite

log = logging.getLogger("opineq")

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG = 0, 1, 2
FALSIFIERS = {"op-decreasing": test_operator_decreasing, "op-concave": test_operator_concave}


def _dims(text: str) -> list[int]:
    """``1..6`` or a comma list such as ``2,4,8``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(d) for d in text.split(",") if d.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None


def _csv_list(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors already; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log per-inequality summaries")
    parser = _Parser(prog="check", description="Randomized checks of operator inequalities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", parents=[common], help="sample and check inequalities")
    run.add_argument("--ineq", default="all", help=f"comma list of ids or 'all' ({', '.join(ALL_IDS)})")
    run.add_argument("--dims", type=_dims, default=[1, 2, 3, 4, 5, 6])
    run.add_argument("--trials", type=int, default=1000)
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--tol", type=float, default=1e-8)
    run.add_argument("--norms", type=_csv_list, default=None)
    run.add_argument("--means", type=_csv_list, default=None)
    run.add_argument("--functions", type=_csv_list, default=None)
    run.add_argument("--out", default=None, help="write report.json here")
    run.add_argument("--csv", default=None, help="write per-trial margins here")
    run.add_argument("--gate-bypass", action="store_true",
                     help="evaluate even when hypotheses fail (and draw hypothesis-violating inputs where supported)")

    fal = sub.add_parser("falsify", parents=[common], help="search for counterexamples to operator monotonicity or concavity")
    fal.add_argument("--property", required=True, choices=sorted(FALSIFIERS))
    fal.add_argument("--function", required=True, help="function label, e.g. affine:1 or exp_neg")
    fal.add_argument("--dim", type=int, default=2)
    fal.add_argument("--trials", type=int, default=10000)
    fal.add_argument("--seed", type=int, default=0)

    ev = sub.add_parser("eval", parents=[common], help="re-evaluate a serialized witness")
    ev.add_argument("--ineq", default=None, help="inequality id (defaults to the one stored in the file)")
    ev.add_argument("--input", required=True)
    ev.add_argument("--tol", type=float, default=None)
    ev.add_argument("--gate-bypass", action="store_true", default=None)
    return parser


def _cmd_run(args) -> int:
    cfg = SuiteConfig(ineqs=_csv_list(args.ineq), dims=args.dims, trials=args.trials, seed=args.seed,
                      tol=args.tol, out=args.out, csv=args.csv, gate_bypass=args.gate_bypass)
    for name in ("norms", "means", "functions"):
        if getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    report = run_suite(cfg)
    if not args.out:
        sys.stdout.write(report.dumps())
    for ineq_id, agg in report.aggregates.items():
        log.info("%-16s trials=%d pass=%d skip=%d violations=%d min_margin=%s", ineq_id, agg["trials"],
                 agg["passes"], agg["skips"], agg["violations"], agg["min_margin"])
    print(f"{report.violations} violation(s) in {report.wall_time:.2f} s", file=sys.stderr)
    return report.exit_code


def _cmd_falsify(args) -> int:
    if args.dim < 1 or args.trials < 1:
        raise ConfigError("dim and trials must be positive")
    try:
        f = get_function(args.function)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    verdict = FALSIFIERS[args.property](f, args.dim, args.trials, rng_seed=args.seed)
    print(json.dumps({"function": f.label, "dim": args.dim, **verdict.to_json()}, indent=2, sort_keys=True))
    return EXIT_VIOLATION if verdict.found else EXIT_OK


def _cmd_eval(args) -> int:
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {args.input}: {exc}") from exc
    if "inputs" not in obj:
        obj = {"inputs": obj}
    if args.ineq:
        obj["ineq_id"] = args.ineq
    if obj.get("ineq_id") not in ALL_IDS:
        raise ConfigError(f"unknown or missing inequality id {obj.get('ineq_id')!r}")
    try:
        outcome = evaluate_witness(obj, tol=args.tol, gate_bypass=args.gate_bypass)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad witness: {exc}") from exc
    print(json.dumps(outcome.to_json(), indent=2, sort_keys=True))
    return EXIT_VIOLATION if outcome.verdict == "violation" else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    handler = {"run": _cmd_run, "falsify": _cmd_falsify, "eval": _cmd_eval}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"check: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
