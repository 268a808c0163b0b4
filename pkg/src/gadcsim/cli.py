"""Command-line front end: ``sweep``, ``dilation-verify``, ``state-report``, ``version``.

Exit codes: 0 success, 1 invalid input, 2 numerical-verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import NumericalError, ValidationError
from .sweep import SweepConfig, dilation_verify, run_sweep, state_report

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2

# flag name -> config key; flags mirror the JSON config keys
SWEEP_KEYS = ("state_family", "sign", "alpha_grid", "nu_grid", "eta_grid", "w_grid",
              "r_grid", "protocol", "output_path", "workers")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _sign(text):
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError("sign must be + or -")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gadcsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="evaluate a protocol over a parameter grid and write CSV")
    sw.add_argument("--config", help="JSON config file; flags override its keys")
    for key in SWEEP_KEYS:
        kwargs = {"type": _sign} if key == "sign" else {"type": int} if key == "workers" else {}
        sw.add_argument("--" + key.replace("_", "-"), dest=key, default=None, **kwargs)

    dv = sub.add_parser("dilation-verify", help="residual report for a GADC dilation")
    dv.add_argument("--which", choices=("u1", "u2", "built"), default="u1")
    dv.add_argument("--nu", type=float, required=True)
    dv.add_argument("--eta", type=float, required=True)
    dv.add_argument("--format", choices=("json", "text"), default="json")

    sr = sub.add_parser("state-report", help="measures of one pure input state")
    sr.add_argument("--family", choices=("antiparallel", "parallel"), default="parallel")
    sr.add_argument("--sign", type=_sign, default=1)
    sr.add_argument("--alpha", type=float, required=True)
    sr.add_argument("--format", choices=("json", "text"), default="text")

    sub.add_parser("version", help="print the package version")
    return parser


def _cmd_sweep(args) -> int:
    overrides = {k: getattr(args, k) for k in SWEEP_KEYS if getattr(args, k) is not None}
    if args.config:
        config = SweepConfig.from_file(args.config, overrides)
    else:
        config = SweepConfig.from_mapping(overrides)
    path = run_sweep(config)
    print(f"wrote {config.grid_size()} grid points to {path}")
    return EXIT_OK


def _text_report(report: dict) -> str:
    lines = []
    for key, val in report.items():
        if isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{key}:")
            lines.extend("  " + " ".join(f"{x: .6f}" for x in row) for row in val)
        elif isinstance(val, list):
            lines.append(f"{key}: " + " ".join(f"{x:.3e}" if abs(x) < 1e-3 and x else f"{x:.6f}" for x in val))
        elif isinstance(val, float):
            lines.append(f"{key}: {val:.12g}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _cmd_dilation_verify(args) -> int:
    report = dilation_verify(args.which, args.nu, args.eta)
    print(json.dumps(report, indent=2) if args.format == "json" else _text_report(report))
    return EXIT_OK if report["passed"] else EXIT_NUMERIC


def _cmd_state_report(args) -> int:
    report = state_report(args.family, args.sign, args.alpha)
    print(json.dumps(report, indent=2) if args.format == "json" else _text_report(report))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "dilation-verify": _cmd_dilation_verify,
        "state-report": _cmd_state_report,
    }
    if args.command == "version":
        print(__version__)
        return EXIT_OK
    try:
        return handlers[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
