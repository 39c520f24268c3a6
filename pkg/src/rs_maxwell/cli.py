"""rs-maxwell command line.

    rs-maxwell <suite> --config <path> [--format json|text] [--out <path>] [--corrupt <id>]

Exit status: 0 all checks pass, 1 a check failed, 2 config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import algebra
from .config import SUITES, ConfigError, load_config
from .report import emit_report
from .suites import run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser():
    p = _Parser(prog="rs-maxwell", description="Verify the matrix form of Maxwell's equations.")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--config", required=True, help="flat key = value scenario file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--corrupt", choices=algebra.CORRUPTIBLE, metavar="ID",
                   help="damage one stored constant (fault injection): " + ", ".join(algebra.CORRUPTIBLE))
    return p


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.suite)
    except ConfigError as exc:
        print(f"rs-maxwell: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"rs-maxwell: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    sink = None
    if cfg.trajectory:
        def sink(text):
            _write(cfg.trajectory, text)

    try:
        report = run_suite(cfg, corrupt=args.corrupt, trajectory_sink=sink)
    except OSError as exc:
        print(f"rs-maxwell: cannot write trajectory: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # domain errors from the scenario (points inside a horizon, CFL violations, ...)
        print(f"rs-maxwell: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = emit_report(report, args.format)
    out = args.out or cfg.out
    if out:
        try:
            _write(out, text)
        except OSError as exc:
            print(f"rs-maxwell: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)

    for c in report.failed_checks():
        print(f"FAIL {c.check_id}: {c.paper_anchor} (residual {c.residual:.3e} > {c.tolerance:.1e})", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
