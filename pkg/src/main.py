"""
Grassmannian Toolkit - Command-Line Entry Point
Lefschetz decompositions of D^b(Gr(k, n)): orbits, blocks, semi-orthogonality
checks, Ext groups, staircase complexes and generation certificates.

Exit codes: 0 verified, 1 violation or failed certificate, 2 usage error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from src.command_executor import CommandExecutor
from src.reports import render_records
from src.utils.config import Config
from src.utils.logging import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting"""

    def error(self, message):
        raise argparse.ArgumentError(None, message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="ambient dimension n")
    common.add_argument("--k", type=int, required=True, help="rank k of the tautological subbundle")
    common.add_argument("--format", choices=["table", "machine"], default="table", help="output format")
    common.add_argument("--out", help="write the output to FILE instead of stdout")
    common.add_argument("--jobs", type=int, default=None, help="worker threads for sweeps")

    parser = _Parser(
        prog="grassmannian",
        description="Lefschetz decompositions of the derived category of Gr(k, n)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("orbits", parents=[common], help="orbits of the cyclic action")

    for name, help_text in (("blocks", "Lefschetz basis and supports"),
                            ("check-semiorth", "verify semi-orthogonality")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--kind", choices=["A", "B", "Bprime", "Aprime"], default="B")

    p = sub.add_parser("ext", parents=[common], help="Ext groups between Schur bundles")
    p.add_argument(
        "--diagram",
        required=True,
        help='source diagram, e.g. "3,2,1"; write negative rows as --diagram=-1,-2',
    )
    p.add_argument("--twist", type=int, default=0, help="twist t of the source")
    p.add_argument("--target", default=None, help="target diagram (defaults to the source), same syntax as --diagram")

    p = sub.add_parser("staircase", parents=[common], help="staircase complex of a diagram with λ_1 = n-k")
    p.add_argument("--diagram", required=True)

    p = sub.add_parser("certify", parents=[common], help="generation certificate")
    p.add_argument("--kind", choices=["A", "B"], default="B")
    p.add_argument("--budget", type=int, default=None, help="rewrite budget factor for kind A")

    sub.add_parser("compare", parents=[common], help="compare the first blocks of A and B")
    return parser


class GrassmannianCLI:
    """
    Command-line front end

    Parses flags into a command dictionary, runs it through the
    CommandExecutor and writes table or machine output.
    """

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()
        self.executor = CommandExecutor(self.config)
        self.parser = build_parser()

    def run(self, argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
        """
        Run one invocation

        Args:
            argv: Arguments without the program name (sys.argv[1:] if None)
            stdout: Stream for reports (sys.stdout if None)

        Returns:
            Exit code
        """
        stdout = stdout or sys.stdout
        try:
            args = self.parser.parse_args(argv)
        except argparse.ArgumentError as e:
            print(f"usage error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except SystemExit as e:
            # --help
            return EXIT_OK if e.code in (0, None) else EXIT_USAGE

        parameters = {
            key: value
            for key, value in vars(args).items()
            if key not in ("command", "format", "out")
        }
        outcome = self.executor.execute({"command": args.command, "parameters": parameters})
        if not outcome["success"]:
            print(f"error: {outcome['error']}", file=sys.stderr)
            return EXIT_FAILED if outcome.get("error_kind") == "inconsistency" else EXIT_USAGE

        result = outcome["result"]
        if args.format == "machine":
            text = render_records(result.records)
        else:
            text = "\n".join(result.table) + "\n"

        if args.out:
            out_path = Path(args.out)
            out_path.parent.mkdir(parents=True, exist_ok=True)
            out_path.write_text(text, encoding="utf-8")
            logger.info(f"Wrote {args.command} output to {out_path}")
        else:
            stdout.write(text)
        return EXIT_OK if result.ok else EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    try:
        config = Config()
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(config.log_level, config.log_file)
    try:
        return GrassmannianCLI(config).run(argv)
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
