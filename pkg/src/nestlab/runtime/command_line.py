import argparse
import sys
from typing import Optional, Sequence

from nestlab.models.command_line_args import CommandLineArgs
from nestlab.models.exit_code import ExitCode
from nestlab.runtime.logging_argument_parser import LoggingArgumentParser
from nestlab.utils.seeding import parse_seed

EXPERIMENT_COMMANDS = {
    "rank": "Rank function and rank metric laws on matrices over F_p",
    "lattice": "Subspace lattice laws, complements and hull bounds",
    "nest": "Exhaustive nest/flag correspondence",
    "envelope": "Block projections and nest envelopes of unit groups",
    "triangularize": "Invariant maximal flags against the exhaustive oracle",
    "levitzki": "Levitzki radical and the class of 1 + Lev",
    "chain-length": "Amenable length of subgroup chains and product chains",
    "concentrate": "Concentration of invariant means on finite metric groups",
    "fold": "Fold chains of unitriangular groups under the rank metric",
}


def _seed(value: str) -> int:
    try:
        return parse_seed(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


class CommandLine:
    @staticmethod
    def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", type=str, help="Path to YAML config file")
        parser.add_argument("--seed", type=_seed, help="Master seed (unsigned 64-bit)")
        parser.add_argument(
            "--output", choices=["csv", "json"], help="Report format (default csv)"
        )
        parser.add_argument("--out", type=str, help="Report path (default stdout)")
        parser.add_argument(
            "--debug", action="store_true", help="Enable debug logging"
        )
        parser.add_argument(
            "--log-level",
            choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
            help="Logging level",
        )

    @staticmethod
    def parse_arguments(argv: Optional[Sequence[str]] = None) -> CommandLineArgs:
        """
        Parse command-line arguments and return a CommandLineArgs object.
        """
        argv = list(sys.argv[1:] if argv is None else argv)

        parser = LoggingArgumentParser(
            prog="nestlab",
            description="Exact experiments on nests, envelopes and concentration of invariant means.",
        )
        subparsers = parser.add_subparsers(dest="command", help="Available subcommands")

        # ===================================================
        # run: experiment kind taken from the config
        # ===================================================
        run_parser = subparsers.add_parser(
            "run", help="Run the experiment described by --config"
        )
        CommandLine._add_common_arguments(run_parser)

        # ===================================================
        # One subcommand per experiment kind
        # ===================================================
        parser_registry = {"run": run_parser}
        for name, help_text in EXPERIMENT_COMMANDS.items():
            sub = subparsers.add_parser(name, help=help_text)
            CommandLine._add_common_arguments(sub)
            parser_registry[name] = sub

        args = parser.parse_args(argv)

        if args.command is None:
            parser.print_help(sys.stderr)
            sys.exit(ExitCode.INVALID_INPUT)

        # ===================================================
        # Collect explicit CLI args
        # ===================================================
        args._explicit_args = set()

        def collect_explicit_args(p):
            if not p:
                return
            for action in p._actions:
                for opt in action.option_strings:
                    if any(a == opt or a.startswith(opt + "=") for a in argv):
                        args._explicit_args.add(action.dest)

        collect_explicit_args(parser_registry.get(args.command))

        # ---------------------------------------------------
        # Validation
        # ---------------------------------------------------
        if args.command == "run" and not args.config:
            print("❌ 'nestlab run' needs --config.", file=sys.stderr)
            run_parser.print_help(sys.stderr)
            sys.exit(ExitCode.INVALID_INPUT)

        # ===================================================
        # Return structured CommandLineArgs
        # ===================================================
        return CommandLineArgs(
            command=args.command,
            _explicit_args=args._explicit_args,
            config=getattr(args, "config", None),
            debug=getattr(args, "debug", False),
            log_level=getattr(args, "log_level", None),
            seed=getattr(args, "seed", None),
            output=getattr(args, "output", None),
            out=getattr(args, "out", None),
        )
