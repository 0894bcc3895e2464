"""

fedbandit CLI main class
=========================

"""


# !/usr/bin/env python
import argparse
import sys

from fedbandit.commands.cost_model_command import CostModelCommand
from fedbandit.commands.fedbandit_command import USAGE_STATUS, describe_error, fail
from fedbandit.commands.ingest_command import IngestCommand
from fedbandit.commands.run_replay_command import RunReplayCommand
from fedbandit.commands.run_synthetic_command import RunSyntheticCommand
from fedbandit.commands.verify_command import VerifyCommand


class FedBanditArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as one ``error[USAGE]`` line."""

    def error(self, message):
        fail("USAGE", message, USAGE_STATUS)


def build_parser():
    parser = FedBanditArgumentParser(
        "fedbandit CLI",
        usage="[python -m] fedbandit <command> [<args>]",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(help="fedbandit command helpers")

    # Register commands
    RunSyntheticCommand.register_subcommand(subparsers)
    RunReplayCommand.register_subcommand(subparsers)
    IngestCommand.register_subcommand(subparsers)
    CostModelCommand.register_subcommand(subparsers)
    VerifyCommand.register_subcommand(subparsers)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        fail("USAGE", "no command given", USAGE_STATUS)

    # Run
    func = args.func
    del args.func
    try:
        func.run(args)
    except Exception as e:
        fail(*describe_error(e))


if __name__ == "__main__":
    main()
