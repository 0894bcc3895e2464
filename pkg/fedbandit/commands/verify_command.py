"""

VerifyCommand class
====================

"""

from argparse import SUPPRESS, ArgumentDefaultsHelpFormatter, ArgumentParser

import terminaltables

from fedbandit.commands import FedBanditCommand
from fedbandit.shared.utils import color_text
from fedbandit.verification import SUITES, run_suites

from .fedbandit_command import CommandFailed


class VerifyCommand(FedBanditCommand):
    """Runs the invariant suites and exits nonzero on the first failing one."""

    def run(self, args):
        if args.seeds < 1:
            raise ValueError(f"--seeds must be at least 1, got {args.seeds}")
        results = run_suites(
            seeds=args.seeds,
            base_seed=args.base_seed,
            suites=args.suites,
            inject_fault=args.inject_fault,
        )
        rows = [["suite", "verdict", "checked"]]
        for r in results:
            if r.passed:
                verdict = color_text("PASS", "green", "ansi")
            else:
                verdict = color_text("FAIL", "red", "ansi")
            rows.append([r.name, verdict, str(r.checked)])
        print(terminaltables.AsciiTable(rows).table)
        failed = [r for r in results if not r.passed]
        if failed:
            raise CommandFailed("VERIFY_FAILED", str(failed[0]))
        return results

    @staticmethod
    def register_subcommand(main_parser: ArgumentParser):
        parser = main_parser.add_parser(
            "verify",
            help="run the invariant suites as a smoke test",
            formatter_class=ArgumentDefaultsHelpFormatter,
        )
        parser.add_argument("--seeds", type=int, default=20, help="Seeds per suite.")
        parser.add_argument("--base-seed", type=int, default=0, help="Base seed.")
        parser.add_argument(
            "--suites", nargs="+", choices=SUITES, default=list(SUITES), help="Suites to run."
        )
        parser.add_argument("--inject-fault", action="store_true", default=False, help=SUPPRESS)
        parser.set_defaults(func=VerifyCommand())
