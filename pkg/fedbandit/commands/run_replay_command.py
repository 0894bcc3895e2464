"""

RunReplayCommand class
=======================

"""

from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser

from fedbandit.commands import FedBanditCommand
from fedbandit.experiment_runner import ExperimentRunner
from fedbandit.experiment_spec import SpecError, load_spec

from .run_synthetic_command import add_experiment_args, apply_overrides


class RunReplayCommand(FedBanditCommand):
    """Replays a logged dataset through every cell of a replay experiment
    and writes relative CTR tables."""

    def run(self, args):
        if not args.spec:
            raise SpecError("SPEC_MISSING", "run-replay needs --spec")
        spec = load_spec(args.spec)
        if spec.kind != "replay":
            raise SpecError("SPEC_VALUE", f"run-replay needs a replay spec, got kind {spec.kind!r}")
        if args.log:
            spec.replay.log = args.log
        if args.cache:
            spec.replay.cache = args.cache
        spec = apply_overrides(spec, args)
        runner = ExperimentRunner(spec, threads=args.threads, silent=args.silent)
        return runner.write(runner.run(), args.out)

    @staticmethod
    def register_subcommand(main_parser: ArgumentParser):
        parser = main_parser.add_parser(
            "run-replay",
            help="evaluate bandits by unbiased replay of a logged dataset",
            formatter_class=ArgumentDefaultsHelpFormatter,
        )
        parser = add_experiment_args(parser)
        parser.add_argument("--log", type=str, default=None, help="Raw Criteo-layout log.")
        parser.add_argument("--cache", type=str, default=None, help="Ingested log cache.")
        parser.set_defaults(func=RunReplayCommand())
