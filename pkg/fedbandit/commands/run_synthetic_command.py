"""

RunSyntheticCommand class
==========================

"""

from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser
import os

from fedbandit.commands import FedBanditCommand
from fedbandit.experiment_runner import ExperimentRunner
from fedbandit.experiment_spec import ExperimentSpec, load_spec
from fedbandit.masking import MaskGenerator
from fedbandit.run_config import RunConfig
from fedbandit.shared.numerics import Rng
from fedbandit.shared.utils import logger


def add_experiment_args(parser):
    parser.add_argument("--spec", type=str, default=None, help="JSON experiment spec.")
    parser.add_argument(
        "--out",
        type=str,
        default=None,
        help="Output directory. Defaults to the spec's `output_dir`, then $FEDBANDIT_OUTPUT_DIR, then ./outputs.",
    )
    parser.add_argument(
        "--seeds", type=int, default=None, help="Override the number of repetitions per cell."
    )
    parser.add_argument("--threads", type=int, default=1, help="Worker processes.")
    parser.add_argument(
        "--silent", action="store_true", default=False, help="Only log errors."
    )
    return parser


def apply_overrides(spec, args):
    if args.seeds is not None:
        if args.seeds < 1:
            raise ValueError(f"--seeds must be at least 1, got {args.seeds}")
        spec.repetitions = args.seeds
    return spec


class RunSyntheticCommand(FedBanditCommand):
    """Simulates every cell of a synthetic experiment and writes regret,
    estimator-norm and norm-difference traces with their seed bands."""

    def run(self, args):
        if args.spec:
            spec = load_spec(args.spec)
        else:
            cfg = RunConfig._from_args(args)
            spec = ExperimentSpec(cells=[cfg], names=[cfg.algorithm])
        spec = apply_overrides(spec, args)
        runner = ExperimentRunner(
            spec, threads=args.threads, coupled_ts=args.coupled_ts, silent=args.silent
        )
        payloads = runner.run()
        out_dir = runner.write(payloads, args.out)
        if args.dump_masks:
            dump_masks(spec, args.dump_masks)
        return out_dir

    @staticmethod
    def register_subcommand(main_parser: ArgumentParser):
        parser = main_parser.add_parser(
            "run-synthetic",
            help="simulate bandits on the synthetic linear environment",
            formatter_class=ArgumentDefaultsHelpFormatter,
        )
        parser = add_experiment_args(parser)
        parser = RunConfig._add_parser_args(parser)
        parser.add_argument(
            "--dump-masks",
            type=str,
            default=None,
            help="Write the mask shards of every federated cell's first repetition to this directory.",
        )
        parser.set_defaults(func=RunSyntheticCommand())


def dump_masks(spec, directory):
    """Saves the shards of repetition 0 of every federated cell under
    ``directory/<cell name>/shard_<j>.fbmx``."""
    for cell_index, (name, cfg) in enumerate(zip(spec.names, spec.cells)):
        if not cfg.is_federated:
            continue
        cfg = cfg.replace(seed=spec.cell_seed(cell_index, 0))
        generator = MaskGenerator(cfg.dim_partition, Rng(cfg.stream_seed("mask")), mode=cfg.pmg)
        paths = generator.save_shards(os.path.join(directory, name))
        logger.info(f"Wrote {len(paths)} mask shards for {name}")
