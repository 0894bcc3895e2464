"""

CostModelCommand class
=======================

"""

from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser
import os

from fedbandit.commands import FedBanditCommand
from fedbandit.costs import DEFAULT_D_SWEEP, DEFAULT_K_VALUES, MODEL_LABEL, cost_grid
from fedbandit.loggers import ResultLogManager
from fedbandit.shared.utils import logger, output_dir


class CostModelCommand(FedBanditCommand):
    """Tabulates the analytical operation and communication costs of the
    federated algorithms over a ``K x d`` grid."""

    def run(self, args):
        for name in ("K", "d"):
            if any(v < 1 for v in getattr(args, name)):
                raise ValueError(f"--{name} values must be positive")
        if args.M < 1 or args.T < 0:
            raise ValueError("--M must be positive and --T non-negative")
        table = cost_grid(args.K, args.d, M=args.M, T=args.T, algorithms=args.algorithms)
        out_dir = args.out or output_dir()
        manager = ResultLogManager()
        manager.add_output_csv(
            os.path.join(out_dir, "costs.csv"), "costs", list(table.columns), MODEL_LABEL
        )
        manager.log_frame("costs", table)
        manager.flush()
        manager.write_manifest(
            os.path.join(out_dir, "manifest.json"),
            {
                "stage1": "mask initialization operations",
                "stage2": "arm selection operations over all rounds",
                "stage3": "state update operations over all rounds",
                "total_ops": "stage1 + stage2 + stage3",
                "total_bytes": "8 x (d^2 + T K M d)",
                "relative_cost": "total_ops over the centralized counterpart's total_ops",
            },
            {"model": MODEL_LABEL, "M": args.M, "T": args.T},
        )
        logger.info(f"Wrote {len(table)} cost rows ({MODEL_LABEL}) to {out_dir}")
        return out_dir

    @staticmethod
    def register_subcommand(main_parser: ArgumentParser):
        parser = main_parser.add_parser(
            "cost-model",
            help="tabulate analytical computation and communication costs",
            formatter_class=ArgumentDefaultsHelpFormatter,
        )
        parser.add_argument(
            "--K", type=int, nargs="+", default=list(DEFAULT_K_VALUES), help="Arm counts."
        )
        parser.add_argument(
            "--d", type=int, nargs="+", default=list(DEFAULT_D_SWEEP), help="Context dimensions."
        )
        parser.add_argument("--M", type=int, default=5, help="Participants.")
        parser.add_argument("--T", type=int, default=5000, help="Rounds.")
        parser.add_argument(
            "--algorithms",
            nargs="+",
            choices=("VFUCB", "VFTS"),
            default=["VFUCB", "VFTS"],
            help="Federated algorithms to tabulate.",
        )
        parser.add_argument("--out", type=str, default=None, help="Output directory.")
        parser.set_defaults(func=CostModelCommand())
