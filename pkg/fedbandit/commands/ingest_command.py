"""

IngestCommand class
====================

"""

from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser

from fedbandit.commands import FedBanditCommand
from fedbandit.environments import (
    IngestConfig,
    IngestStats,
    ingest_log,
    read_criteo_rows,
    write_cache,
)
from fedbandit.shared.utils import color_text, logger, path_in_cache

DEFAULT_CACHE_NAME = "criteo_replay_v1.csv"


def _cb(s):
    return color_text(str(s), color="blue", method="ansi")


class IngestCommand(FedBanditCommand):
    """Hashes, pairs, filters and scales a raw Criteo-layout log into a
    replay cache."""

    def run(self, args):
        default = IngestConfig()
        cfg = IngestConfig(
            n_hash_values=args.n_hash_values,
            hash_buckets=args.hash_buckets,
            top_labels=args.top_labels,
            user_columns=tuple(args.user_columns) if args.user_columns else default.user_columns,
            user_scaling_factors=tuple(args.user_scaling_factors) if args.user_scaling_factors else None,
            hash_seed=args.hash_seed,
        )
        stats = IngestStats()
        log = ingest_log(read_criteo_rows(args.log, args.delimiter), cfg, stats)
        out = args.out or path_in_cache(DEFAULT_CACHE_NAME)
        write_cache(log, out)
        logger.info(f"Rows read: {_cb(stats.rows_read)}")
        logger.info(f"Rows malformed: {_cb(stats.rows_malformed)}")
        logger.info(f"Distinct labels: {_cb(stats.distinct_labels)}")
        logger.info(f"Rows kept: {_cb(stats.rows_kept)} over {_cb(log.num_arms)} labels")
        return out

    @staticmethod
    def register_subcommand(main_parser: ArgumentParser):
        parser = main_parser.add_parser(
            "ingest",
            help="ingest a raw Criteo-layout log into a replay cache",
            formatter_class=ArgumentDefaultsHelpFormatter,
        )
        default = IngestConfig()
        parser.add_argument("--log", type=str, required=True, help="Raw log file.")
        parser.add_argument(
            "--out",
            type=str,
            default=None,
            help=f"Cache file. Defaults to {DEFAULT_CACHE_NAME} under $FEDBANDIT_CACHE_DIR.",
        )
        parser.add_argument("--delimiter", type=str, default="\t", help="Field delimiter.")
        parser.add_argument(
            "--n-hash-values", type=int, default=default.n_hash_values, help="Hashed item values."
        )
        parser.add_argument(
            "--hash-buckets", type=int, default=default.hash_buckets, help="Buckets per hashed value."
        )
        parser.add_argument(
            "--top-labels", type=int, default=default.top_labels, help="Most frequent labels kept."
        )
        parser.add_argument(
            "--user-columns", type=int, nargs="+", default=None, help="Numerical columns used as user features."
        )
        parser.add_argument(
            "--user-scaling-factors",
            type=float,
            nargs="+",
            default=None,
            help="One scaling factor per user feature.",
        )
        parser.add_argument("--hash-seed", type=int, default=default.hash_seed, help="Hash seed.")
        parser.set_defaults(func=IngestCommand())
