"""
RunConfig Class
================
"""

from dataclasses import asdict, dataclass, field
import numbers

from fedbandit.masking import PMG_MODES, DimPartition
from fedbandit.shared.utils import derive_seed

ALGORITHMS = ("VFUCB", "VFTS", "LinUCB", "LinTS", "PartialLinUCB", "PartialLinTS")
FEDERATED_ALGORITHMS = ("VFUCB", "VFTS")
CENTRALIZED_ALGORITHMS = ("LinUCB", "LinTS")
PARTIAL_ALGORITHMS = ("PartialLinUCB", "PartialLinTS")
PARTIAL_MODES = ("prefix", "random")
ENV_KEYS = {"kind", "context_sigma2", "noise_sigma2", "horizon"}

# the federated algorithm's centralized twin
CENTRAL_TWIN = {
    "VFUCB": "LinUCB",
    "VFTS": "LinTS",
    "LinUCB": "LinUCB",
    "LinTS": "LinTS",
    "PartialLinUCB": "LinUCB",
    "PartialLinTS": "LinTS",
}


@dataclass
class RunConfig:
    """Settings of one simulated run.

    Args:
        algorithm (:obj:`str`, `optional`, defaults to :obj:`"VFUCB"`):
            One of ``VFUCB``, ``VFTS``, ``LinUCB``, ``LinTS``, ``PartialLinUCB``, ``PartialLinTS``.
        T (:obj:`int`, `optional`, defaults to :obj:`5000`): Number of rounds.
        K (:obj:`int`, `optional`, defaults to :obj:`10`): Arms per round.
        d (:obj:`int`, `optional`, defaults to :obj:`100`): Global context dimension.
        partition (:obj:`tuple[int]`, `optional`):
            Local dimensions of the participants; participant 0 is active.
            Defaults to an even split of ``d`` among ``num_participants``.
        num_participants (:obj:`int`, `optional`, defaults to :obj:`5`):
            Used only when ``partition`` is omitted.
        lam (:obj:`float`, `optional`, defaults to :obj:`1.0`): Ridge weight.
        beta (:obj:`float`, `optional`, defaults to :obj:`0.5`): UCB exploration coefficient.
        v (:obj:`float`, `optional`, defaults to :obj:`0.01`): Thompson-sampling scale.
        seed (:obj:`int`, `optional`, defaults to :obj:`0`): Run seed.
        partial_ratio (:obj:`float`, `optional`, defaults to :obj:`1.0`):
            Share of coordinates the partial baselines see.
        partial_mode (:obj:`str`, `optional`, defaults to :obj:`"prefix"`):
            ``"prefix"`` keeps the leading coordinates, ``"random"`` a seeded random subset.
        partition_index (:obj:`int`, `optional`, defaults to :obj:`0`):
            Which random coordinate subset to draw in ``"random"`` mode.
        pmg (:obj:`str`, `optional`, defaults to :obj:`"third_party"`):
            Where the mask generator lives, ``"third_party"`` or ``"participant"``.
        coupled_ts (:obj:`bool`, `optional`, defaults to :obj:`False`):
            Couple VFTS sampling to the centralized LinTS draws.
        inverse_mode (:obj:`str`, `optional`, defaults to :obj:`"cholesky"`):
            ``"cholesky"`` or ``"sherman_morrison"``.
        record_scores (:obj:`bool`, `optional`, defaults to :obj:`False`):
            Keep the per-arm scores of every round.
        env (:obj:`dict`, `optional`):
            Environment settings: ``kind`` (``"synthetic"``), ``context_sigma2``,
            ``noise_sigma2`` and ``horizon``.
    """

    algorithm: str = "VFUCB"
    T: int = 5000
    K: int = 10
    d: int = 100
    partition: tuple = None
    num_participants: int = 5
    lam: float = 1.0
    beta: float = 0.5
    v: float = 0.01
    seed: int = 0
    partial_ratio: float = 1.0
    partial_mode: str = "prefix"
    partition_index: int = 0
    pmg: str = "third_party"
    coupled_ts: bool = False
    inverse_mode: str = "cholesky"
    record_scores: bool = False
    env: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"`algorithm` must be one of {ALGORITHMS}, got {self.algorithm}.")
        for name in ("T", "K", "d"):
            value = getattr(self, name)
            if not isinstance(value, numbers.Integral) or isinstance(value, bool) or value < 1:
                raise ValueError(f"`{name}` must be a positive integer, got {value!r}.")
            setattr(self, name, int(value))
        if self.partition is None:
            if not 1 <= self.num_participants <= self.d:
                raise ValueError(
                    f"`num_participants` must be in [1, d={self.d}], got {self.num_participants}."
                )
            self.partition = DimPartition.even(self.d, self.num_participants).dims
        self.partition = tuple(int(p) for p in self.partition)
        DimPartition(self.partition)
        if sum(self.partition) != self.d:
            raise ValueError(f"`partition` {self.partition} does not sum to d={self.d}.")
        self.num_participants = len(self.partition)
        if not self.lam > 0:
            raise ValueError(f"`lam` must be positive, got {self.lam}.")
        if self.beta < 0 or self.v < 0:
            raise ValueError("`beta` and `v` must be non-negative.")
        if not 0 < self.partial_ratio <= 1:
            raise ValueError(f"`partial_ratio` must be in (0, 1], got {self.partial_ratio}.")
        if self.partial_mode not in PARTIAL_MODES:
            raise ValueError(f"`partial_mode` must be one of {PARTIAL_MODES}, got {self.partial_mode}.")
        if self.pmg not in PMG_MODES:
            raise ValueError(f"`pmg` must be one of {PMG_MODES}, got {self.pmg}.")
        if self.pmg == "participant" and self.num_participants < 2:
            raise ValueError("`pmg` = participant needs at least two participants.")
        self.env = dict(self.env or {})
        unknown = set(self.env) - ENV_KEYS
        if unknown:
            raise ValueError(f"unknown environment keys: {sorted(unknown)}")
        if self.env.setdefault("kind", "synthetic") != "synthetic":
            raise ValueError(f"simulated runs need a synthetic environment, got {self.env['kind']!r}.")

    @property
    def dim_partition(self):
        return DimPartition(self.partition)

    @property
    def is_federated(self):
        return self.algorithm in FEDERATED_ALGORITHMS

    @property
    def is_partial(self):
        return self.algorithm in PARTIAL_ALGORITHMS

    @property
    def uses_ts(self):
        return CENTRAL_TWIN[self.algorithm] == "LinTS"

    def stream_seed(self, *keys):
        """Seed of one named random stream of this run."""
        return derive_seed(self.seed, *keys)

    def replace(self, **changes):
        values = asdict(self)
        values.update(changes)
        if "d" in changes and "partition" not in changes:
            values["partition"] = None
        return RunConfig(**values)

    def twin(self):
        """The centralized configuration that must reproduce this run."""
        return self.replace(algorithm=CENTRAL_TWIN[self.algorithm], partial_ratio=1.0)

    def to_dict(self):
        values = asdict(self)
        values["partition"] = list(self.partition)
        return values

    @classmethod
    def _add_parser_args(cls, parser):
        """Add listed args to command line parser."""
        default_obj = cls()
        parser.add_argument(
            "--algorithm",
            type=str,
            choices=ALGORITHMS,
            default=default_obj.algorithm,
            help="Bandit algorithm to simulate.",
        )
        parser.add_argument("--T", type=int, default=default_obj.T, help="Number of rounds.")
        parser.add_argument("--K", type=int, default=default_obj.K, help="Arms per round.")
        parser.add_argument("--d", type=int, default=default_obj.d, help="Context dimension.")
        parser.add_argument(
            "--partition",
            type=int,
            nargs="+",
            default=None,
            help="Local dimension of every participant, active participant first. Defaults to an even split.",
        )
        parser.add_argument(
            "--num-participants",
            type=int,
            default=default_obj.num_participants,
            help="Number of participants when --partition is not given.",
        )
        parser.add_argument("--lam", type=float, default=default_obj.lam, help="Ridge weight.")
        parser.add_argument(
            "--beta", type=float, default=default_obj.beta, help="UCB exploration coefficient."
        )
        parser.add_argument(
            "--v", type=float, default=default_obj.v, help="Thompson-sampling scale."
        )
        parser.add_argument("--seed", type=int, default=default_obj.seed, help="Run seed.")
        parser.add_argument(
            "--partial-ratio",
            type=float,
            default=default_obj.partial_ratio,
            help="Share of coordinates seen by the partial baselines.",
        )
        parser.add_argument(
            "--partial-mode",
            choices=PARTIAL_MODES,
            default=default_obj.partial_mode,
            help="Which coordinates the partial baselines keep.",
        )
        parser.add_argument(
            "--pmg",
            choices=PMG_MODES,
            default=default_obj.pmg,
            help="Run the mask generator as a third party or on a passive participant.",
        )
        parser.add_argument(
            "--coupled-ts",
            action="store_true",
            default=default_obj.coupled_ts,
            help="Couple VFTS draws to centralized LinTS so arm sequences are comparable.",
        )
        parser.add_argument(
            "--inverse-mode",
            choices=("cholesky", "sherman_morrison"),
            default=default_obj.inverse_mode,
            help="How the inverse Gram matrix is maintained.",
        )
        return parser

    @classmethod
    def _from_args(cls, args):
        return cls(
            algorithm=args.algorithm,
            T=args.T,
            K=args.K,
            d=args.d,
            partition=tuple(args.partition) if args.partition else None,
            num_participants=args.num_participants,
            lam=args.lam,
            beta=args.beta,
            v=args.v,
            seed=args.seed,
            partial_ratio=args.partial_ratio,
            partial_mode=args.partial_mode,
            pmg=args.pmg,
            coupled_ts=args.coupled_ts,
            inverse_mode=args.inverse_mode,
        )
