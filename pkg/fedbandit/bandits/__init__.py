""".. _bandits:

Bandits: linear contextual bandit state, arm scoring and policies.
=====================================================================
"""

from .bandit_state import BanditState, update
from .scores import (
    ArmScore,
    NegativeRadicandError,
    ThompsonDraw,
    TsParams,
    UcbParams,
    select_arm,
    select_arms,
    ts_scores,
    ts_scores_with_draw,
    ucb_scores,
)
from .bandit import Bandit
from .lin_ucb import LinUCB
from .lin_ts import LinTS
from .random_policy import RandomPolicy
from .partial_policy import PartialPolicy, prefix_coordinates, random_coordinates
