"""
Cost Model
===========

Unit-coefficient upper-bound model of operation counts and communication.
Every listed term of a stage is charged with coefficient 1; a single
addition, multiplication, comparison or random draw on one element costs
one operation.

=========  =====================  ============================================  ============================
algorithm  stage 1 (mask init)    stage 2 (selection, per round)                stage 3 (update, per round)
=========  =====================  ============================================  ============================
LinUCB     0                      K·d + d³ + K·d² + K                           d² + d + d²
VFUCB      d³                     K·M·d + K·d² + (LinUCB stage 2)               (LinUCB stage 3)
LinTS      0                      d² + d³ + K·d + K                             d + d³ + d + d²
VFTS       d³                     K·M·d + K·d² + (LinTS stage 2)                (LinTS stage 3)
=========  =====================  ============================================  ============================
"""

from dataclasses import dataclass

from fedbandit.federation import ELEMENT_BYTES, selection_ops, update_ops

COST_ALGORITHMS = ("LinUCB", "LinTS", "VFUCB", "VFTS")
INT64_MAX = (1 << 63) - 1
MODEL_LABEL = "unit-coefficient upper-bound model"


class CostOverflowError(OverflowError):
    pass


@dataclass(frozen=True)
class CostParams:
    T: int
    K: int
    M: int
    d: int
    element_bytes: int = ELEMENT_BYTES

    def __post_init__(self):
        for name in ("K", "M", "d", "element_bytes"):
            if getattr(self, name) < 1:
                raise ValueError(f"`{name}` must be at least 1, got {getattr(self, name)}.")
        if self.T < 0:
            raise ValueError(f"`T` must be non-negative, got {self.T}.")


@dataclass(frozen=True)
class CostBreakdown:
    alg: str
    stage1: int
    stage2: int
    stage3: int
    total_elements: int
    total_bytes: int

    @property
    def total_ops(self):
        return self.stage1 + self.stage2 + self.stage3


def _check(value, what):
    if value > INT64_MAX:
        raise CostOverflowError(f"{what} {value} does not fit in a signed 64-bit integer")
    return value


def o3m_ops(p):
    """Per-round masking (``K·d²`` over all participants) and aggregation
    (``K·M·d``) terms."""
    return p.K * p.M * p.d + p.K * p.d * p.d


def compute_ops(alg, p, include_o3m=True):
    """Stage operation counts of ``alg`` under :class:`CostParams` ``p``.

    Args:
        include_o3m (:obj:`bool`, `optional`, defaults to :obj:`True`):
            Charge the mask terms for VFUCB/VFTS; without them a federated
            algorithm costs the same as its centralized counterpart.
    """
    if alg not in COST_ALGORITHMS:
        raise ValueError(f"unknown algorithm {alg!r}; expected one of {COST_ALGORITHMS}")
    uses_ts = alg in ("LinTS", "VFTS")
    federated = alg in ("VFUCB", "VFTS") and include_o3m
    stage1 = p.d ** 3 if federated else 0
    stage2 = p.T * (selection_ops(uses_ts, p.K, p.d) + (o3m_ops(p) if federated else 0))
    stage3 = p.T * update_ops(uses_ts, p.d)
    elements = comm_elements(p) if alg in ("VFUCB", "VFTS") else 0
    _check(stage1 + stage2 + stage3, "operation count")
    return CostBreakdown(
        alg, stage1, stage2, stage3, elements, _check(elements * p.element_bytes, "byte count")
    )


def comm_elements(p):
    """Elements exchanged between participants: ``d² + T·K·M·d``.

    Raises:
        CostOverflowError: the count exceeds a signed 64-bit integer.
    """
    return _check(p.d * p.d + p.T * p.K * p.M * p.d, "element count")


def comm_bytes(p):
    return _check(comm_elements(p) * p.element_bytes, "byte count")


def relative_cost(alg_fed, alg_central, p):
    """Ratio of total operation counts, federated over centralized."""
    pairs = {("VFUCB", "LinUCB"), ("VFTS", "LinTS"), ("LinUCB", "LinUCB"), ("LinTS", "LinTS")}
    if (alg_fed, alg_central) not in pairs:
        raise ValueError(f"{alg_fed} is not the federated counterpart of {alg_central}")
    return compute_ops(alg_fed, p).total_ops / compute_ops(alg_central, p).total_ops
