"""
Cost Grid
==========
"""

import pandas as pd

from .cost_model import CostParams, compute_ops, relative_cost

DEFAULT_D_SWEEP = (10, 20, 50, 100, 200, 500, 1000, 2000, 5000)
DEFAULT_K_VALUES = (100, 500, 1000)
GRID_COLUMNS = [
    "alg",
    "T",
    "K",
    "M",
    "d",
    "stage1",
    "stage2",
    "stage3",
    "total_ops",
    "total_bytes",
    "relative_cost",
]
CENTRAL = {"VFUCB": "LinUCB", "VFTS": "LinTS"}


def cost_grid(
    k_values=DEFAULT_K_VALUES, d_values=DEFAULT_D_SWEEP, M=5, T=5000, algorithms=("VFUCB", "VFTS")
):
    """Table of every federated algorithm's cost over the ``K x d`` grid,
    with its ratio to the centralized counterpart."""
    rows = []
    for alg in algorithms:
        for K in k_values:
            for d in d_values:
                p = CostParams(T=T, K=K, M=M, d=d)
                c = compute_ops(alg, p)
                rows.append(
                    [
                        alg,
                        T,
                        K,
                        M,
                        d,
                        c.stage1,
                        c.stage2,
                        c.stage3,
                        c.total_ops,
                        c.total_bytes,
                        relative_cost(alg, CENTRAL.get(alg, alg), p),
                    ]
                )
    return pd.DataFrame(rows, columns=GRID_COLUMNS)
