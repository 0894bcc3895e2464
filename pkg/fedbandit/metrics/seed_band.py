"""
Seed Bands
===========
"""

import numpy as np


def seed_band(traces):
    """Mean and standard deviation across seeds of equally long traces.

    Args:
        traces: ``(num_seeds, T)`` array-like.

    Returns:
        :obj:`dict` with ``mean``, ``std``, ``lo = mean - std`` and ``hi = mean + std``.
        The standard deviation uses ``ddof=1`` and is zero for a single seed.
    """
    traces = np.asarray(traces, dtype=np.float64)
    if traces.ndim != 2 or traces.shape[0] < 1:
        raise ValueError(f"expected a (num_seeds, T) array, got shape {traces.shape}")
    mean = traces.mean(axis=0)
    std = traces.std(axis=0, ddof=1) if traces.shape[0] > 1 else np.zeros_like(mean)
    return {"mean": mean, "std": std, "lo": mean - std, "hi": mean + std}


def common_length(traces):
    """Cuts traces to their shortest length (truncated runs are shorter)."""
    n = min(len(t) for t in traces)
    return np.array([np.asarray(t)[:n] for t in traces])
