"""Total variation distances between node distributions."""

from __future__ import annotations

import numpy as np

from .walk_core import Distribution

__all__ = ["tv", "tv_from_uniform"]


def tv(p: Distribution, q: Distribution) -> float:
    """Half the L1 distance between two distributions on the same cycle."""
    if p.d != q.d:
        raise ValueError(f"distributions live on different cycles ({p.d} vs {q.d})")
    return 0.5 * float(np.abs(p.probs - q.probs).sum())


def tv_from_uniform(p: Distribution) -> float:
    """``(1/2) sum_v |p(v) - 1/d|``; lies in ``[0, 1 - 1/d]``."""
    return 0.5 * float(np.abs(p.probs - 1.0 / p.d).sum())
