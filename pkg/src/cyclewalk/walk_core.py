"""
Coined Hadamard walk on a cycle of ``d`` nodes.

The walker lives in ``C^2 (coin) x C^d (nodes)``.  Amplitudes are stored as a
flat complex vector of length ``2d`` using the composite index ``s*d + v``,
where ``s`` is the coin value and ``v`` the node.  One step applies the
Hadamard coin to every node and then moves coin-0 amplitude one node down
(``v -> v-1``) and coin-1 amplitude one node up (``v -> v+1``), modulo ``d``.

States and distributions are immutable from the caller's point of view; every
operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "WalkState",
    "Distribution",
    "coin_matrix",
    "shift",
    "step",
    "evolve",
    "node_distribution",
    "time_averaged_distribution",
    "dump_state",
]

STATE_NORM_TOL = 1e-8
NEGATIVE_CLAMP = 1e-14
DIST_SUM_TOL = 1e-10

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


def _check_d(d: int) -> int:
    if int(d) != d or d < 2:
        raise ValueError(f"cycle length must be an integer >= 2, got {d!r}")
    return int(d)


@dataclass(frozen=True)
class WalkState:
    """
    Amplitude vector of the walk.

    Parameters
    ----------
    d : int
        Number of nodes on the cycle.
    amplitudes : array_like of complex, shape (2*d,)
        Entry ``s*d + v`` holds the amplitude of ``|s, v>``.
    """

    d: int
    amplitudes: NDArray[np.complex128] = field(repr=False)

    def __post_init__(self) -> None:
        d = _check_d(self.d)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape != (2 * d,):
            raise ValueError(f"expected {2 * d} amplitudes for d={d}, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def coin_components(self) -> NDArray[np.complex128]:
        """Amplitudes reshaped to ``(2, d)``: row ``s`` holds coin value ``s``."""
        return self.amplitudes.reshape(2, self.d)

    def amplitude(self, s: int, v: int) -> complex:
        return complex(self.amplitudes[s * self.d + v])


@dataclass(frozen=True)
class Distribution:
    """
    Probability distribution over the ``d`` nodes.

    Entries a hair below zero (floating-point dust, down to ``-1e-14``) are
    clamped to zero.  Anything more negative, or a total that is not 1 within
    ``1e-10``, raises ``ValueError``.
    """

    d: int
    probs: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        d = _check_d(self.d)
        p = np.array(self.probs, dtype=np.float64).reshape(-1)
        if p.shape != (d,):
            raise ValueError(f"expected {d} probabilities, got {p.size}")
        if not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite")
        if p.min() < -NEGATIVE_CLAMP:
            raise ValueError(f"negative probability {p.min():.3e}")
        p = np.where(p < 0.0, 0.0, p)
        total = p.sum()
        if abs(total - 1.0) > DIST_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "probs", p)

    @classmethod
    def uniform(cls, d: int) -> "Distribution":
        return cls(d, np.full(d, 1.0 / d))

    def __len__(self) -> int:
        return self.d

    def __getitem__(self, v: int) -> float:
        return float(self.probs[v])


def coin_matrix() -> NDArray[np.complex128]:
    """Normalized Hadamard coin ``(1/sqrt 2) [[1, 1], [1, -1]]``."""
    return _HADAMARD.copy()


def _require_normalized(state: WalkState) -> None:
    if abs(state.norm - 1.0) > STATE_NORM_TOL:
        raise ValueError(f"state is not normalized (norm = {state.norm!r})")


def _shift_rows(psi: NDArray[np.complex128]) -> NDArray[np.complex128]:
    # psi has shape (2, d); coin 0 moves v -> v-1, coin 1 moves v -> v+1
    return np.stack([np.roll(psi[0], -1), np.roll(psi[1], 1)])


def _step_rows(psi: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return _shift_rows(_HADAMARD @ psi)


def shift(state: WalkState) -> WalkState:
    """Apply only the conditional shift, ``|s, v> -> |s, v + 2s - 1 mod d>``."""
    return WalkState(state.d, _shift_rows(state.coin_components()))


def step(state: WalkState) -> WalkState:
    """
    One step of the walk, ``S (H x I) |psi>``.

    Raises
    ------
    ValueError
        If the input norm differs from 1 by more than ``1e-8``.
    """
    _require_normalized(state)
    return WalkState(state.d, _step_rows(state.coin_components()))


def evolve(state: WalkState, n: int) -> WalkState:
    """Apply :func:`step` ``n`` times; ``n = 0`` returns ``state`` unchanged."""
    if n < 0:
        raise ValueError(f"step count must be >= 0, got {n}")
    _require_normalized(state)
    psi = state.coin_components()
    for _ in range(n):
        psi = _step_rows(psi)
    return WalkState(state.d, psi)


def _node_probs(psi: NDArray[np.complex128]) -> NDArray[np.float64]:
    return (psi.real**2 + psi.imag**2).sum(axis=0)


def node_distribution(state: WalkState) -> Distribution:
    """Probability of each node, summed over both coin values."""
    _require_normalized(state)
    p = _node_probs(state.coin_components())
    # renormalize away rounding drift accumulated over long evolutions
    return Distribution(state.d, p / p.sum())


def time_averaged_distribution(initial: WalkState, n: int) -> Distribution:
    """
    Running average of the node distributions after steps ``1..n``.

    The step-0 distribution is excluded from the window.

    Parameters
    ----------
    initial : WalkState
        Normalized starting state.
    n : int
        Number of steps to average over, ``n >= 1``.
    """
    if n < 1:
        raise ValueError(f"averaging window must contain at least one step, got n={n}")
    _require_normalized(initial)
    psi = initial.coin_components()
    acc = np.zeros(initial.d)
    for _ in range(n):
        psi = _step_rows(psi)
        acc += _node_probs(psi)
    acc /= n
    return Distribution(initial.d, acc / acc.sum())


def dump_state(state: WalkState, path: Union[str, Path]) -> None:
    """
    Write ``state`` in the plain-text state format.

    The first line is ``d=<int>``, followed by ``2d`` lines ``<s> <v> <re> <im>``
    in composite-index order.  Values use ``repr`` so a round trip is exact.
    """
    lines = [f"d={state.d}"]
    for idx, a in enumerate(state.amplitudes):
        s, v = divmod(idx, state.d)
        lines.append(f"{s} {v} {float(a.real)!r} {float(a.imag)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
