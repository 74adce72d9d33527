"""
Analytic eigensystem of the Hadamard walk on a cycle and the limiting
(time-averaged) distribution it implies.

The step operator commutes with rotations of the cycle, so every eigenvector
is a plane wave over the nodes times a fixed coin spinor.  For momentum
``j = 0..d-1`` and branch ``k = 0, 1`` (with ``theta = 2 pi j / d``)::

    c_jk = ((-1)^k sqrt(1 + cos^2 theta) - i sin theta) / sqrt 2
    b_jk = e^{i theta} ((-1)^k sqrt(1 + cos^2 theta) - cos theta)
    a_jk = 1 / sqrt(d (1 + |b_jk|^2))
    phi_jk(s=0, v) = a_jk e^{-i theta v},  phi_jk(s=1, v) = a_jk b_jk e^{-i theta v}

The node phase ``e^{-i theta v}`` goes with the shift convention of
:mod:`cyclewalk.walk_core` (coin 0 moves down, coin 1 moves up).

Two eigenvalues coincide exactly when they share ``k`` and their momenta
satisfy ``j' = d/2 - j (mod d)``, which only happens for even ``d``.  Classes
are built from that index rule rather than by comparing floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from .walk_core import Distribution, WalkState, _require_normalized

__all__ = [
    "EigenIndex",
    "EigenPair",
    "DegeneracyClasses",
    "eigenvalue",
    "coin_ratio",
    "normalization",
    "eigenpair",
    "eigensystem",
    "eigenvector_state",
    "t_max",
    "degeneracy_classes",
    "overlaps",
    "limiting_distribution_spectral",
]


@dataclass(frozen=True, order=True)
class EigenIndex:
    j: int
    k: int


@dataclass(frozen=True)
class EigenPair:
    index: EigenIndex
    eigenvalue: complex
    a: float
    b: complex


def _check_index(j: int, k: int, d: int) -> None:
    if d < 2:
        raise ValueError(f"cycle length must be >= 2, got {d}")
    if not 0 <= j < d:
        raise ValueError(f"momentum index j={j} out of range for d={d}")
    if k not in (0, 1):
        raise ValueError(f"branch index must be 0 or 1, got {k}")


def _root(j: int, d: int) -> float:
    # sqrt(1 + cos^2) with the momentum reduced mod d for an exact j = 0 case
    return float(np.sqrt(1.0 + np.cos(2.0 * np.pi * (j % d) / d) ** 2))


def eigenvalue(j: int, k: int, d: int) -> complex:
    """Eigenvalue ``c_jk`` of the step operator (unit modulus)."""
    _check_index(j, k, d)
    theta = 2.0 * np.pi * j / d
    return complex((-1) ** k * _root(j, d), -np.sin(theta)) / np.sqrt(2.0)


def coin_ratio(j: int, k: int, d: int) -> complex:
    """Ratio ``b_jk`` of the coin-1 to coin-0 component of the eigenvector."""
    _check_index(j, k, d)
    theta = 2.0 * np.pi * j / d
    return complex(np.exp(1j * theta) * ((-1) ** k * _root(j, d) - np.cos(theta)))


def normalization(j: int, k: int, d: int) -> float:
    """Positive real prefactor ``a_jk`` making the eigenvector unit norm."""
    b = coin_ratio(j, k, d)
    return float(1.0 / np.sqrt(d * (1.0 + abs(b) ** 2)))


def eigenpair(j: int, k: int, d: int) -> EigenPair:
    return EigenPair(
        EigenIndex(j, k), eigenvalue(j, k, d), normalization(j, k, d), coin_ratio(j, k, d)
    )


@lru_cache(maxsize=64)
def eigensystem(d: int) -> tuple[EigenPair, ...]:
    """All ``2d`` eigenpairs, ordered by ``j`` then ``k``."""
    return tuple(eigenpair(j, k, d) for j in range(d) for k in (0, 1))


def _plane_wave(j: int, d: int) -> NDArray[np.complex128]:
    return np.exp(-2j * np.pi * j * np.arange(d) / d)


def eigenvector_state(j: int, k: int, d: int) -> WalkState:
    """The normalized eigenvector ``phi_jk`` as a :class:`WalkState`."""
    pair = eigenpair(j, k, d)
    wave = pair.a * _plane_wave(j, d)
    return WalkState(d, np.concatenate([wave, pair.b * wave]))


def t_max(d: int) -> int:
    return (d - 2) // 4


@dataclass(frozen=True)
class DegeneracyClasses:
    """
    Partition of the eigen-index set into equal-eigenvalue classes.

    Attributes
    ----------
    d : int
        Cycle length.
    classes : tuple of tuple of EigenIndex
        Each inner tuple lists every index sharing one eigenvalue.  Classes
        have one or two members.
    t_max : int
        ``floor((d - 2) / 4)``, the number of ``(t, d/2 - t)`` pairings.
    """

    d: int
    classes: tuple[tuple[EigenIndex, ...], ...]
    t_max: int

    @property
    def omega(self) -> complex:
        """Primitive ``d``-th root of unity ``e^{2 pi i / d}``."""
        return complex(np.exp(2j * np.pi / self.d))

    def class_id(self, j: int, k: int) -> int:
        return self._lookup()[EigenIndex(j, k)]

    def _lookup(self) -> dict[EigenIndex, int]:
        lookup = self.__dict__.get("_lookup_cache")
        if lookup is None:
            lookup = {idx: cid for cid, cls in enumerate(self.classes) for idx in cls}
            object.__setattr__(self, "_lookup_cache", lookup)
        return lookup

    def __len__(self) -> int:
        return len(self.classes)


def _momentum_partner(j: int, d: int) -> int:
    """Momentum sharing ``j``'s eigenvalue within a branch (``j`` itself if none)."""
    if d % 2:
        return j
    return (d // 2 - j) % d


@lru_cache(maxsize=64)
def degeneracy_classes(d: int) -> DegeneracyClasses:
    """
    Group eigen-indices by eigenvalue.

    For odd ``d`` every class is a singleton.  For even ``d`` the pairs are
    ``{0, d/2}``, ``{t, d/2 - t}`` and ``{d - t, d/2 + t}`` for
    ``t = 1..t_max``, within each branch ``k``; ``d/4`` and ``3d/4`` (when
    integral) stay alone.
    """
    if d < 2:
        raise ValueError(f"cycle length must be >= 2, got {d}")
    classes: list[tuple[EigenIndex, ...]] = []
    for k in (0, 1):
        seen: set[int] = set()
        for j in range(d):
            if j in seen:
                continue
            p = _momentum_partner(j, d)
            members = sorted({j, p})
            seen.update(members)
            classes.append(tuple(EigenIndex(m, k) for m in members))
    return DegeneracyClasses(d, tuple(classes), t_max(d))


def overlaps(state: WalkState) -> NDArray[np.complex128]:
    """
    Inner products ``<phi_jk | state>`` as a ``(d, 2)`` array indexed ``[j, k]``.
    """
    d = state.d
    psi = state.coin_components()
    pairs = eigensystem(d)
    a = np.array([p.a for p in pairs]).reshape(d, 2)
    b = np.array([p.b for p in pairs]).reshape(d, 2)
    # conjugated plane waves: F[j, v] = e^{+2 pi i j v / d}
    F = np.exp(2j * np.pi * np.outer(np.arange(d), np.arange(d)) / d)
    f0 = F @ psi[0]
    f1 = F @ psi[1]
    return a * (f0[:, None] + np.conj(b) * f1[:, None])


def limiting_distribution_spectral(initial: WalkState, chunk: int = 256) -> Distribution:
    """
    Limit of the time-averaged node distribution for an arbitrary start.

    Only cross terms between eigenvectors with equal eigenvalues survive the
    time average, so the limit equals the sum over degeneracy classes of the
    node distribution of the state's projection onto each class.  Expanding
    the squared norm gives the usual double sum over index pairs within a
    class.  Cost is ``O(d^2)``.
    """
    _require_normalized(initial)
    d = initial.d
    ov = overlaps(initial)
    pairs = eigensystem(d)
    a = np.array([p.a for p in pairs]).reshape(d, 2)
    b = np.array([p.b for p in pairs]).reshape(d, 2)
    # coin spinor weights, w[j, k, s]
    w = np.stack([ov * a, ov * a * b], axis=-1)

    cls = degeneracy_classes(d)
    first = np.array([c[0].j for c in cls.classes])
    second = np.array([c[-1].j for c in cls.classes])
    branch = np.array([c[0].k for c in cls.classes])
    paired = (first != second).astype(float)

    nodes = np.arange(d)
    probs = np.zeros(d)
    for lo in range(0, len(first), chunk):
        sl = slice(lo, lo + chunk)
        j1, j2, kk, m = first[sl], second[sl], branch[sl], paired[sl]
        e1 = np.exp(-2j * np.pi * np.outer(j1, nodes) / d)
        e2 = np.exp(-2j * np.pi * np.outer(j2, nodes) / d)
        # projection amplitudes, shape (classes, 2, d)
        proj = w[j1, kk][:, :, None] * e1[:, None, :]
        proj += (m[:, None] * w[j2, kk])[:, :, None] * e2[:, None, :]
        probs += (proj.real**2 + proj.imag**2).sum(axis=(0, 1))
    return Distribution(d, probs / probs.sum())
