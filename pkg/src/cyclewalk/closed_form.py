"""
Exact limiting distribution for a walk started on a single node.

The start is ``(|0, v0> + i |1, v0>) / sqrt 2``.  On an even cycle with
``d >= 6`` the limit has the form ``pi(v) = (1 + Pi(v)) / d``, where the
correction ``Pi`` depends on ``v`` only through the cycle distance ``Delta``
to ``v0``.  Three evaluations are provided:

* ``route="series"``: the reduced block sums ``F``, ``F0``, ``F_t`` combined
  with the cosine phases of each degenerate pair;
* ``route="direct"``: ``Pi = (-1)^Delta 4 S / d`` with the finite
  trigonometric sum ``S`` evaluated term by term;
* ``route="closed"``: the geometric resummation of ``S`` in powers of
  ``z = 3 - 2 sqrt 2``.

Odd ``d`` and ``d in {2, 4}`` give the exact uniform distribution.

The large-``d`` limit of the correction, with exponentially decaying cusps
at ``v0`` and at the opposite node ``v0 + d/2``, is :func:`asymptotic_correction`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .spectral import coin_ratio, normalization, t_max
from .walk_core import Distribution

__all__ = [
    "Z",
    "SQRT2",
    "ClosedFormContext",
    "cycle_distance",
    "xi",
    "f_blocks",
    "f_blocks_from_definitions",
    "series_S_direct",
    "series_S_closed",
    "correction_pi",
    "correction_pi_direct",
    "correction_pi_series",
    "limiting_distribution_localized",
    "eta",
    "asymptotic_correction",
    "asymptotic_distribution",
]

Z = 3.0 - 2.0 * np.sqrt(2.0)
SQRT2 = float(np.sqrt(2.0))
# 8z / (1 - z^2) == sqrt 2 exactly; use the stable form
_GEOM = SQRT2


def cycle_distance(u: int, v: int, d: int) -> int:
    """Number of edges on the shorter arc between nodes ``u`` and ``v``."""
    diff = abs(u - v) % d
    return min(diff, d - diff)


def xi(d: int) -> int:
    """1 when ``d/2`` is even, 0 when it is odd."""
    if d % 2:
        raise ValueError(f"parity flag needs an even cycle length, got {d}")
    return 1 if (d // 2) % 2 == 0 else 0


@dataclass(frozen=True)
class ClosedFormContext:
    """
    Derived scalars for a localized start on an even cycle.

    ``delta[v]`` is the distance from ``v`` to ``v0`` and ``delta_prime[v]``
    the distance to the opposite node ``v0 + d/2``.
    """

    d: int
    v0: int
    z: float
    xi: int
    t_max: int
    delta: NDArray[np.int64]
    delta_prime: NDArray[np.int64]

    @property
    def opposite(self) -> int:
        return (self.v0 + self.d // 2) % self.d

    @classmethod
    def build(cls, d: int, v0: int) -> "ClosedFormContext":
        if d < 2 or d % 2:
            raise ValueError(f"closed form needs an even cycle length >= 2, got {d}")
        if not 0 <= v0 < d:
            raise ValueError(f"start node {v0} out of range for d={d}")
        nodes = np.arange(d)
        diff = np.abs(nodes - v0)
        delta = np.minimum(diff, d - diff)
        delta_prime = d // 2 - delta
        return cls(d, v0, Z, xi(d), t_max(d), delta, delta_prime)


def _check_even(d: int, minimum: int = 2) -> None:
    if d % 2 or d < minimum:
        raise ValueError(f"expected an even cycle length >= {minimum}, got {d}")


def _check_delta(d: int, delta: int) -> None:
    if not 0 <= delta <= d // 2:
        raise ValueError(f"distance {delta} out of range [0, {d // 2}] for d={d}")


def f_blocks(d: int) -> tuple[float, float, NDArray[np.float64]]:
    """
    Reduced block sums ``(F, F0, F_t)`` for even ``d``.

    ``F = 1/d``, ``F0 = 0`` and
    ``F_t = (2 / d^2) sin^2(2 pi t / d) / (1 + cos^2(2 pi t / d))``
    for ``t = 1..t_max``; ``F_t`` is empty when ``t_max = 0``.
    """
    _check_even(d)
    t = np.arange(1, t_max(d) + 1)
    x = 2.0 * np.pi * t / d
    ft = 2.0 / d**2 * np.sin(x) ** 2 / (1.0 + np.cos(x) ** 2)
    return 1.0 / d, 0.0, ft


def f_blocks_from_definitions(d: int) -> tuple[complex, complex, NDArray[np.complex128]]:
    """
    The same block sums built from the eigenvector coefficients.

    Uses ``g_jk = a_jk (1 + i conj(b_jk)) / sqrt 2``,
    ``A_jj'k = a_jk a_j'k (1 + b_jk conj(b_j'k))`` and
    ``f(j, j', k) = g_jk conj(g_j'k) A_jj'k``.  Kept as an independent check of
    :func:`f_blocks`; ``O(d)``.
    """
    _check_even(d)
    h = d // 2

    def g(j: int, k: int) -> complex:
        return normalization(j, k, d) * (1 + 1j * np.conj(coin_ratio(j, k, d))) / SQRT2

    def f(j: int, jp: int, k: int) -> complex:
        A = (
            normalization(j, k, d)
            * normalization(jp, k, d)
            * (1 + coin_ratio(j, k, d) * np.conj(coin_ratio(jp, k, d)))
        )
        return g(j, k) * np.conj(g(jp, k)) * A

    F = sum(f(j, j, k) for j in range(d) for k in (0, 1))
    F0 = sum(f(0, h, k) for k in (0, 1))
    ft = np.array(
        [
            sum(f(t, h - t, k) + f(h + t, d - t, k) for k in (0, 1))
            for t in range(1, t_max(d) + 1)
        ],
        dtype=np.complex128,
    )
    return complex(F), complex(F0), ft


def series_S_direct(d: int, delta: int) -> float:
    """Finite sum ``sum_t cos(4 pi t Delta / d) (2 / (1 + cos^2(2 pi t / d)) - 1)``."""
    _check_even(d, 6)
    _check_delta(d, delta)
    t = np.arange(1, t_max(d) + 1)
    return float(
        np.sum(
            np.cos(4.0 * np.pi * t * delta / d) * (2.0 / (1.0 + np.cos(2.0 * np.pi * t / d) ** 2) - 1.0)
        )
    )


def series_S_closed(d: int, delta: int) -> float:
    """
    Resummed form of :func:`series_S_direct`.

    Expanding ``4 / (3 + cos y)`` as ``sqrt 2 (1 + 2 sum_m (-z)^m cos(m y))``
    and summing the cosines over ``t`` leaves Kronecker terms at ``Delta = 0``
    and ``Delta = d/2``, a geometric term in ``z^Delta`` and ``z^{d/2-Delta}``,
    and a constant ``1 - 4z/(1-z)^2 - 4 z (-1)^Delta xi / (1+z)^2``, which
    equals ``-(-1)^Delta xi / 2``.
    """
    _check_even(d, 6)
    _check_delta(d, delta)
    h = d // 2
    sign = (-1) ** delta
    x = xi(d)
    kron = float(delta == 0) + float(delta == h)
    qh = (-Z) ** h
    geometric = (Z ** (h - delta) * (-1) ** h + Z**delta) / (1.0 - qh)
    const = 1.0 - 4.0 * Z / (1.0 - Z) ** 2 - 4.0 * Z * sign * x / (1.0 + Z) ** 2
    return -d / 4.0 * kron + sign * d / 4.0 * _GEOM * geometric + const


def correction_pi_direct(d: int, delta: int) -> float:
    """``(-1)^Delta 4 S / d`` with ``S`` summed term by term."""
    return (-1) ** delta * 4.0 * series_S_direct(d, delta) / d


def correction_pi(d: int, delta: int) -> float:
    """
    Closed-form correction ``Pi`` at distance ``delta`` from the start node.

    The three pieces are the Kronecker spikes at ``Delta = 0`` and ``d/2``,
    the two exponential cusps ``sqrt 2 z^Delta`` and ``sqrt 2 z^{d/2-Delta}``
    (signed by the parity of ``d/2``), and a flat ``-2 xi / d`` offset.
    """
    _check_even(d, 6)
    _check_delta(d, delta)
    h = d // 2
    sign = (-1) ** delta
    x = xi(d)
    kron = float(delta == 0) + float(delta == h)
    qh = (-Z) ** h
    geometric = (Z ** (h - delta) * (-1) ** h + Z**delta) / (1.0 - qh)
    tail = sign - 4.0 * sign * Z / (1.0 - Z) ** 2 - 4.0 * Z * x / (1.0 + Z) ** 2
    return -sign * kron + _GEOM * geometric + 4.0 / d * tail


def correction_pi_series(d: int, delta: int) -> float:
    """Correction assembled from the reduced blocks ``F0`` and ``F_t``."""
    _check_even(d, 6)
    _check_delta(d, delta)
    F, F0, ft = f_blocks(d)
    t = np.arange(1, ft.size + 1)
    # each degenerate pair and its mirror contribute 2 Re(F_t e^{4 pi i t Delta / d})
    osc = 2.0 * F0 + 2.0 * np.sum(ft * np.cos(4.0 * np.pi * t * delta / d))
    return d * (-1) ** delta * osc


_ROUTES = {
    "closed": correction_pi,
    "direct": correction_pi_direct,
    "series": correction_pi_series,
}


def limiting_distribution_localized(d: int, v0: int, route: str = "closed") -> Distribution:
    """
    Limiting distribution of the walk started on node ``v0``.

    Parameters
    ----------
    d : int
        Cycle length, ``d >= 2``.
    v0 : int
        Start node.
    route : {"closed", "direct", "series"}
        Which evaluation of the correction term to use for even ``d >= 6``.
    """
    if d < 2:
        raise ValueError(f"cycle length must be >= 2, got {d}")
    if not 0 <= v0 < d:
        raise ValueError(f"start node {v0} out of range for d={d}")
    try:
        corr = _ROUTES[route]
    except KeyError:
        raise ValueError(f"unknown route {route!r}; choose from {sorted(_ROUTES)}") from None
    if d % 2 or d <= 4:
        return Distribution.uniform(d)
    ctx = ClosedFormContext.build(d, v0)
    table = np.array([corr(d, int(x)) for x in range(d // 2 + 1)])
    return Distribution(d, (1.0 + table[ctx.delta]) / d)


def eta(x: int) -> float:
    """Cusp profile ``sqrt 2 z^x - [x == 0]``."""
    if x < 0:
        raise ValueError(f"distance must be >= 0, got {x}")
    return _GEOM * Z**x - float(x == 0)


def asymptotic_correction(delta: int, delta_prime: int, xi_flag: int) -> float:
    """Large-``d`` limit of the correction: ``eta(Delta) - (-1)^xi eta(Delta')``."""
    if xi_flag not in (0, 1):
        raise ValueError(f"parity flag must be 0 or 1, got {xi_flag}")
    return eta(delta) - (-1) ** xi_flag * eta(delta_prime)


def asymptotic_distribution(d: int, v0: int) -> Distribution:
    """
    ``(1 + asymptotic_correction) / d`` rescaled to unit mass.

    The raw large-``d`` profile misses the flat ``-2 xi / d`` offset and so
    carries total mass ``1 + 2 xi / d``; rescaling restores a distribution
    without changing its shape.
    """
    if d < 2:
        raise ValueError(f"cycle length must be >= 2, got {d}")
    if d % 2 or d <= 4:
        return Distribution.uniform(d)
    ctx = ClosedFormContext.build(d, v0)
    raw = np.array(
        [1.0 + asymptotic_correction(int(a), int(b), ctx.xi) for a, b in zip(ctx.delta, ctx.delta_prime)]
    )
    return Distribution(d, raw / raw.sum())
