"""
Initial states: the single-node start, superpositions of eigenvectors, the
figure presets, and loading states from the plain-text state format.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .spectral import eigenvector_state
from .walk_core import WalkState

__all__ = [
    "SuperpositionTerm",
    "StateFileError",
    "localized_state",
    "eigen_superposition",
    "parse_superposition",
    "fig4_state",
    "fig5_state",
    "FIGURE_CYCLE_LENGTH",
    "load_state",
]

# Cycle length assumed for the eigenvector-superposition figures: the pairs
# (5, 7), (3, 9) and (15, 21) are degenerate together only when d = 24.
FIGURE_CYCLE_LENGTH = 24

LOAD_NORM_TOL = 1e-6
ZERO_NORM = 1e-9


class StateFileError(ValueError):
    """Raised for a malformed or inconsistent state file."""


@dataclass(frozen=True)
class SuperpositionTerm:
    j: int
    k: int
    coefficient: complex = 1.0


def localized_state(d: int, v0: int) -> WalkState:
    """Walker on node ``v0`` with coin state ``(|0> + i|1>) / sqrt 2``."""
    if not 0 <= v0 < d:
        raise ValueError(f"start node {v0} out of range for d={d}")
    amps = np.zeros(2 * d, dtype=np.complex128)
    amps[v0] = 1.0 / np.sqrt(2.0)
    amps[d + v0] = 1j / np.sqrt(2.0)
    return WalkState(d, amps)


def eigen_superposition(
    d: int,
    terms: Iterable[SuperpositionTerm],
    return_norm: bool = False,
):
    """
    Normalized linear combination of eigenvectors ``sum c_jk phi_jk``.

    Parameters
    ----------
    d : int
        Cycle length.
    terms : iterable of SuperpositionTerm
        Eigen-indices with their coefficients.  Repeated indices add up.
    return_norm : bool
        Also return the norm of the raw combination (the factor divided out).

    Raises
    ------
    ValueError
        For an empty term list or a combination with (numerically) zero norm.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("superposition needs at least one term")
    amps = np.zeros(2 * d, dtype=np.complex128)
    for term in terms:
        amps += complex(term.coefficient) * eigenvector_state(term.j, term.k, d).amplitudes
    norm = float(np.linalg.norm(amps))
    if norm < ZERO_NORM:
        raise ValueError("superposition has zero norm")
    state = WalkState(d, amps / norm)
    return (state, norm) if return_norm else state


def parse_superposition(text: str) -> list[SuperpositionTerm]:
    """
    Parse ``"j,k,re,im;j,k,re,im;..."`` into terms.

    >>> parse_superposition("5,0,1,0;7,0,1,0")[1]
    SuperpositionTerm(j=7, k=0, coefficient=(1+0j))
    """
    terms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 'j,k,re,im', got {chunk!r}")
        j, k = int(parts[0]), int(parts[1])
        terms.append(SuperpositionTerm(j, k, complex(float(parts[2]), float(parts[3]))))
    if not terms:
        raise ValueError("empty superposition")
    return terms


def fig4_state(d: int = FIGURE_CYCLE_LENGTH) -> WalkState:
    """``(phi_{5,0} + phi_{7,0}) / sqrt 2``: an invariant non-uniform distribution."""
    c = 1.0 / np.sqrt(2.0)
    return eigen_superposition(d, [SuperpositionTerm(5, 0, c), SuperpositionTerm(7, 0, c)])


def fig5_state(d: int = FIGURE_CYCLE_LENGTH) -> WalkState:
    """``(phi_{3,0} + phi_{9,0} - phi_{15,0} - phi_{21,0}) / 2``."""
    return eigen_superposition(
        d,
        [
            SuperpositionTerm(3, 0, 0.5),
            SuperpositionTerm(9, 0, 0.5),
            SuperpositionTerm(15, 0, -0.5),
            SuperpositionTerm(21, 0, -0.5),
        ],
    )


def load_state(path: Union[str, Path]) -> WalkState:
    """
    Read a state written in the plain-text format.

    Lines starting with ``#`` and blank lines are skipped.  The header
    ``d=<int>`` must come first; every ``(s, v)`` pair must appear exactly
    once.  A norm within ``1e-6`` of 1 is accepted and rescaled to unit norm.
    """
    d = None
    entries: dict[tuple[int, int], complex] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if d is None:
            key, sep, value = line.partition("=")
            if key.strip() != "d" or not sep:
                raise StateFileError(f"line {lineno}: expected header 'd=<int>', got {raw!r}")
            try:
                d = int(value)
            except ValueError:
                raise StateFileError(f"line {lineno}: bad cycle length {value!r}") from None
            if d < 2:
                raise StateFileError(f"line {lineno}: cycle length must be >= 2, got {d}")
            continue
        parts = line.split()
        if len(parts) != 4:
            raise StateFileError(f"line {lineno}: expected '<s> <v> <re> <im>', got {raw!r}")
        try:
            s, v = int(parts[0]), int(parts[1])
            amp = complex(float(parts[2]), float(parts[3]))
        except ValueError:
            raise StateFileError(f"line {lineno}: cannot parse {raw!r}") from None
        if s not in (0, 1) or not 0 <= v < d:
            raise StateFileError(f"line {lineno}: index (s={s}, v={v}) out of range for d={d}")
        if (s, v) in entries:
            raise StateFileError(f"line {lineno}: duplicate entry for (s={s}, v={v})")
        entries[(s, v)] = amp
    if d is None:
        raise StateFileError("missing 'd=<int>' header")
    if len(entries) != 2 * d:
        raise StateFileError(f"expected {2 * d} entries for d={d}, found {len(entries)}")
    amps = np.array([entries[(s, v)] for s in (0, 1) for v in range(d)], dtype=np.complex128)
    norm = float(np.linalg.norm(amps))
    if norm < ZERO_NORM:
        raise StateFileError("state has zero norm")
    if abs(norm - 1.0) > LOAD_NORM_TOL:
        raise StateFileError(f"state norm {norm!r} differs from 1 by more than {LOAD_NORM_TOL}")
    return WalkState(d, amps / norm)
