import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclewalk import spectral
from cyclewalk.metrics import tv, tv_from_uniform
from cyclewalk.spectral import (
    EigenIndex,
    coin_ratio,
    degeneracy_classes,
    eigensystem,
    eigenvalue,
    eigenvector_state,
    limiting_distribution_spectral,
    normalization,
    overlaps,
)
from cyclewalk.states import SuperpositionTerm, eigen_superposition, fig5_state, localized_state
from cyclewalk.walk_core import WalkState, evolve, node_distribution, step, time_averaged_distribution

from oracles import dense_eigenbasis, dense_limiting, dense_step_operator, random_state_vector


@pytest.mark.parametrize("d", [2, 5, 8, 13])
def test_eigenvalue_at_zero_momentum(d):
    assert eigenvalue(0, 0, d) == pytest.approx(1.0, abs=1e-15)
    assert eigenvalue(0, 1, d) == pytest.approx(-1.0, abs=1e-15)


@pytest.mark.parametrize("d", [4, 8, 24])
def test_eigenvalue_at_quarter_momentum(d):
    assert eigenvalue(d // 4, 0, d) == pytest.approx((1 - 1j) / np.sqrt(2), abs=1e-15)


@pytest.mark.parametrize("d", range(2, 33))
def test_eigenvalues_have_unit_modulus(d):
    for pair in eigensystem(d):
        assert abs(abs(pair.eigenvalue) - 1) < 1e-12
        assert pair.a == pytest.approx(1 / np.sqrt(d * (1 + abs(pair.b) ** 2)), abs=1e-12)


@pytest.mark.parametrize("d", [3, 6, 10, 15])
def test_eigenvalues_match_dense_spectrum(d):
    dense = np.sort_complex(np.linalg.eigvals(dense_step_operator(d)).round(10))
    analytic = np.sort_complex(np.array([p.eigenvalue for p in eigensystem(d)]).round(10))
    assert np.allclose(dense, analytic, atol=1e-9)


@pytest.mark.parametrize("d", range(2, 33))
def test_eigenvector_residual(d):
    for j, k in itertools.product(range(d), (0, 1)):
        phi = eigenvector_state(j, k, d)
        residual = step(phi).amplitudes - eigenvalue(j, k, d) * phi.amplitudes
        assert np.linalg.norm(residual) < 1e-10


@pytest.mark.parametrize("d", [2, 3, 8, 17, 32])
def test_eigenvectors_are_orthonormal(d):
    basis = np.array([eigenvector_state(p.index.j, p.index.k, d).amplitudes for p in eigensystem(d)])
    gram = basis.conj() @ basis.T
    assert np.abs(gram - np.eye(2 * d)).max() < 1e-10


@pytest.mark.parametrize("d", [5, 12, 40])
def test_zero_momentum_coefficients(d):
    assert coin_ratio(0, 0, d) == pytest.approx(np.sqrt(2) - 1, abs=1e-15)
    assert normalization(0, 0, d) == pytest.approx(1 / np.sqrt(d * (4 - 2 * np.sqrt(2))), abs=1e-15)


@pytest.mark.parametrize("j,k", [(0, 0), (3, 1), (23, 0)])
def test_eigenvector_distribution_uniform(j, k):
    assert np.allclose(node_distribution(eigenvector_state(j, k, 24)).probs, 1 / 24, atol=1e-14)


@pytest.mark.parametrize("args", [(5, 0, 5), (-1, 0, 5), (0, 2, 5)])
def test_index_out_of_range(args):
    with pytest.raises(ValueError):
        eigenvalue(*args)
    with pytest.raises(ValueError):
        eigenvector_state(*args)


def test_odd_cycle_classes_are_singletons():
    cls = degeneracy_classes(5)
    assert len(cls) == 10
    assert all(len(c) == 1 for c in cls.classes)


def test_fig4_pair_is_degenerate():
    cls = degeneracy_classes(24)
    assert (EigenIndex(5, 0), EigenIndex(7, 0)) in cls.classes
    assert cls.class_id(5, 0) == cls.class_id(7, 0)


def test_four_cycle_merges_only_zero_and_half():
    cls = degeneracy_classes(4)
    assert cls.t_max == 0
    merged = [c for c in cls.classes if len(c) > 1]
    assert sorted(merged) == [(EigenIndex(0, 0), EigenIndex(2, 0)), (EigenIndex(0, 1), EigenIndex(2, 1))]


@pytest.mark.parametrize("d", range(2, 41))
def test_classes_partition_and_match_numerics(d):
    cls = degeneracy_classes(d)
    members = [idx for c in cls.classes for idx in c]
    assert sorted(members) == sorted(EigenIndex(j, k) for j in range(d) for k in (0, 1))
    reps = []
    for c in cls.classes:
        vals = [eigenvalue(i.j, i.k, d) for i in c]
        assert max(abs(v - vals[0]) for v in vals) < 1e-10
        assert len({i.k for i in c}) == 1
        reps.append(vals[0])
    reps = np.array(reps)
    gaps = np.abs(reps[:, None] - reps[None, :]) + np.eye(len(reps)) * 10
    assert gaps.min() > 1e-6


def test_classes_reject_tiny_cycle():
    with pytest.raises(ValueError):
        degeneracy_classes(1)


@settings(max_examples=30, deadline=None)
@given(d=st.integers(2, 30), seed=st.integers(0, 2**32 - 1))
def test_overlaps_are_complete(d, seed):
    psi = WalkState(d, random_state_vector(np.random.default_rng(seed), d))
    assert np.sum(np.abs(overlaps(psi)) ** 2) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("d", [3, 5, 9, 15, 25])
def test_odd_cycles_limit_uniform(d, rng):
    for _ in range(3):
        p = limiting_distribution_spectral(WalkState(d, random_state_vector(rng, d)))
        assert np.abs(p.probs - 1 / d).max() < 1e-12


@pytest.mark.parametrize("d", [4, 6, 7, 10, 12, 16])
def test_limit_matches_dense_eigenspace_oracle(d, rng):
    psi = random_state_vector(rng, d)
    p = limiting_distribution_spectral(WalkState(d, psi)).probs
    assert np.allclose(p, dense_limiting(psi, d), atol=1e-10)


def test_limit_of_single_eigenvector_is_uniform():
    p = limiting_distribution_spectral(eigenvector_state(7, 1, 24))
    assert np.allclose(p.probs, 1 / 24, atol=1e-13)


def test_localized_limit_has_twin_peaks_on_24_cycle():
    p = limiting_distribution_spectral(localized_state(24, 5)).probs
    assert np.argmax(p) in (5, 17)
    assert p[5] == pytest.approx(p[17], abs=1e-12)
    assert p[5] > 1 / 24


@pytest.mark.parametrize("d", [8, 12, 24])
def test_superposition_within_class_is_invariant(d, rng):
    cls = degeneracy_classes(d)
    pairs = [c for c in cls.classes if len(c) == 2]
    for c in pairs[:4]:
        coeffs = rng.normal(size=2) + 1j * rng.normal(size=2)
        state = eigen_superposition(d, [SuperpositionTerm(i.j, i.k, a) for i, a in zip(c, coeffs)])
        p0 = node_distribution(state).probs
        for n in (1, 7, 30):
            assert np.abs(node_distribution(evolve(state, n)).probs - p0).max() < 1e-12
        assert np.abs(limiting_distribution_spectral(state).probs - p0).max() < 1e-12


def test_limit_rejects_unnormalized():
    with pytest.raises(ValueError):
        limiting_distribution_spectral(WalkState(4, np.ones(8)))


@pytest.mark.slow
@pytest.mark.parametrize(
    "make",
    [lambda: localized_state(10, 2), lambda: localized_state(18, 0), lambda: localized_state(30, 11), fig5_state],
    ids=["loc10", "loc18", "loc30", "fig5"],
)
def test_limit_matches_long_simulation(make):
    state = make()
    assert tv(limiting_distribution_spectral(state), time_averaged_distribution(state, 100_000)) < 0.01


def test_eigensystem_is_cached():
    assert spectral.eigensystem(12) is spectral.eigensystem(12)


def test_omega_is_primitive_root():
    cls = degeneracy_classes(9)
    assert cls.omega ** 9 == pytest.approx(1.0, abs=1e-12)
    assert tv_from_uniform(limiting_distribution_spectral(localized_state(9, 0))) < 1e-12
