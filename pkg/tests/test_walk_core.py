import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclewalk.closed_form import limiting_distribution_localized
from cyclewalk.metrics import tv, tv_from_uniform
from cyclewalk.spectral import eigenvector_state
from cyclewalk.states import localized_state
from cyclewalk.walk_core import (
    Distribution,
    WalkState,
    coin_matrix,
    dump_state,
    evolve,
    node_distribution,
    shift,
    step,
    time_averaged_distribution,
)

from oracles import dense_step_operator, random_state_vector


def test_coin_matrix_entries():
    r = 1 / np.sqrt(2)
    assert np.allclose(coin_matrix(), [[r, r], [r, -r]], atol=1e-15)


def test_coin_is_involution():
    h = coin_matrix()
    assert np.allclose(h @ h, np.eye(2), atol=1e-15)
    assert np.allclose(h @ [1, 0], [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-15)


def test_step_from_localized_start_by_hand():
    # coin maps (1, i)/sqrt2 to ((1+i)/2, (1-i)/2); coin 0 lands on 4, coin 1 on 6
    p = node_distribution(step(localized_state(8, 5))).probs
    expected = np.zeros(8)
    expected[[4, 6]] = 0.5
    assert np.allclose(p, expected, atol=1e-15)


def test_step_on_two_cycle_moves_to_other_node():
    p = node_distribution(step(localized_state(2, 0))).probs
    assert np.allclose(p, [0.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 7, 10, 17])
def test_step_matches_dense_operator(d, rng):
    U = dense_step_operator(d)
    psi = random_state_vector(rng, d)
    out = step(WalkState(d, psi)).amplitudes
    assert np.allclose(out, U @ psi, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(d=st.integers(2, 64), seed=st.integers(0, 2**32 - 1))
def test_step_is_unitary(d, seed):
    psi = random_state_vector(np.random.default_rng(seed), d)
    out = step(WalkState(d, psi))
    assert abs(out.norm - 1) < 1e-12


def test_step_rejects_unnormalized_state():
    with pytest.raises(ValueError, match="normalized"):
        step(WalkState(4, np.ones(8)))


@pytest.mark.parametrize("d", [2, 3, 6, 11])
def test_shift_moves_basis_states(d):
    for s in (0, 1):
        for v in range(d):
            amps = np.zeros(2 * d, dtype=complex)
            amps[s * d + v] = 1
            out = shift(WalkState(d, amps)).amplitudes
            target = s * d + (v + 2 * s - 1) % d
            assert out[target] == 1
            assert np.count_nonzero(out) == 1


def test_evolve_zero_steps_is_identity(rng):
    s = WalkState(9, random_state_vector(rng, 9))
    assert np.array_equal(evolve(s, 0).amplitudes, s.amplitudes)


@pytest.mark.parametrize("a,b", [(0, 5), (3, 4), (17, 23)])
def test_evolve_composes(a, b, rng):
    s = WalkState(12, random_state_vector(rng, 12))
    assert np.allclose(evolve(s, a + b).amplitudes, evolve(evolve(s, a), b).amplitudes, atol=1e-10)


def test_evolve_rejects_negative_steps():
    with pytest.raises(ValueError):
        evolve(localized_state(4, 0), -1)


def test_single_eigenvector_stays_uniform():
    s = eigenvector_state(5, 0, 24)
    for _ in range(60):
        assert np.allclose(node_distribution(s).probs, 1 / 24, atol=1e-13)
        s = step(s)


@pytest.mark.parametrize("r", [1, 4, 9])
def test_evolve_commutes_with_rotation(r, rng):
    d = 13
    psi = random_state_vector(rng, d)

    def rotate(state):
        return WalkState(d, np.roll(state.coin_components(), r, axis=1))

    s = WalkState(d, psi)
    assert np.allclose(rotate(evolve(s, 11)).amplitudes, evolve(rotate(s), 11).amplitudes, atol=1e-12)


def test_node_distribution_of_localized_state():
    p = node_distribution(localized_state(10, 3)).probs
    assert p[3] == pytest.approx(1.0, abs=1e-15)
    assert np.count_nonzero(p) == 1


def test_node_distribution_sums_coins():
    amps = np.zeros(12, dtype=complex)
    amps[0] = 1 / np.sqrt(2)
    amps[6 + 3] = 1j / np.sqrt(2)
    p = node_distribution(WalkState(6, amps)).probs
    assert np.allclose(p, [0.5, 0, 0, 0.5, 0, 0], atol=1e-15)


def test_two_cycle_recurs_quickly():
    s = localized_state(2, 0)
    p0 = node_distribution(s).probs
    returns = []
    for n in range(1, 17):
        s = step(s)
        if np.allclose(node_distribution(s).probs, p0, atol=1e-12):
            returns.append(n)
    assert returns and returns[0] <= 8


def test_time_average_of_one_step():
    p = time_averaged_distribution(localized_state(8, 0), 1).probs
    expected = np.zeros(8)
    expected[[1, 7]] = 0.5
    assert np.allclose(p, expected, atol=1e-15)


def test_time_average_rejects_empty_window():
    with pytest.raises(ValueError):
        time_averaged_distribution(localized_state(8, 0), 0)


def test_cesaro_average_stabilizes():
    s = localized_state(24, 5)
    gaps = [tv(time_averaged_distribution(s, n), time_averaged_distribution(s, 2 * n)) for n in (100, 1000, 10000)]
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.slow
def test_time_average_odd_cycle_is_nearly_uniform():
    p = time_averaged_distribution(localized_state(25, 0), 100_000)
    assert tv_from_uniform(p) < 0.01


@pytest.mark.slow
def test_time_average_approaches_closed_form():
    p = time_averaged_distribution(localized_state(24, 5), 100_000)
    assert tv(p, limiting_distribution_localized(24, 5)) < 0.01


def test_distribution_clamps_rounding_dust():
    p = Distribution(3, [0.5, 0.5 + 5e-15, -5e-15])
    assert p.probs.min() == 0.0


@pytest.mark.parametrize(
    "probs",
    [[0.5, 0.6, -0.1], [0.2, 0.2, 0.2], [np.nan, 0.5, 0.5]],
)
def test_distribution_rejects_invalid(probs):
    with pytest.raises(ValueError):
        Distribution(3, probs)


def test_walk_state_validates_shape():
    with pytest.raises(ValueError):
        WalkState(3, np.zeros(5))
    with pytest.raises(ValueError):
        WalkState(1, np.zeros(2))


def test_walk_state_is_read_only():
    s = localized_state(4, 0)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0


def test_dump_state_layout(tmp_path):
    path = tmp_path / "s.txt"
    dump_state(localized_state(3, 1), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "d=3"
    assert len(lines) == 7
    assert [ln.split()[:2] for ln in lines[1:]] == [
        ["0", "0"], ["0", "1"], ["0", "2"], ["1", "0"], ["1", "1"], ["1", "2"],
    ]
