import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from cptgames import fixtures
from cptgames.best_response import (
    best_response_actions,
    best_response_blackbox,
    concave_envelope_1d,
    convex_decomposition,
    envelope_from_samples,
    hull_distance,
    hull_membership,
)
from cptgames.cpt import CptFeatures, ValidationError
from cptgames.game import Belief, Game, Mixture, MixtureProfile, product_belief


def q_belief(q):
    return [1.0 - q, q]


# -- action best responses


def test_alice_action_set(alice):
    br = best_response_actions(alice, 0, Belief(1, fixtures.ALICE_BELIEF), 1e-6)
    assert list(br.items) == [0]
    assert br.value == pytest.approx(968.96, abs=0.01)


def test_point_mass_belief_matches_payoff_slice(rng):
    x1, x2 = rng.uniform(0, 5, (2, 3, 3))
    g = Game.from_matrices([x1, x2], [CptFeatures.eut()] * 2)
    for b in range(3):
        br = best_response_actions(g, 0, Belief.point(g, 0, [b]), 1e-9)
        assert list(br.items) == [int(np.argmax(x1[:, b]))]


def test_region_b_player2_indifferent():
    g = fixtures.region_b_game()
    assert sorted(best_response_actions(g, 1, q_belief(0.5), 1e-9).items) == [0, 1]


# -- black-box best responses


def test_alice_blackbox():
    # published optimum 0.96 / 1023.16 is a slip in the paper; see the ledger
    br = best_response_blackbox(fixtures.alice_game(), 0, fixtures.ALICE_BELIEF)
    assert br.best()[0] == pytest.approx(0.96, abs=0.005)
    assert np.all(np.abs(br.points()[:, 0] - 0.96) <= 0.005)
    assert br.value == pytest.approx(1023.16, abs=0.01)


def test_example4_player1(ex4):
    assert br_points(ex4, 0.3) == pytest.approx([0.0], abs=1e-6)
    assert br_points(ex4, 1.0) == pytest.approx([1.0], abs=1e-6)


def br_points(game, q):
    return sorted(best_response_blackbox(game, 0, q_belief(q)).points()[:, 1])


def test_example4_two_maximizers_at_switch(ex4):
    qs = fixtures.q_star()
    assert qs == pytest.approx(0.340, abs=0.002)
    pts = br_points(ex4, qs)
    assert pts[0] == pytest.approx(0.0, abs=1e-4)
    assert pts[-1] == pytest.approx(0.996, abs=0.002)


def test_members_within_epsilon(ex4, rng):
    for q in rng.uniform(0, 1, 10):
        br = best_response_blackbox(ex4, 0, q_belief(q), epsilon=1e-5)
        assert len(br) > 0
        assert np.all(br.values >= br.value - br.tolerance() - 1e-15)
        assert br.value >= ex4.action_values(0, q_belief(q)).max() - 1e-12


def test_three_action_player(rng):
    x = rng.uniform(0, 5, (3, 2))
    f = fixtures._power_half()
    g = Game.from_matrices([x, np.zeros((3, 2))], [f, CptFeatures.eut()])
    br = best_response_blackbox(g, 0, [0.4, 0.6])
    # dense random search never beats the optimiser
    probe = rng.dirichlet(np.ones(3), size=4000)
    assert g.values(0, probe, [0.4, 0.6]).max() <= br.value + 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_eut_blackbox_matches_actions(seed):
    g = fixtures.random_cpt_game(np.random.default_rng(seed), eut=True)
    bel = np.random.default_rng(seed + 100).dirichlet([1, 1])
    acts = best_response_actions(g, 0, bel, 1e-9)
    br = best_response_blackbox(g, 0, bel, epsilon=1e-6)
    assert br.value == pytest.approx(acts.value, abs=1e-6)
    pts = br.points()
    for a in acts.items:
        mass = np.eye(2)[a]
        assert np.min(np.max(np.abs(pts - mass), axis=1)) < 1e-9


def test_pure_ne_best_responses_contain_point_masses():
    g = fixtures.region_a_game()
    br = best_response_blackbox(g, 0, Belief.point(g, 0, [0]).distribution)
    assert np.min(np.abs(br.points()[:, 0] - 1.0)) < 1e-9
    assert hull_membership(Mixture(0, [1.0, 0.0]), br)
    # against action 1 both actions pay 0, so every mixture is supported on best actions
    br = best_response_blackbox(g, 0, Belief.point(g, 0, [1]).distribution)
    assert hull_membership(Mixture(0, [0.3, 0.7]), br)


@pytest.mark.parametrize("label", ["b", "d", "e", "f"])
def test_grid_doubling_converges(label):
    g, prof = fixtures.region_game(label), fixtures.region_profile(label)
    bel = product_belief(g, prof, 0).distribution
    eps = 1e-6
    a = best_response_blackbox(g, 0, bel, grid=1000, epsilon=eps).value
    b = best_response_blackbox(g, 0, bel, grid=2000, epsilon=eps).value
    assert abs(a - b) < 10 * eps * max(1.0, abs(b))


def test_blackbox_validation(ex4):
    with pytest.raises(ValidationError):
        best_response_blackbox(ex4, 0, q_belief(0.5), grid=5)
    with pytest.raises(ValidationError):
        best_response_blackbox(ex4, 0, q_belief(0.5), epsilon=0.0)


# -- concave envelope


def test_envelope_concave_input_is_fixed():
    x = np.linspace(0, 1, 41)
    y = -(x - 0.3) ** 2
    env = concave_envelope_1d(np.stack([x, y], axis=1))
    assert np.allclose(env(x), y, atol=1e-15)


def test_envelope_v_shape_is_flat():
    x = np.linspace(0, 1, 51)
    y = np.abs(x - 0.5) * 4 + 1.0
    env = concave_envelope_1d(np.stack([x, y], axis=1))
    assert np.allclose(env(x), 3.0)


def test_envelope_region_d():
    g = fixtures.region_d_game()
    br = best_response_blackbox(g, 0, q_belief(0.5), keep_samples=True)
    env = envelope_from_samples(br)
    ends = g.values(0, np.eye(2), q_belief(0.5))
    assert ends == pytest.approx([-2.0, -2.0], abs=1e-12)
    assert env(0.5) == pytest.approx(-2.0, abs=1e-12)
    assert g.values(0, [0.5, 0.5], q_belief(0.5))[0] < -2.0 - 1e-3
    assert hull_membership(Mixture(0, [0.5, 0.5]), br)
    assert np.min(np.abs(br.points()[:, 1] - 0.5)) > 0.1


def test_envelope_validation():
    with pytest.raises(ValidationError):
        concave_envelope_1d([[0.0, 1.0]])
    with pytest.raises(ValidationError):
        concave_envelope_1d([[0.1, 1.0], [1.0, 2.0]])
    with pytest.raises(ValidationError):
        concave_envelope_1d([[0.0, 1.0], [1.0, 2.0], [0.5, 0.0]])


curves = st.lists(st.floats(-10, 10, allow_nan=False), min_size=2, max_size=40)


@settings(max_examples=100, deadline=None)
@given(curves)
def test_envelope_properties(ys):
    x = np.linspace(0, 1, len(ys))
    y = np.array(ys)
    env = concave_envelope_1d(np.stack([x, y], axis=1))
    g = env(x)
    tol = 1e-9 * max(1.0, np.abs(y).max())
    assert np.all(g >= y - tol)
    assert g[0] == pytest.approx(y[0], abs=tol) and g[-1] == pytest.approx(y[-1], abs=tol)
    # midpoint concavity on all sample triples
    i, j, k = np.meshgrid(*(np.arange(len(x)),) * 3, indexing="ij")
    m = (i < j) & (j < k)
    lam = (x[k[m]] - x[j[m]]) / (x[k[m]] - x[i[m]])
    assert np.all(g[j[m]] >= lam * g[i[m]] + (1 - lam) * g[k[m]] - tol)


# -- hulls


def test_hull_membership_examples(ex4):
    b = fixtures.region_b_game()
    br_b = best_response_blackbox(b, 0, q_belief(0.5))
    # a smooth maximum gives a narrow cluster of epsilon-optimal members
    assert br_b.best()[1] == pytest.approx(0.707, abs=0.002)
    assert np.all(np.abs(br_b.points()[:, 1] - 0.707) < 0.005)
    assert not hull_membership(Mixture(0, [0.5, 0.5]), br_b)
    assert hull_membership(Mixture(0, br_b.points()[0]), br_b)
    br_4 = best_response_blackbox(ex4, 0, q_belief(fixtures.q_star()))
    assert hull_membership(Mixture(0, [0.5, 0.5]), br_4)


def test_hull_distance_three_actions():
    gens = np.eye(3)[:2]
    assert hull_distance([0.5, 0.5, 0.0], gens) == pytest.approx(0.0, abs=1e-12)
    assert hull_distance([0.4, 0.4, 0.2], gens) == pytest.approx(0.2, abs=1e-9)


def test_convex_decomposition_example4_split(ex4):
    br = best_response_blackbox(ex4, 0, q_belief(fixtures.q_star()))
    lam, resid = convex_decomposition([0.5, 0.5], br.points())
    assert resid < 1e-9
    hi = br.points()[:, 1].max()
    on_hi = lam[np.argmax(br.points()[:, 1])]
    assert on_hi == pytest.approx(oracles.hull_weight_1d(0.5, 0.0, hi), abs=1e-6)
    assert on_hi == pytest.approx(0.502, abs=0.002)


def test_caratheodory_bound(rng):
    gens = rng.dirichlet(np.ones(3), size=30)
    x = rng.dirichlet(np.ones(30)) @ gens
    lam, resid = convex_decomposition(x, gens)
    assert resid < 1e-9
    assert np.count_nonzero(lam) <= 3
    assert lam.sum() == pytest.approx(1.0) and np.all(lam >= 0)
