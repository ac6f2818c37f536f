import numpy as np
import pytest

from cptgames import fixtures
from cptgames.cpt import CptFeatures, ValidationError, cpt_value
from cptgames.game import (
    Belief,
    Game,
    Mixture,
    MixtureProfile,
    action_lottery,
    induced_lottery,
    product_belief,
)


def test_alice_action_lottery(alice):
    bel = Belief(1, fixtures.ALICE_BELIEF)
    lot = action_lottery(alice, 0, 0, bel).as_dict()
    assert lot == pytest.approx({20000.0: 0.34, 0.0: 0.66})


def test_example4_induced_lottery(ex4):
    p, q = 0.3, 0.6
    prof = MixtureProfile.from_probabilities(p, q)
    lot = induced_lottery(ex4, 0, prof[0], product_belief(ex4, prof, 0)).as_dict()
    # payoffs 4, 0, 3, 1 at (0,0), (0,1), (1,0), (1,1)
    assert lot[4.0] == pytest.approx((1 - p) * (1 - q))
    assert lot[0.0] == pytest.approx((1 - p) * q)
    assert lot[3.0] == pytest.approx(p * (1 - q))
    assert lot[1.0] == pytest.approx(p * q)


def test_uniform_against_point_mass():
    g = Game.from_matrices([[[4, 0], [3, 1]], [[0, 0], [0, 0]]], [CptFeatures.eut()] * 2)
    lot = induced_lottery(g, 0, Mixture(0, [0.5, 0.5]), Belief.point(g, 0, [1])).merged(drop_zero=True)
    assert lot.as_dict() == pytest.approx({0.0: 0.5, 1.0: 0.5})


def test_duplicate_payoffs_merged():
    g = Game.from_matrices([[[2, 2], [2, 5]], [[0, 0], [0, 0]]], [CptFeatures.eut()] * 2)
    lot = induced_lottery(g, 0, [0.5, 0.5], [0.5, 0.5])
    assert len(lot.entries) == 2
    assert lot.as_dict() == pytest.approx({2.0: 0.75, 5.0: 0.25})


def test_induced_lottery_sums_to_one(rng):
    g = Game.from_matrices(
        [rng.uniform(0, 5, (3, 2, 4)) for _ in range(3)], [CptFeatures.eut()] * 3
    )
    for _ in range(50):
        prof = MixtureProfile.from_arrays([rng.dirichlet(np.ones(s)) for s in g.shape])
        for i in range(3):
            lot = induced_lottery(g, i, prof[i], product_belief(g, prof, i))
            assert abs(sum(p for p, _ in lot.entries) - 1.0) < 1e-12


def test_product_belief_marginals(rng):
    g = Game.from_matrices([np.zeros((2, 3, 4))] * 3, [CptFeatures.eut()] * 3)
    prof = MixtureProfile.from_arrays([rng.dirichlet(np.ones(s)) for s in g.shape])
    bel = product_belief(g, prof, 0).distribution.reshape(3, 4)
    assert np.allclose(bel.sum(axis=1), prof[1].weights)
    assert np.allclose(bel.sum(axis=0), prof[2].weights)
    pure = product_belief(g, MixtureProfile.pure(g, (1, 2, 3)), 0).distribution
    assert pure.max() == 1.0 and np.argmax(pure) == 2 * 4 + 3


def test_merge_keeps_value(ex4, rng):
    for _ in range(20):
        prof = MixtureProfile.from_probabilities(*rng.uniform(0, 1, 2))
        bel = product_belief(ex4, prof, 0)
        lot = induced_lottery(ex4, 0, prof[0], bel)
        raw = np.outer(prof[0].weights, bel.distribution).ravel()
        direct = ex4.values(0, prof[0].weights, bel.distribution)[0]
        assert cpt_value(ex4.features[0], lot) == pytest.approx(direct, abs=1e-12)
        assert raw.sum() == pytest.approx(1.0)


def test_values_match_lottery_valuation(ex4, rng):
    for _ in range(20):
        p, q = rng.uniform(0, 1, 2)
        prof = MixtureProfile.from_probabilities(p, q)
        for i in range(2):
            bel = product_belief(ex4, prof, i)
            lot = induced_lottery(ex4, i, prof[i], bel)
            assert ex4.values(i, prof[i].weights, bel.distribution)[0] == pytest.approx(
                cpt_value(ex4.features[i], lot), abs=1e-12
            )


def test_game_validation():
    eut = CptFeatures.eut()
    with pytest.raises(ValidationError):
        Game.from_matrices([[[1, 2], [3, 4]], [[1, 2, 3], [4, 5, 6]]], [eut, eut])
    with pytest.raises(ValidationError):
        Game.from_matrices([[[1, np.nan], [3, 4]], [[1, 2], [3, 4]]], [eut, eut])
    with pytest.raises(ValidationError):
        Game.from_matrices([[[1, 2], [3, 4]], [[1, 2], [3, 4]]], [eut])
    with pytest.raises(ValidationError):
        Mixture(0, [0.7, 0.2])
    with pytest.raises(ValidationError):
        MixtureProfile.from_arrays([[1.0, 0.0], [0.5, 0.5, 0.0]]).check_against(
            Game.from_matrices([np.zeros((2, 2))] * 2, [eut, eut])
        )
    g = Game.from_matrices([np.zeros((2, 2))] * 2, [eut, eut])
    with pytest.raises(IndexError):
        g.check_player(2)


def test_row_major_order():
    x = np.arange(12.0).reshape(2, 3, 2)
    g = Game.from_matrices([x, x, x], [CptFeatures.eut()] * 3)
    assert np.array_equal(g.own_major_payoffs(0), x.reshape(2, 6))
    assert np.array_equal(g.own_major_payoffs(1), np.moveaxis(x, 1, 0).reshape(3, 4))
