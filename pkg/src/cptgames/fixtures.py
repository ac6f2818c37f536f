"""Games, lotteries and profiles of the worked examples.

Constants that the examples define through other quantities are computed
here rather than stored: ``beta = 1 / w(0.5)``, and the ``gamma`` entries of
the region (c) and (e) games from the in-repo optimum of player 1 at
``q = 0.5``.  Published decimals are checked by the tests, not used as
inputs.
"""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import numpy as np

from .best_response import best_response_blackbox
from .cpt import CptFeatures, Lottery, ValueFunction, WeightingFunction, mix_lotteries
from .equilibrium import sample_correspondence
from .game import Game, MixtureProfile
from .mediated import MediatorOverMixtures
from .serialize import (
    dump_json,
    features_to_dict,
    game_to_dict,
    lottery_to_dict,
    mediator_to_dict,
    profile_to_list,
)

W = WeightingFunction
REGION_EPSILON = 0.1   # payoff bump in the region (e) game
REGIONS = "abcdefg"


def alice_features():
    """Power value 0.8, Prelec 0.6 in both frames (losses never arise)."""
    w = W.prelec(0.6)
    return CptFeatures(0.0, ValueFunction.power(0.8), w, w)


def charlie_features():
    w = W.prelec(0.5)
    return CptFeatures(0.0, ValueFunction.identity(), w, w)


def alice_lotteries():
    l1 = Lottery(((0.34, 20000.0), (0.66, 0.0)))
    l2 = Lottery(((0.17, 30000.0), (0.83, 0.0)))
    mix = mix_lotteries([(16 / 17, l1), (1 / 17, l2)])
    return l1, l2, mix


def charlie_beta():
    return 1.0 / float(charlie_features().w_gain(0.5))


def charlie_lotteries():
    b = charlie_beta()
    return Lottery(((0.5, 2 * b), (0.5, 0.0))), Lottery(((0.5, b + 1), (0.5, 1.0)))


def alice_game():
    """Alice (two actions) against Bob (three actions), Bob's payoffs zero."""
    alice = np.array([[20000.0, 20000.0, 0.0], [30000.0, 0.0, 0.0]])
    return Game((("1", "2"), ("1", "2", "3")), (alice, np.zeros((2, 3))),
                (alice_features(), CptFeatures.eut()))


ALICE_BELIEF = (0.17, 0.17, 0.66)


def example4_game():
    p1 = CptFeatures(0.0, ValueFunction.identity(), W.prelec(0.5), W.prelec(0.5))
    return Game.from_matrices([[[4, 0], [3, 1]], [[0, 1], [1, 0]]], [p1, CptFeatures.eut()])


def _power_half():
    w = W.power(0.5)
    return CptFeatures(0.0, ValueFunction.identity(), w, w)


def region_beta():
    return 1.0 / float(_power_half().w_gain(0.5))


def _cpt_2x2(x1, x2, f1):
    return Game.from_matrices([x1, x2], [f1, CptFeatures.eut()])


def region_a_game():
    x = [[1, 0], [0, 0]]
    return Game.from_matrices([x, x], [CptFeatures.eut(), CptFeatures.eut()])


def region_b_game():
    b = region_beta()
    return _cpt_2x2([[2 * b, 0], [b + 1, 1]], [[0, 1], [1, 0]], _power_half())


def _argmax_half(game):
    """Unique maximiser of player 1's value at ``q = 0.5``."""
    return float(best_response_blackbox(game, 0, [0.5, 0.5]).best()[1])


@lru_cache(maxsize=None)
def p_prime():
    return _argmax_half(region_b_game())


def region_c_game():
    b, pp = region_beta(), p_prime()
    return _cpt_2x2([[2 * b, 0], [b + 1, 1]], [[0, 1], [(1 - pp) / pp, 0]], _power_half())


def region_d_game():
    """Negated payoffs for player 1, who weights losses by ``p**0.5``."""
    b = region_beta()
    return _cpt_2x2([[-2 * b, 0], [-(b + 1), -1]], [[0, 1], [1, 0]], _power_half())


def _region_e(gamma):
    b = region_beta()
    return _cpt_2x2([[2 * b + REGION_EPSILON, 0], [b + 1, 1]], [[0, 1], [gamma, 0]], _power_half())


@lru_cache(maxsize=None)
def p_tilde():
    # player 1's payoffs do not involve gamma
    return _argmax_half(_region_e(1.0))


def region_e_game():
    pt = p_tilde()
    return _region_e((1 - pt) / pt)


def region_f_game():
    return example4_game()


@lru_cache(maxsize=None)
def q_star():
    """Switch point of player 1's black-box best response in Example 4."""
    corr = sample_correspondence(example4_game(), 0, grid=50, mode="hull")
    return float(corr.jumps[0][0])


def region_game(label):
    label = label.lower()
    return {
        "a": region_a_game, "b": region_b_game, "c": region_c_game, "d": region_d_game,
        "e": region_e_game, "f": region_f_game, "g": region_a_game,
    }[label]()


def region_profile(label):
    label = label.lower()
    pq = {
        "a": lambda: (0.0, 0.0),
        "b": lambda: (0.5, 0.5),
        "c": lambda: (p_prime(), 0.5),
        "d": lambda: (0.5, 0.5),
        "e": lambda: (p_tilde(), 0.5),
        "f": lambda: (0.5, q_star()),
        "g": lambda: (1.0, 0.0),
    }[label]()
    return MixtureProfile.from_probabilities(*pq)


def random_cpt_game(rng, eut=False):
    """2x2 game with payoffs in [0, 5] and Prelec weights with gamma in [0.4, 1]."""
    payoffs = rng.uniform(0.0, 5.0, size=(2, 2, 2))
    feats = []
    for _ in range(2):
        if eut:
            feats.append(CptFeatures.eut())
        else:
            w = W.prelec(rng.uniform(0.4, 1.0))
            feats.append(CptFeatures(0.0, ValueFunction.identity(), w, w))
    return Game.from_matrices(list(payoffs), feats)


def export(directory):
    """Write every fixture as JSON into ``directory``; returns the paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    l1, l2, mix = alice_lotteries()
    files["example1-features.json"] = features_to_dict(alice_features())
    files["example1-L1.json"] = lottery_to_dict(l1)
    files["example1-L2.json"] = lottery_to_dict(l2)
    files["example1-L.json"] = lottery_to_dict(mix)
    c1, c2 = charlie_lotteries()
    files["example2-features.json"] = features_to_dict(charlie_features())
    files["example2-L1.json"] = lottery_to_dict(c1)
    files["example2-L2.json"] = lottery_to_dict(c2)
    files["example3.json"] = dict(game_to_dict(alice_game()), belief=list(ALICE_BELIEF))
    files["example4.json"] = game_to_dict(example4_game())
    for r in REGIONS:
        game = region_game(r)
        profile = profile_to_list(region_profile(r))
        if r != "g":
            files[f"example6{r}.json"] = game_to_dict(game)
        files[f"region-{r}.json"] = dict(game_to_dict(game), profile=profile)
    files["ce-region-e.json"] = mediator_to_dict(MediatorOverMixtures.product(region_profile("e")))
    files["ce-region-b.json"] = mediator_to_dict(MediatorOverMixtures.product(region_profile("b")))
    paths = []
    for name, obj in files.items():
        dump_json(obj, out / name)
        paths.append(out / name)
    return paths
