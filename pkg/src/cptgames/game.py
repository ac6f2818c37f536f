"""Finite normal-form games whose players value lotteries with CPT.

Action profiles are enumerated in row-major order of action indices, with
player 0 as the slowest axis.  A belief of player ``i`` is a distribution
over the opponents' profiles, flattened in the same row-major order with
player ``i`` removed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cpt import PROB_TOL, CptFeatures, Lottery, ValidationError, rank_dependent_values


def _as_distribution(weights, what):
    w = np.asarray(weights, dtype=float).ravel()
    if w.size == 0:
        raise ValidationError(f"{what} is empty")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValidationError(f"{what} must be nonnegative")
    if abs(w.sum() - 1.0) > PROB_TOL:
        raise ValidationError(f"{what} sums to {w.sum():.15g}, not 1")
    w.setflags(write=False)
    return w


@dataclass(frozen=True, eq=False)
class Game:
    """A finite game with per-player payoff tensors and CPT features.

    Parameters
    ----------
    actions : sequence of sequences of str
        Action labels per player.
    payoffs : sequence of array_like
        ``payoffs[i]`` has shape ``(|A_0|, ..., |A_{n-1}|)``.
    features : sequence of CptFeatures
    """

    actions: tuple
    payoffs: tuple
    features: tuple

    def __post_init__(self):
        actions = tuple(tuple(str(a) for a in acts) for acts in self.actions)
        if len(actions) < 2:
            raise ValidationError("a game needs at least two players")
        if any(len(a) == 0 for a in actions):
            raise ValidationError("every action set must be nonempty")
        shape = tuple(len(a) for a in actions)
        payoffs = []
        for i, x in enumerate(self.payoffs):
            arr = np.array(x, dtype=float)
            if arr.shape != shape:
                raise ValidationError(
                    f"payoff tensor of player {i} has shape {arr.shape}, expected {shape}"
                )
            if not np.all(np.isfinite(arr)):
                raise ValidationError("payoffs must be finite")
            arr.setflags(write=False)
            payoffs.append(arr)
        if len(payoffs) != len(actions):
            raise ValidationError("need one payoff tensor per player")
        features = tuple(self.features)
        if len(features) != len(actions) or not all(
            isinstance(f, CptFeatures) for f in features
        ):
            raise ValidationError("need one CptFeatures per player")
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "payoffs", tuple(payoffs))
        object.__setattr__(self, "features", features)

    @classmethod
    def from_matrices(cls, payoffs, features, actions=None):
        payoffs = [np.asarray(x, dtype=float) for x in payoffs]
        if actions is None:
            actions = [[str(k) for k in range(s)] for s in payoffs[0].shape]
        return cls(tuple(actions), tuple(payoffs), tuple(features))

    @property
    def num_players(self):
        return len(self.actions)

    @property
    def shape(self):
        return tuple(len(a) for a in self.actions)

    def num_actions(self, player):
        return self.shape[player]

    def opponent_shape(self, player):
        return tuple(s for j, s in enumerate(self.shape) if j != player)

    def check_player(self, player):
        if not 0 <= player < self.num_players:
            raise IndexError(f"player index {player} out of range")

    def own_major_payoffs(self, player):
        """Payoffs of ``player`` as a ``(|A_i|, |A_-i|)`` matrix."""
        self.check_player(player)
        x = np.moveaxis(self.payoffs[player], player, 0)
        return x.reshape(self.shape[player], -1)

    @cached_property
    def _flat_outcomes(self):
        return tuple(self.own_major_payoffs(i).ravel() for i in range(self.num_players))

    def values(self, player, mixtures, beliefs):
        """CPT values of many (own mixture, belief) pairs at once.

        ``mixtures`` has shape ``(K, |A_i|)`` and ``beliefs`` shape
        ``(K, |A_-i|)`` or ``(|A_-i|,)``; returns shape ``(K,)``.
        """
        mixtures = np.atleast_2d(mixtures)
        beliefs = np.atleast_2d(beliefs)
        joint = mixtures[:, :, None] * beliefs[:, None, :]
        joint = joint.reshape(joint.shape[0], -1)
        return rank_dependent_values(
            self.features[player], self._flat_outcomes[player], joint
        )

    def action_values(self, player, belief):
        """CPT value of every pure action of ``player`` against ``belief``."""
        belief = belief.distribution if isinstance(belief, Belief) else belief
        eye = np.eye(self.shape[player])
        return self.values(player, eye, belief)


@dataclass(frozen=True, eq=False)
class Mixture:
    """A point of the simplex over one player's actions."""

    player: int
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _as_distribution(self.weights, "mixture"))

    @classmethod
    def pure(cls, player, action, num_actions):
        w = np.zeros(num_actions)
        w[action] = 1.0
        return cls(player, w)

    def __len__(self):
        return self.weights.size

    def __eq__(self, other):
        return (
            isinstance(other, Mixture)
            and self.player == other.player
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self):
        return hash((self.player, self.weights.tobytes()))

    def support(self, threshold=1e-9):
        return np.flatnonzero(self.weights > threshold)


@dataclass(frozen=True, eq=False)
class Belief:
    """Distribution of player ``player`` over opponent action profiles."""

    player: int
    distribution: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "distribution", _as_distribution(self.distribution, "belief")
        )

    @classmethod
    def point(cls, game, player, opponent_actions):
        """Point-mass belief on one opponent profile (actions in player order)."""
        shape = game.opponent_shape(player)
        d = np.zeros(shape)
        d[tuple(opponent_actions)] = 1.0
        return cls(player, d.ravel())


@dataclass(frozen=True, eq=False)
class MixtureProfile:
    """One mixture per player."""

    mixtures: tuple

    def __post_init__(self):
        mixes = []
        for i, m in enumerate(self.mixtures):
            if not isinstance(m, Mixture):
                m = Mixture(i, m)
            if m.player != i:
                raise ValidationError("mixture player indices must follow profile order")
            mixes.append(m)
        object.__setattr__(self, "mixtures", tuple(mixes))

    @classmethod
    def from_arrays(cls, arrays):
        return cls(tuple(Mixture(i, w) for i, w in enumerate(arrays)))

    @classmethod
    def from_probabilities(cls, *probs):
        """Profile of two-action mixtures given the weight on action ``1``."""
        return cls(tuple(Mixture(i, [1.0 - p, p]) for i, p in enumerate(probs)))

    @classmethod
    def pure(cls, game, actions):
        return cls(
            tuple(Mixture.pure(i, a, game.shape[i]) for i, a in enumerate(actions))
        )

    def __getitem__(self, i):
        return self.mixtures[i]

    def __len__(self):
        return len(self.mixtures)

    def __iter__(self):
        return iter(self.mixtures)

    def arrays(self):
        return [m.weights for m in self.mixtures]

    def replace(self, player, weights):
        mixes = list(self.mixtures)
        mixes[player] = Mixture(player, weights)
        return MixtureProfile(tuple(mixes))

    def check_against(self, game):
        if len(self) != game.num_players or any(
            len(m) != s for m, s in zip(self.mixtures, game.shape)
        ):
            raise ValidationError("profile does not match the game's action sets")


def product_distribution(arrays):
    """Row-major flattened product of independent distributions."""
    out = np.ones(1)
    for w in arrays:
        out = np.multiply.outer(out, w).ravel()
    return out


def product_belief(game, profile, player):
    """Belief of ``player`` induced by the opponents' mixtures (their product)."""
    game.check_player(player)
    profile.check_against(game)
    others = [m.weights for j, m in enumerate(profile) if j != player]
    return Belief(player, product_distribution(others))


def induced_lottery(game, player, own, belief):
    """Lottery faced by ``player`` playing mixture ``own`` against ``belief``.

    Entry probabilities are ``own[a_i] * belief[a_-i]``; entries with equal
    payoffs are merged and zero-probability entries dropped, so the result
    has at most ``|A|`` entries.
    """
    game.check_player(player)
    own_w = own.weights if isinstance(own, Mixture) else np.asarray(own, dtype=float)
    bel = belief.distribution if isinstance(belief, Belief) else np.asarray(belief, dtype=float)
    if own_w.size != game.shape[player] or bel.size != int(np.prod(game.opponent_shape(player))):
        raise ValidationError("mixture or belief does not match the game")
    probs = np.outer(own_w, bel).ravel()
    outs = game.own_major_payoffs(player).ravel()
    return Lottery.from_arrays(probs, outs).merged(drop_zero=True)


def action_lottery(game, player, action, belief):
    """Lottery faced when ``player`` commits to a pure ``action``."""
    return induced_lottery(game, player, Mixture.pure(player, action, game.shape[player]), belief)
