"""Correlated and mediated black-box equilibria.

A mediator over mixtures recommends a whole mixture profile; a mediator
over signals draws a signal profile and each player maps a signal to a
finite-support distribution over its own mixtures.  Both verifiers test
recommended mixtures against the global black-box optimum.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .best_response import DEFAULT_EPSILON as BR_EPSILON, best_response_blackbox, scale
from .cpt import PROB_TOL, ValidationError
from .equilibrium import DEFAULT_EPSILON
from .game import Belief, Mixture, MixtureProfile, product_distribution

ATOM_TOL = 1e-9
MERGE_TOL = 1e-12


def _check_weights(w, what):
    w = np.asarray(w, dtype=float)
    if w.size == 0 or np.any(~np.isfinite(w)) or np.any(w < 0):
        raise ValidationError(f"{what} must be nonnegative and nonempty")
    if abs(w.sum() - 1.0) > PROB_TOL:
        raise ValidationError(f"{what} sums to {w.sum():.15g}, not 1")
    return w


def _close(a, b, tol):
    return a.size == b.size and float(np.max(np.abs(a - b))) <= tol


@dataclass(frozen=True, eq=False)
class MediatorOverMixtures:
    """Finite distribution over mixture profiles, as ``(prob, profile)`` atoms."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple(
            (float(w), prof if isinstance(prof, MixtureProfile) else MixtureProfile.from_arrays(prof))
            for w, prof in self.atoms
        )
        _check_weights([w for w, _ in atoms], "mediator weights")
        for (_, a), (_, b) in itertools.combinations(atoms, 2):
            if all(np.array_equal(x, y) for x, y in zip(a.arrays(), b.arrays())):
                raise ValidationError("mediator atoms must be distinct")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def product(cls, profile):
        return cls(((1.0, profile),))

    def check_against(self, game):
        for _, prof in self.atoms:
            prof.check_against(game)

    def marginal(self, player):
        """Support of player ``player`` as ``(prob, Mixture)`` with merged atoms."""
        out = []
        for w, prof in self.atoms:
            m = prof[player]
            for k, (v, n) in enumerate(out):
                if _close(n.weights, m.weights, MERGE_TOL):
                    out[k] = (v + w, n)
                    break
            else:
                out.append((w, m))
        return out


def conditional_opponent_belief(game, phi, player, own):
    """Opponent action distribution given that ``player`` is recommended ``own``."""
    game.check_player(player)
    own_w = own.weights if isinstance(own, Mixture) else np.asarray(own, dtype=float)
    total = 0.0
    dist = np.zeros(int(np.prod(game.opponent_shape(player))))
    for w, prof in phi.atoms:
        if w > 0 and _close(prof[player].weights, own_w, ATOM_TOL):
            others = [m.weights for j, m in enumerate(prof) if j != player]
            dist += w * product_distribution(others)
            total += w
    if total <= 0:
        raise ValidationError("mixture is not in the support of the mediator")
    return Belief(player, dist / total)


@dataclass(frozen=True)
class MediatedVerdict:
    """Outcome of a correlated or mediated check.

    ``slacks`` maps ``(player, key)`` to the relative value gap of the
    recommended mixture, where ``key`` is a mediator atom index or a signal.
    """

    holds: bool
    slacks: dict
    epsilon: float

    @property
    def worst(self):
        return max(self.slacks.values()) if self.slacks else 0.0

    def to_dict(self):
        return {
            "holds": self.holds,
            "worst_slack": self.worst,
            "slacks": [
                {"player": i, "key": k, "slack": s} for (i, k), s in self.slacks.items()
            ],
            "epsilon": self.epsilon,
        }


def _gap(game, player, own, belief, epsilon, grid):
    br = best_response_blackbox(game, player, belief, grid, min(epsilon, BR_EPSILON))
    val = float(game.values(player, own, belief.distribution)[0])
    best = max(br.value, val)
    return (best - val) / scale(best)


def verify_correlated(game, phi, epsilon=DEFAULT_EPSILON, grid=None):
    """Every recommended mixture is a black-box best response to its conditional."""
    phi.check_against(game)
    slacks = {}
    for i in range(game.num_players):
        for k, (w, m) in enumerate(phi.marginal(i)):
            if w <= 0:
                continue
            bel = conditional_opponent_belief(game, phi, i, m)
            slacks[(i, k)] = _gap(game, i, m.weights, bel, epsilon, grid)
    return MediatedVerdict(all(s <= epsilon for s in slacks.values()), slacks, epsilon)


@dataclass(frozen=True)
class SignalSystem:
    """Finite signal label set per player."""

    signals: tuple

    def __post_init__(self):
        sig = tuple(tuple(str(s) for s in b) for b in self.signals)
        if not sig or any(len(b) == 0 for b in sig):
            raise ValidationError("every player needs at least one signal")
        if any(len(set(b)) != len(b) for b in sig):
            raise ValidationError("signal labels must be distinct per player")
        object.__setattr__(self, "signals", sig)

    @property
    def shape(self):
        return tuple(len(b) for b in self.signals)

    def index(self, player, label):
        try:
            return self.signals[player].index(str(label))
        except ValueError:
            raise ValidationError(f"unknown signal {label!r} for player {player}") from None


@dataclass(frozen=True, eq=False)
class MediatorOverSignals:
    """Distribution over signal profiles, stored as a tensor of ``system.shape``."""

    system: SignalSystem
    psi: np.ndarray

    def __post_init__(self):
        sys_ = self.system if isinstance(self.system, SignalSystem) else SignalSystem(self.system)
        psi = _check_weights(np.asarray(self.psi, dtype=float).ravel(), "signal distribution")
        if psi.size != int(np.prod(sys_.shape)):
            raise ValidationError(
                f"signal distribution has {psi.size} entries, expected {int(np.prod(sys_.shape))}"
            )
        psi = psi.reshape(sys_.shape)
        psi.setflags(write=False)
        object.__setattr__(self, "system", sys_)
        object.__setattr__(self, "psi", psi)

    def marginal(self, player):
        axes = tuple(j for j in range(self.psi.ndim) if j != player)
        return self.psi.sum(axis=axes)

    def conditional(self, player, signal):
        """``psi_{-i}(. | b_i)`` as a tensor over the opponents' signals."""
        k = self.system.index(player, signal)
        block = np.take(self.psi, k, axis=player)
        total = block.sum()
        if total <= 0:
            raise ValidationError(f"signal {signal!r} of player {player} has probability 0")
        return block / total


@dataclass(frozen=True, eq=False)
class MediatedStrategyProfile:
    """``strategies[i][signal]`` is a list of ``(weight, Mixture)`` pairs."""

    strategies: tuple

    def __post_init__(self):
        out = []
        for i, per in enumerate(self.strategies):
            table = {}
            for sig, dist in dict(per).items():
                pairs = tuple(
                    (float(w), m if isinstance(m, Mixture) else Mixture(i, m)) for w, m in dist
                )
                _check_weights([w for w, _ in pairs], f"strategy of player {i} at {sig!r}")
                table[str(sig)] = pairs
            out.append(table)
        object.__setattr__(self, "strategies", tuple(out))

    def check_against(self, game, system):
        if len(self.strategies) != game.num_players or len(system.signals) != game.num_players:
            raise ValidationError("need one strategy and one signal set per player")
        for i, table in enumerate(self.strategies):
            if set(table) != set(system.signals[i]):
                raise ValidationError(f"strategy of player {i} must cover exactly its signals")
            for pairs in table.values():
                if any(len(m) != game.shape[i] for _, m in pairs):
                    raise ValidationError(f"mixture size mismatch for player {i}")

    def expected_mixture(self, player, signal):
        return sum(w * m.weights for w, m in self.strategies[player][str(signal)])


def mediated_conditional_action_dist(game, psi, lam, player, signal):
    """Opponent action distribution of ``player`` after observing ``signal``."""
    lam.check_against(game, psi.system)
    cond = psi.conditional(player, signal)
    others = [j for j in range(game.num_players) if j != player]
    dist = np.zeros(int(np.prod(game.opponent_shape(player))))
    for idx in np.ndindex(cond.shape):
        w = cond[idx]
        if w == 0:
            continue
        mixes = [
            lam.expected_mixture(j, psi.system.signals[j][k]) for j, k in zip(others, idx)
        ]
        dist += w * product_distribution(mixes)
    return Belief(player, dist / dist.sum())


def verify_mediated(game, psi, lam, epsilon=DEFAULT_EPSILON, grid=None):
    """Every mixture a signal can trigger is a black-box best response."""
    lam.check_against(game, psi.system)
    slacks = {}
    for i in range(game.num_players):
        marg = psi.marginal(i)
        for k, sig in enumerate(psi.system.signals[i]):
            if marg[k] <= 0:
                continue
            bel = mediated_conditional_action_dist(game, psi, lam, i, sig)
            gaps = [
                _gap(game, i, m.weights, bel, epsilon, grid)
                for w, m in lam.strategies[i][sig] if w > 0
            ]
            slacks[(i, sig)] = max(gaps)
    return MediatedVerdict(all(s <= epsilon for s in slacks.values()), slacks, epsilon)


def mediator_pushforward(psi, lam):
    """Distribution over mixture profiles induced by signals and strategies."""
    atoms = []
    sys_ = psi.system
    for idx in np.ndindex(psi.psi.shape):
        w = psi.psi[idx]
        if w == 0:
            continue
        choices = [lam.strategies[i][sys_.signals[i][k]] for i, k in enumerate(idx)]
        for combo in itertools.product(*choices):
            p = w * float(np.prod([c[0] for c in combo]))
            if p == 0:
                continue
            arrays = [c[1].weights for c in combo]
            for n, (v, prof) in enumerate(atoms):
                if all(_close(a, b, MERGE_TOL) for a, b in zip(arrays, prof)):
                    atoms[n] = (v + p, prof)
                    break
            else:
                atoms.append((p, arrays))
    total = sum(v for v, _ in atoms)
    return MediatorOverMixtures(tuple((v / total, MixtureProfile.from_arrays(a)) for v, a in atoms))
