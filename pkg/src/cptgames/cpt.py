"""Cumulative prospect theory valuation of finite lotteries.

A lottery is a finite list of ``(probability, outcome)`` pairs.  A person is
described by :class:`CptFeatures`: a reference point, a value function and
two probability weighting functions (gains and losses).  Two independent
routes to the CPT value are provided: :func:`cpt_value` uses decision
weights, :func:`cpt_value_cumulative` uses the telescoped cumulative form.
They must agree to rounding error.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PROB_TOL = 1e-12

WEIGHTING_KINDS = ("linear", "prelec", "power")
VALUE_KINDS = ("identity", "power", "negation")


class ValidationError(ValueError):
    """Raised when an input object violates its invariants."""


@dataclass(frozen=True)
class WeightingFunction:
    """Probability weighting function ``w: [0, 1] -> [0, 1]``.

    Supported kinds are ``linear`` (``w(p) = p``), ``prelec``
    (``w(p) = exp(-(-ln p)**gamma)``) and ``power`` (``w(p) = p**gamma``).
    ``w(0) = 0`` and ``w(1) = 1`` hold exactly for every kind.  The family is
    closed on purpose; a new kind needs a branch in :meth:`__call__` and in
    the JSON codec.
    """

    kind: str = "linear"
    gamma: float = 1.0

    def __post_init__(self):
        if self.kind not in WEIGHTING_KINDS:
            raise ValidationError(f"unknown weighting kind {self.kind!r}")
        if not self.gamma > 0:
            raise ValidationError("weighting gamma must be positive")
        object.__setattr__(self, "gamma", float(self.gamma))

    @classmethod
    def linear(cls):
        return cls("linear")

    @classmethod
    def prelec(cls, gamma):
        return cls("prelec", gamma)

    @classmethod
    def power(cls, gamma):
        return cls("power", gamma)

    @property
    def is_linear(self):
        return self.kind == "linear" or self.gamma == 1.0

    def __call__(self, p):
        p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
        if self.kind == "linear":
            return p
        if self.kind == "power":
            return p**self.gamma
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp(-((-np.log(p)) ** self.gamma))
        # pin the endpoints; log(1) = -0.0 and log(0) = -inf are both edge cases
        out = np.where(p <= 0.0, 0.0, out)
        return np.where(p >= 1.0, 1.0, out)

    def inverse(self, y):
        """Inverse of the weighting function on ``[0, 1]``."""
        y = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
        if self.kind == "linear":
            return y
        if self.kind == "power":
            return y ** (1.0 / self.gamma)
        with np.errstate(divide="ignore"):
            out = np.exp(-((-np.log(y)) ** (1.0 / self.gamma)))
        out = np.where(y <= 0.0, 0.0, out)
        return np.where(y >= 1.0, 1.0, out)


@dataclass(frozen=True)
class ValueFunction:
    """Value function evaluated relative to a reference point ``r``.

    ``power``: ``(x - r)**alpha_gain`` on gains and
    ``-loss_aversion * (r - x)**alpha_loss`` on losses.  ``identity`` is
    ``x - r``.  ``negation`` is ``-(x - r)``; it is decreasing and exists only
    to express negated-payoff fixtures through the value side.
    """

    kind: str = "identity"
    alpha_gain: float = 1.0
    alpha_loss: float = 1.0
    loss_aversion: float = 1.0

    def __post_init__(self):
        if self.kind not in VALUE_KINDS:
            raise ValidationError(f"unknown value kind {self.kind!r}")
        for name in ("alpha_gain", "alpha_loss", "loss_aversion"):
            val = getattr(self, name)
            if not val > 0:
                raise ValidationError(f"value function {name} must be positive")
            object.__setattr__(self, name, float(val))

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def power(cls, alpha_gain, alpha_loss=None, loss_aversion=1.0):
        if alpha_loss is None:
            alpha_loss = alpha_gain
        return cls("power", alpha_gain, alpha_loss, loss_aversion)

    @classmethod
    def negation(cls):
        return cls("negation")

    def __call__(self, x, reference=0.0):
        d = np.asarray(x, dtype=float) - reference
        if self.kind == "identity":
            return d
        if self.kind == "negation":
            return -d
        gain = np.abs(np.where(d >= 0, d, 0.0)) ** self.alpha_gain
        loss = -self.loss_aversion * np.abs(np.where(d < 0, d, 0.0)) ** self.alpha_loss
        return np.where(d >= 0, gain, loss)


@dataclass(frozen=True)
class CptFeatures:
    """Reference point, value function and weighting functions of one agent."""

    reference: float = 0.0
    value: ValueFunction = field(default_factory=ValueFunction)
    w_gain: WeightingFunction = field(default_factory=WeightingFunction)
    w_loss: WeightingFunction = field(default_factory=WeightingFunction)

    def __post_init__(self):
        object.__setattr__(self, "reference", float(self.reference))

    @classmethod
    def eut(cls, value=None, reference=0.0):
        """Linear weighting in both frames: CPT reduces to expected utility."""
        return cls(reference, value or ValueFunction.identity())

    @property
    def is_eut(self):
        return self.w_gain.is_linear and self.w_loss.is_linear

    def v(self, x):
        return self.value(x, self.reference)


@dataclass(frozen=True)
class Lottery:
    """Finite lottery ``{(p_k, z_k)}``.

    Zero probabilities and repeated outcomes are allowed.  Probabilities must
    be nonnegative and sum to one within ``1e-12``.
    """

    entries: tuple

    def __post_init__(self):
        entries = tuple((float(p), float(z)) for p, z in self.entries)
        if not entries:
            raise ValidationError("a lottery needs at least one entry")
        probs = np.array([p for p, _ in entries])
        outs = np.array([z for _, z in entries])
        if not (np.all(np.isfinite(probs)) and np.all(np.isfinite(outs))):
            raise ValidationError("lottery entries must be finite")
        if np.any(probs < 0):
            raise ValidationError("lottery probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > PROB_TOL:
            raise ValidationError(
                f"lottery probabilities sum to {probs.sum():.15g}, not 1"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_arrays(cls, probabilities, outcomes):
        return cls(tuple(zip(np.ravel(probabilities), np.ravel(outcomes))))

    @property
    def probabilities(self):
        return np.array([p for p, _ in self.entries])

    @property
    def outcomes(self):
        return np.array([z for _, z in self.entries])

    def __len__(self):
        return len(self.entries)

    def merged(self, drop_zero=False):
        """Merge entries with identical outcomes, keeping first-seen order."""
        acc = {}
        for p, z in self.entries:
            acc[z] = acc.get(z, 0.0) + p
        items = [(p, z) for z, p in acc.items() if not (drop_zero and p == 0.0)]
        return Lottery(tuple(items))

    def as_dict(self):
        """Map outcome -> total probability."""
        return {z: p for p, z in self.merged().entries}


def _check_features(features):
    if not isinstance(features, CptFeatures):
        raise ValidationError("expected CptFeatures")


def _rank_masses(p):
    """Mass at or above and at or below each rank of sorted probabilities.

    Each is summed from whichever end holds less mass.  Weighting functions
    can be infinitely steep at 0 and 1, so a sum that should be 1 but is off
    by one rounding step would otherwise move the value by far more.
    """
    zero = np.zeros(p.shape[:-1] + (1,))
    head = np.cumsum(p, axis=-1)
    tail = np.cumsum(p[..., ::-1], axis=-1)[..., ::-1]
    tail_next = np.concatenate([tail[..., 1:], zero], axis=-1)
    head_prev = np.concatenate([zero, head[..., :-1]], axis=-1)
    above = np.where(head <= 0.5, head, 1.0 - tail_next)
    below = np.where(tail <= 0.5, tail, 1.0 - head_prev)
    return np.clip(above, 0.0, 1.0), np.clip(below, 0.0, 1.0)


def rank_dependent_values(features, outcomes, probs):
    """CPT values for a fixed outcome vector and many probability vectors.

    Parameters
    ----------
    features : CptFeatures
    outcomes : array_like, shape (m,)
    probs : array_like, shape (..., m)
        Probability vectors aligned with ``outcomes``; not validated here.

    Returns
    -------
    ndarray, shape (...)
    """
    outcomes = np.asarray(outcomes, dtype=float)
    probs = np.asarray(probs, dtype=float)
    order = np.argsort(-outcomes, kind="stable")
    z = outcomes[order]
    p = probs[..., order]
    v = features.v(z)
    k_r = int(np.count_nonzero(z >= features.reference))
    above, below = _rank_masses(p)

    total = np.zeros(p.shape[:-1])
    if k_r > 0:
        wg = features.w_gain(above[..., :k_r])
        pi_gain = np.diff(wg, axis=-1, prepend=0.0)
        total = total + pi_gain @ v[:k_r]
    if k_r < len(z):
        # tail sums p_k + ... + p_m over the loss block
        wl = features.w_loss(below[..., k_r:])
        nxt = np.concatenate([wl[..., 1:], np.zeros(wl.shape[:-1] + (1,))], axis=-1)
        pi_loss = wl - nxt
        total = total + pi_loss @ v[k_r:]
    return total


def cpt_value(features, lottery):
    """CPT value of ``lottery`` through rank-dependent decision weights.

    Outcomes are ranked from best to worst (ties keep entry order); outcomes
    at or above the reference point are gains.
    """
    _check_features(features)
    if not isinstance(lottery, Lottery):
        lottery = Lottery(lottery)
    return float(rank_dependent_values(features, lottery.outcomes, lottery.probabilities))


def cpt_value_cumulative(features, lottery):
    """CPT value of ``lottery`` through the cumulative (telescoped) form.

    Written as an explicit loop so that it shares no code path with
    :func:`cpt_value`.
    """
    _check_features(features)
    if not isinstance(lottery, Lottery):
        lottery = Lottery(lottery)
    ranked = sorted(
        range(len(lottery.entries)), key=lambda k: -lottery.entries[k][1]
    )
    probs = [lottery.entries[k][0] for k in ranked]
    outs = [lottery.entries[k][1] for k in ranked]
    m = len(outs)
    r = features.reference
    k_r = sum(1 for z in outs if z >= r)
    v = [float(features.v(z)) for z in outs]
    wg = lambda x: float(features.w_gain(min(max(x, 0.0), 1.0)))
    wl = lambda x: float(features.w_loss(min(max(x, 0.0), 1.0)))

    def upper(k):
        # P(rank <= k), summed over the lighter side
        a = sum(probs[: k + 1])
        return a if a <= 0.5 else 1.0 - sum(probs[k + 1 :])

    def lower(k):
        # P(rank >= k)
        b = sum(probs[k:])
        return b if b <= 0.5 else 1.0 - sum(probs[:k])

    total = 0.0
    for k in range(k_r - 1):
        total += wg(upper(k)) * (v[k] - v[k + 1])
    if k_r >= 1:
        total += wg(upper(k_r - 1)) * v[k_r - 1]
    if k_r < m:
        total += wl(lower(k_r)) * v[k_r]
        for k in range(k_r, m - 1):
            total += wl(lower(k + 1)) * (v[k + 1] - v[k])
    return total


def mix_lotteries(components):
    """Reduce the compound lottery ``sum_j q_j L_j`` to a single stage.

    Probabilities of each component are scaled by its weight and entries
    with exactly equal outcomes are merged.  Zero-weight components are
    dropped.  Callers that need tolerant merging must round outcomes first.
    """
    components = list(components)
    if not components:
        raise ValidationError("need at least one component")
    weights = np.array([float(q) for q, _ in components])
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > PROB_TOL:
        raise ValidationError("mixture weights must be nonnegative and sum to 1")
    entries = []
    for q, lot in components:
        if q == 0:
            continue
        if not isinstance(lot, Lottery):
            lot = Lottery(lot)
        entries.extend((q * p, z) for p, z in lot.entries)
    acc = {}
    for p, z in entries:
        acc[z] = acc.get(z, 0.0) + p
    return Lottery(tuple((p, z) for z, p in acc.items()))


@dataclass(frozen=True)
class BetweennessReport:
    alphas: np.ndarray
    values: np.ndarray
    v1: float
    v2: float
    violations: list
    weak_violations: list

    @property
    def best(self):
        k = int(np.argmax(self.values))
        return float(self.alphas[k]), float(self.values[k])

    @property
    def worst(self):
        k = int(np.argmin(self.values))
        return float(self.alphas[k]), float(self.values[k])

    @property
    def holds(self):
        return not self.violations


def betweenness_scan(features, l1, l2, grid_size=101):
    """Scan ``V(a L1 + (1 - a) L2)`` over ``grid_size`` evenly spaced ``a``.

    A point violates betweenness when its value leaves
    ``[min(V1, V2) - tau, max(V1, V2) + tau]`` with
    ``tau = 1e-9 * max(1, |V1|, |V2|)``.  It is also a weak-betweenness
    violation when ``|V1 - V2| <= tau``.
    """
    if grid_size < 2:
        raise ValidationError("grid_size must be at least 2")
    v1 = cpt_value(features, l1)
    v2 = cpt_value(features, l2)
    tau = 1e-9 * max(1.0, abs(v1), abs(v2))
    lo, hi = min(v1, v2) - tau, max(v1, v2) + tau
    alphas = np.linspace(0.0, 1.0, grid_size)
    values = np.empty(grid_size)
    violations, weak = [], []
    for k, a in enumerate(alphas):
        mix = mix_lotteries([(a, l1), (1.0 - a, l2)])
        values[k] = cpt_value(features, mix)
        if values[k] < lo or values[k] > hi:
            violations.append((float(a), float(values[k])))
            if abs(v1 - v2) <= tau:
                weak.append((float(a), float(values[k])))
    return BetweennessReport(alphas, values, v1, v2, violations, weak)


@dataclass(frozen=True)
class FunctionalCheckReport:
    max_residual: float
    worst_tuple: tuple
    samples: int


def functional_residual(w, a1, c1, b, c2, a2):
    """``[w(a2)-w(b)][w(b)-w(c1)] - [w(b)-w(a1)][w(c2)-w(b)]``."""
    wb = w(b)
    return (w(a2) - wb) * (wb - w(c1)) - (wb - w(a1)) * (w(c2) - wb)


def weighting_functional_check(w, samples=10000, seed=0):
    """Largest residual of the ratio functional equation over random tuples.

    Tuples ``0 <= a1 < c1 < b < c2 < a2 <= 1`` with
    ``(a2 - b)(b - c1) = (b - a1)(c2 - b)`` are drawn by sampling
    ``a1, c1, b, a2`` and solving for ``c2``.  Only the identity weighting
    satisfies the equation for every such tuple.
    """
    if samples < 1:
        raise ValidationError("samples must be positive")
    rng = np.random.default_rng(seed)
    pts = np.sort(rng.uniform(0.0, 1.0, size=(samples, 4)), axis=1)
    a1, c1, b, a2 = pts.T
    with np.errstate(divide="ignore", invalid="ignore"):
        c2 = b + (a2 - b) * (b - c1) / (b - a1)
    ok = (a1 < c1) & (c1 < b) & (b < c2) & (c2 < a2)
    if not np.any(ok):
        return FunctionalCheckReport(0.0, (), 0)
    a1, c1, b, c2, a2 = (x[ok] for x in (a1, c1, b, c2, a2))
    res = np.abs(functional_residual(w, a1, c1, b, c2, a2))
    k = int(np.argmax(res))
    worst = tuple(float(x[k]) for x in (a1, c1, b, c2, a2))
    return FunctionalCheckReport(float(res[k]), worst, int(ok.sum()))
