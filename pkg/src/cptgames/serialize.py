"""JSON codecs for features, lotteries, games, profiles and mediators.

Every ``*_from_dict`` raises :class:`~cptgames.cpt.ValidationError` on
malformed input, so callers can map all input problems to one error path.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cpt import CptFeatures, Lottery, ValidationError, ValueFunction, WeightingFunction
from .game import Game, MixtureProfile
from .mediated import (
    MediatedStrategyProfile,
    MediatorOverMixtures,
    MediatorOverSignals,
    SignalSystem,
)


def _get(d, key, what):
    if not isinstance(d, dict) or key not in d:
        raise ValidationError(f"{what}: missing field {key!r}")
    return d[key]


def weighting_to_dict(w):
    out = {"kind": w.kind}
    if w.kind != "linear":
        out["gamma"] = w.gamma
    return out


def weighting_from_dict(d):
    kind = _get(d, "kind", "weighting function")
    return WeightingFunction(kind, float(d.get("gamma", 1.0)))


def value_to_dict(v):
    out = {"kind": v.kind}
    if v.kind == "power":
        out.update(alphaGain=v.alpha_gain, alphaLoss=v.alpha_loss, lossAversion=v.loss_aversion)
    return out


def value_from_dict(d):
    kind = _get(d, "kind", "value function")
    if kind == "power":
        a = float(_get(d, "alphaGain", "value function"))
        return ValueFunction.power(a, float(d.get("alphaLoss", a)), float(d.get("lossAversion", 1.0)))
    return ValueFunction(kind)


def features_to_dict(f):
    return {
        "reference": f.reference,
        "value": value_to_dict(f.value),
        "wGain": weighting_to_dict(f.w_gain),
        "wLoss": weighting_to_dict(f.w_loss),
    }


def features_from_dict(d):
    try:
        return CptFeatures(
            float(d.get("reference", 0.0)),
            value_from_dict(d.get("value", {"kind": "identity"})),
            weighting_from_dict(d.get("wGain", {"kind": "linear"})),
            weighting_from_dict(d.get("wLoss", {"kind": "linear"})),
        )
    except (TypeError, AttributeError) as exc:
        raise ValidationError(f"features: {exc}") from None


def lottery_to_dict(lottery):
    return {"entries": [[p, z] for p, z in lottery.entries]}


def lottery_from_dict(d):
    entries = _get(d, "entries", "lottery")
    try:
        return Lottery(tuple((p, z) for p, z in entries))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"lottery: {exc}") from None


def game_to_dict(game):
    return {
        "actions": [list(a) for a in game.actions],
        "payoffs": [x.tolist() for x in game.payoffs],
        "cpt": [features_to_dict(f) for f in game.features],
    }


def game_from_dict(d):
    try:
        return Game(
            tuple(_get(d, "actions", "game")),
            tuple(np.array(x, dtype=float) for x in _get(d, "payoffs", "game")),
            tuple(features_from_dict(f) for f in _get(d, "cpt", "game")),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"game: {exc}") from None


def profile_to_list(profile):
    return [m.weights.tolist() for m in profile]


def profile_from_list(rows):
    try:
        return MixtureProfile.from_arrays([np.asarray(r, dtype=float) for r in rows])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"profile: {exc}") from None


def mediator_to_dict(phi):
    return {"atoms": [{"p": w, "profile": profile_to_list(prof)} for w, prof in phi.atoms]}


def mediator_from_dict(d):
    atoms = _get(d, "atoms", "mediator")
    return MediatorOverMixtures(tuple(
        (float(_get(a, "p", "atom")), profile_from_list(_get(a, "profile", "atom"))) for a in atoms
    ))


def signals_to_dict(psi, lam):
    return {
        "signals": [list(b) for b in psi.system.signals],
        "psi": psi.psi.ravel().tolist(),
        "lambda": [
            {sig: [{"p": w, "mixture": m.weights.tolist()} for w, m in dist]
             for sig, dist in table.items()}
            for table in lam.strategies
        ],
    }


def signals_from_dict(d):
    """Mediator over signals and the mediated strategy profile."""
    system = SignalSystem(_get(d, "signals", "mediator"))
    psi = MediatorOverSignals(system, _get(d, "psi", "mediator"))
    raw = _get(d, "lambda", "mediator")
    if len(raw) != len(system.signals):
        raise ValidationError("lambda needs one entry per player")
    tables = []
    for i, per in enumerate(raw):
        if isinstance(per, list):          # positional, in signal order
            per = dict(zip(system.signals[i], per))
        tables.append({
            sig: [(float(_get(a, "p", "lambda")), _get(a, "mixture", "lambda")) for a in dist]
            for sig, dist in per.items()
        })
    return psi, MediatedStrategyProfile(tuple(tables))


def load_json(source):
    """Parse a JSON file path, or a JSON string starting with ``{`` or ``[``."""
    text = str(source)
    try:
        if text.lstrip().startswith(("{", "[")):
            return json.loads(text)
        return json.loads(Path(text).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {text[:60]!r}: {exc}") from None


def dump_json(obj, path=None):
    text = json.dumps(obj, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
