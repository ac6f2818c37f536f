"""Command-line front end.

Exit codes: 0 on success or when the checked property holds, 1 when it is
verified false, 2 on input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from . import fixtures
from .cpt import (
    ValidationError,
    WeightingFunction,
    betweenness_scan,
    cpt_value,
    cpt_value_cumulative,
    weighting_functional_check,
)
from .equilibrium import (
    DEFAULT_EPSILON,
    HULL_TOLERANCE,
    classify,
    decompose_mixed_blackbox,
    enumerate_pure,
    scan_blackbox_2x2,
    search_mixed_blackbox_2x2,
    solve_mixed_action_2x2,
)
from .game import MixtureProfile
from .mediated import verify_correlated, verify_mediated
from .serialize import (
    dump_json,
    features_from_dict,
    game_from_dict,
    load_json,
    lottery_from_dict,
    mediator_from_dict,
    profile_from_list,
    signals_from_dict,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
FUNCTIONAL_TOL = 1e-12


class InputError(Exception):
    pass


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise InputError(f"--{name.replace('_', '-')} is required")
    return val


def _emit(args, obj):
    text = dump_json(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_game(args):
    return game_from_dict(load_json(_need(args, "game")))


def _load_profile(args, game_doc=None):
    if args.profile is not None:
        return profile_from_list(load_json(args.profile))
    if game_doc is not None and "profile" in game_doc:
        return profile_from_list(game_doc["profile"])
    raise InputError("--profile is required (the game file has no embedded profile)")


def cmd_value(args):
    feats = features_from_dict(load_json(_need(args, "features")))
    lot = lottery_from_dict(load_json(_need(args, "lottery")))
    _emit(args, {"v_discrete": cpt_value(feats, lot), "v_cumulative": cpt_value_cumulative(feats, lot)})
    return EXIT_OK


def _pq_list(profiles):
    return [[float(p), float(q)] for p, q, *_ in profiles]


def cmd_solve(args):
    game = _load_game(args)
    kind = args.kind.lower()
    eps = args.epsilon
    if kind == "pne":
        acts = enumerate_pure(game)
        witnesses = [MixtureProfile.pure(game, a) for a in acts]
        out = {
            "kind": "pNE",
            "witnesses": [{"actions": list(a), "profile": [m.weights.tolist() for m in w]}
                          for a, w in zip(acts, witnesses)],
            "equilibria": [list(a) for a in acts],
            "certificate": {"exact": True},
            "epsilon": 0.0,
        }
    elif game.shape != (2, 2):
        raise InputError(f"--kind {kind} needs a 2x2 game, got shape {game.shape}")
    elif kind == "mne":
        found = solve_mixed_action_2x2(game, grid=args.grid or 400, epsilon=eps)
        out = {
            "kind": "mNE",
            "witnesses": [{"p": p, "q": q, "profile": [[1 - p, p], [1 - q, q]], "slack": s}
                          for p, q, s in found],
            "equilibria": _pq_list(found),
            "certificate": {"method": "indifference roots", "grid": args.grid or 400},
            "epsilon": eps,
        }
    elif kind in ("bbne", "mbbne"):
        if kind == "bbne":
            res = scan_blackbox_2x2(game, grid=args.grid or 2000, epsilon=eps)
        else:
            res = search_mixed_blackbox_2x2(game, grid=args.grid or 200, epsilon=eps)
        out = res.to_dict()
        out["equilibria"] = _pq_list(res.equilibria)
    else:
        raise InputError(f"unknown kind {args.kind!r}")
    _emit(args, out)
    return EXIT_OK


def sweep_rows(game, resolution, q_values=None, p_values=None):
    """Rows ``(p, q, V1, V2)`` over a grid of a 2x2 game."""
    if game.shape != (2, 2):
        raise InputError(f"sweep needs a 2x2 game, got shape {game.shape}")
    grid = np.linspace(0.0, 1.0, resolution + 1)
    ps = grid if p_values is None else np.asarray(p_values, dtype=float)
    qs = grid if q_values is None else np.asarray(q_values, dtype=float)
    if np.any((ps < 0) | (ps > 1)) or np.any((qs < 0) | (qs > 1)):
        raise InputError("sweep probabilities must lie in [0, 1]")
    pm = np.stack([1 - ps, ps], axis=1)
    rows = []
    for q in qs:
        qm = np.array([1 - q, q])
        v1 = game.values(0, pm, qm)
        v2 = game.values(1, np.tile(qm, (len(ps), 1)), pm)
        rows.extend(zip(ps, np.full(len(ps), q), v1, v2))
    return rows


def cmd_sweep(args):
    game = _load_game(args)
    rows = sweep_rows(game, args.grid or 100, args.q, args.p)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "q", "V1", "V2"])
    for r in rows:
        writer.writerow([f"{float(x):.12g}" for x in r])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_classify(args):
    doc = load_json(_need(args, "game"))
    game = game_from_dict(doc)
    profile = _load_profile(args, doc)
    res = classify(game, profile, args.epsilon, hull_tol=args.hull_tol)
    out = {
        "flags": res.flags,
        "region": res.region(),
        "verdicts": {k: v.to_dict() for k, v in res.verdicts.items()},
    }
    if res.flags["mBBNE"]:
        out["decomposition"] = [
            [{"p": w, "mixture": m.weights.tolist()} for w, m in atoms]
            for atoms in decompose_mixed_blackbox(game, profile, args.epsilon, hull_tol=args.hull_tol)
        ]
    _emit(args, out)
    if args.kind:
        key = {"pne": "pNE", "mne": "mNE", "bbne": "BBNE", "mbbne": "mBBNE"}[args.kind.lower()]
        return EXIT_OK if res.flags[key] else EXIT_FAIL
    return EXIT_OK if any(res.flags.values()) else EXIT_FAIL


def cmd_check_betweenness(args):
    feats = features_from_dict(load_json(_need(args, "features")))
    l1 = lottery_from_dict(load_json(_need(args, "lottery")))
    l2 = lottery_from_dict(load_json(_need(args, "other")))
    rep = betweenness_scan(feats, l1, l2, args.grid or 101)
    best, worst = rep.best, rep.worst
    _emit(args, {
        "holds": rep.holds,
        "v1": rep.v1,
        "v2": rep.v2,
        "violations": [[float(a), float(v)] for a, v in rep.violations],
        "weak_violations": [[float(a), float(v)] for a, v in rep.weak_violations],
        "max": {"alpha": float(best[0]), "value": float(best[1])},
        "min": {"alpha": float(worst[0]), "value": float(worst[1])},
    })
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_check_weighting(args):
    kind = args.kind or "linear"
    w = WeightingFunction(kind, args.gamma if args.gamma is not None else 1.0)
    rep = weighting_functional_check(w, args.samples, args.seed)
    holds = rep.max_residual < FUNCTIONAL_TOL
    _emit(args, {
        "kind": kind,
        "gamma": w.gamma,
        "max_residual": rep.max_residual,
        "worst_tuple": [float(x) for x in rep.worst_tuple],
        "samples": rep.samples,
        "holds": holds,
    })
    return EXIT_OK if holds else EXIT_FAIL


def cmd_verify_ce(args):
    game = _load_game(args)
    phi = mediator_from_dict(load_json(_need(args, "mediator")))
    v = verify_correlated(game, phi, args.epsilon)
    _emit(args, v.to_dict())
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_verify_mediated(args):
    game = _load_game(args)
    psi, lam = signals_from_dict(load_json(_need(args, "mediator")))
    v = verify_mediated(game, psi, lam, args.epsilon)
    _emit(args, v.to_dict())
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_fixtures(args):
    paths = fixtures.export(args.out or "fixtures")
    print("\n".join(str(p) for p in paths))
    return EXIT_OK


COMMANDS = {
    "value": cmd_value,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "classify": cmd_classify,
    "check-betweenness": cmd_check_betweenness,
    "check-weighting": cmd_check_weighting,
    "verify-ce": cmd_verify_ce,
    "verify-mediated": cmd_verify_mediated,
    "fixtures": cmd_fixtures,
}


def _positive(kind):
    def parse(text):
        val = kind(text)
        if not val > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return val
    return parse


def _resolution(text):
    val = int(text)
    if val < 10:
        raise argparse.ArgumentTypeError("resolution must be at least 10")
    return val


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cptgames",
        description="CPT valuation and equilibrium checks for finite games.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--game", help="game JSON file")
    parser.add_argument("--features", help="CPT features JSON file")
    parser.add_argument("--lottery", help="lottery JSON file")
    parser.add_argument("--other", help="second lottery JSON file (check-betweenness)")
    parser.add_argument("--profile", help="mixture profile as a JSON list or file")
    parser.add_argument("--mediator", help="mediator JSON file")
    parser.add_argument("--kind", help="equilibrium kind or weighting kind")
    parser.add_argument("--gamma", type=_positive(float), help="weighting parameter")
    parser.add_argument("--samples", type=_positive(int), default=10000)
    parser.add_argument("--grid", type=_resolution, help="grid resolution")
    parser.add_argument("--epsilon", type=_positive(float), default=DEFAULT_EPSILON)
    parser.add_argument("--hull-tol", type=_positive(float), default=HULL_TOLERANCE)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--q", type=float, nargs="+", help="sweep only these q values")
    parser.add_argument("--p", type=float, nargs="+", help="sweep only these p values")
    parser.add_argument("--out", help="output path (directory for fixtures)")
    parser.add_argument("--format", choices=("json", "csv"), help="output format")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("csv" if args.command == "sweep" else "json")
    if (fmt == "csv") != (args.command == "sweep"):
        print(f"error: {args.command} does not support --format {fmt}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except (InputError, ValidationError, IndexError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
