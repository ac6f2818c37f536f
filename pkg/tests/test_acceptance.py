"""Acceptance criteria, one line of PASS/FAIL per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""
import functools
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
import suites  # noqa: E402
from cptgames import fixtures  # noqa: E402
from cptgames.best_response import best_response_actions, best_response_blackbox  # noqa: E402
from cptgames.cli import sweep_rows  # noqa: E402
from cptgames.cpt import (  # noqa: E402
    WeightingFunction,
    betweenness_scan,
    cpt_value,
    cpt_value_cumulative,
    mix_lotteries,
    weighting_functional_check,
)
from cptgames.equilibrium import KINDS, classify, scan_blackbox_2x2  # noqa: E402
from cptgames.game import Belief  # noqa: E402

RESULTS = []


def within(x, target, tol):
    return abs(x - target) <= tol


def both_formulas(lot, target):
    f = fixtures.alice_features()
    a, b = cpt_value(f, lot), cpt_value_cumulative(f, lot)
    ok = within(a, target, 0.01) and within(b, target, 0.01)
    return ok, f"discrete {a:.4f}, cumulative {b:.4f}, target {target} +-0.01"


def c1a():
    return both_formulas(fixtures.alice_lotteries()[0], 968.96)


def c1b():
    return both_formulas(fixtures.alice_lotteries()[1], 932.29)


def c1c():
    return both_formulas(fixtures.alice_lotteries()[2], 1022.51)


def c2():
    beta = fixtures.charlie_beta()
    f = fixtures.charlie_features()
    l1, l2 = fixtures.charlie_lotteries()
    v1, v2 = cpt_value(f, l1), cpt_value(f, l2)
    vm = cpt_value(f, mix_lotteries([(0.5, l1), (0.5, l2)]))
    rep = betweenness_scan(f, l1, l2, 101)
    flagged = any(abs(a - 0.5) < 1e-12 for a, _ in rep.weak_violations)
    ok = (within(beta, 2.299, 0.001) and within(beta, 1 / oracles.prelec(0.5)(0.5), 1e-12)
          and within(v1, 2.0, 0.001) and within(v2, 2.0, 0.001) and within(vm, 1.985, 0.001) and flagged)
    return ok, f"beta {beta:.5f}, V(L1) {v1:.4f}, V(L2) {v2:.4f}, V(mix) {vm:.4f}, alpha=0.5 flagged {flagged}"


def c3a():
    br = best_response_actions(fixtures.alice_game(), 0, Belief(1, fixtures.ALICE_BELIEF))
    return list(br.items) == [0], f"action set {[int(a) + 1 for a in br.items]} (actions numbered from 1)"


@functools.lru_cache(maxsize=None)
def _alice_bb():
    return best_response_blackbox(fixtures.alice_game(), 0, fixtures.ALICE_BELIEF)


def c3b():
    br = _alice_bb()
    pts = br.points()
    ok = bool(np.all(np.abs(pts[:, 0] - 0.96) <= 0.005))
    lo, hi = pts[:, 0].min(), pts[:, 0].max()
    return ok, f"black-box set spans alpha in [{lo:.4f}, {hi:.4f}], target 0.96 +-0.005"


def c3c():
    v = _alice_bb().value
    return within(v, 1023.16, 0.02), f"optimum {v:.4f}, target 1023.16 +-0.02"


def c4():
    res = scan_blackbox_2x2(fixtures.example4_game(), grid=2000)
    cert = res.certificate
    b1 = cert["breakpoints"]["player1"]
    b2 = cert["breakpoints"]["player2"]
    qs = [b["at"] for b in b1]
    p_star = [max(hi for _, hi in b["right"]) for b in b1]
    ok = (
        not res.equilibria
        and cert["min_joint_distance"] > 0
        and any(within(q, 0.340, 0.002) and within(p, 0.996, 0.002) for q, p in zip(qs, p_star))
        and any(within(b["at"], 0.5, 0.001) for b in b2)
    )
    return ok, (f"equilibria {len(res.equilibria)}, min joint distance {cert['min_joint_distance']:.4f}, "
                f"q* {qs}, p* {p_star}, player-2 switches {[b['at'] for b in b2]}")


def c5():
    game = fixtures.example4_game()
    step = 1.0 / 2000
    out = {}
    for q in (0.3, 0.35):
        rows = np.array(sweep_rows(game, 2000, q_values=[q]))
        out[q] = rows[np.argmax(rows[:, 2]), 0]
    ok = out[0.3] <= step and 0.9 <= out[0.35] <= 1.0
    return ok, f"argmax p at q=0.3: {out[0.3]:.4f}; at q=0.35: {out[0.35]:.4f}"


def c6():
    expected = {
        "a": (True, True, True, True), "b": (False, True, False, False),
        "c": (False, True, True, True), "d": (False, True, False, True),
        "e": (False, False, True, True), "f": (False, False, False, True),
        "g": (False, False, False, False),
    }
    wrong = []
    for r, want in expected.items():
        c = classify(fixtures.region_game(r), fixtures.region_profile(r))
        got = tuple(c.flags[k] for k in KINDS)
        if got != want:
            wrong.append((r, got))
    g = fixtures.region_e_game()
    pt, pp = fixtures.p_tilde(), fixtures.p_prime()
    v_t = g.values(0, [1 - pt, pt], [0.5, 0.5])[0]
    v_0 = g.values(0, [1.0, 0.0], [0.5, 0.5])[0]
    ok = (not wrong and within(pp, 0.707, 0.002) and within(pt, 0.582, 0.002)
          and within(v_t, 2.125, 0.005) and within(v_0, 2.071, 0.005))
    return ok, (f"misplaced {wrong}; p' {pp:.4f}, p~ {pt:.4f}, "
                f"V1(p~, 0.5) {v_t:.4f}, V1(0, 0.5) {v_0:.4f}")


def c7():
    W = WeightingFunction
    lin = weighting_functional_check(W.linear(), 10000, seed=0).max_residual
    res = {}
    for name, w in (("prelec0.5", W.prelec(0.5)), ("prelec0.6", W.prelec(0.6)), ("power0.5", W.power(0.5))):
        res[name] = (weighting_functional_check(w, 10000, seed=0).max_residual,
                     oracles.fixed_tuple_residual(w))
    ok = lin < 1e-12 and all(r > 1e-3 and o > 1e-3 for r, o in res.values())
    shown = ", ".join(f"{k} {r:.4f} (fixed tuple {o:.4f})" for k, (r, o) in res.items())
    return ok, f"linear {lin:.1e}; {shown}"


CRITERIA = [
    ("1a", "CPT value V(L1)=968.96, both formulas", c1a),
    ("1b", "CPT value V(L2)=932.29, both formulas", c1b),
    ("1c", "CPT value V(L)=1022.51, both formulas", c1c),
    ("2", "Charlie weak-betweenness violation", c2),
    ("3a", "Alice best-response action set is {action 1}", c3a),
    ("3b", "Alice black-box set is {(0.96, 0.04)}", c3b),
    ("3c", "Alice black-box optimum 1023.16", c3c),
    ("4", "Example 4 has no black-box equilibrium; breakpoints", c4),
    ("5", "Sweep argmax at q=0.3 and q=0.35", c5),
    ("6", "Region fixtures a-g classify as placed", c6),
    ("7", "Weighting functional equation residuals", c7),
] + [(name.split()[0], " ".join(name.split()[1:]), fn) for name, fn in suites.SUITES.items()]


def report(cid, desc, fn):
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {cid}: {desc} -- {detail}"
    RESULTS.append(line)
    print(line)
    return ok, line


@pytest.mark.parametrize("cid,desc,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, desc, fn):
    ok, line = report(cid, desc, fn)
    assert ok, line


if __name__ == "__main__":
    failed = sum(not report(*c)[0] for c in CRITERIA)
    sys.exit(1 if failed else 0)
