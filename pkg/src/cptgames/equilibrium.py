"""Pure, mixed-action, black-box and mixed black-box Nash equilibria.

All verdicts are epsilon-verdicts.  Value slacks are relative to
``max(1, |best value|)``; the mixed black-box verdict measures the
l-infinity distance of a conjecture to the convex hull of the computed
black-box best responses.

The 2x2 solvers work on the graphs of the two players' best-response
correspondences, each sampled along the opponent's mixing probability.
Jumps between samples are located by bisection, the sampled graphs are
stitched into line segments, and every crossing of the two graphs is
refined and re-verified.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .best_response import (
    DEFAULT_EPSILON as BR_EPSILON,
    best_response_blackbox,
    best_response_blackbox_many,
    convex_decomposition,
    default_grid,
    hull_distance,
    scale,
)
from .cpt import ValidationError
from .game import Mixture, MixtureProfile, product_belief

DEFAULT_EPSILON = 1e-5
HULL_TOLERANCE = 1e-4
SUPPORT_THRESHOLD = 1e-9
KINDS = ("pNE", "mNE", "BBNE", "mBBNE")
MAX_CELL_CHECKS = 8
SWITCH_WIDTH = 1e-4   # unlinked samples closer than this mark a switch
RUN_GAP = 1e-3        # member spacing still reported as one run


class NotAnEquilibrium(ValueError):
    """Raised when a decomposition is requested for a non-equilibrium profile."""

    def __init__(self, verdict):
        super().__init__(
            f"profile is not an mBBNE (slacks {list(verdict.per_player_slack)})"
        )
        self.verdict = verdict


@dataclass(frozen=True)
class EquilibriumVerdict:
    kind: str
    holds: bool
    witness: MixtureProfile
    per_player_slack: tuple
    epsilon: float

    def to_dict(self):
        return {
            "kind": self.kind,
            "holds": self.holds,
            "witness": [m.weights.tolist() for m in self.witness],
            "slack": list(self.per_player_slack),
            "epsilon": self.epsilon,
        }


def _verdict(kind, profile, slacks, tol):
    slacks = tuple(float(s) for s in slacks)
    return EquilibriumVerdict(kind, all(s <= tol for s in slacks), profile, slacks, tol)


def _as_profile(game, profile):
    if not isinstance(profile, MixtureProfile):
        profile = MixtureProfile.from_arrays(profile)
    profile.check_against(game)
    return profile


def enumerate_pure(game):
    """All pure Nash equilibria, compared on raw payoffs without tolerance."""
    ok = np.ones(game.shape, dtype=bool)
    for i, x in enumerate(game.payoffs):
        ok &= x == x.max(axis=i, keepdims=True)
    return [tuple(int(a) for a in idx) for idx in np.argwhere(ok)]


def pure_actions(profile, tol=1e-12):
    """Action profile if every mixture is a point mass, else ``None``."""
    acts = []
    for m in profile:
        a = int(np.argmax(m.weights))
        if m.weights[a] < 1.0 - tol:
            return None
        acts.append(a)
    return tuple(acts)


def verify_pure(game, profile):
    """Exact pure-equilibrium check.

    A player whose conjecture is not a point mass gets slack
    ``1 - max weight``, its distance from the nearest point mass.
    """
    profile = _as_profile(game, profile)
    acts = pure_actions(profile)
    slacks = []
    for i, x in enumerate(game.payoffs):
        if acts is None:
            slacks.append(1.0 - float(profile[i].weights.max()))
            continue
        col = list(acts)
        col[i] = slice(None)
        best = x[tuple(col)].max()
        slacks.append((best - x[acts]) / scale(best))
    return _verdict("pNE", profile, slacks, 0.0)


def verify_mixed_action(game, profile, epsilon=DEFAULT_EPSILON):
    """Every action in the support of each conjecture is an epsilon-best action."""
    profile = _as_profile(game, profile)
    slacks = []
    for i, m in enumerate(profile):
        vals = game.action_values(i, product_belief(game, profile, i))
        best = float(vals.max())
        sup = m.support(SUPPORT_THRESHOLD)
        slacks.append(float(np.max(best - vals[sup])) / scale(best))
    return _verdict("mNE", profile, slacks, epsilon)


def verify_blackbox(game, profile, epsilon=DEFAULT_EPSILON, grid=None):
    """Each black-box strategy attains the global optimum over the simplex."""
    profile = _as_profile(game, profile)
    slacks = []
    for i, m in enumerate(profile):
        bel = product_belief(game, profile, i)
        br = best_response_blackbox(game, i, bel, grid, min(epsilon, BR_EPSILON))
        own = float(game.values(i, m.weights, bel.distribution)[0])
        best = max(br.value, own)
        slacks.append((best - own) / scale(best))
    return _verdict("BBNE", profile, slacks, epsilon)


def _mbb_parts(game, profile, epsilon, grid):
    parts = []
    for i, m in enumerate(profile):
        bel = product_belief(game, profile, i)
        br = best_response_blackbox(game, i, bel, grid, epsilon)
        own = float(game.values(i, m.weights, bel.distribution)[0])
        self_optimal = own >= max(br.value, own) - epsilon * scale(br.value)
        parts.append((br, self_optimal))
    return parts


def verify_mixed_blackbox(game, profile, epsilon=DEFAULT_EPSILON, grid=None,
                          hull_tol=HULL_TOLERANCE):
    """Each conjecture lies in the convex hull of black-box best responses.

    A conjecture that is itself an epsilon-optimal black-box strategy counts
    as a member of its best-response set.  The verdict's slack is the
    l-infinity distance to the hull and its tolerance is ``hull_tol``.
    """
    profile = _as_profile(game, profile)
    slacks = []
    for m, (br, self_optimal) in zip(profile, _mbb_parts(game, profile, epsilon, grid)):
        slacks.append(0.0 if self_optimal else hull_distance(m.weights, br.points()))
    return _verdict("mBBNE", profile, slacks, hull_tol)


def decompose_mixed_blackbox(game, profile, epsilon=DEFAULT_EPSILON, grid=None,
                             hull_tol=HULL_TOLERANCE):
    """Finite-support conjectures over black-box strategies for an mBBNE.

    Returns, per player, a list of ``(weight, Mixture)`` with at most
    ``|A_i|`` atoms, each a black-box best response, whose mean is the
    player's conjecture (up to ``hull_tol``).
    """
    profile = _as_profile(game, profile)
    verdict = verify_mixed_blackbox(game, profile, epsilon, grid, hull_tol)
    if not verdict.holds:
        raise NotAnEquilibrium(verdict)
    out = []
    for i, (m, (br, self_optimal)) in enumerate(
        zip(profile, _mbb_parts(game, profile, epsilon, grid))
    ):
        if self_optimal:
            out.append([(1.0, m)])
            continue
        lam, _ = convex_decomposition(m.weights, br.points())
        out.append([
            (float(w), Mixture(i, g)) for w, g in zip(lam, br.points()) if w > 0
        ])
    return out


@dataclass(frozen=True)
class Classification:
    flags: dict
    verdicts: dict

    def region(self):
        """Label of the Venn-diagram region the flags fall in."""
        f = self.flags
        key = tuple(bool(f[k]) for k in KINDS)
        return _REGIONS.get(key)

    def consistent(self):
        f = self.flags
        return (
            (not f["pNE"] or f["mNE"])
            and (not f["pNE"] or f["BBNE"])
            and (not f["BBNE"] or f["mBBNE"])
        )


_REGIONS = {
    (True, True, True, True): "a",
    (False, True, False, False): "b",
    (False, True, True, True): "c",
    (False, True, False, True): "d",
    (False, False, True, True): "e",
    (False, False, False, True): "f",
    (False, False, False, False): "g",
}


def classify(game, profile, epsilon=DEFAULT_EPSILON, grid=None, hull_tol=HULL_TOLERANCE):
    """Run all four verifiers on one profile."""
    profile = _as_profile(game, profile)
    verdicts = {
        "pNE": verify_pure(game, profile),
        "mNE": verify_mixed_action(game, profile, epsilon),
        "BBNE": verify_blackbox(game, profile, epsilon, grid),
        "mBBNE": verify_mixed_blackbox(game, profile, epsilon, grid, hull_tol),
    }
    return Classification({k: v.holds for k, v in verdicts.items()}, verdicts)


# ---------------------------------------------------------------------------
# 2x2 solvers


def _require_2x2(game):
    if game.shape != (2, 2):
        raise ValidationError(f"expected a 2x2 game, got shape {game.shape}")


def _profile(p, q):
    return MixtureProfile.from_probabilities(float(p), float(q))


def _indifference_roots(diff, ts, tol):
    """Roots of a sampled continuous function, refined by Brent's method."""
    vals = np.array([diff(t) for t in ts])
    roots = []
    zero = np.abs(vals) <= tol
    k = 0
    while k < len(ts):
        if zero[k]:
            start = k
            while k + 1 < len(ts) and zero[k + 1]:
                k += 1
            roots.extend({ts[start], ts[k], ts[(start + k) // 2]})
        k += 1
    for k in range(len(ts) - 1):
        if not zero[k] and not zero[k + 1] and vals[k] * vals[k + 1] < 0:
            roots.append(brentq(diff, ts[k], ts[k + 1], xtol=1e-15))
    return sorted(set(float(r) for r in roots))


def solve_mixed_action_2x2(game, grid=400, epsilon=DEFAULT_EPSILON):
    """Mixed-action equilibria of a 2x2 game.

    Interior weights require indifference of the mixing player, so
    candidates are the indifference roots of each player's action-value
    difference plus the pure weights; every candidate is verified.
    """
    _require_2x2(game)
    ts = np.linspace(0.0, 1.0, grid + 1)

    def diff(player):
        def f(t):
            vals = game.action_values(player, np.array([1.0 - t, t]))
            return float(vals[1] - vals[0])
        return f

    tol = 1e-12
    q_roots = _indifference_roots(diff(0), ts, tol)
    p_roots = _indifference_roots(diff(1), ts, tol)
    ps = {0.0, 1.0, *p_roots}
    qs = {0.0, 1.0, *q_roots}
    cands = {(p, q) for p in ps for q in qs}
    # a pure weight of one player can pair with a range of the other's weights
    for q in ({0.0, 1.0} & set(q_roots)):
        cands |= {(float(p), q) for p in ts}
    for p in ({0.0, 1.0} & set(p_roots)):
        cands |= {(p, float(q)) for q in ts}
    found = []
    for p, q in sorted(cands):
        v = verify_mixed_action(game, _profile(p, q), epsilon)
        if v.holds:
            found.append((p, q, max(v.per_player_slack)))
    return _cluster(found, radius=1.5 / grid)


def _cluster(found, radius):
    """Greedy l-inf clustering of ``(p, q, slack)``; keeps the lowest slack."""
    reps = []
    for p, q, s in sorted(found, key=lambda r: r[2]):
        if any(max(abs(p - a), abs(q - b)) <= radius for a, b, _ in reps):
            continue
        reps.append((p, q, s))
    return sorted(reps)


@dataclass
class _Sample:
    t: float
    runs: list        # list of [lo, hi] in the player's own weight on action 1
    members: np.ndarray

    def keys(self):
        return np.array(sorted({x for r in self.runs for x in r}))


def _runs_from(points, step, mode):
    pts = np.sort(np.asarray(points, dtype=float))
    if mode == "hull":
        return [[float(pts[0]), float(pts[-1])]]
    runs = [[pts[0], pts[0]]]
    for x in pts[1:]:
        if x - runs[-1][1] <= 1.5 * step:  # adjacent lattice points
            runs[-1][1] = x
        else:
            runs.append([x, x])
    return [[float(a), float(b)] for a, b in runs]


def _unmatched(a, b, tol):
    """Largest distance from a key of ``a`` to its nearest key of ``b``."""
    ka, kb = a.keys(), b.keys()
    d = np.abs(ka[:, None] - kb[None, :]).min(axis=1)
    return float(d.max())


@dataclass
class Correspondence:
    """Sampled best-response graph of one player in a 2x2 game.

    ``t`` is the opponent's weight on action 1; runs hold the player's own
    weight on action 1.
    """

    player: int
    mode: str
    samples: list
    jumps: list = field(default_factory=list)
    switches: list = field(default_factory=list)
    grid_samples: int = 0


def sample_correspondence(game, player, grid=200, br_grid=None, epsilon=BR_EPSILON,
                          mode="bb", link_tol=0.02, jump_resolution=1e-12):
    """Sample ``t -> B_player(t)`` on a grid and resolve jumps by bisection.

    ``mode='bb'`` keeps the member set as runs of adjacent lattice points;
    ``mode='hull'`` keeps only its convex hull.
    """
    _require_2x2(game)
    br_grid = br_grid or default_grid(2)
    step = 1.0 / br_grid

    def make(ts):
        beliefs = np.stack([1.0 - np.asarray(ts), np.asarray(ts)], axis=1)
        sets = best_response_blackbox_many(game, player, beliefs, br_grid, epsilon)
        return [
            _Sample(float(t), _runs_from(s.points()[:, 1], step, mode), s.points()[:, 1])
            for t, s in zip(ts, sets)
        ]

    ts = np.linspace(0.0, 1.0, grid + 1)
    base = make(ts)
    corr = Correspondence(player, mode, [], grid_samples=len(base))

    def unlinked(a, b):
        return max(_unmatched(a, b, link_tol), _unmatched(b, a, link_tol)) > link_tol

    def resolve(a, b, depth=0):
        if not unlinked(a, b):
            return []
        if b.t - a.t <= SWITCH_WIDTH:
            corr.switches.append((0.5 * (a.t + b.t), a, b))
        if b.t - a.t <= jump_resolution or depth > 80:
            # place the connector where the computed set is widest, so that
            # verification at the connector sees both branches
            at = max((a, make([0.5 * (a.t + b.t)])[0], b), key=lambda s: np.ptp(s.members))
            union = np.concatenate([a.members, b.members, at.members])
            conn = _Sample(at.t, _runs_from(union, step, mode), union)
            corr.jumps.append((conn.t, a, b))
            return [conn]
        mid = make([0.5 * (a.t + b.t)])[0]
        return resolve(a, mid, depth + 1) + [mid] + resolve(mid, b, depth + 1)

    out = [base[0]]
    for a, b in zip(base[:-1], base[1:]):
        out.extend(resolve(a, b))
        out.append(b)
    corr.samples = out
    return corr


def _segments(corr, link_tol):
    """Line segments of a sampled graph in ``(p, q)`` coordinates.

    Each segment carries ``(kind, t0, t1, m0, m1)`` in (parameter, member)
    coordinates: ``flat`` segments sit at one parameter value, ``link``
    segments join members of adjacent samples.
    """
    segs = []
    for s in corr.samples:
        for lo, hi in s.runs:
            segs.append(("flat", s.t, s.t, lo, hi))
    for a, b in zip(corr.samples[:-1], corr.samples[1:]):
        ka, kb = a.keys(), b.keys()
        pairs = set()
        for x in ka:
            y = kb[np.argmin(np.abs(kb - x))]
            if abs(y - x) <= link_tol:
                pairs.add((float(x), float(y)))
        for y in kb:
            x = ka[np.argmin(np.abs(ka - y))]
            if abs(y - x) <= link_tol:
                pairs.add((float(x), float(y)))
        for x, y in pairs:
            segs.append(("link", a.t, b.t, x, y))
    return segs


def _to_pq(seg, player):
    """Endpoints of a segment as ``(p, q)`` pairs."""
    _, t0, t1, m0, m1 = seg
    if player == 0:   # parameter is q, member is p
        return (m0, t0), (m1, t1)
    return (t0, m0), (t1, m1)


def _segment_crossings(sa, sb, tol=1e-7):
    """Pairs ``(i, j, point)`` of segments of ``sa`` and ``sb`` that meet."""
    a0 = np.array([s[0] for s in sa])
    a1 = np.array([s[1] for s in sa])
    b0 = np.array([s[0] for s in sb])
    b1 = np.array([s[1] for s in sb])
    bmin = np.minimum(b0, b1) - tol
    bmax = np.maximum(b0, b1) + tol
    out = []
    for i in range(len(a0)):
        lo = np.minimum(a0[i], a1[i]) - tol
        hi = np.maximum(a0[i], a1[i]) + tol
        cand = np.flatnonzero(np.all((bmin <= hi) & (bmax >= lo), axis=1))
        for j in cand:
            pt = _meet(a0[i], a1[i], b0[j], b1[j], tol)
            if pt is not None:
                out.append((i, int(j), pt))
    return out


def _point_segment(x, s0, s1):
    d = s1 - s0
    den = float(d @ d)
    u = 0.0 if den == 0 else min(max(float((x - s0) @ d) / den, 0.0), 1.0)
    proj = s0 + u * d
    return float(np.max(np.abs(x - proj))), proj


def _meet(p0, p1, q0, q1, tol):
    r, s = p1 - p0, q1 - q0
    den = r[0] * s[1] - r[1] * s[0]
    w = q0 - p0
    if abs(den) > 1e-15:
        t = (w[0] * s[1] - w[1] * s[0]) / den
        u = (w[0] * r[1] - w[1] * r[0]) / den
        if -1e-12 <= t <= 1 + 1e-12 and -1e-12 <= u <= 1 + 1e-12:
            return p0 + t * r
    best = None
    for x, (s0, s1) in ((p0, (q0, q1)), (p1, (q0, q1)), (q0, (p0, p1)), (q1, (p0, p1))):
        d, proj = _point_segment(x, s0, s1)
        if d <= tol and (best is None or d < best[0]):
            best = (d, 0.5 * (x + proj))
    return None if best is None else best[1]


def _branch(game, player, grid, epsilon, mode, seg):
    """Member of ``B_player(t)`` nearest the linear interpolation of ``seg``."""
    _, t0, t1, m0, m1 = seg

    def f(t):
        guess = m0 if t1 == t0 else m0 + (m1 - m0) * (t - t0) / (t1 - t0)
        br = best_response_blackbox(game, player, [1.0 - t, t], grid, epsilon)
        pts = br.points()[:, 1]
        if mode == "hull":
            pts = np.array([pts.min(), pts.max()])
        return float(pts[np.argmin(np.abs(pts - guess))])
    return f


def _refine_crossing(game, seg0, seg1, pt, grid, epsilon, mode):
    """Solve for an exact crossing of a flat/link pair; ``None`` if no bracket."""
    k0, q0a, q0b = seg0[0], seg0[1], seg0[2]
    k1, p1a, p1b = seg1[0], seg1[1], seg1[2]
    try:
        if k0 == "flat" and k1 == "flat":
            return float(p1a), float(q0a)
        if k0 == "flat":            # q fixed; solve c(p) = q on player 1's link
            c = _branch(game, 1, grid, epsilon, mode, seg1)
            g = lambda p: c(p) - q0a
            p = brentq(g, p1a, p1b, xtol=1e-13) if g(p1a) * g(p1b) < 0 else None
            return None if p is None else (p, float(q0a))
        b = _branch(game, 0, grid, epsilon, mode, seg0)
        if k1 == "flat":            # p fixed; solve b(q) = p on player 0's link
            g = lambda q: b(q) - p1a
            q = brentq(g, q0a, q0b, xtol=1e-13) if g(q0a) * g(q0b) < 0 else None
            return None if q is None else (float(p1a), q)
        c = _branch(game, 1, grid, epsilon, mode, seg1)
        g = lambda q: c(min(max(b(q), 0.0), 1.0)) - q
        if g(q0a) * g(q0b) < 0:
            q = brentq(g, q0a, q0b, xtol=1e-13)
            return b(q), q
    except ValueError:
        return None
    return None


@dataclass
class ScanResult:
    """Outcome of a 2x2 equilibrium scan."""

    kind: str
    equilibria: list
    correspondences: tuple
    certificate: dict
    epsilon: float

    def profiles(self):
        return [_profile(p, q) for p, q, _ in self.equilibria]

    def to_dict(self):
        return {
            "kind": self.kind,
            "witnesses": [
                {"p": p, "q": q, "profile": [[1 - p, p], [1 - q, q]], "slack": s}
                for p, q, s in self.equilibria
            ],
            "certificate": self.certificate,
            "epsilon": self.epsilon,
        }


def _breakpoints(corr, merge=SWITCH_WIDTH):
    """Switches of a sampled correspondence.

    A switch is a stretch of parameter values where the sampled graph jumps
    or moves faster than the link tolerance allows; nearby records merge
    into one switch located at the stretch's midpoint.  Member sets are
    summarised as runs of nearby points.
    """
    def runs(members):
        return _runs_from(members, RUN_GAP, "bb")

    merged = []
    for t, a, b in sorted(corr.switches, key=lambda j: j[0]):
        if merged and t - merged[-1][1] <= merge:
            merged[-1][1] = t
            merged[-1][3] = b
            merged[-1][4].append(b.members)
        else:
            merged.append([t, t, a, b, [a.members, b.members]])
    return [
        {
            "at": 0.5 * (t0 + t1),
            "from": t0,
            "until": t1,
            "left": runs(a.members),
            "right": runs(b.members),
            "maximizers": runs(np.concatenate(ms)),
        }
        for t0, t1, a, b, ms in merged
    ]


def _dist_to_runs(x, runs):
    d = np.full(np.shape(x), np.inf)
    for lo, hi in runs:
        d = np.minimum(d, np.maximum(np.maximum(lo - x, x - hi), 0.0))
    return d


def _priority(seg, grid):
    """Prefer flat segments at base grid samples, then other flats, then links."""
    if seg[0] != "flat":
        return 2
    return 0 if abs(seg[1] * grid - round(seg[1] * grid)) < 1e-9 else 1


def _scan(game, kind, grid, br_grid, epsilon, hull_tol, link_tol):
    _require_2x2(game)
    mode = "bb" if kind == "BBNE" else "hull"
    br_eps = min(epsilon, BR_EPSILON) if kind == "BBNE" else epsilon
    c0 = sample_correspondence(game, 0, grid, br_grid, br_eps, mode, link_tol)
    c1 = sample_correspondence(game, 1, grid, br_grid, br_eps, mode, link_tol)
    s0 = _segments(c0, link_tol)
    s1 = _segments(c1, link_tol)
    crossings = _segment_crossings([_to_pq(s, 0) for s in s0], [_to_pq(s, 1) for s in s1])

    def check(p, q):
        prof = _profile(min(max(p, 0.0), 1.0), min(max(q, 0.0), 1.0))
        if kind == "BBNE":
            v = verify_blackbox(game, prof, epsilon, br_grid)
        else:
            v = verify_mixed_blackbox(game, prof, epsilon, br_grid, hull_tol)
        return v.holds, max(v.per_player_slack)

    # verify a bounded number of distinct candidates per 1e-3 cell
    cells = {}
    for i, j, pt in crossings:
        key = (round(pt[0] * 1000), round(pt[1] * 1000))
        cell = cells.setdefault(key, {})
        cell.setdefault((round(pt[0], 10), round(pt[1], 10)), (i, j, pt))
    found = []
    for cands in cells.values():
        cands = sorted(cands.values(), key=lambda c: _priority(s0[c[0]], grid)
                       + _priority(s1[c[1]], grid))
        for i, j, pt in cands[:MAX_CELL_CHECKS]:
            ok, slack = check(*pt)
            if ok:
                found.append((float(pt[0]), float(pt[1]), slack))
                break
            ref = _refine_crossing(game, s0[i], s1[j], pt, br_grid, br_eps, mode)
            if ref is not None:
                ok, slack = check(*ref)
                if ok:
                    found.append((float(ref[0]), float(ref[1]), slack))
                    break
    equilibria = _cluster(found, radius=1e-3)
    cert = {
        "breakpoints": {"player1": _breakpoints(c0), "player2": _breakpoints(c1)},
        "grid": grid,
    }
    if kind == "BBNE":
        ts = np.linspace(0.0, 1.0, grid + 1)
        g0 = [s for s in c0.samples if np.any(np.isclose(s.t, ts, rtol=0, atol=1e-15))]
        g1 = [s for s in c1.samples if np.any(np.isclose(s.t, ts, rtol=0, atol=1e-15))]
        d0 = np.stack([_dist_to_runs(ts, s.runs) for s in g0])      # [q, p]
        d1 = np.stack([_dist_to_runs(ts, s.runs) for s in g1]).T    # [q, p]
        joint = np.maximum(d0, d1)
        kq, kp = np.unravel_index(np.argmin(joint), joint.shape)
        cert["min_joint_distance"] = float(joint[kq, kp])
        cert["argmin"] = {"p": float(ts[kp]), "q": float(ts[kq])}
    return ScanResult(kind, equilibria, (c0, c1), cert, epsilon)


def scan_blackbox_2x2(game, grid=2000, br_grid=None, epsilon=DEFAULT_EPSILON, link_tol=0.02):
    """Black-box equilibria of a 2x2 game from the two best-response graphs.

    When none is found the certificate holds the smallest joint distance
    ``max(dist(p, B1(q)), dist(q, B2(p)))`` over the grid together with the
    jumps of each correspondence.
    """
    return _scan(game, "BBNE", grid, br_grid, epsilon, HULL_TOLERANCE, link_tol)


def search_mixed_blackbox_2x2(game, grid=200, br_grid=None, epsilon=DEFAULT_EPSILON,
                              hull_tol=HULL_TOLERANCE, link_tol=0.02):
    """Profiles satisfying the convex-hull condition on a 2x2 game."""
    return _scan(game, "mBBNE", grid, br_grid, epsilon, hull_tol, link_tol)
