"""Best responses of a CPT player: pure actions and black-box mixtures.

The black-box objective ``b -> V_i(b x mu_-i)`` is smooth but generally not
concave and can spike near the simplex boundary, so it is maximised by a
dense simplex lattice followed by golden-section refinement of every
lattice local maximum.  The result is an epsilon-approximation of the
argmax correspondence: members are within ``epsilon * max(1, |best|)`` of
the best value found.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .cpt import ValidationError
from .game import Belief, Mixture

DEFAULT_EPSILON = 1e-6
DEDUP_RADIUS = 1e-4
GOLDEN_ITERATIONS = 60
REFINE_SWEEPS = 2
MAX_CANDIDATES = 4096
_GOLD = (np.sqrt(5.0) - 1.0) / 2.0


def default_grid(num_actions):
    """Lattice divisions used when the caller does not choose one."""
    return {1: 1, 2: 2000, 3: 200, 4: 40, 5: 20}.get(num_actions, 12)


def scale(value):
    return max(1.0, abs(value))


@dataclass(frozen=True, eq=False)
class ArgmaxSet:
    """Near-optimal members of a best-response set.

    ``items`` is ``(n, |A_i|)`` for mixtures or a 1-d integer array for the
    action variant; ``values`` holds each member's objective value.
    """

    player: int
    items: np.ndarray
    values: np.ndarray
    value: float
    epsilon: float
    samples: tuple = field(default=None, repr=False)

    def __len__(self):
        return len(self.items)

    @property
    def is_actions(self):
        return self.items.ndim == 1

    def mixtures(self):
        if self.is_actions:
            raise TypeError("action argmax set holds action indices")
        return [Mixture(self.player, w) for w in self.items]

    def points(self):
        """Members as simplex points (actions become point masses)."""
        if self.is_actions:
            raise TypeError("action argmax set has no ambient dimension")
        return self.items

    def interval(self):
        """``[min, max]`` weight on action 1 over the members (two actions)."""
        pts = self.points()
        if pts.shape[1] != 2:
            raise ValueError("interval() needs a two-action player")
        return float(pts[:, 1].min()), float(pts[:, 1].max())

    def tolerance(self):
        return self.epsilon * scale(self.value)

    def best(self):
        """Member with the highest objective value."""
        return self.items[int(np.argmax(self.values))]


def best_response_actions(game, player, belief, epsilon=DEFAULT_EPSILON):
    """Pure actions whose lottery value is within relative ``epsilon`` of the best."""
    if not epsilon > 0:
        raise ValidationError("epsilon must be positive")
    vals = game.action_values(player, belief)
    best = float(vals.max())
    keep = np.flatnonzero(vals >= best - epsilon * scale(best))
    return ArgmaxSet(player, keep, vals[keep], best, epsilon)


def simplex_lattice(num_actions, grid):
    """Integer compositions of ``grid`` into ``num_actions`` parts.

    Returns ``(counts, points)`` with ``points = counts / grid``.
    """
    if num_actions == 1:
        c = np.array([[grid]])
        return c, np.ones((1, 1))
    if num_actions == 2:
        c1 = np.arange(grid + 1)
        counts = np.stack([grid - c1, c1], axis=1)
        return counts, counts / grid
    bars = np.array(list(itertools.combinations(range(grid + num_actions - 1), num_actions - 1)))
    edges = np.concatenate(
        [np.full((len(bars), 1), -1), bars, np.full((len(bars), 1), grid + num_actions - 1)],
        axis=1,
    )
    counts = np.diff(edges, axis=1) - 1
    return counts, counts / grid


def _lattice_neighbors(counts, grid):
    """Index of each lattice neighbour (one unit moved between two actions), -1 if none."""
    n, k = counts.shape
    if k == 1:
        return np.full((1, 0), -1)
    if k == 2:
        idx = np.arange(n)
        left = np.where(idx > 0, idx - 1, -1)
        right = np.where(idx < n - 1, idx + 1, -1)
        return np.stack([left, right], axis=1)
    dense = np.full((grid + 1,) * (k - 1), -1, dtype=np.int64)
    dense[tuple(counts[:, : k - 1].T)] = np.arange(n)
    cols = []
    for j, l in itertools.permutations(range(k), 2):
        moved = counts.copy()
        moved[:, j] += 1
        moved[:, l] -= 1
        valid = moved[:, l] >= 0
        nb = np.full(n, -1, dtype=np.int64)
        nb[valid] = dense[tuple(moved[valid, : k - 1].T)]
        cols.append(nb)
    return np.stack(cols, axis=1)


class _Lattice:
    _cache = {}

    def __init__(self, k, grid):
        self.counts, self.points = simplex_lattice(k, grid)
        self.neighbors = _lattice_neighbors(self.counts, grid)
        self.vertices = np.flatnonzero(self.counts.max(axis=1) == grid)
        self.grid = grid

    @classmethod
    def get(cls, k, grid):
        key = (k, grid)
        if key not in cls._cache:
            cls._cache[key] = cls(k, grid)
        return cls._cache[key]


def _golden_refine(objective, x0, owner, step):
    """Coordinate-pair golden-section ascent from lattice points ``x0``.

    ``objective(points, owner)`` evaluates rows of ``points`` against the
    beliefs indexed by ``owner``.  Each move transfers mass between two
    actions, bracketed to ``[-step, step]`` and to the simplex.
    """
    x = x0.copy()
    fx = objective(x, owner)
    k = x.shape[1]
    pairs = list(itertools.combinations(range(k), 2))
    for _ in range(REFINE_SWEEPS if k > 2 else 1):
        for j, l in pairs:
            d = np.zeros(k)
            d[j], d[l] = 1.0, -1.0
            lo = np.maximum(-x[:, j], -step)
            hi = np.minimum(x[:, l], step)
            a, b = lo, hi
            c = b - _GOLD * (b - a)
            e = a + _GOLD * (b - a)
            fc = objective(x + c[:, None] * d, owner)
            fe = objective(x + e[:, None] * d, owner)
            for _ in range(GOLDEN_ITERATIONS):
                # left: the maximum is bracketed by [a, e]
                left = fc >= fe
                a_n = np.where(left, a, c)
                b_n = np.where(left, e, b)
                c_n = np.where(left, b_n - _GOLD * (b_n - a_n), e)
                e_n = np.where(left, c, a_n + _GOLD * (b_n - a_n))
                fp = objective(x + np.where(left, c_n, e_n)[:, None] * d, owner)
                fc, fe = np.where(left, fp, fe), np.where(left, fc, fp)
                a, b, c, e = a_n, b_n, c_n, e_n
            # final pick among the bracket ends, the two probes and the start
            trials = [np.zeros_like(a), lo, hi, c, e]
            best_t = np.zeros_like(a)
            best_f = fx
            for t in trials[1:]:
                ft = objective(x + t[:, None] * d, owner)
                better = ft > best_f
                best_t = np.where(better, t, best_t)
                best_f = np.where(better, ft, best_f)
            x = x + best_t[:, None] * d
            x = np.clip(x, 0.0, 1.0)
            x /= x.sum(axis=1, keepdims=True)
            fx = objective(x, owner)
    return x, fx


def _dedupe(points, values, radius=DEDUP_RADIUS):
    order = np.argsort(-values, kind="stable")
    kept = []
    for idx in order:
        p = points[idx]
        if kept and np.min(np.max(np.abs(points[kept] - p), axis=1)) <= radius:
            continue
        kept.append(idx)
    kept = np.array(kept, dtype=int)
    # present members in lexicographic order of their coordinates
    lex = np.lexsort(points[kept].T[::-1])
    return kept[lex]


def _merge_members(xr, fr, xl, fl, step, radius=DEDUP_RADIUS):
    """Deduplicate refined points, then add lattice points away from them.

    Lattice points are pairwise ``step`` apart, so when ``step > radius``
    only refined points need the greedy pass.
    """
    if step <= radius:
        x, f = np.concatenate([xr, xl]), np.concatenate([fr, fl])
        return x, f, _dedupe(x, f, radius)
    kr = _dedupe(xr, fr, radius)
    xr, fr = xr[kr], fr[kr]
    if len(xl):
        d = np.max(np.abs(xl[:, None, :] - xr[None, :, :]), axis=2).min(axis=1)
        far = d > radius
        xl, fl = xl[far], fl[far]
    x, f = np.concatenate([xr, xl]), np.concatenate([fr, fl])
    return x, f, np.lexsort(x.T[::-1])


def best_response_blackbox_many(game, player, beliefs, grid=None, epsilon=DEFAULT_EPSILON,
                                keep_samples=False, chunk=64):
    """Black-box best responses of ``player`` against each row of ``beliefs``."""
    if not epsilon > 0:
        raise ValidationError("epsilon must be positive")
    game.check_player(player)
    k = game.shape[player]
    if grid is None:
        grid = default_grid(k)
    if k > 1 and grid < 10:
        raise ValidationError("grid must be at least 10")
    beliefs = np.atleast_2d(np.asarray(beliefs, dtype=float))
    lat = _Lattice.get(k, grid if k > 1 else 1)
    out = []
    for start in range(0, len(beliefs), chunk):
        block = beliefs[start : start + chunk]
        out.extend(_maximize_block(game, player, block, lat, epsilon, keep_samples))
    return out


def _maximize_block(game, player, beliefs, lat, epsilon, keep_samples):
    nb = len(beliefs)
    pts = lat.points
    npts, k = pts.shape

    def objective(x, owner):
        return game.values(player, x, beliefs[owner])

    grid_vals = game.values(
        player, np.tile(pts, (nb, 1)), np.repeat(beliefs, npts, axis=0)
    ).reshape(nb, npts)
    if k == 1:
        return [
            ArgmaxSet(player, pts.copy(), grid_vals[b], float(grid_vals[b, 0]), epsilon)
            for b in range(nb)
        ]

    nbr = lat.neighbors
    padded = np.concatenate([grid_vals, np.full((nb, 1), -np.inf)], axis=1)
    nb_vals = padded[:, np.where(nbr >= 0, nbr, npts)]
    slack = 1e-12 * np.maximum(1.0, np.abs(grid_vals))
    is_max = np.all(grid_vals[:, :, None] >= nb_vals - slack[:, :, None], axis=2)
    is_max[:, lat.vertices] = True

    owners, starts = [], []
    for b in range(nb):
        cand = np.flatnonzero(is_max[b])
        if len(cand) > MAX_CANDIDATES and k > 2:
            cand = cand[np.argsort(-grid_vals[b, cand])[:MAX_CANDIDATES]]
            cand = np.union1d(cand, lat.vertices)
        owners.append(np.full(len(cand), b))
        starts.append(cand)
    owners = np.concatenate(owners)
    starts = np.concatenate(starts)
    x, fx = _golden_refine(objective, pts[starts], owners, 1.0 / lat.grid)

    sets = []
    for b in range(nb):
        mine = owners == b
        xb, fb = x[mine], fx[mine]
        best = float(max(fb.max(), grid_vals[b].max()))
        floor = best - epsilon * scale(best)
        good = fb >= floor
        # lattice points inside the epsilon band are members too, so nearly
        # flat stretches of the objective show up as runs of members
        flat = grid_vals[b] >= floor
        xb, fb, kept = _merge_members(
            xb[good], fb[good], pts[flat], grid_vals[b, flat], 1.0 / lat.grid
        )
        samples = None
        if keep_samples:
            samples = (np.concatenate([pts, x[mine]]), np.concatenate([grid_vals[b], fx[mine]]))
        sets.append(ArgmaxSet(player, xb[kept], fb[kept], best, epsilon, samples))
    return sets


def best_response_blackbox(game, player, belief, grid=None, epsilon=DEFAULT_EPSILON,
                           keep_samples=False):
    """Mixtures of ``player`` that maximise the CPT value of the induced lottery.

    Parameters
    ----------
    game : Game
    player : int
    belief : Belief or array_like
        Distribution over opponent action profiles.
    grid : int, optional
        Lattice divisions per simplex edge (at least 10).
    epsilon : float
        Relative near-optimality tolerance.
    keep_samples : bool
        Keep the lattice samples, e.g. for :func:`envelope_from_samples`.
    """
    bel = belief.distribution if isinstance(belief, Belief) else belief
    return best_response_blackbox_many(
        game, player, [bel], grid, epsilon, keep_samples
    )[0]


@dataclass(frozen=True)
class ConcaveEnvelope:
    """Piecewise-linear least concave majorant on ``[0, 1]``."""

    xs: np.ndarray
    ys: np.ndarray

    def __call__(self, x):
        return np.interp(x, self.xs, self.ys)


def concave_envelope_1d(values):
    """Upper concave hull of sampled ``(point, value)`` pairs on ``[0, 1]``.

    The points must be sorted and include ``0`` and ``1``.  Queries between
    hull vertices interpolate linearly.
    """
    pts = np.asarray(values, dtype=float)
    if pts.ndim != 2 or len(pts) < 2:
        raise ValidationError("need at least two samples")
    x, y = pts[:, 0], pts[:, 1]
    if np.any(np.diff(x) < 0):
        raise ValidationError("sample points must be sorted")
    if x[0] != 0.0 or x[-1] != 1.0:
        raise ValidationError("samples must include the endpoints 0 and 1")
    hull = []
    for px, py in zip(x, y):
        # equal abscissae: only the highest value can be on the hull
        if hull and hull[-1][0] == px:
            if py <= hull[-1][1]:
                continue
            hull.pop()
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append((px, py))
    h = np.array(hull)
    return ConcaveEnvelope(h[:, 0], h[:, 1])


def envelope_from_samples(argmax):
    """Concave envelope in the weight on action 1 from an optimiser's samples."""
    if argmax.samples is None:
        raise ValueError("argmax set was computed without keep_samples=True")
    pts, vals = argmax.samples
    if pts.shape[1] != 2:
        raise ValueError("envelope needs a two-action player")
    order = np.argsort(pts[:, 1], kind="stable")
    return concave_envelope_1d(np.stack([pts[order, 1], vals[order]], axis=1))


def hull_distance(point, generators):
    """l-infinity distance from ``point`` to the convex hull of ``generators``."""
    g = np.atleast_2d(np.asarray(generators, dtype=float))
    x = np.asarray(point, dtype=float)
    if g.shape[1] == 2:
        lo, hi = g[:, 1].min(), g[:, 1].max()
        return float(max(lo - x[1], x[1] - hi, 0.0))
    n, k = g.shape
    # variables: lambda (n), t ; minimise t
    c = np.zeros(n + 1)
    c[-1] = 1.0
    a_ub = np.block([[g.T, -np.ones((k, 1))], [-g.T, -np.ones((k, 1))]])
    b_ub = np.concatenate([x, -x])
    a_eq = np.concatenate([np.ones(n), [0.0]])[None, :]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * (n + 1), method="highs")
    if not res.success:
        raise RuntimeError(f"hull distance LP failed: {res.message}")
    return float(max(res.fun, 0.0))


def hull_membership(mixture, argmax, tolerance=1e-4):
    """Whether ``mixture`` lies within ``tolerance`` (l-inf) of the hull of ``argmax``."""
    w = mixture.weights if isinstance(mixture, Mixture) else np.asarray(mixture, dtype=float)
    return hull_distance(w, argmax.points()) <= tolerance


def convex_decomposition(point, generators):
    """Weights ``lam >= 0`` summing to one with ``lam @ generators ~= point``.

    At most ``dim`` weights are nonzero (Caratheodory reduction).  Returns
    ``(lam, residual)`` where ``residual`` is the l-inf recombination error.
    """
    g = np.atleast_2d(np.asarray(generators, dtype=float))
    x = np.asarray(point, dtype=float)
    n, k = g.shape
    # l1 projection onto the hull: lambda, s_plus, s_minus
    c = np.concatenate([np.zeros(n), np.ones(2 * k)])
    a_eq = np.block([
        [g.T, np.eye(k), -np.eye(k)],
        [np.ones((1, n)), np.zeros((1, 2 * k))],
    ])
    b_eq = np.concatenate([x, [1.0]])
    res = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * (n + 2 * k),
                  method="highs-ds")
    if not res.success:
        raise RuntimeError(f"decomposition LP failed: {res.message}")
    lam = np.clip(res.x[:n], 0.0, None)
    lam /= lam.sum()
    lam = _caratheodory(lam, g)
    resid = float(np.max(np.abs(lam @ g - x)))
    return lam, resid


def _caratheodory(lam, g, tol=1e-14):
    lam = lam.copy()
    k = g.shape[1]
    while True:
        sup = np.flatnonzero(lam > tol)
        lam[lam <= tol] = 0.0
        if len(sup) <= k:
            break
        # affine dependence among supported generators
        mat = np.vstack([g[sup].T, np.ones(len(sup))])
        _, _, vt = np.linalg.svd(mat)
        alpha = vt[-1]
        if not np.any(alpha > tol):
            alpha = -alpha
        pos = alpha > tol
        theta = np.min(lam[sup][pos] / alpha[pos])
        lam[sup] = lam[sup] - theta * alpha
        lam[sup[pos][np.argmin(lam[sup][pos])]] = 0.0
    lam = np.clip(lam, 0.0, None)
    return lam / lam.sum()
