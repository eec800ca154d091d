import math

import numpy as np
import pytest

from escape_ratio.geometry import MetricContext, PursuerModel, validate_polygon

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
RECT_1x10 = [(0, 0), (10, 0), (10, 1), (0, 1)]
TRIANGLE = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]
COMB = [(0, 0), (6, 0), (6, 4), (4, 4), (4, 2), (2, 2), (2, 4), (0, 4)]


@pytest.fixture(scope="session")
def square():
    return validate_polygon(SQUARE)


@pytest.fixture(scope="session")
def square_moat(square):
    return MetricContext(square, PursuerModel.MOAT)


@pytest.fixture(scope="session")
def square_exterior(square):
    return MetricContext(square, PursuerModel.EXTERIOR)


@pytest.fixture(scope="session")
def l_shape():
    return validate_polygon(L_SHAPE)


@pytest.fixture(scope="session")
def l_moat(l_shape):
    return MetricContext(l_shape, PursuerModel.MOAT)


@pytest.fixture(scope="session")
def triangle_moat():
    return MetricContext(validate_polygon(TRIANGLE), PursuerModel.MOAT)


def random_convex_polygon(rng, n):
    """Valtr's construction: convex polygon with exactly n vertices."""
    while True:
        xs = np.sort(rng.random(n))
        ys = np.sort(rng.random(n))

        def deltas(vals):
            lo, hi = vals[0], vals[-1]
            mid = vals[1:-1]
            side = rng.random(len(mid)) < 0.5
            a = np.concatenate([[lo], mid[side], [hi]])
            b = np.concatenate([[lo], mid[~side], [hi]])
            return np.concatenate([np.diff(a), -np.diff(b)])

        dx = deltas(xs)
        dy = rng.permutation(deltas(ys))
        vec = np.column_stack([dx, dy])
        ang = np.arctan2(vec[:, 1], vec[:, 0])
        pts = np.cumsum(vec[np.argsort(ang)], axis=0)
        try:
            poly = validate_polygon(pts)
        except Exception:
            continue
        if poly.is_convex and poly.n == n:
            return poly


def random_point_inside(rng, poly):
    lo, hi = poly.bbox
    while True:
        p = lo + rng.random(2) * (hi - lo)
        if poly.classify(p) == "inside":
            return p


def minimax_escaper_wins(game, h0, z0, depth=None):
    """Exhaustive memoized minimax on the raw game rules (solver oracle).

    Depth |EscaperTurn states| + 1 suffices: a forced win never needs to
    revisit a state.
    """
    nh, nz = game.n_h, game.n_z
    if depth is None:
        depth = nh * nz + 1
    eh = game.e_h.toarray()
    ez = game.e_z
    exits_h = game.samples.exit_idx_h
    exits_z = game.samples.exit_idx_z
    memo = {}

    def predicate(h_threat, z):
        return bool(np.any(eh[h_threat, exits_h] & ~ez[z, exits_z]))

    def esc_win(h, z, d):
        if d == 0:
            return False
        key = (h, z, d)
        if key in memo:
            return memo[key]
        result = False
        for h2 in np.nonzero(eh[h])[0]:
            pursuer_survives = False
            for z2 in np.nonzero(ez[z])[0]:
                if predicate(h, z2):
                    continue
                if not esc_win(h2, z2, d - 1):
                    pursuer_survives = True
                    break
            if not pursuer_survives:
                result = True
                break
        memo[key] = result
        return result

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * depth + 100))
    try:
        return esc_win(h0, z0, depth)
    finally:
        sys.setrecursionlimit(old)
