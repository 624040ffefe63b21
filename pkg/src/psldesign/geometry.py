"""Planar 1-center solvers for the per-element update subproblem.

Every solver takes a set of complex points and returns the center of a
covering circle. ``qp_circle``, ``subgradient_circle`` and ``oracle_circle``
are exact (to tolerance); ``rectangle_center`` and ``lex_midpoint`` are the
O(Q) heuristics used by the fast design loops; ``real_midpoint`` is exact
for collinear real inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

_SHUFFLE_SEED = 0x5EC1C  # fixed internal seed so the oracle is deterministic

QP_DELTA_DEFAULT = 1e-9
QP_MAX_OUTER = 100
SUBGRADIENT_MAX_ITER = 10000
SUBGRADIENT_STEP_TOL = 1e-12

# activity bands tried per subgradient step, tightest first
_ACTIVE_BANDS = (1e-10, 1e-8, 1e-6, 1e-4, 1e-2)


class PointSet:
    """Nonempty set of finite complex points."""

    __slots__ = ("points",)

    def __init__(self, points):
        arr = np.array(points, dtype=np.complex128).ravel()
        if arr.size == 0:
            raise ValueError("point set must be nonempty")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("points must be finite")
        arr.flags.writeable = False
        self.points = arr

    def __len__(self) -> int:
        return self.points.size


@dataclass(frozen=True)
class CircleSolution:
    center: complex
    radius: float
    iterations: int
    solver: str
    converged: bool = True


def _as_points(points) -> np.ndarray:
    if isinstance(points, PointSet):
        return points.points
    return PointSet(points).points


def _max_distance(center: complex, pts: np.ndarray) -> float:
    return float(np.abs(pts - center).max())


def rectangle_center(points) -> CircleSolution:
    """Center of the smallest axis-aligned bounding rectangle."""
    pts = _as_points(points)
    c = complex((pts.real.max() + pts.real.min()) / 2.0,
                (pts.imag.max() + pts.imag.min()) / 2.0)
    return CircleSolution(c, _max_distance(c, pts), 1, "rectangle")


def _lex_extremes(pts: np.ndarray) -> tuple[complex, complex]:
    order = np.lexsort((pts.real, pts.imag))
    return complex(pts[order[0]]), complex(pts[order[-1]])


def lex_midpoint(points) -> CircleSolution:
    """Midpoint of the dictionary-order extremes of the set."""
    pts = _as_points(points)
    lo, hi = _lex_extremes(pts)
    c = (lo + hi) / 2.0
    return CircleSolution(c, _max_distance(c, pts), 1, "lexmid")


def real_midpoint(points) -> CircleSolution:
    """Exact 1-center of a set of real points: midpoint of the extremes."""
    pts = _as_points(points)
    if np.any(pts.imag != 0.0):
        raise ValueError("real_midpoint requires purely real points")
    c = complex((pts.real.max() + pts.real.min()) / 2.0, 0.0)
    return CircleSolution(c, _max_distance(c, pts), 1, "realmid")


# ---------------------------------------------------------------------------
# Iterated quadratic programming


def _solve_center_qp(a, b, r2, x0r, x0i, max_pivots=200):
    """Active-set solve of: min xR^2 + xI^2 - z subject to
    -2 a_k xR - 2 b_k xI + z <= r2 - a_k^2 - b_k^2 for each point k.

    Returns (xR, xI, z, ok). The objective value at the optimum equals
    (max squared distance from the returned point) - r2.
    """
    m = a.size
    g_ab = np.column_stack([-2.0 * a, -2.0 * b])
    bvec = r2 - a * a - b * b
    p = np.array([x0r, x0i, 0.0])
    slack0 = bvec - g_ab[:, 0] * p[0] - g_ab[:, 1] * p[1]
    k0 = int(np.argmin(slack0))
    p[2] = slack0[k0]
    working = [k0]
    in_working = np.zeros(m, dtype=bool)
    in_working[k0] = True
    hess = np.diag([2.0, 2.0, 0.0])
    lin = np.array([0.0, 0.0, -1.0])
    scale = 1.0 + float(np.max(a * a + b * b)) + abs(r2)
    for _ in range(max_pivots):
        w = len(working)
        if w == 0:
            # objective decreases along +z until a constraint blocks
            slack = bvec - g_ab @ p[:2] - p[2]
            k = int(np.argmin(slack))
            p[2] += slack[k]
            working.append(k)
            in_working[k] = True
            continue
        gw = np.column_stack([g_ab[working], np.ones(w)])
        kkt = np.zeros((3 + w, 3 + w))
        kkt[:3, :3] = hess
        kkt[:3, 3:] = gw.T
        kkt[3:, :3] = gw
        rhs = np.concatenate([-lin, bvec[working]])
        try:
            sol = np.linalg.solve(kkt, rhs)
        except np.linalg.LinAlgError:
            sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
        p_eq = sol[:3]
        lam = sol[3:]
        step = p_eq - p
        if np.max(np.abs(step)) <= 1e-13 * scale:
            if np.all(lam >= -1e-10 * scale):
                return p[0], p[1], p[2], True
            dropped = working.pop(int(np.argmin(lam)))
            in_working[dropped] = False
            continue
        gd = g_ab @ step[:2] + step[2]
        slack = bvec - g_ab @ p[:2] - p[2]
        movable = (gd > 1e-13 * scale) & ~in_working
        alpha = 1.0
        blocker = -1
        if np.any(movable):
            ratios = np.where(movable, slack / np.where(movable, gd, 1.0), np.inf)
            k = int(np.argmin(ratios))
            if ratios[k] < alpha:
                alpha = float(ratios[k])
                blocker = k
        p = p + alpha * step
        if blocker >= 0:
            working.append(blocker)
            in_working[blocker] = True
    return p[0], p[1], p[2], False


def qp_circle(points, delta: float = QP_DELTA_DEFAULT,
              max_outer: int = QP_MAX_OUTER) -> CircleSolution:
    """Smallest enclosing circle by iterated quadratic programming.

    Starts from the dictionary-order midpoint, solves the linearly
    constrained quadratic subproblem at the current radius guess, and
    repeats until the subproblem optimum is within ``delta`` of zero.
    """
    pts = _as_points(points)
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    uniq = np.unique(pts)
    a = uniq.real.copy()
    b = uniq.imag.copy()
    lo, hi = _lex_extremes(uniq)
    x = (lo + hi) / 2.0
    xr, xi = x.real, x.imag
    converged = False
    outer = 0
    for outer in range(1, max_outer + 1):
        r = np.sqrt(np.max((xr - a) ** 2 + (xi - b) ** 2))
        xr, xi, z, ok = _solve_center_qp(a, b, r * r, xr, xi)
        if ok and abs(xr * xr + xi * xi - z) < delta:
            converged = True
            break
    center = complex(xr, xi)
    return CircleSolution(center, _max_distance(center, pts), outer, "qp", converged)


# ---------------------------------------------------------------------------
# Subgradient descent


def _min_norm_hull_point(g: np.ndarray) -> complex:
    """Minimum-norm element of the convex hull of unit vectors ``g``.

    Returns 0 when the hull contains the origin (largest angular gap at
    most pi). Otherwise the minimizer lies on a vertex or an edge.
    """
    if g.size == 1:
        return complex(g[0])
    ang = np.sort(np.angle(g))
    gaps = np.diff(ang, append=ang[0] + 2.0 * np.pi)
    if gaps.max() <= np.pi + 1e-12:
        return 0j
    best = complex(g[0])
    best_norm = abs(best)
    m = g.size
    for i in range(m):
        gi = g[i]
        if abs(gi) < best_norm:
            best_norm = abs(gi)
            best = complex(gi)
        for j in range(i + 1, m):
            d = g[j] - gi
            dd = d.real * d.real + d.imag * d.imag
            if dd == 0.0:
                continue
            t = -(gi.real * d.real + gi.imag * d.imag) / dd
            t = min(1.0, max(0.0, t))
            p = gi + t * d
            if abs(p) < best_norm:
                best_norm = abs(p)
                best = complex(p)
    return best


def subgradient_circle(points, step_tolerance: float = SUBGRADIENT_STEP_TOL,
                       max_iterations: int = SUBGRADIENT_MAX_ITER) -> CircleSolution:
    """Smallest enclosing circle by subgradient descent with line search.

    At each iterate the active points (within a relative band of the
    current max distance) define the subdifferential generators; the
    search direction is the negated minimum-norm element of their convex
    hull. A ladder of activity bands is evaluated and the step with the
    best objective wins; this keeps the support identified when distances
    nearly tie. Terminates once steps fall below ``step_tolerance``.
    """
    pts = _as_points(points)
    if pts.size == 1:
        return CircleSolution(complex(pts[0]), 0.0, 0, "subgradient")
    lo, hi = _lex_extremes(pts)
    x = (lo + hi) / 2.0
    converged = False
    it = 0
    for it in range(1, max_iterations + 1):
        diff = x - pts
        dist = np.abs(diff)
        f = dist.max()
        if f == 0.0:
            converged = True
            break
        zero_in_hull = False
        best_f = f
        best_x = None
        best_t = 0.0
        seen = -1
        for band in _ACTIVE_BANDS:
            active = dist >= (1.0 - band) * f
            count = int(active.sum())
            if count == seen:
                continue
            seen = count
            g = diff[active] / dist[active]
            if count == 1:
                direction = -complex(g[0])
            else:
                mn = _min_norm_hull_point(g)
                if abs(mn) <= 1e-12:
                    if band <= 1e-8:
                        zero_in_hull = True
                    continue
                direction = -mn / abs(mn)
            t = f
            while t >= step_tolerance:
                cand = x + t * direction
                fc = np.abs(cand - pts).max()
                if fc < f:
                    if fc < best_f:
                        best_f = fc
                        best_x = cand
                        best_t = t
                    break
                t /= 2.0
        if best_x is None or (zero_in_hull and best_f >= f * (1.0 - 1e-13)):
            converged = True
            break
        x = best_x
        if best_t < 10.0 * step_tolerance:
            converged = True
            break
    return CircleSolution(complex(x), _max_distance(x, pts), it, "subgradient", converged)


# ---------------------------------------------------------------------------
# Exact combinatorial oracle (randomized incremental construction)


def _circumcircle(ax, ay, bx, by, cx, cy):
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(np.hypot(ux - ax, uy - ay), np.hypot(ux - bx, uy - by),
            np.hypot(ux - cx, uy - cy))
    return ux, uy, r


def _covers(circle, x, y) -> bool:
    return (circle is not None
            and np.hypot(x - circle[0], y - circle[1])
            <= circle[2] * (1.0 + 1e-14) + 1e-14)


def oracle_circle(points) -> CircleSolution:
    """Exact minimal enclosing circle.

    Incremental construction over a deterministically shuffled copy of the
    points; the optimum is pinned by at most three boundary points.
    """
    pts = _as_points(points)
    coords = [(float(p.real), float(p.imag)) for p in pts]
    random.Random(_SHUFFLE_SEED).shuffle(coords)
    circle = None
    for i, (px, py) in enumerate(coords):
        if _covers(circle, px, py):
            continue
        circle = (px, py, 0.0)
        for j, (qx, qy) in enumerate(coords[:i]):
            if _covers(circle, qx, qy):
                continue
            circle = ((px + qx) / 2.0, (py + qy) / 2.0,
                      np.hypot(px - qx, py - qy) / 2.0)
            for rx, ry in coords[:j]:
                if _covers(circle, rx, ry):
                    continue
                cc = _circumcircle(px, py, qx, qy, rx, ry)
                if cc is not None:
                    circle = cc
    center = complex(circle[0], circle[1])
    return CircleSolution(center, _max_distance(center, pts), 1, "oracle")
