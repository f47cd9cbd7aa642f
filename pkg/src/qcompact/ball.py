"""Minimal enclosing balls (Chebyshev centers) in R^N with support certificates.

Exact combinatorial computation in the style of Welzl's randomized-incremental
recursion: the minimal ball is determined by at most N+1 boundary points, and
the recursion maintains that boundary set explicitly.  The processing order is
a fixed-seed shuffle of the lexicographically sorted unique points, so results
do not depend on the order the caller supplies.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import nnls

from .errors import InternalConsistencyError

__all__ = ["BallCertificate", "chebyshev_center", "jung_ratio", "JungCheck", "jung_check"]

MAX_DIM = 16

#: multiplicative slack in the squared-radius membership test
_INSIDE_REL = 3e-13

#: residual budget for the convex-hull certificate of the center
HULL_TOL = 1e-9

_SHUFFLE_SEED = 0x5EB


@dataclass(frozen=True)
class BallCertificate:
    """Smallest ball enclosing the input points.

    ``support`` indexes at most N+1 input points lying on the boundary sphere
    whose convex hull contains the center (certified by a nonnegative
    least-squares combination with residual at most 1e-9).
    """

    center: np.ndarray
    radius: float
    support: tuple[int, ...]
    hull_residual: float


def _circumball(boundary: list[np.ndarray]):
    """Smallest ball with all boundary points on its sphere (center in their
    affine hull); None encodes the empty ball."""
    if not boundary:
        return None
    b0 = boundary[0]
    if len(boundary) == 1:
        return b0, 0.0
    v = np.stack(boundary[1:]) - b0
    gram = 2.0 * (v @ v.T)
    rhs = (v * v).sum(axis=1)
    try:
        x = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        x, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    center = b0 + x @ v
    r2 = float(((center - b0) ** 2).sum())
    return center, r2


def _inside(ball, p) -> bool:
    if ball is None:
        return False
    c, r2 = ball
    d2 = float(((p - c) ** 2).sum())
    return d2 <= r2 * (1.0 + _INSIDE_REL) + 1e-30


def _welzl(pts: np.ndarray, i: int, boundary: list[np.ndarray], dim: int):
    if i == len(pts) or len(boundary) == dim + 1:
        return _circumball(boundary)
    ball = _welzl(pts, i + 1, boundary, dim)
    p = pts[i]
    if _inside(ball, p):
        return ball
    return _welzl(pts, i + 1, boundary + [p], dim)


def _support_certificate(points: np.ndarray, center: np.ndarray, radius: float):
    """Pick <= N+1 boundary points whose convex hull provably holds the center."""
    dists = np.sqrt(((points - center) ** 2).sum(axis=1))
    scale = max(1.0, radius)
    tol = 1e-7 * scale
    for _ in range(3):
        cand = np.nonzero(dists >= radius - tol)[0]
        a = np.vstack([points[cand].T, np.ones(cand.size) * scale])
        b = np.concatenate([center, [scale]])
        weights, resid = nnls(a, b)
        if resid <= HULL_TOL * scale:
            chosen = cand[weights > 1e-12]
            return tuple(int(i) for i in chosen), float(resid)
        tol *= 100.0
    raise InternalConsistencyError(
        f"could not certify the center inside its support hull (residual {resid!r})"
    )


def chebyshev_center(points) -> BallCertificate:
    """Center and radius of the smallest ball enclosing ``points`` in R^N.

    Accepts an (n, N) array (or a list of vectors), N <= 16.  Exact duplicate
    rows are removed before processing; the support certificate indexes the
    original input rows.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("need a nonempty (n, N) point array")
    if not np.isfinite(pts).all():
        raise ValueError("points must be finite")
    n, dim = pts.shape
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} exceeds the supported maximum {MAX_DIM}")

    uniq, first_idx = np.unique(pts, axis=0, return_index=True)

    if dim == 1:
        lo, hi = float(uniq[0, 0]), float(uniq[-1, 0])
        center = np.array([(lo + hi) / 2.0])
        radius = (hi - lo) / 2.0
        support = (int(first_idx[0]),) if uniq.shape[0] == 1 else (
            int(first_idx[0]),
            int(first_idx[-1]),
        )
        return BallCertificate(center=center, radius=radius, support=tuple(sorted(support)), hull_residual=0.0)

    order = np.random.default_rng(_SHUFFLE_SEED).permutation(uniq.shape[0])
    work = uniq[order]
    if work.shape[0] > 200:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * work.shape[0] + 1000))
    ball = _welzl(work, 0, [], dim)
    center, r2 = ball
    radius = math.sqrt(max(r2, 0.0))

    dmax = float(np.sqrt(((pts - center) ** 2).sum(axis=1)).max())
    if dmax > radius + HULL_TOL:
        raise InternalConsistencyError(
            f"computed ball misses a point by {dmax - radius!r}"
        )

    sup_uniq, resid = _support_certificate(uniq, center, radius)
    support = tuple(sorted(int(first_idx[i]) for i in sup_uniq))
    return BallCertificate(center=center, radius=radius, support=support, hull_residual=resid)


def jung_ratio(dim: int) -> float:
    """sqrt(N / (2N + 2)): the sharp radius/diameter ratio in R^N."""
    return math.sqrt(dim / (2.0 * dim + 2.0))


@dataclass(frozen=True)
class JungCheck:
    diameter: float
    radius: float
    lower: float
    upper: float
    ok: bool
    ball: BallCertificate
    diameter_pair: tuple[int, int]


def jung_check(points, tol: float = 1e-9) -> JungCheck:
    """Check diam/2 <= radius <= sqrt(N/(2N+2)) * diam on a point set.

    A violation (ok=False) would indicate a bug in the ball computation, so
    callers should treat it as a hard failure; the witness data is returned
    either way.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n, dim = pts.shape
    diff = pts[:, None, :] - pts[None, :, :]
    dmat = np.sqrt((diff * diff).sum(axis=2))
    pair = np.unravel_index(int(np.argmax(dmat)), dmat.shape)
    diameter = float(dmat[pair])
    cert = chebyshev_center(pts)
    lower = diameter / 2.0
    upper = jung_ratio(dim) * diameter
    ok = (lower - tol <= cert.radius) and (cert.radius <= upper + tol)
    return JungCheck(
        diameter=diameter,
        radius=cert.radius,
        lower=lower,
        upper=upper,
        ok=ok,
        ball=cert,
        diameter_pair=(int(pair[0]), int(pair[1])),
    )
