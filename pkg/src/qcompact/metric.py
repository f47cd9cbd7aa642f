"""Finite metric spaces, index subsets, open balls, and closed inflation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = ["FiniteMetricSpace", "IndexSet", "inflate", "open_ball"]

#: relative tolerance for agreement between a supplied distance matrix and the
#: matrix recomputed from Euclidean coordinates
COORD_MATCH_RTOL = 1e-12

#: absolute slack allowed in the triangle-inequality scan (float dust from
#: matrices that were themselves computed in floating point)
TRIANGLE_SLACK = 1e-9


def _euclidean_matrix(coords: np.ndarray) -> np.ndarray:
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.sqrt((diff * diff).sum(axis=2))
    # exact zeros on the diagonal, exact symmetry
    np.fill_diagonal(d, 0.0)
    return np.minimum(d, d.T)


class FiniteMetricSpace:
    """A finite point set with an explicit symmetric distance matrix.

    The matrix is validated on construction: zero diagonal, symmetry,
    nonnegativity, and (unless ``validate_triangle=False``) the triangle
    inequality over every triple, an O(n^3) scan.  When Euclidean coordinates
    are supplied the matrix must agree with them to 1e-12 relative tolerance.
    Instances are immutable; the arrays are write-protected.
    """

    __slots__ = ("points", "dist", "coords")

    def __init__(self, dist=None, *, coords=None, points=None, validate_triangle=True):
        if dist is None and coords is None:
            raise ValueError("FiniteMetricSpace needs a distance matrix or coordinates")
        if coords is not None:
            coords = np.asarray(coords, dtype=float)
            if coords.ndim == 1:
                coords = coords[:, None]
            if coords.ndim != 2 or coords.shape[0] == 0:
                raise ValueError("coords must be a nonempty 2-d array of shape (n, N)")
            if not np.isfinite(coords).all():
                raise ValueError("coords must be finite")
            computed = _euclidean_matrix(coords)
            if dist is None:
                dist = computed
            else:
                dist = np.asarray(dist, dtype=float)
                scale = max(1.0, float(computed.max(initial=0.0)))
                if dist.shape != computed.shape or np.abs(dist - computed).max() > COORD_MATCH_RTOL * scale:
                    raise ValueError("dist does not match the Euclidean distances of coords")
        dist = np.array(dist, dtype=float)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1] or dist.shape[0] == 0:
            raise ValueError("dist must be a nonempty square matrix")
        n = dist.shape[0]
        if not np.isfinite(dist).all():
            raise ValueError("dist must be finite")
        if (np.diag(dist) != 0.0).any():
            raise ValueError("dist must have a zero diagonal")
        if not np.array_equal(dist, dist.T):
            if np.abs(dist - dist.T).max() > 0.0:
                raise ValueError("dist must be symmetric")
        if (dist < 0.0).any():
            raise ValueError("dist must be nonnegative")
        if validate_triangle:
            tol = TRIANGLE_SLACK * max(1.0, float(dist.max()))
            for k in range(n):
                bound = dist[:, k:k + 1] + dist[k:k + 1, :]
                if (dist > bound + tol).any():
                    i, j = np.unravel_index(int(np.argmax(dist - bound)), dist.shape)
                    raise ValueError(
                        f"triangle inequality violated: d({i},{j})={dist[i, j]!r} > "
                        f"d({i},{k})+d({k},{j})={bound[i, j]!r}"
                    )
        if points is None:
            points = list(range(n))
        else:
            points = list(points)
            if len(points) != n:
                raise ValueError("points labels must match the matrix size")
        dist.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "dist", dist)
        if coords is not None:
            if coords.shape[0] != n:
                raise ValueError("coords must have one row per point")
            coords = coords.copy()
            coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteMetricSpace is immutable")

    @property
    def n_points(self) -> int:
        return self.dist.shape[0]

    def diameter(self) -> float:
        return float(self.dist.max())

    def positive_distances(self) -> np.ndarray:
        """Sorted unique positive entries of the distance matrix."""
        iu = np.triu_indices(self.n_points, k=1)
        vals = self.dist[iu]
        return np.unique(vals[vals > 0.0])

    def same_as(self, other: "FiniteMetricSpace", atol: float = 1e-12) -> bool:
        if self is other:
            return True
        if self.n_points != other.n_points:
            return False
        return bool(np.abs(self.dist - other.dist).max(initial=0.0) <= atol)

    def __repr__(self):
        return f"FiniteMetricSpace(n_points={self.n_points})"

    @classmethod
    def from_dict(cls, obj: dict, *, validate_triangle: bool = True) -> "FiniteMetricSpace":
        """Build a space from a JSON-style dict with ``coords`` or ``dist``."""
        if not isinstance(obj, dict):
            raise ValueError("space must be a JSON object")
        unknown = set(obj) - {"coords", "dist"}
        if unknown:
            raise ValueError(f"space: unknown field {sorted(unknown)[0]!r}")
        if "coords" not in obj and "dist" not in obj:
            raise ValueError("space: need 'coords' or 'dist'")
        return cls(
            obj.get("dist"),
            coords=obj.get("coords"),
            validate_triangle=validate_triangle,
        )

    def to_dict(self) -> dict:
        if self.coords is not None:
            return {"coords": self.coords.tolist()}
        return {"dist": self.dist.tolist()}


@dataclass(frozen=True)
class IndexSet:
    """A sorted, duplicate-free tuple of 0-based point indices."""

    members: tuple[int, ...] = ()

    def __post_init__(self):
        cleaned = tuple(sorted({int(i) for i in self.members}))
        if any(i < 0 for i in cleaned):
            raise ValueError("indices must be nonnegative")
        object.__setattr__(self, "members", cleaned)

    @classmethod
    def of(cls, items: Iterable[int]) -> "IndexSet":
        return cls(tuple(items))

    def to_array(self) -> np.ndarray:
        return np.array(self.members, dtype=int)

    def validate_for(self, space: FiniteMetricSpace) -> None:
        if self.members and self.members[-1] >= space.n_points:
            raise ValueError(
                f"index {self.members[-1]} out of range for a {space.n_points}-point space"
            )

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, i):
        return i in self.members


def inflate(space: FiniteMetricSpace, subset: IndexSet, eps: float) -> IndexSet:
    """Closed inflation: all points within distance ``eps`` of ``subset``.

    Uses a closed threshold (distance <= eps).  The empty set inflates to the
    empty set for any eps >= 0.
    """
    eps = float(eps)
    if eps < 0.0:
        raise ValueError("inflation radius must be >= 0")
    subset.validate_for(space)
    idx = subset.to_array()
    if idx.size == 0:
        return IndexSet(())
    mind = space.dist[idx].min(axis=0)
    return IndexSet(tuple(np.nonzero(mind <= eps)[0].tolist()))


def open_ball(space: FiniteMetricSpace, center: int, eps: float) -> IndexSet:
    """Open ball: all points at distance strictly less than ``eps`` from ``center``."""
    eps = float(eps)
    if eps <= 0.0:
        raise ValueError("open ball radius must be > 0")
    center = int(center)
    if not 0 <= center < space.n_points:
        raise ValueError(f"center {center} out of range")
    return IndexSet(tuple(np.nonzero(space.dist[center] < eps)[0].tolist()))
