"""Finitely supported path laws: empirical tightness defects, the Prokhorov
distance between path ensembles, and the end-to-end compactness certificate.

A ``PathEnsemble`` is a probability measure on finitely many PL paths.  The
two defect estimators report how much mass escapes a norm ball
(``mu_sub_hat``) or oscillates beyond a window/threshold pair
(``mu_suec_hat``).  ``verify_qsaa`` trims each ensemble at the estimated
levels, pushes the trimmed mass onto a finite interpolation net of paths, and
certifies that the resulting net of *measures* covers every ensemble in
lam-Prokhorov distance within an itemized slack budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .cover import covering_radius
from .errors import InternalConsistencyError
from .metric import FiniteMetricSpace
from .paths import AANet, PLPath, aa_net, modulus, uniform_distance
from .prokhorov import DiscreteMeasure, prokhorov_distance

__all__ = [
    "PathEnsemble",
    "MuSubResult",
    "mu_sub_hat",
    "MuSuecResult",
    "mu_suec_hat",
    "path_metric_space",
    "path_prokhorov",
    "sample_walks",
    "QSAAReport",
    "verify_qsaa",
]

CERT_TOL = 1e-9


class PathEnsemble:
    """A probability measure on finitely many PL paths of a common dimension.

    Weights are validated nonnegative, must total 1 within 1e-12, and are
    then renormalized exactly.  Immutable.
    """

    __slots__ = ("paths", "weights")

    def __init__(self, paths: Sequence[PLPath], weights=None):
        paths = tuple(paths)
        if not paths:
            raise ValueError("ensemble must contain at least one path")
        n_dim = paths[0].n_dim
        for i, x in enumerate(paths):
            if not isinstance(x, PLPath):
                raise TypeError(f"entry {i} is not a PLPath")
            if x.n_dim != n_dim:
                raise ValueError(f"path {i} has dimension {x.n_dim}, expected {n_dim}")
        if weights is None:
            weights = np.full(len(paths), 1.0 / len(paths))
        else:
            weights = np.array(weights, dtype=float)
        if weights.shape != (len(paths),):
            raise ValueError("need one weight per path")
        if not np.isfinite(weights).all():
            raise ValueError("weights must be finite")
        if weights.min(initial=0.0) < -1e-12:
            raise ValueError("weights must be nonnegative")
        weights = np.maximum(weights, 0.0)
        total = float(weights.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, not 1")
        weights = weights / total
        weights.setflags(write=False)
        object.__setattr__(self, "paths", paths)
        object.__setattr__(self, "weights", weights)

    def __setattr__(self, name, value):
        raise AttributeError("PathEnsemble is immutable")

    @property
    def n_paths(self) -> int:
        return len(self.paths)

    @property
    def n_dim(self) -> int:
        return self.paths[0].n_dim

    @classmethod
    def from_dict(cls, obj: dict) -> "PathEnsemble":
        if not isinstance(obj, dict):
            raise ValueError("ensemble must be a JSON object")
        unknown = set(obj) - {"paths", "weights"}
        if unknown:
            raise ValueError(f"ensemble: unknown field {sorted(unknown)[0]!r}")
        if "paths" not in obj:
            raise ValueError("ensemble: need 'paths'")
        paths = [PLPath.from_dict(p) for p in obj["paths"]]
        return cls(paths, obj.get("weights"))

    def to_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "paths": [p.to_dict() for p in self.paths],
        }

    def __repr__(self):
        return f"PathEnsemble(n_paths={self.n_paths}, n_dim={self.n_dim})"


def _require_common_dim(ensembles: Sequence[PathEnsemble]) -> int:
    if not ensembles:
        raise ValueError("need at least one ensemble")
    n_dim = ensembles[0].n_dim
    for i, e in enumerate(ensembles):
        if e.n_dim != n_dim:
            raise ValueError(f"ensemble {i} has dimension {e.n_dim}, expected {n_dim}")
    return n_dim


# ---------------------------------------------------------------------------
# empirical defect estimators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MuSubResult:
    """Tail-mass defect sup over ensembles of P(|path| > M), tabulated on a
    norm grid augmented with the empirical maximum norm (so the minimal
    defect over the grid is exactly 0)."""

    m_grid: tuple[float, ...]
    defects: tuple[float, ...]
    value: float
    m_star: float


def mu_sub_hat(ensembles: Sequence[PathEnsemble], m_grid) -> MuSubResult:
    _require_common_dim(ensembles)
    m_grid = sorted({float(m) for m in m_grid})
    if not m_grid or any(m <= 0.0 for m in m_grid):
        raise ValueError("norm levels must be positive")
    max_norm = max(x.sup_norm for e in ensembles for x in e.paths)
    if max_norm not in m_grid:
        m_grid.append(max_norm)
        m_grid.sort()
    norms = [np.array([x.sup_norm for x in e.paths]) for e in ensembles]
    defects = []
    for m in m_grid:
        worst = max(float(e.weights[n > m].sum()) for e, n in zip(ensembles, norms))
        defects.append(worst)
    value = min(defects)
    m_star = next(m for m, d in zip(m_grid, defects) if d == value)
    return MuSubResult(
        m_grid=tuple(m_grid), defects=tuple(defects), value=value, m_star=m_star
    )


@dataclass(frozen=True)
class MuSuecResult:
    """Oscillation defect sup over ensembles of P(osc(path, delta) >= eps),
    tabulated over an (eps, delta) grid.  ``value`` is the worst-over-eps of
    the best-over-delta entry; (eps_star, delta_star) realize it."""

    eps_grid: tuple[float, ...]
    delta_grid: tuple[float, ...]
    table: tuple[tuple[float, ...], ...]
    value: float
    eps_star: float
    delta_star: float


def mu_suec_hat(ensembles: Sequence[PathEnsemble], eps_grid, delta_grid) -> MuSuecResult:
    _require_common_dim(ensembles)
    eps_grid = sorted({float(e) for e in eps_grid})
    delta_grid = sorted({float(d) for d in delta_grid})
    if not eps_grid or any(e <= 0.0 for e in eps_grid):
        raise ValueError("eps_grid must be nonempty and positive")
    if not delta_grid or any(d <= 0.0 for d in delta_grid):
        raise ValueError("delta_grid must be nonempty and positive")
    osc = [
        np.array([[modulus(x, d) for d in delta_grid] for x in e.paths])
        for e in ensembles
    ]
    table = []
    for i, eps in enumerate(eps_grid):
        row = []
        for j, _ in enumerate(delta_grid):
            worst = max(
                float(e.weights[o[:, j] >= eps].sum()) for e, o in zip(ensembles, osc)
            )
            row.append(worst)
        table.append(tuple(row))
    best_per_eps = [min(row) for row in table]
    value = max(best_per_eps)
    i_star = next(i for i, v in enumerate(best_per_eps) if v == value)
    j_star = next(j for j, v in enumerate(table[i_star]) if v == value)
    return MuSuecResult(
        eps_grid=tuple(eps_grid),
        delta_grid=tuple(delta_grid),
        table=tuple(table),
        value=value,
        eps_star=eps_grid[i_star],
        delta_star=delta_grid[j_star],
    )


# ---------------------------------------------------------------------------
# the Prokhorov distance between path ensembles
# ---------------------------------------------------------------------------


def _dedupe(paths: Sequence[PLPath]) -> tuple[list[PLPath], list[int]]:
    """Unique paths (by exact knot/value equality) and the index of each
    input path in the deduplicated list."""
    seen: dict[bytes, int] = {}
    unique: list[PLPath] = []
    where = []
    for x in paths:
        key = x.knots.tobytes() + b"|" + x.values.tobytes()
        if key not in seen:
            seen[key] = len(unique)
            unique.append(x)
        where.append(seen[key])
    return unique, where


def path_metric_space(paths: Sequence[PLPath]) -> FiniteMetricSpace:
    """Metric space of the given paths under the uniform norm.

    All pairwise distances are evaluated exactly on the union of every
    path's knots, which dominates each pair's merged knot set.
    """
    paths = list(paths)
    if not paths:
        raise ValueError("need at least one path")
    times = paths[0].knots
    for x in paths[1:]:
        times = np.union1d(times, x.knots)
    vals = np.stack([x.at(times) for x in paths])  # (n, T, N)
    n = len(paths)
    dist = np.zeros((n, n))
    for i in range(n):
        diff = vals[i + 1 :] - vals[i]
        if diff.size:
            dist[i, i + 1 :] = np.sqrt((diff * diff).sum(axis=2)).max(axis=1)
    dist = dist + dist.T
    return FiniteMetricSpace(dist, validate_triangle=False)


def _ensemble_measure(space: FiniteMetricSpace, where: Sequence[int],
                      ensemble: PathEnsemble, offset: int) -> DiscreteMeasure:
    mass = np.zeros(space.n_points)
    for i, w in enumerate(ensemble.weights):
        mass[where[offset + i]] += w
    return DiscreteMeasure(space, mass)


def path_prokhorov(
    ens_p: PathEnsemble, ens_q: PathEnsemble, lam: float
) -> float:
    """lam-Prokhorov distance between two path ensembles, exactly, on the
    deduplicated union of their supports."""
    if ens_p.n_dim != ens_q.n_dim:
        raise ValueError("ensembles have different path dimensions")
    unique, where = _dedupe(list(ens_p.paths) + list(ens_q.paths))
    space = path_metric_space(unique)
    P = _ensemble_measure(space, where, ens_p, 0)
    Q = _ensemble_measure(space, where, ens_q, ens_p.n_paths)
    return prokhorov_distance(P, Q, lam).alpha_star


# ---------------------------------------------------------------------------
# random-walk sampler
# ---------------------------------------------------------------------------


def sample_walks(
    n_steps: int, n_paths: int, scale: float = 1.0, seed: Optional[int] = None
) -> PathEnsemble:
    """Uniform ensemble of simple +/- walks: knots k/n_steps, i.i.d. signed
    steps of size scale/sqrt(n_steps), started at 0."""
    if n_steps < 1 or n_paths < 1:
        raise ValueError("n_steps and n_paths must be >= 1")
    if seed is None:
        raise ValueError("a seed is required for reproducible sampling")
    rng = np.random.default_rng(seed)
    signs = rng.integers(0, 2, size=(n_paths, n_steps)) * 2 - 1
    steps = signs * (float(scale) / math.sqrt(n_steps))
    values = np.concatenate(
        [np.zeros((n_paths, 1)), np.cumsum(steps, axis=1)], axis=1
    )
    knots = np.arange(n_steps + 1) / n_steps
    paths = [PLPath(knots, values[i][:, None]) for i in range(n_paths)]
    return PathEnsemble(paths)


# ---------------------------------------------------------------------------
# end-to-end certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSAALambdaRow:
    lam: float
    covering: float
    guaranteed: float
    slack_tail: float
    slack_osc: float
    slack_net: float
    slack_eps: float
    ok: bool


@dataclass(frozen=True)
class QSAAReport:
    n_ensembles: int
    n_dim: int
    eps: float
    tail: MuSubResult
    osc: MuSuecResult
    n_unique_paths: int
    n_kept: int
    n_discarded: int
    alpha_kept: float
    net_members: int
    net_radius: float
    net_certified: float
    lambda_rows: tuple[QSAALambdaRow, ...]
    lower_defect: float
    lower_sup_covering: float
    lower_ok: bool
    status: str


def verify_qsaa(
    ensembles: Sequence[PathEnsemble],
    lambda_grid,
    eps_grid,
    delta_grid,
    m_grid,
    eps: float,
) -> QSAAReport:
    """Certify a finite net of path laws covering every ensemble.

    Pipeline: estimate the tail defect ``a`` at the best norm level M* and
    the oscillation defect ``b`` at (eps*, delta*); keep the unique paths
    with norm <= M* and oscillation < eps*; build an interpolation net of
    the kept paths at pitch eps/2 and read off its radius r; push each
    ensemble onto the net members (kept paths to their own member, discarded
    paths to the nearest member) to obtain candidate laws.

    For every lam the covering radius of the ensembles against the candidate
    laws is computed exactly and checked against the guarantee
    a + b + r/lam + eps, every slack itemized; a violation there contradicts
    the coupling argument and yields status "failed".  The converse check
    max(a, b) <= sup_lam covering + eps has no finite-sample guarantee; when
    it fails the status is "inconclusive".
    """
    n_dim = _require_common_dim(ensembles)
    eps = float(eps)
    if eps <= 0.0:
        raise ValueError("eps must be > 0")
    lambda_grid = sorted({float(l) for l in lambda_grid})
    if not lambda_grid or any(l <= 0.0 for l in lambda_grid):
        raise ValueError("lambda_grid must be nonempty and positive")

    tail = mu_sub_hat(ensembles, m_grid)
    osc = mu_suec_hat(ensembles, eps_grid, delta_grid)
    a, b = tail.value, osc.value
    m_star, eps_star, delta_star = tail.m_star, osc.eps_star, osc.delta_star

    all_paths = [x for e in ensembles for x in e.paths]
    unique, where = _dedupe(all_paths)
    kept_pos: dict[int, int] = {}
    kept: list[PLPath] = []
    for u, x in enumerate(unique):
        if x.sup_norm <= m_star and modulus(x, delta_star) < eps_star:
            kept_pos[u] = len(kept)
            kept.append(x)
    if not kept:
        raise ValueError(
            "trimming discarded every path; enlarge the norm or oscillation grids"
        )
    alpha_kept = max(modulus(x, delta_star) for x in kept)
    net = aa_net(kept, delta_star, alpha_kept, max(m_star, 1e-9), eps / 2.0)
    r_net = net.covering_achieved

    # nearest member for every unique path (identity member for kept ones)
    member_of = np.empty(len(unique), dtype=int)
    for u, x in enumerate(unique):
        if u in kept_pos:
            member_of[u] = net.per_sample[kept_pos[u]].member_index
        else:
            dists = [uniform_distance(x, m) for m in net.members]
            member_of[u] = int(np.argmin(dists))

    space_paths = unique + list(net.members)
    space = path_metric_space(space_paths)
    member_index = [len(unique) + j for j in range(len(net.members))]

    candidates = []
    offset = 0
    ens_measures = []
    for e in ensembles:
        p_mass = np.zeros(space.n_points)
        c_mass = np.zeros(space.n_points)
        for i, w in enumerate(e.weights):
            u = where[offset + i]
            p_mass[u] += w
            c_mass[member_index[member_of[u]]] += w
        ens_measures.append(DiscreteMeasure(space, p_mass))
        candidates.append(DiscreteMeasure(space, c_mass))
        offset += e.n_paths

    rows = []
    failed = False
    sup_covering = 0.0
    for lam in lambda_grid:
        cross = np.array(
            [
                [prokhorov_distance(P, Q, lam).alpha_star for Q in candidates]
                for P in ens_measures
            ]
        )
        covering = covering_radius(cross)
        slack_net = r_net / lam
        guaranteed = a + b + slack_net + eps
        ok = covering <= guaranteed + CERT_TOL
        failed = failed or not ok
        sup_covering = max(sup_covering, covering)
        rows.append(
            QSAALambdaRow(
                lam=lam,
                covering=covering,
                guaranteed=guaranteed,
                slack_tail=a,
                slack_osc=b,
                slack_net=slack_net,
                slack_eps=eps,
                ok=ok,
            )
        )

    lower_defect = max(a, b)
    lower_ok = lower_defect <= sup_covering + eps
    if failed:
        status = "failed"
    elif lower_ok:
        status = "verified"
    else:
        status = "inconclusive"
    return QSAAReport(
        n_ensembles=len(ensembles),
        n_dim=n_dim,
        eps=eps,
        tail=tail,
        osc=osc,
        n_unique_paths=len(unique),
        n_kept=len(kept),
        n_discarded=len(unique) - len(kept),
        alpha_kept=alpha_kept,
        net_members=len(net.members),
        net_radius=r_net,
        net_certified=net.certified_bound,
        lambda_rows=tuple(rows),
        lower_defect=lower_defect,
        lower_sup_covering=sup_covering,
        lower_ok=lower_ok,
        status=status,
    )
