"""Discrete probability measures and the parametrized Prokhorov distance.

The distance with scale parameter ``lam > 0`` between measures P and Q is the
least ``alpha >= 0`` such that

    P(A) <= Q(A^(lam*alpha)) + alpha   for every subset A,

where ``A^(r)`` is the closed r-inflation of A.  On finite supports this
one-sided condition is equivalent, by max-flow/min-cut duality on the support
bipartite graph whose edges are exactly the pairs within distance
``lam*alpha``, to the existence of a sub-coupling of P and Q that moves mass
only along such pairs and leaves at most ``alpha`` mass uncoupled.  The
duality also makes the condition symmetric in P and Q.

Feasibility at a fixed alpha is therefore one max-flow computation, and the
exact minimizer is found by sweeping the finitely many breakpoints
``d(i, j)/lam`` at which the edge set changes.  A subset-enumeration plus
bisection routine is kept as an independent cross-check oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InternalConsistencyError, VerificationError
from .maxflow import transport_flow
from .metric import FiniteMetricSpace, IndexSet, inflate, open_ball

__all__ = [
    "DiscreteMeasure",
    "CouplingCertificate",
    "ViolationCertificate",
    "ProkhorovResult",
    "tv_distance",
    "check_alpha",
    "prokhorov_distance",
    "prokhorov_oracle",
    "MuUtResult",
    "mu_ut",
    "diameter_partition",
    "ProkhorovNet",
    "prokhorov_net",
    "QProkhReport",
    "verify_qprokh",
]

#: construction rejects mass vectors whose total deviates from 1 by more
MASS_SUM_TOL = 1e-9
#: internal residual budget for flow/certificate arithmetic
FLOW_TOL = 1e-9
#: largest net the construction will materialize in full
NET_SIZE_CAP = 10**6


class DiscreteMeasure:
    """A probability measure with finitely many atoms on a FiniteMetricSpace.

    Masses are validated nonnegative and renormalized to total exactly 1; a
    deviation above 1e-9 before renormalization is a construction error.
    """

    __slots__ = ("space", "mass")

    def __init__(self, space: FiniteMetricSpace, mass):
        mass = np.array(mass, dtype=float)
        if mass.shape != (space.n_points,):
            raise ValueError(
                f"mass vector of length {mass.size} does not fit a "
                f"{space.n_points}-point space"
            )
        if not np.isfinite(mass).all():
            raise ValueError("masses must be finite")
        if mass.min(initial=0.0) < -1e-12:
            raise ValueError("masses must be nonnegative")
        mass = np.maximum(mass, 0.0)
        total = float(mass.sum())
        if abs(total - 1.0) > MASS_SUM_TOL:
            raise ValueError(f"masses sum to {total!r}, not 1")
        mass /= total
        mass.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "mass", mass)

    def __setattr__(self, name, value):
        raise AttributeError("DiscreteMeasure is immutable")

    @classmethod
    def dirac(cls, space: FiniteMetricSpace, index: int) -> "DiscreteMeasure":
        mass = np.zeros(space.n_points)
        mass[index] = 1.0
        return cls(space, mass)

    @classmethod
    def uniform(cls, space: FiniteMetricSpace, support=None) -> "DiscreteMeasure":
        mass = np.zeros(space.n_points)
        if support is None:
            mass[:] = 1.0
        else:
            mass[np.asarray(list(support), dtype=int)] = 1.0
        return cls(space, mass)

    @property
    def support(self) -> np.ndarray:
        return np.nonzero(self.mass > 0.0)[0]

    def prob(self, subset: IndexSet) -> float:
        subset.validate_for(self.space)
        idx = subset.to_array()
        return float(self.mass[idx].sum()) if idx.size else 0.0

    def __repr__(self):
        return f"DiscreteMeasure(support={self.support.size} atoms)"


def _require_same_space(P: DiscreteMeasure, Q: DiscreteMeasure) -> FiniteMetricSpace:
    if not P.space.same_as(Q.space):
        raise ValueError("measures live on different spaces")
    return P.space


def tv_distance(P: DiscreteMeasure, Q: DiscreteMeasure) -> float:
    """Total variation distance sum_i max(P_i - Q_i, 0) = sup_A |P(A) - Q(A)|."""
    _require_same_space(P, Q)
    return float(np.clip(P.mass - Q.mass, 0.0, None).sum())


@dataclass(frozen=True)
class CouplingCertificate:
    """Witness that alpha is feasible: a sub-coupling along close pairs.

    ``flow[a, b]`` is the mass moved from P-atom ``p_support[a]`` to Q-atom
    ``q_support[b]``; every positive entry sits on a pair within distance
    ``lam * alpha``.  ``slack_mass`` is the uncoupled remainder, at most
    ``alpha`` up to the 1e-9 residual budget.
    """

    lam: float
    alpha: float
    p_support: tuple[int, ...]
    q_support: tuple[int, ...]
    flow: np.ndarray
    slack_mass: float

    @property
    def feasible(self) -> bool:
        return True

    def validate(self, P: DiscreteMeasure, Q: DiscreteMeasure, tol: float = FLOW_TOL) -> None:
        """Re-check every certificate invariant against P and Q; raises on failure."""
        space = _require_same_space(P, Q)
        sp = np.array(self.p_support, dtype=int)
        sq = np.array(self.q_support, dtype=int)
        if self.flow.min(initial=0.0) < -tol:
            raise InternalConsistencyError("negative flow entry")
        row = self.flow.sum(axis=1)
        col = self.flow.sum(axis=0)
        if (row - P.mass[sp] > tol).any():
            raise InternalConsistencyError("flow row sums exceed P masses")
        if (col - Q.mass[sq] > tol).any():
            raise InternalConsistencyError("flow column sums exceed Q masses")
        total = float(self.flow.sum())
        if abs(total + self.slack_mass - 1.0) > tol:
            raise InternalConsistencyError("flow plus slack does not add to 1")
        if self.slack_mass > self.alpha + tol:
            raise InternalConsistencyError("slack mass exceeds alpha")
        d = space.dist[np.ix_(sp, sq)]
        beyond = (d > self.lam * self.alpha) & (d / self.lam > self.alpha)
        if (self.flow[beyond] > tol).any():
            raise InternalConsistencyError("positive flow on a pair beyond lam*alpha")


@dataclass(frozen=True)
class ViolationCertificate:
    """Witness that alpha is infeasible: a set with P(A) > Q(A^(lam a)) + a."""

    lam: float
    alpha: float
    subset: IndexSet
    p_mass: float
    q_inflated_mass: float

    @property
    def feasible(self) -> bool:
        return False

    @property
    def gap(self) -> float:
        return self.p_mass - self.q_inflated_mass - self.alpha

    def validate(self, P: DiscreteMeasure, Q: DiscreteMeasure, tol: float = FLOW_TOL) -> None:
        space = _require_same_space(P, Q)
        pm = P.prob(self.subset)
        qm = Q.prob(_closed_neighborhood(space, self.subset, self.lam, self.alpha))
        if abs(pm - self.p_mass) > tol or abs(qm - self.q_inflated_mass) > tol:
            raise InternalConsistencyError("violation certificate masses are stale")
        if pm - qm - self.alpha <= 0.0:
            raise InternalConsistencyError("claimed violating set does not violate")


def _closed_neighborhood(
    space: FiniteMetricSpace, subset: IndexSet, lam: float, alpha: float
) -> IndexSet:
    """Closed lam*alpha-inflation of ``subset``, boundary-robust.

    Same set as ``inflate(space, subset, lam * alpha)`` in exact arithmetic;
    here a pair is also accepted when ``d / lam <= alpha`` so that answers
    produced by the breakpoint sweep (which works in units of d/lam) land on
    the feasible side of their own boundary.
    """
    idx = subset.to_array()
    if idx.size == 0:
        return IndexSet()
    d = space.dist[idx]
    hit = ((d <= lam * alpha) | (d / lam <= alpha)).any(axis=0)
    return IndexSet(tuple(np.nonzero(hit)[0].tolist()))


def check_alpha(P: DiscreteMeasure, Q: DiscreteMeasure, lam: float, alpha: float):
    """Decide feasibility of ``alpha`` for the lam-Prokhorov condition.

    Returns a CouplingCertificate when feasible and a ViolationCertificate
    otherwise.  The decision is made by one max-flow on the support bipartite
    graph and then re-checked definitionally on the min-cut set, so the
    returned certificate is always self-consistent.
    """
    space = _require_same_space(P, Q)
    lam = float(lam)
    alpha = float(alpha)
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    if alpha < 0.0:
        raise ValueError("alpha must be >= 0")
    sp = P.support
    sq = Q.support
    d = space.dist[np.ix_(sp, sq)]
    # closed condition d <= lam*alpha, accepted under either rounding of the
    # boundary so the answer of the breakpoint sweep (which works in units of
    # d/lam) rechecks consistently
    allowed = (d <= lam * alpha) | (d / lam <= alpha)
    flow, value, reach_p = transport_flow(P.mass[sp], Q.mass[sq], allowed)

    # min-cut set: P-atoms still reachable from the source
    cut_set = IndexSet(tuple(sp[reach_p].tolist()))
    p_mass = P.prob(cut_set)
    q_infl = Q.prob(_closed_neighborhood(space, cut_set, lam, alpha))
    if p_mass - q_infl - alpha > 1e-15:
        return ViolationCertificate(
            lam=lam, alpha=alpha, subset=cut_set, p_mass=p_mass, q_inflated_mass=q_infl
        )
    slack = max(0.0, 1.0 - value)
    cert = CouplingCertificate(
        lam=lam,
        alpha=alpha,
        p_support=tuple(sp.tolist()),
        q_support=tuple(sq.tolist()),
        flow=flow,
        slack_mass=slack,
    )
    cert.validate(P, Q)
    return cert


@dataclass(frozen=True)
class ProkhorovResult:
    """Least feasible alpha for a given lam, with its coupling certificate."""

    lam: float
    alpha_star: float
    certificate: CouplingCertificate
    breakpoints_scanned: int


def _deficiency(p_vec, q_vec, d_over_lam, threshold):
    """1 - maxflow when pairs with d/lam <= threshold may carry flow."""
    allowed = d_over_lam <= threshold
    _, value, _ = transport_flow(p_vec, q_vec, allowed)
    return max(0.0, 1.0 - value)


def prokhorov_distance(P: DiscreteMeasure, Q: DiscreteMeasure, lam: float) -> ProkhorovResult:
    """Exact lam-Prokhorov distance via a breakpoint sweep.

    On each interval between consecutive breakpoints of ``d(i, j)/lam`` the
    feasibility graph, hence the flow deficiency ``g``, is constant; alpha is
    feasible iff ``g(alpha) <= alpha``.  ``g`` is nonincreasing, so the least
    index ``k*`` with ``g_k <= b_k`` is found by binary search and the answer
    is ``b_{k*}`` unless the previous interval already contains its own
    feasible point ``g_{k*-1}``.
    """
    space = _require_same_space(P, Q)
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    sp = P.support
    sq = Q.support
    d_over_lam = space.dist[np.ix_(sp, sq)] / lam
    bps = np.unique(np.concatenate([[0.0], d_over_lam.ravel()]))
    p_vec = P.mass[sp]
    q_vec = Q.mass[sq]

    cache: dict[int, float] = {}

    def g(k: int) -> float:
        if k not in cache:
            cache[k] = _deficiency(p_vec, q_vec, d_over_lam, bps[k])
        return cache[k]

    lo, hi = 0, len(bps) - 1
    # invariant: g(hi) <= bps[hi] (the full edge set couples everything)
    if g(lo) <= bps[lo]:
        hi = lo
    while lo < hi:
        mid = (lo + hi) // 2
        if g(mid) <= bps[mid]:
            hi = mid
        else:
            lo = mid + 1
    k_star = hi
    alpha_star = bps[k_star]
    if k_star > 0 and g(k_star - 1) < bps[k_star]:
        alpha_star = g(k_star - 1)
    alpha_star = float(alpha_star)

    cert = check_alpha(P, Q, lam, alpha_star)
    if not cert.feasible:
        raise InternalConsistencyError(
            f"sweep returned alpha={alpha_star!r} but the feasibility recheck disagrees"
        )
    return ProkhorovResult(
        lam=lam, alpha_star=alpha_star, certificate=cert, breakpoints_scanned=len(bps)
    )


def prokhorov_oracle(
    P: DiscreteMeasure, Q: DiscreteMeasure, lam: float, tol: float = 1e-10
) -> float:
    """Brute-force reference value: enumerate all 2^n subsets, bisect on alpha.

    Exponential in the number of points; refuses spaces above 16 points.
    Independent of the sweep/flow machinery, so the two can cross-check
    each other.
    """
    space = _require_same_space(P, Q)
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    n = space.n_points
    if n > 16:
        raise ValueError(f"oracle limited to 16 points, got {n}")
    # all subsets as a (2^n, n) boolean matrix
    masks = np.arange(2**n, dtype=np.uint32)
    subsets = (masks[:, None] >> np.arange(n, dtype=np.uint32)[None, :]) & 1
    subsets = subsets.astype(bool)
    p_of = subsets @ P.mass

    def worst_gap(alpha: float) -> float:
        near = space.dist <= lam * alpha
        inflated = subsets @ near.astype(np.int8) > 0
        return float((p_of - inflated @ Q.mass).max())

    if worst_gap(0.0) <= 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if worst_gap(mid) <= mid:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# uniform-tightness defect estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MuUtEpsEntry:
    eps: float
    greedy_value: float
    greedy_centers: tuple[int, ...]
    exact_value: Optional[float]
    exact_centers: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class MuUtResult:
    """Bracket for the grid-and-budget-restricted uniform-tightness defect.

    For each eps the quantity estimated is

        inf over center sets Y (|Y| <= k_max, Y from the space's points) of
        sup over the family of the mass left outside the open eps-balls
        around Y,

    and the reported value takes the max over the eps grid.  ``upper`` comes
    from greedy center selection, ``lower`` from exhaustive enumeration when
    the space has at most 20 points (then it is exact for the restricted
    problem).  The unrestricted defect takes the sup over all eps > 0 and all
    finite center sets, so a finite grid/budget can only underestimate in eps
    and overestimate in Y.
    """

    entries: tuple[MuUtEpsEntry, ...]
    upper: float
    lower: Optional[float]
    k_max: int
    exact: bool
    note: str = (
        "estimates are relative to the eps grid and the center budget k_max; "
        "the underlying quantity is a sup over all eps and all finite center sets"
    )


_EXACT_CENTER_LIMIT = 20


def mu_ut(family: Sequence[DiscreteMeasure], eps_grid, k_max: int) -> MuUtResult:
    """Estimate the uniform-tightness defect of a family of measures.

    Balls are open (strict inequality), centers are restricted to the points
    of the space (for a finite ambient space that is no restriction).  The
    greedy pass adds, at each step, the center whose addition minimizes the
    worst-case uncovered mass, ties broken by lowest index.
    """
    if not family:
        raise ValueError("family must be nonempty")
    space = family[0].space
    for m in family[1:]:
        if not space.same_as(m.space):
            raise ValueError("family measures live on different spaces")
    eps_grid = [float(e) for e in eps_grid]
    if not eps_grid or any(e <= 0.0 for e in eps_grid):
        raise ValueError("eps_grid must be nonempty and positive")
    k_max = int(k_max)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    n = space.n_points
    masses = np.stack([m.mass for m in family])

    entries = []
    for eps in eps_grid:
        balls = space.dist < eps  # balls[y] = open ball membership row

        def worst_missed(covered: np.ndarray) -> float:
            return float((masses[:, ~covered]).sum(axis=1).max(initial=0.0))

        covered = np.zeros(n, dtype=bool)
        centers: list[int] = []
        best_val = worst_missed(covered)
        for _ in range(min(k_max, n)):
            cand_vals = np.array(
                [worst_missed(covered | balls[y]) for y in range(n)]
            )
            y = int(np.argmin(cand_vals))
            centers.append(y)
            covered = covered | balls[y]
            best_val = float(cand_vals[y])
            if best_val == 0.0:
                break
        greedy_value = best_val

        exact_value = None
        exact_centers = None
        if n <= _EXACT_CENTER_LIMIT:
            k = min(k_max, n)
            exact_value = greedy_value
            exact_centers = tuple(centers)
            for combo in itertools.combinations(range(n), k):
                val = worst_missed(balls[list(combo)].any(axis=0))
                if val < exact_value:
                    exact_value = val
                    exact_centers = combo
                    if val == 0.0:
                        break
        entries.append(
            MuUtEpsEntry(
                eps=eps,
                greedy_value=greedy_value,
                greedy_centers=tuple(centers),
                exact_value=exact_value,
                exact_centers=exact_centers,
            )
        )

    upper = max(e.greedy_value for e in entries)
    exact = all(e.exact_value is not None for e in entries)
    lower = max((e.exact_value for e in entries if e.exact_value is not None), default=None)
    return MuUtResult(entries=tuple(entries), upper=upper, lower=lower, k_max=k_max, exact=exact)


# ---------------------------------------------------------------------------
# finite nets that cover a family within its tightness defect
# ---------------------------------------------------------------------------


def diameter_partition(space: FiniteMetricSpace, max_diam: float) -> list[IndexSet]:
    """Greedy partition of all points into cells of diameter < max_diam.

    Scans points in index order and puts each into the first existing cell it
    fits (every pairwise distance stays strictly below the threshold), opening
    a new cell otherwise.  Deterministic.
    """
    if max_diam <= 0.0:
        raise ValueError("max_diam must be > 0")
    cells: list[list[int]] = []
    d = space.dist
    for p in range(space.n_points):
        for cell in cells:
            if all(d[p, q] < max_diam for q in cell):
                cell.append(p)
                break
        else:
            cells.append([p])
    return [IndexSet(tuple(c)) for c in cells]


@dataclass(frozen=True)
class ProkhorovNet:
    """A finite measure net covering a family within tightness defect + eps.

    ``mode`` is "full" when the whole simplex net over the cell
    representatives was materialized (at most 10^6 measures), else "rounded"
    and ``measures`` holds one rounded measure per input family member.  In
    both modes ``assigned[i]`` is the rounded companion of family member i
    (in full mode it also appears in ``measures``).
    """

    lam: float
    eps: float
    t_gamma_bound: float
    representatives: tuple[int, ...]
    complement_rep: Optional[int]
    m_grain: int
    mode: str
    full_size: int
    measures: tuple[DiscreteMeasure, ...]
    assigned: tuple[DiscreteMeasure, ...]

    @property
    def covering_target(self) -> float:
        return self.t_gamma_bound + self.eps


def _rounded_member(
    P: DiscreteMeasure,
    cells: Sequence[IndexSet],
    reps: Sequence[int],
    comp_rep: Optional[int],
    m: int,
) -> DiscreteMeasure:
    """Round P onto the representatives with per-cell error below 1/m."""
    cell_mass = np.array([P.prob(c) for c in cells])
    k = np.floor(m * cell_mass).astype(int)
    spare = m - int(k.sum())
    mass = np.zeros(P.space.n_points)
    if comp_rep is not None:
        mass[comp_rep] += spare / m
    elif spare > 0:
        # no complement: hand the remainder to the cells with the largest
        # fractional parts, one grain each (keeps P(A_i) <= k_i/m + 1/m)
        frac = m * cell_mass - k
        for idx in np.argsort(-frac, kind="stable")[:spare]:
            k[idx] += 1
    for rep, grains in zip(reps, k):
        mass[rep] += grains / m
    return DiscreteMeasure(P.space, mass)


def prokhorov_net(
    family: Sequence[DiscreteMeasure],
    lam: float,
    eps: float,
    partition: Sequence[IndexSet],
    t_gamma_bound: float,
) -> ProkhorovNet:
    """Build the grained measure net over cell representatives.

    Requires pairwise-disjoint cells of diameter strictly below ``lam*eps``
    and a caller-supplied tightness bound ``t_gamma_bound`` with
    ``P(outside the partition) <= t_gamma_bound + eps/2`` for every family
    member (checked, rejected otherwise).  Every family member then has a net
    measure within ``t_gamma_bound + eps`` in lam-Prokhorov distance.
    """
    if not family:
        raise ValueError("family must be nonempty")
    space = family[0].space
    for m_ in family[1:]:
        if not space.same_as(m_.space):
            raise ValueError("family measures live on different spaces")
    lam = float(lam)
    eps = float(eps)
    t_gamma_bound = float(t_gamma_bound)
    if lam <= 0.0 or eps <= 0.0:
        raise ValueError("lam and eps must be > 0")
    if t_gamma_bound < 0.0:
        raise ValueError("t_gamma_bound must be >= 0")
    if not partition:
        raise ValueError("partition must be nonempty")

    seen: set[int] = set()
    for cell in partition:
        cell.validate_for(space)
        if not len(cell):
            raise ValueError("empty partition cell")
        if seen & set(cell.members):
            raise ValueError("partition cells are not disjoint")
        seen |= set(cell.members)
        idx = cell.to_array()
        diam = float(space.dist[np.ix_(idx, idx)].max())
        if diam >= lam * eps:
            raise ValueError(
                f"partition cell with diameter {diam!r} >= lam*eps = {lam * eps!r}"
            )
    complement = sorted(set(range(space.n_points)) - seen)
    outside = [1.0 - sum(P.prob(c) for c in partition) for P in family]
    worst_outside = max(outside)
    if worst_outside > t_gamma_bound + eps / 2.0 + 1e-12:
        raise ValueError(
            f"t_gamma_bound={t_gamma_bound!r} is violated: a family member puts "
            f"{worst_outside!r} outside the partition (> bound + eps/2)"
        )

    n_cells = len(partition)
    m = max(1, math.ceil(2.0 * n_cells / eps))
    reps = [cell.members[0] for cell in partition]
    comp_rep = complement[0] if complement else None
    n_reps = n_cells + (1 if comp_rep is not None else 0)
    full_size = math.comb(m + n_reps - 1, n_reps - 1)

    assigned = tuple(
        _rounded_member(P, partition, reps, comp_rep, m) for P in family
    )

    if full_size <= NET_SIZE_CAP:
        mode = "full"
        all_reps = list(reps) + ([comp_rep] if comp_rep is not None else [])
        measures = []
        for cut in itertools.combinations(range(m + n_reps - 1), n_reps - 1):
            grains = []
            prev = -1
            for c in cut:
                grains.append(c - prev - 1)
                prev = c
            grains.append(m + n_reps - 2 - prev)
            mass = np.zeros(space.n_points)
            for rep, g_ in zip(all_reps, grains):
                mass[rep] += g_ / m
            measures.append(DiscreteMeasure(space, mass))
        measures = tuple(measures)
    else:
        mode = "rounded"
        measures = assigned

    return ProkhorovNet(
        lam=lam,
        eps=eps,
        t_gamma_bound=t_gamma_bound,
        representatives=tuple(reps),
        complement_rep=comp_rep,
        m_grain=m,
        mode=mode,
        full_size=full_size,
        measures=measures,
        assigned=assigned,
    )


# ---------------------------------------------------------------------------
# covering-vs-tightness sandwich report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QProkhLambdaRow:
    lam: float
    n_cells: int
    m_grain: int
    net_mode: str
    net_full_size: int
    per_member_rho: tuple[float, ...]
    covering_radius: float
    claim_ok: bool
    covering_le_mu_upper: bool
    mu_lower_le_covering: bool


@dataclass(frozen=True)
class QProkhReport:
    eps: float
    mu_ut: MuUtResult
    rows: tuple[QProkhLambdaRow, ...]
    status: str
    hint: str = ""


def verify_qprokh(
    family: Sequence[DiscreteMeasure],
    lambda_grid,
    eps: float,
    eps_grid=None,
    k_max: Optional[int] = None,
) -> QProkhReport:
    """Sandwich the covering radius of a family between tightness estimates.

    For each lam a partition into cells of diameter < lam*eps is built, the
    measure net is constructed, and every family member is checked to be
    within eps of its net companion in lam-Prokhorov distance (a hard claim;
    its failure means a bug).  The report then compares the covering radius
    against the uniform-tightness bracket: covering <= upper + eps must hold,
    and lower <= covering + eps is expected to hold once the center budget
    k_max is large enough; a shortfall is reported as inconclusive with a
    budget hint, never silently absorbed.
    """
    if not family:
        raise ValueError("family must be nonempty")
    space = family[0].space
    lambda_grid = [float(x) for x in lambda_grid]
    if not lambda_grid or any(x <= 0.0 for x in lambda_grid):
        raise ValueError("lambda_grid must be nonempty and positive")
    eps = float(eps)
    if eps <= 0.0:
        raise ValueError("eps must be > 0")
    if eps_grid is None:
        pos = space.positive_distances()
        if pos.size:
            qs = np.quantile(pos, [0.25, 0.5, 0.75]) / 2.0
            eps_grid = sorted(set(float(x) for x in qs if x > 0.0))
        else:
            eps_grid = [1.0]
    if k_max is None:
        k_max = min(space.n_points, 4)

    mu = mu_ut(family, eps_grid, k_max)
    mu_lower = mu.lower if mu.lower is not None else 0.0

    rows = []
    failed = False
    inconclusive = False
    for lam in lambda_grid:
        partition = diameter_partition(space, lam * eps)
        net = prokhorov_net(family, lam, eps, partition, t_gamma_bound=0.0)
        rhos = tuple(
            prokhorov_distance(P, Qr, lam).alpha_star
            for P, Qr in zip(family, net.assigned)
        )
        covering = max(rhos)
        claim_ok = covering <= net.covering_target + FLOW_TOL
        if not claim_ok:
            failed = True
        check_a = covering <= mu.upper + eps + FLOW_TOL
        check_b = mu_lower <= covering + eps + FLOW_TOL
        if not (check_a and check_b):
            inconclusive = True
        rows.append(
            QProkhLambdaRow(
                lam=lam,
                n_cells=len(partition),
                m_grain=net.m_grain,
                net_mode=net.mode,
                net_full_size=net.full_size,
                per_member_rho=rhos,
                covering_radius=covering,
                claim_ok=claim_ok,
                covering_le_mu_upper=check_a,
                mu_lower_le_covering=check_b,
            )
        )

    if failed:
        status, hint = "failed", "net covering claim violated; this is a bug"
    elif inconclusive:
        status = "inconclusive"
        hint = (
            "tightness lower estimate exceeds the observed covering radius; "
            "raise k_max or refine eps_grid to close the sandwich"
        )
    else:
        status, hint = "verified", ""
    return QProkhReport(eps=eps, mu_ut=mu, rows=tuple(rows), status=status, hint=hint)
