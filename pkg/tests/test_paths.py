import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcompact import (
    PLPath,
    aa_net,
    jung_ratio,
    lattice_points,
    modulus,
    mu_uec_family,
    uniform_distance,
    verify_qaa,
)

from oracles import dense_modulus, dense_uniform_distance


def ramp(s, h, n_dim=1):
    """clamp((t - s)/h, 0, 1) as a PL path, optionally embedded in R^n."""
    knots = sorted({0.0, s, min(s + h, 1.0), 1.0})
    vals = [min(max((t - s) / h, 0.0), 1.0) for t in knots]
    values = [[v] + [0.0] * (n_dim - 1) for v in vals]
    return PLPath(knots, values)


@st.composite
def pl_path(draw, n_dim=1, max_knots=6, lo=-3.0, hi=3.0):
    k = draw(st.integers(min_value=0, max_value=max_knots - 2))
    inner = draw(
        st.lists(
            st.integers(1, 99), min_size=k, max_size=k, unique=True
        )
    )
    knots = [0.0] + sorted(x / 100 for x in inner) + [1.0]
    values = draw(
        st.lists(
            st.lists(st.floats(lo, hi), min_size=n_dim, max_size=n_dim),
            min_size=len(knots),
            max_size=len(knots),
        )
    )
    return PLPath(knots, values)


class TestPLPath:
    def test_evaluation_interpolates(self):
        p = PLPath([0.0, 0.5, 1.0], [[0.0], [1.0], [0.0]])
        assert p.at(0.25) == pytest.approx([0.5])
        assert p.at(0.75) == pytest.approx([0.5])
        assert p.sup_norm == 1.0

    def test_constant_constructor(self):
        p = PLPath.constant([2.0, -1.0])
        assert p.n_dim == 2
        assert p.sup_norm == pytest.approx(math.sqrt(5.0))

    def test_rejects_bad_knots(self):
        with pytest.raises(ValueError, match="row per knot"):
            PLPath([0.0, 0.5], [[0.0], [1.0], [2.0]])
        with pytest.raises(ValueError, match="start at 0"):
            PLPath([0.1, 1.0], [[0.0], [1.0]])
        with pytest.raises(ValueError, match="increasing"):
            PLPath([0.0, 0.5, 0.5, 1.0], [[0.0]] * 4)

    def test_from_dict_strict(self):
        p = PLPath.from_dict({"knots": [0.0, 1.0], "values": [[1.0], [2.0]]})
        assert p.n_dim == 1
        with pytest.raises(ValueError, match="unknown field"):
            PLPath.from_dict({"knots": [0, 1], "values": [[0], [0]], "x": 1})


class TestUniformDistance:
    def test_identical(self):
        p = PLPath([0.0, 1.0], [[0.0], [2.0]])
        assert uniform_distance(p, p) == 0.0

    def test_crossing_ramps(self):
        x = PLPath([0.0, 1.0], [[0.0], [1.0]])
        y = PLPath([0.0, 1.0], [[1.0], [0.0]])
        assert uniform_distance(x, y) == pytest.approx(1.0, abs=1e-15)

    def test_constant_offset(self):
        x = PLPath([0.0, 1.0], [[0.0], [0.0]])
        y = PLPath([0.0, 1.0], [[-2.5], [-2.5]])
        assert uniform_distance(x, y) == 2.5

    @given(pl_path(), pl_path())
    @settings(max_examples=50)
    def test_matches_dense_oracle(self, x, y):
        exact = uniform_distance(x, y)
        approx = dense_uniform_distance(x.knots, x.values, y.knots, y.values)
        assert exact >= approx - 1e-12
        assert exact == pytest.approx(approx, abs=1e-3)

    @given(pl_path(), pl_path(), pl_path())
    @settings(max_examples=50)
    def test_metric_axioms(self, x, y, z):
        assert uniform_distance(x, y) == uniform_distance(y, x)
        assert uniform_distance(x, z) <= (
            uniform_distance(x, y) + uniform_distance(y, z) + 1e-12
        )


class TestModulus:
    def test_unit_slope(self):
        p = PLPath([0.0, 1.0], [[0.0], [1.0]])
        assert modulus(p, 0.25) == pytest.approx(0.25, abs=1e-15)

    def test_sawtooth(self):
        p = PLPath([0.0, 0.5, 1.0], [[0.0], [1.0], [0.0]])
        assert modulus(p, 0.2) == pytest.approx(0.4, abs=1e-15)

    def test_constant(self):
        p = PLPath([0.0, 1.0], [[3.0], [3.0]])
        assert modulus(p, 0.7) == 0.0

    def test_rejects_nonpositive_delta(self):
        p = PLPath([0.0, 1.0], [[0.0], [1.0]])
        with pytest.raises(ValueError, match="delta"):
            modulus(p, 0.0)

    @given(pl_path(n_dim=2), st.floats(0.05, 1.0))
    @settings(max_examples=50)
    def test_dominates_dense_oracle(self, x, delta):
        exact = modulus(x, delta)
        approx = dense_modulus(x.knots, x.values, delta)
        assert exact >= approx - 1e-12
        assert exact == pytest.approx(approx, abs=2e-2)

    @given(pl_path(), st.floats(0.05, 0.5), st.floats(0.0, 0.5))
    @settings(max_examples=50)
    def test_nondecreasing_in_delta(self, x, delta, bump):
        assert modulus(x, delta) <= modulus(x, delta + bump) + 1e-12

    @given(pl_path(n_dim=2), st.floats(0.05, 2.0))
    @settings(max_examples=50)
    def test_bounded_by_twice_sup_norm(self, x, delta):
        assert modulus(x, delta) <= 2 * x.sup_norm + 1e-12

    @given(st.floats(-4, 4), st.floats(0.01, 0.9))
    def test_affine_slope_rule(self, v, delta):
        p = PLPath([0.0, 1.0], [[0.0], [v]])
        assert modulus(p, delta) == pytest.approx(abs(v) * delta, abs=1e-12)


class TestMuUecFamily:
    def test_constants(self):
        fam = [PLPath([0.0, 1.0], [[c], [c]]) for c in (0.0, 1.0, -2.0)]
        assert mu_uec_family(fam, 0.3) == 0.0

    def test_takes_family_max(self):
        slope1 = PLPath([0.0, 1.0], [[0.0], [1.0]])
        slope2 = PLPath([0.0, 1.0], [[0.0], [2.0]])
        assert mu_uec_family([slope1, slope2], 0.1) == pytest.approx(0.2, abs=1e-15)

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="empty"):
            mu_uec_family([], 0.1)


class TestBridgeLemmas:
    """Linear interpolation between ball centers stays in the balls."""

    @given(
        st.floats(-3, 3), st.floats(-3, 3), st.floats(0.0, 2.0), st.floats(0, 1)
    )
    @settings(max_examples=80)
    def test_bridge_stays_within_common_radius(self, c1, c2, r, frac):
        # pick y in the intersection of the two closed r-balls when nonempty
        if abs(c1 - c2) > 2 * r:
            return
        y = (c1 + c2) / 2.0
        if abs(c1 - y) > r or abs(c2 - y) > r:
            return
        bridge = PLPath([0.0, 1.0], [[c1], [c2]])
        const = PLPath([0.0, 1.0], [[y], [y]])
        assert uniform_distance(bridge, const) <= r + 1e-12

    @given(
        st.tuples(st.floats(-3, 3), st.floats(-3, 3)),
        st.tuples(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5)),
        st.floats(0.0, 0.5),
    )
    @settings(max_examples=80)
    def test_parallel_bridges_stay_close(self, ends, perturb, eps):
        c1, c2 = ends
        d1, d2 = perturb
        y1 = c1 + max(min(d1, eps), -eps)
        y2 = c2 + max(min(d2, eps), -eps)
        L = PLPath([0.0, 1.0], [[c1], [c2]])
        M = PLPath([0.0, 1.0], [[y1], [y2]])
        assert uniform_distance(L, M) <= eps + 1e-12


class TestAANet:
    def test_constant_family(self):
        fam = [PLPath([0.0, 1.0], [[c], [c]]) for c in (0.0, 0.5, -0.9)]
        net = aa_net(fam, 0.3, 0.0, 1.0, 0.02)
        assert net.covering_achieved <= 0.02 + 1e-12
        for s in net.per_sample:
            assert s.achieved <= s.bound + 1e-12

    def test_unit_ramp_certified(self):
        fam = [PLPath([0.0, 1.0], [[0.0], [1.0]])]
        net = aa_net(fam, 0.2, 0.2, 1.0, 0.01)
        bound = math.sqrt(1.0 / 4.0) * 0.2 + 0.01
        assert net.certified_bound == pytest.approx(bound, abs=1e-12)
        assert net.sampling_slack == 0.0
        assert net.covering_achieved <= bound + 1e-12
        # the certified bound is checked against the exact distance oracle
        for s, x in zip(net.per_sample, fam):
            d = uniform_distance(net.members[s.member_index], x)
            assert d == pytest.approx(s.achieved, abs=1e-12)

    def test_windows_narrower_than_delta(self):
        fam = [PLPath([0.0, 1.0], [[0.0], [1.0]])]
        net = aa_net(fam, 0.17, 0.17, 1.0, 0.05)
        for lo, hi in net.windows:
            assert hi - lo < 0.17

    def test_members_sit_on_snap_lattice(self):
        fam = [PLPath([0.0, 0.33, 1.0], [[0.1], [0.9], [-0.4]])]
        net = aa_net(fam, 0.4, mu_uec_family(fam, 0.4), 1.0, 0.05)
        for member in net.members:
            steps = np.asarray(member.values) / net.pitch
            assert np.allclose(steps, np.round(steps), atol=1e-6)

    def test_rejects_unbounded_path_with_index(self):
        fam = [
            PLPath([0.0, 1.0], [[0.0], [0.0]]),
            PLPath([0.0, 1.0], [[0.0], [5.0]]),
        ]
        with pytest.raises(ValueError, match="path 1"):
            aa_net(fam, 0.2, 0.5, 1.0, 0.01)

    def test_rejects_oscillation_above_alpha(self):
        fam = [PLPath([0.0, 1.0], [[0.0], [1.0]])]
        with pytest.raises(ValueError, match="path 0"):
            aa_net(fam, 0.5, 0.1, 1.0, 0.01)

    def test_rejects_alpha_above_twice_bound(self):
        fam = [PLPath([0.0, 1.0], [[0.0], [0.1]])]
        with pytest.raises(ValueError, match="twice"):
            aa_net(fam, 0.2, 2.5, 1.0, 0.01)

    @given(
        st.lists(pl_path(n_dim=2, lo=-1.0, hi=1.0), min_size=1, max_size=3),
        st.sampled_from([0.15, 0.3, 0.6]),
    )
    @settings(max_examples=25, deadline=None)
    def test_certificate_holds_on_random_families(self, fam, delta):
        alpha = mu_uec_family(fam, delta)
        bound_m = max(x.sup_norm for x in fam) + 1e-9
        net = aa_net(fam, delta, alpha, max(bound_m, 1e-6), 0.05)
        limit = jung_ratio(2) * alpha + 0.05
        for s in net.per_sample:
            assert s.achieved <= limit + 1e-9


class TestLatticePoints:
    def test_small_lattice_enumerates(self):
        pts = lattice_points(0.5, 1.0, 1)
        assert sorted(pts.ravel().tolist()) == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_oversized_lattice_suggests_pitch(self):
        with pytest.raises(ValueError, match="pitch"):
            lattice_points(1e-4, 1.0, 3)


class TestVerifyQAA:
    def test_constant_family_verifies(self):
        fam = [PLPath([0.0, 1.0], [[c], [c]]) for c in (0.0, 0.7)]
        report = verify_qaa(fam, [0.1, 0.3], 1.0, 0.02)
        assert report.status == "verified"
        for row in report.rows:
            assert row.upper_ok
            assert row.covering <= 0.02 + 1e-12
            for low in row.lower_rows:
                assert low.ok

    def test_ramp_family_half_factor(self):
        # steep ramps: oscillation defect 1 beyond the ramp width, while a
        # one-dimensional net can cover at radius about 1/2
        fam = [ramp(s, 0.01) for s in np.arange(0.0, 1.0, 0.005)]
        report = verify_qaa(fam, [0.05], 1.0, 0.005)
        row = report.rows[0]
        assert report.status == "verified"
        assert row.alpha == pytest.approx(1.0, abs=1e-12)
        assert abs(row.covering - 0.5) <= 0.05

    def test_planar_embedding_uses_planar_constant(self):
        fam = [ramp(s, 0.01, n_dim=2) for s in np.arange(0.0, 1.0, 0.02)]
        report = verify_qaa(fam, [0.05], 1.0, 0.01)
        row = report.rows[0]
        assert report.status == "verified"
        assert row.bound == pytest.approx(
            math.sqrt(2.0 / 6.0) * row.alpha + 0.01, abs=1e-12
        )
        assert row.covering <= row.bound + 1e-12
