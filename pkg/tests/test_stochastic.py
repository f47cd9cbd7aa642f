import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcompact import (
    PathEnsemble,
    PLPath,
    mu_sub_hat,
    mu_suec_hat,
    path_metric_space,
    path_prokhorov,
    sample_walks,
    uniform_distance,
    verify_qsaa,
)


def const(c):
    return PLPath.constant([c])


def ramp_to(v, width=1.0):
    """0 -> v over [0, width], then flat."""
    if width >= 1.0:
        return PLPath([0.0, 1.0], [[0.0], [v]])
    return PLPath([0.0, width, 1.0], [[0.0], [v], [v]])


def spike(center, width=0.01):
    """Unit-height tent supported on [center - width/2, center + width/2]."""
    lo, hi = center - width / 2, center + width / 2
    knots = sorted({0.0, lo, center, hi, 1.0})
    vals = [[1.0] if t == center else [0.0] for t in knots]
    return PLPath(knots, vals)


def spike_family(p=0.2, K=5, width=0.01):
    flat = const(0.0)
    out = []
    for k in range(1, K + 1):
        out.append(
            PathEnsemble([flat, spike(k / (K + 1), width)], [1 - p, p])
        )
    return out


@st.composite
def small_ensemble(draw, max_paths=4):
    n = draw(st.integers(1, max_paths))
    paths = []
    for _ in range(n):
        k = draw(st.integers(0, 2))
        inner = sorted(
            draw(st.lists(st.integers(1, 9), min_size=k, max_size=k, unique=True))
        )
        knots = [0.0] + [x / 10 for x in inner] + [1.0]
        vals = draw(
            st.lists(
                st.lists(st.floats(-2, 2), min_size=1, max_size=1),
                min_size=len(knots),
                max_size=len(knots),
            )
        )
        paths.append(PLPath(knots, vals))
    w = np.asarray(draw(st.lists(st.floats(0.05, 1), min_size=n, max_size=n)))
    return PathEnsemble(paths, w / w.sum())


class TestPathEnsemble:
    def test_uniform_default_weights(self):
        e = PathEnsemble([const(0.0), const(1.0)])
        assert np.allclose(e.weights, [0.5, 0.5])

    def test_rejects_weight_sum_off_by_more_than_1e12(self):
        with pytest.raises(ValueError, match="sum"):
            PathEnsemble([const(0.0), const(1.0)], [0.5, 0.5 + 1e-9])

    def test_rejects_mixed_dimensions(self):
        with pytest.raises(ValueError, match="dimension"):
            PathEnsemble([const(0.0), PLPath.constant([0.0, 0.0])])

    def test_from_dict_strict(self):
        e = PathEnsemble.from_dict(
            {
                "paths": [{"knots": [0.0, 1.0], "values": [[0.0], [1.0]]}],
                "weights": [1.0],
            }
        )
        assert e.n_paths == 1
        with pytest.raises(ValueError, match="unknown field"):
            PathEnsemble.from_dict({"paths": [], "extra": 1})


class TestMuSubHat:
    def test_bounded_constants_vanish(self):
        xi = [PathEnsemble([const(0.3), const(-1.0)], [0.5, 0.5])]
        out = mu_sub_hat(xi, [1.0])
        assert out.value == 0.0

    def test_two_norm_levels(self):
        xi = [PathEnsemble([ramp_to(0.5), ramp_to(5.0)], [0.9, 0.1])]
        out = mu_sub_hat(xi, [1.0])
        assert out.value == 0.0
        assert out.m_star == 5.0
        at_one = out.defects[out.m_grid.index(1.0)]
        assert at_one == pytest.approx(0.1, abs=1e-15)

    def test_max_norm_gives_zero_tail(self):
        xi = [PathEnsemble([ramp_to(2.0), ramp_to(-3.0)])]
        out = mu_sub_hat(xi, [3.0])
        assert out.defects[out.m_grid.index(3.0)] == 0.0

    def test_rejects_nonpositive_levels(self):
        with pytest.raises(ValueError, match="positive"):
            mu_sub_hat([PathEnsemble([const(0.0)])], [0.0, 1.0])

    @given(small_ensemble(), st.lists(st.floats(0.1, 3), min_size=1, max_size=3))
    @settings(max_examples=40)
    def test_refining_grid_never_increases(self, e, extra):
        base = mu_sub_hat([e], [1.0])
        refined = mu_sub_hat([e], sorted(set([1.0] + list(extra))))
        assert refined.value <= base.value + 1e-15


class TestMuSuecHat:
    def test_constants_vanish(self):
        xi = [PathEnsemble([const(0.0), const(4.0)], [0.5, 0.5])]
        out = mu_suec_hat(xi, [0.1, 1.0], [0.25])
        assert out.value == 0.0

    def test_slope_mixture_table(self):
        xi = [PathEnsemble([ramp_to(1.0), ramp_to(1.0, 0.01)], [0.7, 0.3])]
        out = mu_suec_hat(xi, [0.5], [0.001, 0.1])
        i = out.eps_grid.index(0.5)
        assert out.table[i][out.delta_grid.index(0.001)] == 0.0
        assert out.table[i][out.delta_grid.index(0.1)] == pytest.approx(0.3)
        assert out.value == 0.0  # min over delta at eps=0.5 is 0

    def test_eps_above_twice_norm_vanishes(self):
        xi = [PathEnsemble([ramp_to(1.0)])]
        out = mu_suec_hat(xi, [2.5], [0.01, 0.5, 1.0])
        assert out.value == 0.0

    @given(small_ensemble(), st.lists(st.floats(0.02, 1), min_size=1, max_size=3))
    @settings(max_examples=40)
    def test_refining_delta_grid_never_increases(self, e, extra):
        base = mu_suec_hat([e], [0.5], [0.3])
        refined = mu_suec_hat([e], [0.5], sorted(set([0.3] + list(extra))))
        assert refined.value <= base.value + 1e-15


class TestPathProkhorov:
    def test_identical_ensembles(self):
        e = PathEnsemble([const(0.0), ramp_to(1.0)], [0.4, 0.6])
        assert path_prokhorov(e, e, 1.0) == 0.0

    def test_dirac_pair_formula(self):
        for D, lam in [(0.5, 1.0), (3.0, 1.0), (3.0, 6.0)]:
            a = PathEnsemble([const(0.0)])
            b = PathEnsemble([const(D)])
            assert path_prokhorov(a, b, lam) == pytest.approx(
                min(D / lam, 1.0), abs=1e-12
            )

    def test_mixture_vs_component(self):
        a, b = const(0.0), const(10.0)
        xi = PathEnsemble([a])
        eta = PathEnsemble([a, b], [0.5, 0.5])
        assert path_prokhorov(xi, eta, 1.0) == pytest.approx(0.5, abs=1e-12)

    @given(small_ensemble(), small_ensemble())
    @settings(max_examples=30, deadline=None)
    def test_lambda_monotone(self, e1, e2):
        vals = [path_prokhorov(e1, e2, lam) for lam in (0.5, 1.0, 2.0)]
        assert vals[1] <= vals[0] + 1e-9
        assert vals[2] <= vals[1] + 1e-9

    @given(small_ensemble(), small_ensemble(), st.floats(0.0, 1.0))
    @settings(max_examples=30, deadline=None)
    def test_mixture_bound(self, mu, nu, p):
        if mu.n_dim != nu.n_dim:
            return
        paths = list(mu.paths) + list(nu.paths)
        weights = np.concatenate([(1 - p) * mu.weights, p * nu.weights])
        mixed = PathEnsemble(paths, weights / weights.sum())
        assert path_prokhorov(mixed, mu, 1.0) <= p + 1e-9

    def test_metric_space_distances_are_exact(self):
        paths = [const(0.0), ramp_to(1.0), spike(0.5)]
        sp = path_metric_space(paths)
        for i in range(3):
            for j in range(3):
                assert sp.dist[i, j] == pytest.approx(
                    uniform_distance(paths[i], paths[j]), abs=1e-12
                )


class TestSampleWalks:
    def test_single_step_structure(self):
        e = sample_walks(1, 1, scale=2.0, seed=7)
        path = e.paths[0]
        assert list(path.knots) == [0.0, 1.0]
        assert abs(path.values[1, 0]) == pytest.approx(2.0)

    def test_seed_determinism(self):
        a = sample_walks(8, 5, scale=1.0, seed=123)
        b = sample_walks(8, 5, scale=1.0, seed=123)
        for x, y in zip(a.paths, b.paths):
            assert uniform_distance(x, y) == 0.0

    def test_zero_scale(self):
        e = sample_walks(4, 3, scale=0.0, seed=1)
        for p in e.paths:
            assert p.sup_norm == 0.0

    def test_diffusive_step_size(self):
        e = sample_walks(16, 2, scale=1.0, seed=5)
        incr = np.diff(e.paths[0].values[:, 0])
        assert np.allclose(np.abs(incr), 0.25)


class TestVerifyQsaa:
    def test_single_constant_ensemble_all_zero(self):
        xi = [PathEnsemble([const(0.2), const(0.3)], [0.5, 0.5])]
        report = verify_qsaa(
            xi, [1.0], [0.5], [0.25], [1.0], 0.05
        )
        assert report.status == "verified"
        assert report.tail.value == 0.0
        assert report.osc.value == 0.0
        for row in report.lambda_rows:
            assert row.covering <= 0.05 + 1e-12

    def test_spike_mixture_sandwich(self):
        xi = spike_family(p=0.2, K=5, width=0.01)
        report = verify_qsaa(
            xi, [0.5, 1.0, 2.0], [0.5], [0.05], [1.0], 0.01
        )
        assert report.status == "verified"
        assert report.tail.value == 0.0
        assert report.osc.value == pytest.approx(0.2, abs=1e-12)
        assert report.n_kept == 1 and report.n_discarded == 5
        for row in report.lambda_rows:
            assert row.covering == pytest.approx(0.2, abs=1e-9)
            assert row.covering <= row.guaranteed + 1e-12
        assert report.lower_ok

    def test_itemized_slacks_sum_to_guarantee(self):
        xi = spike_family()
        report = verify_qsaa(xi, [1.0], [0.5], [0.05], [1.0], 0.01)
        row = report.lambda_rows[0]
        total = row.slack_tail + row.slack_osc + row.slack_net + row.slack_eps
        assert row.guaranteed == pytest.approx(total, abs=1e-12)

    def test_walk_families_satisfy_sandwich(self):
        for n in (8, 32):
            xi = [sample_walks(n, 40, scale=1.0, seed=100 + n)]
            report = verify_qsaa(
                xi, [0.5, 1.0, 2.0], [0.25, 0.5], [0.01, 0.05], [2.0], 0.05
            )
            assert report.status in ("verified", "inconclusive")
            for row in report.lambda_rows:
                assert row.covering <= row.guaranteed + 1e-9
