import math

import numpy as np
import pytest

from isofp.corpus import (
    corpus_1d,
    corpus_anisotropic,
    corpus_nd,
    corpus_outside_ball,
    corpus_product,
)
from isofp.densities import (
    full_line_density,
    make_density,
    radial_marginal,
    sin_power_density,
    std_normal_1d,
    uniform_angle_density,
    closed_form_weight,
)
from isofp.inequality import (
    check_gaussian_anisotropic,
    check_hybrid,
    check_isotropic_Wstar,
    check_poincare_1d,
    check_product,
    check_refined_outside_ball,
    summarize_reports,
)
from isofp.quadrature import TestFunction, weighted_dirichlet
from isofp.weights import (
    WeightFunction,
    angular_weight_function,
    critical_tail_radius,
    gamma_radial_weight,
    optimal_cauchy_weight,
    p_weight_function,
)


def unit_weight():
    return WeightFunction(lambda x: np.ones_like(np.asarray(x, dtype=float)),
                          "closed_form", (-math.inf, math.inf))


def assert_all_pass(reports, tol=1e-6):
    s = summarize_reports(reports)
    assert s["failed"] == 0, [r.witness for r in reports
                              if r.status == "ok" and not r.passed]
    assert s["passed"] > 0
    assert s["max_ratio"] <= 1.0 + tol
    return s


class TestCorpora:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_nd_size(self, n):
        assert len(corpus_nd(n, seed=0)) >= 40

    def test_1d_size(self):
        assert len(corpus_1d((-math.inf, math.inf), seed=0)) >= 40
        assert len(corpus_1d((0.0, math.inf), seed=0)) >= 40
        assert len(corpus_1d((0.0, 2 * math.pi), seed=0)) >= 40

    def test_outside_ball_size_and_support(self):
        c = corpus_outside_ball(3, 2.0, seed=0)
        assert len(c) >= 40
        rng = np.random.default_rng(5)
        pts = rng.uniform(-2.0, 2.0, size=(200, 3))
        pts = pts[np.linalg.norm(pts, axis=1) <= 2.0]
        for m in c:
            assert np.max(np.abs(m(pts))) < 1e-13
            assert np.max(np.abs(m.grad(pts))) < 1e-13

    def test_product_size(self):
        assert len(corpus_product([(-math.inf, math.inf)] * 2, seed=0)) >= 40

    def test_seed_reproducibility(self):
        a = corpus_nd(2, seed=7)
        b = corpus_nd(2, seed=7)
        pts = np.random.default_rng(1).normal(size=(50, 2))
        for ma, mb in zip(a, b):
            assert ma.name == mb.name
            assert np.array_equal(ma(pts), mb(pts))


class TestPoincare1D:
    def test_gaussian_sharp_witness(self):
        f = std_normal_1d()
        corpus = corpus_1d(f.support, seed=3, include_linear=True)
        reports = check_poincare_1d(f, unit_weight(), corpus)
        assert_all_pass(reports)
        linear = [r for r in reports if r.witness == "linear"][0]
        assert abs(linear.ratio - 1.0) < 1e-6

    def test_gamma_radial_weight(self):
        d = make_density("exponential_type", {"beta": 1.0}, 3)
        f = radial_marginal(d).as_density1d()
        reports = check_poincare_1d(f, gamma_radial_weight(1.0),
                                    corpus_1d(f.support, seed=4))
        assert_all_pass(reports)

    def test_uniform_azimuthal_cosine(self):
        from isofp.corpus import Fn1D

        f = uniform_angle_density()
        member = Fn1D("cos", lambda t: np.cos(np.asarray(t, dtype=float)),
                      lambda t: -np.sin(np.asarray(t, dtype=float)))
        reports = check_poincare_1d(f, angular_weight_function(2, 3), [member])
        assert reports[0].passed and reports[0].ratio <= 1.0

    def test_cauchy_full_line_with_K(self):
        d = make_density("cauchy_type", {"beta": 4.0}, 1)
        f = full_line_density(d)
        reports = check_poincare_1d(f, closed_form_weight(d),
                                    corpus_1d(f.support, seed=5))
        assert_all_pass(reports)

    def test_report_scale_invariance(self):
        from isofp.corpus import Fn1D

        f = std_normal_1d()
        g = Fn1D("tanh", lambda x: np.tanh(np.asarray(x, dtype=float)),
                 lambda x: 1.0 / np.cosh(np.asarray(x, dtype=float)) ** 2)
        s, c = 4.2, -3.1
        gs = Fn1D("tanh_scaled", lambda x: s * np.tanh(np.asarray(x, dtype=float)) + c,
                  lambda x: s / np.cosh(np.asarray(x, dtype=float)) ** 2)
        r1 = check_poincare_1d(f, unit_weight(), [g])[0]
        r2 = check_poincare_1d(f, unit_weight(), [gs])[0]
        assert abs(r1.ratio - r2.ratio) < 1e-9


class TestProduct:
    def test_two_normals_bilinear(self):
        f = std_normal_1d()
        corpus = corpus_product([f.support] * 2, seed=4, include_bilinear=True)
        reports = check_product([f, f], [unit_weight()] * 2, corpus)
        assert_all_pass(reports)
        bil = [r for r in reports if "bilinear" in r.witness][0]
        assert abs(bil.lhs - 1.0) < 1e-9
        assert abs(bil.rhs - 2.0) < 1e-9

    def test_single_coordinate_consistency(self):
        # a member depending on x_1 only reproduces the 1-D report
        from isofp.corpus import Fn1D

        f = std_normal_1d()
        g = Fn1D("gauss", lambda x: np.exp(-(np.asarray(x, dtype=float) - 0.5) ** 2),
                 lambda x: -2.0 * (np.asarray(x, dtype=float) - 0.5)
                 * np.exp(-(np.asarray(x, dtype=float) - 0.5) ** 2))
        r1d = check_poincare_1d(f, unit_weight(), [g])[0]
        corpus = [m for m in corpus_product([f.support] * 2, seed=4)
                  if m.name.startswith("only_x1")]
        reports = check_product([f, f], [unit_weight()] * 2, corpus)
        # the only_x1 members use the same shape family; compare the matching one
        match = [r for r in reports if "poly0_gauss" in r.witness]
        assert match, "expected an only_x1 gaussian-bump member"
        assert match[0].passed

    def test_spherical_factorization(self):
        d = make_density("gaussian", {"sigma": 1.0}, 3)
        f_r = radial_marginal(d).as_density1d()
        f1, f2 = sin_power_density(1), uniform_angle_density()
        corpus = corpus_product([f_r.support, f1.support, f2.support], seed=9)
        reports = check_product(
            [f_r, f1, f2],
            [p_weight_function(f_r), angular_weight_function(1, 3),
             angular_weight_function(2, 3)],
            corpus)
        assert_all_pass(reports)

    def test_dimension_cap(self):
        f = std_normal_1d()
        with pytest.raises(ValueError, match="at most 4"):
            check_product([f] * 5, [unit_weight()] * 5, [])


class TestWstar:
    def test_cauchy(self):
        d = make_density("cauchy_type", {"beta": 4.0}, 3)
        reports = check_isotropic_Wstar(d, corpus_nd(3, seed=12),
                                        optimal_cauchy_weight(4.0, 3))
        assert_all_pass(reports)

    def test_constant_phi_ratio_zero(self):
        d = make_density("gaussian", {"sigma": 1.0}, 2)
        phi = TestFunction("const", 2, lambda p: np.full(len(p), 2.5),
                           lambda p: np.zeros_like(p))
        reports = check_isotropic_Wstar(d, [phi], unit_weight())
        assert reports[0].passed and reports[0].ratio == 0.0

    def test_split_recorded_and_dominated(self):
        d = make_density("gaussian", {"sigma": 1.0}, 3)
        w = unit_weight()
        corpus = list(corpus_nd(3, seed=2))[:6]
        reports = check_isotropic_Wstar(d, corpus, w)
        for r in reports:
            split_sum = r.details["radial_part"] + r.details["angular_part"]
            # variance <= split bound <= composite-weight bound
            assert r.lhs <= split_sum * (1.0 + 1e-6) + 1e-15
            assert split_sum <= r.rhs * (1.0 + 1e-9) + 1e-15

    def test_inflated_weight_dominates(self):
        d = make_density("exponential_type", {"beta": 1.0}, 2)
        w = gamma_radial_weight(1.0)
        corpus = list(corpus_nd(2, seed=3))[:8]
        base = check_isotropic_Wstar(d, corpus, w)
        doubled = WeightFunction(lambda r: 2.0 * w(r), "closed_form", w.domain)
        inflated = check_isotropic_Wstar(d, corpus, doubled)
        for rb, ri in zip(base, inflated):
            assert ri.rhs >= rb.rhs * (1.0 - 1e-12)


class TestRefined:
    def test_gaussian_tail_bump(self):
        d = make_density("gaussian", {"sigma": 1.0}, 3)
        K = closed_form_weight(d)
        reports = check_refined_outside_ball(d, K, 2.0,
                                             corpus_outside_ball(3, 2.0, seed=5))
        assert_all_pass(reports)

    def test_exponential_tail(self):
        d = make_density("exponential_type", {"beta": 1.0}, 2)
        K = closed_form_weight(d)
        R = 1.0 + math.sqrt(3.0)
        reports = check_refined_outside_ball(d, K, R,
                                             corpus_outside_ball(2, R, seed=6))
        assert_all_pass(reports)

    def test_barenblatt_inside_support(self):
        d = make_density("barenblatt", {"a": 1.0, "p": 2.0}, 2)
        K = closed_form_weight(d)
        R = critical_tail_radius(d, K)
        assert 0.0 < R < 1.0
        corpus = corpus_outside_ball(2, R, r_max=1.0, seed=7)
        reports = check_refined_outside_ball(d, K, R, corpus)
        assert_all_pass(reports)

    def test_support_guard_rejects(self):
        d = make_density("gaussian", {"sigma": 1.0}, 3)
        K = closed_form_weight(d)
        intruder = list(corpus_nd(3, seed=1))[0]
        tail = list(corpus_outside_ball(3, 2.0, seed=5))[:2]
        reports = check_refined_outside_ball(d, K, 2.0, tail + [intruder])
        rejected = [r for r in reports if r.status == "rejected"]
        assert len(rejected) == 1
        assert "support" in rejected[0].details["reason"]

    def test_needs_two_dimensions(self):
        d = make_density("gaussian", {"sigma": 1.0}, 1)
        with pytest.raises(ValueError, match="n >= 2"):
            check_refined_outside_ball(d, closed_form_weight(d), 0.0, [])


@pytest.fixture(scope="module")
def setting():
    d = make_density("exponential_type", {"beta": 1.0}, 2)
    K = closed_form_weight(d)
    R = critical_tail_radius(d, K)
    w = gamma_radial_weight(1.0)
    return d, w, K, R


class TestHybrid:

    def test_inside_ball_member_has_zero_surface(self, setting):
        d, w, K, R = setting
        # supported strictly inside B_R: surface and outer terms vanish
        from isofp.corpus import _bump, _bump_deriv

        r1, wd = 0.5 * R, 0.2 * R

        def s(r):
            return _bump(r, 0.0, r1, 0.0, wd)

        def ds(r):
            return _bump_deriv(r, 0.0, r1, 0.0, wd)

        def ev(p):
            return s(np.linalg.norm(p, axis=1))

        def gr(p):
            rho = np.linalg.norm(p, axis=1)
            safe = np.where(rho == 0.0, 1.0, rho)
            return (ds(rho) / safe)[:, None] * p

        phi = TestFunction("inner_bump", 2, ev, gr,
                           radial_breakpoints=(r1, r1 + wd))
        reports = check_hybrid(d, w, K, R, [phi])
        r = reports[0]
        assert r.passed
        assert abs(r.details["surface_term"]) < 1e-14
        # the volume term reduces to the inner weight max(w, rho^2)
        inner = WeightFunction(
            lambda rr: np.maximum(w(rr), np.asarray(rr, dtype=float) ** 2),
            "closed_form", (0.0, math.inf), breakpoints=(r1, r1 + wd))
        direct = weighted_dirichlet(d, inner, phi)
        assert abs(r.details["volume_term"] - direct) < 1e-10 * max(direct, 1e-12)

    def test_outer_member_uses_K_only(self, setting):
        d, w, K, R = setting
        corpus = corpus_outside_ball(2, R + 1.0, seed=8)
        phi = list(corpus)[0]
        reports = check_hybrid(d, w, K, R, [phi])
        r = reports[0]
        assert abs(r.details["surface_term"]) < 1e-14
        direct = weighted_dirichlet(d, K, phi)
        assert abs(r.details["volume_term"] - direct) < 1e-9 * max(direct, 1e-12)

    def test_straddling_members_have_finite_empirical_constant(self, setting):
        d, w, K, R = setting
        corpus = corpus_nd(2, seed=31)
        reports = check_hybrid(d, w, K, R, corpus)
        ok = [r for r in reports if r.status == "ok"]
        assert len(ok) >= 40
        for r in ok:
            assert np.isfinite(r.details["empirical_constant"])
            assert r.details["empirical_constant"] <= 4.0  # default C_mult passes
        assert any("not pinned" in r.details["constants_note"] for r in ok)

    def test_unbounded_member_rejected(self, setting):
        d, w, K, R = setting
        corpus = corpus_nd(2, seed=1, include_linear=True)
        reports = check_hybrid(d, w, K, R, corpus)
        rejected = [r for r in reports if r.status == "rejected"]
        assert rejected and "bounded" in rejected[0].details["reason"]


class TestGaussianAnisotropic:
    def test_identity_sharp(self):
        V = np.eye(2)
        corpus = corpus_anisotropic(V, seed=11)
        reports = check_gaussian_anisotropic(V, np.zeros(2), corpus)
        assert_all_pass(reports)
        lin = [r for r in reports if r.witness == "linear_x1"][0]
        assert abs(lin.ratio - 1.0) < 1e-6

    def test_diagonal_second_axis_sharp(self):
        V = np.diag([1.0, 4.0])
        corpus = corpus_anisotropic(V, seed=12)
        reports = check_gaussian_anisotropic(V, np.zeros(2), corpus)
        assert_all_pass(reports)
        lin = [r for r in reports if r.witness == "linear_x2"][0]
        assert abs(lin.lhs - 4.0) < 1e-8
        assert abs(lin.rhs - 4.0) < 1e-8

    def test_rotated_with_mean(self):
        th = math.radians(30.0)
        Q = np.array([[math.cos(th), -math.sin(th)],
                      [math.sin(th), math.cos(th)]])
        V = Q @ np.diag([1.0, 4.0]) @ Q.T
        u = np.array([0.4, -0.7])
        corpus = corpus_anisotropic(V, u, seed=13)
        reports = check_gaussian_anisotropic(V, u, corpus)
        s = assert_all_pass(reports)
        top = [r for r in reports if r.witness == "linear_top_eigvec"][0]
        assert abs(top.ratio - 1.0) < 1e-6
        bottom = [r for r in reports if r.witness == "linear_bottom_eigvec"][0]
        assert abs(bottom.ratio - 0.25) < 1e-8

    def test_non_spd_rejected(self):
        with pytest.raises(ValueError, match="positive definite"):
            check_gaussian_anisotropic(np.diag([1.0, -2.0]), np.zeros(2), [])

    def test_non_symmetric_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            check_gaussian_anisotropic(np.array([[1.0, 0.5], [0.0, 1.0]]),
                                       np.zeros(2), [])
