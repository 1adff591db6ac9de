import math

import numpy as np
import pytest

from isofp.densities import make_density, radial_marginal
from isofp.quadrature import (
    HypersphericalGrid,
    Integrator,
    QuadratureError,
    TestFunction,
    build_grid,
    integrate_interval,
    interval_rule,
    split_dirichlet_radial_angular,
    variance,
    weighted_dirichlet,
)
from isofp.weights import WeightFunction


def const_weight(c, hi=math.inf):
    return WeightFunction(lambda r: np.full_like(np.asarray(r, dtype=float), c),
                          "closed_form", (0.0, hi))


class TestIntegrateInterval:
    def test_exponential_tail(self):
        val, err = integrate_interval(lambda y: math.exp(-y), 0.0, math.inf)
        assert abs(val - 1.0) < 1e-12
        assert err <= max(1e-10 * abs(val), 1e-13)

    def test_sine(self):
        val, _ = integrate_interval(math.sin, 0.0, math.pi)
        assert abs(val - 2.0) < 1e-12

    def test_algebraic_endpoint(self):
        # Barenblatt-type endpoint behaviour
        val, _ = integrate_interval(lambda y: math.sqrt(1.0 - y), 0.0, 1.0)
        assert abs(val - 2.0 / 3.0) < 1e-12

    def test_full_line(self):
        val, _ = integrate_interval(lambda x: math.exp(-x * x / 2.0),
                                    -math.inf, math.inf)
        assert abs(val - math.sqrt(2.0 * math.pi)) < 1e-10

    def test_budget_exhaustion_carries_estimate(self):
        integrator = Integrator(rel_tol=1e-13, abs_tol=1e-15, max_subdivisions=3)
        with pytest.raises(QuadratureError) as exc:
            integrate_interval(lambda x: math.sin(50.0 / (x + 0.01)), 0.0, 1.0,
                               integrator)
        assert np.isfinite(exc.value.value)

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            integrate_interval(math.sin, 1.0, 1.0)

    def test_breakpoints_restore_accuracy(self):
        kink = lambda x: abs(x - 0.3) ** 1.5
        exact = (0.3 ** 2.5 + 0.7 ** 2.5) / 2.5
        val, _ = integrate_interval(kink, 0.0, 1.0, breakpoints=(0.3,))
        assert abs(val - exact) < 1e-12


class TestIntervalRule:
    def test_finite_polynomial_exact(self):
        x, w = interval_rule(0.0, 2.0, order=8, levels=4)
        assert abs(np.dot(w, x ** 7) - 2.0 ** 8 / 8.0) < 1e-12

    def test_semi_infinite_gaussian(self):
        x, w = interval_rule(0.0, math.inf, order=12, levels=20)
        assert abs(np.dot(w, np.exp(-x ** 2 / 2.0)) - math.sqrt(math.pi / 2.0)) < 1e-12


GRID_CASES = [
    ("gaussian", {"sigma": 1.0}, 1),
    ("gaussian", {"sigma": 2.5}, 3),
    ("cauchy_type", {"beta": 2.0}, 2),
    ("cauchy_type", {"beta": 4.0}, 3),
    ("exponential_type", {"beta": 1.0}, 2),
    ("barenblatt", {"a": 1.0, "p": 2.0}, 2),
    ("barenblatt", {"a": 1.0, "p": 3.0}, 3),
]


class TestHypersphericalGrid:
    @pytest.mark.parametrize("kind,params,n", GRID_CASES)
    def test_unit_mass(self, kind, params, n):
        d = make_density(kind, params, n)
        grid = HypersphericalGrid(d)
        assert abs(grid.mass - 1.0) < 1e-7

    def test_unit_mass_n4(self):
        d = make_density("gaussian", {"sigma": 1.0}, 4)
        grid = HypersphericalGrid(d, angular_order=12, radial_levels=10)
        assert abs(grid.mass - 1.0) < 1e-7

    def test_rejects_n5(self):
        d = make_density("gaussian", {"sigma": 1.0}, 5)
        with pytest.raises(ValueError):
            HypersphericalGrid(d)


def radial_test_function(n, sigma=1.0):
    def ev(p):
        u = np.einsum("ij,ij->i", p, p)
        return np.exp(-u / sigma)

    def gr(p):
        u = np.einsum("ij,ij->i", p, p)
        return (-2.0 / sigma) * np.exp(-u / sigma)[:, None] * p

    return TestFunction("gauss_profile", n, ev, gr)


def linear_test_function(n, axis=0):
    def ev(p):
        return p[:, axis].copy()

    def gr(p):
        out = np.zeros_like(p)
        out[:, axis] = 1.0
        return out

    return TestFunction("linear", n, ev, gr, bounded=False)


class TestTestFunction:
    def test_gradient_self_test_catches_bad_gradient(self):
        with pytest.raises(ValueError, match="self-test"):
            TestFunction("broken", 2,
                         lambda p: np.einsum("ij,ij->i", p, p),
                         lambda p: 3.0 * p)  # should be 2 p

    def test_support_flag_checked(self):
        def ev(p):
            return np.exp(-np.einsum("ij,ij->i", p, p))

        def gr(p):
            return -2.0 * np.exp(-np.einsum("ij,ij->i", p, p))[:, None] * p

        with pytest.raises(ValueError, match="outside_ball"):
            TestFunction("liar", 2, ev, gr, support=("outside_ball", 1.0))


class TestVariance:
    def test_constant_is_zero(self):
        d = make_density("gaussian", {"sigma": 1.0}, 2)
        phi = TestFunction("const", 2,
                           lambda p: np.ones(len(p)),
                           lambda p: np.zeros_like(p))
        assert variance(d, phi) == 0.0

    def test_gaussian_linear(self):
        d = make_density("gaussian", {"sigma": 1.0}, 1)
        assert abs(variance(d, linear_test_function(1)) - 1.0) < 1e-10

    def test_shift_invariance(self):
        d = make_density("cauchy_type", {"beta": 3.0}, 2)
        phi = radial_test_function(2)
        grid = build_grid(d, [phi])
        v = variance(d, phi, grid)
        shifted = TestFunction("shifted", 2, lambda p: phi(p) + 11.5, phi.grad)
        assert abs(variance(d, shifted, grid) - v) < 1e-10 * max(1.0, v)

    def test_homogeneity(self):
        d = make_density("exponential_type", {"beta": 1.0}, 2)
        phi = radial_test_function(2)
        grid = build_grid(d, [phi])
        v = variance(d, phi, grid)
        s = 3.7
        scaled = TestFunction("scaled", 2, lambda p: s * phi(p),
                              lambda p: s * phi.grad(p))
        assert abs(variance(d, scaled, grid) - s ** 2 * v) < 1e-10 * s ** 2 * v

    def test_truncated_radius_against_monte_carlo(self):
        # Monte Carlo oracle: inverse-CDF sampling of the radial marginal
        d = make_density("cauchy_type", {"beta": 3.0}, 2)
        cap = 10.0

        def ev(p):
            return np.minimum(np.linalg.norm(p, axis=1), cap)

        def gr(p):
            rho = np.linalg.norm(p, axis=1)
            safe = np.where(rho == 0.0, 1.0, rho)
            return np.where(rho < cap, 1.0, 0.0)[:, None] * p / safe[:, None]

        phi = TestFunction("capped_radius", 2, ev, gr, radial_breakpoints=(cap,),
                           self_test=False)  # kink at rho = cap
        v = variance(d, phi)

        marg = radial_marginal(d)
        r_grid = np.concatenate([[0.0], np.geomspace(1e-4, 2e4, 4000)])
        pdf = marg.eval(r_grid)
        cdf = np.concatenate([[0.0], np.cumsum(np.diff(r_grid)
                                               * 0.5 * (pdf[1:] + pdf[:-1]))])
        cdf /= cdf[-1]
        rng = np.random.default_rng(987)
        u = rng.uniform(size=1_000_000)
        rho = np.interp(u, cdf, r_grid)
        samples = np.minimum(rho, cap)
        mc_var = samples.var()
        m2 = (samples - samples.mean()) ** 2
        se = math.sqrt(m2.var() / len(samples))
        assert v > 0
        assert abs(v - mc_var) < 3.0 * se


class TestWeightedDirichlet:
    def test_constant_phi(self):
        d = make_density("gaussian", {"sigma": 1.0}, 2)
        phi = TestFunction("const", 2, lambda p: np.ones(len(p)),
                           lambda p: np.zeros_like(p))
        assert weighted_dirichlet(d, const_weight(1.0), phi) == 0.0

    def test_gaussian_linear_1d(self):
        sigma = 1.7
        d = make_density("gaussian", {"sigma": sigma}, 1)
        val = weighted_dirichlet(d, const_weight(sigma), linear_test_function(1))
        assert abs(val - sigma) < 1e-10

    def test_dimensional_reduction_oracle(self):
        # radial integrand reduces to a 1-D integral against the marginal
        d = make_density("exponential_type", {"beta": 1.0}, 2)
        w = WeightFunction(lambda r: 1.0 + np.asarray(r, dtype=float),
                           "closed_form", (0.0, math.inf))

        def ev(p):
            return np.exp(-np.linalg.norm(p, axis=1))

        def gr(p):
            rho = np.linalg.norm(p, axis=1)
            safe = np.where(rho == 0.0, 1.0, rho)
            return (-np.exp(-rho) / safe)[:, None] * p

        phi = TestFunction("exp_radial", 2, ev, gr)
        val = weighted_dirichlet(d, w, phi)
        sn = d.geometry_factor
        oracle, _ = integrate_interval(
            lambda r: sn * (1.0 + r) * math.exp(-2.0 * r) * r * float(d.eval(r)),
            0.0, math.inf)
        assert abs(val - oracle) < 1e-8


class TestSplit:
    def test_radial_phi_has_no_angular_part(self):
        d = make_density("gaussian", {"sigma": 1.0}, 3)
        _, angular = split_dirichlet_radial_angular(d, radial_test_function(3),
                                                    const_weight(1.0))
        assert abs(angular) < 1e-20

    def test_angular_phi_has_no_radial_part(self):
        d = make_density("gaussian", {"sigma": 1.0}, 3)

        def ev(p):
            rho = np.linalg.norm(p, axis=1)
            safe = np.where(rho == 0.0, 1.0, rho)
            return p[:, 0] / safe

        def gr(p):
            rho = np.linalg.norm(p, axis=1)
            safe = np.where(rho == 0.0, 1.0, rho)
            out = -(p[:, 0] / safe ** 3)[:, None] * p
            out[:, 0] += 1.0 / safe
            return out

        phi = TestFunction("cos_theta1", 3, ev, gr, self_test=False)
        radial, angular = split_dirichlet_radial_angular(d, phi, const_weight(1.0))
        assert abs(radial) < 1e-20
        assert angular > 0

    def test_composite_weight_dominates_split(self):
        # the W* Dirichlet form dominates the sharper radial+angular bound
        from isofp.weights import composite_Wstar

        d = make_density("gaussian", {"sigma": 1.0}, 3)
        w = const_weight(1.0)
        phi = linear_test_function(3)
        grid = build_grid(d, [phi])
        radial, angular = split_dirichlet_radial_angular(d, phi, w, grid=grid)
        full = weighted_dirichlet(d, composite_Wstar(d, w), phi, grid=grid)
        assert radial + angular <= full * (1.0 + 1e-12)
