"""Diffusion weights, weighted Poincare inequalities and Fokker-Planck
relaxation rates for isotropic probability densities."""

from .densities import (
    Density1D,
    IsotropicDensity,
    RadialMarginal,
    closed_form_weight,
    density_mass,
    eval_density,
    full_line_density,
    make_density,
    parse_density_spec,
    radial_marginal,
    sin_power_density,
    std_normal_1d,
    surface_measure,
    uniform_angle_density,
)
from .weights import (
    PQPair,
    WeightError,
    WeightFunction,
    angular_weight,
    barenblatt_pq,
    cauchy_pq,
    composite_Wstar,
    critical_tail_radius,
    gamma_radial_weight,
    hybrid_weight,
    quadrature_weight_function,
    maximize_family_constant,
    optimal_barenblatt_weight,
    optimal_cauchy_weight,
    p_weight_1d,
    p_weight_function,
    steady_state_residual,
    w_from_pq,
    weight_from_density,
)
from .quadrature import (
    HypersphericalGrid,
    Integrator,
    QuadratureError,
    TestFunction,
    build_grid,
    expectation,
    integrate_interval,
    interval_rule,
    split_dirichlet_radial_angular,
    variance,
    weighted_dirichlet,
)
from .corpus import (
    TestCorpus,
    corpus_1d,
    corpus_anisotropic,
    corpus_nd,
    corpus_outside_ball,
    corpus_product,
)
from .inequality import (
    InequalityReport,
    check_gaussian_anisotropic,
    check_hybrid,
    check_isotropic_Wstar,
    check_poincare_1d,
    check_product,
    check_refined_outside_ball,
    summarize_reports,
)
from .fpsolver import (
    DecayTrace,
    FPState,
    RadialGrid,
    Solver,
    SolverError,
    build_solver,
    dissipation_I_theta,
    evolve,
    fit_decay_rate,
    functional_theta,
    make_radial_grid,
    perturbed_initial_state,
    step,
    verify_hellinger_decay,
)

__version__ = "0.1.0"
