"""Construction of Poincare weights.

The central map sends an isotropic density to the diffusion coefficient of
the Fokker-Planck equation it solves,

    K(rho) = int_{rho^2}^{i_+^2} f(sqrt(y)) dy / (2 f(rho)),

so that d/drho [K f] + rho f = 0.  On top of that sit the one-dimensional
integral weight P(x) for an arbitrary density with finite mean, the
P/Q' family with its alpha-optimisation for Cauchy-type and Barenblatt
densities, the angular weights of the hyperspherical product
decomposition, the composite weight W* = max(w, pi^2 rho^2 / 2), the
hybrid weight that switches to K outside a ball, and the critical radius
of the tail condition (n-1) K(r) / r^2 <= 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .densities import sin_power_density
from .quadrature import Integrator, integrate_interval

__all__ = [
    "WeightFunction",
    "WeightError",
    "PQPair",
    "weight_from_density",
    "quadrature_weight_function",
    "p_weight_1d",
    "p_weight_function",
    "w_from_pq",
    "cauchy_pq",
    "barenblatt_pq",
    "maximize_family_constant",
    "optimal_cauchy_weight",
    "optimal_barenblatt_weight",
    "gamma_radial_weight",
    "angular_weight",
    "angular_weight_function",
    "composite_Wstar",
    "hybrid_weight",
    "critical_tail_radius",
    "steady_state_residual",
]


class WeightError(ValueError):
    pass


_WEIGHT_INTEGRATOR = Integrator(rel_tol=1e-12, abs_tol=1e-16, max_subdivisions=400)


@dataclass(frozen=True)
class WeightFunction:
    """An evaluable weight rho -> w(rho) >= 0 with provenance metadata.

    ``breakpoints`` lists interior kinks (e.g. the crossover of a composite
    max, or the switching radius of the hybrid weight) so quadrature grids
    can split panels there.  Immutable; safe to share across workers.
    """

    fn: Callable
    provenance: str
    domain: tuple
    params: tuple = ()
    breakpoints: tuple = ()

    def __call__(self, rho):
        return np.asarray(self.fn(np.asarray(rho, dtype=float)), dtype=float)

    def param(self, name, default=None):
        for key, val in self.params:
            if key == name:
                return val
        return default


# ---------------------------------------------------------------------------
# The density -> diffusion coefficient map
# ---------------------------------------------------------------------------


def weight_from_density(d, rho, integrator=None):
    """Diffusion coefficient of the density at radius rho, by quadrature.

    Evaluates int_{rho^2}^{i_+^2} f(sqrt(y)) dy / (2 f(rho)).  For infinite
    supports the integral is split at rho^2 + 1 so the semi-infinite tail
    is handled separately from the near field.
    """
    integrator = integrator or _WEIGHT_INTEGRATOR
    rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
    i_plus = d.support_radius
    out = np.empty_like(rho_arr)
    for idx, r in enumerate(rho_arr):
        if not 0.0 <= r < i_plus:
            raise WeightError(f"rho = {r} outside the open support [0, {i_plus})")
        fr = float(d.eval(r))
        if fr <= 0.0:
            raise WeightError(f"density vanishes at rho = {r}; weight undefined")
        lo = r * r
        hi = i_plus ** 2 if np.isfinite(i_plus) else math.inf
        g = lambda y: float(d.eval(math.sqrt(y)))
        if np.isfinite(hi):
            val, _ = integrate_interval(g, lo, hi, integrator)
        else:
            split = lo + 1.0
            near, _ = integrate_interval(g, lo, split, integrator)
            tail, _ = integrate_interval(g, split, math.inf, integrator)
            val = near + tail
        out[idx] = val / (2.0 * fr)
    return out if np.ndim(rho) else float(out[0])


def quadrature_weight_function(d, integrator=None):
    """The quadrature weight wrapped as a WeightFunction."""
    return WeightFunction(
        lambda r: weight_from_density(d, r, integrator),
        provenance="quadrature",
        domain=(0.0, d.support_radius),
    )


def steady_state_residual(d, K, rho_grid, h_rel=1e-3):
    """Residual of d/drho [K f] + (rho - m) f on interior grid points.

    The derivative is a fourth-order central difference; m is the drift
    centre of the density (0 for isotropic entries, 1 for the inverse
    Gamma).  Returns the raw residual array; callers normalise by the
    scale of the drift term.
    """
    rho = np.asarray(rho_grid, dtype=float)
    h = h_rel * np.maximum(np.abs(rho), 1.0)
    i_plus = d.support_radius
    lo = 0.0 if not d.half_line else 1e-12
    if np.any(rho - 2 * h <= lo) or np.any(rho + 2 * h >= i_plus):
        raise ValueError("grid points must be interior with margin 2h")

    def kf(r):
        return K(r) * d.eval(r)

    deriv = (-kf(rho + 2 * h) + 8 * kf(rho + h) - 8 * kf(rho - h) + kf(rho - 2 * h)) / (12 * h)
    return deriv + (rho - d.drift_mean) * d.eval(rho)


# ---------------------------------------------------------------------------
# The 1-D integral weight P(x) for a density with finite mean
# ---------------------------------------------------------------------------


def p_weight_1d(f, m, x, integrator=None):
    """Piecewise integral weight of a 1-D density with mean m.

    P(x) = int_a^x (m - y) f(y) dy / f(x) for x <= m, and
    P(x) = int_x^b (y - m) f(y) dy / f(x) for x > m.  The branches agree at
    x = m because m is the mean.
    """
    integrator = integrator or _WEIGHT_INTEGRATOR
    if m is None:
        m = f.mean
    a, b = f.support
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(xs)
    for idx, xv in enumerate(xs):
        if not a < xv < b:
            raise WeightError(f"x = {xv} outside the open support ({a}, {b})")
        fx = float(f(xv))
        if fx <= 0.0:
            raise WeightError(f"density {f.name} vanishes at x = {xv}")
        if xv <= m:
            val, _ = integrate_interval(lambda y: (m - y) * float(f(y)), a, xv,
                                        integrator, breakpoints=f.breakpoints)
        else:
            val, _ = integrate_interval(lambda y: (y - m) * float(f(y)), xv, b,
                                        integrator, breakpoints=f.breakpoints)
        out[idx] = val / fx
    return out if np.ndim(x) else float(out[0])


def p_weight_function(f, integrator=None):
    """P(x) of the density wrapped as a WeightFunction (linear-drift family)."""
    m = f.mean
    return WeightFunction(
        lambda x: p_weight_1d(f, m, x, integrator),
        provenance="pq_family",
        domain=f.support,
        params=(("drift", "linear"),),
    )


# ---------------------------------------------------------------------------
# The P/Q' family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PQPair:
    """Diffusion P and drift Q of a 1-D Fokker-Planck equation with the
    target density as steady state.

    ``Qprime`` is the analytic derivative when available; otherwise a
    fourth-order centred difference with relative step 1e-5 is used, so the
    positivity check is not polluted by difference noise.
    """

    P: Callable
    Q: Callable
    domain: tuple
    Qprime: Optional[Callable] = None
    alpha: Optional[float] = None
    name: str = "pq"

    def qprime(self, x):
        x = np.asarray(x, dtype=float)
        if self.Qprime is not None:
            return np.asarray(self.Qprime(x), dtype=float)
        h = 1e-5 * np.maximum(np.abs(x), 1.0)
        return (-self.Q(x + 2 * h) + 8 * self.Q(x + h)
                - 8 * self.Q(x - h) + self.Q(x - 2 * h)) / (12 * h)


def _validation_grid(domain, size=400):
    lo, hi = domain
    if np.isinf(hi):
        # geometric sweep covering several decades
        return np.concatenate([
            np.geomspace(max(lo, 1e-6) + 1e-9, 1.0, size // 2),
            np.geomspace(1.0, 1e4, size // 2),
        ])
    span = hi - lo
    return lo + span * (np.arange(1, size + 1) / (size + 1.0))


def w_from_pq(pq, validation_size=400):
    """Weight w = P / Q' of a valid pair; rejects pairs with Q' <= 0.

    Validity is checked on a grid: P > 0, Q' > 0, and the boundary signs
    lim_{x -> lo} Q < 0 and lim_{x -> hi} Q > 0.
    """
    grid = _validation_grid(pq.domain, validation_size)
    p_vals = np.asarray(pq.P(grid), dtype=float)
    qp_vals = pq.qprime(grid)
    if np.any(p_vals <= 0.0):
        raise WeightError(f"{pq.name}: P must be positive on the open domain")
    if np.any(qp_vals <= 0.0):
        bad = grid[qp_vals <= 0.0][0]
        raise WeightError(f"{pq.name}: Q' <= 0 detected at x = {bad:.6g}")
    lo, hi = pq.domain
    eps = 1e-6 * (1.0 if np.isinf(hi) else hi - lo)
    q_lo = float(pq.Q(lo + eps))
    q_hi = float(pq.Q(hi - eps)) if np.isfinite(hi) else float(pq.Q(1e6))
    if q_lo >= 0.0 or q_hi <= 0.0:
        raise WeightError(f"{pq.name}: drift boundary signs violated "
                          f"(Q(lo+) = {q_lo:.3g}, Q(hi-) = {q_hi:.3g})")
    params = () if pq.alpha is None else (("alpha", pq.alpha),)
    return WeightFunction(
        lambda x: np.asarray(pq.P(x), dtype=float) / pq.qprime(x),
        provenance="pq_family",
        domain=pq.domain,
        params=params + (("pair", pq.name),),
    )


def cauchy_pq(beta, n, alpha):
    """The alpha-family pair for the radial Cauchy-type marginal.

    P = (1+rho^2)^alpha, Q = 2(beta-alpha) rho (1+rho^2)^(alpha-1)
        - (n-1) (1+rho^2)^alpha / rho, with analytic Q'.
    Requires 1/2 < alpha <= 1 and beta - alpha > (n-1)/2.
    """
    if not 0.5 < alpha <= 1.0:
        raise WeightError("alpha must lie in (1/2, 1]")
    if beta - alpha <= (n - 1) / 2.0:
        raise WeightError("requires beta - alpha > (n-1)/2")

    def P(r):
        r = np.asarray(r, dtype=float)
        return (1.0 + r ** 2) ** alpha

    def Q(r):
        r = np.asarray(r, dtype=float)
        s = 1.0 + r ** 2
        return 2.0 * (beta - alpha) * r * s ** (alpha - 1.0) - (n - 1) * s ** alpha / r

    def Qp(r):
        r = np.asarray(r, dtype=float)
        s = 1.0 + r ** 2
        term1 = 2.0 * (beta - alpha) * (1.0 + r ** 2 * (2.0 * alpha - 1.0)) * s ** (alpha - 2.0)
        term2 = -2.0 * alpha * (n - 1) * s ** (alpha - 1.0)
        term3 = (n - 1) * s ** alpha / r ** 2
        return term1 + term2 + term3

    return PQPair(P, Q, (0.0, math.inf), Qprime=Qp, alpha=alpha,
                  name=f"cauchy_pq(beta={beta},n={n},alpha={alpha})")


def barenblatt_pq(a, p, n, alpha):
    """The alpha-family pair for the radial Barenblatt marginal on (0, a).

    P = (a^2-rho^2)^alpha, Q = 2(alpha+beta) rho (a^2-rho^2)^(alpha-1)
        - (n-1)(a^2-rho^2)^alpha / rho, with beta = 1/(p-1) and analytic Q'.
    """
    if not 0.5 < alpha <= 1.0:
        raise WeightError("alpha must lie in (1/2, 1]")
    if p <= 1.0 or a <= 0.0:
        raise WeightError("requires p > 1 and a > 0")
    beta = 1.0 / (p - 1.0)

    def P(r):
        r = np.asarray(r, dtype=float)
        return (a ** 2 - r ** 2) ** alpha

    def Q(r):
        r = np.asarray(r, dtype=float)
        s = a ** 2 - r ** 2
        return 2.0 * (alpha + beta) * r * s ** (alpha - 1.0) - (n - 1) * s ** alpha / r

    def Qp(r):
        r = np.asarray(r, dtype=float)
        s = a ** 2 - r ** 2
        term1 = 2.0 * (alpha + beta) * (a ** 2 - r ** 2 * (2.0 * alpha - 1.0)) * s ** (alpha - 2.0)
        term2 = (n - 1) * s ** (alpha - 1.0) * (a ** 2 + (2.0 * alpha - 1.0) * r ** 2) / r ** 2
        return term1 + term2

    return PQPair(P, Q, (0.0, a), Qprime=Qp, alpha=alpha,
                  name=f"barenblatt_pq(a={a},p={p},n={n},alpha={alpha})")


# ---------------------------------------------------------------------------
# Family optimisation over alpha in (1/2, 1]
# ---------------------------------------------------------------------------


def maximize_family_constant(h, lo=0.5, hi=1.0, tol=1e-13):
    """Golden-section maximisation of h over (lo, hi] with an explicit
    boundary comparison, so monotone families resolve to alpha = 1 exactly."""
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = h(c), h(d)
    while b - a > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = h(d)
        else:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = h(c)
    alpha = 0.5 * (a + b)
    best = h(alpha)
    if h(hi) >= best:
        return hi, h(hi)
    return alpha, best


def optimal_cauchy_weight(beta, n):
    """Optimal family weight for the Cauchy-type density.

    w = (1+rho^2)/(beta - n/2)^2 when (n+1)/2 < beta < n/2 + 1, and
    w = (1+rho^2)/(2 beta - (n+1)) when beta >= n/2 + 1.  The coefficient is
    1/(2 h(alpha_max)) with h(alpha) = (2 alpha - 1)(beta* - alpha) and
    beta* = beta - (n-1)/2; the closed-form stationary point is used, so
    the numeric search is only a cross-check.
    """
    if beta <= (n + 1) / 2.0:
        raise WeightError(f"requires beta > (n+1)/2 = {(n + 1) / 2.0}")
    beta_star = beta - (n - 1) / 2.0
    alpha_stat = beta_star / 2.0 + 0.25
    alpha_max = alpha_stat if alpha_stat <= 1.0 else 1.0
    h_max = (2.0 * alpha_max - 1.0) * (beta_star - alpha_max)
    coef = 1.0 / (2.0 * h_max)
    return WeightFunction(
        lambda r: coef * (1.0 + np.asarray(r, dtype=float) ** 2),
        provenance="pq_family",
        domain=(0.0, math.inf),
        params=(("alpha", alpha_max), ("beta", beta), ("coefficient", coef)),
    )


def optimal_barenblatt_weight(p, n, a):
    """Optimal family weight for the Barenblatt density:
    w = (p-1)/(2(n(p-1)+1)) (a^2 - rho^2).

    h(alpha) = (2 alpha - 1)(alpha + beta + n - 1) with beta = 1/(p-1) is
    increasing on (1/2, 1], so the supremum sits at alpha = 1 with
    denominator 2 h(1) = 2(n + beta).
    """
    if p <= 1.0 or a <= 0.0:
        raise WeightError("requires p > 1 and a > 0")
    beta = 1.0 / (p - 1.0)
    coef = 1.0 / (2.0 * (n + beta))  # equals (p-1)/(2(n(p-1)+1))
    return WeightFunction(
        lambda r: coef * (a ** 2 - np.asarray(r, dtype=float) ** 2),
        provenance="pq_family",
        domain=(0.0, a),
        params=(("alpha", 1.0), ("beta", beta), ("coefficient", coef)),
    )


def gamma_radial_weight(beta):
    """Weight w(rho) = beta rho for the Gamma radial marginal of the
    exponential-type density (adopted from the generalized-Gamma result and
    verified through the inequality checks, not re-derived here)."""
    return WeightFunction(
        lambda r: beta * np.asarray(r, dtype=float),
        provenance="closed_form",
        domain=(0.0, math.inf),
        params=(("beta", beta),),
    )


# ---------------------------------------------------------------------------
# Angular weights
# ---------------------------------------------------------------------------


def angular_weight(i, n, theta, integrator=None):
    """One-dimensional weight of the i-th angular factor in dimension n.

    For i <= n-2 (polar): P_i(theta) from the integral formula applied to
    the density sin^i(theta) on (0, pi), mean pi/2.  For i = n-1
    (azimuthal): exactly pi theta - theta^2 / 2 on (0, 2 pi).
    """
    if not 1 <= i <= n - 1:
        raise WeightError(f"angular index {i} out of range 1..{n - 1}")
    th = np.asarray(theta, dtype=float)
    if i == n - 1:
        if np.any(th <= 0.0) or np.any(th >= 2.0 * math.pi):
            raise WeightError("azimuthal angle must lie in (0, 2 pi)")
        return math.pi * th - th ** 2 / 2.0
    if np.any(th <= 0.0) or np.any(th >= math.pi):
        raise WeightError("polar angle must lie in (0, pi)")
    f = sin_power_density(i)
    return p_weight_1d(f, math.pi / 2.0, theta, integrator)


def angular_weight_function(i, n):
    return WeightFunction(
        lambda th: angular_weight(i, n, th),
        provenance="angular",
        domain=(0.0, 2.0 * math.pi if i == n - 1 else math.pi),
        params=(("index", i),),
    )


# ---------------------------------------------------------------------------
# Composite and hybrid weights
# ---------------------------------------------------------------------------


def _crossovers(f, g, lo, hi, scan=4000):
    """Radii where f - g changes sign (kinks of max(f, g))."""
    r = np.linspace(lo + 1e-9, hi - 1e-9, scan)
    diff = np.asarray(f(r)) - np.asarray(g(r))
    sign = np.sign(diff)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    roots = []
    for k in idx:
        roots.append(brentq(lambda x: float(f(x) - g(x)), r[k], r[k + 1], xtol=1e-14))
    return tuple(roots)


def composite_Wstar(d, w_radial):
    """Composite weight W*(rho) = max(w(rho), pi^2 rho^2 / 2)."""
    quad_part = lambda r: (math.pi ** 2 / 2.0) * np.asarray(r, dtype=float) ** 2
    hi = min(_numeric_support(d) * 0.95, 100.0) if not np.isfinite(d.support_radius) \
        else d.support_radius
    kinks = _crossovers(w_radial, quad_part, 0.0, hi)
    return WeightFunction(
        lambda r: np.maximum(w_radial(r), quad_part(r)),
        provenance="composite_wstar",
        domain=(0.0, d.support_radius),
        params=w_radial.params,
        breakpoints=kinks,
    )


def hybrid_weight(d, w_radial, K, R):
    """Weight of the hybrid inequality:
    max(w(rho), rho^2) for rho <= R and K(rho) for rho > R."""
    sq = lambda r: np.asarray(r, dtype=float) ** 2
    kinks = tuple(k for k in _crossovers(w_radial, sq, 0.0, R) if k < R) + (R,)

    def fn(r):
        r = np.asarray(r, dtype=float)
        inner = np.maximum(w_radial(r), sq(r))
        return np.where(r <= R, inner, K(r))

    return WeightFunction(
        fn, provenance="hybrid", domain=(0.0, d.support_radius),
        params=(("R", float(R)),), breakpoints=kinks,
    )


# ---------------------------------------------------------------------------
# Critical radius of the tail condition (b1)
# ---------------------------------------------------------------------------


def _numeric_support(d):
    """Largest radius at which the density is numerically positive."""
    i_plus = d.support_radius
    if np.isfinite(i_plus):
        return i_plus
    lo, hi = 1.0, 2.0
    while float(d.eval(hi)) > 0.0 and hi < 1e8:
        lo, hi = hi, hi * 2.0
    if hi >= 1e8:
        return 1e8
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if float(d.eval(mid)) > 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def critical_tail_radius(d, K, scan=4000, tail_check=2000):
    """Smallest R >= 0 with (n-1) K(r) / r^2 <= 1/2 for all r in [R, i_+).

    Vacuous in dimension one (returns 0).  Assumes the ratio envelope is
    eventually decreasing (true for the catalog weights) and verifies the
    inequality on a dense tail grid instead of proving monotonicity; the
    grid is capped where the density stays numerically representable, so
    quadrature-backed weights remain evaluable.  Raises WeightError when
    the condition is never satisfiable, e.g. for Cauchy-type densities
    with beta <= n where the ratio limit exceeds 1/2.
    """
    n = d.n
    if n == 1:
        return 0.0

    def g(r):
        return (n - 1) * float(K(r)) / r ** 2 - 0.5

    i_plus = d.support_radius
    r_hi = min(_numeric_support(d) * 0.98, 1e6)
    if np.isfinite(i_plus):
        rs = np.linspace(i_plus * 1e-4, min(r_hi, i_plus * (1.0 - 1e-9)), scan)
    else:
        rs = np.geomspace(1e-4, r_hi, scan)
    vals = np.array([g(r) for r in rs])
    if vals[-1] > 0.0:
        raise WeightError(
            "tail condition (n-1) K / r^2 <= 1/2 is never satisfied on the support"
        )
    pos = np.nonzero(vals > 0.0)[0]
    if len(pos) == 0:
        R = 0.0
    else:
        k = pos[-1]
        R = brentq(g, rs[k], rs[k + 1], xtol=1e-13, rtol=1e-13)
    tail = np.linspace(R, rs[-1], tail_check) if R < rs[-1] else np.array([R])
    tail_vals = (n - 1) * K(tail) / np.maximum(tail, 1e-300) ** 2
    if np.any(tail_vals > 0.5 + 1e-12):
        raise WeightError("tail verification failed: ratio exceeds 1/2 beyond R")
    return float(R)
