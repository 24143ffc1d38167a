"""Closed-form quantization engine.

The eigenvalue conditions come in a linear and a squared flavor per regime.
Root finding always uses the linear forms: squaring maps the non-decaying
k5 branch onto the same equation and thereby admits spurious roots, so the
squared forms are kept only as conformance checks.

For k3 < 0 the square root in the general linear condition is divided by
|k3| rather than k3.  Both signs select a terminating-series solution (the
two upper hypergeometric parameters swap roles), but only the |k3| branch
keeps the polynomial degree equal to the level index n on the physical side
of the domain; for k3 > 0 the two forms coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .canonical import (
    CanonicalCoefficients,
    CoefficientMap,
    Regime,
    SolutionParams,
    SpectralUnknown,
    _k4_raw,
    _k5_raw,
    compute_k4,
    compute_k5,
    solution_params,
)
from .errors import (
    InvalidHypergeomParams,
    NegativeDiscriminant,
    NoRootInBracket,
    ZeroDenominator,
)
from .hypergeom import (
    SeriesKind,
    eval_1f1_terminating,
    eval_2f1_terminating,
    series_coefficients_1f1,
    series_coefficients_2f1,
)

DEFAULT_SCAN_POINTS = 2000
DEFAULT_ROOT_TOL = 1e-12


class Engine(Enum):
    FORMULA = "formula"
    AIM = "aim"
    SHOOTING = "shooting"


class ConditionForm(Enum):
    GENERAL_LINEAR = "general_linear"
    GENERAL_SQUARED = "general_squared"
    LIMIT_LINEAR = "limit_linear"
    LIMIT_SQUARED = "limit_squared"


@dataclass(frozen=True)
class EigenCondition:
    """A quantization condition tagged with its regime form and level index."""

    form: ConditionForm
    n: int

    def residual(self, c: CanonicalCoefficients) -> float:
        fn = {
            ConditionForm.GENERAL_LINEAR: condition_general,
            ConditionForm.GENERAL_SQUARED: condition_general_squared,
            ConditionForm.LIMIT_LINEAR: condition_limit,
            ConditionForm.LIMIT_SQUARED: condition_limit_squared,
        }[self.form]
        return fn(c, self.n)


@dataclass(frozen=True)
class EigenResult:
    """A converged spectral value with provenance and residual diagnostics."""

    value: float
    n: int
    params: SolutionParams | None
    residual_formula: float
    engine: Engine
    residual_ode: float | None = None
    node_count: int | None = None


# -- quantization conditions ---------------------------------------------------

def _general_rhs(c, n: int):
    """Right-hand side of the linear general condition (vectorized)."""
    with np.errstate(invalid="ignore"):
        disc = (c.k3 - c.k2) ** 2 - 4.0 * np.asarray(c.A, dtype=float)
        root = np.sqrt(disc)
    return (1.0 - 2.0 * n) / 2.0 - c.k2 / (2.0 * c.k3) + root / (2.0 * abs(c.k3))


def condition_general(c: CanonicalCoefficients, n: int) -> float:
    """Linear quantization residual in the general regime.

    Zero exactly when k4 + k5 equals the n-th rung of the termination
    ladder.  Raises NegativeDiscriminant when (k3 - k2)^2 - 4A < 0 or when
    either endpoint exponent loses its radicand.
    """
    if c.regime is not Regime.GENERAL:
        raise ValueError("condition_general requires the general regime (k3 != 0)")
    disc = (c.k3 - c.k2) ** 2 - 4.0 * c.A
    if disc < 0.0:
        raise NegativeDiscriminant(f"(k3 - k2)^2 - 4A = {disc} < 0")
    return compute_k4(c) + compute_k5(c) - float(_general_rhs(c, n))


def condition_general_squared(c: CanonicalCoefficients, n: int) -> float:
    """Squared general condition, transcribed literally for conformance.

    Every root of the linear form is a root of this one; the converse fails
    (the k5 -> -k5 branch also satisfies it).
    """
    if c.regime is not Regime.GENERAL:
        raise ValueError("squared general condition requires k3 != 0")
    disc = (c.k3 - c.k2) ** 2 - 4.0 * c.A
    if disc < 0.0:
        raise NegativeDiscriminant(f"(k3 - k2)^2 - 4A = {disc} < 0")
    q = (1.0 - 2.0 * n) / 2.0 - (c.k2 - math.sqrt(disc)) / (2.0 * c.k3)
    if q == 0.0:
        raise ZeroDenominator("squared general condition: progression term is zero")
    k4 = compute_k4(c)
    k5 = compute_k5(c)
    return ((k4**2 - k5**2 - q**2) / (2.0 * q)) ** 2 - k5**2


def condition_limit(c: CanonicalCoefficients, n: int) -> float:
    """Linear quantization residual in the k3 -> 0 regime (unsquared)."""
    if c.regime is not Regime.LIMIT:
        raise ValueError("condition_limit requires the limit regime (k3 ~ 0)")
    k4 = compute_k4(c)
    k5 = compute_k5(c)
    den = 2.0 * k4 + c.k1 + 2.0 * n
    if den == 0.0:
        raise ZeroDenominator("2*k4 + k1 + 2n = 0")
    return (c.B - k4 * c.k2 - n * c.k2) / den - k5


def condition_limit_squared(c: CanonicalCoefficients, n: int) -> float:
    """Squared limit condition, for conformance checks only."""
    if c.regime is not Regime.LIMIT:
        raise ValueError("squared limit condition requires k3 ~ 0")
    k4 = compute_k4(c)
    k5 = compute_k5(c)
    den = 2.0 * k4 + c.k1 + 2.0 * n
    if den == 0.0:
        raise ZeroDenominator("2*k4 + k1 + 2n = 0")
    return ((c.B - k4 * c.k2 - n * c.k2) / den) ** 2 - k5**2


def condition(c: CanonicalCoefficients, n: int) -> float:
    """Regime-dispatched linear condition."""
    if c.regime is Regime.LIMIT:
        return condition_limit(c, n)
    return condition_general(c, n)


def level_index(c: CanonicalCoefficients) -> float:
    """Continuous level index n* solving the linear condition for n.

    At a converged eigenvalue n* is an integer up to rounding; it is used to
    label roots (polynomial degree) independently of their ordering by value.
    """
    k4 = compute_k4(c)
    k5 = compute_k5(c)
    if c.regime is Regime.GENERAL:
        disc = (c.k3 - c.k2) ** 2 - 4.0 * c.A
        if disc < 0.0:
            raise NegativeDiscriminant(f"(k3 - k2)^2 - 4A = {disc} < 0")
        root = math.sqrt(disc)
        return 0.5 - (k4 + k5) - c.k2 / (2.0 * c.k3) + root / (2.0 * abs(c.k3))
    den = c.k2 + 2.0 * k5
    if den == 0.0:
        raise ZeroDenominator("k2 + 2*k5 = 0")
    return (c.B - k4 * c.k2 - k5 * (2.0 * k4 + c.k1)) / den


def _condition_grid(cmap: CoefficientMap, values: np.ndarray, n: int) -> np.ndarray:
    """Linear condition over a grid of unknown values, NaN where invalid."""
    c = cmap(values)
    with np.errstate(invalid="ignore", divide="ignore"):
        k4 = _k4_raw(c.k1, c.C)
        k5 = _k5_raw(c)
        if c.regime is Regime.LIMIT:
            den = 2.0 * k4 + c.k1 + 2.0 * n
            den = np.where(den == 0.0, np.nan, den)
            g = (np.asarray(c.B, dtype=float) - k4 * c.k2 - n * c.k2) / den - k5
        else:
            g = k4 + k5 - _general_rhs(c, n)
    return np.broadcast_to(g, values.shape).astype(float)


# -- root finding ---------------------------------------------------------------

def solve_eigenvalue(
    cmap: CoefficientMap,
    unknown: SpectralUnknown,
    n: int,
    *,
    scan_points: int = DEFAULT_SCAN_POINTS,
    root_tol: float = DEFAULT_ROOT_TOL,
    domain_s: tuple[float, float] | None = None,
    compute_residual_ode: bool = True,
) -> list[EigenResult]:
    """All admissible roots of the linear quantization condition for level n.

    Scans a uniform grid over the unknown's bracket for sign changes of the
    regime-appropriate linear condition, polishes each with a bracketing
    bisection/secant refiner, and drops roots whose endpoint exponents are
    inadmissible (negative radicand, k4 < 0, or k5 <= 0).  The survivors are
    returned ordered ascending; multiplicity is legitimate for some models,
    so the caller disambiguates (e.g. by oracle node counts).

    Raises NoRootInBracket when nothing admissible is found.
    """
    lo, hi = unknown.bracket
    grid = np.linspace(lo, hi, scan_points)
    g = _condition_grid(cmap, grid, n)

    def scalar_g(x: float) -> float:
        return condition(cmap(float(x)), n)

    roots: list[float] = []
    finite = np.isfinite(g)
    for i in range(len(grid) - 1):
        if not (finite[i] and finite[i + 1]):
            continue
        gi, gj = g[i], g[i + 1]
        if gi == 0.0:
            roots.append(float(grid[i]))
            continue
        if gi * gj < 0.0:
            root = brentq(scalar_g, grid[i], grid[i + 1],
                          xtol=1e-14 * max(1.0, abs(lo), abs(hi)), rtol=1e-13)
            roots.append(float(root))
    if finite[-1] and g[-1] == 0.0:
        roots.append(float(grid[-1]))

    scale = max(1.0, abs(lo), abs(hi))
    deduped: list[float] = []
    for r in sorted(roots):
        if not deduped or abs(r - deduped[-1]) > 1e-9 * scale:
            deduped.append(r)

    results: list[EigenResult] = []
    for r in deduped:
        c = cmap(r)
        try:
            params = solution_params(c)
        except NegativeDiscriminant:
            continue
        if params.k4 < -1e-12 or params.k5 <= 1e-12:
            continue
        residual = abs(condition(c, n))
        res_ode = None
        if compute_residual_ode:
            wf = build_wavefunction(c, params, n)
            window = default_domain_s(c, params, n)
            if domain_s is not None:
                lo_w = max(min(window), min(domain_s))
                hi_w = min(max(window), max(domain_s))
                if lo_w < hi_w:
                    window = (lo_w, hi_w)
            res_ode = wavefunction_residual(wf, c, domain_s=window)
        results.append(EigenResult(value=r, n=n, params=params,
                                   residual_formula=residual,
                                   residual_ode=res_ode,
                                   engine=Engine.FORMULA))
    if not results:
        raise NoRootInBracket(
            f"no admissible root of the n={n} condition in {unknown.bracket}")
    return results


def solve_unique(cmap: CoefficientMap, unknown: SpectralUnknown, n: int,
                 **kwargs) -> EigenResult:
    """Convenience wrapper returning the lowest admissible root."""
    return solve_eigenvalue(cmap, unknown, n, **kwargs)[0]


# -- eigenfunction assembly ------------------------------------------------------

@dataclass(frozen=True)
class WavefunctionSpec:
    """Callable description of an (unnormalized) eigenfunction in the mapped
    coordinate s.

    GENERAL: |s|^k4 * |1 - k3*s|^k5 * 2F1(-n, b; c; k3*s)
    LIMIT:   |s|^k4 * exp(-k5*s)   * 1F1(-n; c; (2*k5 + k2)*s)

    Absolute values make the power factors well defined on negative-s
    domains (the angular problems); for positive-s models they are inert.
    Normalization is numerical and lives with the shooting oracle.
    """

    regime: Regime
    n: int
    k3: float
    params: SolutionParams
    hyper_c: float
    hyper_b: float | None
    arg_scale: float

    def hypergeometric_factor(self, s):
        x = self.arg_scale * np.asarray(s, dtype=float)
        if self.regime is Regime.GENERAL:
            return eval_2f1_terminating(self.n, self.hyper_b, self.hyper_c, x)
        return eval_1f1_terminating(self.n, self.hyper_c, x)

    def polynomial_coefficients(self) -> np.ndarray:
        """Monomial coefficients of the degree-n factor, in powers of s."""
        if self.regime is Regime.GENERAL:
            base = series_coefficients_2f1(self.n, self.hyper_b, self.hyper_c)
        else:
            base = series_coefficients_1f1(self.n, self.hyper_c)
        scale = self.arg_scale ** np.arange(self.n + 1)
        return base * scale

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        k4, k5 = self.params.k4, self.params.k5
        with np.errstate(invalid="ignore"):
            envelope = np.abs(s) ** k4
            if self.regime is Regime.GENERAL:
                envelope = envelope * np.abs(1.0 - self.k3 * s) ** k5
            else:
                envelope = envelope * np.exp(-k5 * s)
        out = envelope * self.hypergeometric_factor(s)
        return float(out) if out.ndim == 0 else out


def build_wavefunction(c: CanonicalCoefficients, params: SolutionParams,
                       n: int) -> WavefunctionSpec:
    """Assemble the eigenfunction description for a converged level.

    Raises InvalidHypergeomParams when the lower hypergeometric parameter
    2*k4 + k1 is zero or a negative integer; that degenerate case is flagged
    rather than silently regularized.
    """
    lower = 2.0 * params.k4 + c.k1
    if lower <= 0 and float(lower).is_integer():
        raise InvalidHypergeomParams(
            f"lower hypergeometric parameter 2*k4 + k1 = {lower} is a nonpositive integer")
    if c.regime is Regime.GENERAL:
        b = n + 2.0 * (params.k4 + params.k5) + c.k2 / c.k3 - 1.0
        return WavefunctionSpec(regime=Regime.GENERAL, n=n, k3=c.k3,
                                params=params, hyper_c=lower, hyper_b=b,
                                arg_scale=c.k3)
    return WavefunctionSpec(regime=Regime.LIMIT, n=n, k3=0.0, params=params,
                            hyper_c=lower, hyper_b=None,
                            arg_scale=2.0 * params.k5 + c.k2)


def default_domain_s(c: CanonicalCoefficients, params: SolutionParams,
                     n: int) -> tuple[float, float]:
    """A conservative s-window covering the support of the level."""
    if c.regime is Regime.GENERAL:
        edge = 1.0 / c.k3
        if edge > 0:
            return (0.0, edge)
        return (edge, 0.0)
    decay = max(params.k5, 0.05)
    return (0.0, 2.5 * (params.k4 + n + 6.0) / decay)


def wavefunction_residual(
    wf: WavefunctionSpec,
    c: CanonicalCoefficients,
    *,
    domain_s: tuple[float, float] | None = None,
    points: int = 50,
    h_factor: float | None = None,
) -> float:
    """Max cleared ODE residual of ``wf`` relative to max |psi|.

    The canonical equation is multiplied through by s^2 (1 - k3 s)^2 so the
    singular endpoints drop out, then evaluated at interior points with
    central finite differences of step h = h_factor * window width.  The
    default step balances truncation against cancellation: the bounded
    general-regime domains tolerate a finer step than the broad smooth
    limit-regime windows.
    """
    if domain_s is None:
        domain_s = default_domain_s(c, wf.params, wf.n)
    if h_factor is None:
        h_factor = 1e-5 if wf.regime is Regime.GENERAL else 3e-5
    lo, hi = domain_s
    width = hi - lo
    pts = np.linspace(lo + 0.04 * width, hi - 0.04 * width, points)
    h = h_factor * width

    psi_mid = wf(pts)
    psi_plus = wf(pts + h)
    psi_minus = wf(pts - h)
    d1 = (psi_plus - psi_minus) / (2.0 * h)
    d2 = (psi_plus - 2.0 * psi_mid + psi_minus) / (h * h)

    one = 1.0 - c.k3 * pts
    weight2 = (pts * one) ** 2
    weight1 = pts * one * (c.k1 - c.k2 * pts)
    poly = (c.A * pts + c.B) * pts + c.C
    residual = weight2 * d2 + weight1 * d1 + poly * psi_mid

    peak = float(np.max(np.abs(psi_mid)))
    if peak == 0.0:
        return float(np.max(np.abs(residual)))
    return float(np.max(np.abs(residual)) / peak)
