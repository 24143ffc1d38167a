"""Asymptotic iteration engine.

Independent numeric cross-check of the closed-form conditions: the second
order problem y'' = lam0*y' + s0*y is iterated through

    lam_k = lam_{k-1}' + s_{k-1} + lam0*lam_{k-1}
    s_k   = s_{k-1}'   + s0*lam_{k-1}

and eigenvalues are the roots of the 2x2 termination determinant

    delta_k = lam_k*s_{k-1} - lam_{k-1}*s_k   (evaluated at the expansion point).

All function algebra is mechanized with truncated Taylor series about a
fixed interior point x0, so the k-th derivatives fall out of coefficient
shifts instead of symbolic differentiation.  Each iteration consumes one
order of the series, hence the series order is sized as k_max + 4.

Series coefficients live on the LAST axis of an array, so a whole scan grid
of spectral values can be iterated in one batch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .canonical import (
    CanonicalCoefficients,
    CoefficientMap,
    Regime,
    SpectralUnknown,
    _k4_raw,
    _k5_raw,
    solution_params,
)
from .errors import CenterMismatch, NonConvergent, OrderExhausted
from .formula import Engine, EigenResult, condition, level_index

DEFAULT_K_MAX = 60
DEFAULT_AIM_TOL = 1e-9
DEFAULT_SCAN_POINTS = 600


@dataclass(frozen=True)
class TruncatedSeries:
    """Taylor polynomial sum coeffs[..., j] * (x - center)^j.

    The usable order is len(coeffs) - 1 along the last axis; derivative
    shortens it by one.  Leading axes, if any, are batch dimensions.
    """

    center: float
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))
        if self.coeffs.shape[-1] < 1:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return self.coeffs.shape[-1] - 1

    @property
    def value(self):
        """Series value at the expansion point (the constant coefficient)."""
        v = self.coeffs[..., 0]
        return float(v) if v.ndim == 0 else v

    @classmethod
    def from_polynomial(cls, center: float, poly: list, order: int,
                        batch_shape: tuple = ()) -> "TruncatedSeries":
        """Series for a global polynomial sum poly[j]*x^j (degree <= 2)."""
        if len(poly) > 3:
            raise ValueError("only polynomials up to degree 2 are needed here")
        a0 = poly[0] if len(poly) > 0 else 0.0
        a1 = poly[1] if len(poly) > 1 else 0.0
        a2 = poly[2] if len(poly) > 2 else 0.0
        coeffs = np.zeros(batch_shape + (order + 1,))
        coeffs[..., 0] = a0 + a1 * center + a2 * center * center
        if order >= 1:
            coeffs[..., 1] = a1 + 2.0 * a2 * center
        if order >= 2:
            coeffs[..., 2] = a2
        return cls(center, coeffs)

    def _check_center(self, other: "TruncatedSeries") -> None:
        if self.center != other.center:
            raise CenterMismatch(
                f"series centers differ: {self.center} vs {other.center}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_center(other)
        n = min(self.coeffs.shape[-1], other.coeffs.shape[-1])
        return TruncatedSeries(self.center,
                               self.coeffs[..., :n] + other.coeffs[..., :n])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_center(other)
        n = min(self.coeffs.shape[-1], other.coeffs.shape[-1])
        return TruncatedSeries(self.center,
                               self.coeffs[..., :n] - other.coeffs[..., :n])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_center(other)
        n = min(self.coeffs.shape[-1], other.coeffs.shape[-1])
        a = self.coeffs[..., :n]
        b = other.coeffs[..., :n]
        batch = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        out = np.zeros(batch + (n,))
        for k in range(n):
            out[..., k] = np.sum(a[..., :k + 1] * b[..., k::-1], axis=-1)
        return TruncatedSeries(self.center, out)

    def derivative(self) -> "TruncatedSeries":
        n = self.coeffs.shape[-1]
        if n < 2:
            raise OrderExhausted("derivative would exhaust the series order")
        powers = np.arange(1, n)
        return TruncatedSeries(self.center, self.coeffs[..., 1:] * powers)

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant coefficient."""
        c = self.coeffs
        n = c.shape[-1]
        out = np.zeros_like(c)
        out[..., 0] = 1.0 / c[..., 0]
        for k in range(1, n):
            acc = np.sum(c[..., 1:k + 1] * out[..., k - 1::-1][..., :k], axis=-1)
            out[..., k] = -acc / c[..., 0]
        return TruncatedSeries(self.center, out)

    def evaluate(self, x):
        """Horner evaluation at x (mainly for tests)."""
        t = np.asarray(x, dtype=float) - self.center
        acc = np.zeros(np.broadcast_shapes(self.coeffs.shape[:-1], t.shape))
        for j in range(self.coeffs.shape[-1] - 1, -1, -1):
            acc = acc * t + self.coeffs[..., j]
        return float(acc) if acc.ndim == 0 else acc


def series_arith(a: TruncatedSeries, b: TruncatedSeries | None,
                 op: str) -> TruncatedSeries:
    """Uniform entry point for the three series operations used by the
    recursion: 'add', 'mul', and 'derivative' (b ignored for the latter)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "derivative":
        return a.derivative()
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class AimState:
    """Current pair (lam_k, s_k) plus the previous pair and the seeds."""

    lambda0: TruncatedSeries
    s0: TruncatedSeries
    lambda_k: TruncatedSeries
    s_k: TruncatedSeries
    k: int
    lambda_prev: TruncatedSeries | None = None
    s_prev: TruncatedSeries | None = None


def make_aim_state(lam0: TruncatedSeries, s0: TruncatedSeries) -> AimState:
    v = np.asarray(lam0.value)
    if np.any(v == 0.0):
        raise ValueError("lam0 must be nonzero at the expansion point")
    return AimState(lambda0=lam0, s0=s0, lambda_k=lam0, s_k=s0, k=0)


def aim_iterate(state: AimState) -> AimState:
    """One step of the recursion; the usable series order drops by one."""
    lam_new = state.lambda_k.derivative() + state.s_k + state.lambda0 * state.lambda_k
    s_new = state.s_k.derivative() + state.s0 * state.lambda_k
    return replace(state, lambda_k=lam_new, s_k=s_new,
                   lambda_prev=state.lambda_k, s_prev=state.s_k,
                   k=state.k + 1)


def aim_delta(state: AimState):
    """Termination determinant at the expansion point (needs k >= 1)."""
    if state.k < 1:
        raise ValueError("aim_delta needs at least one iteration")
    return (state.lambda_k.value * state.s_prev.value
            - state.lambda_prev.value * state.s_k.value)


# -- seed construction -----------------------------------------------------------

def build_aim_seeds(c: CanonicalCoefficients, x0: float, order: int,
                    ) -> tuple[TruncatedSeries, TruncatedSeries]:
    """lam0 and s0 as truncated series about x0 for a canonical instance.

    In the general regime these are the transformed-equation coefficients

        lam0 = [s*(2*k3*(k4+k5) + k2) - (2*k4 + k1)] / (s*(1 - k3*s))
        s0   = [k3*(k4+k5)^2 + (k4+k5)*(k2 - k3) + A/k3] / (s*(1 - k3*s))

    and in the k3 -> 0 limit their finite limits

        lam0 = [(2*k5 + k2)*s - (2*k4 + k1)] / s
        s0   = [k5*(2*k4 + k1) + k2*k4 - B] / s.

    A, B, C may carry batch axes; the returned series then carry them too.
    """
    k4 = _k4_raw(c.k1, c.C)
    k5 = _k5_raw(c)
    batch = np.broadcast_shapes(np.shape(k4), np.shape(k5), np.shape(c.A),
                                np.shape(c.B), np.shape(c.C))

    def const_series(value) -> TruncatedSeries:
        coeffs = np.zeros(batch + (order + 1,))
        coeffs[..., 0] = value
        return TruncatedSeries(x0, coeffs)

    def linear_series(const, slope) -> TruncatedSeries:
        coeffs = np.zeros(batch + (order + 1,))
        coeffs[..., 0] = const + slope * x0
        coeffs[..., 1] = slope
        return TruncatedSeries(x0, coeffs)

    if c.regime is Regime.GENERAL:
        sigma = k4 + k5
        denom = TruncatedSeries.from_polynomial(
            x0, [0.0, 1.0, -c.k3], order, batch_shape=batch)
        recip = denom.reciprocal()
        lam_num = linear_series(-(2.0 * k4 + c.k1), 2.0 * c.k3 * sigma + c.k2)
        s_num = const_series(c.k3 * sigma**2 + sigma * (c.k2 - c.k3)
                             + np.asarray(c.A, dtype=float) / c.k3)
        return lam_num * recip, s_num * recip

    denom = TruncatedSeries.from_polynomial(x0, [0.0, 1.0], order,
                                            batch_shape=batch)
    recip = denom.reciprocal()
    lam_num = linear_series(-(2.0 * k4 + c.k1), 2.0 * k5 + c.k2)
    s_num = const_series(k5 * (2.0 * k4 + c.k1) + c.k2 * k4
                         - np.asarray(c.B, dtype=float))
    return lam_num * recip, s_num * recip


def _delta_values(c: CanonicalCoefficients, x0: float, k: int, order: int):
    """delta_k for one (possibly batched) canonical instance."""
    if k > order - 2:
        raise OrderExhausted(f"k = {k} exceeds usable depth of order {order}")
    lam0, s0 = build_aim_seeds(c, x0, order)
    lam_prev, s_prev = lam0, s0
    lam_cur = lam_prev.derivative() + s_prev + lam0 * lam_prev
    s_cur = s_prev.derivative() + s0 * lam_prev
    for _ in range(k - 1):
        lam_prev, s_prev, lam_cur, s_cur = lam_cur, s_cur, (
            lam_cur.derivative() + s_cur + lam0 * lam_cur), (
            s_cur.derivative() + s0 * lam_cur)
    return lam_cur.value * s_prev.value - lam_prev.value * s_cur.value


def termination_roots(
    cmap: CoefficientMap,
    unknown: SpectralUnknown,
    k: int,
    *,
    x0: float | None = None,
    order: int | None = None,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> list[float]:
    """Refined roots of delta_k over the unknown's bracket, ascending.

    The determinant grows factorially with k, so the scan is normalized by
    its largest finite magnitude before sign changes are located.
    """
    lo, hi = unknown.bracket
    if order is None:
        order = k + 6
    if x0 is None:
        x0 = default_expansion_point(cmap, unknown)
    grid = np.linspace(lo, hi, scan_points)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        delta = np.asarray(_delta_values(cmap(grid), x0, k, order), dtype=float)
    finite = np.isfinite(delta)
    if not np.any(finite):
        return []
    scale = np.max(np.abs(delta[finite]))
    if scale > 0:
        delta = delta / scale

    def scalar_delta(x: float) -> float:
        return float(_delta_values(cmap(float(x)), x0, k, order))

    roots: list[float] = []
    for i in range(len(grid) - 1):
        if not (finite[i] and finite[i + 1]):
            continue
        if delta[i] == 0.0:
            roots.append(float(grid[i]))
        elif delta[i] * delta[i + 1] < 0.0:
            roots.append(float(brentq(scalar_delta, grid[i], grid[i + 1],
                                      xtol=1e-14 * max(1.0, abs(lo), abs(hi)),
                                      rtol=1e-13)))
    return sorted(roots)


def default_expansion_point(cmap: CoefficientMap,
                            unknown: SpectralUnknown) -> float:
    """Midpoint of the mapped domain for k3 != 0, else 1.0.

    The termination roots of exactly solvable problems do not depend on the
    expansion point; this default just keeps the series well conditioned.
    An explicit x0 can always be passed to override it.
    """
    lo, hi = unknown.bracket
    c_mid = cmap(0.5 * (lo + hi))
    if c_mid.regime is Regime.GENERAL:
        return 1.0 / (2.0 * c_mid.k3)
    return 1.0


def aim_solve(
    cmap: CoefficientMap,
    unknown: SpectralUnknown,
    n: int,
    *,
    x0: float | None = None,
    k_max: int = DEFAULT_K_MAX,
    aim_tol: float = DEFAULT_AIM_TOL,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> EigenResult:
    """Level-n eigenvalue from the termination determinant ladder.

    Roots of delta_k are located at k = n + 2 (the degree-n termination is
    present from k = n + 1 on), tagged by their continuous level index so
    that levels are matched by polynomial degree rather than by ordering,
    and then re-refined at increasing k until two successive iterations
    agree to ``aim_tol``.
    """
    if k_max <= n:
        raise ValueError("k_max must exceed n")
    if x0 is None:
        x0 = default_expansion_point(cmap, unknown)
    order = k_max + 4
    lo, hi = unknown.bracket
    scale = max(1.0, abs(lo), abs(hi))

    k0 = n + 2
    candidates = []
    for root in termination_roots(cmap, unknown, k0, x0=x0, order=order,
                                  scan_points=scan_points):
        c = cmap(root)
        with np.errstate(invalid="ignore"):
            k4 = float(_k4_raw(c.k1, c.C))
            k5 = float(_k5_raw(c))
        if not (math.isfinite(k4) and math.isfinite(k5)):
            continue
        if k4 < -1e-12 or k5 <= 1e-12:
            continue
        try:
            idx = level_index(c)
        except Exception:
            continue
        if abs(idx - n) < 1e-3:
            candidates.append(root)
    if not candidates:
        raise NonConvergent(
            f"no admissible delta_{k0} root labels level n={n} in {unknown.bracket}")
    value = candidates[0]

    def refine_near(k: int, center: float) -> float:
        def scalar_delta(x: float) -> float:
            return float(_delta_values(cmap(float(x)), x0, k, order))

        width = max(1e-7 * scale, 1e-6 * abs(center))
        for _ in range(24):
            a = max(lo, center - width)
            b = min(hi, center + width)
            fa, fb = scalar_delta(a), scalar_delta(b)
            if math.isfinite(fa) and math.isfinite(fb) and fa * fb <= 0.0:
                return float(brentq(scalar_delta, a, b,
                                    xtol=1e-15 * scale, rtol=1e-14))
            width *= 4.0
            if a == lo and b == hi:
                break
        raise NonConvergent(f"delta_{k} root lost near {center}")

    prev = value
    for k in range(k0 + 1, k_max + 1):
        cur = refine_near(k, prev)
        if abs(cur - prev) < aim_tol:
            c = cmap(cur)
            params = solution_params(c)
            return EigenResult(value=cur, n=n, params=params,
                               residual_formula=abs(condition(c, n)),
                               engine=Engine.AIM)
        prev = cur
    raise NonConvergent(
        f"successive termination roots still drift beyond {aim_tol} at k_max={k_max}")
