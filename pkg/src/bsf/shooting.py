"""Numerov shooting oracle.

Ground-truth engine that never sees the closed-form machinery: each model's
radial equation is integrated in the physical coordinate as u'' = q(r, E) u
(first-derivative terms already removed by the u = r*R substitution where
needed), eigenvalues are isolated by node-counting bisection and polished on
a Numerov-consistent matching residual at the outermost classical turning
point, so the final accuracy is O(h^4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from .canonical import SolutionParams
from .errors import BracketExhausted, NonDecayingTail
from .formula import Engine, EigenResult

DEFAULT_GRID_POINTS = 4000
_RESCALE_LIMIT = 1e250


class Measure(Enum):
    DR = "dr"        # reduced radial u(r): weight 1
    R2DR = "r2dr"    # full radial R(r): weight r^2


@dataclass(frozen=True)
class RadialProblem:
    """u'' = q(r, E) * u on (r_min, r_max).

    ``origin_exponent`` seeds the outward integration (u ~ r^p near the
    origin); when absent it is estimated from the r^-2 coefficient of q.
    ``first_derivative_removed`` records the substitution used to reach the
    no-first-derivative form, for provenance only.
    """

    q: Callable[[np.ndarray, float], np.ndarray]
    domain: tuple[float, float]
    measure: Measure = Measure.DR
    first_derivative_removed: str = ""
    origin_exponent: float | None = None
    name: str = ""

    def __post_init__(self):
        r_min, r_max = self.domain
        if r_min < 0 or r_min >= r_max:
            raise ValueError(f"need 0 <= r_min < r_max, got {self.domain}")


def _origin_power(p: RadialProblem, E: float, r0: float) -> float:
    if p.origin_exponent is not None:
        return p.origin_exponent
    c2 = float(r0 * r0 * p.q(np.array([r0]), E)[0])
    if c2 > -0.25:
        return 0.5 + math.sqrt(0.25 + c2)
    return 1.0


def _origin_seed(p: RadialProblem, E: float, r0: float, r1: float,
                 ) -> tuple[float, float]:
    """Two-term regular solution u ~ r^pw (1 + a1 r) at the inner boundary.

    The linear correction absorbs the 1/r part of q (Coulomb-like tails);
    without it the boundary defect is O(r_min) and dominates the eigenvalue
    error for s states.
    """
    pw = _origin_power(p, E, r0)
    c_m2 = pw * (pw - 1.0)
    c_m1 = float(r0 * (p.q(np.array([r0]), E)[0] - c_m2 / (r0 * r0)))
    a1 = c_m1 / (2.0 * pw) if pw > 0.25 else 0.0
    return r0**pw * (1.0 + a1 * r0), r1**pw * (1.0 + a1 * r1)


def numerov_integrate(p: RadialProblem, E: float, direction: str,
                      grid: np.ndarray) -> np.ndarray:
    """Fourth-order Numerov sweep over a uniform grid.

    Outward runs seed from the regular power-law behavior at r_min, inward
    runs from the decaying exponential at r_max.  The solution is rescaled
    mid-sweep whenever it threatens overflow; only shape matters to the
    callers (nodes, log-derivatives), not overall scale.
    """
    h = grid[1] - grid[0]
    q = np.asarray(p.q(grid, E), dtype=float)
    t = (h * h / 12.0) * q
    u = np.zeros_like(grid)
    n = len(grid)

    if direction == "outward":
        u[0], u[1] = _origin_seed(p, E, grid[0], grid[1])
        rng = range(1, n - 1)
        step = 1
    elif direction == "inward":
        kappa = math.sqrt(max(float(q[-1]), 1e-12))
        u[-1] = 1e-12
        u[-2] = 1e-12 * math.exp(kappa * h)
        rng = range(n - 2, 1, -1)
        step = -1
    else:
        raise ValueError(f"direction must be 'outward' or 'inward', got {direction!r}")

    for i in rng:
        num = (2.0 + 10.0 * t[i]) * u[i] - (1.0 - t[i - step]) * u[i - step]
        u[i + step] = num / (1.0 - t[i + step])
        if abs(u[i + step]) > _RESCALE_LIMIT:
            if direction == "outward":
                u[: i + step + 1] /= _RESCALE_LIMIT
            else:
                u[i + step:] /= _RESCALE_LIMIT
    return u


def _grid(p: RadialProblem, points: int) -> np.ndarray:
    return np.linspace(p.domain[0], p.domain[1], points)


def _turning_index(q: np.ndarray) -> int:
    sign = np.sign(q)
    changes = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(changes) == 0:
        return len(q) // 2
    return int(changes[-1])


def count_nodes(p: RadialProblem, E: float, grid: np.ndarray) -> int:
    """Interior sign changes of the outward solution (Sturm count)."""
    u = numerov_integrate(p, E, "outward", grid)
    inner = u[1:-1]
    tiny = 1e-280
    s = inner[np.abs(inner) > tiny]
    return int(np.sum(s[:-1] * s[1:] < 0.0))


def match_residual(p: RadialProblem, E: float, grid: np.ndarray) -> float:
    """Numerov three-point defect of the patched in/out solution.

    Both branches are normalized to 1 at the matching index m (outermost
    turning point); the residual is the amount by which the patched function
    fails the Numerov recurrence at m.  Zero exactly at the eigenvalues of
    the discretized problem, so polishing on it preserves O(h^4).
    """
    h = grid[1] - grid[0]
    q = np.asarray(p.q(grid, E), dtype=float)
    t = (h * h / 12.0) * q
    m = _turning_index(q)
    m = min(max(m, 2), len(grid) - 3)
    u_out = numerov_integrate(p, E, "outward", grid)
    u_in = numerov_integrate(p, E, "inward", grid)
    if u_out[m] == 0.0 or u_in[m] == 0.0:
        return math.inf
    left = (1.0 - t[m - 1]) * u_out[m - 1] / u_out[m]
    right = (1.0 - t[m + 1]) * u_in[m + 1] / u_in[m]
    return left + right - (2.0 + 10.0 * t[m])


def log_derivative_mismatch(p: RadialProblem, E: float,
                            grid: np.ndarray) -> float:
    """Central-difference log-derivative gap at the matching point."""
    h = grid[1] - grid[0]
    q = np.asarray(p.q(grid, E), dtype=float)
    m = min(max(_turning_index(q), 2), len(grid) - 3)
    u_out = numerov_integrate(p, E, "outward", grid)
    u_in = numerov_integrate(p, E, "inward", grid)
    d_out = (u_out[m + 1] - u_out[m - 1]) / (2.0 * h * u_out[m])
    d_in = (u_in[m + 1] - u_in[m - 1]) / (2.0 * h * u_in[m])
    return d_out - d_in


def shoot_eigenvalue(
    p: RadialProblem,
    n: int,
    bracket: tuple[float, float],
    *,
    grid_points: int = DEFAULT_GRID_POINTS,
    widen_max: int = 60,
) -> EigenResult:
    """Isolate and polish the n-node eigenvalue.

    The bracket is widened geometrically by node counting until it straddles
    the n -> n+1 transition, bisected on the count, then the matching
    residual is polished with a bracketing secant/bisection refiner.
    """
    grid = _grid(p, grid_points)
    a, b = float(bracket[0]), float(bracket[1])
    span = b - a

    for _ in range(widen_max):
        if count_nodes(p, b, grid) > n:
            break
        b += span
        span *= 1.6
    else:
        raise BracketExhausted(f"no level with more than {n} nodes below {b}")
    span = b - a
    for _ in range(widen_max):
        if count_nodes(p, a, grid) <= n:
            break
        a -= span
        span *= 1.6
    else:
        raise BracketExhausted(f"node count still above {n} at {a}")

    for _ in range(48):
        mid = 0.5 * (a + b)
        if count_nodes(p, mid, grid) > n:
            b = mid
        else:
            a = mid
        if (b - a) <= 1e-9 * max(1.0, abs(a), abs(b)):
            break

    fa = match_residual(p, a, grid)
    fb = match_residual(p, b, grid)
    if math.isfinite(fa) and math.isfinite(fb) and fa * fb < 0.0:
        value = float(brentq(lambda E: match_residual(p, E, grid), a, b,
                             xtol=1e-14 * max(1.0, abs(a), abs(b)), rtol=1e-14))
    else:
        # Matching residual did not change sign across the (already tight)
        # count window; fall back to a short secant from the midpoint.
        value = 0.5 * (a + b)
        f_prev, x_prev = fa, a
        f_cur, x_cur = match_residual(p, value, grid), value
        for _ in range(30):
            if f_cur == f_prev or not math.isfinite(f_cur):
                break
            x_next = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
            x_next = min(max(x_next, a), b)
            x_prev, f_prev = x_cur, f_cur
            x_cur, f_cur = x_next, match_residual(p, x_next, grid)
            if abs(x_cur - x_prev) < 1e-13 * max(1.0, abs(x_cur)):
                break
        value = x_cur

    nodes = count_nodes_of_solution(p, value, grid)
    return EigenResult(value=value, n=n, params=None,
                       residual_formula=math.nan, engine=Engine.SHOOTING,
                       node_count=nodes)


def count_nodes_of_solution(p: RadialProblem, E: float,
                            grid: np.ndarray) -> int:
    """Nodes of the matched eigenfunction (outward branch up to matching)."""
    q = np.asarray(p.q(grid, E), dtype=float)
    m = min(max(_turning_index(q), 2), len(grid) - 3)
    u = numerov_integrate(p, E, "outward", grid)
    inner = u[1:m + 1]
    s = inner[np.abs(inner) > 1e-280]
    return int(np.sum(s[:-1] * s[1:] < 0.0))


def eigenfunction(p: RadialProblem, E: float,
                  grid_points: int = DEFAULT_GRID_POINTS,
                  ) -> tuple[np.ndarray, np.ndarray]:
    """Matched, continuity-scaled eigenfunction samples at energy E."""
    grid = _grid(p, grid_points)
    q = np.asarray(p.q(grid, E), dtype=float)
    m = min(max(_turning_index(q), 2), len(grid) - 3)
    u_out = numerov_integrate(p, E, "outward", grid)
    u_in = numerov_integrate(p, E, "inward", grid)
    u = np.empty_like(grid)
    u[:m + 1] = u_out[:m + 1] / u_out[m]
    u[m:] = u_in[m:] / u_in[m]
    return grid, u


def normalize(r: np.ndarray, samples: np.ndarray, measure: Measure,
              *, tail_tol: float = 1e-4, refine_tol: float = 1e-8,
              ) -> tuple[np.ndarray, float, float]:
    """Scale samples to unit norm under the declared measure.

    Returns (normalized samples, N, refinement estimate) where N multiplies
    the input, i.e. already-normalized input gives N = 1.  The refinement
    estimate compares composite Simpson on the full grid against the
    half-density subgrid; callers that can resample should do so until it
    falls below ``refine_tol``.

    Raises NonDecayingTail when either end of the sample array has not
    decayed relative to the peak.
    """
    r = np.asarray(r, dtype=float)
    samples = np.asarray(samples, dtype=float)
    weight = r**2 if measure is Measure.R2DR else np.ones_like(r)
    integrand = samples * samples * weight
    peak = float(np.max(integrand))
    if peak == 0.0:
        raise ValueError("cannot normalize identically zero samples")
    if integrand[-1] > tail_tol * peak or integrand[0] > tail_tol * peak:
        raise NonDecayingTail(
            "weighted samples do not decay at the domain ends; enlarge the grid")
    full = float(simpson(integrand, x=r))
    half = float(simpson(integrand[::2], x=r[::2]))
    estimate = abs(full - half) / max(abs(full), 1e-300)
    n_const = 1.0 / math.sqrt(full)
    return samples * n_const, n_const, estimate


def normalization_constant(psi: Callable[[np.ndarray], np.ndarray],
                           domain: tuple[float, float], measure: Measure,
                           *, refine_tol: float = 1e-8,
                           start_points: int = 513,
                           max_points: int = 600000) -> float:
    """N with integral of (N*psi)^2 * weight = 1, by doubling Simpson
    refinement until the relative change drops below ``refine_tol``."""
    lo, hi = domain
    points = start_points
    prev = None
    while points <= max_points:
        r = np.linspace(lo, hi, points)
        w = r**2 if measure is Measure.R2DR else 1.0
        val = float(simpson(psi(r) ** 2 * w, x=r))
        if prev is not None and abs(val - prev) <= refine_tol * abs(val):
            return 1.0 / math.sqrt(val)
        prev = val
        points = 2 * points - 1
    return 1.0 / math.sqrt(prev)
