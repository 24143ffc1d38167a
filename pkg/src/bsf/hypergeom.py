"""Terminating hypergeometric polynomials.

Only the degree-n truncations 2F1(-n, b; c; x) and 1F1(-n; c; x) are needed
here: they are exact finite sums (degree-n polynomials in x), so no
convergence analysis or analytic continuation is involved.  Evaluation uses
the term ratio recurrence with compensated (Neumaier) accumulation, which
keeps cancellation under control for the moderate degrees (n <= 50) used by
the solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import PochhammerZero


class SeriesKind(Enum):
    GAUSS_2F1 = "2F1"
    KUMMER_1F1 = "1F1"


def _check_lower_parameter(n: int, c: float) -> None:
    # (c)_k vanishes for some k <= n exactly when c is one of 0, -1, ..., -(n-1).
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a nonnegative integer, got {n}")
    if c <= 0 and float(c).is_integer() and -c <= n - 1:
        raise PochhammerZero(
            f"lower parameter c = {c} hits a Pochhammer zero within degree {n}")


@dataclass(frozen=True)
class TerminatingSeries:
    """A terminating hypergeometric polynomial description.

    ``b`` is the second upper parameter of 2F1 and is ignored (None) for the
    Kummer 1F1 case.
    """

    kind: SeriesKind
    n: int
    c: float
    b: float | None = None

    def __post_init__(self):
        _check_lower_parameter(self.n, self.c)
        if self.kind is SeriesKind.GAUSS_2F1 and self.b is None:
            raise ValueError("2F1 requires the upper parameter b")

    def coefficients(self) -> np.ndarray:
        """Exact monomial coefficients: p(x) = sum_k coeffs[k] * x^k."""
        if self.kind is SeriesKind.GAUSS_2F1:
            return series_coefficients_2f1(self.n, self.b, self.c)
        return series_coefficients_1f1(self.n, self.c)

    def __call__(self, x):
        if self.kind is SeriesKind.GAUSS_2F1:
            return eval_2f1_terminating(self.n, self.b, self.c, x)
        return eval_1f1_terminating(self.n, self.c, x)


def series_coefficients_2f1(n: int, b: float, c: float) -> np.ndarray:
    """Coefficient array of 2F1(-n, b; c; x), length n + 1.

    coeffs[k] = (-n)_k (b)_k / ((c)_k k!), built by the iterative product so
    no gamma functions (and no overflow for the degrees in scope) appear.
    """
    _check_lower_parameter(n, c)
    out = np.empty(n + 1)
    t = 1.0
    out[0] = t
    for k in range(n):
        t *= (k - n) * (b + k) / ((c + k) * (k + 1.0))
        out[k + 1] = t
    return out


def series_coefficients_1f1(n: int, c: float) -> np.ndarray:
    """Coefficient array of 1F1(-n; c; x), length n + 1."""
    _check_lower_parameter(n, c)
    out = np.empty(n + 1)
    t = 1.0
    out[0] = t
    for k in range(n):
        t *= (k - n) / ((c + k) * (k + 1.0))
        out[k + 1] = t
    return out


def _neumaier_polyval(coeffs: np.ndarray, x):
    """Evaluate sum coeffs[k] x^k with compensated term accumulation."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    comp = np.zeros_like(x)
    term = np.ones_like(x)
    for k, ck in enumerate(coeffs):
        if k > 0:
            term = term * x
        t = term * ck
        new = total + t
        comp = comp + np.where(np.abs(total) >= np.abs(t),
                               (total - new) + t, (t - new) + total)
        total = new
    result = total + comp
    return float(result) if result.ndim == 0 else result


def eval_2f1_terminating(n: int, b: float, c: float, x):
    """2F1(-n, b; c; x) as the exact degree-n polynomial.

    >>> eval_2f1_terminating(1, 3.0, 2.0, 0.5)
    0.25
    """
    return _neumaier_polyval(series_coefficients_2f1(n, b, c), x)


def eval_1f1_terminating(n: int, c: float, x):
    """1F1(-n; c; x) as the exact degree-n polynomial.

    >>> eval_1f1_terminating(0, 1.5, 10.0)
    1.0
    """
    return _neumaier_polyval(series_coefficients_1f1(n, c), x)


def real_roots_in(coeffs: np.ndarray, lo: float, hi: float,
                  imag_tol: float = 1e-9) -> np.ndarray:
    """Real roots of the polynomial sum coeffs[k] x^k inside (lo, hi).

    Used for node bookkeeping: the degree-n factor of a converged bound state
    has exactly n simple roots inside the physical domain.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    trimmed = np.trim_zeros(coeffs, "b")
    if trimmed.size <= 1:
        return np.array([])
    roots = np.roots(trimmed[::-1])
    scale = max(1.0, abs(lo), abs(hi))
    real = roots[np.abs(roots.imag) < imag_tol * scale].real
    inside = real[(real > lo) & (real < hi)]
    return np.sort(inside)
