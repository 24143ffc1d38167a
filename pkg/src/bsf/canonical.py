"""Core data model for the canonical second-order ODE

    Psi''(s) + (k1 - k2*s)/(s*(1 - k3*s)) * Psi'(s)
             + (A*s^2 + B*s + C)/(s^2*(1 - k3*s)^2) * Psi(s) = 0

and the two exponents that govern its endpoint behavior: ``k4`` at s -> 0
and ``k5`` at the far endpoint (s -> 1/k3, or s -> infinity when k3 = 0).

Every quantity here is pure and immutable; instances are safe to share
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import NegativeDiscriminant

# Below this |k3| the 1/k3 terms in the far-endpoint exponent cancel
# catastrophically, so evaluation routes to the k3 -> 0 limit expressions.
K3_EPSILON = 1e-12


class Regime(Enum):
    GENERAL = "general"  # k3 != 0: far endpoint at s = 1/k3
    LIMIT = "limit"      # k3 -> 0: far endpoint at s = infinity


def _is_scalar(x) -> bool:
    return np.ndim(x) == 0 and not isinstance(x, np.ndarray)


@dataclass(frozen=True)
class CanonicalCoefficients:
    """One instance of the canonical ODE at a fixed value of the spectral
    unknown.

    ``k1``, ``k2``, ``k3`` must be finite scalars.  ``A``, ``B``, ``C`` are
    usually scalars but may be numpy arrays when a coefficient map is being
    evaluated over a scan grid; validation is skipped for array entries.
    """

    k1: float
    k2: float
    k3: float
    A: float
    B: float
    C: float

    def __post_init__(self):
        for name in ("k1", "k2", "k3"):
            v = getattr(self, name)
            if not math.isfinite(float(v)):
                raise ValueError(f"{name} must be finite, got {v!r}")
        for name in ("A", "B", "C"):
            v = getattr(self, name)
            if _is_scalar(v) and not math.isfinite(float(v)):
                raise ValueError(f"{name} must be finite, got {v!r}")

    @property
    def regime(self) -> Regime:
        return Regime.LIMIT if abs(self.k3) < K3_EPSILON else Regime.GENERAL


@dataclass(frozen=True)
class SolutionParams:
    """Endpoint exponents of one solution: ``k4 >= 0`` at the origin-like
    endpoint and ``k5`` at the far endpoint (``k5 > 0`` for a normalizable
    bound state)."""

    k4: float
    k5: float


@dataclass(frozen=True)
class SpectralUnknown:
    """The single scalar the eigencondition is solved for (an energy or a
    dimensionless eigenparameter), together with its search bracket."""

    name: str
    bracket: tuple[float, float]
    units: str = ""

    def __post_init__(self):
        lo, hi = self.bracket
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"bracket must satisfy lo < hi, got {self.bracket}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Level labels.  ``l`` is real-valued so composite problems can feed a
    non-integer effective orbital index into a radial solve."""

    n: int
    l: float = 0.0
    m: int | None = None
    j: float | None = None

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError(f"n must be a nonnegative integer, got {self.n}")
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")


@dataclass(frozen=True)
class CoefficientMap:
    """Deterministic map from a spectral-unknown value to canonical
    coefficients.  Model parameters are already bound into ``evaluate``.

    ``evaluate`` should accept numpy arrays as well as scalars so that scan
    grids can be evaluated in one shot; all catalog maps do.
    """

    evaluate: Callable[[float], CanonicalCoefficients]

    def __call__(self, value):
        return self.evaluate(value)


# -- endpoint exponents -------------------------------------------------------

def _k4_raw(k1, C):
    """Vectorized origin exponent; NaN where the radicand is negative."""
    with np.errstate(invalid="ignore"):
        disc = (1.0 - k1) ** 2 - 4.0 * np.asarray(C, dtype=float)
        return ((1.0 - k1) + np.sqrt(disc)) / 2.0


def _k5_raw(c: CanonicalCoefficients):
    """Vectorized far-endpoint exponent; NaN where a radicand is negative."""
    with np.errstate(invalid="ignore"):
        if c.regime is Regime.LIMIT:
            rad = (c.k2 / 2.0) ** 2 - np.asarray(c.A, dtype=float)
            return -c.k2 / 2.0 + np.sqrt(rad)
        half = 0.5 + c.k1 / 2.0 - c.k2 / (2.0 * c.k3)
        rad = half**2 - (np.asarray(c.A, dtype=float) / c.k3**2
                         + np.asarray(c.B, dtype=float) / c.k3
                         + np.asarray(c.C, dtype=float))
        return half + np.sqrt(rad)


def compute_k4(c: CanonicalCoefficients) -> float:
    """Origin exponent: the "+" branch of the indicial equation at s = 0.

    Raises NegativeDiscriminant when (1 - k1)^2 - 4C < 0, i.e. when the ODE
    has no regular power-law solution at the origin.
    """
    disc = (1.0 - c.k1) ** 2 - 4.0 * c.C
    if disc < 0.0:
        raise NegativeDiscriminant(
            f"(1 - k1)^2 - 4C = {disc} < 0: no regular origin solution")
    return ((1.0 - c.k1) + math.sqrt(disc)) / 2.0


def compute_k5(c: CanonicalCoefficients) -> float:
    """Far-endpoint exponent, regime-dispatched.

    GENERAL (k3 != 0): exponent of (1 - k3*s)^k5 at s -> 1/k3.
    LIMIT  (k3 -> 0): decay rate of exp(-k5*s) at s -> infinity.
    Always the "+" square-root branch; the "-" branch is non-normalizable.
    """
    if c.regime is Regime.LIMIT:
        rad = (c.k2 / 2.0) ** 2 - c.A
        if rad < 0.0:
            raise NegativeDiscriminant(
                f"(k2/2)^2 - A = {rad} < 0: no decaying solution")
        return -c.k2 / 2.0 + math.sqrt(rad)
    half = 0.5 + c.k1 / 2.0 - c.k2 / (2.0 * c.k3)
    rad = half**2 - (c.A / c.k3**2 + c.B / c.k3 + c.C)
    if rad < 0.0:
        raise NegativeDiscriminant(
            f"far-endpoint radicand = {rad} < 0: no decaying solution")
    return half + math.sqrt(rad)


def solution_params(c: CanonicalCoefficients) -> SolutionParams:
    """Both endpoint exponents of the normalizable solution family."""
    return SolutionParams(k4=compute_k4(c), k5=compute_k5(c))
