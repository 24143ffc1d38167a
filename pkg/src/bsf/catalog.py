"""Model catalog: the solvable potential problems wired into the canonical
ODE framework.

Each entry bundles, for one wave equation + potential pairing:

* parameter defaults and validity checks,
* the coordinate map r -> s and its inverse,
* the coefficient map (spectral unknown -> canonical coefficients),
* the search bracket for the spectral unknown,
* the textbook closed-form spectrum (when one exists) for conformance,
* the physical-coordinate radial problem for the shooting oracle.

Angular-equation centrifugal terms are handled per entry: the exponential
potentials replace 1/r^2 by the standard three-constant exponential scheme
(d0 + d1/(e^{r/b}-1) + d2/(e^{r/b}-1)^2)/b^2, with the constants each
reference solution actually used, so the closed forms stay exact for l > 0.
The oracle integrates the same approximated equation by default (that is
the claim being verified); the true-1/r^2 integration stays available as a
diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .canonical import (
    CanonicalCoefficients,
    CoefficientMap,
    QuantumNumbers,
    SpectralUnknown,
)
from .errors import ComplexAngularRoot, ParameterError
from .shooting import Measure, RadialProblem


class EquationKind(Enum):
    SCHRODINGER = "schrodinger"
    KLEIN_GORDON = "klein_gordon"
    DIRAC = "dirac"
    KEMMER = "kemmer"


Params = dict


@dataclass(frozen=True)
class ModelSpec:
    """One catalog entry.  All callables take the merged parameter dict; the
    quantum numbers carry (n, l) plus m / j where a model needs them."""

    id: str
    description: str
    equation_kind: EquationKind
    parameters: dict
    measure: Measure
    unknown_name: str
    coefficient_map: Callable[[Params, QuantumNumbers], CoefficientMap]
    spectral_unknown: Callable[[Params, QuantumNumbers], SpectralUnknown]
    transform: Callable[[Params, np.ndarray], np.ndarray]
    inverse_transform: Callable[[Params, np.ndarray], np.ndarray]
    domain_r: Callable[[Params], tuple[float, float]]
    domain_s: Callable[[Params], tuple[float, float]]
    closed_form: Callable[[Params, QuantumNumbers], float] | None = None
    radial_problem: Callable[[Params, QuantumNumbers], RadialProblem] | None = None
    validate: Callable[[Params, QuantumNumbers], None] | None = None
    aim_x0: Callable[[Params, QuantumNumbers], float] | None = None
    report_sign: Callable[[Params], float] | None = None
    notes: str = ""

    def merge_params(self, overrides: dict | None = None) -> dict:
        merged = dict(self.parameters)
        if overrides:
            for key, value in overrides.items():
                if key not in merged:
                    raise ParameterError(
                        f"unknown parameter {key!r} for model {self.id!r}; "
                        f"valid names: {sorted(merged)}")
                merged[key] = float(value)
        return merged

    def check(self, params: Params, qn: QuantumNumbers) -> None:
        if self.validate is not None:
            self.validate(params, qn)


def _err(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


# ---------------------------------------------------------------------------
# spherical oscillator
# ---------------------------------------------------------------------------

def _osc_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    m, w, hb = p["m"], p["omega"], p["hbar"]
    l = qn.l

    def evaluate(E):
        E = np.asarray(E, dtype=float)
        return CanonicalCoefficients(
            k1=1.5, k2=0.0, k3=0.0,
            A=-(m * m * w * w) / (4.0 * hb * hb),
            B=m * E / (2.0 * hb * hb),
            C=-l * (l + 1.0) / 4.0)

    return CoefficientMap(evaluate)


def _osc_closed(p: Params, qn: QuantumNumbers) -> float:
    return (qn.l + 1.5 + 2.0 * qn.n) * p["hbar"] * p["omega"]


def _osc_unknown(p: Params, qn: QuantumNumbers) -> SpectralUnknown:
    scale = p["hbar"] * p["omega"]
    return SpectralUnknown("E", (1e-3 * scale, (qn.l + 2.0 * qn.n + 8.0) * scale),
                           units="energy")


def _osc_radial(p: Params, qn: QuantumNumbers) -> RadialProblem:
    m, w, hb = p["m"], p["omega"], p["hbar"]
    l = qn.l
    r_max = math.sqrt((66.0 + 8.0 * (qn.n + l)) * hb / (m * w))

    def q(r, E):
        r = np.asarray(r, dtype=float)
        return (l * (l + 1.0) / r**2 + (m * w / hb) ** 2 * r**2
                - 2.0 * m * E / (hb * hb))

    return RadialProblem(q=q, domain=(1e-6, r_max), measure=Measure.DR,
                         first_derivative_removed="u = r*R",
                         origin_exponent=l + 1.0, name="spherical_oscillator")


SPHERICAL_OSCILLATOR = ModelSpec(
    id="spherical_oscillator",
    description="Isotropic harmonic well, s = r^2",
    equation_kind=EquationKind.SCHRODINGER,
    parameters={"m": 1.0, "omega": 1.0, "hbar": 1.0},
    measure=Measure.R2DR,
    unknown_name="E",
    coefficient_map=_osc_map,
    spectral_unknown=_osc_unknown,
    transform=lambda p, r: np.asarray(r, dtype=float) ** 2,
    inverse_transform=lambda p, s: np.sqrt(np.asarray(s, dtype=float)),
    domain_r=lambda p: (0.0, math.sqrt(80.0 * p["hbar"] / (p["m"] * p["omega"]))),
    domain_s=lambda p: (0.0, 80.0 * p["hbar"] / (p["m"] * p["omega"])),
    closed_form=_osc_closed,
    radial_problem=_osc_radial,
    validate=lambda p, qn: (_err(p["m"] > 0, "m > 0"),
                            _err(p["omega"] > 0, "omega > 0"),
                            _err(p["hbar"] > 0, "hbar > 0")) and None,
)


# ---------------------------------------------------------------------------
# Manning-Rosen (and its Hulthen special case)
# ---------------------------------------------------------------------------

_MR_D = (1.0 / 12.0, 1.0, 1.0)  # centrifugal scheme constants (d0, d1, d2)


def _mr_beta(p: Params, l: float) -> tuple[float, float]:
    d0, d1, d2 = _MR_D
    beta1 = p["Atilde"] - l * (l + 1.0) * d1
    beta2 = p["alpha"] * (p["alpha"] - 1.0) + l * (l + 1.0) * d2
    return beta1, beta2


def _mr_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    hb, mu, b = p["hbar"], p["mu"], p["b"]
    l = qn.l
    d0 = _MR_D[0]
    beta1, beta2 = _mr_beta(p, l)
    scale = 2.0 * mu * b * b / (hb * hb)

    def evaluate(E):
        E = np.asarray(E, dtype=float)
        with np.errstate(invalid="ignore"):
            xi2 = -scale * E + l * (l + 1.0) * d0
        return CanonicalCoefficients(
            k1=1.0, k2=1.0, k3=1.0,
            A=-(xi2 + beta1 + beta2), B=2.0 * xi2 + beta1, C=-xi2)

    return CoefficientMap(evaluate)


def _mr_closed(p: Params, qn: QuantumNumbers) -> float:
    hb, mu, b = p["hbar"], p["mu"], p["b"]
    alpha, At = p["alpha"], p["Atilde"]
    n, l = qn.n, qn.l
    w = n + 0.5 + 0.5 * math.sqrt((1.0 - 2.0 * alpha) ** 2 + 4.0 * l * (l + 1.0))
    unit = hb * hb / (2.0 * mu * b * b)
    return (unit * l * (l + 1.0) / 12.0
            - unit * ((At + alpha * (alpha - 1.0) - w * w) / (2.0 * w)) ** 2)


def _mr_unknown(p: Params, qn: QuantumNumbers) -> SpectralUnknown:
    hb, mu, b = p["hbar"], p["mu"], p["b"]
    unit = hb * hb / (2.0 * mu * b * b)
    depth = p["Atilde"] + max(p["alpha"] * (p["alpha"] - 1.0), 0.0) + 1.0
    lo = -unit * depth * depth / 2.0 - unit
    hi = unit * qn.l * (qn.l + 1.0) / 12.0 - 1e-10 * unit
    return SpectralUnknown("E", (lo, hi), units="energy")


def _mr_radial(p: Params, qn: QuantumNumbers, true_centrifugal: bool = False,
               ) -> RadialProblem:
    hb, mu, b = p["hbar"], p["mu"], p["b"]
    alpha, At = p["alpha"], p["Atilde"]
    l = qn.l
    d0, d1, d2 = _MR_D
    _, beta2 = _mr_beta(p, l)

    def q(r, E):
        r = np.asarray(r, dtype=float)
        f1 = 1.0 / np.expm1(r / b)
        cent = (l * (l + 1.0) / r**2 if true_centrifugal
                else l * (l + 1.0) * (d0 + d1 * f1 + d2 * f1 * f1) / (b * b))
        return (-2.0 * mu * E / (hb * hb)
                + (alpha * (alpha - 1.0) * f1 * f1 - At * f1) / (b * b)
                + cent)

    power = 0.5 + math.sqrt(0.25 + (l * (l + 1.0) if true_centrifugal else beta2))
    return RadialProblem(q=q, domain=(1e-4 * b, 60.0 * b), measure=Measure.DR,
                         origin_exponent=power, name="manning_rosen")


MANNING_ROSEN = ModelSpec(
    id="manning_rosen",
    description="Manning-Rosen well, s = exp(-r/b)",
    equation_kind=EquationKind.SCHRODINGER,
    parameters={"hbar": 1.0, "mu": 1.0, "b": 1.0, "alpha": 1.0, "Atilde": 2.0},
    measure=Measure.DR,
    unknown_name="E",
    coefficient_map=_mr_map,
    spectral_unknown=_mr_unknown,
    transform=lambda p, r: np.exp(-np.asarray(r, dtype=float) / p["b"]),
    inverse_transform=lambda p, s: -p["b"] * np.log(np.asarray(s, dtype=float)),
    domain_r=lambda p: (0.0, 60.0 * p["b"]),
    domain_s=lambda p: (0.0, 1.0),
    closed_form=_mr_closed,
    radial_problem=_mr_radial,
    validate=lambda p, qn: (_err(p["b"] > 0, "b > 0"),
                            _err(p["mu"] > 0, "mu > 0")) and None,
    notes="true-1/r^2 oracle available as a diagnostic via radial_problem(..., true_centrifugal=True)",
)


def _hulthen_params(p: Params) -> Params:
    q = dict(p)
    q["alpha"] = 1.0
    return q


HULTHEN = ModelSpec(
    id="hulthen",
    description="Hulthen well (Manning-Rosen at alpha = 1)",
    equation_kind=EquationKind.SCHRODINGER,
    parameters={"hbar": 1.0, "mu": 1.0, "b": 1.0, "Atilde": 2.0},
    measure=Measure.DR,
    unknown_name="E",
    coefficient_map=lambda p, qn: _mr_map(_hulthen_params(p), qn),
    spectral_unknown=lambda p, qn: _mr_unknown(_hulthen_params(p), qn),
    transform=lambda p, r: np.exp(-np.asarray(r, dtype=float) / p["b"]),
    inverse_transform=lambda p, s: -p["b"] * np.log(np.asarray(s, dtype=float)),
    domain_r=lambda p: (0.0, 60.0 * p["b"]),
    domain_s=lambda p: (0.0, 1.0),
    closed_form=lambda p, qn: _mr_closed(_hulthen_params(p), qn),
    radial_problem=lambda p, qn: _mr_radial(_hulthen_params(p), qn),
    validate=lambda p, qn: (_err(p["b"] > 0, "b > 0"),
                            _err(p["mu"] > 0, "mu > 0")) and None,
)


# ---------------------------------------------------------------------------
# Eckart
# ---------------------------------------------------------------------------

_ECKART_D = (0.0, 1.0, 1.0)  # the reference solutions use the d0 = 0 scheme


def _eckart_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    a, alpha, beta = p["a"], p["alpha"], p["beta"]
    l = qn.l
    d0, d1, d2 = _ECKART_D
    ll = l * (l + 1.0)
    a2 = a * a

    def evaluate(E):
        E = np.asarray(E, dtype=float)
        return CanonicalCoefficients(
            k1=1.0, k2=1.0, k3=1.0,
            A=2.0 * a2 * (E - alpha) - ll * (d0 - d1 + d2),
            B=-2.0 * a2 * (2.0 * E + beta - alpha) - ll * (d1 - 2.0 * d0),
            C=2.0 * a2 * E - ll * d0)

    return CoefficientMap(evaluate)


def _eckart_w(p: Params, qn: QuantumNumbers) -> float:
    return (qn.n + 0.5 + 0.5 * math.sqrt((2.0 * qn.l + 1.0) ** 2
                                         + 8.0 * p["beta"] * p["a"] ** 2))


def _eckart_closed(p: Params, qn: QuantumNumbers) -> float:
    a, alpha = p["a"], p["alpha"]
    w = _eckart_w(p, qn)
    return alpha - (1.0 / (8.0 * a * a)) * ((2.0 * alpha * a * a + w * w) / w) ** 2


def _eckart_unknown(p: Params, qn: QuantumNumbers) -> SpectralUnknown:
    a, alpha, beta = p["a"], p["alpha"], p["beta"]
    lo = -(alpha * alpha * a * a) / 2.0 - abs(beta) - 5.0
    return SpectralUnknown("E", (lo, -1e-9), units="energy")


def _eckart_radial(p: Params, qn: QuantumNumbers, true_centrifugal: bool = False,
                   ) -> RadialProblem:
    a, alpha, beta = p["a"], p["alpha"], p["beta"]
    l = qn.l
    d0, d1, d2 = _ECKART_D
    ll = l * (l + 1.0)

    def q(r, E):
        r = np.asarray(r, dtype=float)
        z = np.exp(-r / a)
        f1 = z / (1.0 - z)
        f2 = f1 / (1.0 - z)
        cent = (ll / r**2 if true_centrifugal
                else ll * (d0 + d1 * f1 + d2 * f1 * f1) / (a * a))
        return -2.0 * E + 2.0 * beta * f2 - 2.0 * alpha * f1 + cent

    power = 0.5 + math.sqrt(0.25 + 2.0 * beta * a * a
                            + (ll if true_centrifugal else ll * _ECKART_D[2]))
    return RadialProblem(q=q, domain=(0.01 * a, 50.0 * a), measure=Measure.DR,
                         origin_exponent=power, name="eckart")


ECKART = ModelSpec(
    id="eckart",
    description="Eckart well/barrier combination, s = exp(-r/a), hbar = mu = 1",
    equation_kind=EquationKind.SCHRODINGER,
    parameters={"a": 1.0, "alpha": 16.0, "beta": 0.5},
    measure=Measure.DR,
    unknown_name="E",
    coefficient_map=_eckart_map,
    spectral_unknown=_eckart_unknown,
    transform=lambda p, r: np.exp(-np.asarray(r, dtype=float) / p["a"]),
    inverse_transform=lambda p, s: -p["a"] * np.log(np.asarray(s, dtype=float)),
    domain_r=lambda p: (0.0, 50.0 * p["a"]),
    domain_s=lambda p: (0.0, 1.0),
    closed_form=_eckart_closed,
    radial_problem=_eckart_radial,
    validate=lambda p, qn: (_err(p["a"] > 0, "a > 0"),
                            _err(p["beta"] >= 0, "beta >= 0")) and None,
    notes="bound states require 2*alpha*a^2 > (n + 1/2 + sqrt((2l+1)^2 + 8*beta*a^2)/2)^2; "
          "outside that range the closed form is an artifact of the squared condition",
)


# ---------------------------------------------------------------------------
# Kratzer
# ---------------------------------------------------------------------------

def _kratzer_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    mu, hb, de, a = p["mu"], p["hbar"], p["De"], p["a"]
    l = qn.l

    def evaluate(E):
        E = np.asarray(E, dtype=float)
        return CanonicalCoefficients(
            k1=0.0, k2=0.0, k3=0.0,
            A=2.0 * mu * E / (hb * hb),
            B=4.0 * mu * de * a / (hb * hb),
            C=-2.0 * mu * de * a * a / (hb * hb) - l * (l + 1.0))

    return CoefficientMap(evaluate)


def _kratzer_w(p: Params, qn: QuantumNumbers) -> float:
    mu, hb, de, a = p["mu"], p["hbar"], p["De"], p["a"]
    return qn.n + 0.5 + math.sqrt((0.5 + qn.l) ** 2 + 2.0 * mu * de * a * a / (hb * hb))


def _kratzer_closed(p: Params, qn: QuantumNumbers) -> float:
    mu, hb, de, a = p["mu"], p["hbar"], p["De"], p["a"]
    return -2.0 * mu * de * de * a * a / (hb * hb) / _kratzer_w(p, qn) ** 2


def _kratzer_unknown(p: Params, qn: QuantumNumbers) -> SpectralUnknown:
    mu, hb, de, a = p["mu"], p["hbar"], p["De"], p["a"]
    scale = 2.0 * mu * de * de * a * a / (hb * hb)
    return SpectralUnknown("E", (-1.2 * scale, -1e-12 * scale), units="energy")


def _kratzer_radial(p: Params, qn: QuantumNumbers) -> RadialProblem:
    mu, hb, de, a = p["mu"], p["hbar"], p["De"], p["a"]
    l = qn.l
    length = max(a, hb * hb / (2.0 * mu * de * a))
    r_max = (30.0 + 25.0 * (qn.n + qn.l)) * length

    def q(r, E):
        r = np.asarray(r, dtype=float)
        return ((2.0 * mu * de * a * a / (hb * hb) + l * (l + 1.0)) / r**2
                - 4.0 * mu * de * a / (hb * hb) / r
                - 2.0 * mu * E / (hb * hb))

    power = 0.5 + math.sqrt((0.5 + l) ** 2 + 2.0 * mu * de * a * a / (hb * hb))
    return RadialProblem(q=q, domain=(0.02 * length, r_max), measure=Measure.DR,
                         origin_exponent=power, name="kratzer")


KRATZER = ModelSpec(
    id="kratzer",
    description="Kratzer molecular potential, s = r",
    equation_kind=EquationKind.SCHRODINGER,
    parameters={"mu": 1.0, "hbar": 1.0, "De": 1.0, "a": 1.0},
    measure=Measure.DR,
    unknown_name="E",
    coefficient_map=_kratzer_map,
    spectral_unknown=_kratzer_unknown,
    transform=lambda p, r: np.asarray(r, dtype=float),
    inverse_transform=lambda p, s: np.asarray(s, dtype=float),
    domain_r=lambda p: (0.0, 80.0 * max(p["a"], 1.0)),
    domain_s=lambda p: (0.0, 80.0 * max(p["a"], 1.0)),
    closed_form=_kratzer_closed,
    radial_problem=_kratzer_radial,
    validate=lambda p, qn: (_err(p["De"] > 0, "De > 0"),
                            _err(p["a"] > 0, "a > 0"),
                            _err(p["mu"] > 0, "mu > 0")) and None,
)


# ---------------------------------------------------------------------------
# generalized non-central Coulomb: radial part + angular companion
# ---------------------------------------------------------------------------

def effective_l_noncentral(m: int, beta: float, gamma: float,
                           n_theta: int) -> float:
    """Effective (generally non-integer) orbital index produced by the
    angular quantization of the ring-shaped problem.

    Preconditions: (m^2 + beta)^2 >= gamma^2 and m^2 + beta +- gamma >= 0;
    otherwise the angular exponents go complex.
    """
    base = m * m + beta
    if base * base < gamma * gamma:
        raise ComplexAngularRoot(f"(m^2 + beta)^2 = {base * base} < gamma^2")
    if base + gamma < 0 or base - gamma < 0:
        raise ComplexAngularRoot("m^2 + beta +- gamma must both be nonnegative")
    return n_theta + math.sqrt((base + math.sqrt(base * base - gamma * gamma)) / 2.0)


def noncentral_energy(N: int, n_theta: int, m: int, p: Params) -> float:
    """Closed-form level of the ring-shaped Coulomb problem (radial index N,
    angular index n_theta, magnetic index m)."""
    l_eff = effective_l_noncentral(m, p["beta"], p["gamma"], n_theta)
    mu, hb, z, e2 = p["mu"], p["hbar"], p["Z"], p["e2"]
    return -mu * (z * e2) ** 2 / (2.0 * hb * hb * (N + l_eff + 1.0) ** 2)


def _ncc_effective_l(p: Params, qn: QuantumNumbers) -> float:
    if qn.m is not None:
        return effective_l_noncentral(qn.m, p["beta"], p["gamma"],
                                      int(p["n_theta"]))
    return qn.l


def _ncc_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    mu, hb, z, e2 = p["mu"], p["hbar"], p["Z"], p["e2"]
    l = _ncc_effective_l(p, qn)

    def evaluate(E):
        E = np.asarray(E, dtype=float)
        return CanonicalCoefficients(
            k1=2.0, k2=0.0, k3=0.0,
            A=2.0 * mu * E / (hb * hb),
            B=2.0 * mu * z * e2 / (hb * hb),
            C=-l * (l + 1.0))

    return CoefficientMap(evaluate)


def _ncc_closed(p: Params, qn: QuantumNumbers) -> float:
    mu, hb, z, e2 = p["mu"], p["hbar"], p["Z"], p["e2"]
    l = _ncc_effective_l(p, qn)
    return -mu * (z * e2) ** 2 / (2.0 * hb * hb * (qn.n + l + 1.0) ** 2)


def _ncc_unknown(p: Params, qn: QuantumNumbers) -> SpectralUnknown:
    mu, hb, z, e2 = p["mu"], p["hbar"], p["Z"], p["e2"]
    scale = mu * (z * e2) ** 2 / (hb * hb)
    return SpectralUnknown("E", (-0.75 * scale, -1e-12 * scale), units="energy")


def _ncc_radial(p: Params, qn: QuantumNumbers) -> RadialProblem:
    mu, hb, z, e2 = p["mu"], p["hbar"], p["Z"], p["e2"]
    l = _ncc_effective_l(p, qn)
    a0 = hb * hb / (mu * z * e2)
    n_pr = qn.n + l + 1.0
    r_max = a0 * (30.0 * n_pr + 2.0 * n_pr * n_pr + 10.0)

    def q(r, E):
        r = np.asarray(r, dtype=float)
        return (l * (l + 1.0) / r**2 - 2.0 * mu * z * e2 / (hb * hb) / r
                - 2.0 * mu * E / (hb * hb))

    return RadialProblem(q=q, domain=(1e-3 * a0, r_max), measure=Measure.DR,
                         first_derivative_removed="u = r*R",
                         origin_exponent=l + 1.0, name="noncentral_coulomb")


NONCENTRAL_COULOMB = ModelSpec(
    id="noncentral_coulomb",
    description="Coulomb field plus ring-shaped angular couplings; radial "
                "solve with the effective orbital index from the angular sector",
    equation_kind=EquationKind.SCHRODINGER,
    parameters={"mu": 1.0, "hbar": 1.0, "Z": 1.0, "e2": 1.0,
                "beta": 0.0, "gamma": 0.0, "n_theta": 0.0},
    measure=Measure.R2DR,
    unknown_name="E",
    coefficient_map=_ncc_map,
    spectral_unknown=_ncc_unknown,
    transform=lambda p, r: np.asarray(r, dtype=float),
    inverse_transform=lambda p, s: np.asarray(s, dtype=float),
    domain_r=lambda p: (0.0, 120.0 * p["hbar"] ** 2 / (p["mu"] * p["Z"] * p["e2"])),
    domain_s=lambda p: (0.0, 120.0 * p["hbar"] ** 2 / (p["mu"] * p["Z"] * p["e2"])),
    closed_form=_ncc_closed,
    radial_problem=_ncc_radial,
    validate=lambda p, qn: (_err(p["Z"] > 0, "Z > 0"),
                            _err(p["mu"] > 0, "mu > 0"),
                            _err(p["e2"] > 0, "e2 > 0")) and None,
    notes="pass --m to derive the effective l from (m, beta, gamma, n_theta); "
          "otherwise --l is used directly (real values allowed)",
)


def _angular_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    if qn.m is None:
        raise ParameterError("the angular entry needs the magnetic index m")
    m = qn.m
    beta, gamma = p["beta"], p["gamma"]

    def evaluate(l_val):
        l_val = np.asarray(l_val, dtype=float)
        return CanonicalCoefficients(
            k1=1.0, k2=-2.0, k3=-1.0,
            A=-l_val * (l_val + 1.0),
            B=-l_val * (l_val + 1.0) - gamma / 2.0,
            C=-(m * m + beta + gamma) / 4.0)

    return CoefficientMap(evaluate)


NONCENTRAL_COULOMB_ANGULAR = ModelSpec(
    id="noncentral_coulomb_angular",
    description="Angular sector of the ring-shaped problem, s = (cos(theta) - 1)/2; "
                "the spectral unknown is the orbital separation index l",
    equation_kind=EquationKind.SCHRODINGER,
    parameters={"beta": 0.0, "gamma": 0.0},
    measure=Measure.DR,
    unknown_name="l",
    coefficient_map=_angular_map,
    spectral_unknown=lambda p, qn: SpectralUnknown(
        "l", (1e-6, qn.n + math.sqrt(abs(qn.m or 1) ** 2 + abs(p["beta"])
                                     + abs(p["gamma"])) + 6.0)),
    transform=lambda p, theta: (np.cos(np.asarray(theta, dtype=float)) - 1.0) / 2.0,
    inverse_transform=lambda p, s: np.arccos(1.0 + 2.0 * np.asarray(s, dtype=float)),
    domain_r=lambda p: (0.0, math.pi),
    domain_s=lambda p: (-1.0, 0.0),
    closed_form=lambda p, qn: effective_l_noncentral(
        qn.m if qn.m is not None else 1, p["beta"], p["gamma"], qn.n),
    radial_problem=None,
    validate=lambda p, qn: None,
    notes="verified formula-vs-AIM; the theta-equation is not integrated by the oracle",
)


# ---------------------------------------------------------------------------
# Klein-Gordon Coulomb
# ---------------------------------------------------------------------------

def _kgc_check(p: Params, qn: QuantumNumbers) -> None:
    _err(p["m0"] > 0 and p["c"] > 0 and p["hbar"] > 0, "m0, c, hbar > 0")
    _err(p["Zalpha"] > 0, "Zalpha > 0")
    _err(p["Zalpha"] < qn.l + 0.5,
         f"Zalpha = {p['Zalpha']} must be < l + 1/2 = {qn.l + 0.5}")
    _err(p["branch"] in (-1.0, 1.0), "branch must be +1 or -1")


def _kgc_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    _kgc_check(p, qn)
    m0, c, hb, za = p["m0"], p["c"], p["hbar"], p["Zalpha"]
    l = qn.l
    mc2 = m0 * c * c

    def evaluate(eps):
        eps = np.asarray(eps, dtype=float)
        return CanonicalCoefficients(
            k1=0.0, k2=0.0, k3=0.0,
            A=(eps * eps - mc2 * mc2) / (hb * c) ** 2,
            B=2.0 * eps * za / (hb * c),
            C=za * za - l * (l + 1.0))

    return CoefficientMap(evaluate)


def _kgc_closed(p: Params, qn: QuantumNumbers) -> float:
    m0, c, za = p["m0"], p["c"], p["Zalpha"]
    n, l = qn.n, qn.l
    denom = n + 0.5 + math.sqrt((l + 0.5) ** 2 - za * za)
    mag = m0 * c * c / math.sqrt(1.0 + (za / denom) ** 2)
    return p["branch"] * mag


def _kgc_unknown(p: Params, qn: QuantumNumbers) -> SpectralUnknown:
    mc2 = p["m0"] * p["c"] ** 2
    return SpectralUnknown("epsilon", (1e-9 * mc2, mc2 * (1.0 - 1e-12)),
                           units="energy")


def kg_coulomb_relation_residual(eps: float, n: int, l: float,
                                 p: Params) -> float:
    """Residual of the unsquared relativistic Coulomb relation
    eps*Zalpha / sqrt((m0 c^2)^2 - eps^2) = n + 1/2 + sqrt((l+1/2)^2 - Zalpha^2)."""
    mc2 = p["m0"] * p["c"] ** 2
    za = p["Zalpha"]
    lhs = eps * za / math.sqrt(mc2 * mc2 - eps * eps)
    rhs = n + 0.5 + math.sqrt((l + 0.5) ** 2 - za * za)
    return lhs - rhs


def _kgc_radial(p: Params, qn: QuantumNumbers) -> RadialProblem:
    m0, c, hb, za = p["m0"], p["c"], p["hbar"], p["Zalpha"]
    l = qn.l
    mc2 = m0 * c * c
    scale = hb * c / (mc2 * za)
    r_max = 35.0 * (qn.n + l + 1.0) * scale

    def q(r, eps):
        r = np.asarray(r, dtype=float)
        return ((l * (l + 1.0) - za * za) / r**2
                - 2.0 * eps * za / (hb * c) / r
                + (mc2 * mc2 - eps * eps) / (hb * c) ** 2)

    power = 0.5 + math.sqrt((l + 0.5) ** 2 - za * za)
    return RadialProblem(q=q, domain=(1e-4 * scale, r_max), measure=Measure.DR,
                         origin_exponent=power, name="kg_coulomb")


KG_COULOMB = ModelSpec(
    id="kg_coulomb",
    description="Klein-Gordon equation with a Coulomb field, s = r; the "
                "spectral unknown is the relativistic energy epsilon",
    equation_kind=EquationKind.KLEIN_GORDON,
    parameters={"m0": 1.0, "c": 1.0, "hbar": 1.0, "Zalpha": 0.3, "branch": 1.0},
    measure=Measure.DR,
    unknown_name="epsilon",
    coefficient_map=_kgc_map,
    spectral_unknown=_kgc_unknown,
    transform=lambda p, r: np.asarray(r, dtype=float),
    inverse_transform=lambda p, s: np.asarray(s, dtype=float),
    domain_r=lambda p: (0.0, 200.0 * p["hbar"] * p["c"] / (p["m0"] * p["c"] ** 2 * p["Zalpha"])),
    domain_s=lambda p: (0.0, 200.0 * p["hbar"] * p["c"] / (p["m0"] * p["c"] ** 2 * p["Zalpha"])),
    closed_form=_kgc_closed,
    radial_problem=_kgc_radial,
    validate=_kgc_check,
    report_sign=lambda p: p["branch"],
    notes="both signs of epsilon satisfy the squared relation; the solver works "
          "on the positive branch and the branch parameter flips the report",
)


# ---------------------------------------------------------------------------
# Klein-Gordon Eckart
# ---------------------------------------------------------------------------

def _kge_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    m, a, alpha, beta = p["M"], p["a"], p["alpha"], p["beta"]
    ll = qn.l * (qn.l + 1.0)

    def evaluate(E):
        E = np.asarray(E, dtype=float)
        lam2 = a * a * (m * m - E * E)
        k2c = 2.0 * (m + E) * a * a
        return CanonicalCoefficients(
            k1=1.0, k2=1.0, k3=1.0,
            A=-lam2 - k2c * alpha,
            B=2.0 * lam2 + k2c * (alpha - beta) - ll,
            C=-lam2)

    return CoefficientMap(evaluate)


def kg_eckart_relation_residual(E: float, n: int, l: float, p: Params) -> float:
    """Residual of the implicit relativistic Eckart quantization
    lam + 1/2 + delta + n = sqrt(lam^2 + k^2 alpha)."""
    m, a, alpha, beta = p["M"], p["a"], p["alpha"], p["beta"]
    lam = a * math.sqrt(m * m - E * E)
    k2c = 2.0 * (m + E) * a * a
    delta = 0.5 * math.sqrt((2.0 * l + 1.0) ** 2 + 4.0 * k2c * beta)
    return lam + 0.5 + delta + n - math.sqrt(lam * lam + k2c * alpha)


def _kge_unknown(p: Params, qn: QuantumNumbers) -> SpectralUnknown:
    m = p["M"]
    return SpectralUnknown("E", (-m * (1.0 - 1e-12), m * (1.0 - 1e-12)),
                           units="energy")


def _kge_radial(p: Params, qn: QuantumNumbers) -> RadialProblem:
    m, a, alpha, beta = p["M"], p["a"], p["alpha"], p["beta"]
    ll = qn.l * (qn.l + 1.0)

    def q(r, E):
        r = np.asarray(r, dtype=float)
        x = np.exp(-r / a)
        f1 = x / (1.0 - x)
        f2 = f1 / (1.0 - x)
        lam2 = a * a * (m * m - E * E)
        k2c = 2.0 * (m + E) * a * a
        return (lam2 - k2c * alpha * f1 + (k2c * beta + ll) * f2) / (a * a)

    return RadialProblem(q=q, domain=(0.03 * a, 70.0 * a), measure=Measure.DR,
                         origin_exponent=None, name="kg_eckart")


KG_ECKART = ModelSpec(
    id="kg_eckart",
    description="Klein-Gordon equation with Eckart couplings, s = exp(-r/a), "
                "hbar = c = 1; quantization is implicit (no closed form)",
    equation_kind=EquationKind.KLEIN_GORDON,
    parameters={"M": 1.0, "a": 1.0, "alpha": 6.0, "beta": 0.5},
    measure=Measure.DR,
    unknown_name="E",
    coefficient_map=_kge_map,
    spectral_unknown=_kge_unknown,
    transform=lambda p, r: np.exp(-np.asarray(r, dtype=float) / p["a"]),
    inverse_transform=lambda p, s: -p["a"] * np.log(np.asarray(s, dtype=float)),
    domain_r=lambda p: (0.0, 70.0 * p["a"]),
    domain_s=lambda p: (0.0, 1.0),
    closed_form=None,
    radial_problem=_kge_radial,
    validate=lambda p, qn: (_err(p["M"] > 0, "M > 0"),
                            _err(p["a"] > 0, "a > 0"),
                            _err(p["beta"] >= 0, "beta >= 0")) and None,
    notes="several admissible roots can coexist for one n; all are returned ascending",
)


# ---------------------------------------------------------------------------
# Dirac-Morse (already reduced to a one-component equation in y)
# ---------------------------------------------------------------------------

def _dm_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    b1, b2 = p["beta1"], p["beta2"]

    def evaluate(eps):
        eps = np.asarray(eps, dtype=float)
        return CanonicalCoefficients(
            k1=1.0, k2=0.0, k3=0.0,
            A=-b2 * b2,
            B=b1 * b1 + 0.0 * eps,
            C=-eps * eps)

    return CoefficientMap(evaluate)


def _dm_closed(p: Params, qn: QuantumNumbers) -> float:
    b1, b2 = p["beta1"], p["beta2"]
    return (b1 * b1 - (2.0 * qn.n + 1.0) * b2) / (2.0 * b2)


DIRAC_MORSE = ModelSpec(
    id="dirac_morse",
    description="Dirac-Morse bound-state relation in the reduced variable y; "
                "the spectral unknown is the exponent parameter epsilon",
    equation_kind=EquationKind.DIRAC,
    parameters={"beta1": 2.0, "beta2": 1.0},
    measure=Measure.DR,
    unknown_name="epsilon",
    coefficient_map=_dm_map,
    spectral_unknown=lambda p, qn: SpectralUnknown(
        "epsilon", (1e-9, max(10.0, p["beta1"] ** 2 / p["beta2"]))),
    transform=lambda p, r: np.asarray(r, dtype=float),
    inverse_transform=lambda p, s: np.asarray(s, dtype=float),
    domain_r=lambda p: (0.0, 40.0 / p["beta2"]),
    domain_s=lambda p: (0.0, 40.0 / p["beta2"]),
    closed_form=_dm_closed,
    radial_problem=None,
    validate=lambda p, qn: (_err(p["beta2"] > 0, "beta2 > 0"),) and None,
    notes="levels exist only while (2n+1)*beta2 < beta1^2 (finite Morse ladder); "
          "verified formula-vs-AIM, the equation is already the transformed one",
)


# ---------------------------------------------------------------------------
# Kemmer oscillator
# ---------------------------------------------------------------------------

def _kemmer_map(p: Params, qn: QuantumNumbers) -> CoefficientMap:
    l = qn.l

    def evaluate(sigma):
        sigma = np.asarray(sigma, dtype=float)
        return CanonicalCoefficients(
            k1=0.5, k2=0.0, k3=0.0,
            A=-0.25,
            B=sigma / 2.0,
            C=-l * (l + 1.0) / 4.0)

    return CoefficientMap(evaluate)


def kemmer_energy(sigma: float, l: float, j: float, p: Params) -> float:
    """Relativistic energy from the oscillator eigenparameter (the printed
    dispersion; exercised at l = 0 where the two level labels coincide)."""
    m, w, hb, c = p["M"], p["omega"], p["hbar"], p["c"]
    mc2 = m * c * c
    n = (sigma - l - 1.5) / 2.0
    bracket = 4.0 * (n + 1.0) + j * (j + 1.0) - l * (l - 1.0)
    return 0.5 * mc2 * math.sqrt(1.0 + 4.0 * bracket * hb * w / mc2)


def _kemmer_radial(p: Params, qn: QuantumNumbers) -> RadialProblem:
    m, w, hb = p["M"], p["omega"], p["hbar"]
    l = qn.l
    c0 = m * w / hb
    r_max = math.sqrt((66.0 + 8.0 * (qn.n + l)) / c0)

    def q(r, sigma):
        r = np.asarray(r, dtype=float)
        return c0 * c0 * r**2 + l * (l + 1.0) / r**2 - 2.0 * c0 * sigma

    return RadialProblem(q=q, domain=(1e-6, r_max), measure=Measure.DR,
                         origin_exponent=l + 1.0, name="kemmer_oscillator")


KEMMER_OSCILLATOR = ModelSpec(
    id="kemmer_oscillator",
    description="Oscillator sector of the Kemmer equation, s = (M omega/hbar) r^2; "
                "the spectral unknown is the dimensionless eigenparameter",
    equation_kind=EquationKind.KEMMER,
    parameters={"M": 1.0, "omega": 1.0, "hbar": 1.0, "c": 1.0},
    measure=Measure.DR,
    unknown_name="sigma",
    coefficient_map=_kemmer_map,
    spectral_unknown=lambda p, qn: SpectralUnknown(
        "sigma", (1e-3, qn.l + 2.0 * qn.n + 10.0)),
    transform=lambda p, r: p["M"] * p["omega"] / p["hbar"] * np.asarray(r, dtype=float) ** 2,
    inverse_transform=lambda p, s: np.sqrt(np.asarray(s, dtype=float) * p["hbar"]
                                           / (p["M"] * p["omega"])),
    domain_r=lambda p: (0.0, math.sqrt(80.0 * p["hbar"] / (p["M"] * p["omega"]))),
    domain_s=lambda p: (0.0, 80.0),
    closed_form=lambda p, qn: qn.l + 1.5 + 2.0 * qn.n,
    radial_problem=_kemmer_radial,
    validate=lambda p, qn: (_err(p["M"] > 0, "M > 0"),
                            _err(p["omega"] > 0, "omega > 0")) and None,
)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_ENTRIES = (
    SPHERICAL_OSCILLATOR,
    MANNING_ROSEN,
    HULTHEN,
    ECKART,
    KRATZER,
    NONCENTRAL_COULOMB,
    NONCENTRAL_COULOMB_ANGULAR,
    KG_COULOMB,
    KG_ECKART,
    DIRAC_MORSE,
    KEMMER_OSCILLATOR,
)

_BY_ID = {entry.id: entry for entry in _ENTRIES}


def catalog_list() -> list[ModelSpec]:
    """All catalog entries, in stable order."""
    return list(_ENTRIES)


def catalog_ids() -> list[str]:
    return [entry.id for entry in _ENTRIES]


def catalog_get(model_id: str) -> ModelSpec:
    try:
        return _BY_ID[model_id]
    except KeyError:
        raise ParameterError(
            f"unknown model {model_id!r}; known ids: {catalog_ids()}") from None
