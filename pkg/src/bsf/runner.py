"""Engine orchestration over catalog entries.

Thin glue shared by the command line, the verification scripts and the test
suite: given a model id, parameter overrides and quantum numbers, run one or
all of the three engines and compare them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import aim, formula, shooting
from .canonical import QuantumNumbers
from .catalog import ModelSpec
from .errors import SolverError
from .formula import Engine, EigenResult

DEFAULT_TOLERANCES = {
    "formula_aim": 1e-7,        # |E_formula - E_aim| / max(1, |E|)
    "formula_shooting": 1e-6,   # |E_formula - E_shooting| / max(1, |E|)
    "root_tol": 1e-12,
    "aim_tol": 1e-9,
}


def solve_formula(entry: ModelSpec, params: dict, qn: QuantumNumbers,
                  **kwargs) -> list[EigenResult]:
    entry.check(params, qn)
    cmap = entry.coefficient_map(params, qn)
    unknown = entry.spectral_unknown(params, qn)
    return formula.solve_eigenvalue(cmap, unknown, qn.n,
                                    domain_s=entry.domain_s(params), **kwargs)


def solve_aim(entry: ModelSpec, params: dict, qn: QuantumNumbers,
              **kwargs) -> EigenResult:
    entry.check(params, qn)
    cmap = entry.coefficient_map(params, qn)
    unknown = entry.spectral_unknown(params, qn)
    x0 = entry.aim_x0(params, qn) if entry.aim_x0 is not None else None
    return aim.aim_solve(cmap, unknown, qn.n, x0=x0, **kwargs)


def solve_shooting(entry: ModelSpec, params: dict, qn: QuantumNumbers,
                   **kwargs) -> EigenResult:
    entry.check(params, qn)
    if entry.radial_problem is None:
        raise SolverError(f"model {entry.id!r} has no shooting oracle")
    problem = entry.radial_problem(params, qn)
    unknown = entry.spectral_unknown(params, qn)
    result = shoot_with_params(entry, params, qn, problem, unknown.bracket,
                               **kwargs)
    return result


def shoot_with_params(entry: ModelSpec, params: dict, qn: QuantumNumbers,
                      problem, bracket, **kwargs) -> EigenResult:
    result = shooting.shoot_eigenvalue(problem, qn.n, bracket, **kwargs)
    # attach the endpoint exponents and the condition residual seen from the
    # coefficient map, so shooting results carry the same diagnostics
    cmap = entry.coefficient_map(params, qn)
    try:
        c = cmap(result.value)
        from .canonical import solution_params
        p = solution_params(c)
        residual = abs(formula.condition(c, qn.n))
    except SolverError:
        p, residual = None, math.nan
    return EigenResult(value=result.value, n=result.n, params=p,
                       residual_formula=residual, engine=Engine.SHOOTING,
                       node_count=result.node_count)


@dataclass(frozen=True)
class VerificationCase:
    """Three-engine comparison for one level."""

    n: int
    l: float
    formula_value: float | None
    aim_value: float | None
    shooting_value: float | None
    formula_error: str | None
    aim_error: str | None
    shooting_error: str | None
    delta_formula_aim: float | None
    delta_formula_shooting: float | None
    passed: bool


def verify_level(entry: ModelSpec, params: dict, qn: QuantumNumbers,
                 tolerances: dict | None = None,
                 engines: tuple[str, ...] = ("formula", "aim", "shooting"),
                 ) -> VerificationCase:
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)

    values: dict[str, float | None] = {"formula": None, "aim": None, "shooting": None}
    errors: dict[str, str | None] = {"formula": None, "aim": None, "shooting": None}

    if "formula" in engines:
        try:
            values["formula"] = solve_formula(entry, params, qn,
                                              compute_residual_ode=False)[0].value
        except SolverError as exc:
            errors["formula"] = f"{type(exc).__name__}: {exc}"
    if "aim" in engines:
        try:
            values["aim"] = solve_aim(entry, params, qn).value
        except SolverError as exc:
            errors["aim"] = f"{type(exc).__name__}: {exc}"
    if "shooting" in engines and entry.radial_problem is not None:
        try:
            values["shooting"] = solve_shooting(entry, params, qn).value
        except SolverError as exc:
            errors["shooting"] = f"{type(exc).__name__}: {exc}"

    def rel_delta(a, b):
        if a is None or b is None:
            return None
        return abs(a - b) / max(1.0, abs(a))

    d_fa = rel_delta(values["formula"], values["aim"])
    d_fs = rel_delta(values["formula"], values["shooting"])

    passed = values["formula"] is not None and errors["formula"] is None
    if "aim" in engines:
        passed = passed and d_fa is not None and d_fa <= tol["formula_aim"]
    if "shooting" in engines and entry.radial_problem is not None:
        passed = passed and d_fs is not None and d_fs <= tol["formula_shooting"]

    return VerificationCase(
        n=qn.n, l=qn.l,
        formula_value=values["formula"], aim_value=values["aim"],
        shooting_value=values["shooting"],
        formula_error=errors["formula"], aim_error=errors["aim"],
        shooting_error=errors["shooting"],
        delta_formula_aim=d_fa, delta_formula_shooting=d_fs,
        passed=bool(passed))
