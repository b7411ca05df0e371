"""Derivative-free minimization of variational energies over the trial exponents.

Nelder-Mead (scipy) is restarted from its own optimum until the energy stops
improving, over a deterministic lattice of starting points. Infeasible
vertices (non-integrable or singular parameters) evaluate to +inf.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from . import closed_form
from .core import (
    ConfigurationError,
    DomainError,
    EnergyResult,
    SingularEvaluationError,
    SystemSpec,
    TrialParams,
    energy_result,
)

PARAMETRIZATIONS = {
    "alpha": 1,             # beta = 0
    "alpha_beta": 2,        # symmetric correlated trial
    "alpha1_alpha2_beta": 3,
}


def params_from_vector(x, parametrization: str) -> TrialParams:
    x = [float(v) for v in x]
    if parametrization == "alpha":
        return TrialParams(x[0], 0.0)
    if parametrization == "alpha_beta":
        return TrialParams(x[0], x[1])
    return TrialParams(x[0], x[2], alpha2=x[1])


def vector_from_params(p: TrialParams, parametrization: str) -> np.ndarray:
    if parametrization == "alpha":
        return np.array([p.alpha1])
    if parametrization == "alpha_beta":
        return np.array([p.alpha1, p.beta])
    return np.array([p.alpha1, p.alpha2, p.beta])


@dataclass
class OptimizationProblem:
    """``model`` maps TrialParams to an energy (a.u.)."""

    model: Callable[[TrialParams], float]
    starts: list
    Z: float
    parametrization: str = "alpha_beta"
    bounds: Sequence[tuple[float, float]] | None = None
    tol: float = 1e-13
    max_restarts: int = 30
    maxiter: int = 4000

    def __post_init__(self):
        if self.parametrization not in PARAMETRIZATIONS:
            raise ConfigurationError(f"unknown parametrization {self.parametrization!r}")

    def objective(self, x) -> float:
        if self.bounds is not None:
            for v, (lo, hi) in zip(x, self.bounds):
                if not lo <= v <= hi:
                    return math.inf
        try:
            e = self.model(params_from_vector(x, self.parametrization))
        except (DomainError, SingularEvaluationError, ZeroDivisionError, ValueError, OverflowError):
            return math.inf
        return e if math.isfinite(e) else math.inf

    def start_vectors(self) -> list[np.ndarray]:
        out = []
        for s in self.starts:
            if isinstance(s, TrialParams):
                out.append(vector_from_params(s, self.parametrization))
            else:
                out.append(np.asarray(s, dtype=float))
        return out


def _simplex(x0: np.ndarray, step: float = 0.05) -> np.ndarray:
    pts = [x0]
    for i in range(len(x0)):
        e = x0.copy()
        e[i] += step * max(abs(x0[i]), 0.1)
        pts.append(e)
    return np.array(pts)


def _local_minimize(problem: OptimizationProblem, x0: np.ndarray):
    f = problem.objective
    x, fx = x0, f(x0)
    iterations = 0
    converged = False
    step = 0.05
    for _ in range(problem.max_restarts):
        res = _scipy_minimize(
            f, x, method="Nelder-Mead",
            options=dict(initial_simplex=_simplex(x, step), xatol=1e-11, fatol=problem.tol,
                         maxiter=problem.maxiter, maxfev=2 * problem.maxiter),
        )
        iterations += int(res.nit)
        improvement = fx - res.fun
        if res.fun <= fx:
            x, fx = res.x, float(res.fun)
        if improvement < problem.tol / 10 and res.success:
            converged = True
            break
        step = max(step / 4, 1e-4)
    return x, fx, iterations, converged


def minimize(problem: OptimizationProblem) -> EnergyResult:
    """Best local minimum over all feasible starts."""
    starts = [x for x in problem.start_vectors() if math.isfinite(problem.objective(x))]
    if not starts:
        raise ConfigurationError("no feasible starting point")
    best = None
    for x0 in starts:
        x, fx, it, conv = _local_minimize(problem, x0)
        if best is None or fx < best[1]:
            best = (x, fx, it, conv)
    x, fx, it, conv = best
    params = params_from_vector(x, problem.parametrization)
    return energy_result(fx, params, problem.Z, iterations=it, converged=conv)


# ----------------------------------------------------------------------------
# ready-made problems
# ----------------------------------------------------------------------------

def hydrogenic_scale(d: int) -> float:
    """Hydrogenic decay rate in d dimensions relative to d = 3, i.e. 2/(d-1)."""
    return 2.0 / (d - 1)


def start_lattice(d: int, parametrization: str = "alpha_beta") -> list[TrialParams]:
    """Deterministic 5-point lattice around alpha = s, beta = -s/4 with s = 2/(d-1)."""
    s = hydrogenic_scale(d)
    a0, b0 = s, -0.25 * s
    pts = [(a0, b0), (1.2 * a0, b0), (0.8 * a0, b0), (a0, 0.5 * b0), (a0, 1.5 * b0)]
    if parametrization == "alpha":
        return [TrialParams(a, 0.0) for a, _ in pts[:3]]
    if parametrization == "alpha1_alpha2_beta":
        return [TrialParams(1.15 * a, b, alpha2=0.85 * a) for a, b in pts] + [
            TrialParams(a, b) for a, b in pts[:1]
        ]
    return [TrialParams(a, b) for a, b in pts]


def static_model(d: int, Z: float, quad_cfg=None) -> Callable[[TrialParams], float]:
    """Energy of the static-nucleus trial; closed forms for d = 2..5, quadrature otherwise."""
    if d in closed_form.ENERGY and quad_cfg is None:
        fn = closed_form.ENERGY[d]

        def model(p: TrialParams) -> float:
            if not p.symmetric:
                from .finitemass import energy_static
                if d % 2 == 0:
                    raise DomainError("asymmetric static trial only supported for odd d")
                return energy_static(p.alpha1, p.alpha2, p.beta, Z, d)
            return fn(p.alpha1, p.beta, Z)

        return model
    from . import quadrature

    cfg = quad_cfg or quadrature.QuadratureConfig()
    system = SystemSpec(d=d, Z=Z)
    return lambda p: quadrature.expectation_H(p, system, cfg)


def static_problem(d: int, Z: float, starts=None, parametrization="alpha_beta", **kw):
    if parametrization == "alpha":
        model = lambda p: closed_form.energy_uncorrelated(d, p.alpha1, Z)
    else:
        model = static_model(d, Z, kw.pop("quad_cfg", None))
    if starts is None:
        starts = start_lattice(d, parametrization)
    return OptimizationProblem(model=model, starts=list(starts), Z=Z,
                               parametrization=parametrization, **kw)


def finite_mass_problem(system: SystemSpec, starts, symmetric: bool = False, **kw):
    """Minimize energy_general over (alpha1[, alpha2], beta) with a = alpha1 Z etc."""
    from .finitemass import ExponentTriple, energy_general

    Z = system.Z

    def model(p: TrialParams) -> float:
        t = ExponentTriple.from_alphas(p.alpha1, p.alpha2, p.beta, Z)
        return energy_general(t, None, system)

    return OptimizationProblem(model=model, starts=list(starts), Z=Z,
                               parametrization="alpha_beta" if symmetric else "alpha1_alpha2_beta",
                               **kw)


def optimize_static(d: int, Z: float, starts=None, **kw) -> EnergyResult:
    return minimize(static_problem(d, Z, starts=starts, **kw))


def scan_Z(d: int, Z_list: Sequence[float], warm_start: bool = True,
           moments: Sequence[str] = ("r12",), parametrization: str = "alpha_beta") -> list[EnergyResult]:
    """Optimize at each Z in order; the previous optimum is prepended to the start lattice."""
    Z_list = list(Z_list)
    if Z_list != sorted(Z_list) and Z_list != sorted(Z_list, reverse=True):
        raise ConfigurationError("Z_list must be sorted")
    out = []
    prev = None
    for Z in Z_list:
        starts = start_lattice(d, parametrization)
        if warm_start and prev is not None:
            starts = [prev] + starts
        res = optimize_static(d, Z, starts=starts, parametrization=parametrization)
        if "r12" in moments and parametrization == "alpha_beta":
            res.extras["r12"] = closed_form.mean_monomial(d, res.params.alpha, res.params.beta, Z, 0, 1)
        out.append(res)
        prev = res.params
    return out


def gradient_and_hessian(problem: OptimizationProblem, x, h: float = 1e-4):
    """Central-difference gradient and Hessian of the objective at x."""
    f = problem.objective
    x = np.asarray(x, dtype=float)
    n = len(x)
    g = np.zeros(n)
    H = np.zeros((n, n))
    f0 = f(x)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        g[i] = (f(x + ei) - f(x - ei)) / (2 * h)
        H[i, i] = (f(x + ei) - 2 * f0 + f(x - ei)) / h**2
        for j in range(i):
            ej = np.zeros(n)
            ej[j] = h
            H[i, j] = H[j, i] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4 * h * h)
    return g, H
