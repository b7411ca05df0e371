"""``heliumd`` command line: single evaluations, optimization, scans, series,
critical charges, entropies and table reproduction.

Every subcommand prints one record (or a list of rows) as text, JSON or CSV.
JSON output follows ``{"command", "inputs", "results", "tolerances", "status"}``
with sorted keys, so identical flags give byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import analysis, closed_form, quadrature, tables
from .core import (
    AccuracyError,
    BracketingError,
    ConfigurationError,
    DomainError,
    SingularEvaluationError,
    SystemSpec,
    TrialParams,
    cusps,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _float_or_inf(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "+inf"):
        return math.inf
    return float(text)


def _common(p: argparse.ArgumentParser, system=True):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--tol", type=float, default=None, help="tolerance override")
    p.add_argument("--quad-nodes", type=int, default=None, help="quadrature nodes per axis")
    if system:
        p.add_argument("--d", type=int, default=3)
        p.add_argument("--Z", type=float, default=2.0)
        p.add_argument("--m1", type=_float_or_inf, default=1.0)
        p.add_argument("--m2", type=_float_or_inf, default=1.0)
        p.add_argument("--M", type=_float_or_inf, default=math.inf)
        p.add_argument("--e1", type=float, default=-1.0)
        p.add_argument("--e2", type=float, default=-1.0)


def _trial_flags(p, required=True):
    p.add_argument("--alpha", type=float, required=required)
    p.add_argument("--alpha2", type=float, default=None)
    p.add_argument("--beta", type=float, required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heliumd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="energy and cusps at fixed trial parameters")
    _common(p)
    _trial_flags(p)
    p.add_argument("--r12", action="store_true", help="also report <r12>")

    p = sub.add_parser("optimize", help="minimize the energy over the trial parameters")
    _common(p)
    p.add_argument("--parameters", type=int, choices=(1, 2, 3), default=2,
                   help="1: alpha (beta=0), 2: alpha, beta, 3: alpha1, alpha2, beta")

    p = sub.add_parser("scan", help="optimized energy and <r12> over a range of Z")
    _common(p)
    p.add_argument("--Z-min", type=float, default=2.0)
    p.add_argument("--Z-max", type=float, default=10.0)
    p.add_argument("--Z-step", type=float, default=1.0)

    p = sub.add_parser("series", help="1/Z expansion (or Taylor expansion about Z_B, d=3)")
    _common(p)
    _trial_flags(p)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--method", choices=("analytic", "fit"), default="analytic")
    p.add_argument("--about-ZB", action="store_true", help="expand in (Z - Z_B) instead")
    p.add_argument("--ZB", type=float, default=analysis.Z_B)

    p = sub.add_parser("zc", help="critical charge")
    _common(p)
    p.add_argument("--three-parameter", action="store_true",
                   help="free alpha1 != alpha2 (odd d, slow)")

    p = sub.add_parser("entropy", help="Shannon entropy of the one-particle density")
    _common(p)
    _trial_flags(p, required=False)
    p.add_argument("--profile", action="store_true", help="emit the 400-point density profile")

    p = sub.add_parser("reproduce", help="recompute a published table and compare")
    _common(p, system=False)
    p.add_argument("table", choices=("table1", "table2", "table3", "table4"))
    p.add_argument("--strict-z2-only", action="store_true",
                   help="table3: strict tolerance for Z=2 only, rows Z=3..10 relaxed")
    return parser


# ----------------------------------------------------------------------------
# commands; each returns (inputs, results, tolerances, ok, rows)
# ----------------------------------------------------------------------------

def _system(a) -> SystemSpec:
    return SystemSpec(d=a.d, Z=a.Z, e1=a.e1, e2=a.e2, m1=a.m1, m2=a.m2, M=a.M)


def _trial(a) -> TrialParams:
    return TrialParams(a.alpha, a.beta, alpha2=a.alpha2)


def _qcfg(a) -> quadrature.QuadratureConfig:
    return quadrature.QuadratureConfig(a.quad_nodes) if a.quad_nodes else quadrature.QuadratureConfig()


def _system_inputs(a) -> dict:
    return {"d": a.d, "Z": a.Z, "m1": a.m1, "m2": a.m2, "M": a.M, "e1": a.e1, "e2": a.e2}


def _params_dict(p: TrialParams) -> dict:
    return {"alpha1": p.alpha1, "alpha2": p.alpha2, "beta": p.beta}


def _evaluate(system: SystemSpec, trial: TrialParams, a) -> tuple[float, str]:
    if not system.static or (system.e1, system.e2, system.m1, system.m2) != (-1.0, -1.0, 1.0, 1.0):
        if system.d != 3:
            raise DomainError("finite masses and general charges are supported for d = 3 only")
        from .finitemass import ExponentTriple, energy_general

        t = ExponentTriple.from_alphas(trial.alpha1, trial.alpha2, trial.beta, system.Z)
        return energy_general(t, None if not trial.symmetric else False, system), "moments"
    if trial.symmetric and system.d in closed_form.ENERGY and a.quad_nodes is None:
        return closed_form.energy(system.d, trial.alpha, trial.beta, system.Z), "closed_form"
    if not trial.symmetric and system.d % 2 == 1 and a.quad_nodes is None:
        from .finitemass import energy_static

        return energy_static(trial.alpha1, trial.alpha2, trial.beta, system.Z, system.d), "moments"
    return quadrature.expectation_H(trial, system, _qcfg(a), tol=a.tol), "quadrature"


def cmd_energy(a):
    system, trial = _system(a), _trial(a)
    E, method = _evaluate(system, trial, a)
    nu1, nu2 = cusps(trial, system.Z)
    results = {"energy": E, "nu1": nu1, "nu2": nu2, "method": method}
    if a.r12:
        if trial.symmetric and system.static:
            results["r12"] = closed_form.mean_monomial(system.d, trial.alpha, trial.beta, system.Z, 0, 1)
        else:
            results["r12"] = quadrature.expectation_monomial(trial, system, 0, 0, 1, _qcfg(a))
    inputs = {**_system_inputs(a), **_params_dict(trial)}
    return inputs, results, {"quadrature": a.tol}, True, [results]


def cmd_optimize(a):
    from . import optimize

    system = _system(a)
    if system.static and (system.e1, system.e2, system.m1, system.m2) == (-1.0, -1.0, 1.0, 1.0):
        name = {1: "alpha", 2: "alpha_beta", 3: "alpha1_alpha2_beta"}[a.parameters]
        kw = {"quad_cfg": _qcfg(a)} if a.quad_nodes else {}
        res = optimize.optimize_static(a.d, a.Z, parametrization=name, **kw)
    else:
        if a.parameters == 1:
            raise ConfigurationError("finite-mass optimization needs 2 or 3 parameters")
        lattice = optimize.start_lattice(3, "alpha1_alpha2_beta")
        res = optimize.minimize(optimize.finite_mass_problem(
            system, lattice if a.parameters == 3 else lattice[-1:] + lattice[:5],
            symmetric=a.parameters == 2))
    nu1, nu2 = res.nu1, res.nu2
    results = {"energy": res.energy, **_params_dict(res.params), "nu1": nu1, "nu2": nu2,
               "iterations": res.iterations, "converged": res.converged}
    return {**_system_inputs(a), "parameters": a.parameters}, results, {}, res.converged, [results]


def cmd_scan(a):
    from .optimize import scan_Z

    n = int(round((a.Z_max - a.Z_min) / a.Z_step)) + 1
    Zs = [a.Z_min + i * a.Z_step for i in range(n)]
    rows = []
    for r in scan_Z(a.d, Zs):
        rows.append({"d": a.d, "Z": r.Z, "energy": r.energy, "alpha": r.params.alpha,
                     "beta": r.params.beta, "r12": r.extras["r12"]})
    inputs = {"d": a.d, "Z_min": a.Z_min, "Z_max": a.Z_max, "Z_step": a.Z_step}
    return inputs, {"rows": rows}, {}, True, rows


def cmd_series(a):
    trial = _trial(a)
    if a.about_ZB:
        if a.d != 3:
            raise DomainError("the Taylor expansion about Z_B is defined for d = 3")
        s = analysis.taylor_at_ZB(trial, a.ZB, a.order)
    else:
        s = analysis.large_Z_expansion(a.d, trial, a.order, a.method)
    results = {"variable": s.variable, "point": s.point if math.isfinite(s.point) else "inf",
               "coeffs": s.coeffs}
    inputs = {"d": a.d, **_params_dict(trial), "order": a.order, "method": a.method}
    rows = [{"k": k, "coefficient": c} for k, c in enumerate(s.coeffs)]
    return inputs, results, {}, True, rows


def cmd_zc(a):
    name = "alpha1_alpha2_beta" if a.three_parameter else "alpha_beta"
    gtol = a.tol if a.tol is not None else 1e-8
    Zc = analysis.critical_charge(a.d, parametrization=name, gtol=gtol)
    results = {"Z_c": Zc}
    return {"d": a.d, "parametrization": name}, results, {"g": gtol}, True, [results]


def cmd_entropy(a):
    trial = _trial(a) if a.alpha is not None and a.beta is not None else None
    if a.profile:
        prof = analysis.density_profile(a.d, a.Z, trial, cfg=_qcfg(a))
        rows = [{"r": float(r), "rho": float(v)} for r, v in zip(prof.r_grid, prof.rho)]
        results = {"entropy": prof.entropy, "profile": rows}
    else:
        S = analysis.shannon_entropy(a.d, a.Z, trial, _qcfg(a))
        results = {"entropy": S}
        rows = [results]
    inputs = {"d": a.d, "Z": a.Z}
    if trial is not None:
        inputs.update(_params_dict(trial))
    return inputs, results, {}, True, rows


def cmd_reproduce(a):
    kw = {"strict_z2_only": a.strict_z2_only} if a.table == "table3" else {}
    cells = tables.reproduce(a.table, **kw)
    if a.tol is not None:
        for c in cells:
            c.tolerance = a.tol
    rows = [c.as_dict() for c in cells]
    results = {"cells": rows, "passed": sum(c.status == "PASS" for c in cells), "total": len(cells)}
    ok = all(c.status == "PASS" for c in cells)
    if a.table == "table2":
        mono = tables.entropy_monotonicity(cells)
        results["monotonicity"] = mono
        ok = ok and all(mono.values())
    tol = dict(tables.TOLERANCES[a.table])
    if a.tol is not None:
        tol = {k: a.tol for k in tol}
    return {"table": a.table, **kw}, results, tol, ok, rows


COMMANDS = {
    "energy": cmd_energy,
    "optimize": cmd_optimize,
    "scan": cmd_scan,
    "series": cmd_series,
    "zc": cmd_zc,
    "entropy": cmd_entropy,
    "reproduce": cmd_reproduce,
}


# ----------------------------------------------------------------------------
# output
# ----------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, bool) or not isinstance(v, float):
        return str(v)
    return f"{v:.9g}"


def render(fmt: str, command: str, inputs, results, tolerances, status, rows) -> str:
    if fmt == "json":
        doc = {"command": command, "inputs": inputs, "results": results,
               "tolerances": tolerances, "status": status}
        return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        fields = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(v) for k, v in r.items()})
        return buf.getvalue()
    lines = []
    if command == "reproduce":
        for r in rows:
            lines.append(
                f"{r['status']:6s} d={r['d']} Z={_fmt(float(r['Z']))} {r['label']:8s} "
                f"computed={_fmt(r['computed'])} expected={_fmt(r['expected'])} "
                f"|dev|={r['deviation']:.2e} tol={r['tolerance']:g}"
                + (f" ({r['error']})" if r["error"] else "")
            )
        lines.append(f"{results['passed']}/{results['total']} cells pass")
        if "monotonicity" in results:
            lines.append("monotonicity: " + ", ".join(f"{k}={v}" for k, v in results["monotonicity"].items()))
    elif len(rows) > 1 or "profile" in results:
        fields = list(rows[0])
        lines.append("  ".join(fields))
        lines += ["  ".join(_fmt(r[k]) for k in fields) for r in rows]
        if "entropy" in results:
            lines.append(f"entropy: {_fmt(results['entropy'])}")
    else:
        for k, v in results.items():
            lines.append(f"{k}: {_fmt(v)}")
    lines.append(f"status: {status}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        inputs, results, tolerances, ok, rows = COMMANDS[a.command](a)
    except (DomainError, SingularEvaluationError, AccuracyError, BracketingError,
            ConfigurationError, ValueError) as exc:
        print(f"heliumd {a.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    status = "ok" if ok else "fail"
    text = render(a.format, a.command, inputs, results, tolerances, status, rows)
    if a.out:
        with open(a.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
