"""Verification suites: each runs a family of checks and yields report rows.

A suite produces Case records (pass/fail against a pinned tolerance) plus
tidy detail rows for plotting.  Everything is deterministic given the
RunConfig: parameter sets come either from a JSON file or from seeded
sampling.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .asymptotics import (
    constant_term_probe,
    first_frequency_check,
    kernel_signature_check,
    leading_coefficient_check,
    t_integral,
)
from .identities import verify_identity_sweep
from .mass import mass_flux, mass_quadrature, predicted_mass
from .residual import GridSpec, linearized_residual, pde_residual
from .solution import SolutionParams, kernel_directions, load_params, sample_params

__all__ = ["Case", "RunConfig", "SUITES", "build_param_sets", "run_suites"]

KNOWN_SUITES = ("pde", "linearized", "identities", "asymptotics", "mass", "t-integrals")

DEFAULT_TOLERANCES = {
    "pde_order_center": 2.0,
    "pde_order_slack": 0.5,
    "linearized_max_residual": 1e-3,
    "linearized_noise_floor": 3e-5,
    "mass_flux_rel": 0.01,
    "mass_route_agreement": 0.005,
    "mass_sum_rule_rel": 0.01,
    "first_frequency_rel": 0.02,
    "kernel_signature_rel": 0.03,
    "leading_coefficient_rel": 0.01,
    "t_integral_ratio": 1.5,
}


@dataclass(frozen=True)
class Case:
    suite: str
    case_id: str
    measured: float
    expected: float
    tolerance: float | None
    passed: bool
    runtime: float


@dataclass
class RunConfig:
    suites: list = field(default_factory=lambda: list(KNOWN_SUITES))
    params_file: str | None = None
    n: int = 2
    count: int = 2
    seed: int = 0
    magnitude: float = 0.3
    dilation: float = 3.0
    radius: float = 1000.0
    grid_h: float = 1e-2
    param_step: float = 1e-4
    out_dir: str = "reports"
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in KNOWN_SUITES]
        if unknown:
            raise ValueError(f"unknown suites: {unknown}; known: {list(KNOWN_SUITES)}")
        self.tolerances = {**DEFAULT_TOLERANCES, **self.tolerances}

    def to_json(self) -> dict:
        return {
            "suites": list(self.suites),
            "params_file": self.params_file,
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "magnitude": self.magnitude,
            "dilation": self.dilation,
            "radius": self.radius,
            "grid_h": self.grid_h,
            "param_step": self.param_step,
            "tolerances": dict(sorted(self.tolerances.items())),
        }


def build_param_sets(cfg: RunConfig) -> list:
    """[(label, SolutionParams)] from the config's parameter source."""
    if cfg.params_file is not None:
        sp, scale = load_params(cfg.params_file)
        return [(f"file-n{sp.n}", sp)]
    return [
        (
            f"n{cfg.n}-seed{cfg.seed + k}",
            sample_params(cfg.n, cfg.seed + k, cfg.magnitude, dilation=cfg.dilation),
        )
        for k in range(cfg.count)
    ]


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# -- individual suites -----------------------------------------------------


def suite_identities(cfg: RunConfig, param_sets) -> tuple[list, list]:
    report, dt = _timed(lambda: verify_identity_sweep(10))
    cases = [
        Case(
            suite="identities",
            case_id="F-and-G-sweep-m<=10",
            measured=float(len(report.failures)),
            expected=0.0,
            tolerance=0.0,
            passed=report.all_pass,
            runtime=dt,
        )
    ]
    details = [
        {"kind": c["kind"], "m": c["m"], "n": c["n"], "det": str(c["det"]),
         "expected": str(c["expected"]), "pass": c["pass"]}
        for c in report.cases
    ]
    return cases, details


def suite_pde(cfg: RunConfig, param_sets) -> tuple[list, list]:
    cases, details = [], []
    tol = cfg.tolerances
    grid = GridSpec.from_h(cfg.grid_h)
    for label, sp in param_sets:
        rep, dt = _timed(lambda: pde_residual(sp, grid))
        ok = abs(rep.convergence_order - tol["pde_order_center"]) <= tol["pde_order_slack"]
        cases.append(
            Case("pde", f"{label}-order", rep.convergence_order,
                 tol["pde_order_center"], tol["pde_order_slack"], ok, dt)
        )
        details.append({"label": label, "n": sp.n, "h": rep.h,
                        "max_residual": rep.max_residual})
        details.append({"label": label, "n": sp.n, "h": rep.h / 2,
                        "max_residual": max(rep.max_abs_residual_refined)})
    return cases, details


def suite_linearized(cfg: RunConfig, param_sets) -> tuple[list, list]:
    cases, details = [], []
    tol = cfg.tolerances
    grid = GridSpec.from_h(cfg.grid_h)
    for label, sp in param_sets:
        for which in kernel_directions(sp.n):
            rep, dt = _timed(
                lambda: linearized_residual(sp, which, cfg.param_step, grid)
            )
            ok_res = rep.max_residual <= tol["linearized_max_residual"]
            # Parameter-difference fields carry an O(step^2) error that does
            # not shrink under grid refinement.  Once the residual sits at
            # that floor the order estimate measures noise, so skip it there.
            ok_ord = (
                abs(rep.convergence_order - tol["pde_order_center"])
                <= tol["pde_order_slack"]
                or rep.max_residual <= tol["linearized_noise_floor"]
            )
            cases.append(
                Case("linearized", f"{label}-{which}-residual", rep.max_residual,
                     0.0, tol["linearized_max_residual"], ok_res, dt)
            )
            cases.append(
                Case("linearized", f"{label}-{which}-order", rep.convergence_order,
                     tol["pde_order_center"], tol["pde_order_slack"], ok_ord, 0.0)
            )
            details.append({"label": label, "which": which, "h": rep.h,
                            "max_residual": rep.max_residual})
            details.append({"label": label, "which": which, "h": rep.h / 2,
                            "max_residual": max(rep.max_abs_residual_refined)})
    return cases, details


def suite_asymptotics(cfg: RunConfig, param_sets) -> tuple[list, list]:
    cases, details = [], []
    tol = cfg.tolerances
    for label, sp in param_sets:
        n = sp.n
        for m in range(1, n + 1):
            ck, dt = _timed(lambda: leading_coefficient_check(sp, m, cfg.radius))
            cases.append(
                Case("asymptotics", f"{label}-leading-m{m}", ck.richardson,
                     ck.predicted, tol["leading_coefficient_rel"],
                     ck.rel_error <= tol["leading_coefficient_rel"], dt)
            )
            details.append({"label": label, "check": "leading", "m": m,
                            "which": "", "r": cfg.radius, "measured": ck.richardson,
                            "predicted": ck.predicted, "rel_err": ck.rel_error})
            ffc, dt = _timed(lambda: first_frequency_check(sp, m))
            for key, ck in ffc.items():
                cases.append(
                    Case("asymptotics", f"{label}-freq1-{key}-m{m}", ck.richardson,
                         ck.predicted, tol["first_frequency_rel"],
                         ck.rel_error <= tol["first_frequency_rel"], dt)
                )
                for r, v in zip(ck.radii, ck.measured):
                    details.append({"label": label, "check": "freq1", "m": m,
                                    "which": key, "r": r, "measured": v,
                                    "predicted": ck.predicted,
                                    "rel_err": ck.rel_error})
            for j in range(2, n + 1):
                for kind in ("alpha2", "beta2"):
                    ck, dt = _timed(
                        lambda: kernel_signature_check(
                            sp, f"{kind}_{j}", m, step=cfg.param_step
                        )
                    )
                    cases.append(
                        Case("asymptotics", f"{label}-freq2-{kind}_{j}-m{m}",
                             ck.richardson, ck.predicted,
                             tol["kernel_signature_rel"],
                             ck.rel_error <= tol["kernel_signature_rel"], dt)
                    )
                    for r, v in zip(ck.radii, ck.measured):
                        details.append({"label": label, "check": "freq2", "m": m,
                                        "which": f"{kind}_{j}", "r": r,
                                        "measured": v, "predicted": ck.predicted,
                                        "rel_err": ck.rel_error})
        # Constant-term probe: measured vs tabulated closed forms, report-only.
        for i in range(1, n + 1):
            ck, dt = _timed(lambda: constant_term_probe(sp, i))
            cases.append(
                Case("asymptotics", f"{label}-const-term-i{i}-info", ck.richardson,
                     ck.predicted, None, True, dt)
            )
            details.append({"label": label, "check": "const-term", "m": i,
                            "which": "table", "r": max(ck.radii),
                            "measured": ck.richardson, "predicted": ck.predicted,
                            "rel_err": ck.rel_error})
    return cases, details


def suite_mass(cfg: RunConfig, param_sets) -> tuple[list, list]:
    cases, details = [], []
    tol = cfg.tolerances
    for label, sp in param_sets:
        n = sp.n
        fluxes = []
        for i in range(1, n + 1):
            flux, dt_f = _timed(lambda: mass_flux(sp, i, cfg.radius))
            quad, dt_q = _timed(lambda: mass_quadrature(sp, i))
            fluxes.append(flux)
            pred = predicted_mass(n, i)
            rel = abs(flux / pred - 1.0)
            agree = abs(flux / quad.value - 1.0)
            cases.append(Case("mass", f"{label}-flux-i{i}", flux, pred,
                              tol["mass_flux_rel"], rel <= tol["mass_flux_rel"],
                              dt_f))
            cases.append(Case("mass", f"{label}-routes-i{i}", agree, 0.0,
                              tol["mass_route_agreement"],
                              agree <= tol["mass_route_agreement"], dt_q))
            details.append({"label": label, "i": i, "flux": flux,
                            "quadrature": quad.value, "predicted": pred,
                            "tail_fit_stable": quad.tail_fit_stable})
        a = sp.cartan().a_float()
        for i in range(n):
            s = float(sum(a[i][j] * fluxes[j] for j in range(n)))
            rel = abs(s / (8.0 * math.pi) - 1.0)
            cases.append(Case("mass", f"{label}-sum-rule-i{i + 1}", s, 8.0 * math.pi,
                              tol["mass_sum_rule_rel"],
                              rel <= tol["mass_sum_rule_rel"], 0.0))
    return cases, details


def suite_t_integrals(cfg: RunConfig, param_sets) -> tuple[list, list]:
    cases, details = [], []
    for label, sp in param_sets:
        if sp.n < 2:
            continue
        for l in range(2, sp.n + 1):
            for which in ("alpha", "beta"):
                res, dt = _timed(
                    lambda: t_integral(sp, l, which, step=cfg.param_step)
                )
                cases.append(
                    Case("t-integrals", f"{label}-l{l}-{which}", res.value,
                         res.value, cfg.tolerances["t_integral_ratio"],
                         res.converged, dt)
                )
                for R, v in res.partials:
                    details.append({"label": label, "l": l, "which": which,
                                    "R": R, "partial": v})
    return cases, details


SUITES = {
    "identities": suite_identities,
    "pde": suite_pde,
    "linearized": suite_linearized,
    "asymptotics": suite_asymptotics,
    "mass": suite_mass,
    "t-integrals": suite_t_integrals,
}


def run_suites(cfg: RunConfig) -> tuple[list, dict]:
    """Run the configured suites; returns (cases, {suite: detail rows})."""
    param_sets = build_param_sets(cfg)
    cases: list = []
    details: dict = {}
    for name in cfg.suites:
        suite_cases, suite_details = SUITES[name](cfg, param_sets)
        cases.extend(suite_cases)
        details[name] = suite_details
    return cases, details
