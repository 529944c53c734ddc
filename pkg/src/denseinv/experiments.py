"""Seeded batch experiments writing one CSV row per trial plus a JSON summary."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import instances
from .algebra import INVERT_TOLERANCE, AlgebraError, C, FiniteSpace, NotInvertible, is_full_subalgebra_witness
from .beurling import (
    BeurlingAlgebra,
    disc_closure_membership,
    DiscClosure,
    obstruction_verdict,
    winding_pair,
)
from .extension import ArensHoffman, make_extension
from .perturb import (
    Exhausted,
    PerturbConfig,
    matrix_perturb,
    perturb_in_base,
    perturb_to_invertible,
)
from .poly import MonicPoly, resultant
from .serialize import ConfigError, descriptor_from_json, weight_from_json, weight_to_json

log = logging.getLogger(__name__)

KINDS = (
    "resultant-oracle",
    "ah-invert-oracle",
    "thm21-density",
    "prop24-powers",
    "matrix-remark",
    "beurling-dichotomy",
    "disc-closure",
    "example-1-2",
)

CSV_COLUMNS = ("trial", "seed", "epsilon", "success", "achieved_distance",
               "stage_samples_total", "certificate_residual")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    trials: int = 100
    epsilon: tuple = (1e-2,)
    seed: int = 0
    output: Optional[str] = None
    algebra: Optional[dict] = None
    degree: Optional[int] = None
    max_degree: int = 4
    max_points: int = 3
    thresholds: dict = field(default_factory=dict)
    tol: float = INVERT_TOLERANCE
    workers: int = 1
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.epsilon or any(not e > 0 for e in self.epsilon):
            raise ConfigError("epsilon values must be positive")

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentConfig":
        obj = dict(obj)
        known = {f for f in cls.__dataclass_fields__}
        eps = obj.pop("epsilon", (1e-2,))
        eps = tuple(float(e) for e in (eps if isinstance(eps, (list, tuple)) else [eps]))
        extra = {k: obj.pop(k) for k in list(obj) if k not in known}
        params = {**obj.pop("params", {}), **extra}
        return cls(epsilon=eps, params=params, **obj)


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list
    summary: dict
    passed: bool

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
        return buf.getvalue()

    def write(self, out_dir) -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / f"{self.config.kind}.csv"
        json_path = out / f"{self.config.kind}.json"
        csv_path.write_text(self.csv_text())
        json_path.write_text(json.dumps(self.summary, indent=2, sort_keys=True, default=str) + "\n")
        return csv_path, json_path


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if v is None:
        return ""
    if isinstance(v, float):
        return "" if math.isnan(v) else repr(v)
    return str(v)


def trial_seed(seed: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, trial]).generate_state(1)[0])


def _row(cfg, trial, eps=math.nan, success=False, distance=math.nan, samples=0, residual=math.nan, **detail):
    return {"trial": trial, "seed": trial_seed(cfg.seed, trial), "epsilon": eps, "success": bool(success),
            "achieved_distance": float(distance), "stage_samples_total": int(samples),
            "certificate_residual": float(residual), "detail": detail}


def _eps(cfg, trial) -> float:
    return cfg.epsilon[trial % len(cfg.epsilon)]


def _base(cfg, rng) -> tuple:
    """Base algebra and optional fixed extension from the config's descriptor."""
    if cfg.algebra is None:
        return FiniteSpace(int(rng.integers(1, cfg.max_points + 1))), None
    alg = descriptor_from_json(cfg.algebra)
    if isinstance(alg, ArensHoffman):
        return alg.base, alg
    return alg, None


# -- trial bodies (module level so worker processes can pickle them) --

def _trial_resultant_oracle(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    n = int(rng.integers(1, cfg.max_degree + 1))
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    alpha = MonicPoly.from_lower(C, list(a))
    res = complex(resultant(alpha, list(b)).data[0])
    lam = np.roots(np.r_[1.0, a[::-1]])
    prod = complex(np.prod(np.polyval(b[::-1], lam)))
    err = abs(res - prod) / abs(prod) if prod else abs(res)
    limit = cfg.params.get("relative_tolerance", 1e-7)
    return _row(cfg, trial, success=err <= limit, distance=err, degree=n)


def _trial_ah_invert_oracle(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    m = int(rng.integers(1, cfg.max_points + 1))
    n = int(rng.integers(1, cfg.max_degree + 1))
    make = instances.integer_criterion_instance if trial % 2 == 0 else instances.generic_criterion_instance
    ext, u, expected = make(m, n, rng)
    try:
        cert = ext.invert(u, cfg.tol)
        got, residual = True, cert.residual
    except NotInvertible:
        got, residual = False, math.nan
    except AlgebraError as exc:
        return _row(cfg, trial, success=False, error=repr(exc), m=m, n=n)
    return _row(cfg, trial, success=got == expected, distance=0.0 if got == expected else 1.0,
                residual=residual, m=m, n=n, expected=expected, verdict=got)


def _trial_density(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    eps = _eps(cfg, trial)
    base, ext = _base(cfg, rng)
    if ext is None:
        n = cfg.degree or int(rng.integers(1, cfg.max_degree + 1))
        ext = make_extension(base, instances.random_monic_lower(base, n, rng))
    if isinstance(base, FiniteSpace) and rng.uniform() < 0.5:
        u = instances.singular_element(ext, rng)
    else:
        u = ext.random(rng)
    pc = PerturbConfig(epsilon=eps, rng_seed=cfg.seed, tol=cfg.tol,
                       max_samples_per_stage=int(cfg.params.get("max_samples_per_stage", 200)))
    try:
        u_new, trace = perturb_to_invertible(u, pc, trial)
    except AlgebraError as exc:
        return _row(cfg, trial, eps, success=False, error=repr(exc), n=ext.n)
    only_b0 = all(x == y for x, y in zip(u_new.data[1:], u.data[1:]))
    ok = trace.achieved_distance < eps and only_b0
    return _row(cfg, trial, eps, success=ok, distance=trace.achieved_distance,
                samples=trace.samples_total, residual=trace.certificate.residual,
                n=ext.n, stages=len(trace.stages), trace=trace.to_json())


def _trial_powers(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    eps = _eps(cfg, trial)
    base, ext = _base(cfg, rng)
    if ext is None:
        n = cfg.degree or 2
        ext = make_extension(base, [base.zero()] * n)
    a = cfg.params.get("a")
    a = base.scalar(complex(*a) if isinstance(a, list) else complex(a)) if a is not None else base.random(rng)
    u = ext.embed(a)
    pc = PerturbConfig(epsilon=eps, rng_seed=cfg.seed, tol=cfg.tol)
    try:
        u_new, trace = perturb_to_invertible(u, pc, trial)
    except AlgebraError as exc:
        return _row(cfg, trial, eps, success=False, error=repr(exc))
    approx = ext.resultant_of(u_new)
    dist = base.distance(approx, a ** ext.n)
    return _row(cfg, trial, eps, success=base.is_invertible(approx), distance=dist,
                samples=trace.samples_total, residual=trace.certificate.residual)


def _trial_matrix(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    eps = _eps(cfg, trial)
    base, _ = _base(cfg, rng)
    k = int(cfg.params.get("size", 3))
    B = instances.random_singular_matrix(base, k, rng)
    sigma = [int(v) for v in rng.permutation(k)]
    try:
        res = matrix_perturb(B, eps, sigma, rng, tol=cfg.tol)
    except AlgebraError as exc:
        return _row(cfg, trial, eps, success=False, error=repr(exc))
    displacement = sum(base.distance(res.matrix[m][sigma[m]], B[m][sigma[m]]) for m in range(k))
    untouched = all(res.matrix[i][j] is B[i][j] for i in range(k) for j in range(k) if j != sigma[i])
    return _row(cfg, trial, eps, success=untouched and displacement <= eps, distance=displacement,
                samples=res.samples_used, residual=res.certificate.residual)


def _dichotomy_weights(cfg):
    ws = cfg.params.get("weights") or [{"kind": "constant"}, {"kind": "one_sided", "r": 2.0}]
    return [weight_from_json(w) for w in ws]


def _trial_beurling(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    weights = _dichotomy_weights(cfg)
    B = BeurlingAlgebra(weights[trial % len(weights)])
    side = "circle" if B.spectrum.is_circle else "annulus"
    if side == "circle":
        eps = _eps(cfg, trial)
        x = instances.random_circle_laurent(B, rng)
        try:
            y = perturb_in_base(x, eps, rng, tol=cfg.tol)
        except Exhausted as exc:
            return _row(cfg, trial, eps, success=False, side=side, perturbable=False, error=repr(exc))
        res = B.invert(y, cfg.tol).residual
        return _row(cfg, trial, eps, success=True, distance=B.distance(x, y), residual=res,
                    side=side, perturbable=True)
    x = instances.obstructed_laurent(B, rng)
    verdict = obstruction_verdict(x)
    budget = verdict.stability_radius
    eps = 0.25 * budget
    samples = int(cfg.params.get("perturbation_samples", 100))
    stable, farthest = True, 0.0
    for _ in range(samples):
        y = B.sample_ball(x, eps, rng)
        farthest = max(farthest, B.distance(x, y))
        if winding_pair(y) != verdict.windings or B.is_invertible(y):
            stable = False
    try:
        perturb_in_base(x, eps, rng, max_attempts=samples, tol=cfg.tol)
        perturbable = True
    except Exhausted:
        perturbable = False
    return _row(cfg, trial, eps, success=verdict.obstructed and stable and not perturbable,
                distance=farthest, samples=samples, side=side, perturbable=perturbable,
                windings=list(verdict.windings), stability_radius=budget)


def _trial_disc(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    deg = int(rng.integers(1, 5))
    inside = rng.uniform(size=deg) < 0.3
    mods = np.where(inside, rng.uniform(0.0, 0.95, deg), rng.uniform(1.0, 3.0, deg))
    mods[(~inside) & (rng.uniform(size=deg) < 0.3)] = 1.0
    roots = mods * np.exp(2j * np.pi * rng.uniform(size=deg))
    coeffs = np.poly(roots)[::-1]
    expected = DiscClosure.NOT_IN_CLOSURE if inside.any() else DiscClosure.IN_CLOSURE
    got = disc_closure_membership(coeffs)
    return _row(cfg, trial, success=got is expected, distance=float(np.min(np.abs(roots))),
                expected=expected.value, verdict=got.value)


def rational_circle_basis(rng: np.random.Generator, points: int = 64, degree: int = 3, poles: int = 3):
    """Sampled rational functions with poles off the circle and off 2.

    Returns ``(algebra, basis, x)`` where ``x`` samples ``z - 2``.
    """
    A = FiniteSpace(points)
    z = np.exp(2j * np.pi * np.arange(points) / points)
    basis = [A.element(z ** k) for k in range(-degree, degree + 1)]
    for _ in range(poles):
        while True:
            p = (rng.uniform(0.2, 3.0) * np.exp(2j * np.pi * rng.uniform()))
            if abs(abs(p) - 1) > 0.1 and abs(p - 2) > 0.1:
                break
        basis.append(A.element(1.0 / (z - p)))
    return A, basis, A.element(z - 2)


def _trial_fullness(cfg, trial):
    rng = np.random.default_rng(trial_seed(cfg.seed, trial))
    A, basis, x = rational_circle_basis(rng, int(cfg.params.get("points", 64)),
                                    int(cfg.params.get("basis_degree", 3)))
    v = is_full_subalgebra_witness(basis, x, tol=float(cfg.params.get("membership_tolerance", 1e-6)))
    return _row(cfg, trial, success=v.ambient_invertible and v.witness, distance=v.residual)


_TRIALS = {
    "resultant-oracle": _trial_resultant_oracle,
    "ah-invert-oracle": _trial_ah_invert_oracle,
    "thm21-density": _trial_density,
    "prop24-powers": _trial_powers,
    "matrix-remark": _trial_matrix,
    "beurling-dichotomy": _trial_beurling,
    "disc-closure": _trial_disc,
    "example-1-2": _trial_fullness,
}


def _run_one(args):
    cfg, trial = args
    return _TRIALS[cfg.kind](cfg, trial)


def fitted_slope(eps, dist) -> float:
    """Least-squares slope of log(mean distance) against log(epsilon)."""
    groups = {}
    for e, d in zip(eps, dist):
        if d > 0 and math.isfinite(d):
            groups.setdefault(e, []).append(d)
    if len(groups) < 2:
        return math.nan
    xs = np.log(sorted(groups))
    ys = np.log([np.mean(groups[e]) for e in sorted(groups)])
    return float(np.polyfit(xs, ys, 1)[0])


def summarize(cfg: ExperimentConfig, rows: list) -> dict:
    succ = [r for r in rows if r["success"]]
    dists = [r["achieved_distance"] for r in succ if math.isfinite(r["achieved_distance"])]
    stage_counts = [r["detail"].get("stages") for r in rows if r["detail"].get("stages")]
    samples = sum(r["stage_samples_total"] for r in rows)
    summary = {
        "kind": cfg.kind,
        "trials": len(rows),
        "seed": cfg.seed,
        "success_rate": len(succ) / len(rows),
        "mean_achieved_distance": float(np.mean(dists)) if dists else None,
        "mean_samples_per_stage": (samples / sum(stage_counts)) if stage_counts else None,
        "failures": [{"trial": r["trial"], "seed": r["seed"], **r["detail"]} for r in rows if not r["success"]],
    }
    if cfg.kind == "prop24-powers":
        summary["fitted_slope"] = fitted_slope([r["epsilon"] for r in rows],
                                               [r["achieved_distance"] for r in rows])
    if cfg.kind == "beurling-dichotomy":
        weights = _dichotomy_weights(cfg)
        rates = []
        for i, w in enumerate(weights):
            sub = [r for r in rows if r["trial"] % len(weights) == i]
            rates.append({
                "weight": weight_to_json(w),
                "side": sub[0]["detail"]["side"] if sub else None,
                "trials": len(sub),
                "perturbable_rate": sum(r["detail"].get("perturbable", False) for r in sub) / len(sub) if sub else None,
                "success_rate": sum(r["success"] for r in sub) / len(sub) if sub else None,
            })
        summary["by_weight"] = rates
    if cfg.kind == "disc-closure" and "polynomial" in cfg.params:
        summary["polynomial_verdict"] = disc_closure_membership(
            [complex(*c) if isinstance(c, list) else complex(c) for c in cfg.params["polynomial"]]).value
    return summary


def check_thresholds(cfg: ExperimentConfig, summary: dict) -> dict:
    """Map each configured threshold to whether it was met."""
    out = {}
    for name, limit in cfg.thresholds.items():
        if name == "min_success_rate":
            out[name] = summary["success_rate"] >= limit
        elif name == "max_mean_distance":
            v = summary["mean_achieved_distance"]
            out[name] = v is not None and v <= limit
        elif name == "min_slope":
            v = summary.get("fitted_slope", math.nan)
            out[name] = v is not None and v >= limit
        elif name == "expected_verdict":
            out[name] = summary.get("polynomial_verdict") == limit
        else:
            raise ConfigError(f"unknown threshold {name!r}")
    return out


def run(cfg: ExperimentConfig, out_dir=None) -> ExperimentReport:
    """Run every trial, then assemble the report. Files are written only if an output path is known."""
    jobs = [(cfg, i) for i in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_run_one, jobs, chunksize=max(1, cfg.trials // (4 * cfg.workers))))
    else:
        rows = [_run_one(j) for j in jobs]
    summary = summarize(cfg, rows)
    checks = check_thresholds(cfg, summary)
    summary["thresholds"] = {k: {"limit": cfg.thresholds[k], "met": v} for k, v in checks.items()}
    report = ExperimentReport(cfg, rows, summary, all(checks.values()))
    target = out_dir or cfg.output
    if target:
        report.write(target)
    log.info("%s: success_rate=%.4f", cfg.kind, summary["success_rate"])
    return report


def load_config(path, **overrides) -> ExperimentConfig:
    cfg = ExperimentConfig.from_json(json.loads(Path(path).read_text()))
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **overrides) if overrides else cfg
