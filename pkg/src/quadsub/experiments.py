"""Experiment orchestration: seeded trial sweeps with CSV persistence.

Experiments:

* recovery-rate : success frequency of sparse recovery over a sparsity grid.
* error-vs-m    : mean coefficient error against the sample budget.
* ode           : second-moment error of the recovered decay-ODE solution.
* bound         : table of sup-norm bounds per rule size.

Each trial derives its own random streams from (seed, sparsity, trial,
strategy), so strategies are independently randomized, trial order never
matters, and reruns with one seed are byte-identical.  Trials can run on
a worker pool; records are always emitted in trial order.
"""

import multiprocessing
import zlib
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from functools import lru_cache
from typing import Optional

import numpy as np

from . import __version__
from .bounds import univariate_bound
from .design import assemble
from .errors import UsageError
from .families import build_family, marginal_from_name, marginal_name
from .indexsets import total_degree
from .quadrature import tensor_rule
from .sampling import collocation
from .solver import SolverConfig, admm_basis_pursuit, recovery_success
from .targets import (
    TargetFunction,
    make_sparse_target,
    make_target,
    memoize_pointwise,
    ode_moment_exact,
    ode_qoi,
    reference_coefficients,
)

EXPERIMENTS = ("recovery-rate", "error-vs-m", "ode", "bound")

TRIAL_HEADER = (
    "record", "trial", "strategy", "m", "s", "err_inf", "err_l2",
    "success", "solver_iterations", "converged", "seed_used", "note",
)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    d: int = 2
    degree: int = 20
    marginal: str = "uniform"
    strategies: tuple = ("gauss",)
    m: int = 85
    m_grid: tuple = ()
    s: int = 5
    s_grid: tuple = ()
    trials: int = 100
    seed: int = 0
    target: str = "sparse"
    beta: float = -0.65
    t: float = 1.0
    threshold: float = 1e-3
    abs_tol: float = 1e-8
    rel_tol: float = 1e-8
    max_iter: int = 20000
    workers: int = 1
    family: str = "uniform"
    n_min: int = 1
    n_max: int = 50
    out: Optional[str] = None
    dump_design: Optional[str] = None

    def __post_init__(self):
        if self.trials < 1:
            raise UsageError(f"trials={self.trials} must be >= 1")
        if self.experiment not in EXPERIMENTS:
            raise UsageError(f"unknown experiment '{self.experiment}'")
        from .sampling import STRATEGIES

        for strat in self.strategies:
            if strat not in STRATEGIES:
                raise UsageError(f"unknown strategy '{strat}'")
        marginal_from_name(self.family if self.experiment == "bound" else self.marginal)

    def solver_config(self) -> SolverConfig:
        return SolverConfig(abs_tol=self.abs_tol, rel_tol=self.rel_tol, max_iter=self.max_iter)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    strategy: str
    m: int
    s: int
    err_inf: float
    err_l2: float
    success: bool
    solver_iterations: int
    converged: bool
    seed_used: int


def _stream(config_seed: int, *parts) -> np.random.SeedSequence:
    entropy = [config_seed & 0xFFFFFFFFFFFFFFFF]
    for p in parts:
        if isinstance(p, str):
            entropy.append(zlib.crc32(p.encode()))
        else:
            entropy.append(int(p) & 0xFFFFFFFFFFFFFFFF)
    return np.random.SeedSequence(entropy)


@lru_cache(maxsize=32)
def _problem(marginal_name: str, d: int, degree: int):
    """Family tuple, index set and enveloping tensor rule for one setup."""
    dist = marginal_from_name(marginal_name)
    index_set = total_degree(d, degree)
    env = index_set.envelope()
    family = build_family(dist, max(2 * int(env.max()), 8))
    families = (family,) * d
    rule = tensor_rule(families, tuple(int(v) for v in env))
    return families, index_set, rule


@lru_cache(maxsize=8)
def _analytic_reference(target_name: str, marginal_name: str, d: int, degree: int,
                        beta: float, t: float):
    families, index_set, rule = _problem(marginal_name, d, degree)
    target = make_target(target_name, beta=beta, t=t)
    return reference_coefficients(target, families, index_set, rule)


@lru_cache(maxsize=8)
def _memoized_target(target_name: str, beta: float, t: float) -> TargetFunction:
    target = make_target(target_name, beta=beta, t=t)
    return replace_evaluator(target, memoize_pointwise(target.evaluate))


def replace_evaluator(target: TargetFunction, evaluate) -> TargetFunction:
    return TargetFunction(
        target.name, target.d, target.marginal, target.degree, evaluate,
        coefficients=target.coefficients, index_set=target.index_set,
    )


def _solve_trial(config: ExperimentConfig, strategy: str, m: int, s: int, trial: int,
                 target: TargetFunction, reference: np.ndarray, families, index_set,
                 rule) -> TrialRecord:
    sample_stream = _stream(config.seed, "samples", strategy, s, m, trial)
    seed_used = int(sample_stream.generate_state(1)[0])
    samples = collocation(strategy, [f.distribution for f in families], m,
                          np.random.default_rng(sample_stream), rule=rule)
    system = assemble(samples, families, index_set, target.evaluate)
    if config.dump_design and trial == 0:
        _dump_design(config.dump_design, system)
    result = admm_basis_pursuit(system.matrix, system.rhs, config.solver_config())
    diff = result.coefficients - reference
    err_inf = float(np.max(np.abs(diff)))
    err_l2 = float(np.linalg.norm(diff))
    return TrialRecord(
        trial, strategy, m, s, err_inf, err_l2,
        recovery_success(result.coefficients, reference, config.threshold),
        result.iterations, result.converged, seed_used,
    )


def _recovery_trial(payload) -> TrialRecord:
    config, strategy, s, trial = payload
    families, index_set, rule = _problem(config.marginal, config.d, config.degree)
    target_rng = np.random.default_rng(_stream(config.seed, "target", s, trial))
    target = make_sparse_target(index_set, families, s, target_rng)
    return _solve_trial(config, strategy, config.m, s, trial, target,
                        target.coefficients, families, index_set, rule)


def _error_trial(payload) -> TrialRecord:
    config, strategy, m, trial = payload
    if config.target == "sparse":
        families, index_set, rule = _problem(config.marginal, config.d, config.degree)
        target_rng = np.random.default_rng(_stream(config.seed, "target", config.s, trial))
        target = make_sparse_target(index_set, families, config.s, target_rng)
        reference = target.coefficients
    else:
        base = make_target(config.target, beta=config.beta, t=config.t)
        marginal = marginal_name(base.marginal)
        families, index_set, rule = _problem(marginal, base.d, config.degree)
        reference = _analytic_reference(config.target, marginal, base.d,
                                        config.degree, config.beta, config.t)
        target = _memoized_target(config.target, config.beta, config.t)
    return _solve_trial(config, strategy, m, config.s, trial, target, reference,
                        families, index_set, rule)


def _ode_trial(payload) -> TrialRecord:
    config, strategy, m, trial = payload
    families, index_set, rule = _problem("gaussian", 1, config.degree - 1)
    target = _memoized_target("ode", config.beta, config.t)
    sample_stream = _stream(config.seed, "samples", strategy, 0, m, trial)
    seed_used = int(sample_stream.generate_state(1)[0])
    samples = collocation(strategy, [families[0].distribution], m,
                          np.random.default_rng(sample_stream), rule=rule)
    system = assemble(samples, families, index_set, target.evaluate)
    result = admm_basis_pursuit(system.matrix, system.rhs, config.solver_config())
    err = abs(ode_qoi(result.coefficients) - ode_moment_exact(config.beta, config.t))
    return TrialRecord(trial, strategy, m, 0, err, err, err <= config.threshold,
                       result.iterations, result.converged, seed_used)


def _map_trials(worker, payloads, workers: int):
    if workers <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(min(workers, len(payloads))) as pool:
        return pool.map(worker, payloads, chunksize=1)


def _trial_row(rec: TrialRecord) -> tuple:
    return ("trial", rec.trial, rec.strategy, rec.m, rec.s, rec.err_inf, rec.err_l2,
            int(rec.success), rec.solver_iterations, int(rec.converged), rec.seed_used, "")


def run_recovery_rate(config: ExperimentConfig):
    """Success-rate sweep over the sparsity grid; per-trial records plus a
    (s, strategy, success_rate) aggregate per cell."""
    s_values = config.s_grid or (config.s,)
    rows = []
    records = []
    for s in s_values:
        for strategy in config.strategies:
            payloads = [(config, strategy, int(s), t) for t in range(config.trials)]
            try:
                recs = _map_trials(_recovery_trial, payloads, config.workers)
            except UsageError as exc:
                rows.append(("error", "", strategy, config.m, int(s), "", "",
                             "", "", "", "", str(exc)))
                continue
            records.extend(recs)
            rows.extend(_trial_row(r) for r in recs)
            rate = float(np.mean([r.success for r in recs]))
            rows.append(("aggregate", "", strategy, config.m, int(s), "", "",
                         rate, "", "", "", ""))
    return records, rows


def run_error_vs_m(config: ExperimentConfig):
    """Mean coefficient error per sample budget and strategy."""
    m_values = config.m_grid or (config.m,)
    rows = []
    records = []
    for m in m_values:
        for strategy in config.strategies:
            payloads = [(config, strategy, int(m), t) for t in range(config.trials)]
            try:
                recs = _map_trials(_error_trial, payloads, config.workers)
            except UsageError as exc:
                rows.append(("error", "", strategy, int(m), config.s, "", "",
                             "", "", "", "", str(exc)))
                continue
            records.extend(recs)
            rows.extend(_trial_row(r) for r in recs)
            rows.append(("aggregate", "", strategy, int(m), config.s,
                         float(np.mean([r.err_inf for r in recs])),
                         float(np.mean([r.err_l2 for r in recs])),
                         float(np.mean([r.success for r in recs])), "", "", "", ""))
    return records, rows


def run_ode_study(config: ExperimentConfig):
    """Second-moment error of the recovered decay-ODE expansion per sample
    budget; err_inf carries |Q - E u^2| for these records."""
    m_values = config.m_grid or (config.m,)
    rows = []
    records = []
    for m in m_values:
        for strategy in config.strategies:
            payloads = [(config, strategy, int(m), t) for t in range(config.trials)]
            try:
                recs = _map_trials(_ode_trial, payloads, config.workers)
            except UsageError as exc:
                rows.append(("error", "", strategy, int(m), 0, "", "",
                             "", "", "", "", str(exc)))
                continue
            records.extend(recs)
            rows.extend(_trial_row(r) for r in recs)
            rows.append(("aggregate", "", strategy, int(m), 0,
                         float(np.mean([r.err_inf for r in recs])), "",
                         "", "", "", "", ""))
    return records, rows


BOUND_HEADER = ("n", "L", "arg_k", "arg_j")


def run_bound_table(config: ExperimentConfig):
    """Sup-norm bound per rule size for one family."""
    dist = marginal_from_name(config.family)
    family = build_family(dist, config.n_max + 1)
    rows = []
    for n in range(config.n_min, config.n_max + 1):
        report = univariate_bound(family, n)
        rows.append((n, report.bound, report.arg_degree, report.arg_node))
    return rows


def _format(value) -> str:
    if isinstance(value, float):
        # plain-float repr (numpy scalars would stringify as np.float64(...))
        return repr(float(value))
    return str(value)


def _needs_quote(text: str) -> bool:
    return any(ch in text for ch in (",", '"', "\n"))


def _csv_line(row) -> str:
    parts = []
    for value in row:
        text = _format(value)
        if _needs_quote(text):
            text = '"' + text.replace('"', '""') + '"'
        parts.append(text)
    return ",".join(parts)


def write_csv(path: str, config: ExperimentConfig, header, rows) -> None:
    """CSV with '#'-prefixed metadata lines (config echo, seed, tolerances,
    version) ahead of the RFC-4180 header row.  Only the timestamp line
    varies between identically-seeded runs."""
    meta = [
        f"# quadsub {__version__}",
        f"# timestamp: {datetime.now(timezone.utc).isoformat()}",
    ]
    for f in fields(config):
        value = getattr(config, f.name)
        if value is None or f.name in ("out", "dump_design"):
            continue
        meta.append(f"# {f.name}: {_format(value)}")
    with open(path, "w", newline="") as fp:
        for line in meta:
            fp.write(line + "\r\n")
        fp.write(_csv_line(header) + "\r\n")
        for row in rows:
            fp.write(_csv_line(row) + "\r\n")


def _dump_design(path: str, system) -> None:
    m, n = system.matrix.shape
    with open(path, "w", newline="") as fp:
        fp.write(_csv_line([f"d{j}" for j in range(n)] + ["rhs"]) + "\r\n")
        for i in range(m):
            fp.write(_csv_line(list(system.matrix[i]) + [system.rhs[i]]) + "\r\n")


def run_experiment(config: ExperimentConfig):
    """Dispatch one experiment and write its CSV when requested."""
    if config.experiment == "recovery-rate":
        _, rows = run_recovery_rate(config)
        header = TRIAL_HEADER
    elif config.experiment == "error-vs-m":
        _, rows = run_error_vs_m(config)
        header = TRIAL_HEADER
    elif config.experiment == "ode":
        _, rows = run_ode_study(config)
        header = TRIAL_HEADER
    elif config.experiment == "bound":
        rows = run_bound_table(config)
        header = BOUND_HEADER
    else:
        raise UsageError(f"unknown experiment '{config.experiment}'")
    if config.out:
        write_csv(config.out, config, header, rows)
    return header, rows
