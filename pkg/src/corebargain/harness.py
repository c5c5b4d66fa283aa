"""Experiment harness: presets, config I/O, Monte Carlo batches, exports.

File formats (the package's external interface):

``aggregate.csv``
    Columns ``t,quantity,player,mean,variance``. Quantities are ``x_j``
    (coordinate j of a player's proposal, one row per player), ``e_norm``
    (Euclidean norm of a player's projection error, absent at the final
    step), and ``D`` (network disagreement, written with player 0). Mean and
    variance are across runs; variance uses the population convention
    (divide by R). Numbers carry 12 significant digits.

``run_<k>.csv``
    Columns ``t,player,x_1..x_n,e_norm,D``; one row per (step, player) for
    t = 0..T. The ``e_norm`` cell is empty at t = T (no step departs there).

``report.json``
    Echo of the resolved configuration, per-run terminal summaries, and the
    reference games (per-coalition upper bounds and ergodic means as flat
    value lists in increasing-mask order) when the value process defines
    them.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .errors import AssumptionViolationError, ConfigurationError, InfeasibleSetError
from .game import (
    CharacteristicFunction,
    ValueBounds,
    core_constraints,
    core_is_nonempty,
    is_in_core,
)
from .geometry import distance_to, enumerate_vertices
from .graphs import (
    GraphSchedule,
    minimal_connectivity_window,
    validate_connectivity,
    validate_weights,
)
from .protocol import RunTrace, corner_proposals, run
from .stochastic import SeededStream, ValueProcessSpec

DEFAULT_SEED = 2024

#: Reporting tolerance for the per-run core-membership flag.
REPORT_CORE_TOL = 1e-2

# Acceptance tolerances (fixed; see tests/test_acceptance.py for the suite).
ROBUST_TERMINAL_TOL = 1e-2
ROBUST_VARIANCE_TOL = 1e-4
LYAPUNOV_SLACK = 1e-8
AVERAGE_CORE_DIST_TOL = 5e-2
AVERAGE_CONSENSUS_TOL = 1e-2


def scenario_bounds(preset: str) -> ValueBounds:
    """Coalition value intervals of the two built-in scenarios: the first
    two singletons are uniform on an interval, everything else is 0 except
    the grand coalition at 10."""
    if preset == "I":
        hi1, hi2 = 7.0, 3.0
    elif preset == "II":
        hi1, hi2 = 9.0, 5.0
    else:
        raise ConfigurationError(f"unknown preset {preset!r}")
    lo = np.array([4.0, 0, 0, 0, 0, 0, 10.0])
    hi = np.array([hi1, hi2, 0, 0, 0, 0, 10.0])
    return ValueBounds(3, lo, hi)


def rotating_pair_schedule() -> GraphSchedule:
    """Three-frame cycle where one pair of players averages per step:
    (2,3), then (1,3), then (1,2). Doubly stochastic with alpha = 1/2 and
    every two consecutive frames strongly connected (window 2)."""
    A0 = np.array([[1.0, 0, 0], [0, 0.5, 0.5], [0, 0.5, 0.5]])
    A1 = np.array([[0.5, 0, 0.5], [0, 1.0, 0], [0.5, 0, 0.5]])
    A2 = np.array([[0.5, 0.5, 0], [0.5, 0.5, 0], [0, 0, 1.0]])
    return GraphSchedule.from_matrices([A0, A1, A2])


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """Fully resolved description of one Monte Carlo experiment."""

    preset: str
    mode: str
    n: int
    steps: int
    runs: int
    master_seed: int
    process: ValueProcessSpec
    schedule: GraphSchedule
    connectivity_window: int
    initial: np.ndarray
    out_dir: str | None = None

    def __post_init__(self):
        if self.mode not in ("robust", "average"):
            raise ConfigurationError(f"mode must be robust or average, got {self.mode!r}")
        if self.steps < 1 or self.runs < 1:
            raise ConfigurationError("steps and runs must be >= 1")
        if not 1 <= self.n <= 6:
            raise ConfigurationError("player count must be in 1..6")
        if self.process.n != self.n or self.schedule.n != self.n:
            raise ConfigurationError("process, schedule, and n disagree")
        if self.connectivity_window < 1:
            raise ConfigurationError("connectivity window must be >= 1")
        X0 = np.ascontiguousarray(np.asarray(self.initial, dtype=float))
        if X0.shape != (self.n, self.n):
            raise ConfigurationError(f"initial proposals must be {self.n}x{self.n}")
        X0.setflags(write=False)
        object.__setattr__(self, "initial", X0)


def preset_config(
    preset: str,
    mode: str,
    runs: int = 50,
    steps: int = 100,
    master_seed: int = DEFAULT_SEED,
    out_dir: str | None = None,
) -> ExperimentConfig:
    """Built-in scenario I or II: three players, the rotating-pair schedule,
    corner initial allocations, and 50 runs of 100 steps by default. Robust
    mode draws the upper-bound game with probability 1/2 per step; average
    mode draws plain interval uniforms."""
    bounds = scenario_bounds(preset)
    if mode == "robust":
        process = ValueProcessSpec.robust_coinflip(bounds, 0.5)
    elif mode == "average":
        process = ValueProcessSpec.uniform(bounds)
    else:
        raise ConfigurationError(f"mode must be robust or average, got {mode!r}")
    return ExperimentConfig(
        preset=preset,
        mode=mode,
        n=3,
        steps=steps,
        runs=runs,
        master_seed=master_seed,
        process=process,
        schedule=rotating_pair_schedule(),
        connectivity_window=2,
        initial=corner_proposals(3, bounds.grand_value),
        out_dir=out_dir,
    )


# --- config (de)serialization -------------------------------------------


def _process_to_dict(p: ValueProcessSpec) -> dict:
    d: dict = {"kind": p.kind}
    if p.bounds is not None:
        d["bounds"] = {
            "n": p.bounds.n,
            "lo": p.bounds.lo.tolist(),
            "hi": p.bounds.hi.tolist(),
        }
    if p.uniform_probability is not None:
        d["uniform_probability"] = p.uniform_probability
    if p.warehouse_cost is not None:
        d["warehouse_cost"] = p.warehouse_cost
        d["demand_lo"] = p.demand_lo.tolist()
        d["demand_hi"] = p.demand_hi.tolist()
    if p.constant is not None:
        d["constant"] = {"n": p.constant.n, "values": p.constant.values.tolist()}
    return d


def _process_from_dict(d: dict) -> ValueProcessSpec:
    kind = d.get("kind")
    if kind in ("uniform-interval", "robust-coinflip"):
        b = d["bounds"]
        bounds = ValueBounds(int(b["n"]), np.asarray(b["lo"]), np.asarray(b["hi"]))
        if kind == "uniform-interval":
            return ValueProcessSpec.uniform(bounds)
        return ValueProcessSpec.robust_coinflip(bounds, float(d["uniform_probability"]))
    if kind == "supply-chain":
        return ValueProcessSpec.supply_chain(
            float(d["warehouse_cost"]),
            np.asarray(d["demand_lo"]),
            np.asarray(d["demand_hi"]),
        )
    if kind == "constant":
        c = d["constant"]
        return ValueProcessSpec.constant_value(
            CharacteristicFunction(int(c["n"]), np.asarray(c["values"]))
        )
    raise ConfigurationError(f"unknown process kind {kind!r}")


def config_to_dict(cfg: ExperimentConfig) -> dict:
    return {
        "preset": cfg.preset,
        "mode": cfg.mode,
        "n": cfg.n,
        "steps": cfg.steps,
        "runs": cfg.runs,
        "master_seed": cfg.master_seed,
        "connectivity_window": cfg.connectivity_window,
        "process": _process_to_dict(cfg.process),
        "schedule": {"matrices": [f.weights.tolist() for f in cfg.schedule.frames]},
        "initial": cfg.initial.tolist(),
    }


def config_from_dict(d: dict, out_dir: str | None = None) -> ExperimentConfig:
    try:
        process = _process_from_dict(d["process"])
        schedule = GraphSchedule.from_matrices(
            [np.asarray(W, dtype=float) for W in d["schedule"]["matrices"]]
        )
        n = int(d.get("n", process.n))
        if "initial" in d:
            initial = np.asarray(d["initial"], dtype=float)
        else:
            upper = process.upper_characteristic()
            if upper is None:
                raise ConfigurationError(
                    "initial proposals required when the process has no fixed "
                    "grand-coalition value"
                )
            initial = corner_proposals(n, upper.grand_value)
        return ExperimentConfig(
            preset=str(d.get("preset", "custom")),
            mode=str(d["mode"]),
            n=n,
            steps=int(d.get("steps", 100)),
            runs=int(d.get("runs", 50)),
            master_seed=int(d.get("master_seed", DEFAULT_SEED)),
            process=process,
            schedule=schedule,
            connectivity_window=int(d.get("connectivity_window", 1)),
            initial=initial,
            out_dir=out_dir,
        )
    except KeyError as err:
        raise ConfigurationError(f"config is missing required key {err}") from err


def load_config(path, out_dir: str | None = None) -> ExperimentConfig:
    """Load a custom experiment from a YAML file (nested key/value sections
    mirroring config_to_dict's layout)."""
    with open(path) as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path}: config must be a mapping")
    return config_from_dict(data, out_dir=out_dir)


def validate_config(cfg: ExperimentConfig) -> dict:
    """Run the schedule assumption checks; raises on violation, returns a
    small diagnostics dict otherwise."""
    alpha = validate_weights(cfg.schedule)
    if not validate_connectivity(cfg.schedule, cfg.connectivity_window):
        raise AssumptionViolationError(
            f"schedule is not strongly connected over windows of "
            f"{cfg.connectivity_window} steps"
        )
    return {
        "alpha": alpha,
        "connectivity_window": cfg.connectivity_window,
        "min_connectivity_window": minimal_connectivity_window(cfg.schedule),
    }


# --- experiment execution -------------------------------------------------


@dataclass(frozen=True, eq=False)
class RunReport:
    """Terminal summary of one run."""

    run_index: int
    terminal_mean: np.ndarray
    terminal_disagreement: float
    converged_at: int | None
    core_distance: float | None
    in_core: bool | None


@dataclass(frozen=True, eq=False)
class AggregateSeries:
    """Across-run sampled mean and population variance of every tracked
    quantity, per step."""

    n: int
    steps: int
    runs: int
    alloc_mean: np.ndarray  # (T+1, n, n): mean of x^i_j(t)
    alloc_var: np.ndarray
    err_mean: np.ndarray  # (T, n): mean of ||e^i(t)||
    err_var: np.ndarray
    disagreement_mean: np.ndarray  # (T+1,)
    disagreement_var: np.ndarray


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    config: ExperimentConfig
    traces: tuple
    aggregate: AggregateSeries
    reports: tuple
    diagnostics: dict


def _reference_game(cfg: ExperimentConfig) -> CharacteristicFunction | None:
    """Game against which terminal core membership is reported: the
    upper-bound game in robust mode, the ergodic mean game in average."""
    if cfg.mode == "robust":
        return cfg.process.upper_characteristic()
    return cfg.process.mean_characteristic()


def _aggregate(traces, n: int, T: int) -> AggregateSeries:
    X = np.stack([[tr.proposals_at(t) for t in range(T + 1)] for tr in traces])
    E = np.stack([[rec.error_norms() for rec in tr.records] for tr in traces])
    D = np.stack([[tr.disagreement_at(t) for t in range(T + 1)] for tr in traces])
    return AggregateSeries(
        n=n,
        steps=T,
        runs=len(traces),
        alloc_mean=X.mean(axis=0),
        alloc_var=X.var(axis=0),
        err_mean=E.mean(axis=0),
        err_var=E.var(axis=0),
        disagreement_mean=D.mean(axis=0),
        disagreement_var=D.var(axis=0),
    )


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Execute R independent runs (run k is seeded by (master_seed, k)),
    aggregate them, and build per-run terminal reports."""
    diagnostics = validate_config(cfg)
    traces: list[RunTrace] = []
    failures: list[str] = []
    for k in range(cfg.runs):
        stream = SeededStream(cfg.master_seed, k, cfg.process)
        try:
            traces.append(run(cfg.mode, stream, cfg.schedule, cfg.initial, cfg.steps))
        except InfeasibleSetError as err:
            failures.append(f"run {k}: {err}")
    if failures:
        raise InfeasibleSetError(
            f"{len(failures)} of {cfg.runs} runs hit an empty constraint set: "
            + "; ".join(failures[:5])
            + ("; ..." if len(failures) > 5 else "")
        )
    aggregate = _aggregate(traces, cfg.n, cfg.steps)
    reference = _reference_game(cfg)
    ref_core = core_constraints(reference) if reference is not None else None
    reports = []
    for k, tr in enumerate(traces):
        y = tr.mean_at(cfg.steps)
        dist = flag = None
        if reference is not None:
            try:
                dist = distance_to(y, ref_core)
            except InfeasibleSetError:
                dist = None  # reference core empty: distance undefined
            flag = is_in_core(y, reference, REPORT_CORE_TOL)
        reports.append(
            RunReport(
                run_index=k,
                terminal_mean=y,
                terminal_disagreement=tr.disagreement_at(cfg.steps),
                converged_at=tr.converged_at,
                core_distance=dist,
                in_core=flag,
            )
        )
    return ExperimentResult(
        config=cfg,
        traces=tuple(traces),
        aggregate=aggregate,
        reports=tuple(reports),
        diagnostics=diagnostics,
    )


# --- CSV / JSON export ----------------------------------------------------


def _fmt(x: float) -> str:
    return f"{float(x) + 0.0:.12g}"


def export_csv(result: ExperimentResult, out_dir) -> dict:
    """Write aggregate.csv, run_<k>.csv per run, and report.json into
    out_dir; returns the paths. Output is deterministic byte-for-byte for a
    fixed config and master seed."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    agg = result.aggregate
    n, T = agg.n, agg.steps
    agg_path = out / "aggregate.csv"
    with open(agg_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "quantity", "player", "mean", "variance"])
        for t in range(T + 1) if agg.runs else ():
            for i in range(n):
                for j in range(n):
                    w.writerow(
                        [t, f"x_{j + 1}", i + 1,
                         _fmt(agg.alloc_mean[t, i, j]), _fmt(agg.alloc_var[t, i, j])]
                    )
            if t < T:
                for i in range(n):
                    w.writerow(
                        [t, "e_norm", i + 1,
                         _fmt(agg.err_mean[t, i]), _fmt(agg.err_var[t, i])]
                    )
            w.writerow(
                [t, "D", 0,
                 _fmt(agg.disagreement_mean[t]), _fmt(agg.disagreement_var[t])]
            )
    run_paths = []
    for k, tr in enumerate(result.traces):
        p = out / f"run_{k}.csv"
        run_paths.append(p)
        with open(p, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "player"] + [f"x_{j + 1}" for j in range(n)] + ["e_norm", "D"])
            for t in range(T + 1):
                X = tr.proposals_at(t)
                D = tr.disagreement_at(t)
                for i in range(n):
                    e_cell = (
                        _fmt(float(tr.records[t].error_norms()[i])) if t < T else ""
                    )
                    w.writerow(
                        [t, i + 1] + [_fmt(v) for v in X[i]] + [e_cell, _fmt(D)]
                    )
    report_path = out / "report.json"
    report = build_report(result)
    with open(report_path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return {"aggregate": agg_path, "runs": run_paths, "report": report_path}


def build_report(result: ExperimentResult) -> dict:
    cfg = result.config
    upper = cfg.process.upper_characteristic()
    mean = cfg.process.mean_characteristic()
    ref = {
        "upper": None if upper is None else upper.values.tolist(),
        "mean": None if mean is None else mean.values.tolist(),
        "upper_core_nonempty": None,
        "upper_core_witness": None,
    }
    if upper is not None:
        nonempty, witness = core_is_nonempty(upper)
        ref["upper_core_nonempty"] = nonempty
        ref["upper_core_witness"] = None if witness is None else witness.tolist()
    return {
        "config": config_to_dict(cfg),
        "diagnostics": result.diagnostics,
        "reference": ref,
        "runs": [
            {
                "run": r.run_index,
                "terminal_mean": r.terminal_mean.tolist(),
                "terminal_disagreement": r.terminal_disagreement,
                "converged_at": r.converged_at,
                "core_distance": r.core_distance,
                "in_core": r.in_core,
            }
            for r in result.reports
        ],
    }


def load_run_csv(path):
    """Read one run_<k>.csv back into (proposals, error_norms, disagreement)
    arrays of shapes (T+1, n, n), (T, n), (T+1,)."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        n = len([c for c in header if c.startswith("x_")])
        for row in reader:
            rows.append(row)
    T = max(int(r[0]) for r in rows)
    X = np.zeros((T + 1, n, n))
    E = np.zeros((T, n))
    D = np.zeros(T + 1)
    for r in rows:
        t, i = int(r[0]), int(r[1]) - 1
        X[t, i] = [float(v) for v in r[2 : 2 + n]]
        if r[2 + n] != "":
            E[t, i] = float(r[2 + n])
        D[t] = float(r[3 + n])
    return X, E, D


def load_aggregate_csv(path) -> dict:
    """Read aggregate.csv into {(quantity, player): (t, mean, var) arrays}."""
    series: dict = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            key = (row["quantity"], int(row["player"]))
            series.setdefault(key, []).append(
                (int(row["t"]), float(row["mean"]), float(row["variance"]))
            )
    return {
        key: tuple(np.array(col) for col in zip(*sorted(vals)))
        for key, vals in series.items()
    }


# --- acceptance checks ------------------------------------------------------


@dataclass(frozen=True)
class CriterionVerdict:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True, eq=False)
class _CheckData:
    """Everything the acceptance checks need, buildable from an in-memory
    result or from an exported directory."""

    preset: str
    mode: str
    n: int
    steps: int
    runs: int
    proposals: np.ndarray  # (R, T+1, n, n)
    error_norms: np.ndarray  # (R, T, n)
    disagreements: np.ndarray  # (R, T+1)
    upper: CharacteristicFunction | None
    mean: CharacteristicFunction | None


def _check_data_from_result(result: ExperimentResult) -> _CheckData:
    cfg = result.config
    T = cfg.steps
    return _CheckData(
        preset=cfg.preset,
        mode=cfg.mode,
        n=cfg.n,
        steps=T,
        runs=cfg.runs,
        proposals=np.stack(
            [[tr.proposals_at(t) for t in range(T + 1)] for tr in result.traces]
        ),
        error_norms=np.stack(
            [[rec.error_norms() for rec in tr.records] for tr in result.traces]
        ),
        disagreements=np.stack(
            [[tr.disagreement_at(t) for t in range(T + 1)] for tr in result.traces]
        ),
        upper=cfg.process.upper_characteristic(),
        mean=cfg.process.mean_characteristic(),
    )


def _check_data_from_dir(out_dir) -> _CheckData:
    out = Path(out_dir)
    with open(out / "report.json") as fh:
        report = json.load(fh)
    cfg = report["config"]
    n, T, R = int(cfg["n"]), int(cfg["steps"]), int(cfg["runs"])
    X = np.zeros((R, T + 1, n, n))
    E = np.zeros((R, T, n))
    D = np.zeros((R, T + 1))
    for k in range(R):
        X[k], E[k], D[k] = load_run_csv(out / f"run_{k}.csv")
    ref = report["reference"]
    upper = (
        None
        if ref["upper"] is None
        else CharacteristicFunction(n, np.asarray(ref["upper"]))
    )
    mean = (
        None
        if ref["mean"] is None
        else CharacteristicFunction(n, np.asarray(ref["mean"]))
    )
    return _CheckData(
        preset=cfg["preset"], mode=cfg["mode"], n=n, steps=T, runs=R,
        proposals=X, error_norms=E, disagreements=D, upper=upper, mean=mean,
    )


def _evaluate_criteria(data: _CheckData) -> list[CriterionVerdict]:
    verdicts: list[CriterionVerdict] = []
    T = data.steps
    terminal = data.proposals[:, T]  # (R, n, n)
    terminal_means = terminal.mean(axis=1)  # (R, n)

    if data.mode == "robust" and data.upper is not None:
        upper = data.upper
        ok = all(is_in_core(y, upper, ROBUST_TERMINAL_TOL) for y in terminal_means)
        worst = max(distance_to(y, core_constraints(upper)) for y in terminal_means)
        verdicts.append(
            CriterionVerdict(
                "robust-terminal-in-core", ok,
                f"every run's y(T) in C(upper) at tol {ROBUST_TERMINAL_TOL}; "
                f"worst distance {worst:.3e}",
            )
        )
        vertices = enumerate_vertices(core_constraints(upper))
        if len(vertices) == 1:
            target = vertices[0] + 0.0  # normalize -0.0 for display
            dev = float(np.abs(terminal_means - target).max())
            verdicts.append(
                CriterionVerdict(
                    "robust-terminal-point", dev <= ROBUST_TERMINAL_TOL,
                    f"max |y(T) - {np.round(target, 6).tolist()}|_inf = {dev:.3e} "
                    f"(tol {ROBUST_TERMINAL_TOL})",
                )
            )
        var = float(terminal.var(axis=0).max())
        verdicts.append(
            CriterionVerdict(
                "robust-terminal-variance", var <= ROBUST_VARIANCE_TOL,
                f"max terminal allocation variance {var:.3e} (tol {ROBUST_VARIANCE_TOL})",
            )
        )
        nonempty, witness = core_is_nonempty(upper)
        if nonempty:
            z = witness
            V = ((data.proposals - z) ** 2).sum(axis=(2, 3))  # (R, T+1)
            e2 = (data.error_norms**2).sum(axis=2)  # (R, T)
            descent = V[:, 1:] - (V[:, :-1] - e2)
            worst_descent = float(descent.max())
            verdicts.append(
                CriterionVerdict(
                    "robust-lyapunov-descent", worst_descent <= LYAPUNOV_SLACK,
                    f"max of V(t+1) - V(t) + sum|e|^2 = {worst_descent:.3e} "
                    f"(slack {LYAPUNOV_SLACK})",
                )
            )
            budget = float((e2.sum(axis=1) - V[:, 0]).max())
            verdicts.append(
                CriterionVerdict(
                    "robust-error-summability", budget <= LYAPUNOV_SLACK,
                    f"max of sum_t sum_i |e|^2 - V(0) = {budget:.3e}",
                )
            )

    if data.mode == "average" and data.mean is not None:
        mean_core = core_constraints(data.mean)
        dists = [distance_to(y, mean_core) for y in terminal_means]
        worst = max(dists)
        count = sum(d > AVERAGE_CORE_DIST_TOL for d in dists)
        verdicts.append(
            CriterionVerdict(
                "average-terminal-near-core", worst <= AVERAGE_CORE_DIST_TOL,
                f"worst distance of y(T) to C(mean) = {worst:.3e} "
                f"(tol {AVERAGE_CORE_DIST_TOL}; {count}/{data.runs} runs beyond)",
            )
        )
        worst_D = float(data.disagreements[:, T].max())
        verdicts.append(
            CriterionVerdict(
                "average-terminal-consensus", worst_D <= AVERAGE_CONSENSUS_TOL,
                f"max D(T) = {worst_D:.3e} (tol {AVERAGE_CONSENSUS_TOL})",
            )
        )
        var = float(terminal.var(axis=0).max())
        verdicts.append(
            CriterionVerdict(
                "average-limit-dispersion", var > 0.0,
                f"max terminal allocation variance {var:.3e} (must be > 0)",
            )
        )
        if data.preset == "II" and data.upper is not None:
            nonempty, _ = core_is_nonempty(data.upper)
            verdicts.append(
                CriterionVerdict(
                    "average-upper-core-empty", not nonempty,
                    "core of the upper-bound game is "
                    + ("empty" if not nonempty else "nonempty"),
                )
            )
    return verdicts


def check_acceptance(result: ExperimentResult) -> list[CriterionVerdict]:
    """Evaluate the convergence acceptance criteria applicable to the
    experiment's mode and preset."""
    return _evaluate_criteria(_check_data_from_result(result))


def check_directory(out_dir) -> list[CriterionVerdict]:
    """Re-run the acceptance checks from an exported output directory."""
    return _evaluate_criteria(_check_data_from_dir(out_dir))
