"""Episode execution, regret accounting, and seeded Monte Carlo replication.

The pseudo-regret of a trace is the exact conditional expectation of regret
given the action sequence: the sum of the played actions' gaps. It needs no
estimate of the comparator and is the headline metric; realized regret
(incurred losses minus the comparator's realized losses) is reported next to
it. Replicate i of an experiment uses seed derive_seed(master, "replicate", i),
so a RegretReport is a pure function of its ExperimentConfig.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from graphbandit.environments import Environment, EnvOracle, env_from_config
from graphbandit.learners import learner_from_config
from graphbandit.seeding import derive_seed

Z_95 = 1.959963984540054  # two-sided 95% normal quantile


class ConfigError(ValueError):
    """Config failed validation; `path` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class ProtocolError(RuntimeError):
    """A learner broke the step protocol; carries the round number."""

    def __init__(self, round_: int, message: str):
        super().__init__(f"round {round_}: {message}")
        self.round = round_


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    environment: dict
    learner: dict
    horizon: int
    replicates: int
    master_seed: int
    checkpoints: tuple[int, ...] | None = None

    @staticmethod
    def from_dict(obj: dict) -> "ExperimentConfig":
        validate_experiment_config(obj)
        checkpoints = obj.get("checkpoints")
        return ExperimentConfig(
            environment=obj["environment"],
            learner=obj["learner"],
            horizon=int(obj["t"]),
            replicates=int(obj["replicates"]),
            master_seed=int(obj["master_seed"]),
            checkpoints=tuple(int(c) for c in checkpoints) if checkpoints else None,
        )

    def to_dict(self) -> dict:
        out = {
            "environment": self.environment,
            "learner": self.learner,
            "t": self.horizon,
            "replicates": self.replicates,
            "master_seed": self.master_seed,
        }
        if self.checkpoints:
            out["checkpoints"] = list(self.checkpoints)
        return out

    def digest(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _require(obj: dict, path: str, key: str, types, predicate=None, what: str = ""):
    if key not in obj:
        raise ConfigError(f"{path}.{key}", "missing required field")
    val = obj[key]
    if not isinstance(val, types) or isinstance(val, bool) and bool not in _as_tuple(types):
        raise ConfigError(f"{path}.{key}", f"expected {what or types}, got {type(val).__name__}")
    if predicate is not None and not predicate(val):
        raise ConfigError(f"{path}.{key}", f"invalid value {val!r}")
    return val


def _as_tuple(types):
    return types if isinstance(types, tuple) else (types,)


def validate_experiment_config(obj: dict) -> None:
    """Structural validation with dotted-path error reporting."""
    if not isinstance(obj, dict):
        raise ConfigError(".", "experiment config must be a JSON object")
    _require(obj, "", "t", int, lambda v: v >= 1, "positive integer")
    _require(obj, "", "replicates", int, lambda v: v >= 1, "positive integer")
    _require(obj, "", "master_seed", int, lambda v: True, "integer")
    env = _require(obj, "", "environment", dict, what="object")
    _require(env, ".environment", "type", str,
             lambda v: v in ("stochastic", "adversarial_lb", "strongly_obs_lb"))
    if env["type"] == "stochastic":
        _require(env, ".environment", "losses", dict, what="object")
        _require(env, ".environment", "graphs", dict, what="object")
    if env["type"] == "adversarial_lb":
        _require(env, ".environment", "k", int, lambda v: v >= 2)
    lrn = _require(obj, "", "learner", dict, what="object")
    _require(lrn, ".learner", "type", str,
             lambda v: v in ("elimination", "elimination_strong", "explore_exploit",
                             "exp3", "ucb"))
    cps = obj.get("checkpoints")
    if cps is not None:
        if not isinstance(cps, list) or not all(isinstance(c, int) and c >= 1 for c in cps):
            raise ConfigError(".checkpoints", "expected a list of positive integers")
    if "t" in env and int(env["t"]) != int(obj["t"]):
        raise ConfigError(".environment.t", "must match top-level .t when present")


# ---------------------------------------------------------------------------
# episode execution and regret
# ---------------------------------------------------------------------------


def run_episode(env: Environment, learner) -> EnvOracle:
    """Alternate choose/step/observe for the whole horizon; return the oracle."""
    session = env.session()
    k = env.num_actions
    choose = learner.choose
    observe = learner.observe
    step = session.step
    for t in range(1, env.horizon + 1):
        action = choose()
        if not isinstance(action, int) or not 1 <= action <= k:
            raise ProtocolError(t, f"learner produced invalid action {action!r}")
        observe(step(action))
    return env.oracle()


def pseudo_regret(oracle: EnvOracle) -> float:
    """Exact conditional-expectation regret: sum of played actions' gaps."""
    if len(oracle.played) == 0:
        return 0.0
    return float(oracle.action_gaps[oracle.played - 1].sum())


def realized_regret(oracle: EnvOracle) -> float:
    """Incurred losses minus the comparator action's realized losses."""
    return float(oracle.incurred.sum() - oracle.comparator.sum())


def regret_curves(oracle: EnvOracle, checkpoints) -> list[dict]:
    """Cumulative pseudo/realized regret at each checkpoint round."""
    gaps = oracle.action_gaps[oracle.played - 1]
    cum_pseudo = np.cumsum(gaps)
    cum_realized = np.cumsum(oracle.incurred - oracle.comparator)
    out = []
    n = len(gaps)
    for c in checkpoints:
        if c < 1 or c > n:
            continue
        out.append(
            {
                "round": int(c),
                "cum_pseudo_regret": float(cum_pseudo[c - 1]),
                "cum_realized_regret": float(cum_realized[c - 1]),
            }
        )
    return out


TRACE_HEADER = ("round", "played", "incurred_loss", "observed_count", "comparator_loss")


def trace_rows(oracle: EnvOracle):
    """Per-round trace rows in TRACE_HEADER order."""
    for t in range(len(oracle.played)):
        yield (
            t + 1,
            int(oracle.played[t]),
            float(oracle.incurred[t]),
            int(oracle.observed_count[t]),
            float(oracle.comparator[t]),
        )


PHASE_LOG_HEADER = ("phase", "eps_r", "n_r", "rounds_spent", "surviving_actions")


def phase_log_rows(learner):
    """Elimination phase-log rows; empty for learners without phases."""
    for rec in getattr(learner, "phase_log", []):
        yield (
            rec.phase,
            rec.eps,
            rec.reps,
            rec.rounds_spent,
            " ".join(str(v) for v in rec.survivors),
        )


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


@dataclass
class RegretReport:
    config_digest: str
    master_seed: int
    replicates: list[dict]
    mean_pseudo_regret: float
    se_pseudo_regret: float
    ci95_pseudo_regret: tuple[float, float]
    mean_realized_regret: float
    se_realized_regret: float
    curves: list[list[dict]] = field(default_factory=list)
    # side exports (populated only when monte_carlo runs with_traces=True)
    traces: list = field(default_factory=list)
    phase_logs: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "config_digest": self.config_digest,
            "master_seed": self.master_seed,
            "replicates": self.replicates,
            "aggregates": {
                "mean_pseudo_regret": self.mean_pseudo_regret,
                "se_pseudo_regret": self.se_pseudo_regret,
                "ci95_pseudo_regret": list(self.ci95_pseudo_regret),
                "mean_realized_regret": self.mean_realized_regret,
                "se_realized_regret": self.se_realized_regret,
            },
        }
        if self.curves:
            out["curves"] = self.curves
        return out


def _run_replicate(config: ExperimentConfig, index: int, with_trace: bool = False) -> dict:
    seed = derive_seed(config.master_seed, "replicate", index)
    env = env_from_config(config.environment, config.horizon, derive_seed(seed, "env"))
    learner = learner_from_config(
        config.learner, env.num_actions, config.horizon, derive_seed(seed, "learner")
    )
    try:
        oracle = run_episode(env, learner)
    except ProtocolError as exc:
        raise ProtocolError(exc.round, f"replicate {index}: {exc}") from exc
    result = {
        "replicate": index,
        "pseudo_regret": pseudo_regret(oracle),
        "realized_regret": realized_regret(oracle),
        "rounds": int(oracle.rounds_used),
    }
    curve = regret_curves(oracle, config.checkpoints) if config.checkpoints else []
    out = {"result": result, "curve": curve}
    if with_trace:
        out["trace"] = list(trace_rows(oracle))
        out["phase_log"] = list(phase_log_rows(learner))
    return out


def monte_carlo(
    config: ExperimentConfig, parallelism: int = 1, with_traces: bool = False
) -> RegretReport:
    """Independent replicates with derived seeds; order-insensitive aggregation."""
    indices = list(range(config.replicates))
    if parallelism > 1 and config.replicates > 1:
        with ProcessPoolExecutor(max_workers=min(parallelism, config.replicates)) as pool:
            outs = list(pool.map(_replicate_worker, [(config, i, with_traces) for i in indices]))
    else:
        outs = [_run_replicate(config, i, with_traces) for i in indices]
    results = [o["result"] for o in outs]
    curves = [o["curve"] for o in outs if o["curve"]]
    pseudo = np.array([r["pseudo_regret"] for r in results])
    realized = np.array([r["realized_regret"] for r in results])
    n = len(pseudo)
    se_p = float(pseudo.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    se_r = float(realized.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    mean_p = float(pseudo.mean())
    report = RegretReport(
        config_digest=config.digest(),
        master_seed=config.master_seed,
        replicates=results,
        mean_pseudo_regret=mean_p,
        se_pseudo_regret=se_p,
        ci95_pseudo_regret=(mean_p - Z_95 * se_p, mean_p + Z_95 * se_p),
        mean_realized_regret=float(realized.mean()),
        se_realized_regret=se_r,
        curves=curves,
    )
    if with_traces:
        report.traces = [o.get("trace", []) for o in outs]
        report.phase_logs = [o.get("phase_log", []) for o in outs]
    return report


def _replicate_worker(args):
    return _run_replicate(*args)
