"""Executable checks for the quantitative claims the design rests on.

Each check returns CheckResult records carrying the measured values, the
bound they must respect, sample sizes, and the seed, so a failure is
reproducible from its own payload. Exact checks (construction tables, the
one-step observation identity) allow only 1e-12 float slack; statistical
checks use the stated bound plus three binomial standard errors at that
bound.

Check ids: fig1, fig2 (hard-instance table exactness and empirical
cross-validation), alpha_sample (sampling-cost tail and mean bounds),
expected_observed (one-step expectation inequality), er_independence
(random-graph independence numbers), sequence_alpha (independence numbers
along hard-instance graph sequences), elimination (survivor-gap and
phase-count bounds), loss_graph_independence (stochastic decoupling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from graphbandit import environments as envs
from graphbandit import graphs as gr
from graphbandit import harness as hn
from graphbandit import learners as ln
from graphbandit.seeding import derive_seed, make_rng

EXACT_TOL = 1e-12
DEFAULT_SEED = 20260810


@dataclass
class CheckResult:
    name: str
    claim: str
    status: str  # "pass" | "fail"
    measured: dict
    bound: dict
    tolerance: str
    sample_size: int
    seed: int
    config: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "status": self.status,
            "measured": self.measured,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "config": self.config,
            "failures": self.failures,
        }


def _result(name, claim, ok, measured, bound, tolerance, n, seed, config=None, failures=None):
    return CheckResult(
        name=name,
        claim=claim,
        status="pass" if ok else "fail",
        measured=measured,
        bound=bound,
        tolerance=tolerance,
        sample_size=n,
        seed=seed,
        config=config or {},
        failures=failures or [],
    )


def _stat_threshold(rate: float, n: int) -> float:
    """bound + 3 binomial standard errors at the bound rate."""
    return rate + 3.0 * math.sqrt(max(rate * (1.0 - rate), 0.0) / n)


# ---------------------------------------------------------------------------
# fig1: K-action hard instance
# ---------------------------------------------------------------------------


def check_fig1(seed: int = DEFAULT_SEED, empirical_rounds: int = 100_000) -> list[CheckResult]:
    out = []
    failures = []
    # exact table identities across parameter settings, including eps = 0
    for k, t in ((16, 1024), (16, 4096), (64, 4096), (2, 16)):
        eps = 0.125 * math.sqrt(k / t)
        failures += _fig1_exact_failures(eps)
    failures += _fig1_exact_failures(0.0)
    out.append(
        _result(
            "fig1",
            "single-round view (unobserved, loss 0, loss 1) of the hidden best action "
            "equals (2e, (1-2e)/2, (1-2e)/2), identical to any other action's view; "
            "direct plays of it see mean loss 1/2 - e",
            not failures,
            {"cases": 5},
            {"triple": "(2e, (1-2e)/2, (1-2e)/2)"},
            f"exact, {EXACT_TOL}",
            5,
            seed,
            failures=failures,
        )
    )
    if empirical_rounds:
        out.append(_fig1_empirical(seed, empirical_rounds))
    return out


def _fig1_exact_failures(eps: float) -> list:
    failures = []
    expect = (2 * eps, (1 - 2 * eps) / 2, (1 - 2 * eps) / 2)
    for is_star in (True, False):
        triple = envs.adversarial_observation_triple(eps, is_star)
        for got, want, label in zip(triple, expect, ("unobserved", "obs0", "obs1")):
            if abs(got - want) > EXACT_TOL:
                failures.append(
                    {"eps": eps, "target_is_star": is_star, "cell": label,
                     "got": got, "want": want}
                )
    cells = envs.adversarial_joint_table(eps, True)
    for key, want in ((("loss0", "edge"), 0.5 - eps), (("loss1", "edge"), 0.5 - eps)):
        got = cells[(0, True)] if key[0] == "loss0" else cells[(1, True)]
        if abs(got - want) > EXACT_TOL:
            failures.append({"eps": eps, "cell": key, "got": got, "want": want})
    edge_marginal = cells[(0, True)] + cells[(1, True)]
    if abs(edge_marginal - (1 - 2 * eps)) > EXACT_TOL:
        failures.append({"eps": eps, "cell": "edge_marginal", "got": edge_marginal})
    return failures


def _fig1_empirical(seed: int, rounds: int) -> CheckResult:
    k = 4
    env = envs.AdversarialLBEnv(k, rounds, derive_seed(seed, "fig1", "emp"))
    star = env.v_star
    u = 1 if star != 1 else 2
    other = next(a for a in range(1, k + 1) if a not in (u, star))
    counts = {star: [0, 0, 0], other: [0, 0, 0]}  # unobserved / obs0 / obs1
    star_counts = counts[star]
    other_counts = counts[other]
    step = env.step
    for _ in range(rounds):
        obs = step(u)
        acts = obs.actions
        if len(acts) == k:  # dense rounds dominate: everyone observed
            losses = obs.losses
            star_counts[1 if losses[star - 1] == 0.0 else 2] += 1
            other_counts[1 if losses[other - 1] == 0.0 else 2] += 1
            continue
        for target, tally in ((star, star_counts), (other, other_counts)):
            i = acts.searchsorted(target)
            if i < len(acts) and acts[i] == target:
                tally[1 if obs.losses[i] == 0.0 else 2] += 1
            else:
                tally[0] += 1
    eps = env.eps
    expect = (2 * eps, (1 - 2 * eps) / 2, (1 - 2 * eps) / 2)
    failures = []
    measured = {}
    for label, target in (("hidden_best", star), ("other", other)):
        freqs = [c / rounds for c in counts[target]]
        measured[label] = freqs
        for f, want, cell in zip(freqs, expect, ("unobserved", "obs0", "obs1")):
            se = math.sqrt(max(want * (1 - want), 1e-12) / rounds)
            if abs(f - want) > 3 * se:
                failures.append({"target": label, "cell": cell, "freq": f, "want": want})
    # direct channel: playing the hidden action reveals its Bernoulli(1/2 - e) loss
    direct_rounds = 10_000
    env2 = envs.AdversarialLBEnv(k, direct_rounds, derive_seed(seed, "fig1", "direct"))
    total = 0.0
    for _ in range(direct_rounds):
        obs = env2.step(env2.v_star)
        total += dict(obs.feedback)[env2.v_star]
    mean = total / direct_rounds
    want = 0.5 - env2.eps
    if abs(mean - want) > 3 * 0.5 / math.sqrt(direct_rounds):
        failures.append({"cell": "direct_mean", "got": mean, "want": want})
    measured["direct_mean"] = mean
    return _result(
        "fig1",
        "empirical single-round observation frequencies from the live environment "
        "match the construction's table",
        not failures,
        measured,
        {"triple": list(expect)},
        "3 standard errors",
        rounds,
        seed,
        config={"k": k, "rounds": rounds},
        failures=failures,
    )


# ---------------------------------------------------------------------------
# fig2: two-action strongly-observable hard instance
# ---------------------------------------------------------------------------

_FIG2_EXPECTED_CELLS = {
    1: {(0, "vv_only"): 0.25, (0, "both"): 0.125, (0, "uv_only"): 0.25,
        (1, "vv_only"): 0.0, (1, "both"): 0.375, (1, "uv_only"): 0.0},
    2: {(0, "vv_only"): 0.0, (0, "both"): 0.375, (0, "uv_only"): 0.0,
        (1, "vv_only"): 0.25, (1, "both"): 0.125, (1, "uv_only"): 0.25},
}
_FIG2_COLUMN_MARGINS = {"vv_only": 0.25, "both": 0.5, "uv_only": 0.25}


def check_fig2(seed: int = DEFAULT_SEED, rounds_per_combo: int = 25_000) -> list[CheckResult]:
    failures = []
    for chi in (1, 2):
        cells = envs.two_action_joint_table(chi)
        for key, want in _FIG2_EXPECTED_CELLS[chi].items():
            if abs(cells[key] - want) > EXACT_TOL:
                failures.append({"chi": chi, "cell": list(key), "got": cells[key], "want": want})
        for pat, want in _FIG2_COLUMN_MARGINS.items():
            got = cells[(0, pat)] + cells[(1, pat)]
            if abs(got - want) > EXACT_TOL:
                failures.append({"chi": chi, "cell": f"margin_{pat}", "got": got, "want": want})
        for margin_pats, label in ((("uv_only", "both"), "edge_into_v"),
                                   (("vv_only", "both"), "self_loop_v")):
            got = sum(cells[(l, p)] for l in (0, 1) for p in margin_pats)
            if abs(got - 0.75) > EXACT_TOL:
                failures.append({"chi": chi, "cell": label, "got": got, "want": 0.75})
        for viewpoint in (envs.U_ACTION, envs.V_ACTION):
            triple = envs.two_action_observation_triple(chi, viewpoint)
            for got, want, cell in zip(triple, (0.25, 0.375, 0.375),
                                       ("unobserved", "obs0", "obs1")):
                if abs(got - want) > EXACT_TOL:
                    failures.append(
                        {"chi": chi, "viewpoint": viewpoint, "cell": cell,
                         "got": got, "want": want}
                    )
    out = [
        _result(
            "fig2",
            "both hidden configurations give the viewer triple (1/4, 3/8, 3/8) from "
            "either action, with edge and self-loop margins 3/4; reconstructed cells "
            "match the published table",
            not failures,
            {"cases": 2},
            {"triple": [0.25, 0.375, 0.375], "margins": 0.75},
            f"exact, {EXACT_TOL}",
            2,
            seed,
            failures=failures,
        )
    ]
    if rounds_per_combo:
        out.append(_fig2_empirical(seed, rounds_per_combo))
    return out


def _fig2_empirical(seed: int, rounds: int) -> CheckResult:
    failures = []
    measured = {}
    for chi in (1, 2):
        for viewpoint in (envs.U_ACTION, envs.V_ACTION):
            env = envs.TwoActionLBEnv(rounds, derive_seed(seed, "fig2", chi, viewpoint), chi=chi)
            tally = [0, 0, 0]
            step = env.step
            for _ in range(rounds):
                obs = step(viewpoint)
                acts = obs.actions
                if len(acts) and acts[-1] == envs.V_ACTION:
                    tally[1 if obs.losses[-1] == 0.0 else 2] += 1
                else:
                    tally[0] += 1
                    if viewpoint == envs.V_ACTION and len(acts):
                        failures.append({"chi": chi, "cell": "leak", "acts": acts.tolist()})
            freqs = [c / rounds for c in tally]
            measured[f"chi{chi}_view{viewpoint}"] = freqs
            for f, want, cell in zip(freqs, (0.25, 0.375, 0.375),
                                     ("unobserved", "obs0", "obs1")):
                se = math.sqrt(want * (1 - want) / rounds)
                if abs(f - want) > 3 * se:
                    failures.append(
                        {"chi": chi, "viewpoint": viewpoint, "cell": cell,
                         "freq": f, "want": want}
                    )
    return _result(
        "fig2",
        "empirical observation frequencies from the live two-action environment "
        "match (1/4, 3/8, 3/8) under both hidden configurations and viewpoints",
        not failures,
        measured,
        {"triple": [0.25, 0.375, 0.375]},
        "3 standard errors",
        4 * rounds,
        seed,
        config={"rounds_per_combo": rounds},
        failures=failures,
    )


# ---------------------------------------------------------------------------
# sampling-cost bounds
# ---------------------------------------------------------------------------


def check_alpha_sample_graph(
    g: gr.FeedbackGraph, label: str, seed: int, trials: int = 10_000,
    deltas=(0.1, 0.01),
) -> CheckResult:
    k = g.num_actions
    alpha = gr.independence_number_exact(g)
    model = envs.LossModel.constant([0.5] * k)
    env = envs.StochasticEnv(model, envs.FixedGraph(g), trials * k, derive_seed(seed, label))
    session = env.session()
    rng = make_rng(derive_seed(seed, label, "sampler"))
    rounds = np.empty(trials, dtype=np.int64)
    everyone = tuple(range(1, k + 1))
    for i in range(trials):
        rounds[i] = ln.alpha_sample(everyone, session, rng).rounds_spent
    mean = float(rounds.mean())
    mean_bound = 10.0 * alpha * math.log(k)
    failures = []
    tails = {}
    for delta in deltas:
        cutoff = 4.0 * alpha * math.log(k / delta)
        freq = float((rounds > cutoff).mean())
        limit = _stat_threshold(delta, trials)
        tails[f"delta_{delta}"] = {"cutoff": cutoff, "freq": freq, "limit": limit}
        if freq > limit:
            failures.append({"graph": label, "delta": delta, "freq": freq, "limit": limit})
    if mean > mean_bound:
        failures.append({"graph": label, "mean": mean, "mean_bound": mean_bound})
    return _result(
        "alpha_sample",
        "uniform-play sampling collects every action's loss within 4*alpha*ln(K/d) "
        "rounds except with probability d, and within 10*alpha*ln(K) rounds on average",
        not failures,
        {"graph": label, "alpha": alpha, "mean_rounds": mean, "tails": tails,
         "max_rounds": int(rounds.max())},
        {"mean_bound": mean_bound},
        "3 standard errors (tails); exact (mean)",
        trials,
        seed,
        config={"k": k, "trials": trials},
        failures=failures,
    )


def check_alpha_sample(seed: int = DEFAULT_SEED, trials: int = 10_000) -> list[CheckResult]:
    er = gr.sample_erdos_renyi(16, 0.5, True, make_rng(derive_seed(seed, "er_graph")))
    cases = [
        (gr.complete_graph(16), "clique_16"),
        (gr.disjoint_cliques(16, 4), "disjoint_cliques_16_4"),
        (er, "er_16_05"),
    ]
    return [check_alpha_sample_graph(g, label, seed, trials) for g, label in cases]


# ---------------------------------------------------------------------------
# one-step observation identity
# ---------------------------------------------------------------------------


def check_expected_observed(
    seed: int = DEFAULT_SEED, trials: int = 500, k: int = 12, p: float = 0.3
) -> list[CheckResult]:
    if k > 20:
        raise envs.EnvInputError("exact alpha budget: K <= 20 for this check")
    rng = make_rng(derive_seed(seed, "expected_observed"))
    failures = []
    min_slack = math.inf
    for _ in range(trials):
        g = gr.sample_erdos_renyi(k, p, True, rng)
        size = int(rng.integers(1, k + 1))
        subset = sorted(int(v) + 1 for v in rng.choice(k, size=size, replace=False))
        e_in = gr.directed_edges_within(g, subset)
        expected_new = 1.0 + e_in / len(subset)
        # exact identity: the uniform-play average equals 1 + |E_U|/|U|
        total = sum(len(gr.out_neighborhood(g, v) & set(subset)) for v in subset)
        if abs(total / len(subset) - expected_new) > EXACT_TOL:
            failures.append({"identity": True, "subset": subset})
        alpha = gr.independence_number_exact(g)
        lower = len(subset) / (2.0 * alpha)
        min_slack = min(min_slack, expected_new - lower)
        if expected_new < lower - EXACT_TOL:
            failures.append(
                {"subset_size": len(subset), "expected_new": expected_new, "lower": lower}
            )
    return [
        _result(
            "expected_observed",
            "one uniform play inside U newly observes 1 + |E_U|/|U| actions in "
            "expectation, at least |U|/(2*alpha)",
            not failures,
            {"violations": len(failures), "min_slack": min_slack},
            {"violations": 0},
            f"exact, {EXACT_TOL}",
            trials,
            seed,
            config={"k": k, "p": p, "trials": trials},
            failures=failures,
        )
    ]


# ---------------------------------------------------------------------------
# random-graph independence numbers
# ---------------------------------------------------------------------------


def check_er_independence(
    seed: int = DEFAULT_SEED, k: int = 16, p: float = 0.5, delta: float = 0.1,
    trials: int = 10_000,
) -> list[CheckResult]:
    if k > gr.EXACT_ALPHA_MAX_ACTIONS:
        raise envs.EnvInputError("exact alpha budget: K <= 32")
    if not 0.0 < p < 1.0:
        raise envs.EnvInputError(
            f"edge probability must be strictly inside (0, 1), got {p}: the bound's "
            "log base is undefined at p=0 and delta<=sqrt(1-p) fails at p=1"
        )
    if not 0.0 < delta <= math.sqrt(1.0 - p):
        raise envs.EnvInputError(f"need 0 < delta <= sqrt(1-p), got delta={delta}")
    bound = 2.0 * math.log(k / delta) / math.log(1.0 / (1.0 - p)) + 1.0
    rng = make_rng(derive_seed(seed, "er_independence"))
    alphas = np.empty(trials, dtype=np.int64)
    for i in range(trials):
        alphas[i] = gr.independence_number_exact(
            gr.sample_erdos_renyi_undirected(k, p, rng)
        )
    freq = float((alphas > bound).mean())
    limit = _stat_threshold(delta, trials)
    return [
        _result(
            "er_independence",
            "an undirected random graph's independence number exceeds "
            "2*log_{1/(1-p)}(K/d) + 1 with probability at most d",
            freq <= limit,
            {"violation_rate": freq, "alpha_max_seen": int(alphas.max()),
             "alpha_mean": float(alphas.mean())},
            {"alpha_bound": bound, "rate_limit": limit},
            "3 standard errors",
            trials,
            seed,
            config={"k": k, "p": p, "delta": delta, "trials": trials},
        )
    ]


def check_sequence_alpha(
    seed: int = DEFAULT_SEED, k: int = 16, t: int = 256, trials: int = 600
) -> list[CheckResult]:
    if not 2 <= k <= gr.EXACT_ALPHA_MAX_ACTIONS:
        raise envs.EnvInputError("need 2 <= K <= 32")
    if t < k * k:
        raise envs.EnvInputError(f"need T >= K^2, got T={t}")
    eps = 0.125 * math.sqrt(k / t)
    rate = eps / 8.0
    bad = 0
    worst = 0
    for i in range(trials):
        env = envs.AdversarialLBEnv(
            k, t, derive_seed(seed, "sequence_alpha", i), record_graphs=True
        )
        for _ in range(t):
            env.step(1)
        seq_max = max(
            gr.independence_number_exact(g) for g in env.oracle().graph_trace
        )
        worst = max(worst, seq_max)
        if seq_max > 9:
            bad += 1
    freq = bad / trials
    limit = _stat_threshold(rate, trials)
    return [
        _result(
            "sequence_alpha",
            "a full horizon of hard-instance graphs keeps every independence number "
            "at most 9 except with probability eps/8 (conservative: observed rates "
            "run far below the bound)",
            freq <= limit,
            {"violation_rate": freq, "worst_alpha": worst},
            {"rate": rate, "rate_limit": limit, "alpha_cap": 9},
            "3 standard errors",
            trials,
            seed,
            config={"k": k, "t": t, "trials": trials, "eps": eps},
        )
    ]


# ---------------------------------------------------------------------------
# elimination phase behavior
# ---------------------------------------------------------------------------


def check_elimination(
    seed: int = DEFAULT_SEED, trials: int = 200, t: int = 10_000,
    means=(0.25, 0.75),
) -> list[CheckResult]:
    k = len(means)
    model_cfg = {"kind": "bernoulli", "means": list(means)}
    gaps = np.array(means) - min(means)
    phase_violations: dict[int, int] = {}
    phase_counts: dict[int, int] = {}
    max_phase_allowed = ln.max_phases(k, t)
    phase_count_failures = []
    for i in range(trials):
        env = envs.env_from_config(
            {"type": "stochastic", "losses": model_cfg,
             "graphs": {"kind": "disjoint_cliques", "alpha": 1}},
            t,
            derive_seed(seed, "elimination", i, "env"),
        )
        learner = ln.elimination_learner(k, t, derive_seed(seed, "elimination", i))
        hn.run_episode(env, learner)
        if len(learner.phase_log) > max_phase_allowed:
            phase_count_failures.append({"trial": i, "phases": len(learner.phase_log)})
        for rec in learner.phase_log:
            phase_counts[rec.phase] = phase_counts.get(rec.phase, 0) + 1
            if any(gaps[v - 1] > 4.0 * rec.eps for v in rec.survivors):
                phase_violations[rec.phase] = phase_violations.get(rec.phase, 0) + 1
    rate_limit = _stat_threshold(1.0 / t, trials)
    failures = list(phase_count_failures)
    rates = {}
    for phase, n in phase_counts.items():
        rate = phase_violations.get(phase, 0) / n
        rates[phase] = rate
        if rate > rate_limit:
            failures.append({"phase": phase, "rate": rate, "limit": rate_limit})
    return [
        _result(
            "elimination",
            "after each phase every surviving action is within 4*eps_r of optimal "
            "except with probability 1/T, and the completed phase count never "
            "exceeds the budget bound",
            not failures,
            {"violation_rates": rates, "completed_phase_counts": phase_counts},
            {"rate_limit": rate_limit, "max_phases": max_phase_allowed},
            "3 standard errors",
            trials,
            seed,
            config={"t": t, "means": list(means), "trials": trials},
            failures=failures,
        )
    ]


# ---------------------------------------------------------------------------
# stochastic decoupling
# ---------------------------------------------------------------------------


def check_loss_graph_independence(
    seed: int = DEFAULT_SEED, rounds: int = 100_000, k: int = 4
) -> list[CheckResult]:
    # fixed source: edge indicators are constant, so correlation is zero by
    # construction; verified structurally on a short window
    env = envs.env_from_config(
        {"type": "stochastic", "losses": {"kind": "bernoulli", "means": [0.5] * k},
         "graphs": {"kind": "disjoint_cliques", "alpha": 2}},
        200,
        derive_seed(seed, "indep", "fixed"),
        record_graphs=True,
    )
    for _ in range(200):
        env.step(1)
    fixed_ok = len({g.rows for g in env.oracle().graph_trace}) == 1
    # iid source: empirical correlation between every loss coordinate and every
    # edge indicator stays within 3 standard errors of zero
    env = envs.env_from_config(
        {"type": "stochastic", "losses": {"kind": "bernoulli", "means": [0.5] * k},
         "graphs": {"kind": "iid_er", "p": 0.5}},
        rounds,
        derive_seed(seed, "indep", "iid"),
        record_losses=True,
        record_graphs=True,
    )
    for _ in range(rounds):
        env.step(1)
    oracle = env.oracle()
    losses = oracle.loss_matrix
    pairs = [(u, w) for u in range(1, k + 1) for w in range(1, k + 1) if u != w]
    edges = np.empty((rounds, len(pairs)))
    for t_i, g in enumerate(oracle.graph_trace):
        rows = g.rows
        edges[t_i] = [rows[u - 1] >> (w - 1) & 1 for u, w in pairs]
    se = 1.0 / math.sqrt(rounds)
    failures = []
    worst = 0.0
    lc = losses - losses.mean(axis=0)
    ec = edges - edges.mean(axis=0)
    for i in range(k):
        for j in range(len(pairs)):
            denom = math.sqrt((lc[:, i] ** 2).sum() * (ec[:, j] ** 2).sum())
            corr = float((lc[:, i] * ec[:, j]).sum() / denom) if denom else 0.0
            worst = max(worst, abs(corr))
            if abs(corr) > 3 * se:
                failures.append({"loss_coord": i + 1, "edge": pairs[j], "corr": corr})
    if not fixed_ok:
        failures.append({"fixed_source": "graph varied across rounds"})
    return [
        _result(
            "loss_graph_independence",
            "losses are statistically independent of the feedback graphs: fixed "
            "sources emit a constant graph, iid sources show vanishing empirical "
            "correlation with every loss coordinate",
            not failures,
            {"max_abs_corr": worst, "pairs_checked": k * len(pairs)},
            {"corr_limit": 3 * se},
            "3 standard errors",
            rounds,
            seed,
            config={"k": k, "rounds": rounds},
            failures=failures,
        )
    ]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

REGISTRY = {
    "fig1": check_fig1,
    "fig2": check_fig2,
    "alpha_sample": check_alpha_sample,
    "expected_observed": check_expected_observed,
    "er_independence": check_er_independence,
    "sequence_alpha": check_sequence_alpha,
    "elimination": check_elimination,
    "loss_graph_independence": check_loss_graph_independence,
}


def run_suite(names=None, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run the named checks (all when names is falsy); returns flat results."""
    if names:
        unknown = [n for n in names if n not in REGISTRY]
        if unknown:
            raise envs.EnvInputError(
                f"unknown check(s) {unknown}; available: {sorted(REGISTRY)}"
            )
        selected = list(dict.fromkeys(names))
    else:
        selected = list(REGISTRY)
    results = []
    for name in selected:
        results.extend(REGISTRY[name](seed=seed))
    return results
