"""Learners: sampling subroutine, elimination phases, baselines."""

import math

import numpy as np
import pytest

from graphbandit import environments as envs
from graphbandit import graphs as gr
from graphbandit import learners as ln
from graphbandit.seeding import make_rng


def fixed_env(g, means=None, horizon=10_000, seed=0, kind="constant"):
    k = g.num_actions
    if means is None:
        means = np.linspace(0.2, 0.8, k)
    if kind == "constant":
        model = envs.LossModel.constant(means)
    else:
        model = envs.LossModel.bernoulli(means)
    return envs.StochasticEnv(model, envs.FixedGraph(g), horizon, seed)


def run_episode(env, learner, rounds=None):
    session = env.session()
    rounds = rounds if rounds is not None else env.horizon
    for _ in range(rounds):
        a = learner.choose()
        learner.observe(session.step(a))


class TestPhaseSchedule:
    def test_first_phase(self):
        s = ln.PhaseSchedule.for_phase(1, 2, 100_000)
        assert s.eps == 0.25
        assert s.reps == math.ceil(2 * math.log(2 * 2 * 100_000) / 0.0625)

    def test_halving_and_growth(self):
        prev = None
        for r in range(1, 8):
            s = ln.PhaseSchedule.for_phase(r, 16, 10_000)
            assert s.eps == 2.0 ** -(r + 1)
            assert s.reps >= 1
            if prev:
                assert s.eps == prev.eps / 2
                assert s.reps > prev.reps
            prev = s


class TestEliminate:
    def test_all_equal_means_keep_everything(self):
        active = {1, 2, 3}
        assert ln.eliminate(active, {v: 0.4 for v in active}, 0.1) == active

    def test_clear_winner(self):
        assert ln.eliminate({1, 2}, {1: 0.2, 2: 0.9}, 0.25) == {1}

    def test_boundary_is_inclusive(self):
        assert ln.eliminate({1, 2}, {1: 0.2, 2: 0.7}, 0.25) == {1, 2}

    def test_isolated_rule_application(self):
        got = ln.eliminate({1, 2, 3}, {1: 0.30, 2: 0.35, 3: 0.60}, 0.0625)
        assert got == {1, 2}

    def test_never_empty(self):
        rng = make_rng(0)
        for _ in range(100):
            n = int(rng.integers(1, 6))
            active = set(range(1, n + 1))
            means = {v: float(rng.random()) for v in active}
            eps = float(rng.random() * 0.3)
            out = ln.eliminate(active, means, eps)
            assert out
            assert min(means, key=lambda v: (means[v], v)) in out

    def test_errors(self):
        with pytest.raises(ln.LearnerInputError):
            ln.eliminate(set(), {}, 0.1)
        with pytest.raises(ln.LearnerInputError):
            ln.eliminate({1, 2}, {1: 0.5}, 0.1)


class TestAlphaSample:
    def test_clique_single_round(self):
        env = fixed_env(gr.complete_graph(6))
        batch = ln.alpha_sample(range(1, 7), env.session(), make_rng(1))
        assert batch.rounds_spent == 1
        assert sorted(batch.samples) == [1, 2, 3, 4, 5, 6]

    def test_bandit_graph_exact_rounds(self):
        env = fixed_env(gr.bandit_graph(5))
        batch = ln.alpha_sample(range(1, 6), env.session(), make_rng(2))
        assert batch.rounds_spent == 5

    def test_disjoint_cliques_rounds_equal_alpha(self):
        # each uniform draw lands in an uncovered clique and clears it whole
        for seed in range(10):
            env = fixed_env(gr.disjoint_cliques(12, 4))
            batch = ln.alpha_sample(range(1, 13), env.session(), make_rng(seed))
            assert batch.rounds_spent == 4
            assert len(batch.samples) == 12

    def test_coverage_and_round_bound(self):
        rng = make_rng(3)
        for _ in range(25):
            g = gr.sample_erdos_renyi(8, 0.3, True, rng)
            env = fixed_env(g)
            want = sorted(
                set(int(v) for v in rng.integers(1, 9, size=int(rng.integers(1, 9))))
            )
            batch = ln.alpha_sample(want, env.session(), make_rng(int(rng.integers(1e6))))
            assert sorted(batch.samples) == want
            assert batch.rounds_spent <= len(want)
            assert all(0.0 <= x <= 1.0 for x in batch.samples.values())

    def test_partial_batch_on_exhaustion(self):
        env = fixed_env(gr.bandit_graph(6), horizon=3)
        with pytest.raises(ln.PartialBatchError) as err:
            ln.alpha_sample(range(1, 7), env.session(), make_rng(4))
        assert err.value.rounds_spent == 3
        assert len(err.value.samples) == 3

    def test_first_seen_loss_is_recorded(self):
        # bernoulli losses, clique: one round gives everyone's loss that round
        env = fixed_env(gr.complete_graph(3), means=[0.5] * 3, kind="bernoulli")
        rng = make_rng(5)
        batch = ln.alpha_sample([1, 2, 3], env.session(), rng)
        assert batch.rounds_spent == 1
        for v, x in batch.samples.items():
            assert x in (0.0, 1.0)


class TestAlphaSampleStrong:
    def test_clique_identical_to_base(self):
        env = fixed_env(gr.complete_graph(5))
        batch = ln.alpha_sample_strongly_obs(range(1, 6), env.session(), make_rng(0))
        assert batch.rounds_spent == 1

    def test_bandit_graph_pair_tail_cost(self):
        # last target is chased with a uniform pair: Geometric(1/2) extra rounds
        totals = []
        for seed in range(4000):
            env = fixed_env(gr.bandit_graph(3), horizon=200)
            batch = ln.alpha_sample_strongly_obs([1, 2, 3], env.session(), make_rng(seed))
            assert sorted(batch.samples) == [1, 2, 3]
            totals.append(batch.rounds_spent)
        mean = np.mean(totals)
        # 2 rounds for the first two targets + geometric(1/2) mean 2 for the tail
        assert abs(mean - 4.0) < 0.12

    def test_no_self_loop_target_observed_via_partner(self):
        # geometric oracle: success prob 1/2 per round, mean 2 rounds
        g = gr.from_edges(2, [(1, 1), (1, 2)])
        totals = []
        for seed in range(4000):
            env = fixed_env(g, horizon=200)
            batch = ln.alpha_sample_strongly_obs([1, 2], env.session(), make_rng(seed))
            assert sorted(batch.samples) == [1, 2]
            totals.append(batch.rounds_spent)
        assert abs(np.mean(totals) - 2.0) < 0.1

    def test_two_action_env_tail_probability(self):
        # within the hidden-index environment, each round of a {v, w} pair
        # observes v with probability >= 3/4 when playing v (self-loop margin)
        env = envs.TwoActionLBEnv(30_000, 7, chi=1)
        seen = 0
        for _ in range(30_000):
            obs = env.step(2)
            seen += 2 in obs.actions
        freq = seen / 30_000
        assert abs(freq - 0.75) <= 3 * math.sqrt(0.75 * 0.25 / 30_000)


class TestEliminationLearner:
    def test_big_gap_eliminated_in_first_phase(self):
        # Hoeffding oracle: with n_1 samples the 0.8 gap is ~14 sigma wide,
        # so phase 1 ends with the optimal action alone in every run
        for seed in range(100):
            env = fixed_env(
                gr.complete_graph(2), means=[0.1, 0.9], horizon=100_000,
                seed=seed, kind="bernoulli",
            )
            learner = ln.elimination_learner(2, 100_000, seed=seed)
            n1 = ln.PhaseSchedule.for_phase(1, 2, 100_000).reps
            run_episode(env, learner, rounds=n1 + 10)
            assert learner.phase_log, "phase 1 should complete"
            assert learner.phase_log[0].survivors == (1,)

    def test_zero_gap_pseudo_regret_is_zero(self):
        env = fixed_env(gr.complete_graph(2), means=[0.5, 0.5], horizon=2000, kind="bernoulli")
        learner = ln.elimination_learner(2, 2000, seed=1)
        run_episode(env, learner)
        o = env.oracle()
        assert o.action_gaps[o.played - 1].sum() == 0.0

    def test_commits_to_survivor(self):
        env = fixed_env(gr.complete_graph(2), means=[0.2, 0.9], horizon=5000)
        learner = ln.elimination_learner(2, 5000, seed=3)
        run_episode(env, learner)
        assert learner.committed_action == 1
        played = env.oracle().played
        n1 = learner.phase_log[0].rounds_spent
        assert set(played[n1:].tolist()) == {1}

    def test_phase_log_accounting(self):
        env = fixed_env(gr.complete_graph(4), means=[0.1, 0.6, 0.7, 0.8], horizon=20_000)
        learner = ln.elimination_learner(4, 20_000, seed=2)
        run_episode(env, learner)
        assert learner.phase_log
        total = sum(p.rounds_spent for p in learner.phase_log)
        assert total <= 20_000
        for rec in learner.phase_log:
            assert rec.reps == ln.PhaseSchedule.for_phase(rec.phase, 4, 20_000).reps

    def test_determinism(self):
        def actions(seed):
            env = fixed_env(gr.complete_graph(3), means=[0.3, 0.5, 0.7],
                            horizon=3000, seed=99, kind="bernoulli")
            learner = ln.elimination_learner(3, 3000, seed=seed)
            run_episode(env, learner)
            return env.oracle().played.tolist()

        assert actions(5) == actions(5)


class TestExploreExploit:
    def test_epsilon_formula(self):
        learner = ln.explore_exploit_observable(8, 8000, seed=0)
        expect = (8 / 8000) ** (1 / 3) * (2 * math.log(2 * 8 * 8000)) ** (1 / 3)
        assert learner.epsilon == pytest.approx(expect)
        assert round(learner.epsilon, 3) == 0.287

    def test_clique_exploration_exactly_n0(self):
        learner = ln.explore_exploit_observable(4, 5000, seed=1)
        env = fixed_env(gr.complete_graph(4), means=[0.2, 0.5, 0.6, 0.7],
                        horizon=5000, kind="bernoulli")
        run_episode(env, learner)
        assert learner.exploration_rounds == learner.n0
        assert learner.committed_action == 1

    def test_bandit_graph_exploration_near_k_n0(self):
        # negative-binomial oracle: each action observed at rate 1/K, so the
        # slowest of K counters reaches n0 around K*n0 rounds
        learner = ln.explore_exploit_observable(4, 40_000, seed=2)
        env = fixed_env(gr.bandit_graph(4), means=[0.2, 0.5, 0.6, 0.7],
                        horizon=40_000, kind="bernoulli")
        run_episode(env, learner)
        expect = 4 * learner.n0
        assert expect <= learner.exploration_rounds <= 1.6 * expect

    def test_weakly_observable_graph_learns_hidden_action(self):
        # action 4 has no self-loop, observed only through 1 -> 4
        g = gr.from_edges(4, [(1, 1), (2, 2), (3, 3), (1, 4)])
        learner = ln.explore_exploit_observable(4, 60_000, seed=3)
        env = fixed_env(g, means=[0.5, 0.5, 0.5, 0.1], horizon=60_000, kind="bernoulli")
        run_episode(env, learner)
        assert learner.committed_action == 4


class TestExp3:
    def test_initial_distribution_uniform(self):
        learner = ln.exp3_learner(5, 100)
        assert np.allclose(learner.distribution(), 0.2)

    def test_learning_rate(self):
        learner = ln.exp3_learner(10, 10_000)
        assert learner.learning_rate == pytest.approx(math.sqrt(math.log(10) / 1e5))

    def test_converges_on_constant_losses(self):
        # derived by Monte Carlo: 20 seeds, final probability of the zero-loss
        # action exceeds 0.99 every time
        for seed in range(20):
            env = fixed_env(gr.bandit_graph(2), means=[0.0, 1.0], horizon=10_000, seed=seed)
            learner = ln.exp3_learner(2, 10_000, seed=seed)
            run_episode(env, learner)
            assert learner.distribution()[0] >= 0.99

    def test_skips_unobserved_rounds(self):
        g = gr.from_edges(2, [(1, 1), (1, 2)])  # action 2 never sees its own loss
        env = fixed_env(g, means=[0.5, 0.5], horizon=500)
        learner = ln.exp3_learner(2, 500, seed=4)
        run_episode(env, learner)
        assert learner._w[1] == 0.5  # weight never touched


class TestUcb:
    def test_plays_each_action_once_in_order(self):
        env = fixed_env(gr.bandit_graph(4), means=[0.5, 0.5, 0.5, 0.5], horizon=100)
        learner = ln.ucb_learner(4, 100)
        first = []
        session = env.session()
        for _ in range(4):
            a = learner.choose()
            first.append(a)
            learner.observe(session.step(a))
        assert first == [1, 2, 3, 4]

    def test_finds_best_action(self):
        env = fixed_env(gr.bandit_graph(3), means=[0.8, 0.2, 0.8],
                        horizon=4000, kind="bernoulli")
        learner = ln.ucb_learner(3, 4000)
        run_episode(env, learner)
        played = env.oracle().played
        counts = np.bincount(played, minlength=4)
        assert counts[2] > 0.7 * 4000

    def test_retries_until_sampled(self):
        # action 2's own loss is hidden when playing it; bootstrap keeps trying
        env = envs.TwoActionLBEnv(50, 11, chi=1)
        learner = ln.ucb_learner(2, 50)
        run_episode(env, learner)
        assert min(learner._counts) >= 0  # no crash; rounds may be skipped


class TestFactory:
    def test_all_types(self):
        for kind in ("elimination", "elimination_strong", "explore_exploit", "exp3", "ucb"):
            learner = ln.learner_from_config({"type": kind}, 4, 100, seed=0)
            assert hasattr(learner, "choose") and hasattr(learner, "observe")

    def test_unknown_type(self):
        with pytest.raises(ln.LearnerInputError):
            ln.learner_from_config({"type": "thompson"}, 4, 100, 0)

    @pytest.mark.parametrize(
        "kind", ["elimination", "elimination_strong", "explore_exploit", "exp3", "ucb"]
    )
    def test_every_learner_deterministic(self, kind):
        def actions(run):
            env = fixed_env(gr.complete_graph(3), means=[0.3, 0.5, 0.7],
                            horizon=800, seed=12, kind="bernoulli")
            learner = ln.learner_from_config({"type": kind}, 3, 800, seed=21)
            run_episode(env, learner)
            return env.oracle().played.tolist()

        assert actions(1) == actions(2)


class TestOptimalActionSurvives:
    def test_survives_whenever_estimates_are_accurate(self):
        # deterministic restatement: if every empirical mean is within eps of
        # its true mean, the best action passes the elimination rule
        rng = make_rng(31)
        for _ in range(200):
            k = int(rng.integers(2, 8))
            mu = rng.random(k)
            eps = float(rng.random() * 0.3 + 0.01)
            noise = (rng.random(k) * 2 - 1) * eps
            means = {v + 1: float(mu[v] + noise[v]) for v in range(k)}
            best = int(np.argmin(mu)) + 1
            survivors = ln.eliminate(set(range(1, k + 1)), means, eps)
            assert best in survivors


class TestExpectedObservedIdentity:
    def test_one_step_expectation_formula(self):
        # E[newly observed | U] = 1 + |E_U| / |U| for graphs with self-loops,
        # computed exactly and compared against the uniform-play average
        rng = make_rng(17)
        for _ in range(30):
            g = gr.sample_erdos_renyi(7, 0.4, True, rng)
            subset = sorted(
                set(int(v) for v in rng.integers(1, 8, size=int(rng.integers(2, 8))))
            )
            e_in = gr.directed_edges_within(g, subset)
            expect = 1.0 + e_in / len(subset)
            total = 0
            for v in subset:
                total += len(gr.out_neighborhood(g, v) & set(subset))
            assert total / len(subset) == pytest.approx(expect)
            alpha = gr.independence_number_exact(g)
            assert expect >= len(subset) / (2 * alpha) - 1e-12
