"""Sealed round processes: hidden (loss vector, feedback graph) pairs.

An environment draws a loss vector and a directed feedback graph each round
and answers ``step(action)`` with an Observation: the played action plus the
(action, loss) pairs of its out-neighborhood. Nothing else about the graph is
ever disclosed to a learner; regret accounting goes through ``oracle()``,
which only the harness and the verification suite may touch. Learners are
handed an EnvSession, whose whole surface is ``step``.

Three families:

* StochasticEnv - losses i.i.d. from a per-action model, graphs from an
  arbitrary source, the two driven by independent substreams of the episode
  seed so losses and graphs are independent by construction.
* AdversarialLBEnv - the randomized hard instance with a hidden slightly
  better action v*: dense random graphs whose edges into v* are coupled to
  v*'s loss so that side observations of v* are distributed exactly like
  side observations of any other action.
* TwoActionLBEnv - the two-action strongly-observable hard instance: a
  hidden index chi picks one of two loss/graph couplings that produce
  identical observation distributions from either action's viewpoint.

Losses and graph rows are drawn in blocks to keep per-round cost low; the
block layout is fixed, so a given (config, seed) always yields the same
episode regardless of what the learner plays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from graphbandit import graphs as gr
from graphbandit.seeding import derive_seed, make_rng

_BLOCK = 4096


class EnvInputError(ValueError):
    """Bad environment parameters or config."""


class HorizonExhaustedError(RuntimeError):
    """step() called after the final round."""


class Observation:
    """What the learner sees in one round.

    ``actions`` and ``losses`` are parallel arrays: the out-neighborhood of
    the played action (1-based, sorted, distinct) and the corresponding
    losses. The played action's own loss appears iff it has a self-loop this
    round. ``feedback`` materializes the (action, loss) pair list.
    """

    __slots__ = ("round", "played", "actions", "losses")

    def __init__(self, round_: int, played: int, actions: np.ndarray, losses: np.ndarray):
        self.round = round_
        self.played = played
        self.actions = actions
        self.losses = losses

    @property
    def feedback(self) -> list[tuple[int, float]]:
        return [(int(a), float(x)) for a, x in zip(self.actions, self.losses)]

    def __repr__(self):  # pragma: no cover
        return f"Observation(round={self.round}, played={self.played}, feedback={self.feedback})"


class EnvSession:
    """Learner-facing view of an environment: step and public constants only."""

    __slots__ = ("_step", "num_actions", "horizon")

    def __init__(self, env: "Environment"):
        self._step = env.step
        self.num_actions = env.num_actions
        self.horizon = env.horizon

    def step(self, action: int) -> Observation:
        return self._step(action)


# ---------------------------------------------------------------------------
# loss models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LossModel:
    """Per-action loss distributions: bernoulli(mu), beta(a, b), or constant(c)."""

    kind: str
    params: tuple

    @staticmethod
    def bernoulli(means) -> "LossModel":
        means = tuple(float(m) for m in means)
        _check_unit(means)
        return LossModel("bernoulli", means)

    @staticmethod
    def constant(values) -> "LossModel":
        values = tuple(float(v) for v in values)
        _check_unit(values)
        return LossModel("constant", values)

    @staticmethod
    def beta(pairs) -> "LossModel":
        pairs = tuple((float(a), float(b)) for a, b in pairs)
        for a, b in pairs:
            if a <= 0 or b <= 0:
                raise EnvInputError(f"beta parameters must be positive, got ({a}, {b})")
        return LossModel("beta", pairs)

    @property
    def num_actions(self) -> int:
        return len(self.params)

    @property
    def means(self) -> np.ndarray:
        if self.kind == "beta":
            return np.array([a / (a + b) for a, b in self.params])
        return np.array(self.params, dtype=float)

    @property
    def gaps(self) -> np.ndarray:
        m = self.means
        return m - m.min()

    @property
    def best_action(self) -> int:
        """Lowest-index action with minimal mean loss (1-based)."""
        return int(np.argmin(self.means)) + 1

    def sample_block(self, rng: np.random.Generator, n: int) -> np.ndarray:
        k = self.num_actions
        if self.kind == "constant":
            return np.tile(np.array(self.params), (n, 1))
        if self.kind == "bernoulli":
            return (rng.random((n, k)) < np.array(self.params)).astype(float)
        a = np.array([p[0] for p in self.params])
        b = np.array([p[1] for p in self.params])
        return rng.beta(a, b, size=(n, k))

    @staticmethod
    def from_config(cfg: dict) -> "LossModel":
        try:
            kind = cfg["kind"]
            if kind == "bernoulli":
                return LossModel.bernoulli(cfg["means"])
            if kind == "constant":
                return LossModel.constant(cfg["values"])
            if kind == "beta":
                return LossModel.beta(cfg["params"])
        except KeyError as exc:
            raise EnvInputError(f"loss config missing field {exc}") from exc
        raise EnvInputError(f"unknown loss kind {kind!r}")


def _check_unit(values):
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise EnvInputError(f"loss parameter {v} outside [0, 1]")


# ---------------------------------------------------------------------------
# graph sources
# ---------------------------------------------------------------------------


class GraphSource:
    """Produces the hidden graph G_t each round.

    ``observe_row`` returns just the played action's out-neighborhood, which
    is all an observation needs; sources whose rounds are product measures
    override it with a row-only draw so the environment never has to
    materialize a full graph on the hot path. ``sample`` always yields a full
    graph (used when recording, and by the verification suite).
    """

    num_actions: int
    all_self_loops: bool

    def sample(self, rng: np.random.Generator, t: int) -> gr.FeedbackGraph:
        raise NotImplementedError

    def observe_row(self, v: int, rng: np.random.Generator, t: int):
        """(1-based out-neighborhood, 0-based index array) for the played action."""
        g = self.sample(rng, t)
        acts = np.array(sorted(gr.out_neighborhood(g, v)), dtype=np.int64)
        return acts, acts - 1


class FixedGraph(GraphSource):
    def __init__(self, g: gr.FeedbackGraph):
        self.graph = g
        self.num_actions = g.num_actions
        self.all_self_loops = g.all_self_loops
        nbrs = gr.neighborhood_arrays(g)
        self._rows = [(a, a - 1) for a in nbrs]

    def sample(self, rng, t):
        return self.graph

    def observe_row(self, v, rng, t):
        return self._rows[v - 1]


class CyclicGraphs(GraphSource):
    """Cycles deterministically through a finite graph list, one per round."""

    def __init__(self, graph_list):
        if not graph_list:
            raise EnvInputError("cyclic source needs at least one graph")
        ks = {g.num_actions for g in graph_list}
        if len(ks) != 1:
            raise EnvInputError("all graphs in a cyclic source must share K")
        self.graphs = list(graph_list)
        self.num_actions = self.graphs[0].num_actions
        self.all_self_loops = all(g.all_self_loops for g in self.graphs)
        self._rows = [
            [(a, a - 1) for a in gr.neighborhood_arrays(g)] for g in self.graphs
        ]

    def sample(self, rng, t):
        return self.graphs[(t - 1) % len(self.graphs)]

    def observe_row(self, v, rng, t):
        return self._rows[(t - 1) % len(self.graphs)][v - 1]


class IidErdosRenyi(GraphSource):
    """Fresh directed G(K, p) every round."""

    def __init__(self, k: int, p: float, self_loops: bool = True):
        if not 0.0 <= p <= 1.0:
            raise EnvInputError(f"edge probability must be in [0, 1], got {p}")
        self.num_actions = k
        self.p = p
        self.self_loops = self_loops
        self.all_self_loops = self_loops

    def sample(self, rng, t):
        return gr.sample_erdos_renyi(self.num_actions, self.p, self.self_loops, rng)

    def observe_row(self, v, rng, t):
        hit = rng.random(self.num_actions) < self.p
        hit[v - 1] = self.self_loops
        idx0 = hit.nonzero()[0]
        return idx0 + 1, idx0


class BoundedAlphaRejection(GraphSource):
    """IID directed G(K, p) conditioned on independence number <= alpha_max."""

    def __init__(self, k: int, p: float, alpha_max: int, self_loops: bool = True):
        if k > gr.EXACT_ALPHA_MAX_ACTIONS:
            raise EnvInputError("rejection source needs exact alpha, so K <= 32")
        if alpha_max < 1:
            raise EnvInputError("alpha_max must be >= 1")
        self.num_actions = k
        self.p = p
        self.alpha_max = alpha_max
        self.self_loops = self_loops
        self.all_self_loops = self_loops

    def sample(self, rng, t):
        while True:
            g = gr.sample_erdos_renyi(self.num_actions, self.p, self.self_loops, rng)
            if gr.independence_number_exact(g) <= self.alpha_max:
                return g


def graph_source_from_config(cfg: dict, k: int) -> GraphSource:
    try:
        kind = cfg["kind"]
    except KeyError as exc:
        raise EnvInputError("graph config missing field 'kind'") from exc
    if kind == "fixed":
        g = gr.graph_from_json(cfg["graph"])
        if g.num_actions != k:
            raise EnvInputError(f"fixed graph has K={g.num_actions}, expected {k}")
        return FixedGraph(g)
    if kind == "iid_er":
        return IidErdosRenyi(k, float(cfg["p"]), bool(cfg.get("self_loops", True)))
    if kind == "cyclic":
        return CyclicGraphs([gr.graph_from_json(o) for o in cfg["graphs"]])
    if kind == "disjoint_cliques":
        return FixedGraph(gr.disjoint_cliques(k, int(cfg["alpha"])))
    if kind == "bounded_alpha":
        return BoundedAlphaRejection(
            k, float(cfg["p"]), int(cfg["alpha_max"]), bool(cfg.get("self_loops", True))
        )
    raise EnvInputError(f"unknown graph source kind {kind!r}")


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


@dataclass
class EnvOracle:
    """Hidden parameters plus the realized trace; harness/verify only.

    ``action_gaps`` is the per-round expected cost of each action relative to
    the environment's best action, so conditional-expectation regret is
    always ``action_gaps[played - 1].sum()``.
    """

    kind: str
    num_actions: int
    horizon: int
    rounds_used: int
    best_action: int
    action_gaps: np.ndarray
    played: np.ndarray
    incurred: np.ndarray
    comparator: np.ndarray
    observed_count: np.ndarray
    means: np.ndarray | None = None
    v_star: int | None = None
    eps: float | None = None
    chi: int | None = None
    loss_matrix: np.ndarray | None = None
    graph_trace: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# environments
# ---------------------------------------------------------------------------


class Environment:
    """Common trace bookkeeping; subclasses implement one round in _round()."""

    kind = "abstract"

    def __init__(self, num_actions: int, horizon: int):
        if horizon < 1:
            raise EnvInputError(f"horizon must be >= 1, got {horizon}")
        self.num_actions = num_actions
        self.horizon = horizon
        self.rounds_used = 0
        self._played = np.zeros(horizon, dtype=np.int32)
        self._incurred = np.zeros(horizon)
        self._comparator = np.zeros(horizon)
        self._observed = np.zeros(horizon, dtype=np.int32)

    def session(self) -> EnvSession:
        return EnvSession(self)

    def step(self, action: int) -> Observation:
        t = self.rounds_used
        if t >= self.horizon:
            raise HorizonExhaustedError(f"horizon {self.horizon} already consumed")
        if not 1 <= action <= self.num_actions:
            raise EnvInputError(f"action {action} out of range 1..{self.num_actions}")
        obs, incurred, comparator = self._round(t + 1, action)
        self.rounds_used = t + 1
        self._played[t] = action
        self._incurred[t] = incurred
        self._comparator[t] = comparator
        self._observed[t] = len(obs.actions)
        return obs

    def _round(self, t: int, action: int):
        raise NotImplementedError

    def _oracle_base(self, best_action: int, action_gaps: np.ndarray) -> EnvOracle:
        n = self.rounds_used
        return EnvOracle(
            kind=self.kind,
            num_actions=self.num_actions,
            horizon=self.horizon,
            rounds_used=n,
            best_action=best_action,
            action_gaps=action_gaps,
            played=self._played[:n].copy(),
            incurred=self._incurred[:n].copy(),
            comparator=self._comparator[:n].copy(),
            observed_count=self._observed[:n].copy(),
        )


class StochasticEnv(Environment):
    """Losses i.i.d. from a LossModel; graphs from a GraphSource.

    The loss stream and the graph stream are independent substreams of the
    episode seed, which makes loss/graph independence structural rather than
    statistical. All K loss coordinates are realized every round so the
    oracle can price the comparator exactly.
    """

    kind = "stochastic"

    def __init__(
        self,
        losses: LossModel,
        graph_source: GraphSource,
        horizon: int,
        seed: int,
        record_losses: bool = False,
        record_graphs: bool = False,
    ):
        if losses.num_actions != graph_source.num_actions:
            raise EnvInputError(
                f"loss model has K={losses.num_actions} but graph source has "
                f"K={graph_source.num_actions}"
            )
        super().__init__(losses.num_actions, horizon)
        self.losses = losses
        self.graph_source = graph_source
        self._rng_losses = make_rng(derive_seed(seed, "losses"))
        self._rng_graphs = make_rng(derive_seed(seed, "graphs"))
        self._record_losses = record_losses
        self._record_graphs = record_graphs
        self._loss_matrix = np.zeros((horizon, losses.num_actions)) if record_losses else None
        self._graph_trace: list[gr.FeedbackGraph] = []
        self._best = losses.best_action
        self._best_idx = self._best - 1
        self._block = None
        self._block_pos = 0
        self._drawn = 0

    def _next_losses(self) -> np.ndarray:
        if self._block is None or self._block_pos >= len(self._block):
            n = min(_BLOCK, self.horizon - self._drawn)
            self._block = self.losses.sample_block(self._rng_losses, n)
            self._drawn += n
            self._block_pos = 0
        row = self._block[self._block_pos]
        self._block_pos += 1
        return row

    def _round(self, t, action):
        losses = self._next_losses()
        if self._record_graphs:
            g = self.graph_source.sample(self._rng_graphs, t)
            self._graph_trace.append(g)
            acts = np.array(sorted(gr.out_neighborhood(g, action)), dtype=np.int64)
            idx0 = acts - 1
        else:
            acts, idx0 = self.graph_source.observe_row(action, self._rng_graphs, t)
        if self._record_losses:
            self._loss_matrix[t - 1] = losses
        obs = Observation(t, action, acts, losses[idx0])
        return obs, losses[action - 1], losses[self._best_idx]

    def oracle(self) -> EnvOracle:
        o = self._oracle_base(self._best, self.losses.gaps)
        o.means = self.losses.means
        if self._record_losses:
            o.loss_matrix = self._loss_matrix[: self.rounds_used]
        o.graph_trace = self._graph_trace
        return o


def make_stochastic_env(
    losses: LossModel,
    graph_source: GraphSource,
    horizon: int,
    seed: int,
    **kw,
) -> StochasticEnv:
    return StochasticEnv(losses, graph_source, horizon, seed, **kw)


class AdversarialLBEnv(Environment):
    """Hard instance with a hidden best action v*.

    v* is uniform over the K actions. Per round all losses are Bernoulli(1/2)
    except v* at Bernoulli(1/2 - eps) with eps = (1/8) * sqrt(K / T). Edges
    u -> w for w != v* appear independently with probability 1 - 2*eps;
    edges into v* appear with probability 1 when v*'s loss is 1 and
    (1 - 2*eps) / (1 + 2*eps) when it is 0, independently given that loss.
    Self-loops are always present. The resulting single-round view of v*
    through any other action is indistinguishable from the view of a normal
    action, so only direct plays of v* carry signal.

    With ``condition_alpha_9`` the coupled (loss-of-v*, graph) draw is
    rejection-sampled each round until the graph's exact independence number
    is at most 9 (requires K <= 32).
    """

    kind = "adversarial_lb"

    def __init__(
        self,
        num_actions: int,
        horizon: int,
        seed: int,
        condition_alpha_9: bool = False,
        record_graphs: bool = False,
    ):
        if num_actions < 2:
            raise EnvInputError("need K >= 2")
        if horizon < num_actions * num_actions:
            raise EnvInputError(f"need T >= K^2, got T={horizon}, K={num_actions}")
        if condition_alpha_9 and num_actions > gr.EXACT_ALPHA_MAX_ACTIONS:
            raise EnvInputError("conditioning needs exact alpha, so K <= 32")
        super().__init__(num_actions, horizon)
        self.eps = 0.125 * math.sqrt(num_actions / horizon)
        self.condition_alpha_9 = condition_alpha_9
        self._record_graphs = record_graphs
        self._graph_trace: list[gr.FeedbackGraph] = []
        setup = make_rng(derive_seed(seed, "setup"))
        self.v_star = int(setup.integers(num_actions)) + 1
        self._rng = make_rng(derive_seed(seed, "rounds"))
        k = num_actions
        self._means = np.full(k, 0.5)
        self._means[self.v_star - 1] = 0.5 - self.eps
        self._p_edge = 1.0 - 2.0 * self.eps
        self._p_edge_star_loss0 = (1.0 - 2.0 * self.eps) / (1.0 + 2.0 * self.eps)
        self._block = None
        self._block_len = 0
        self._block_pos = 0

    def _next_round_draws(self):
        if self._block is None or self._block_pos >= self._block_len:
            n = max(min(_BLOCK, self.horizon - self.rounds_used), 1)
            k = self.num_actions
            star = self.v_star - 1
            raw = self._rng.random((n, 2 * k))
            losses = (raw[:, :k] < self._means).astype(float)
            # edge thresholds: column into v* is coupled to v*'s loss
            thr = np.full((n, k), self._p_edge)
            thr[:, star] = np.where(losses[:, star] == 1.0, 1.0, self._p_edge_star_loss0)
            self._block = (losses, raw[:, k:] < thr)
            self._block_len = n
            self._block_pos = 0
        losses = self._block[0][self._block_pos]
        edges = self._block[1][self._block_pos]
        self._block_pos += 1
        return losses, edges

    def _draw_full_graph(self, loss_star: float) -> gr.FeedbackGraph:
        k = self.num_actions
        star = self.v_star - 1
        thr = np.full((k, k), self._p_edge)
        thr[:, star] = 1.0 if loss_star == 1.0 else self._p_edge_star_loss0
        mat = self._rng.random((k, k)) < thr
        np.fill_diagonal(mat, True)
        rows = []
        for i in range(k):
            row = 0
            for j in np.flatnonzero(mat[i]):
                row |= 1 << int(j)
            rows.append(row)
        return gr.FeedbackGraph(k, tuple(rows))

    def _round(self, t, action):
        star = self.v_star - 1
        losses, hit = self._next_round_draws()
        if self.condition_alpha_9 or self._record_graphs:
            # joint (loss of v*, graph) draw, optionally conditioned
            losses = losses.copy()
            while True:
                g = self._draw_full_graph(losses[star])
                if not self.condition_alpha_9 or gr.independence_number_exact(g) <= 9:
                    break
                losses[star] = float(self._rng.random() < self._means[star])
            self._graph_trace.append(g)
            acts = np.array(sorted(gr.out_neighborhood(g, action)), dtype=np.int64)
            idx0 = acts - 1
        else:
            hit[action - 1] = True
            idx0 = hit.nonzero()[0]
            acts = idx0 + 1
        obs = Observation(t, action, acts, losses[idx0])
        return obs, losses[action - 1], losses[star]

    def oracle(self) -> EnvOracle:
        gaps = np.full(self.num_actions, self.eps)
        gaps[self.v_star - 1] = 0.0
        o = self._oracle_base(self.v_star, gaps)
        o.means = self._means.copy()
        o.v_star = self.v_star
        o.eps = self.eps
        o.graph_trace = self._graph_trace
        return o


def make_adversarial_lb_env(
    num_actions: int, horizon: int, seed: int, condition_alpha_9: bool = False, **kw
) -> AdversarialLBEnv:
    return AdversarialLBEnv(num_actions, horizon, seed, condition_alpha_9, **kw)


# edge patterns for the two-action construction
_UV_ONLY = 0  # only u -> v
_VV_ONLY = 1  # only the self-loop v -> v
_BOTH = 2

U_ACTION = 1
V_ACTION = 2


class TwoActionLBEnv(Environment):
    """Two-action strongly-observable hard instance with hidden index chi.

    Action u (=1) has constant loss 1/2 and a self-loop every round. Action
    v (=2) has Bernoulli(3/8) loss under chi=1 and Bernoulli(5/8) under
    chi=2. When v's loss takes its "certain" value (1 under chi=1, 0 under
    chi=2) both the edge u->v and the self-loop v->v appear; otherwise with
    probability 2/5 only u->v appears, with probability 2/5 only v->v, and
    with probability 1/5 both. Every graph is strongly observable, and from
    either action's viewpoint the chance of (not observing v, seeing loss 0,
    seeing loss 1) is (1/4, 3/8, 3/8) under both values of chi.
    """

    kind = "strongly_obs_lb"

    def __init__(self, horizon: int, seed: int, chi="random", record_graphs: bool = False):
        super().__init__(2, horizon)
        if chi == "random":
            setup = make_rng(derive_seed(seed, "setup"))
            self.chi = int(setup.integers(2)) + 1
        elif chi in (1, 2):
            self.chi = int(chi)
        else:
            raise EnvInputError(f"chi must be 1, 2, or 'random', got {chi!r}")
        self._rng = make_rng(derive_seed(seed, "rounds"))
        self._record_graphs = record_graphs
        self._graph_trace: list[gr.FeedbackGraph] = []
        self._mean_v = 0.375 if self.chi == 1 else 0.625
        self._certain_loss = 1.0 if self.chi == 1 else 0.0
        self.best_action = V_ACTION if self.chi == 1 else U_ACTION
        self.wrong_action = U_ACTION if self.chi == 1 else V_ACTION
        self._block = None
        self._block_len = 0
        self._block_pos = 0
        self._acts_u_both = np.array([1, 2], dtype=np.int64)
        self._acts_u_only = np.array([1], dtype=np.int64)
        self._acts_v = np.array([2], dtype=np.int64)
        self._acts_none = np.array([], dtype=np.int64)

    def _next_round_draws(self):
        if self._block is None or self._block_pos >= self._block_len:
            n = max(min(_BLOCK, self.horizon - self.rounds_used), 1)
            raw = self._rng.random((n, 2))
            loss_v = (raw[:, 0] < self._mean_v).astype(float)
            pattern = np.full(n, _BOTH, dtype=np.int8)
            free = loss_v != self._certain_loss
            pattern[free & (raw[:, 1] < 0.4)] = _UV_ONLY
            pattern[free & (raw[:, 1] >= 0.4) & (raw[:, 1] < 0.8)] = _VV_ONLY
            self._block = (loss_v.tolist(), pattern.tolist())
            self._block_len = n
            self._block_pos = 0
        i = self._block_pos
        self._block_pos += 1
        return self._block[0][i], self._block[1][i]

    def _round(self, t, action):
        loss_v, pattern = self._next_round_draws()
        if self._record_graphs:
            edges = [(1, 1)]
            if pattern != _VV_ONLY:
                edges.append((1, 2))
            if pattern != _UV_ONLY:
                edges.append((2, 2))
            self._graph_trace.append(gr.from_edges(2, edges))
        if action == U_ACTION:
            if pattern != _VV_ONLY:  # u -> v present
                obs = Observation(t, action, self._acts_u_both, np.array([0.5, loss_v]))
            else:
                obs = Observation(t, action, self._acts_u_only, np.array([0.5]))
            incurred = 0.5
        else:
            if pattern != _UV_ONLY:  # self-loop v -> v present
                obs = Observation(t, action, self._acts_v, np.array([loss_v]))
            else:
                obs = Observation(t, action, self._acts_none, np.array([]))
            incurred = loss_v
        comparator = loss_v if self.best_action == V_ACTION else 0.5
        return obs, incurred, comparator

    def oracle(self) -> EnvOracle:
        gaps = np.zeros(2)
        gaps[self.wrong_action - 1] = 0.125
        o = self._oracle_base(self.best_action, gaps)
        o.means = np.array([0.5, self._mean_v])
        o.chi = self.chi
        o.graph_trace = self._graph_trace
        return o


def make_strongly_obs_lb_env(horizon: int, seed: int, chi="random", **kw) -> TwoActionLBEnv:
    return TwoActionLBEnv(horizon, seed, chi, **kw)


# ---------------------------------------------------------------------------
# exact single-round tables for the hard instances (verification side)
# ---------------------------------------------------------------------------


def adversarial_joint_table(eps: float, target_is_star: bool) -> dict:
    """Joint P[loss of target, edge into target] for one observer round.

    Keys are (loss_bit, edge_present); values exact probabilities (floats).
    """
    if target_is_star:
        p1 = 0.5 - eps
        p0 = 0.5 + eps
        e_given_0 = (1.0 - 2.0 * eps) / (1.0 + 2.0 * eps)
        return {
            (0, False): p0 * (1.0 - e_given_0),
            (0, True): p0 * e_given_0,
            (1, False): 0.0,
            (1, True): p1 * 1.0,
        }
    e = 1.0 - 2.0 * eps
    return {
        (0, False): 0.5 * (1.0 - e),
        (0, True): 0.5 * e,
        (1, False): 0.5 * (1.0 - e),
        (1, True): 0.5 * e,
    }


def adversarial_observation_triple(eps: float, target_is_star: bool) -> tuple:
    """(P[target unobserved], P[observe loss 0], P[observe loss 1]) for one round."""
    table = adversarial_joint_table(eps, target_is_star)
    unobs = table[(0, False)] + table[(1, False)]
    return (unobs, table[(0, True)], table[(1, True)])


def two_action_joint_table(chi: int) -> dict:
    """Joint P[loss of v, edge pattern] cells for the two-action instance.

    Keys are (loss_bit, pattern) with pattern in {"uv_only", "vv_only",
    "both"}; built from the construction's conditional probabilities.
    """
    if chi not in (1, 2):
        raise EnvInputError("chi must be 1 or 2")
    mean_v = 0.375 if chi == 1 else 0.625
    certain = 1 if chi == 1 else 0
    cells = {}
    for loss in (0, 1):
        p_loss = mean_v if loss == 1 else 1.0 - mean_v
        if loss == certain:
            cells[(loss, "uv_only")] = 0.0
            cells[(loss, "vv_only")] = 0.0
            cells[(loss, "both")] = p_loss
        else:
            cells[(loss, "uv_only")] = p_loss * 0.4
            cells[(loss, "vv_only")] = p_loss * 0.4
            cells[(loss, "both")] = p_loss * 0.2
    return cells


def two_action_observation_triple(chi: int, viewpoint: int) -> tuple:
    """(P[v unobserved], P[observe 0], P[observe 1]) when playing `viewpoint`."""
    cells = two_action_joint_table(chi)
    if viewpoint == U_ACTION:
        sees = ("uv_only", "both")  # needs the edge u -> v
    elif viewpoint == V_ACTION:
        sees = ("vv_only", "both")  # needs the self-loop v -> v
    else:
        raise EnvInputError("viewpoint must be action 1 (u) or 2 (v)")
    p0 = sum(cells[(0, pat)] for pat in sees)
    p1 = sum(cells[(1, pat)] for pat in sees)
    return (1.0 - p0 - p1, p0, p1)


# ---------------------------------------------------------------------------
# config factory
# ---------------------------------------------------------------------------


def env_from_config(cfg: dict, horizon: int, seed: int, **kw) -> Environment:
    """Build an environment from its JSON config dict.

    ``{"type": "stochastic", "k": K, "losses": {...}, "graphs": {...}}``
    ``{"type": "adversarial_lb", "k": K, "condition_alpha_9": bool}``
    ``{"type": "strongly_obs_lb", "chi": 1 | 2 | "random"}``
    """
    try:
        etype = cfg["type"]
    except KeyError as exc:
        raise EnvInputError("environment config missing field 'type'") from exc
    if etype == "stochastic":
        losses = LossModel.from_config(cfg["losses"])
        if "k" in cfg and int(cfg["k"]) != losses.num_actions:
            raise EnvInputError(
                f"config k={cfg['k']} does not match loss model K={losses.num_actions}"
            )
        source = graph_source_from_config(cfg["graphs"], losses.num_actions)
        return StochasticEnv(losses, source, horizon, seed, **kw)
    if etype == "adversarial_lb":
        return AdversarialLBEnv(
            int(cfg["k"]), horizon, seed, bool(cfg.get("condition_alpha_9", False)), **kw
        )
    if etype == "strongly_obs_lb":
        return TwoActionLBEnv(horizon, seed, cfg.get("chi", "random"), **kw)
    raise EnvInputError(f"unknown environment type {etype!r}")
