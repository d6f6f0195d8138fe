"""Decision policies. Every learner sees the world only through Observations.

The protocol is choose() -> action, observe(Observation) -> None, alternated
by the harness for exactly T rounds. Learners never touch an environment
object; the sampling subroutine can also drive an EnvSession directly when
used standalone (the verification suite does this).

The workhorse is AlphaSampleRun: play uniformly at random inside a target
set, harvest whatever the hidden graph reveals, and repeat until every
target has one recorded loss. Dense hidden graphs make this finish in a
number of rounds governed by their independence number rather than by K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from graphbandit.environments import EnvSession, HorizonExhaustedError, Observation
from graphbandit.seeding import derive_seed, make_rng


class LearnerInputError(ValueError):
    """Bad learner parameters or config."""


class PartialBatchError(RuntimeError):
    """Environment ran out mid-sampling; carries what was collected."""

    def __init__(self, samples: dict, rounds_spent: int):
        super().__init__(
            f"horizon exhausted after {rounds_spent} rounds with "
            f"{len(samples)} of the requested samples collected"
        )
        self.samples = samples
        self.rounds_spent = rounds_spent


@dataclass(frozen=True)
class SampleBatch:
    """One observed loss per requested action, plus the rounds it cost."""

    samples: dict[int, float]
    rounds_spent: int


@dataclass(frozen=True)
class PhaseSchedule:
    """Accuracy and repetition count for phase r >= 1."""

    phase: int
    eps: float
    reps: int

    @staticmethod
    def for_phase(r: int, num_actions: int, horizon: int) -> "PhaseSchedule":
        eps = 2.0 ** -(r + 1)
        reps = math.ceil(2.0 * math.log(2 * num_actions * horizon) / (eps * eps))
        return PhaseSchedule(r, eps, reps)


def max_phases(num_actions: int, horizon: int) -> float:
    """Upper bound on the number of completed phases within the horizon."""
    return 0.5 * math.log2(3 * horizon / (32 * math.log(2 * num_actions * horizon)) + 1)


def eliminate(active: set[int], means: dict[int, float], eps: float) -> set[int]:
    """Keep actions whose empirical mean is within 2*eps of the best; never empty."""
    if not active:
        raise LearnerInputError("cannot eliminate from an empty action set")
    missing = [v for v in active if v not in means]
    if missing:
        raise LearnerInputError(f"means missing for actions {sorted(missing)}")
    best = min(means[v] for v in active)
    return {v for v in active if means[v] <= best + 2.0 * eps}


class AlphaSampleRun:
    """One sampling pass over a requested action set.

    Base mode: draw an action uniformly from the not-yet-observed targets,
    play it, record first-seen losses of whatever comes back, drop observed
    targets, stop when none remain.

    Strong mode (`pair_tail=True`): stop the uniform loop once at most one
    target remains; a final unobserved target v is then chased by playing
    uniformly over {v, w} (w = the lowest-index other action) until some
    observation of v arrives. Needed when vertices may lack self-loops, in
    which case a one-element target set could be unobservable from within.
    """

    def __init__(self, requested, rng: np.random.Generator, num_actions: int,
                 pair_tail: bool = False, _live: np.ndarray | None = None):
        if _live is None:
            targets = sorted(int(v) for v in set(requested))
            if not targets:
                raise LearnerInputError("requested action set is empty")
            if targets[0] < 1 or targets[-1] > num_actions:
                raise LearnerInputError(f"requested actions outside 1..{num_actions}")
            _live = np.array(targets, dtype=np.int64)
        if pair_tail and num_actions < 2:
            raise LearnerInputError("pair tail needs at least two actions")
        self._rng = rng
        self._k = num_actions
        self._pair_tail = pair_tail
        self._live = _live  # not-yet-observed targets, kept sorted
        self._want = np.zeros(num_actions + 1, dtype=bool)
        self._want[_live] = True
        self._samples: dict[int, float] = {}
        self._rounds = 0
        self._tail_pair: tuple[int, int] | None = None

    @property
    def done(self) -> bool:
        return len(self._live) == 0

    @property
    def rounds_spent(self) -> int:
        return self._rounds

    def batch(self) -> SampleBatch:
        if not self.done:
            raise PartialBatchError(dict(self._samples), self._rounds)
        return SampleBatch(dict(self._samples), self._rounds)

    def next_action(self) -> int:
        live = self._live
        n = len(live)
        if n == 0:
            raise LearnerInputError("sampling run already complete")
        if self._pair_tail and n == 1:
            if self._tail_pair is None:
                v = int(live[0])
                self._tail_pair = (v, 1 if v != 1 else 2)
            return self._tail_pair[self._rng.integers(2)]
        return int(live[self._rng.integers(n)])

    def feed(self, obs: Observation) -> None:
        self._rounds += 1
        acts = obs.actions
        if len(acts) == 0:
            return
        hits = self._want[acts]
        if not hits.any():
            return
        new_actions = acts[hits]
        new_losses = obs.losses[hits]
        for a, x in zip(new_actions.tolist(), new_losses.tolist()):
            self._samples[a] = x
        self._want[new_actions] = False
        self._live = self._live[self._want[self._live]]


def _drive(run: AlphaSampleRun, session: EnvSession) -> SampleBatch:
    while not run.done:
        action = run.next_action()
        try:
            obs = session.step(action)
        except HorizonExhaustedError as exc:
            raise PartialBatchError(dict(run._samples), run.rounds_spent) from exc
        run.feed(obs)
    return run.batch()


def alpha_sample(requested, session: EnvSession, rng: np.random.Generator) -> SampleBatch:
    """Collect one loss sample per requested action by uniform play inside it.

    Assumes self-loops are present round after round (base feedback model),
    so every play observes at least itself and the loop always progresses.
    """
    run = AlphaSampleRun(requested, rng, session.num_actions, pair_tail=False)
    return _drive(run, session)


def alpha_sample_strongly_obs(
    requested, session: EnvSession, rng: np.random.Generator
) -> SampleBatch:
    """alpha_sample variant safe for strongly observable graphs without self-loops."""
    run = AlphaSampleRun(requested, rng, session.num_actions, pair_tail=True)
    return _drive(run, session)


@dataclass(frozen=True)
class PhaseRecord:
    phase: int
    eps: float
    reps: int
    rounds_spent: int
    survivors: tuple[int, ...]


class EliminationLearner:
    """Phased elimination driven by repeated sampling passes.

    Each phase r runs the sampling pass n_r times over the surviving set,
    averages the collected losses, drops actions more than 2*eps_r above the
    best, and halves eps. Once a single action survives it is played for the
    rest of the horizon. If the horizon ends mid-phase the partial phase is
    simply abandoned (no decision remains to be made).
    """

    def __init__(self, num_actions: int, horizon: int, seed: int = 0,
                 strongly_observable: bool = False):
        if num_actions < 2:
            raise LearnerInputError("need at least two actions")
        if horizon < 1:
            raise LearnerInputError("horizon must be >= 1")
        self.num_actions = num_actions
        self.horizon = horizon
        self._strong = strongly_observable
        self._rng = make_rng(derive_seed(seed, "elimination"))
        self._active: tuple[int, ...] = tuple(range(1, num_actions + 1))
        self._active_arr = np.arange(1, num_actions + 1, dtype=np.int64)
        self._schedule = PhaseSchedule.for_phase(1, num_actions, horizon)
        self._sums = np.zeros(num_actions + 1)
        self._invocations_done = 0
        self._phase_rounds = 0
        self._exploit: int | None = None
        self.phase_log: list[PhaseRecord] = []
        self._run = self._new_run()

    def _new_run(self) -> AlphaSampleRun:
        return AlphaSampleRun(
            None, self._rng, self.num_actions, pair_tail=self._strong,
            _live=self._active_arr.copy(),
        )

    def choose(self) -> int:
        if self._exploit is not None:
            return self._exploit
        return self._run.next_action()

    def observe(self, obs: Observation) -> None:
        if self._exploit is not None:
            return
        self._run.feed(obs)
        if not self._run.done:
            return
        batch = self._run.batch()
        self._phase_rounds += batch.rounds_spent
        for v, x in batch.samples.items():
            self._sums[v] += x
        self._invocations_done += 1
        if self._invocations_done < self._schedule.reps:
            self._run = self._new_run()
            return
        self._finish_phase()

    def _finish_phase(self) -> None:
        sched = self._schedule
        means = {v: self._sums[v] / sched.reps for v in self._active}
        survivors = eliminate(set(self._active), means, sched.eps)
        self._active = tuple(sorted(survivors))
        self._active_arr = np.array(self._active, dtype=np.int64)
        self.phase_log.append(
            PhaseRecord(sched.phase, sched.eps, sched.reps, self._phase_rounds, self._active)
        )
        if len(self._active) == 1:
            self._exploit = self._active[0]
            return
        self._schedule = PhaseSchedule.for_phase(sched.phase + 1, self.num_actions, self.horizon)
        self._sums[:] = 0.0
        self._invocations_done = 0
        self._phase_rounds = 0
        self._run = self._new_run()

    @property
    def surviving_actions(self) -> tuple[int, ...]:
        return self._active

    @property
    def committed_action(self) -> int | None:
        return self._exploit


def elimination_learner(num_actions: int, horizon: int, seed: int = 0) -> EliminationLearner:
    return EliminationLearner(num_actions, horizon, seed, strongly_observable=False)


def elimination_learner_strongly_obs(
    num_actions: int, horizon: int, seed: int = 0
) -> EliminationLearner:
    return EliminationLearner(num_actions, horizon, seed, strongly_observable=True)


class ExploreExploitLearner:
    """Uniform exploration to a target sample count, then commit.

    Exploration plays uniformly at random and counts every observed sample
    (side observations included) until each action has n0 samples, or a hard
    round cap fires; then the empirically best action is played forever.
    Works on any observable graph sequence, self-loops or not.
    """

    def __init__(self, num_actions: int, horizon: int, seed: int = 0):
        if num_actions < 2:
            raise LearnerInputError("need at least two actions")
        self.num_actions = num_actions
        self.horizon = horizon
        log_term = math.log(2 * num_actions * horizon)
        self.epsilon = (num_actions / horizon) ** (1 / 3) * (2 * log_term) ** (1 / 3)
        self.n0 = math.ceil(2 * log_term / (self.epsilon * self.epsilon))
        self.round_cap = math.ceil(
            8 * num_actions * self.n0 * math.log(num_actions * horizon)
        )
        self._rng = make_rng(derive_seed(seed, "explore_exploit"))
        self._sums = np.zeros(num_actions + 1)
        self._counts = np.zeros(num_actions + 1, dtype=np.int64)
        self._rounds = 0
        self._exploit: int | None = None
        self.exploration_rounds: int | None = None

    def choose(self) -> int:
        if self._exploit is not None:
            return self._exploit
        return int(self._rng.integers(self.num_actions)) + 1

    def observe(self, obs: Observation) -> None:
        if self._exploit is not None:
            return
        self._rounds += 1
        if len(obs.actions):
            np.add.at(self._sums, obs.actions, obs.losses)
            np.add.at(self._counts, obs.actions, 1)
        if self._counts[1:].min() >= self.n0 or self._rounds >= self.round_cap:
            counts = np.maximum(self._counts[1:], 1)
            means = np.where(self._counts[1:] > 0, self._sums[1:] / counts, np.inf)
            self._exploit = int(np.argmin(means)) + 1
            self.exploration_rounds = self._rounds

    @property
    def committed_action(self) -> int | None:
        return self._exploit


def explore_exploit_observable(num_actions: int, horizon: int, seed: int = 0):
    return ExploreExploitLearner(num_actions, horizon, seed)


class Exp3Learner:
    """Exponential weights with importance-weighted own-loss estimates.

    Learning rate sqrt(ln K / (T K)). Only the played action's own loss is
    used; when the round's graph hides it (no self-loop) the round is skipped.
    """

    def __init__(self, num_actions: int, horizon: int, seed: int = 0):
        if num_actions < 2:
            raise LearnerInputError("need at least two actions")
        self.num_actions = num_actions
        self.horizon = horizon
        self.learning_rate = math.sqrt(math.log(num_actions) / (horizon * num_actions))
        self._rng = make_rng(derive_seed(seed, "exp3"))
        # multiplicative weights, renormalized on underflow
        self._w = np.full(num_actions, 1.0 / num_actions)
        self._last_prob = 1.0 / num_actions
        self._played: int | None = None

    def distribution(self) -> np.ndarray:
        return self._w / self._w.sum()

    def choose(self) -> int:
        cdf = self._w.cumsum()
        total = cdf[-1]
        a = int(cdf.searchsorted(self._rng.random() * total))
        a = min(a, self.num_actions - 1)
        self._played = a + 1
        self._last_prob = float(self._w[a] / total)
        return self._played

    def observe(self, obs: Observation) -> None:
        if self._played is None:
            return
        acts = obs.actions
        idx = acts.searchsorted(self._played)
        if idx < len(acts) and acts[idx] == self._played:
            own = float(obs.losses[idx])
            i = self._played - 1
            self._w[i] *= math.exp(-self.learning_rate * own / self._last_prob)
            if self._w[i] < 1e-280:
                self._w /= self._w.max()
        self._played = None


def exp3_learner(num_actions: int, horizon: int, seed: int = 0) -> Exp3Learner:
    return Exp3Learner(num_actions, horizon, seed)


class UcbLearner:
    """UCB1 on losses: play the action minimizing mean - sqrt(2 ln t / n).

    Counts only rounds whose own loss was actually observed; until every
    action has one sample, the lowest-index unsampled action is played.
    """

    def __init__(self, num_actions: int, horizon: int, seed: int = 0):
        if num_actions < 2:
            raise LearnerInputError("need at least two actions")
        self.num_actions = num_actions
        self.horizon = horizon
        self._sums = [0.0] * num_actions
        self._counts = [0] * num_actions
        self._unsampled = num_actions
        self._t = 0
        self._played: int | None = None

    def choose(self) -> int:
        self._t += 1
        sums, counts = self._sums, self._counts
        if self._unsampled:
            self._played = counts.index(0) + 1
            return self._played
        two_log_t = 2.0 * math.log(self._t)
        best, best_idx = math.inf, 0
        for i in range(self.num_actions):
            n = counts[i]
            index = sums[i] / n - math.sqrt(two_log_t / n)
            if index < best:
                best, best_idx = index, i
        self._played = best_idx + 1
        return self._played

    def observe(self, obs: Observation) -> None:
        if self._played is None:
            return
        acts = obs.actions
        idx = acts.searchsorted(self._played)
        if idx < len(acts) and acts[idx] == self._played:
            i = self._played - 1
            self._sums[i] += float(obs.losses[idx])
            if self._counts[i] == 0:
                self._unsampled -= 1
            self._counts[i] += 1
        self._played = None


def ucb_learner(num_actions: int, horizon: int, seed: int = 0) -> UcbLearner:
    return UcbLearner(num_actions, horizon, seed)


_LEARNERS = {
    "elimination": elimination_learner,
    "elimination_strong": elimination_learner_strongly_obs,
    "explore_exploit": explore_exploit_observable,
    "exp3": exp3_learner,
    "ucb": ucb_learner,
}


def learner_from_config(cfg: dict, num_actions: int, horizon: int, seed: int):
    """Build a learner from ``{"type": <name>, ...}``."""
    try:
        kind = cfg["type"]
    except KeyError as exc:
        raise LearnerInputError("learner config missing field 'type'") from exc
    try:
        factory = _LEARNERS[kind]
    except KeyError:
        raise LearnerInputError(
            f"unknown learner type {kind!r}; expected one of {sorted(_LEARNERS)}"
        ) from None
    return factory(num_actions, horizon, seed)
