"""Directed feedback graphs: representation, independence numbers, generators.

A graph over K actions is stored as K bitmask rows; ``rows[i]`` has bit
``j`` set iff the edge ``(i+1) -> (j+1)`` is present. Diagonal bits are the
self-loops. Bitmasks keep out-neighborhood queries and the sampling inner
loops cheap, and make the exact independence-number search branch on machine
ints.

Independence is read on the undirected underlying graph: a set S is
independent iff no edge joins two distinct members in either direction,
which collapses the directed definition to the undirected one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

STRONGLY_OBSERVABLE = "strongly_observable"
WEAKLY_OBSERVABLE = "weakly_observable"
UNOBSERVABLE = "unobservable"

#: largest K for which the exact independence-number search is allowed
EXACT_ALPHA_MAX_ACTIONS = 32


class GraphInputError(ValueError):
    """Invalid graph, action id, or generator parameter."""


class ExactBudgetError(RuntimeError):
    """Exact search refused; use independence_number_greedy_bound instead."""


@dataclass(frozen=True)
class FeedbackGraph:
    """Immutable directed graph over actions 1..num_actions."""

    num_actions: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.num_actions < 1:
            raise GraphInputError(f"num_actions must be >= 1, got {self.num_actions}")
        if len(self.rows) != self.num_actions:
            raise GraphInputError("rows length must equal num_actions")
        full = (1 << self.num_actions) - 1
        for r in self.rows:
            if r & ~full:
                raise GraphInputError("row references an action outside 1..K")

    def has_edge(self, u: int, w: int) -> bool:
        _check_action(self, u)
        _check_action(self, w)
        return bool(self.rows[u - 1] >> (w - 1) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All directed edges (u, w), self-loops included, sorted."""
        out = []
        for i, row in enumerate(self.rows):
            m = row
            while m:
                low = m & -m
                out.append((i + 1, low.bit_length()))
                m ^= low
        return out

    @property
    def all_self_loops(self) -> bool:
        return all(row >> i & 1 for i, row in enumerate(self.rows))


def _check_action(g: FeedbackGraph, v: int) -> None:
    if not 1 <= v <= g.num_actions:
        raise GraphInputError(f"action {v} out of range 1..{g.num_actions}")


def from_edges(num_actions: int, edges, self_loops: bool = False) -> FeedbackGraph:
    """Build a graph from an iterable of (u, w) pairs; optionally force all self-loops."""
    rows = [0] * num_actions
    if self_loops:
        for i in range(num_actions):
            rows[i] |= 1 << i
    for u, w in edges:
        if not (1 <= u <= num_actions and 1 <= w <= num_actions):
            raise GraphInputError(f"edge ({u}, {w}) out of range 1..{num_actions}")
        rows[u - 1] |= 1 << (w - 1)
    return FeedbackGraph(num_actions, tuple(rows))


def complete_graph(num_actions: int) -> FeedbackGraph:
    full = (1 << num_actions) - 1
    return FeedbackGraph(num_actions, tuple(full for _ in range(num_actions)))


def bandit_graph(num_actions: int) -> FeedbackGraph:
    """Self-loops only: playing an action reveals exactly its own loss."""
    return FeedbackGraph(num_actions, tuple(1 << i for i in range(num_actions)))


def out_neighborhood(g: FeedbackGraph, v: int) -> set[int]:
    """Actions observed when playing v: { w : (v -> w) present }, v itself iff self-loop."""
    _check_action(g, v)
    row = g.rows[v - 1]
    out = set()
    while row:
        low = row & -row
        out.add(low.bit_length())
        row ^= low
    return out


def undirected_underlying(g: FeedbackGraph) -> FeedbackGraph:
    """Symmetric off-diagonal relation: {u, w} joined iff u->w or w->u."""
    n = g.num_actions
    rows = [g.rows[i] & ~(1 << i) for i in range(n)]
    for i in range(n):
        m = rows[i]
        while m:
            low = m & -m
            rows[low.bit_length() - 1] |= 1 << i
            m ^= low
    return FeedbackGraph(n, tuple(rows))


def num_undirected_edges(g: FeedbackGraph) -> int:
    """Non-loop edge count of the undirected underlying graph."""
    und = undirected_underlying(g)
    return sum(r.bit_count() for r in und.rows) // 2


def directed_edges_within(g: FeedbackGraph, subset) -> int:
    """Directed non-loop edges with both endpoints in `subset` (1-based actions)."""
    mask = 0
    for v in subset:
        _check_action(g, v)
        mask |= 1 << (v - 1)
    total = 0
    m = mask
    while m:
        low = m & -m
        i = low.bit_length() - 1
        total += (g.rows[i] & mask & ~low).bit_count()
        m ^= low
    return total


# ---------------------------------------------------------------------------
# independence number
# ---------------------------------------------------------------------------


def _clique_cover_bound(adj: list[int], cand: int) -> int:
    # alpha(cand) <= number of cliques in any clique cover of cand
    count = 0
    rem = cand
    while rem:
        low = rem & -rem
        pool = rem & adj[low.bit_length() - 1]
        clique = low
        while pool:
            u = pool & -pool
            clique |= u
            pool &= adj[u.bit_length() - 1]
        rem &= ~clique
        count += 1
    return count


def _mis_size(adj: list[int], cand: int, current: int, best: int) -> int:
    if cand == 0:
        return max(best, current)
    if current + cand.bit_count() <= best:
        return best
    if current + _clique_cover_bound(adj, cand) <= best:
        return best
    # branch on a maximum-degree vertex within cand
    pick, pick_deg = -1, -1
    m = cand
    while m:
        low = m & -m
        i = low.bit_length() - 1
        d = (adj[i] & cand).bit_count()
        if d > pick_deg:
            pick, pick_deg = i, d
        m ^= low
    bit = 1 << pick
    if pick_deg == 0:
        # cand is an independent set already
        return max(best, current + cand.bit_count())
    best = _mis_size(adj, cand & ~(adj[pick] | bit), current + 1, best)
    best = _mis_size(adj, cand & ~bit, current, best)
    return best


def independence_number_exact(g: FeedbackGraph) -> int:
    """Maximum size of a set with no edge between distinct members (either direction).

    Branch-and-bound with greedy clique-cover pruning on the undirected
    underlying graph. Refuses K > EXACT_ALPHA_MAX_ACTIONS.
    """
    if g.num_actions > EXACT_ALPHA_MAX_ACTIONS:
        raise ExactBudgetError(
            f"exact search capped at K={EXACT_ALPHA_MAX_ACTIONS}; "
            "use independence_number_greedy_bound for larger graphs"
        )
    und = undirected_underlying(g)
    adj = list(und.rows)
    return _mis_size(adj, (1 << g.num_actions) - 1, 0, 0)


def independence_number_greedy_bound(
    g: FeedbackGraph, rng: np.random.Generator, restarts: int = 16
) -> tuple[int, str]:
    """Randomized-greedy lower bound on the independence number.

    Each restart repeatedly picks a uniformly random surviving vertex and
    deletes its closed undirected neighborhood; the best restart is returned.
    Always a valid lower bound.
    """
    und = undirected_underlying(g)
    closed = [und.rows[i] | (1 << i) for i in range(g.num_actions)]
    best = 0
    for _ in range(restarts):
        remaining = (1 << g.num_actions) - 1
        size = 0
        while remaining:
            k = remaining.bit_count()
            pick = int(rng.integers(k))
            m = remaining
            for _ in range(pick):
                m ^= m & -m
            low = m & -m
            size += 1
            remaining &= ~closed[low.bit_length() - 1]
        best = max(best, size)
    return best, f"greedy_best_of_{restarts}"


def turan_lower_bound(g: FeedbackGraph) -> Fraction:
    """|V| / (1 + 2|E|/|V|) on the undirected underlying graph, exact rational."""
    n = g.num_actions
    e = num_undirected_edges(g)
    return Fraction(n * n, n + 2 * e)


# ---------------------------------------------------------------------------
# observability
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ObservabilityReport:
    per_vertex: dict[int, str]
    graph_class: str


def classify_observability(g: FeedbackGraph) -> ObservabilityReport:
    """Per-vertex and whole-graph observability classes.

    A vertex is observable if it has at least one incoming edge (self-loops
    count), strongly observable if it has a self-loop or incoming edges from
    every other vertex, weakly observable if observable but not strongly.
    """
    n = g.num_actions
    in_mask = [0] * n
    for i in range(n):
        m = g.rows[i]
        while m:
            low = m & -m
            in_mask[low.bit_length() - 1] |= 1 << i
            m ^= low
    per = {}
    for j in range(n):
        self_loop = bool(in_mask[j] >> j & 1)
        others = in_mask[j] & ~(1 << j)
        all_others = (1 << n) - 1 ^ (1 << j)
        if self_loop or others == all_others:
            per[j + 1] = STRONGLY_OBSERVABLE
        elif in_mask[j]:
            per[j + 1] = WEAKLY_OBSERVABLE
        else:
            per[j + 1] = UNOBSERVABLE
    if any(c == UNOBSERVABLE for c in per.values()):
        graph_class = UNOBSERVABLE
    elif all(c == STRONGLY_OBSERVABLE for c in per.values()):
        graph_class = STRONGLY_OBSERVABLE
    else:
        graph_class = WEAKLY_OBSERVABLE
    return ObservabilityReport(per, graph_class)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def sample_erdos_renyi(
    k: int, p: float, self_loops: bool, rng: np.random.Generator
) -> FeedbackGraph:
    """Directed G(k, p): each off-diagonal edge independent with probability p."""
    if not 0.0 <= p <= 1.0:
        raise GraphInputError(f"edge probability must be in [0, 1], got {p}")
    mat = rng.random((k, k)) < p
    rows = []
    for i in range(k):
        row = 0
        for j in np.flatnonzero(mat[i]):
            row |= 1 << int(j)
        if self_loops:
            row |= 1 << i
        else:
            row &= ~(1 << i)
        rows.append(row)
    return FeedbackGraph(k, tuple(rows))


def sample_erdos_renyi_undirected(
    k: int, p: float, rng: np.random.Generator
) -> FeedbackGraph:
    """Undirected G(k, p): each unordered pair joined independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise GraphInputError(f"edge probability must be in [0, 1], got {p}")
    rows = [0] * k
    for i in range(k):
        draws = rng.random(k - i - 1) < p
        for off in np.flatnonzero(draws):
            j = i + 1 + int(off)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return FeedbackGraph(k, tuple(rows))


def disjoint_cliques(k: int, alpha: int) -> FeedbackGraph:
    """K vertices in `alpha` near-equal bidirectional cliques (self-loops included).

    The independence number is exactly `alpha`: one vertex per clique.
    """
    if not 1 <= alpha <= k:
        raise GraphInputError(f"need 1 <= alpha <= K, got alpha={alpha}, K={k}")
    base, extra = divmod(k, alpha)
    rows = []
    start = 0
    for group in range(alpha):
        size = base + (1 if group < extra else 0)
        mask = ((1 << size) - 1) << start
        rows.extend(mask for _ in range(size))
        start += size
    return FeedbackGraph(k, tuple(rows))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def graph_to_json(g: FeedbackGraph) -> dict:
    """Wire format: {"k": K, "edges": [[u, w], ...]} with explicit self-loops."""
    return {"k": g.num_actions, "edges": [list(e) for e in g.edges()]}


def graph_from_json(obj: dict) -> FeedbackGraph:
    try:
        k = int(obj["k"])
        edges = [(int(u), int(w)) for u, w in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphInputError(f"malformed graph object: {exc}") from exc
    return from_edges(k, edges)


def dump_graph(g: FeedbackGraph) -> str:
    return json.dumps(graph_to_json(g), indent=2, sort_keys=True)


def load_graph(text: str) -> FeedbackGraph:
    return graph_from_json(json.loads(text))


def neighborhood_arrays(g: FeedbackGraph) -> list[np.ndarray]:
    """Per-action sorted out-neighborhoods as 1-based int64 arrays (hot-path cache)."""
    out = []
    for v in range(1, g.num_actions + 1):
        out.append(np.array(sorted(out_neighborhood(g, v)), dtype=np.int64))
    return out
