"""Simulation library for online learning when the feedback graph is hidden.

A learner repeatedly picks one of K actions; each round an unseen directed
graph decides which losses the learner gets to observe (the out-neighborhood
of the played action). The package provides the graph machinery, sealed
environments (stochastic and adversarial hard instances), learners built on a
round-efficient uniform sampling subroutine, a seeded Monte Carlo harness, and
an executable verification suite for the quantitative claims the design rests
on.

Actions are 1-based integers throughout the public API; numpy vectors indexed
by action use position ``a - 1``.
"""

from graphbandit.graphs import (
    FeedbackGraph,
    classify_observability,
    disjoint_cliques,
    independence_number_exact,
    independence_number_greedy_bound,
    out_neighborhood,
    sample_erdos_renyi,
    turan_lower_bound,
    undirected_underlying,
)

__all__ = [
    "FeedbackGraph",
    "classify_observability",
    "disjoint_cliques",
    "independence_number_exact",
    "independence_number_greedy_bound",
    "out_neighborhood",
    "sample_erdos_renyi",
    "turan_lower_bound",
    "undirected_underlying",
]

__version__ = "0.1.0"
