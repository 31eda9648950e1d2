"""Homomorphism densities of graphs in step graphons.

Two engines compute t(H, W) = sum over block maps of the product of edge
values times the product of block measures:

* hom_density_naive enumerates all n^v(H) maps with compensated summation.
  It is the oracle and stays a direct transcription of the definition.
* hom_density eliminates one pattern vertex at a time (greedy minimum degree,
  ties to the lowest vertex id), which turns subdivision-heavy patterns from
  exponential into low-order polynomial work.

Work is accounted in block-tensor cells touched and checked against a budget
before any contraction runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .budget import resolve_budget
from .errors import BudgetExceededError
from .graphs import Graph, subdivide
from .operators import path_power
from .stepgraphon import StepGraphon, as_step_function

DEFAULT_CELL_BUDGET = 10**9
DEFAULT_ENUMERATION_BUDGET = 10**8


@dataclass(frozen=True)
class EliminationPlan:
    """Vertex elimination order with per-step working-factor arities.

    cost is the total number of cells the contraction will touch,
    sum of n^arity over the steps.
    """

    order: tuple
    arities: tuple
    block_count: int
    cost: float


@lru_cache(maxsize=4096)
def plan_elimination(H: Graph, n: int, pinned: tuple = ()) -> EliminationPlan:
    """Greedy minimum-degree elimination order over the non-pinned vertices.

    Simulates fill-in on the interaction graph: eliminating v joins its
    current neighbors into a clique.  Pinned vertices are never eliminated
    but do count toward factor arities.
    """
    alive = set(range(H.vertex_count))
    adj = {v: set() for v in alive}
    for u, v in H.edges:
        adj[u].add(v)
        adj[v].add(u)
    remaining = alive - set(pinned)
    order = []
    arities = []
    cost = 0.0
    while remaining:
        v = min(remaining, key=lambda u: (len(adj[u]), u))
        neigh = adj[v]
        order.append(v)
        arities.append(len(neigh) + 1)
        cost += float(n) ** (len(neigh) + 1)
        for a in neigh:
            adj[a].discard(v)
        for a in neigh:
            for b in neigh:
                if a != b:
                    adj[a].add(b)
        del adj[v]
        remaining.discard(v)
    return EliminationPlan(tuple(order), tuple(arities), n, cost)


def _aligned(arr: np.ndarray, axes_vars: tuple, union: tuple, n: int) -> np.ndarray:
    """View of arr broadcastable over the union variable tuple."""
    positions = [union.index(w) for w in axes_vars]
    arr = np.transpose(arr, np.argsort(positions))
    shape = [1] * len(union)
    for p in positions:
        shape[p] = n
    return arr.reshape(shape)


def _contract(
    n: int,
    vertex_count: int,
    edges,
    B: np.ndarray,
    weights: np.ndarray,
    plan: EliminationPlan,
    budget: float,
    pinned: tuple = (),
):
    """Sum out plan.order one vertex at a time.

    weights[v] is the unary weight vector applied when vertex v is summed out.
    Pinned vertices survive; the return value is (scalar, factor-over-pinned)
    with pinned weights left to the caller.
    """
    factors = [((u, v), B) for (u, v) in edges]
    scalar = 1.0
    cells = 0.0
    for v in plan.order:
        touching = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        if not touching:
            scalar *= float(weights[v].sum())
            continue
        union = tuple(sorted(set().union(*(vars_ for vars_, _ in touching))))
        cells += float(n) ** len(union)
        if cells > budget:
            raise BudgetExceededError(
                f"contraction would touch more than {budget:g} cells"
            )
        merged = np.ones((n,) * len(union))
        for vars_, arr in touching:
            merged = merged * _aligned(arr, vars_, union, n)
        axis = union.index(v)
        summed = np.tensordot(merged, weights[v], axes=([axis], [0]))
        rest = tuple(w for w in union if w != v)
        if rest:
            factors.append((rest, summed))
        else:
            scalar *= float(summed)
    if pinned:
        pin = tuple(sorted(pinned))
        out = np.ones((n,) * len(pin))
        for vars_, arr in factors:
            out = out * _aligned(arr, vars_, pin, n)
        return scalar, out
    # all variables eliminated; any leftover factor would be a planning bug
    assert not factors
    return scalar, None


def hom_density(H: Graph, W: StepGraphon, budget: float | None = None) -> float:
    """t(H, W) by greedy variable elimination."""
    return hom_density_weighted(H, W, None, budget=budget)


def hom_density_weighted(H: Graph, W: StepGraphon, omega, budget: float | None = None) -> float:
    """Vertex-weighted density: each map picks up omega at every vertex."""
    budget = resolve_budget(budget, DEFAULT_CELL_BUDGET)
    if H.vertex_count == 0:
        return 1.0
    n = W.n
    if omega is None:
        weight = W.measures
    else:
        weight = as_step_function(omega, W).values * W.measures
    weights = {v: weight for v in range(H.vertex_count)}
    plan = plan_elimination(H, n)
    if plan.cost > budget:
        raise BudgetExceededError(
            f"elimination plan needs {plan.cost:g} cells, budget {budget:g}"
        )
    scalar, _ = _contract(n, H.vertex_count, H.edge_list, W.values, weights, plan, budget)
    return float(scalar)


def hom_density_naive(H: Graph, W: StepGraphon, budget: float | None = None) -> float:
    """t(H, W) by full enumeration of all n^v(H) block maps.

    Per-map products are formed in float64; the final accumulation is exact
    compensated summation over all maps.
    """
    budget = resolve_budget(budget, DEFAULT_ENUMERATION_BUDGET)
    if H.vertex_count == 0:
        return 1.0
    n = W.n
    vH = H.vertex_count
    total = n**vH
    if total > budget:
        raise BudgetExceededError(f"{total} maps exceed enumeration budget {budget:g}")
    B = W.values
    mu = W.measures
    edges = H.edge_list
    chunk = 1 << 18
    partials = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = [(idx // n**p) % n for p in range(vH)]
        acc = np.ones(len(idx))
        for u, v in edges:
            acc *= B[digits[u], digits[v]]
        for p in range(vH):
            acc *= mu[digits[p]]
        partials.append(math.fsum(acc.tolist()))
    return math.fsum(partials)


def hom_density_subdivided(H: Graph, s: int, W: StepGraphon, budget: float | None = None) -> float:
    """t of the s-subdivision of H, computed as t(H, W_{s+1}).

    Replacing every edge of H by a path with s internal vertices multiplies
    each edge factor by a length-(s+1) walk, so the subdivided density equals
    the density of H in the (s+1)-walk kernel.
    """
    if s < 0:
        raise ValueError("subdivision count must be nonnegative")
    if s == 0:
        return hom_density(H, W, budget=budget)
    return hom_density(H, path_power(W, s + 1), budget=budget)


def grad_hom_density(H: Graph, W: StepGraphon, budget: float | None = None) -> np.ndarray:
    """Gradient of t(H, .) in the symmetric parametrization.

    Entry (i, j) is the derivative with respect to the single parameter
    controlling both values[i][j] and values[j][i]; off-diagonal entries
    therefore accumulate both orientations of every pinned edge.
    """
    budget = resolve_budget(budget, DEFAULT_CELL_BUDGET)
    n = W.n
    mu = W.measures
    G = np.zeros((n, n))
    if H.vertex_count == 0:
        return G
    outer_mu = np.outer(mu, mu)
    weights = {v: mu for v in range(H.vertex_count)}
    for edge in H.edge_list:
        u, v = edge
        rest_edges = tuple(e for e in H.edge_list if e != edge)
        rest = Graph(H.vertex_count, frozenset(rest_edges))
        plan = plan_elimination(rest, n, pinned=(u, v))
        if plan.cost > budget:
            raise BudgetExceededError(
                f"elimination plan needs {plan.cost:g} cells, budget {budget:g}"
            )
        scalar, factor = _contract(
            n, H.vertex_count, rest_edges, W.values, weights, plan, budget, pinned=(u, v)
        )
        T = scalar * factor * outer_mu
        G += T + T.T - np.diag(np.diag(T))
    return G


def per_entry_gradient(G: np.ndarray) -> np.ndarray:
    """Convert a symmetric-parameter gradient to its per-entry form.

    The per-entry matrix E satisfies d t(B + h D) / dh = sum_ij E_ij D_ij for
    symmetric directions D.
    """
    E = G / 2.0
    np.fill_diagonal(E, np.diag(G))
    return E
