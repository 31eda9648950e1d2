"""Local density of a step graphon as a standard quadratic program.

The local density d*(W) is the largest d such that every measurable set S
satisfies int_{S x S} W >= d |S|^2.  For a step graphon, writing a candidate
set through per-block masses x_i >= 0 and using scale invariance of the ratio
reduces this to minimizing x^T B x over the probability simplex.

The minimum of a quadratic over the simplex is attained either at a vertex or
at a point in the relative interior of a face where the equality-constrained
stationarity system holds.  Enumerating every support therefore yields the
exact optimum: boundary minimizers of one face reappear as interior or vertex
candidates of a sub-face, so singular or ill-conditioned stationarity systems
can be skipped safely.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .budget import resolve_budget
from .errors import BudgetExceededError
from .stepgraphon import StepGraphon

DEFAULT_MAX_EXACT_BLOCKS = 18  # 2**18 supports
CONDITION_LIMIT = 1e12
DEFAULT_GRID_BUDGET = 10**7
PGD_MAX_ITERATIONS = 10**4
PGD_STOP_TOL = 1e-10
ARMIJO_SIGMA = 1e-4
ARMIJO_FACTOR = 0.5


@dataclass(eq=False)
class LocalDensityCertificate:
    d_star: float
    witness: np.ndarray
    method: str
    gap_bound: float

    def occupancy_witness(self, measures) -> np.ndarray:
        """Set witness: per-block occupancy t with max_i t_i = 1 achieving d_star."""
        mu = np.asarray(measures, dtype=float)
        ratio = self.witness / mu
        scale = float(ratio.max())
        if scale <= 0.0:
            return np.zeros_like(self.witness)
        return np.clip(ratio / scale, 0.0, 1.0)

    def to_json(self) -> dict:
        gap = float(self.gap_bound)
        return {
            "d_star": float(self.d_star),
            "witness": [float(x) for x in self.witness],
            "method": self.method,
            # an estimate carries no gap bound; inf is not valid JSON
            "gap_bound": gap if math.isfinite(gap) else None,
        }


def project_to_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sorting method)."""
    y = np.asarray(y, dtype=float)
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, len(y) + 1)
    rho = np.nonzero(u - css / ind > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(y - theta, 0.0)


@lru_cache(maxsize=32)
def _supports_by_cardinality(n: int) -> tuple:
    """One index array per cardinality r >= 2, rows in lexicographic order."""
    out = []
    for r in range(2, n + 1):
        combos = np.array(list(itertools.combinations(range(n), r)), dtype=np.intp)
        combos.flags.writeable = False
        out.append(combos)
    return tuple(out)


def _candidate_arrays(B: np.ndarray) -> list:
    """Candidate minimizers as (values, witnesses) array pairs, in scan order:
    vertices first, then interior stationary points of each support, by
    increasing cardinality with supports lexicographic.

    Whole cardinality classes are solved as one stacked KKT system; supports
    whose system is singular or has condition number beyond CONDITION_LIMIT
    are dropped (their minimizers reappear on sub-supports)."""
    n = B.shape[0]
    out = [(np.diag(B).copy(), np.eye(n))]
    for combos in _supports_by_cardinality(n):
        m, r = combos.shape
        subs = B[combos[:, :, None], combos[:, None, :]]
        K = np.zeros((m, r + 1, r + 1))
        K[:, :r, :r] = 2.0 * subs
        K[:, :r, r] = -1.0
        K[:, r, :r] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            conds = np.linalg.cond(K)
        ok = np.isfinite(conds) & (conds <= CONDITION_LIMIT)
        if not np.any(ok):
            continue
        rhs = np.zeros((int(ok.sum()), r + 1, 1))
        rhs[:, r, 0] = 1.0
        try:
            sols = np.linalg.solve(K[ok], rhs)[:, :r, 0]
        except np.linalg.LinAlgError:
            # a row can round to exact singularity despite the condition gate
            sols = np.full((int(ok.sum()), r), -1.0)
            for row, Krow in enumerate(K[ok]):
                try:
                    sols[row] = np.linalg.solve(Krow, rhs[row])[:r, 0]
                except np.linalg.LinAlgError:
                    pass  # stays outside the simplex, filtered below
        interior = np.all(sols > 0.0, axis=1)
        if not np.any(interior):
            continue
        xs = sols[interior]
        picked = combos[ok][interior]
        vals = np.einsum("mi,mij,mj->m", xs, subs[ok][interior], xs)
        witnesses = np.zeros((len(picked), n))
        np.put_along_axis(witnesses, picked, xs, axis=1)
        out.append((vals, witnesses))
    return out


def _exact_block_limit(max_blocks: int | None) -> int:
    if max_blocks is not None:
        return int(max_blocks)
    budget = resolve_budget(None, float(2**DEFAULT_MAX_EXACT_BLOCKS))
    return max(1, int(math.floor(math.log2(budget))))


def local_density_exact(W: StepGraphon, max_blocks: int | None = None) -> LocalDensityCertificate:
    """Global minimum of x^T B x over the simplex by support enumeration.

    Deterministic: supports are scanned by cardinality then lexicographically,
    and ties keep the first witness found.
    """
    max_blocks = _exact_block_limit(max_blocks)
    n = W.n
    if n > max_blocks:
        raise BudgetExceededError(
            f"{n} blocks exceed the exact-solver limit of {max_blocks}"
        )
    B = W.values
    diag = np.diag(B)
    zero = np.nonzero(diag == 0.0)[0]
    if zero.size:
        x = np.zeros(n)
        x[zero[0]] = 1.0
        return LocalDensityCertificate(0.0, x, "exact_support_enumeration", 0.0)
    best_value = math.inf
    best_x = None
    for vals, witnesses in _candidate_arrays(B):
        i = int(np.argmin(vals))
        if vals[i] < best_value:
            best_value = float(vals[i])
            best_x = witnesses[i]
    return LocalDensityCertificate(best_value, best_x, "exact_support_enumeration", 0.0)


def local_density_subgradient(W: StepGraphon, tie_tol: float = 1e-10):
    """(per-entry subgradient matrix, certificate): averaged witness outer
    products over all global minimizers within tie_tol of the optimum.

    For symmetric directions D, the directional derivative of d* at W is
    sum_ij P_ij D_ij with P the returned matrix (exact when the minimizer is
    unique)."""
    max_blocks = _exact_block_limit(None)
    if W.n > max_blocks:
        raise BudgetExceededError(f"{W.n} blocks exceed the exact-solver limit of {max_blocks}")
    n = W.n
    B = W.values
    diag = np.diag(B)
    zero = np.nonzero(diag == 0.0)[0]
    if zero.size:
        # every zero-diagonal vertex certifies 0; average over all of them
        witnesses = []
        for i in zero:
            x = np.zeros(n)
            x[i] = 1.0
            witnesses.append(x)
        cert = LocalDensityCertificate(0.0, witnesses[0], "exact_support_enumeration", 0.0)
    else:
        found = _candidate_arrays(B)
        best_value = math.inf
        best_x = None
        for vals, xs in found:
            i = int(np.argmin(vals))
            if vals[i] < best_value:
                best_value = float(vals[i])
                best_x = xs[i]
        cert = LocalDensityCertificate(best_value, best_x, "exact_support_enumeration", 0.0)
        witnesses = []
        seen = set()
        for vals, xs in found:
            for j in np.nonzero(vals <= best_value + tie_tol)[0]:
                key = tuple(np.round(xs[j], 10))
                if key not in seen:
                    seen.add(key)
                    witnesses.append(xs[j])
    P = np.zeros((W.n, W.n))
    for x in witnesses:
        P += np.outer(x, x)
    P /= len(witnesses)
    return P, cert


def _pgd(B: np.ndarray, x0: np.ndarray):
    x = x0
    fx = float(x @ B @ x)
    for _ in range(PGD_MAX_ITERATIONS):
        g = 2.0 * (B @ x)
        mapped = project_to_simplex(x - g)
        if float(np.linalg.norm(x - mapped)) <= PGD_STOP_TOL:
            break
        eta = 1.0
        accepted = False
        while eta > 1e-14:
            xn = project_to_simplex(x - eta * g)
            step = xn - x
            fn = float(xn @ B @ xn)
            # the strict inequality matters: once the sufficient-decrease term
            # rounds to zero the test would accept ties forever without it
            if fn < fx and fn <= fx - (ARMIJO_SIGMA / eta) * float(step @ step):
                accepted = True
                break
            eta *= ARMIJO_FACTOR
        if not accepted:
            break
        x, fx = xn, fn
    return fx, x


def local_density_estimate(W: StepGraphon, starts: int = 20, seed: int = 0) -> LocalDensityCertificate:
    """Upper bound on d* by projected gradient descent with Armijo steps.

    Runs from the barycenter, every vertex, every pair midpoint, and `starts`
    Dirichlet samples; the extra deterministic starts make small instances
    agree with the exact solver in practice.  Deterministic for a fixed seed.
    """
    n = W.n
    B = W.values
    rng = np.random.default_rng(seed)
    points = [np.full(n, 1.0 / n)]
    for i in range(n):
        x = np.zeros(n)
        x[i] = 1.0
        points.append(x)
    for i, j in itertools.combinations(range(n), 2):
        x = np.zeros(n)
        x[i] = x[j] = 0.5
        points.append(x)
    for _ in range(starts):
        points.append(rng.dirichlet(np.ones(n)))
    best_value = math.inf
    best_x = None
    for x0 in points:
        value, x = _pgd(B, x0)
        if value < best_value:
            best_value = value
            best_x = x
    return LocalDensityCertificate(best_value, best_x, "projected_gradient", math.inf)


def _simplex_lattice(n: int, resolution: int) -> np.ndarray:
    if n == 1:
        return np.array([[resolution]], dtype=np.int64)
    rows = []
    for first in range(resolution + 1):
        rest = _simplex_lattice(n - 1, resolution - first)
        block = np.empty((rest.shape[0], n), dtype=np.int64)
        block[:, 0] = first
        block[:, 1:] = rest
        rows.append(block)
    return np.vstack(rows)


def _grid_minimum(W: StepGraphon, resolution: int, budget: float):
    n = W.n
    count = math.comb(resolution + n - 1, n - 1)
    if count > budget:
        raise BudgetExceededError(
            f"{count} grid points exceed budget {budget:g}"
        )
    X = _simplex_lattice(n, resolution) / float(resolution)
    vals = np.einsum("ki,ki->k", X @ W.values, X)
    idx = int(np.argmin(vals))
    return float(vals[idx]), X[idx]


def local_density_grid_oracle(W: StepGraphon, resolution: int, budget: float | None = None) -> float:
    """Minimum of x^T B x over the simplex lattice with the given resolution.

    A brute-force upper bound used to sanity-check the exact solver."""
    if resolution < 1:
        raise ValueError("resolution must be positive")
    budget = resolve_budget(budget, DEFAULT_GRID_BUDGET)
    value, _ = _grid_minimum(W, resolution, budget)
    return value


def grid_certificate(W: StepGraphon, resolution: int, budget: float | None = None) -> LocalDensityCertificate:
    budget = resolve_budget(budget, DEFAULT_GRID_BUDGET)
    value, x = _grid_minimum(W, resolution, budget)
    return LocalDensityCertificate(value, x, "grid", math.inf)


def is_locally_dense(W: StepGraphon, d: float, tol: float = 1e-9) -> bool:
    """Whether d*(W) >= d - tol, decided by the exact solver."""
    return local_density_exact(W).d_star >= d - tol
