"""Information projections onto bounded-interaction-order families.

The order-k projection of a joint distribution is the maximum-entropy
distribution sharing all of its size-k marginals, found by iterative
proportional fitting (IPF) from a uniform start. The per-level
divergences between successive projections form the hierarchy
spectrum: level k measures correlation that k-variable interactions
explain but (k-1)-variable interactions cannot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .distributions import JointDistribution, kl_divergence, marginalize, uniform_distribution
from .errors import ConvergenceError, InvalidArgumentError
from .kernels import ipf_cycles

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10000
SUPPORT_TOL = 1e-10


def interaction_subsets(n: int, k: int):
    """All size-k variable subsets in lexicographic order."""
    return tuple(itertools.combinations(range(n), k))


@dataclass(frozen=True)
class ProjectionResult:
    """Outcome of one order-k information projection."""

    distribution: JointDistribution
    order: int
    iterations: int
    max_marginal_mismatch: float
    support_reduced: bool = False


@dataclass(frozen=True)
class HierarchySpectrum:
    """Per-order correlation measures I^(1)..I^(n) in bits, with diagnostics.

    ``values[k-1]`` holds I^(k); ``residuals`` and ``iterations`` carry
    the matching projection diagnostics (zero for the two exact
    endpoint levels).
    """

    values: tuple
    n: int
    residuals: tuple
    iterations: tuple

    def __post_init__(self):
        if len(self.values) != self.n:
            raise InvalidArgumentError(
                f"expected {self.n} levels, got {len(self.values)}"
            )
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "residuals", tuple(float(r) for r in self.residuals))
        object.__setattr__(self, "iterations", tuple(int(i) for i in self.iterations))

    def level(self, k: int) -> float:
        """I^(k) for 1 <= k <= n."""
        if not 1 <= k <= self.n:
            raise InvalidArgumentError(f"level k={k} out of range 1..{self.n}")
        return self.values[k - 1]

    @property
    def total(self) -> float:
        return float(sum(self.values))

    @property
    def max_residual(self) -> float:
        return float(max(self.residuals))


def _pack_problem(p: JointDistribution, subsets):
    """Flatten marginal constraints into the array layout the kernels expect."""
    sizes = p.sizes
    m = p.probabilities.size
    digits = np.indices(sizes).reshape(len(sizes), m)
    s_count = len(subsets)
    bucket_counts = np.empty(s_count, dtype=np.int64)
    buckets = np.empty((s_count, m), dtype=np.int64)
    target_rows = []
    for si, a in enumerate(subsets):
        sub_sizes = tuple(sizes[i] for i in a)
        bucket_counts[si] = int(np.prod(sub_sizes))
        buckets[si] = np.ravel_multi_index(tuple(digits[i] for i in a), sub_sizes)
        target_rows.append(marginalize(p, a).probabilities)
    targets = np.zeros((s_count, int(bucket_counts.max())))
    for si, t in enumerate(target_rows):
        targets[si, : t.size] = t
    return buckets, targets, bucket_counts


def _feasible_support(buckets, targets, bucket_counts, m) -> np.ndarray:
    """Which table cells can carry positive mass under the marginal constraints.

    One small linear program per cell: maximize q[x] over the fiber
    {q >= 0, all subset marginals equal the targets}. Cells whose
    maximum is numerically zero are forced to zero in every feasible
    point, including the projection; dropping them restores geometric
    IPF convergence when the fiber sits on the simplex boundary.
    """
    rows, rhs = [], []
    for si in range(buckets.shape[0]):
        for cell in range(int(bucket_counts[si])):
            rows.append((buckets[si] == cell).astype(np.float64))
            rhs.append(targets[si, cell])
    a_eq = np.array(rows)
    b_eq = np.array(rhs)
    keep = np.zeros(m, dtype=bool)
    cost = np.zeros(m)
    for x in range(m):
        cost[:] = 0.0
        cost[x] = -1.0
        res = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=(0.0, None), method="highs")
        # failure to solve proves nothing, so keep the cell
        keep[x] = (not res.success) or (-res.fun > SUPPORT_TOL)
    return keep


def ipf_project(
    p: JointDistribution,
    k: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ProjectionResult:
    """Project ``p`` onto the closure of the order-``k`` interaction family.

    Cycles all size-k subsets in lexicographic order, rescaling a
    uniform start toward each target marginal; convergence is measured
    as the max over subsets of the L1 marginal mismatch after a full
    cycle. If the budget runs out the feasible support is recomputed
    by linear programming and the fit restarts on the reduced support;
    this rescues boundary targets where plain IPF slows to O(1/t).
    """
    if not 1 <= k <= p.n:
        raise InvalidArgumentError(f"order k={k} out of range 1..{p.n}")
    if tol <= 0.0:
        raise InvalidArgumentError(f"tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise InvalidArgumentError(f"max_iter must be at least 1, got {max_iter}")
    if k == p.n:
        return ProjectionResult(p, k, 0, 0.0)

    subsets = interaction_subsets(p.n, k)
    buckets, targets, bucket_counts = _pack_problem(p, subsets)
    m = p.probabilities.size

    q = np.full(m, 1.0 / m)
    cycles, worst, converged = ipf_cycles(q, buckets, targets, bucket_counts, tol, max_iter)
    if converged:
        return ProjectionResult(JointDistribution(p.sizes, q), k, int(cycles), float(worst))

    keep = _feasible_support(buckets, targets, bucket_counts, m)
    if keep.all():
        raise ConvergenceError(
            f"order-{k} fit missed tol {tol} after {max_iter} cycles "
            f"(residual {worst:.3e}, no support reduction available)",
            residual=worst,
            iterations=int(cycles),
            order=k,
        )
    q = np.where(keep, 1.0, 0.0)
    q /= q.sum()
    more_cycles, worst, converged = ipf_cycles(q, buckets, targets, bucket_counts, tol, max_iter)
    total_cycles = int(cycles) + int(more_cycles)
    if not converged:
        raise ConvergenceError(
            f"order-{k} fit missed tol {tol} after {total_cycles} cycles "
            f"including a support-reduction restart (residual {worst:.3e})",
            residual=worst,
            iterations=total_cycles,
            order=k,
        )
    return ProjectionResult(
        JointDistribution(p.sizes, q), k, total_cycles, float(worst), support_reduced=True
    )


def hierarchy_spectrum(
    p: JointDistribution,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> HierarchySpectrum:
    """Full spectrum I^(k) = D(p^(k) || p^(k-1)) for k = 1..n, in bits.

    p^(0) is uniform, p^(n) is p itself, and the in-between levels come
    from :func:`ipf_project`. Convergence failures propagate with the
    offending order attached.
    """
    levels = [uniform_distribution(p.sizes)]
    residuals = [0.0]
    iterations = [0]
    for k in range(1, p.n):
        result = ipf_project(p, k, tol, max_iter)
        levels.append(result.distribution)
        residuals.append(result.max_marginal_mismatch)
        iterations.append(result.iterations)
    levels.append(p)
    residuals.append(0.0)
    iterations.append(0)

    values = tuple(kl_divergence(levels[k], levels[k - 1]) for k in range(1, p.n + 1))
    return HierarchySpectrum(
        values=values,
        n=p.n,
        residuals=tuple(residuals[1:]),
        iterations=tuple(iterations[1:]),
    )
