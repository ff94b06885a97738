"""Direct maximum-entropy solver used to cross-check iterative fitting.

This route poses the projection as a convex program (maximize entropy
subject to explicit marginal-matching equality constraints) and hands
it to an interior-point solver. It shares no algorithmic machinery
with the multiplicative-scaling path in :mod:`hierq.projection`, which
makes agreement between the two a meaningful check.
"""

from __future__ import annotations

import itertools
import warnings

import cvxpy as cp
import numpy as np

from .distributions import JointDistribution, marginalize, uniform_distribution
from .errors import InvalidArgumentError, NumericalError

ORACLE_MARGINAL_TOL = 1e-7


def _subset_marginal_matrix(sizes, subset) -> np.ndarray:
    """0/1 matrix mapping the flat joint table to the flat marginal on subset."""
    m = int(np.prod(sizes))
    sub_sizes = tuple(sizes[i] for i in subset)
    nb = int(np.prod(sub_sizes))
    digits = np.indices(sizes).reshape(len(sizes), m)
    rows = np.ravel_multi_index(tuple(digits[i] for i in subset), sub_sizes)
    mat = np.zeros((nb, m))
    mat[rows, np.arange(m)] = 1.0
    return mat


def _solve(q, objective, constraints):
    problem = cp.Problem(objective, constraints)
    try:
        # near-optimal terminations are fine: the caller re-verifies the
        # constraints, so the solver's own inaccuracy warning is noise
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            problem.solve(
                solver=cp.CLARABEL,
                tol_gap_abs=1e-12,
                tol_gap_rel=1e-12,
                tol_feas=1e-12,
            )
    except cp.error.SolverError:
        problem = None
    if problem is not None and problem.status in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        return np.asarray(q.value, dtype=np.float64).reshape(-1)
    # second attempt with a first-order solver before giving up
    problem = cp.Problem(objective, constraints)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        problem.solve(solver=cp.SCS, eps=1e-11, max_iters=200_000)
    if problem.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        raise NumericalError(f"maximum-entropy solve failed with status {problem.status}")
    return np.asarray(q.value, dtype=np.float64).reshape(-1)


def max_entropy_projection(p: JointDistribution, k: int) -> JointDistribution:
    """Maximum-entropy distribution matching all size-``k`` marginals of ``p``.

    For ``k == 0`` the answer is the uniform distribution and for
    ``k == n`` the constraints pin the full table; both are returned
    without invoking the solver. The solver output is verified against
    the marginal constraints before being accepted.
    """
    if not 0 <= k <= p.n:
        raise InvalidArgumentError(f"order k={k} out of range for {p.n} variables")
    if k == 0:
        return uniform_distribution(p.sizes)
    if k == p.n:
        return p

    m = p.probabilities.size
    subsets = list(itertools.combinations(range(p.n), k))
    mats = [_subset_marginal_matrix(p.sizes, a) for a in subsets]
    targets = [marginalize(p, a).probabilities for a in subsets]

    q = cp.Variable(m, nonneg=True)
    constraints = [cp.sum(q) == 1.0]
    constraints += [mat @ q == t for mat, t in zip(mats, targets)]
    values = _solve(q, cp.Maximize(cp.sum(cp.entr(q))), constraints)

    values = np.clip(values, 0.0, None)
    values /= values.sum()
    worst = max(
        float(np.abs(mat @ values - t).sum()) for mat, t in zip(mats, targets)
    )
    if worst > ORACLE_MARGINAL_TOL:
        raise NumericalError(
            f"maximum-entropy solution misses marginals by {worst:.3e} (tol {ORACLE_MARGINAL_TOL})"
        )
    return JointDistribution(p.sizes, values)
