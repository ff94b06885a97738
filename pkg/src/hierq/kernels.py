"""Inner loops for iterative proportional fitting, in two backends.

The compiled backend jits a plain-Python kernel with numba; the
fallback expresses the same cycle with ``np.bincount``. Setting the
environment variable ``HIERQ_NO_NUMBA`` (to any non-empty value)
before import selects the fallback. Both backends share the packed
argument layout so callers cannot tell them apart:

    q              (M,)      float64, current table, updated in place
    buckets        (S, M)    int64, marginal cell owning each table cell
    targets        (S, Bmax) float64, target marginals, zero padded
    bucket_counts  (S,)      int64, live bucket count per subset

Each cycle sweeps all S subsets, rescales q toward each target
marginal, renormalizes, then measures the worst L1 marginal mismatch.
Returns (cycles_run, worst_mismatch, converged).
"""

from __future__ import annotations

import os

import numpy as np


def _ipf_cycles_py(q, buckets, targets, bucket_counts, tol, max_iter):
    n_subsets, m = buckets.shape
    worst = np.inf
    for cycle in range(max_iter):
        for s in range(n_subsets):
            nb = bucket_counts[s]
            cur = np.zeros(nb)
            for x in range(m):
                cur[buckets[s, x]] += q[x]
            for x in range(m):
                b = buckets[s, x]
                c = cur[b]
                if c > 0.0:
                    q[x] *= targets[s, b] / c
                elif targets[s, b] == 0.0:
                    q[x] = 0.0
                # c == 0 with a positive target is unfixable here: the
                # multiplicative update cannot grow support. Leave q as
                # is and let the caller see the residual.
        total = 0.0
        for x in range(m):
            total += q[x]
        if total > 0.0:
            for x in range(m):
                q[x] /= total
        worst = 0.0
        for s in range(n_subsets):
            nb = bucket_counts[s]
            cur = np.zeros(nb)
            for x in range(m):
                cur[buckets[s, x]] += q[x]
            l1 = 0.0
            for b in range(nb):
                d = cur[b] - targets[s, b]
                if d < 0.0:
                    d = -d
                l1 += d
            if l1 > worst:
                worst = l1
        if worst <= tol:
            return cycle + 1, worst, True
    return max_iter, worst, False


def _ipf_cycles_numpy(q, buckets, targets, bucket_counts, tol, max_iter):
    n_subsets, m = buckets.shape
    worst = np.inf
    for cycle in range(max_iter):
        for s in range(n_subsets):
            nb = int(bucket_counts[s])
            idx = buckets[s]
            cur = np.bincount(idx, weights=q, minlength=nb)
            target = targets[s, :nb]
            ratio = np.ones(nb)
            pos = cur > 0.0
            ratio[pos] = target[pos] / cur[pos]
            ratio[~pos & (target == 0.0)] = 0.0
            q *= ratio[idx]
        total = float(q.sum())
        if total > 0.0:
            q /= total
        worst = 0.0
        for s in range(n_subsets):
            nb = int(bucket_counts[s])
            cur = np.bincount(buckets[s], weights=q, minlength=nb)
            l1 = float(np.abs(cur - targets[s, :nb]).sum())
            if l1 > worst:
                worst = l1
        if worst <= tol:
            return cycle + 1, worst, True
    return max_iter, worst, False


_NUMBA_DISABLED = bool(os.environ.get("HIERQ_NO_NUMBA"))

if not _NUMBA_DISABLED:
    try:
        from numba import njit

        ipf_cycles_numba = njit(cache=True)(_ipf_cycles_py)
        _BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        ipf_cycles_numba = None
        _BACKEND = "numpy"
else:
    ipf_cycles_numba = None
    _BACKEND = "numpy"

ipf_cycles = ipf_cycles_numba if _BACKEND == "numba" else _ipf_cycles_numpy


def backend_name() -> str:
    """Which kernel implementation is active: "numba" or "numpy"."""
    return _BACKEND
