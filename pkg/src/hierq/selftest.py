"""Built-in consistency suite behind the `selftest` subcommand.

Each check prints one line and the runner returns True only if every
check passes. The checks mirror the structural guarantees the library
makes: agreement of the two independent projection routes, exact
pairwise reducibility of the GHZ line, per-level identities along both
family sweeps, the closed form for the first W level, and bitwise-level
agreement of the two fitting kernels.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .distributions import (
    JointDistribution,
    binary_entropy,
    kl_divergence,
    marginalize,
    total_variation,
    uniform_distribution,
)
from .maxent import max_entropy_projection
from .projection import interaction_subsets, ipf_project, _pack_problem
from .sweep import FamilySpec, default_alpha_grid, family_distribution, run_sweep

SELFTEST_SEED = 20250817


def random_distributions(count: int = 20, zero_cells: int = 2, seed: int = SELFTEST_SEED):
    """Seeded Dirichlet draws over {0,1}^3; the first few get a zeroed cell."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        probs = rng.dirichlet(np.ones(8))
        if i < zero_cells:
            probs[rng.integers(0, 8)] = 0.0
            probs = probs / probs.sum()
        out.append(JointDistribution((2, 2, 2), probs))
    return out


def ghz_pairwise_form(alpha: float) -> JointDistribution:
    """Closed-form pairwise-interaction model equal to the GHZ statistics.

    q(x) is proportional to exp(J * sum_{i<j} s_i s_j) with spins
    s_i = 1 - 2 x_i and J = ln((1 + 3 alpha)/(1 - alpha)) / 4. Valid
    for alpha < 1; at alpha = 1 the weight diverges.
    """
    j = np.log((1.0 + 3.0 * alpha) / (1.0 - alpha)) / 4.0
    energies = np.empty(8)
    for x in range(8):
        s = [1 - 2 * ((x >> (2 - i)) & 1) for i in range(3)]
        energies[x] = s[0] * s[1] + s[0] * s[2] + s[1] * s[2]
    q = np.exp(j * energies)
    return JointDistribution((2, 2, 2), q / q.sum())


def _check_oracle_equivalence():
    worst = 0.0
    for p in random_distributions():
        fitted = ipf_project(p, 2).distribution
        direct = max_entropy_projection(p, 2)
        worst = max(worst, total_variation(fitted, direct))
    return worst <= 1e-6, f"worst TV {worst:.3e} over 20 draws (2 with a zero cell)"


def _check_ghz_pairwise_membership():
    spec = FamilySpec("ghz")
    worst_model = 0.0
    worst_fit = 0.0
    for alpha in (0.3, 0.7, 0.95):
        p = family_distribution(spec, alpha)
        worst_model = max(worst_model, total_variation(p, ghz_pairwise_form(alpha)))
        worst_fit = max(worst_fit, total_variation(p, ipf_project(p, 2).distribution))
    ok = worst_model <= 1e-12 and worst_fit <= 1e-9
    return ok, f"model TV {worst_model:.3e}, refit TV {worst_fit:.3e}"


def _spectrum_identity_residuals(p: JointDistribution, tol: float = 1e-10):
    """(sum-rule, pythagorean, negativity, marginal) residuals for one p."""
    u = uniform_distribution(p.sizes)
    levels = [u]
    for k in range(1, p.n):
        levels.append(ipf_project(p, k, tol=tol).distribution)
    levels.append(p)

    values = [kl_divergence(levels[k], levels[k - 1]) for k in range(1, p.n + 1)]
    budget = float(sum(np.log2(s) for s in p.sizes))
    entropy = -float(
        np.sum(p.probabilities[p.probabilities > 0] * np.log2(p.probabilities[p.probabilities > 0]))
    )
    sum_res = abs(sum(values) - (budget - entropy))

    pyth = 0.0
    for k in range(1, p.n + 1):
        lhs = kl_divergence(p, levels[k - 1])
        rhs = kl_divergence(p, levels[k]) + values[k - 1]
        pyth = max(pyth, abs(lhs - rhs))

    neg = max(0.0, -min(values))

    marg = 0.0
    for k in range(1, p.n):
        for a in interaction_subsets(p.n, k):
            diff = marginalize(levels[k], a).probabilities - marginalize(p, a).probabilities
            marg = max(marg, float(np.abs(diff).sum()))
    return sum_res, pyth, neg, marg


def _check_sweep_invariants(family: str):
    spec = FamilySpec(family)
    table = run_sweep(spec)
    worst = [0.0, 0.0, 0.0, 0.0]
    for alpha in table.alphas:
        residuals = _spectrum_identity_residuals(family_distribution(spec, float(alpha)))
        worst = [max(w, r) for w, r in zip(worst, residuals)]
    ok = (
        worst[0] <= 1e-9
        and worst[1] <= 1e-7
        and worst[2] <= 1e-9
        and worst[3] <= 1e-10
    )
    detail = (
        f"sum {worst[0]:.2e}  pyth {worst[1]:.2e}  neg {worst[2]:.2e}  marg {worst[3]:.2e}"
    )
    return ok, detail


def _check_w_first_level_closed_form():
    table = run_sweep(FamilySpec("w"))
    worst = 0.0
    for row in table.rows:
        expected = 3.0 - 3.0 * binary_entropy(0.5 - row.alpha / 6.0)
        worst = max(worst, abs(row.spectrum.level(1) - expected))
    return worst <= 1e-9, f"worst |I(1) - closed form| {worst:.3e}"


def _check_kernel_agreement():
    rng = np.random.default_rng(SELFTEST_SEED + 1)
    active = kernels.ipf_cycles
    reference = (
        kernels._ipf_cycles_numpy if kernels.backend_name() == "numba" else kernels._ipf_cycles_py
    )
    worst = 0.0
    for _ in range(5):
        p = JointDistribution((2, 2, 2), rng.dirichlet(np.ones(8)))
        buckets, targets, bucket_counts = _pack_problem(p, interaction_subsets(3, 2))
        qa = np.full(8, 1.0 / 8.0)
        qb = qa.copy()
        active(qa, buckets, targets, bucket_counts, 1e-10, 10000)
        reference(qb, buckets, targets, bucket_counts, 1e-10, 10000)
        worst = max(worst, float(np.max(np.abs(qa - qb))))
    ok = worst <= 1e-14
    pair = f"{kernels.backend_name()} vs {'numpy' if kernels.backend_name() == 'numba' else 'python'}"
    return ok, f"max cell difference {worst:.3e} ({pair})"


def _check_born_midpoint():
    p = family_distribution(FamilySpec("ghz"), 0.5)
    expected = np.array([0.3125] + [0.0625] * 6 + [0.3125])
    worst = float(np.max(np.abs(p.probabilities - expected)))
    return worst <= 1e-12, f"max |p - closed form| {worst:.3e}"


CHECKS = (
    ("oracle-equivalence", _check_oracle_equivalence),
    ("ghz-pairwise-membership", _check_ghz_pairwise_membership),
    ("sweep-invariants-ghz", lambda: _check_sweep_invariants("ghz")),
    ("sweep-invariants-w", lambda: _check_sweep_invariants("w")),
    ("w-level1-closed-form", _check_w_first_level_closed_form),
    ("kernel-backends-agree", _check_kernel_agreement),
    ("born-ghz-midpoint", _check_born_midpoint),
)


def run_selftest(stream=None) -> bool:
    """Run every check, print one line each, return overall success."""
    import sys

    stream = stream or sys.stdout
    all_ok = True
    for name, check in CHECKS:
        ok, detail = check()
        all_ok = all_ok and ok
        status = "ok  " if ok else "FAIL"
        print(f"{name:<26s} {status}  {detail}", file=stream)
    print("selftest: " + ("all checks passed" if all_ok else "CHECKS FAILED"), file=stream)
    return all_ok
