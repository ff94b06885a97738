"""Discrete joint distributions, marginals and information measures (bits)."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError

PROBABILITY_SUM_TOL = 1e-12
LOG2_E = float(np.log2(np.e))


@dataclass(frozen=True)
class JointDistribution:
    """Probability table over a product of finite alphabets.

    ``sizes`` lists the per-variable alphabet sizes; ``probabilities``
    is the flat row-major table (variable 0 varies slowest, matching
    the most-significant-bit convention for qubit outcomes).
    """

    sizes: tuple
    probabilities: np.ndarray

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 2 for s in sizes):
            raise InvalidArgumentError(f"alphabet sizes must all be >= 2, got {sizes}")
        p = np.asarray(self.probabilities, dtype=np.float64).reshape(-1)
        expected = int(np.prod(sizes))
        if p.size != expected:
            raise InvalidArgumentError(
                f"expected {expected} probabilities for sizes {sizes}, got {p.size}"
            )
        if float(p.min()) < 0.0:
            raise InvalidArgumentError(f"negative probability {float(p.min())!r}")
        total = float(p.sum())
        if abs(total - 1.0) > PROBABILITY_SUM_TOL:
            raise InvalidArgumentError(
                f"probabilities sum to {total!r}, deviates beyond {PROBABILITY_SUM_TOL}"
            )
        p.setflags(write=False)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "probabilities", p)

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def table(self) -> np.ndarray:
        """The probabilities reshaped to one axis per variable."""
        return self.probabilities.reshape(self.sizes)


def uniform_distribution(sizes) -> JointDistribution:
    sizes = tuple(int(s) for s in sizes)
    total = int(np.prod(sizes))
    return JointDistribution(sizes, np.full(total, 1.0 / total))


def marginalize(p: JointDistribution, subset) -> JointDistribution:
    """Marginal of ``p`` on the given variable indices, in their given order."""
    subset = tuple(int(i) for i in subset)
    if len(set(subset)) != len(subset):
        raise InvalidArgumentError(f"subset has repeated indices: {subset}")
    if not subset:
        raise InvalidArgumentError("subset must name at least one variable")
    if any(i < 0 or i >= p.n for i in subset):
        raise InvalidArgumentError(f"subset {subset} out of range for {p.n} variables")
    drop = tuple(i for i in range(p.n) if i not in subset)
    table = p.table.sum(axis=drop) if drop else p.table
    # sum() preserves remaining axes in ascending index order
    ascending = tuple(sorted(subset))
    order = tuple(ascending.index(i) for i in subset)
    table = np.transpose(table, order)
    flat = table.reshape(-1)
    total = float(flat.sum())
    return JointDistribution(tuple(p.sizes[i] for i in subset), flat / total)


def shannon_entropy(p: JointDistribution | np.ndarray) -> float:
    """Entropy in bits with the 0 * log 0 = 0 convention."""
    probs = p.probabilities if isinstance(p, JointDistribution) else np.asarray(p, dtype=np.float64)
    mask = probs > 0.0
    return float(-np.sum(probs[mask] * np.log2(probs[mask])))


def kl_divergence(p: JointDistribution, q: JointDistribution) -> float:
    """Relative entropy D(p || q) in bits; inf when supp(p) escapes supp(q)."""
    if p.sizes != q.sizes:
        raise InvalidArgumentError(
            f"distributions have different shapes: {p.sizes} vs {q.sizes}"
        )
    pp, qq = p.probabilities, q.probabilities
    mask = pp > 0.0
    if np.any(qq[mask] <= 0.0):
        return float("inf")
    return float(np.sum(pp[mask] * np.log2(pp[mask] / qq[mask])))


def multi_information(p: JointDistribution) -> float:
    """Total correlation: sum of single-variable entropies minus the joint entropy."""
    singles = sum(shannon_entropy(marginalize(p, (i,))) for i in range(p.n))
    return float(singles - shannon_entropy(p))


def binary_entropy(x: float) -> float:
    """H_b(x) = -x log2 x - (1-x) log2 (1-x) with the 0 log 0 = 0 convention."""
    if not 0.0 <= x <= 1.0:
        raise InvalidArgumentError(f"binary entropy argument must lie in [0, 1], got {x}")
    total = 0.0
    if x > 0.0:
        total -= x * np.log2(x)
    if x < 1.0:
        total -= (1.0 - x) * np.log2(1.0 - x)
    return float(total)


def total_variation(p: JointDistribution, q: JointDistribution) -> float:
    """Half the L1 distance between two same-shape distributions."""
    if p.sizes != q.sizes:
        raise InvalidArgumentError(
            f"distributions have different shapes: {p.sizes} vs {q.sizes}"
        )
    return float(0.5 * np.abs(p.probabilities - q.probabilities).sum())


def save_distribution(p: JointDistribution, path) -> None:
    """Write text format: first line "n s1 ... sn", then one probability per line."""
    lines = [" ".join([str(p.n)] + [str(s) for s in p.sizes])]
    lines += [f"{float(x)!r}" for x in p.probabilities]
    Path(path).write_text("\n".join(lines) + "\n")


def load_distribution(path) -> JointDistribution:
    """Read the text format written by :func:`save_distribution`."""
    raw = [ln.strip() for ln in Path(path).read_text().splitlines()]
    rows = [ln for ln in raw if ln and not ln.startswith("#")]
    if not rows:
        raise InvalidArgumentError(f"distribution file {path} is empty")
    header = rows[0].split()
    try:
        n = int(header[0])
        sizes = tuple(int(s) for s in header[1:])
    except ValueError as exc:
        raise InvalidArgumentError(
            f"distribution file {path}: header must be integers 'n s1 ... sn'"
        ) from exc
    if len(sizes) != n:
        raise InvalidArgumentError(
            f"distribution file {path}: header declares {n} variables but lists {len(sizes)} sizes"
        )
    expected = int(np.prod(sizes)) if sizes else 0
    if len(rows) - 1 != expected:
        raise InvalidArgumentError(
            f"distribution file {path}: expected {expected} probability lines, found {len(rows) - 1}"
        )
    try:
        probs = np.array([float(x) for x in rows[1:]], dtype=np.float64)
    except ValueError as exc:
        raise InvalidArgumentError(f"distribution file {path}: non-numeric probability") from exc
    return JointDistribution(sizes, probs)
