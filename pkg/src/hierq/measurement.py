"""Local projective measurements and their outcome statistics.

Each qubit gets a two-outcome rank-1 projector pair; the joint outcome
distribution over the 2**n outcome tuples follows the trace rule
p(o1..on) = Tr(rho * P_{o1} x ... x P_{on}).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import JointDistribution
from .errors import InvalidArgumentError, NumericalError
from .states import DensityOperator
from .validation import CheckResult, ValidationReport

PROJECTOR_TOL = 1e-12
UNITARITY_TOL = 1e-10
NEGATIVE_PROBABILITY_TOL = 1e-12


@dataclass(frozen=True)
class LocalProjectorBasis:
    """A complete pair of orthogonal rank-1 projectors on one qubit."""

    projectors: tuple

    def __post_init__(self):
        if len(self.projectors) != 2:
            raise InvalidArgumentError(
                f"expected 2 projectors per qubit, got {len(self.projectors)}"
            )
        mats = []
        for p in self.projectors:
            m = np.asarray(p, dtype=np.complex128)
            if m.shape != (2, 2):
                raise InvalidArgumentError(f"projector must be 2x2, got shape {m.shape}")
            m.setflags(write=False)
            mats.append(m)
        report = validate_projector_set(mats)
        if not report.passed:
            bad = ", ".join(str(c) for c in report.failures())
            raise InvalidArgumentError(f"invalid projector pair: {bad}")
        object.__setattr__(self, "projectors", tuple(mats))

    def __getitem__(self, outcome: int) -> np.ndarray:
        return self.projectors[outcome]

    def is_diagonal(self) -> bool:
        return all(
            float(np.max(np.abs(p - np.diag(np.diagonal(p))))) <= PROJECTOR_TOL
            for p in self.projectors
        )


def validate_projector_set(projectors) -> ValidationReport:
    """Diagnose a candidate projector set without raising on failure.

    Checks each matrix for Hermiticity, idempotence and unit rank, the
    set for completeness (sum = identity) and pairwise orthogonality.
    Accepts any number of 2x2 matrices so that incomplete or redundant
    sets show up as failed checks rather than exceptions.
    """
    mats = [np.asarray(p, dtype=np.complex128) for p in projectors]
    if not mats or any(m.shape != (2, 2) for m in mats):
        raise InvalidArgumentError("expected one or more 2x2 matrices")

    herm = max(float(np.max(np.abs(m - m.conj().T))) for m in mats)
    idem = max(float(np.max(np.abs(m @ m - m))) for m in mats)
    rank = max(float(abs(np.trace(m) - 1.0)) for m in mats)
    comp = float(np.max(np.abs(sum(mats) - np.eye(2))))
    orth = 0.0
    for i, a in enumerate(mats):
        for b in mats[i + 1 :]:
            orth = max(orth, float(np.max(np.abs(a @ b))))

    checks = (
        CheckResult("hermiticity", herm <= PROJECTOR_TOL, herm, PROJECTOR_TOL),
        CheckResult("idempotence", idem <= PROJECTOR_TOL, idem, PROJECTOR_TOL),
        CheckResult("rank-one", rank <= PROJECTOR_TOL, rank, PROJECTOR_TOL),
        CheckResult("completeness", comp <= PROJECTOR_TOL, comp, PROJECTOR_TOL),
        CheckResult("orthogonality", orth <= PROJECTOR_TOL, orth, PROJECTOR_TOL),
    )
    return ValidationReport(f"projector set ({len(mats)} matrices)", checks)


def computational_basis_projectors() -> LocalProjectorBasis:
    """|0><0| and |1><1| on a single qubit."""
    p0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
    p1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=np.complex128)
    return LocalProjectorBasis((p0, p1))


def rotated_basis_projectors(u: np.ndarray) -> LocalProjectorBasis:
    """Projectors onto the columns of a single-qubit unitary ``u``.

    Outcome k projects onto u|k>, i.e. P_k = u |k><k| u^dagger.
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise InvalidArgumentError(f"unitary must be 2x2, got shape {u.shape}")
    residual = float(np.max(np.abs(u.conj().T @ u - np.eye(2))))
    if residual > UNITARITY_TOL:
        raise InvalidArgumentError(
            f"matrix is not unitary: max |u^H u - I| = {residual:.3e}"
        )
    cols = (u[:, 0], u[:, 1])
    return LocalProjectorBasis(tuple(np.outer(c, c.conj()) for c in cols))


def bloch_rotation(theta: float, phi: float, lam: float = 0.0) -> np.ndarray:
    """Single-qubit unitary with Euler-style angles.

    u = [[cos(t/2), -e^{i lam} sin(t/2)],
         [e^{i phi} sin(t/2), e^{i (phi + lam)} cos(t/2)]]
    which sends |0> to the Bloch vector (theta, phi).
    """
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=np.complex128,
    )


def _born_diagonal(rho: DensityOperator) -> np.ndarray:
    return rho.diagonal()


def _born_trace(rho: DensityOperator, bases) -> np.ndarray:
    """General trace-rule contraction via einsum over per-site indices.

    With rho reshaped to one row and one column axis per qubit,
    p[o1..on] = sum_{r, c} rho[r, c] * prod_s P_{o_s}[c_s, r_s].
    """
    n = rho.n
    rho_t = rho.matrix.reshape((2,) * (2 * n))
    # stack each site's projector pair as an (outcome, row, col) tensor
    site_tensors = [np.stack(b.projectors) for b in bases]

    # rho axes: rows r_1..r_n then cols c_1..c_n; projector s contracts
    # its row index with c_s and its column index with r_s, leaving o_s.
    rho_axes = list(range(2 * n))
    operands = [rho_t, rho_axes]
    out_axes = []
    for s in range(n):
        o_s = 2 * n + s
        out_axes.append(o_s)
        operands += [site_tensors[s], [o_s, n + s, s]]
    operands.append(out_axes)
    return np.real(np.einsum(*operands))


def born_statistics(rho: DensityOperator, bases, method: str = "auto") -> JointDistribution:
    """Joint outcome distribution of local projective measurements on ``rho``.

    ``bases`` holds one :class:`LocalProjectorBasis` per qubit. ``method``
    selects the contraction: "trace" runs the general einsum rule,
    "diagonal" reads computational-basis populations off the diagonal
    (valid only when every basis is diagonal), "auto" picks for you.
    Tiny negative entries from roundoff are clamped and the result is
    renormalized; anything below -1e-12 raises ``NumericalError``.
    """
    bases = tuple(bases)
    if len(bases) != rho.n:
        raise InvalidArgumentError(
            f"need one projector basis per qubit: got {len(bases)} for n={rho.n}"
        )
    all_diagonal = all(b.is_diagonal() for b in bases)
    if method == "auto":
        method = "diagonal" if all_diagonal else "trace"
    if method == "diagonal":
        if not all_diagonal:
            raise InvalidArgumentError(
                "diagonal method requires computational-basis projectors on every qubit"
            )
        probs = _born_diagonal(rho)
    elif method == "trace":
        probs = _born_trace(rho, bases).reshape(-1)
    else:
        raise InvalidArgumentError(f"unknown method {method!r}")

    worst = float(probs.min())
    if worst < -NEGATIVE_PROBABILITY_TOL:
        raise NumericalError(
            f"outcome probability {worst!r} below tolerance -{NEGATIVE_PROBABILITY_TOL}"
        )
    probs = np.clip(probs, 0.0, None)
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-9:
        raise NumericalError(f"outcome probabilities sum to {total!r}, expected 1")
    return JointDistribution((2,) * rho.n, probs / total)
