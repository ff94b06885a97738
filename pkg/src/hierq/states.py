"""Pure states and density operators for small multi-qubit systems.

Index convention used throughout the package: qubit 0 is the most
significant bit of a computational-basis index, so for three qubits
|001> sits at flat index 1 and |100> at flat index 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError
from .validation import CheckResult, ValidationReport

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


def _qubit_count_for(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise InvalidArgumentError(f"dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state of ``n`` qubits, amplitudes in flat-index order."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.n < 1:
            raise InvalidArgumentError(f"qubit count must be positive, got {self.n}")
        if amps.size != 2**self.n:
            raise InvalidArgumentError(
                f"expected {2**self.n} amplitudes for n={self.n}, got {amps.size}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise InvalidArgumentError(
                f"state not normalized: |psi|^2 = {norm_sq!r} deviates beyond {NORM_TOL}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite matrix on ``n`` qubits."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidArgumentError(f"density matrix must be square, got shape {m.shape}")
        if m.shape[0] != 2**self.n:
            raise InvalidArgumentError(
                f"matrix dimension {m.shape[0]} does not match n={self.n}"
            )
        report = validate_density(m)
        if not report.passed:
            bad = ", ".join(str(c) for c in report.failures())
            raise InvalidArgumentError(f"invalid density operator: {bad}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return 2**self.n

    def diagonal(self) -> np.ndarray:
        """Real part of the diagonal (the computational-basis populations)."""
        return np.real(np.diagonal(self.matrix)).copy()


def ghz_state(n: int) -> StateVector:
    """Equal superposition of the all-zeros and all-ones basis states."""
    if n < 2:
        raise InvalidArgumentError(f"ghz_state requires n >= 2, got {n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return StateVector(n, amps)


def w_state(n: int) -> StateVector:
    """Equal superposition of the n single-excitation basis states."""
    if n < 2:
        raise InvalidArgumentError(f"w_state requires n >= 2, got {n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    for qubit in range(n):
        amps[1 << (n - 1 - qubit)] = 1.0 / np.sqrt(n)
    return StateVector(n, amps)


def pure_to_density(psi: StateVector | np.ndarray) -> DensityOperator:
    """Outer product |psi><psi| as a validated density operator.

    Accepts either a ``StateVector`` or a raw amplitude array; raw input
    is normalized-checked through the ``StateVector`` constructor.
    """
    if not isinstance(psi, StateVector):
        amps = np.asarray(psi, dtype=np.complex128).reshape(-1)
        psi = StateVector(_qubit_count_for(amps.size), amps)
    m = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityOperator(psi.n, m)


def maximally_mixed(n: int) -> DensityOperator:
    """Identity / 2**n; the alpha = 0 endpoint of both mixed-state families."""
    if n < 1:
        raise InvalidArgumentError(f"qubit count must be positive, got {n}")
    dim = 2**n
    return DensityOperator(n, np.eye(dim, dtype=np.complex128) / dim)


def mix_with_maximally_mixed(rho: DensityOperator, alpha: float) -> DensityOperator:
    """Convex combination alpha * rho + (1 - alpha) * identity / 2**n."""
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must lie in [0, 1], got {alpha}")
    dim = rho.dim
    m = alpha * rho.matrix + (1.0 - alpha) / dim * np.eye(dim, dtype=np.complex128)
    return DensityOperator(rho.n, m)


def validate_density(matrix: DensityOperator | np.ndarray) -> ValidationReport:
    """Check Hermiticity, unit trace and positive semidefiniteness.

    Works on raw matrices so that deliberately invalid inputs can be
    diagnosed; failures are report entries, not exceptions. Raises only
    for shapes that are not square with power-of-two dimension.
    """
    if isinstance(matrix, DensityOperator):
        matrix = matrix.matrix
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {m.shape}")
    _qubit_count_for(m.shape[0])

    herm_residual = float(np.max(np.abs(m - m.conj().T)))
    trace_residual = float(abs(np.trace(m) - 1.0))
    # eigvalsh needs an exactly Hermitian input; symmetrize first
    eigenvalues = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    min_eig = float(eigenvalues[0])
    psd_residual = max(0.0, -min_eig)

    checks = (
        CheckResult("hermiticity", herm_residual <= HERMITICITY_TOL, herm_residual, HERMITICITY_TOL),
        CheckResult("unit-trace", trace_residual <= TRACE_TOL, trace_residual, TRACE_TOL),
        CheckResult("psd", psd_residual <= PSD_TOL, psd_residual, PSD_TOL),
    )
    return ValidationReport(f"density matrix ({m.shape[0]}x{m.shape[0]})", checks)


def validate_state(amplitudes) -> ValidationReport:
    """Report the normalization residual of a raw amplitude array.

    Raises only for lengths that are not a power of two; the norm check
    is a report entry so that near-miss states can be diagnosed.
    """
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    _qubit_count_for(amps.size)
    norm_residual = float(abs(np.sum(np.abs(amps) ** 2) - 1.0))
    checks = (CheckResult("normalization", norm_residual <= NORM_TOL, norm_residual, NORM_TOL),)
    return ValidationReport(f"state vector ({amps.size} amplitudes)", checks)


def save_state_file(psi: StateVector, path) -> None:
    """Write a state vector as text: first line n, then one "re im" pair per row."""
    lines = [str(psi.n)]
    lines += [f"{float(a.real)!r} {float(a.imag)!r}" for a in psi.amplitudes]
    Path(path).write_text("\n".join(lines) + "\n")


def read_state_amplitudes(path) -> np.ndarray:
    """Parse the state text format without enforcing normalization."""
    raw = [ln.strip() for ln in Path(path).read_text().splitlines()]
    rows = [ln for ln in raw if ln and not ln.startswith("#")]
    if not rows:
        raise InvalidArgumentError(f"state file {path} is empty")
    try:
        n = int(rows[0])
    except ValueError as exc:
        raise InvalidArgumentError(f"state file {path}: first line must be the qubit count") from exc
    if len(rows) - 1 != 2**n:
        raise InvalidArgumentError(
            f"state file {path}: expected {2**n} amplitude lines, found {len(rows) - 1}"
        )
    amps = np.zeros(2**n, dtype=np.complex128)
    for i, line in enumerate(rows[1:]):
        parts = line.split()
        if len(parts) != 2:
            raise InvalidArgumentError(
                f"state file {path}: line {i + 2} must hold two floats (re, im)"
            )
        amps[i] = complex(float(parts[0]), float(parts[1]))
    return amps


def load_state_file(path) -> StateVector:
    """Read the text format written by :func:`save_state_file`."""
    amps = read_state_amplitudes(path)
    return StateVector(_qubit_count_for(amps.size), amps)
