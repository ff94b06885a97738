"""Alpha sweeps over the mixed-state families, CSV and plot-script output."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .distributions import JointDistribution, shannon_entropy
from .errors import ConvergenceError, InvalidArgumentError, NumericalError
from .measurement import LocalProjectorBasis, born_statistics, computational_basis_projectors
from .projection import DEFAULT_MAX_ITER, DEFAULT_TOL, HierarchySpectrum, hierarchy_spectrum
from .states import StateVector, ghz_state, mix_with_maximally_mixed, pure_to_density, w_state

SUM_RESIDUAL_TOL = 1e-9

CSV_HEADER = "alpha,I1,I2,I3,entropy_bits,sum_residual,projection_residual"


@dataclass(frozen=True)
class FamilySpec:
    """Which pure state to mix toward, and how to measure it.

    ``family`` is "ghz", "w" or "custom"; a custom family supplies its
    own ``state``. ``bases`` optionally overrides the per-site
    measurement (default: computational basis everywhere).
    """

    family: str
    n: int = 3
    state: StateVector | None = None
    bases: tuple | None = None

    def __post_init__(self):
        if self.family not in ("ghz", "w", "custom"):
            raise InvalidArgumentError(
                f"family must be 'ghz', 'w' or 'custom', got {self.family!r}"
            )
        if self.family == "custom":
            if self.state is None:
                raise InvalidArgumentError("custom family requires a state")
            object.__setattr__(self, "n", self.state.n)
        elif self.state is not None:
            raise InvalidArgumentError("state is only accepted with the custom family")
        if self.n < 2:
            raise InvalidArgumentError(f"need at least 2 qubits, got n={self.n}")
        if self.bases is not None:
            bases = tuple(self.bases)
            if len(bases) != self.n:
                raise InvalidArgumentError(
                    f"need one projector basis per qubit: got {len(bases)} for n={self.n}"
                )
            if not all(isinstance(b, LocalProjectorBasis) for b in bases):
                raise InvalidArgumentError("bases must be LocalProjectorBasis instances")
            object.__setattr__(self, "bases", bases)

    @property
    def label(self) -> str:
        return self.family.upper() if self.family in ("ghz", "w") else "custom"

    def pure_state(self) -> StateVector:
        if self.family == "ghz":
            return ghz_state(self.n)
        if self.family == "w":
            return w_state(self.n)
        return self.state

    def measurement_bases(self) -> tuple:
        if self.bases is not None:
            return self.bases
        return (computational_basis_projectors(),) * self.n


def family_distribution(spec: FamilySpec, alpha: float) -> JointDistribution:
    """Outcome statistics of the family member at one mixing parameter."""
    rho = mix_with_maximally_mixed(pure_to_density(spec.pure_state()), alpha)
    return born_statistics(rho, spec.measurement_bases())


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    spectrum: HierarchySpectrum
    entropy_bits: float
    sum_residual: float
    projection_residual: float


@dataclass(frozen=True)
class SweepTable:
    """Rows of per-alpha spectra, strictly ordered by alpha."""

    family: str
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        alphas = [r.alpha for r in rows]
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise InvalidArgumentError("sweep alphas must be strictly increasing")
        worst = max((r.sum_residual for r in rows), default=0.0)
        if worst > SUM_RESIDUAL_TOL:
            raise NumericalError(
                f"sweep row misses the sum rule by {worst:.3e} (tol {SUM_RESIDUAL_TOL}); "
                "tighten the fitting tolerance"
            )
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([r.alpha for r in self.rows])

    def level_values(self, k: int) -> np.ndarray:
        """I^(k) down the sweep, as an array."""
        return np.array([r.spectrum.level(k) for r in self.rows])


def default_alpha_grid() -> np.ndarray:
    """0.00 to 1.00 in steps of 0.01."""
    return np.linspace(0.0, 1.0, 101)


def sweep_row(
    spec: FamilySpec,
    alpha: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SweepRow:
    """One independent per-alpha evaluation of the full pipeline."""
    p = family_distribution(spec, alpha)
    try:
        spectrum = hierarchy_spectrum(p, tol, max_iter)
    except ConvergenceError as exc:
        raise ConvergenceError(
            f"alpha={alpha!r}: {exc}",
            residual=exc.residual,
            iterations=exc.iterations,
            order=exc.order,
            alpha=alpha,
        ) from exc
    entropy = shannon_entropy(p)
    budget = float(sum(np.log2(s) for s in p.sizes))
    sum_residual = abs(spectrum.total - (budget - entropy))
    return SweepRow(float(alpha), spectrum, entropy, sum_residual, spectrum.max_residual)


def run_sweep(
    spec: FamilySpec,
    grid=None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SweepTable:
    """Evaluate the family at every grid alpha and assemble the table."""
    grid = default_alpha_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise InvalidArgumentError("alpha grid is empty")
    if float(grid.min()) < 0.0 or float(grid.max()) > 1.0:
        raise InvalidArgumentError("alpha grid values must lie in [0, 1]")
    if np.any(np.diff(grid) <= 0.0):
        raise InvalidArgumentError("alpha grid must be strictly increasing")
    rows = tuple(sweep_row(spec, float(a), tol, max_iter) for a in grid)
    return SweepTable(spec.label, rows)


def find_interior_maximum(table: SweepTable, level: int):
    """Grid argmax of I^(level): (alpha, value, is_interior).

    Ties break toward smaller alpha; the flag is true iff the argmax
    avoids both grid endpoints.
    """
    if not table.rows:
        raise InvalidArgumentError("sweep table is empty")
    values = table.level_values(level)
    idx = int(np.argmax(values))
    is_interior = 0 < idx < len(values) - 1
    return float(table.rows[idx].alpha), float(values[idx]), is_interior


@dataclass(frozen=True)
class MonotoneReport:
    """Nondecrease verdict for one level, with the first violating step."""

    ok: bool
    level: int
    slack: float
    violation_alpha: float | None = None
    violation_drop: float | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"I({self.level}) nondecreasing within slack {self.slack:.0e}"
        return (
            f"I({self.level}) drops by {self.violation_drop:.3e} "
            f"at alpha={self.violation_alpha:g} (slack {self.slack:.0e})"
        )


def check_monotone(table: SweepTable, level: int, slack: float = 1e-9) -> MonotoneReport:
    """Is I^(level) nondecreasing along alpha, allowing tiny backward steps."""
    if not table.rows:
        raise InvalidArgumentError("sweep table is empty")
    values = table.level_values(level)
    for i in range(1, len(values)):
        drop = float(values[i - 1] - values[i])
        if drop > slack:
            return MonotoneReport(
                False, level, slack,
                violation_alpha=float(table.rows[i].alpha),
                violation_drop=drop,
            )
    return MonotoneReport(True, level, slack)


def _format_value(v: float) -> str:
    return f"{v:.12g}"


def _csv_header(table: SweepTable) -> str:
    # one I column per level; three-variable tables match CSV_HEADER
    n = table.rows[0].spectrum.n if table.rows else 3
    levels = ",".join(f"I{k}" for k in range(1, n + 1))
    return f"alpha,{levels},entropy_bits,sum_residual,projection_residual"


def render_csv(table: SweepTable) -> str:
    """The CSV text for a table: level columns, 12-digit values, final newline."""
    lines = [_csv_header(table)]
    for r in table.rows:
        cells = [f"{r.alpha:.12f}"]
        cells += [_format_value(v) for v in r.spectrum.values]
        cells += [
            _format_value(r.entropy_bits),
            _format_value(r.sum_residual),
            _format_value(r.projection_residual),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_csv(table: SweepTable, destination) -> None:
    """Write the table's CSV to a path or text file object."""
    text = render_csv(table)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    Path(destination).write_text(text)


PLOT_TEMPLATE = '''#!/usr/bin/env python3
"""Plot hierarchical correlation levels against the mixing parameter."""

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

csv_path = Path(__file__).resolve().parent / "{csv_name}"
alphas, levels = [], ([], [], [])
with open(csv_path, newline="") as fh:
    for row in csv.DictReader(fh):
        alphas.append(float(row["alpha"]))
        for i, key in enumerate(("I1", "I2", "I3")):
            levels[i].append(float(row[key]))

fig, ax = plt.subplots(figsize=(6.4, 4.2))
for i, series in enumerate(levels, start=1):
    ax.plot(alphas, series, marker="o", markersize=2.5, label=f"I({{i}})")
ax.set_xlabel("alpha")
ax.set_ylabel("information (bits)")
ax.set_title("Hierarchical correlation levels, {label} family")
ax.legend()
fig.tight_layout()
out = csv_path.with_suffix(".png")
fig.savefig(out, dpi=160)
print(f"wrote {{out}}")
'''


def render_plot_script(table: SweepTable, csv_name: str) -> str:
    return PLOT_TEMPLATE.format(csv_name=csv_name, label=table.family)


def emit_plot_script(table: SweepTable, destination, csv_name: str | None = None) -> None:
    """Write a standalone plotting script that reads the sibling CSV.

    ``csv_name`` defaults to the destination filename with a .csv
    extension, matching how the command-line sweep pairs the two files.
    """
    if csv_name is None:
        if hasattr(destination, "write"):
            raise InvalidArgumentError("csv_name is required when writing to a file object")
        csv_name = Path(destination).with_suffix(".csv").name
    text = render_plot_script(table, csv_name)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    Path(destination).write_text(text)
