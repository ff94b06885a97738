"""Command-line interface: sweep, spectrum, validate and selftest.

Exit codes: 0 success, 1 invalid arguments or failed validation,
2 convergence or numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .distributions import load_distribution, shannon_entropy
from .errors import ConvergenceError, InvalidArgumentError, NumericalError
from .measurement import bloch_rotation, rotated_basis_projectors, validate_projector_set
from .projection import hierarchy_spectrum
from .selftest import run_selftest
from .states import load_state_file, pure_to_density, read_state_amplitudes, validate_density, validate_state
from .sweep import (
    FamilySpec,
    emit_csv,
    emit_plot_script,
    family_distribution,
    render_csv,
    run_sweep,
)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_angles(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise InvalidArgumentError(
            f"rotation must be three comma-separated angles 'theta,phi,lambda', got {text!r}"
        )
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise InvalidArgumentError(f"non-numeric rotation angle in {text!r}") from exc


def _bases_from_args(args, n: int):
    rotation = getattr(args, "rotation", None)
    rotations = getattr(args, "rotations", None)
    if rotation and rotations:
        raise InvalidArgumentError("--rotation and --rotations are mutually exclusive")
    if rotation:
        u = bloch_rotation(*_parse_angles(rotation))
        return (rotated_basis_projectors(u),) * n
    if rotations:
        chunks = [c for c in rotations.split(";") if c.strip()]
        if len(chunks) != n:
            raise InvalidArgumentError(
                f"--rotations must give {n} semicolon-separated angle triples, got {len(chunks)}"
            )
        return tuple(rotated_basis_projectors(bloch_rotation(*_parse_angles(c))) for c in chunks)
    return None


def _family_from_args(args) -> FamilySpec:
    state_file = getattr(args, "state_file", None)
    if state_file:
        if args.family not in (None, "custom"):
            raise InvalidArgumentError("--state-file implies --family custom")
        psi = load_state_file(state_file)
        return FamilySpec("custom", state=psi, bases=_bases_from_args(args, psi.n))
    family = args.family or "ghz"
    if family == "custom":
        raise InvalidArgumentError("--family custom requires --state-file")
    return FamilySpec(family, n=args.n, bases=_bases_from_args(args, args.n))


def _alpha_grid_from_args(args) -> np.ndarray:
    if args.alphas:
        try:
            values = [float(a) for a in args.alphas.split(",") if a.strip()]
        except ValueError as exc:
            raise InvalidArgumentError(f"non-numeric alpha in {args.alphas!r}") from exc
        if not values:
            raise InvalidArgumentError("--alphas lists no values")
        return np.array(values, dtype=np.float64)
    if args.alpha_count < 1:
        raise InvalidArgumentError(f"--alpha-count must be at least 1, got {args.alpha_count}")
    if args.alpha_count == 1:
        return np.array([args.alpha_start], dtype=np.float64)
    return np.linspace(args.alpha_start, args.alpha_stop, args.alpha_count)


def _cmd_sweep(args) -> int:
    spec = _family_from_args(args)
    table = run_sweep(spec, _alpha_grid_from_args(args), tol=args.tol, max_iter=args.max_iter)
    if args.csv:
        emit_csv(table, args.csv)
        print(f"wrote {args.csv}")
    else:
        sys.stdout.write(render_csv(table))
    if args.plot_script is not False:
        if args.plot_script is True:
            if not args.csv:
                raise InvalidArgumentError("--plot-script without a path requires --csv")
            script_path = Path(args.csv).with_suffix(".py")
            csv_name = Path(args.csv).name
        else:
            script_path = Path(args.plot_script)
            csv_name = Path(args.csv).name if args.csv else None
            if csv_name is None:
                csv_name = script_path.with_suffix(".csv").name
        emit_plot_script(table, script_path, csv_name=csv_name)
        print(f"wrote {script_path}")
    return 0


def _print_spectrum(label: str, spectrum, entropy: float, budget: float) -> None:
    sum_residual = abs(spectrum.total - (budget - entropy))
    print(label)
    for k in range(1, spectrum.n + 1):
        print(f"I({k}) = {spectrum.level(k):.12g}")
    print(f"entropy_bits = {entropy:.12g}")
    print(f"sum_residual = {sum_residual:.12g}")
    print(f"projection_residual = {spectrum.max_residual:.12g}")


def _cmd_spectrum(args) -> int:
    if args.dist_file:
        if args.alpha is not None:
            raise InvalidArgumentError("--dist-file and --alpha are mutually exclusive")
        p = load_distribution(args.dist_file)
        label = f"distribution {args.dist_file}"
    else:
        if args.alpha is None:
            raise InvalidArgumentError("spectrum needs --alpha or --dist-file")
        if not 0.0 <= args.alpha <= 1.0:
            raise InvalidArgumentError(f"--alpha must lie in [0, 1], got {args.alpha}")
        spec = _family_from_args(args)
        p = family_distribution(spec, args.alpha)
        label = f"family {spec.label}  alpha {args.alpha:g}"
    spectrum = hierarchy_spectrum(p, tol=args.tol, max_iter=args.max_iter)
    budget = float(sum(np.log2(s) for s in p.sizes))
    _print_spectrum(label, spectrum, shannon_entropy(p), budget)
    return 0


def _cmd_validate(args) -> int:
    if not args.state_file and not args.rotation:
        raise InvalidArgumentError("validate needs --state-file and/or --rotation")
    all_passed = True
    if args.state_file:
        amps = read_state_amplitudes(args.state_file)
        state_report = validate_state(amps)
        print(state_report)
        all_passed = all_passed and state_report.passed
        if state_report.passed:
            density_report = validate_density(pure_to_density(amps).matrix)
            print(density_report)
            all_passed = all_passed and density_report.passed
    if args.rotation:
        u = bloch_rotation(*_parse_angles(args.rotation))
        basis = rotated_basis_projectors(u)
        report = validate_projector_set(basis.projectors)
        print(report)
        all_passed = all_passed and report.passed
    return 0 if all_passed else 1


def _cmd_selftest(args) -> int:
    return 0 if run_selftest() else 1


def _add_family_flags(parser) -> None:
    parser.add_argument("--family", choices=("ghz", "w", "custom"), default=None,
                        help="built-in family (default ghz) or custom with --state-file")
    parser.add_argument("--state-file", default=None,
                        help="text file with a custom pure state (line 1: qubit count; then 're im' rows)")
    parser.add_argument("--n", type=int, default=3, help="qubit count for built-in families (default 3)")
    parser.add_argument("--rotation", default=None, metavar="T,P,L",
                        help="measure every site in the basis rotated by these Euler angles")
    parser.add_argument("--rotations", default=None, metavar="T,P,L;...",
                        help="per-site rotation angles, semicolon separated")


def _add_fit_flags(parser) -> None:
    parser.add_argument("--tol", type=float, default=1e-10,
                        help="fitting convergence tolerance (default 1e-10)")
    parser.add_argument("--max-iter", type=int, default=10000,
                        help="fitting cycle budget per projection (default 10000)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hierq",
                     description="Hierarchical correlation spectra of local measurement statistics")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_sweep = sub.add_parser("sweep", help="evaluate the spectrum across a mixing-parameter grid")
    _add_family_flags(p_sweep)
    _add_fit_flags(p_sweep)
    p_sweep.add_argument("--alpha-start", type=float, default=0.0)
    p_sweep.add_argument("--alpha-stop", type=float, default=1.0)
    p_sweep.add_argument("--alpha-count", type=int, default=101)
    p_sweep.add_argument("--alphas", default=None,
                         help="explicit comma-separated alpha values (overrides start/stop/count)")
    p_sweep.add_argument("--csv", default=None, help="CSV output path (default: stdout)")
    p_sweep.add_argument("--plot-script", nargs="?", default=False, const=True, metavar="PATH",
                         help="also write a plotting script (default name: CSV path with .py)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_spec = sub.add_parser("spectrum", help="spectrum of one family member or distribution file")
    _add_family_flags(p_spec)
    _add_fit_flags(p_spec)
    p_spec.add_argument("--alpha", type=float, default=None, help="mixing parameter in [0, 1]")
    p_spec.add_argument("--dist-file", default=None,
                        help="text file with an explicit distribution (header: 'n s1 ... sn')")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_val = sub.add_parser("validate", help="diagnostic reports for states and projector sets")
    p_val.add_argument("--state-file", default=None, help="state file to check")
    p_val.add_argument("--rotation", default=None, metavar="T,P,L",
                       help="Euler angles; checks the projector pair they generate")
    p_val.set_defaults(func=_cmd_validate)

    p_self = sub.add_parser("selftest", help="run the built-in consistency suite")
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        print("hierq: error: a subcommand is required", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except InvalidArgumentError as exc:
        print(f"hierq: error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"hierq: convergence failure: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"hierq: numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hierq: i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
