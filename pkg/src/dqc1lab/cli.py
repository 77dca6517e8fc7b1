"""Command-line front end.

Subcommands: gqd, discord2, landscape, haar-study, shots, jones-demo.
Every run prints a short text summary to stdout and emits a
machine-readable report (JSON, or CSV where a table makes sense) either
to --output or to stdout.  Relative --output paths resolve under the
DQC1LAB_OUTDIR environment variable when it is set.

Exit codes: 0 success, 2 input error, 3 oracle-residual breach,
4 precision warning escalated by --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings

import numpy as np

from . import gates
from .dqc1 import build_dqc1_state
from .errors import Dqc1LabError, ParameterError
from .geometric import (
    g_gradient,
    gqd_closed_form,
    gqd_report,
    landscape_grid,
    optimal_phi0,
    tau2,
)
from .entropic import qd2_report
from .haar import (
    gqd_decay_slope,
    sample_haar_unitary,
    study_to_csv,
    study_to_json,
    typicality_study,
)
from .linalg import UNITARITY_ATOL, UnitaryOperator, matrix_from_json, matrix_to_json
from .shots import estimate_gqd_from_shots, simulate_readout

GQD_RESIDUAL_LIMIT = 1e-9
QD_RESIDUAL_LIMIT = 1e-6
THERMAL_ALPHA = 1.4e-5

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESIDUAL = 3
EXIT_PRECISION = 4

BUILTINS = (
    "identity",
    "pauli-x",
    "pauli-y",
    "pauli-z",
    "hadamard",
    "rotation",
    "jones",
    "haar",
)


def _add_unitary_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", choices=BUILTINS, help="named builtin unitary")
    src.add_argument("--file", help="path to a matrix JSON file")
    p.add_argument("--n", type=int, default=1, help="qubits for identity/haar builtins")
    p.add_argument("--angle", type=float, help="rotation angle in radians")
    p.add_argument("--axis", default="z", help="rotation axis: x|y|z or 'rx,ry,rz'")
    p.add_argument("--phase", type=float, default=0.0, help="global phase in radians")
    p.add_argument("--haar-seed", type=int, default=0, help="seed for the haar builtin")


def _add_output_args(p: argparse.ArgumentParser, formats=("json",)):
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--strict", action="store_true", help="escalate precision warnings")


def resolve_unitary(args) -> UnitaryOperator:
    if args.file:
        try:
            with open(args.file) as fh:
                matrix = matrix_from_json(fh.read())
        except OSError as exc:
            raise ParameterError(f"cannot read {args.file}: {exc}") from exc
        m = np.asarray(matrix)
        defect = float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))
        if defect > UNITARITY_ATOL:
            raise ParameterError(
                f"{args.file} is not unitary: max|U^dag U - I| = {defect:.3e}"
            )
        return UnitaryOperator.from_matrix(m)
    name = args.builtin or "identity"
    if name == "identity":
        return gates.identity_unitary(args.n)
    if name.startswith("pauli-"):
        return gates.pauli_unitary(name[-1])
    if name == "hadamard":
        return gates.hadamard_unitary()
    if name == "rotation":
        if args.angle is None:
            raise ParameterError("the rotation builtin requires --angle")
        axis = args.axis
        if "," in axis:
            axis = [float(x) for x in axis.split(",")]
        return gates.rotation_unitary(axis, args.angle, phase=args.phase)
    if name == "jones":
        return gates.jones_unitary()
    if name == "haar":
        return sample_haar_unitary(args.n, args.haar_seed)
    raise ParameterError(f"unknown builtin {name!r}")


def _emit(args, payload: str):
    if args.output:
        path = args.output
        outdir = os.environ.get("DQC1LAB_OUTDIR")
        if outdir and not os.path.isabs(path):
            path = os.path.join(outdir, path)
        with open(path, "w") as fh:
            fh.write(payload)
        print(f"report written to {path}")
    else:
        print(payload)


def cmd_gqd(args) -> int:
    u = resolve_unitary(args)
    state = build_dqc1_state(u, args.alpha)
    report = gqd_report(state, grid_n=args.grid_n)
    print(f"n = {report.n}, alpha = {report.alpha}")
    print(f"tau2              = {report.tau2:.12g}")
    print(f"gqd closed form   = {report.gqd_closed_form:.12g}")
    print(f"gqd brute force   = {report.gqd_bruteforce:.12g}  "
          f"at (a, phi) = ({report.a_opt:.9g}, {report.phi_opt:.9g})")
    print(f"residual          = {report.residual:.3g}")
    _emit(args, report.to_json())
    if report.residual > GQD_RESIDUAL_LIMIT:
        print(
            f"oracle disagreement: residual {report.residual:.3e} > {GQD_RESIDUAL_LIMIT:g}",
            file=sys.stderr,
        )
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_discord2(args) -> int:
    if args.rotation_angle is not None:
        args.builtin, args.angle = "rotation", args.rotation_angle
    u = resolve_unitary(args)
    report = qd2_report(u, args.alpha, grid_n=args.grid_n)
    print(f"alpha = {report.alpha}, tau1 = {report.tau1:.12g} ({report.tau1_normalization})")
    print(f"qd closed form    = {report.qd_closed_form:.12g}")
    print(f"qd brute force    = {report.qd_bruteforce:.12g}  "
          f"at (a, phi) = ({report.a_opt:.9g}, {report.phi_opt:.9g})")
    print(f"residual          = {report.residual:.3g}")
    _emit(args, report.to_json())
    if report.residual > QD_RESIDUAL_LIMIT:
        print(
            f"oracle disagreement: residual {report.residual:.3e} > {QD_RESIDUAL_LIMIT:g}",
            file=sys.stderr,
        )
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_landscape(args) -> int:
    u = resolve_unitary(args)
    state = build_dqc1_state(u, args.alpha)
    grid = landscape_grid(state, args.res_a, args.res_phi)
    flat_min = int(np.argmin(grid.values))
    i, j = np.unravel_index(flat_min, grid.values.shape)
    print(f"{args.res_a} x {args.res_phi} landscape of g/alpha^2")
    print(f"grid minimum {grid.values[i, j]:.9g} at (a, phi) = "
          f"({grid.a_axis[i]:.6g}, {grid.phi_axis[j]:.6g})")
    _emit(args, grid.to_csv() if args.format == "csv" else grid.to_json())
    return EXIT_OK


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def cmd_haar_study(args) -> int:
    ns = _parse_n_range(args.n_range)
    stats = typicality_study(ns, args.samples, alpha=args.alpha, seed=args.seed,
                             keep_samples=args.per_sample)
    for s in stats:
        print(f"n={s.n}: tau2 = {s.tau2_mean:.5f} +- {s.tau2_std:.5f}, "
              f"gqd/max = {s.gqd_over_max_mean:.5f}")
    if len(stats) >= 2:
        print(f"slope of log2(mean gqd) vs n = {gqd_decay_slope(stats):.4f}")
    _emit(args, study_to_csv(stats) if args.format == "csv"
          else study_to_json(stats, per_sample=args.per_sample))
    return EXIT_OK


def cmd_shots(args) -> int:
    u = resolve_unitary(args)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        report = estimate_gqd_from_shots(u, args.alpha, args.shots, args.seed)
    readouts = [
        simulate_readout(u, args.alpha, obs, "u2", args.shots, args.seed).to_dict()
        for obs in ("sx", "sy")
    ]
    print(f"{args.shots} shots per observable, alpha = {args.alpha}")
    print(f"tau2 = {report.tau2_hat:.6g} +- {report.tau2_sigma:.3g}")
    print(f"gqd  = {report.gqd_hat:.6g} +- {report.gqd_sigma:.3g}")
    if report.bias_flag:
        print("note: low signal-to-noise; |x+iy| estimate is biased upward near 0")
    if report.precision_warning:
        print("warning: propagated sigma(tau2) exceeds 1; increase shots or alpha")
    payload = report.to_dict()
    payload["readouts"] = readouts
    _emit(args, json.dumps(payload))
    if report.precision_warning and args.strict:
        return EXIT_PRECISION
    return EXIT_OK


def cmd_jones_demo(args) -> int:
    u = gates.jones_unitary()
    state = build_dqc1_state(u, 1.0)
    t2 = tau2(u)
    gqd1 = gqd_closed_form(u, 1.0)
    gqd_thermal = gqd_closed_form(u, args.thermal_alpha)
    phi0 = optimal_phi0(u)
    phi_full = float(np.angle(np.sum(u.matrix * u.matrix.T)))
    report = gqd_report(state, grid_n=args.grid_n)
    grid = landscape_grid(state, args.res, args.res)

    threshold = 1e-6 / 2**u.n_qubits  # alpha = 1
    grad_half = g_gradient(state, 1 / math.sqrt(2), phi0.phi0)
    grad_full = g_gradient(state, 1 / math.sqrt(2), phi_full)
    norm_half = float(np.hypot(*grad_half))
    norm_full = float(np.hypot(*grad_full))

    print("four-qubit trace-estimation demo: U = diag(c, c, d, 1, c, d, 1, 1)")
    print(f"tau2                     = {t2:.6f}")
    print(f"gqd at alpha = 1         = {gqd1:.6f}   (expected near 0.0266)")
    print(f"gqd at alpha = {args.thermal_alpha:g}  = {gqd_thermal:.4g}")
    print(f"phi0 = arg(Tr U^2)/2     = {phi0.phi0:.6f} rad")
    print(f"phi0 without the half    = {phi_full:.6f} rad")
    print(f"brute-force minimizer    = (a, phi) = ({report.a_opt:.6f}, {report.phi_opt:.6f}),"
          f" residual {report.residual:.2e}")
    print(f"gradient norm at phi0    = {norm_half:.3e} (threshold {threshold:.1e})")
    print(f"gradient norm at 2*phi0  = {norm_full:.3e}")
    print("the half-argument value is the stationary one; the doubled value is not")

    payload = {
        "n": u.n_qubits,
        "unitary": json.loads(matrix_to_json(u.matrix)),
        "tau2": t2,
        "gqd_alpha_1": gqd1,
        "thermal_alpha": args.thermal_alpha,
        "gqd_thermal": gqd_thermal,
        "phi0_half_arg": phi0.phi0,
        "phi0_full_arg": phi_full,
        "phi0_minimizer": report.phi_opt,
        "stationarity": {
            "grad_norm_at_half_arg": norm_half,
            "grad_norm_at_full_arg": norm_full,
            "threshold": threshold,
            "stationary_choice": "half_arg" if norm_half <= threshold else "unresolved",
        },
        "bruteforce": {
            "value": report.gqd_bruteforce,
            "a_opt": report.a_opt,
            "phi_opt": report.phi_opt,
            "residual": report.residual,
        },
        "landscape": grid.to_dict(),
    }
    _emit(args, json.dumps(payload))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqc1lab",
        description="quantum-discord laboratory for one-clean-qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gqd", help="geometric discord, closed form vs brute force")
    _add_unitary_args(p)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--grid-n", type=int, default=128)
    _add_output_args(p)
    p.set_defaults(fn=cmd_gqd)

    p = sub.add_parser("discord2", help="two-qubit entropic discord")
    _add_unitary_args(p)
    p.add_argument("--rotation-angle", type=float,
                   help="shorthand for --builtin rotation --axis z --angle X")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--grid-n", type=int, default=256)
    _add_output_args(p)
    p.set_defaults(fn=cmd_discord2)

    p = sub.add_parser("landscape", help="export the g(a, phi)/alpha^2 grid")
    _add_unitary_args(p)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--res-a", type=int, default=101)
    p.add_argument("--res-phi", type=int, default=101)
    _add_output_args(p, formats=("csv", "json"))
    p.set_defaults(fn=cmd_landscape)

    p = sub.add_parser("haar-study", help="tau2/GQD statistics over Haar draws")
    p.add_argument("--n", dest="n_range", default="2..7", help="range like 2..7 or 2,4,6")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--per-sample", action="store_true", help="include per-sample tau2 in JSON")
    _add_output_args(p, formats=("csv", "json"))
    p.set_defaults(fn=cmd_haar_study)

    p = sub.add_parser("shots", help="finite-shot GQD estimation protocol")
    _add_unitary_args(p)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--shots", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    _add_output_args(p)
    p.set_defaults(fn=cmd_shots)

    p = sub.add_parser("jones-demo", help="reproduce the four-qubit demo numbers")
    p.add_argument("--thermal-alpha", type=float, default=THERMAL_ALPHA)
    p.add_argument("--res", type=int, default=101)
    p.add_argument("--grid-n", type=int, default=128)
    _add_output_args(p)
    p.set_defaults(fn=cmd_jones_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches our input-error code
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except Dqc1LabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
