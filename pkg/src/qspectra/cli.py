"""Command-line verification harness.

Subcommands: selftest (seeded property suites), example (the golden
multiplier scenario), decompose (multiplication form of a matrix file),
transform (bounded transform checks of a matrix file).

Exit codes: 0 pass, 1 check failure, 2 precondition violation, 3 input
error. Reports are emitted as versioned JSON; reruns with identical flags
and seed are byte-identical except for the timing field.
"""

from __future__ import annotations

import argparse
import sys
import time

from .bridge import SpectralDecomposition
from .errors import (
    ComputationError,
    InputFormatError,
    PreconditionError,
)
from .example import run_example
from .measure import ess_sup
from .operators import QMatrix
from .quaternion import SliceFrame
from .report import VerificationReport, check_from, flag_check
from .selftest import run_selftest
from .serialize import (
    load_json,
    matrix_from_json,
    quaternion_from_text,
    save_json,
)
from .slices import build_J
from .spectral import multiplication_form, slice_spectrum_check, sphere_spectrum
from .transform import bounded_transform, inverse_transform

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_PRECONDITION = 2
EXIT_INPUT = 3


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="qspectra", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", default="0,1,0,0", help="slice axis as 'w,x,y,z'")
    common.add_argument("--tol", type=float, default=None, help="override check tolerances")
    common.add_argument("--out", default=None, help="report path (default stdout)")

    p = sub.add_parser("selftest", parents=[common], help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8, help="matrix dimension (1..64)")

    p = sub.add_parser("example", parents=[common], help="verify the golden multiplier scenario")
    p.add_argument("--grid", type=int, default=64, help="number of grid atoms (>= 2)")

    p = sub.add_parser("decompose", parents=[common], help="multiplication form of a matrix file")
    p.add_argument("matrix", help="path to a matrix JSON file")

    p = sub.add_parser("transform", parents=[common], help="bounded-transform checks of a matrix file")
    p.add_argument("matrix", help="path to a matrix JSON file")
    p.add_argument(
        "--inverse",
        action="store_true",
        help="treat the file as a contraction Z and reconstruct its source",
    )
    return parser


def _parse_frame(text: str) -> SliceFrame:
    m = quaternion_from_text(text)
    try:
        return SliceFrame.from_m(m)
    except Exception as exc:
        raise InputFormatError(f"--m must be a unit imaginary quaternion: {exc}") from exc


def _emit(report: VerificationReport, out_path) -> None:
    payload = report.to_json()
    if out_path:
        save_json(report.to_dict(), out_path)
    else:
        print(payload)


def _cmd_selftest(args) -> int:
    if args.n < 1 or args.n > 64:
        raise InputFormatError(f"--n must be in 1..64, got {args.n}")
    if args.tol is not None and args.tol <= 0.0:
        raise InputFormatError("--tol must be positive")
    start = time.perf_counter()
    report = run_selftest(args.seed, args.n, args.tol)
    report.timing = time.perf_counter() - start
    _emit(report, args.out)
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILURE


def _cmd_example(args) -> int:
    if args.grid < 2:
        raise InputFormatError(f"--grid must be >= 2, got {args.grid}")
    start = time.perf_counter()
    report = run_example(args.grid)
    report.timing = time.perf_counter() - start
    _emit(report, args.out)
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILURE


def _load_matrix(path) -> QMatrix:
    return matrix_from_json(load_json(path))


def _cmd_decompose(args) -> int:
    frame = _parse_frame(args.m)
    a = _load_matrix(args.matrix)
    start = time.perf_counter()
    a.check_normal()
    form = multiplication_form(a, frame)
    spectrum = sphere_spectrum(form)

    dec = SpectralDecomposition(form.U.H, list(form.phi_values()), frame, form.residual)
    structure = build_J(dec)
    slice_report = slice_spectrum_check(a, structure)

    scale = max(a.frobenius(), 1e-300)
    op_norm_val = a.op_norm()
    sup = ess_sup(form.phi)
    tol = args.tol
    checks = [
        check_from(
            "decompose.reconstruction",
            (a - form.reconstruct()).frobenius(),
            tol or 1e-9 * scale,
        ),
        check_from(
            "decompose.norm_identity",
            abs(op_norm_val - sup),
            tol or 1e-9 * max(op_norm_val, 1.0),
        ),
        check_from(
            "decompose.unitary",
            ((form.U.H @ form.U) - QMatrix.identity(a.n)).frobenius(),
            tol or 1e-9 * a.n,
        ),
        check_from(
            "decompose.slice_spectrum_plus",
            slice_report.plus_deviation,
            tol or 1e-8 * max(op_norm_val, 1.0),
        ),
        check_from(
            "decompose.slice_spectrum_conjugate",
            slice_report.conj_deviation,
            tol or 1e-8 * max(op_norm_val, 1.0),
        ),
    ]
    report = VerificationReport(
        "decompose",
        checks,
        extra={
            "phi": [[v.w, v.x, v.y, v.z] for v in form.phi_values()],
            "orbits": [[o.re, o.im_norm] for o in spectrum.orbits],
            "residual": form.residual,
            "normCheck": {"opNorm": op_norm_val, "essSup": sup, "gap": abs(op_norm_val - sup)},
        },
    )
    report.timing = time.perf_counter() - start
    _emit(report, args.out)
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILURE


def _cmd_transform(args) -> int:
    frame = _parse_frame(args.m)
    a = _load_matrix(args.matrix)
    start = time.perf_counter()

    tol = args.tol
    if args.inverse:
        source = inverse_transform(a, frame)
        back = bounded_transform(source, frame)
        checks = [
            check_from(
                "transform.inverse_round_trip",
                (back.Z - a).frobenius(),
                tol or 1e-8 * (1.0 + source.op_norm() ** 2),
            ),
        ]
        report = VerificationReport(
            "transform-inverse", checks, extra={"zNorm": a.op_norm()}
        )
    else:
        bt = bounded_transform(a, frame)
        z = bt.Z
        norm_z = z.op_norm()
        checks = [
            flag_check("transform.contraction", norm_z <= 1.0),
            check_from(
                "transform.defining_residual",
                bt.residual,
                tol or 1e-9 * max(a.frobenius(), 1.0),
            ),
            check_from(
                "transform.star_compatible",
                (bounded_transform(a.H, frame).Z - z.H).frobenius(),
                tol or 1e-10 * max(1.0, a.frobenius()),
            ),
        ]
        if norm_z < 1.0 - 1e-8:
            checks.append(
                check_from(
                    "transform.round_trip",
                    (inverse_transform(z, frame) - a).frobenius(),
                    tol or 1e-8 * (1.0 + a.op_norm() ** 2),
                )
            )
        if a.is_normal():
            checks.append(
                check_from(
                    "transform.normal_preserved",
                    z.commutator_defect(),
                    tol or 1e-10 * max(z.frobenius() ** 2, 1.0),
                )
            )
        report = VerificationReport("transform", checks, extra={"zNorm": norm_z})
    report.timing = time.perf_counter() - start
    _emit(report, args.out)
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILURE


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "selftest": _cmd_selftest,
        "example": _cmd_example,
        "decompose": _cmd_decompose,
        "transform": _cmd_transform,
    }
    try:
        return handlers[args.command](args)
    except InputFormatError as exc:
        print(f"qspectra: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"qspectra: precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ComputationError as exc:
        print(f"qspectra: check failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
