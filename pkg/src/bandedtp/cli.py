"""Command-line surface: every subcommand reads exact-rational JSON
documents, writes one canonical JSON report to stdout, and encodes the
outcome in the exit code (0 property holds, 1 property fails, 2 usage or
parse error)."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .band import BandedMatrix
from .criteria import (
    is_BTP_contiguous,
    is_BTP_delta,
    is_BTP_initial,
    is_BTP_oracle,
    is_lower_triangular_tp,
    is_upper_triangular_tp,
)
from .documents import (
    canonical_json,
    emit_factorization,
    emit_matrix,
    factorization_payload,
    matrix_payload,
    parse_any,
    parse_matrix,
)
from .errors import (
    BandedTPError,
    CapacityError,
    ContractViolationError,
    MultipleEigenvalueError,
    NotBTPError,
    ParseError,
    PreconditionError,
    SpectralInconsistencyError,
)
from .fuzz import fuzz_equivalence, zero_random_factor_entry
from .pbf import (
    PBFactorization,
    darboux,
    lambda_matrix,
    pbf_compose,
    pbf_factorize,
    random_pbf,
    upsilon_matrix,
)
from .recpoly import (
    InitialConditions,
    build_recursion_table,
    check_normality,
    make_tp_initial_conditions,
)
from .spectral import (
    discrete_biorthogonality,
    eigenvalues_hp,
    favard_initial_conditions,
    fraction_to_decimal_string,
    positivity_audit,
)

CRITERIA = {
    "oracle": is_BTP_oracle,
    "contiguous": is_BTP_contiguous,
    "initial": is_BTP_initial,
    "delta": is_BTP_delta,
}


def _emit(payload: dict) -> None:
    sys.stdout.write(canonical_json(payload))


def _read_input(path: str):
    return parse_any(Path(path).read_text())


def _as_matrix(doc) -> BandedMatrix:
    if isinstance(doc, PBFactorization):
        return pbf_compose(doc)
    return doc


def _as_factorization(doc) -> PBFactorization:
    if isinstance(doc, BandedMatrix):
        return pbf_factorize(doc)
    return doc


def _cmd_classify(args) -> int:
    t = _as_matrix(_read_input(args.input))
    names = list(CRITERIA) if args.criterion == "all" else [args.criterion]
    results = {name: CRITERIA[name](t) for name in names}
    _emit(
        {
            "command": "classify",
            "n": t.n,
            "p": t.p,
            "q": t.q,
            "criteria": {name: v.as_dict() for name, v in results.items()},
        }
    )
    return 0 if all(v.verdict for v in results.values()) else 1


def _cmd_factorize(args) -> int:
    doc = _read_input(args.input)
    t = _as_matrix(doc)
    try:
        f = pbf_factorize(t)
    except NotBTPError as exc:
        _emit(
            {
                "command": "factorize",
                "error": "NotBTP",
                "message": str(exc),
                "position": list(exc.position),
                "value": None if exc.value is None else str(exc.value),
            }
        )
        return 1
    _emit({"command": "factorize", **factorization_payload(f)})
    return 0


def _cmd_darboux(args) -> int:
    try:
        f = _as_factorization(_read_input(args.input))
    except NotBTPError as exc:
        _emit(
            {
                "command": "darboux",
                "error": "NotBTP",
                "message": str(exc),
                "position": list(exc.position),
            }
        )
        return 1
    transformed = darboux(f, args.k)
    _emit({"command": "darboux", "k": args.k, **matrix_payload(transformed)})
    return 0


def _cmd_recpoly(args) -> int:
    t = _as_matrix(_read_input(args.input))
    ic = InitialConditions.identity(max(t.p, 1), max(t.q, 1))
    left_count = args.families if args.families is not None else t.n - ic.p
    right_count = args.families if args.families is not None else t.n - ic.q
    table = build_recursion_table(t, ic, left_count, right_count)
    _emit(
        {
            "command": "recpoly",
            "p": table.p,
            "q": table.q,
            "left": [
                [[str(c) for c in poly.coeffs] for poly in family]
                for family in table.left
            ],
            "right": [
                [[str(c) for c in poly.coeffs] for poly in family]
                for family in table.right
            ],
        }
    )
    return 0


def _cmd_normality(args) -> int:
    t = _as_matrix(_read_input(args.input))
    ic = make_tp_initial_conditions(args.seed, max(t.p, 1), max(t.q, 1))
    left_count = args.families if args.families is not None else t.n - ic.p
    right_count = args.families if args.families is not None else t.n - ic.q
    table = build_recursion_table(t, ic, left_count, right_count)
    report = check_normality(table)
    _emit({"command": "normality", "seed": args.seed, **report.as_dict()})
    return 0 if report.normal else 1


def _cmd_spectrum(args) -> int:
    t = _as_matrix(_read_input(args.input))
    report = eigenvalues_hp(t, args.precision)
    _emit({"command": "spectrum", "n": t.n, **report.as_dict()})
    return 0


def _cmd_biorth(args) -> int:
    doc = _read_input(args.input)
    t = _as_matrix(doc)
    tolerance = Fraction(1, 10**args.tolerance)
    report = eigenvalues_hp(t, args.precision)
    if t.p == 0 and t.q == 0:
        ic = None
    elif isinstance(doc, PBFactorization):
        ic = favard_initial_conditions(doc, corner="leading")
    else:
        ic = InitialConditions.identity(t.p, t.q)
    weights, residual = discrete_biorthogonality(t, ic, report, tolerance)
    payload = {
        "command": "biorth",
        "n": t.n,
        "precision_bits": args.precision,
        "window": weights.window,
        "residual": residual.as_dict(),
        "weights_positive": weights.all_positive(),
        "eigenvalues": [
            fraction_to_decimal_string(v, max(args.precision * 3 // 10, 6))
            for v in weights.eigenvalues
        ],
    }
    if isinstance(doc, PBFactorization) and ic is not None:
        payload["audit"] = positivity_audit(weights, ic, doc).as_dict()
    _emit(payload)
    return 0 if residual.passed else 1


def _cmd_lambda(args) -> int:
    try:
        f = _as_factorization(_read_input(args.input))
    except NotBTPError as exc:
        _emit(
            {
                "command": "lambda",
                "error": "NotBTP",
                "message": str(exc),
                "position": list(exc.position),
            }
        )
        return 1
    lam = lambda_matrix(f)
    ups = upsilon_matrix(f)
    lam_tp = is_upper_triangular_tp(lam)
    ups_tp = is_lower_triangular_tp(ups)
    _emit(
        {
            "command": "lambda",
            "lambda": [[str(v) for v in row] for row in lam.rows],
            "upsilon": [[str(v) for v in row] for row in ups.rows],
            "lambda_tp": lam_tp.as_dict(),
            "upsilon_tp": ups_tp.as_dict(),
        }
    )
    return 0 if lam_tp.verdict and ups_tp.verdict else 1


def _cmd_gen(args) -> int:
    f = random_pbf(args.seed, args.n, args.p, args.q)
    metadata = {"seed": args.seed}
    if args.zero_entry:
        import random as _random

        f = zero_random_factor_entry(f, _random.Random(args.seed))
        metadata["zeroed"] = True
    if args.kind == "factorization":
        sys.stdout.write(emit_factorization(f, metadata))
    else:
        sys.stdout.write(emit_matrix(pbf_compose(f), metadata))
    return 0


def _cmd_fuzz(args) -> int:
    report = fuzz_equivalence(args.seed, args.count, args.n_max)
    _emit({"command": "fuzz", **report.as_dict()})
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandedtp",
        description="Exact-arithmetic checks for banded totally positive matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("--input", required=True, help="matrix or factorization JSON")
        return p

    classify = with_input(sub.add_parser("classify", help="run the positivity criteria"))
    classify.add_argument(
        "--criterion",
        choices=["oracle", "contiguous", "initial", "delta", "all"],
        default="all",
    )
    classify.set_defaults(handler=_cmd_classify)

    factorize = with_input(sub.add_parser("factorize", help="bidiagonal factorization"))
    factorize.set_defaults(handler=_cmd_factorize)

    darboux_p = with_input(sub.add_parser("darboux", help="cyclic factor permutation"))
    darboux_p.add_argument("--k", type=int, required=True, help="signed rotation index")
    darboux_p.set_defaults(handler=_cmd_darboux)

    recpoly_p = with_input(sub.add_parser("recpoly", help="recursion polynomial table"))
    recpoly_p.add_argument("--families", type=int, default=None, help="recursion steps")
    recpoly_p.set_defaults(handler=_cmd_recpoly)

    normality = with_input(sub.add_parser("normality", help="step-line degree check"))
    normality.add_argument("--families", type=int, default=None)
    normality.add_argument("--seed", type=int, default=0, help="seed for initial data")
    normality.set_defaults(handler=_cmd_normality)

    spectrum = with_input(sub.add_parser("spectrum", help="certified real spectrum"))
    spectrum.add_argument("--precision", type=int, default=256)
    spectrum.set_defaults(handler=_cmd_spectrum)

    biorth = with_input(sub.add_parser("biorth", help="discrete mixed biorthogonality"))
    biorth.add_argument("--precision", type=int, default=256)
    biorth.add_argument("--tolerance", type=int, default=20, help="decimal digits")
    biorth.set_defaults(handler=_cmd_biorth)

    lambda_p = with_input(sub.add_parser("lambda", help="triangular companion matrices"))
    lambda_p.set_defaults(handler=_cmd_lambda)

    gen = sub.add_parser("gen", help="emit a seeded instance")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--q", type=int, required=True)
    gen.add_argument("--kind", choices=["matrix", "factorization"], default="matrix")
    gen.add_argument("--zero-entry", action="store_true", help="spoil one factor entry")
    gen.set_defaults(handler=_cmd_gen)

    fuzz = sub.add_parser("fuzz", help="criterion-equivalence fuzz harness")
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--count", type=int, default=100)
    fuzz.add_argument("--n-max", type=int, default=6, dest="n_max")
    fuzz.set_defaults(handler=_cmd_fuzz)

    return parser


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ContractViolationError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        PreconditionError,
        MultipleEigenvalueError,
        SpectralInconsistencyError,
    ) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except NotBTPError as exc:
        _emit(
            {
                "error": "NotBTP",
                "message": str(exc),
                "position": list(exc.position),
            }
        )
        return 1
    except BandedTPError as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
