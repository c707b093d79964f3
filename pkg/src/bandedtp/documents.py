"""Interchange formats: matrices and factorizations as JSON with rationals
carried as strings, so exactness survives transport.

Emission is canonical (fixed key order, fixed separators, trailing newline):
parse then emit is the identity on canonical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .band import BandedMatrix, band_profile
from .core import DenseMatrix, format_rational
from .errors import ParseError
from .pbf import PBFactorization


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _parse_rational(text: Any, row: int | None = None, col: int | None = None) -> Fraction:
    if not isinstance(text, str):
        raise ParseError(f"rational entries must be strings, got {text!r}", row, col)
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {text!r}: {exc}", row, col) from None
    return value


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    return doc


def _require_int(doc: dict, key: str) -> int:
    value = doc.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"field {key!r} must be an integer, got {value!r}")
    return value


def parse_matrix(text: str) -> BandedMatrix:
    """Parse a matrix document; the declared band must dominate the zero
    pattern and every entry must be an exact rational string."""
    doc = _load_json(text)
    n = _require_int(doc, "n")
    p = _require_int(doc, "p")
    q = _require_int(doc, "q")
    rows = doc.get("rows")
    if n < 1:
        raise ParseError(f"size must be positive, got {n}")
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"expected {n} rows")
    if not (0 <= p <= n - 1 and 0 <= q <= n - 1):
        raise ParseError(f"declared band ({p}, {q}) out of range for n={n}")
    grid = []
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row must have {n} entries", i)
        grid.append(tuple(_parse_rational(v, i, j) for j, v in enumerate(row, start=1)))
    dense = DenseMatrix(tuple(grid))
    inferred_p, inferred_q = band_profile(dense)
    if p < inferred_p or q < inferred_q:
        raise ParseError(
            f"declared band ({p}, {q}) violated: nonzero entries form band "
            f"({inferred_p}, {inferred_q})"
        )
    return BandedMatrix(n, p, q, dense.rows)


def matrix_payload(t: BandedMatrix, metadata: dict | None = None) -> dict:
    payload: dict[str, Any] = {
        "n": t.n,
        "p": t.p,
        "q": t.q,
        "rows": [[format_rational(v) for v in row] for row in t.rows],
    }
    if metadata:
        payload["metadata"] = metadata
    return payload


def emit_matrix(t: BandedMatrix, metadata: dict | None = None) -> str:
    return canonical_json(matrix_payload(t, metadata))


def parse_factorization(text: str) -> PBFactorization:
    doc = _load_json(text)
    n = _require_int(doc, "n")
    diag = doc.get("diag")
    lower = doc.get("lower", [])
    upper = doc.get("upper", [])
    if not isinstance(diag, list) or len(diag) != n:
        raise ParseError(f"diagonal must list {n} entries")
    for name, vecs in (("lower", lower), ("upper", upper)):
        if not isinstance(vecs, list) or any(
            not isinstance(v, list) or len(v) != n - 1 for v in vecs
        ):
            raise ParseError(f"{name} factors must be vectors of length {n - 1}")
    return PBFactorization(
        n,
        tuple(tuple(_parse_rational(v) for v in vec) for vec in lower),
        tuple(_parse_rational(v) for v in diag),
        tuple(tuple(_parse_rational(v) for v in vec) for vec in upper),
    )


def factorization_payload(f: PBFactorization, metadata: dict | None = None) -> dict:
    payload: dict[str, Any] = {
        "n": f.n,
        "p": f.p,
        "q": f.q,
        "lower": [[format_rational(v) for v in vec] for vec in f.lower],
        "diag": [format_rational(v) for v in f.diag],
        "upper": [[format_rational(v) for v in vec] for vec in f.upper],
    }
    if metadata:
        payload["metadata"] = metadata
    return payload


def emit_factorization(f: PBFactorization, metadata: dict | None = None) -> str:
    return canonical_json(factorization_payload(f, metadata))


def parse_any(text: str) -> BandedMatrix | PBFactorization:
    """Matrix documents carry "rows"; factorization documents carry "diag"."""
    doc = _load_json(text)
    if "rows" in doc:
        return parse_matrix(text)
    if "diag" in doc:
        return parse_factorization(text)
    raise ParseError("document is neither a matrix nor a factorization")
