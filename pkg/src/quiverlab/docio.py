"""External text formats: quiver documents, Laurent documents, sequences.

All documents are JSON objects; integers are arbitrary precision and
whitespace is insignificant.  A quiver document carries either an explicit
``matrix`` (n rows of n integers) or an ``arrows`` list of
``[source, target, multiplicity]`` triples, plus optional ``frozen_rows``.
"""

from __future__ import annotations

import json
from typing import Any

from .core import ExchangeMatrix, IceQuiver
from .laurent import LaurentPoly


class DocumentError(ValueError):
    """Malformed input document."""


def _as_int(value, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{context} must be an integer, got {value!r}")
    return value


def _load(doc: Any) -> dict:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def _matrix_from_arrows(n: int, arrows) -> list[list[int]]:
    entries = [[0] * n for _ in range(n)]
    if not isinstance(arrows, list):
        raise DocumentError("'arrows' must be a list of [source, target, multiplicity]")
    for triple in arrows:
        if not isinstance(triple, list) or len(triple) != 3:
            raise DocumentError(f"bad arrow entry {triple!r}")
        s, t, mult = (_as_int(x, "arrow field") for x in triple)
        if not (1 <= s <= n and 1 <= t <= n):
            raise DocumentError(f"arrow {triple!r} references a vertex outside 1..{n}")
        if s == t:
            raise DocumentError(f"loops are not allowed: {triple!r}")
        if mult <= 0:
            raise DocumentError(f"arrow multiplicity must be positive: {triple!r}")
        entries[s - 1][t - 1] += mult
    for i in range(n):
        for j in range(i + 1, n):
            if entries[i][j] and entries[j][i]:
                raise DocumentError(
                    f"arrows in both directions between {i + 1} and {j + 1} form a 2-cycle"
                )
            entries[i][j] -= entries[j][i]
            entries[j][i] = -entries[i][j]
    return entries


def parse_quiver(doc: Any) -> ExchangeMatrix | IceQuiver:
    """Parse a quiver document; returns an IceQuiver iff frozen rows are present."""
    data = _load(doc)
    if "n" not in data:
        raise DocumentError("missing field 'n'")
    n = _as_int(data["n"], "'n'")
    if n < 0:
        raise DocumentError("'n' must be nonnegative")
    if ("matrix" in data) == ("arrows" in data):
        raise DocumentError("exactly one of 'matrix' or 'arrows' is required")
    if "matrix" in data:
        rows = data["matrix"]
        if not isinstance(rows, list) or len(rows) != n:
            raise DocumentError(f"'matrix' must have {n} rows")
        entries = [[_as_int(x, "matrix entry") for x in row] for row in rows]
    else:
        entries = _matrix_from_arrows(n, data["arrows"])
    frozen = data.get("frozen_rows", [])
    if not isinstance(frozen, list):
        raise DocumentError("'frozen_rows' must be a list of rows")
    frozen_entries = [[_as_int(x, "frozen entry") for x in row] for row in frozen]
    try:
        if frozen_entries:
            return IceQuiver(n, tuple(tuple(r) for r in entries + frozen_entries))
        return ExchangeMatrix(tuple(tuple(r) for r in entries))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def quiver_document(matrix: ExchangeMatrix | IceQuiver) -> dict:
    if isinstance(matrix, IceQuiver):
        doc = {"n": matrix.n, "matrix": [list(r) for r in matrix.entries[: matrix.n]]}
        if matrix.frozen_rows:
            doc["frozen_rows"] = [list(r) for r in matrix.frozen_rows]
        return doc
    return {"n": matrix.n, "matrix": [list(r) for r in matrix.entries]}


def dump_quiver(matrix: ExchangeMatrix | IceQuiver) -> str:
    return json.dumps(quiver_document(matrix), indent=2) + "\n"


def as_exchange(parsed: ExchangeMatrix | IceQuiver) -> ExchangeMatrix:
    return parsed.principal() if isinstance(parsed, IceQuiver) else parsed


def as_ice(parsed: ExchangeMatrix | IceQuiver) -> IceQuiver:
    return parsed if isinstance(parsed, IceQuiver) else IceQuiver.from_exchange(parsed)


# -- mutation sequences ----------------------------------------------------

def parse_sequence(text: str) -> tuple[int, ...]:
    """Parse comma-separated 1-based vertex indices; empty string is allowed."""
    text = text.strip()
    if not text:
        return ()
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece or not (piece.isdigit() or (piece[0] == "-" and piece[1:].isdigit())):
            raise DocumentError(f"bad sequence entry {piece!r}")
        out.append(int(piece))
    return tuple(out)


def format_sequence(seq: tuple[int, ...]) -> str:
    return ",".join(str(k) for k in seq)


# -- Laurent polynomials ---------------------------------------------------

def laurent_document(poly: LaurentPoly) -> dict:
    terms = [
        [coeff, list(exps[: poly.n]), list(exps[poly.n:])]
        for exps, coeff in poly.items()
    ]
    return {"n": poly.n, "terms": terms}


def parse_laurent(doc: Any) -> LaurentPoly:
    data = _load(doc)
    if "n" not in data or "terms" not in data:
        raise DocumentError("laurent document needs fields 'n' and 'terms'")
    n = _as_int(data["n"], "'n'")
    terms = {}
    for record in data["terms"]:
        if not isinstance(record, list) or len(record) != 3:
            raise DocumentError(f"bad term record {record!r}")
        coeff, x_exps, y_exps = record
        coeff = _as_int(coeff, "coefficient")
        if len(x_exps) != n or len(y_exps) != n:
            raise DocumentError("exponent vectors must each have length n")
        key = tuple(_as_int(e, "exponent") for e in list(x_exps) + list(y_exps))
        terms[key] = terms.get(key, 0) + coeff
    try:
        return LaurentPoly(n, terms)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dump_laurent(poly: LaurentPoly) -> str:
    return json.dumps(laurent_document(poly)) + "\n"
