"""Line-oriented text formats for codes and code databases.

Three file kinds share one syntax: ``key: value`` headers, block
keywords ending in a colon, and parenthesized tuples of bracket
polynomials.  A bracket polynomial ``[c0 c1 ...]`` lists coefficients
ascending by degree; ``[0]`` is the zero polynomial.  Blank lines and
lines starting with ``#`` are skipped; indentation is not significant.
Parse errors carry 1-based line numbers.

Code spec file (:class:`CodeSpec`): headers ``q`` (field order, as
``p`` or ``p^a``), ``m`` (shift order) and ``l`` (index), then exactly
one body block:

- ``generators:`` holds one ``- (poly, ..., poly)`` line per generator
  tuple; entries are polynomials over the base field of degree below m.
- ``constituents:`` holds one ``factor N:`` block per factor of
  x^m - 1, in factorization order, each with a ``field: F_k`` tag and
  ``row: (elem, ..., elem)`` lines whose entries are coordinate vectors
  in the factor's root, coordinates in the base field.

Matrix file (:class:`MatrixSpec`): headers ``q`` and ``n``, then a
``rows:`` block of ``- (elem, ..., elem)`` generator rows whose entries
are coordinate vectors over the prime subfield.

Database file: ``code q n k:`` record headers, each followed by
generator rows in matrix-file syntax.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import Field, Poly, factor_unity, make_field
from .codes import LinearCode
from .errors import ParseError
from .qc import ConstituentDecomposition, QCCode, evaluate_constituents

__all__ = [
    "CodeSpec",
    "MatrixSpec",
    "parse",
    "render",
    "to_decomposition",
    "from_decomposition",
    "parse_matrix",
    "render_matrix",
    "to_code",
    "from_code",
    "parse_database",
    "render_database",
    "poly_text",
]

_HEADER_RE = re.compile(r"(\w+)\s*:\s*(.*)")
_BRACKET_RE = re.compile(r"\[\s*((?:\d+\s*)*)\]")
_RECORD_RE = re.compile(r"code\s+(\d+)\s+(\d+)\s+(\d+)\s*:")


@dataclass(frozen=True)
class CodeSpec:
    """Parsed code spec file: field order, array shape and one body.

    Exactly one of ``generators`` and ``constituents`` is set.
    Generator entries are canonical coefficient tuples (no trailing
    zeros); constituent rows hold packed extension-field elements, one
    tuple of rows per factor of x^m - 1 in factorization order.
    """

    q: int
    m: int
    ell: int
    generators: tuple[tuple[tuple[int, ...], ...], ...] | None
    constituents: tuple[tuple[tuple[int, ...], ...], ...] | None

    def __post_init__(self):
        if (self.generators is None) == (self.constituents is None):
            raise ValueError(
                "exactly one of generators and constituents must be set")


@dataclass(frozen=True)
class MatrixSpec:
    """Parsed matrix file: a generator matrix over the field of order q.

    Rows hold field elements as packed integers.
    """

    q: int
    n: int
    rows: tuple[tuple[int, ...], ...]


# -- bracket polynomials ------------------------------------------------------


def poly_text(coeffs: Sequence[int]) -> str:
    """Bracket form of a coefficient vector; the empty vector is [0]."""
    if not coeffs:
        return "[0]"
    return "[" + " ".join(str(c) for c in coeffs) + "]"


def _canonical(coeffs: Sequence[int]) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _parse_bracket(tok: str, no: int) -> tuple[int, ...]:
    got = _BRACKET_RE.fullmatch(tok.strip())
    if not got:
        raise ParseError(no, f"malformed bracket polynomial {tok.strip()!r}")
    return tuple(int(t) for t in got.group(1).split())


def _parse_tuple(text: str, no: int) -> tuple[tuple[int, ...], ...]:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(no, f"expected a parenthesized tuple, got {s!r}")
    inner = s[1:-1].strip()
    if not inner:
        raise ParseError(no, "empty tuple")
    # Brackets never contain commas, so a top-level split is safe.
    return tuple(_parse_bracket(part, no) for part in inner.split(","))


def _tuple_text(parts: Iterable[str]) -> str:
    return "(" + ", ".join(parts) + ")"


# -- shared scanning ----------------------------------------------------------


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        ln = raw.strip()
        if ln and not ln.startswith("#"):
            out.append((no, ln))
    return out


def _eof_line(text: str) -> int:
    return len(text.splitlines()) or 1


def _parse_order(val: str, no: int, key: str) -> int:
    got = re.fullmatch(r"(\d+)(?:\^(\d+))?", val)
    if not got:
        raise ParseError(no, f"header {key} must be p or p^a, got {val!r}")
    q = int(got.group(1)) ** (int(got.group(2)) if got.group(2) else 1)
    try:
        make_field(q)
    except ValueError:
        raise ParseError(no, f"not a prime power: {val}") from None
    return q


def _parse_count(val: str, no: int, key: str) -> int:
    if not val.isdigit() or int(val) < 1:
        raise ParseError(
            no, f"header {key} must be a positive integer, got {val!r}")
    return int(val)


def _scan_headers(lines: list[tuple[int, str]], keys: tuple[str, ...],
                  bodies: tuple[str, ...], eof: int
                  ) -> tuple[dict[str, int], dict[str, int], int, str]:
    """Read ``key: value`` headers up to a body keyword.

    Returns the header values, their line numbers, the index of the
    first body line and the body keyword.
    """
    vals: dict[str, int] = {}
    at: dict[str, int] = {}
    pos = 0
    body = None
    while pos < len(lines):
        no, ln = lines[pos]
        if ln.rstrip(":") in bodies and ln.endswith(":"):
            body = ln.rstrip(":")
            pos += 1
            break
        got = _HEADER_RE.fullmatch(ln)
        if not got or got.group(1) not in keys:
            raise ParseError(
                no, f"expected a header ({', '.join(keys)}) or a body "
                f"keyword, got {ln!r}")
        key, val = got.group(1), got.group(2).strip()
        if key in vals:
            raise ParseError(no, f"duplicate header {key!r}")
        parse_one = _parse_order if key == "q" else _parse_count
        vals[key] = parse_one(val, no, key)
        at[key] = no
        pos += 1
    if body is None:
        want = " or ".join(f"{b}:" for b in bodies)
        raise ParseError(eof, f"missing body block ({want})")
    missing = [k for k in keys if k not in vals]
    if missing:
        raise ParseError(lines[pos - 1][0],
                         "missing header " + ", ".join(missing))
    return vals, at, pos, body


def _check_coeffs(coeffs: tuple[int, ...], bound: int, what: str,
                  no: int) -> None:
    for c in coeffs:
        if c >= bound:
            raise ParseError(no, f"{what} {c} outside field of order {bound}")


# -- code spec files ------------------------------------------------------------


def parse(text: str) -> CodeSpec:
    """Parse a code spec file; raises ParseError on bad input."""
    lines = _content_lines(text)
    eof = _eof_line(text)
    vals, at, pos, body = _scan_headers(
        lines, ("q", "m", "l"), ("generators", "constituents"), eof)
    q, m, ell = vals["q"], vals["m"], vals["l"]
    if math.gcd(m, q) != 1:
        raise ParseError(
            at["m"], f"m = {m} shares a factor with the field order {q}")
    if body == "generators":
        return _parse_generators(lines[pos:], q, m, ell, eof)
    return _parse_constituents(lines[pos:], q, m, ell, eof)


def _parse_generators(lines: list[tuple[int, str]], q: int, m: int,
                      ell: int, eof: int) -> CodeSpec:
    gens = []
    for no, ln in lines:
        if not ln.startswith("- "):
            raise ParseError(
                no, f"expected a '- (...)' generator line, got {ln!r}")
        entries = _parse_tuple(ln[2:], no)
        if len(entries) != ell:
            raise ParseError(
                no, f"generator tuple has {len(entries)} entries, "
                f"index is {ell}")
        gen = []
        for cs in entries:
            cs = _canonical(cs)
            if len(cs) > m:
                raise ParseError(
                    no, f"entry degree {len(cs) - 1} not below m = {m}")
            _check_coeffs(cs, q, "coefficient", no)
            gen.append(cs)
        gens.append(tuple(gen))
    if not gens:
        raise ParseError(eof, "generators block lists no generator tuples")
    return CodeSpec(q, m, ell, tuple(gens), None)


def _parse_constituents(lines: list[tuple[int, str]], q: int, m: int,
                        ell: int, eof: int) -> CodeSpec:
    fact = factor_unity(m, make_field(q))
    t = fact.num_factors
    cons = []
    idx = 0
    for fi in range(1, t + 1):
        info = fact.factors[fi - 1]
        if idx >= len(lines):
            raise ParseError(eof, f"missing block for factor {fi} of {t}")
        no, ln = lines[idx]
        if ln != f"factor {fi}:":
            raise ParseError(no, f"expected 'factor {fi}:', got {ln!r}")
        idx += 1
        no, ln = lines[idx] if idx < len(lines) else (eof, "")
        got = _HEADER_RE.fullmatch(ln)
        if not got or got.group(1) != "field":
            raise ParseError(
                no, f"factor {fi} block must start with a field: tag")
        tag, want = got.group(2).strip(), f"F_{info.ext_field.order}"
        if tag != want:
            raise ParseError(
                no, f"factor {fi} field tag is {tag!r}, expected {want!r}")
        idx += 1
        rows = []
        while idx < len(lines) and lines[idx][1].startswith("row:"):
            no, ln = lines[idx]
            entries = _parse_tuple(ln.partition(":")[2], no)
            if len(entries) != ell:
                raise ParseError(
                    no, f"row has {len(entries)} entries, index is {ell}")
            row = []
            for cs in entries:
                cs = _canonical(cs)
                if len(cs) > info.degree:
                    raise ParseError(
                        no, f"entry degree {len(cs) - 1} not below factor "
                        f"degree {info.degree}")
                _check_coeffs(cs, q, "coefficient", no)
                row.append(info.pack(cs))
            rows.append(tuple(row))
            idx += 1
        cons.append(tuple(rows))
    if idx < len(lines):
        raise ParseError(
            lines[idx][0],
            f"unexpected content after factor {t}: {lines[idx][1]!r}")
    return CodeSpec(q, m, ell, None, tuple(cons))


def _order_text(q: int) -> str:
    field = make_field(q)
    if field.degree == 1:
        return str(q)
    return f"{field.char}^{field.degree}"


def render(spec: CodeSpec) -> str:
    """Canonical text of a code spec; parse(render(s)) == s."""
    out = [f"q: {_order_text(spec.q)}", f"m: {spec.m}", f"l: {spec.ell}"]
    if spec.generators is not None:
        out.append("generators:")
        for gen in spec.generators:
            out.append("- " + _tuple_text(poly_text(cs) for cs in gen))
    else:
        fact = factor_unity(spec.m, make_field(spec.q))
        out.append("constituents:")
        for fi, (info, rows) in enumerate(
                zip(fact.factors, spec.constituents), 1):
            out.append(f"  factor {fi}:")
            out.append(f"    field: F_{info.ext_field.order}")
            for row in rows:
                out.append("    row: " + _tuple_text(
                    poly_text(info.unpack(e)) for e in row))
    return "\n".join(out) + "\n"


def to_decomposition(spec: CodeSpec) -> ConstituentDecomposition:
    """Build the constituent decomposition a spec file describes.

    A generators body is evaluated at every factor root; a constituents
    body is taken as the row spans directly.
    """
    field = make_field(spec.q)
    fact = factor_unity(spec.m, field)
    if spec.generators is not None:
        gens = tuple(tuple(Poly(field, cs) for cs in gen)
                     for gen in spec.generators)
        return evaluate_constituents(
            QCCode(field, spec.m, spec.ell, gens), fact)
    codes = tuple(
        LinearCode.from_rows(info.ext_field, spec.ell, rows)
        for info, rows in zip(fact.factors, spec.constituents))
    return ConstituentDecomposition(fact, spec.ell, codes)


def from_decomposition(dec: ConstituentDecomposition) -> CodeSpec:
    """Constituents-body spec for a decomposition.

    The base field must be the canonical field of its order, so that a
    later parse rebuilds identical element packing.
    """
    if make_field(dec.field.order) != dec.field:
        raise ValueError(
            "decomposition field is not the canonical field of its order")
    cons = tuple(tuple(tuple(row) for row in code.rows)
                 for code in dec.constituents)
    return CodeSpec(dec.field.order, dec.m, dec.ell, None, cons)


# -- matrix files --------------------------------------------------------------


def _unpack_base(elem: int, p: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        out.append(elem % p)
        elem //= p
    return tuple(out)


def _pack_base(coeffs: Sequence[int], p: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * p + c
    return out


def _parse_elem_row(entries: tuple[tuple[int, ...], ...], field: Field,
                    no: int) -> tuple[int, ...]:
    row = []
    for cs in entries:
        cs = _canonical(cs)
        if len(cs) > field.degree:
            raise ParseError(
                no, f"entry has {len(cs)} coordinates, field degree is "
                f"{field.degree}")
        _check_coeffs(cs, field.char, "coordinate", no)
        row.append(_pack_base(cs, field.char))
    return tuple(row)


def parse_matrix(text: str) -> MatrixSpec:
    """Parse a matrix file; raises ParseError on bad input."""
    lines = _content_lines(text)
    eof = _eof_line(text)
    vals, _, pos, _ = _scan_headers(lines, ("q", "n"), ("rows",), eof)
    q, n = vals["q"], vals["n"]
    field = make_field(q)
    rows = []
    for no, ln in lines[pos:]:
        if not ln.startswith("- "):
            raise ParseError(no, f"expected a '- (...)' row line, got {ln!r}")
        entries = _parse_tuple(ln[2:], no)
        if len(entries) != n:
            raise ParseError(
                no, f"row has {len(entries)} entries, length is {n}")
        rows.append(_parse_elem_row(entries, field, no))
    if not rows:
        raise ParseError(eof, "rows block lists no rows")
    return MatrixSpec(q, n, tuple(rows))


def _elem_text(elem: int, field: Field) -> str:
    return poly_text(_unpack_base(elem, field.char, field.degree))


def render_matrix(mat: MatrixSpec) -> str:
    """Canonical text of a matrix file; parse_matrix inverts it."""
    field = make_field(mat.q)
    out = [f"q: {_order_text(mat.q)}", f"n: {mat.n}", "rows:"]
    for row in mat.rows:
        out.append("- " + _tuple_text(_elem_text(e, field) for e in row))
    return "\n".join(out) + "\n"


def to_code(mat: MatrixSpec) -> LinearCode:
    """Row span of a parsed matrix file."""
    return LinearCode.from_rows(make_field(mat.q), mat.n, mat.rows)


def from_code(code: LinearCode) -> MatrixSpec:
    """Matrix file content for a linear code.

    The field must be the canonical field of its order, so that a later
    parse rebuilds identical element packing.
    """
    if make_field(code.field.order) != code.field:
        raise ValueError("code field is not the canonical field of its order")
    return MatrixSpec(code.field.order, code.n,
                      tuple(tuple(row) for row in code.rows))


# -- database files -------------------------------------------------------------


def parse_database(text: str
                   ) -> dict[tuple[int, int, int], tuple[tuple[int, ...], ...]]:
    """Parse a code database file into a {(q, n, k): rows} mapping."""
    lines = _content_lines(text)
    eof = _eof_line(text)
    db: dict[tuple[int, int, int], tuple[tuple[int, ...], ...]] = {}
    idx = 0
    while idx < len(lines):
        no, ln = lines[idx]
        got = _RECORD_RE.fullmatch(ln)
        if not got:
            raise ParseError(
                no, f"expected a 'code q n k:' record header, got {ln!r}")
        q, n, k = (int(g) for g in got.groups())
        _parse_order(str(q), no, "q")
        if not 1 <= k <= n:
            raise ParseError(no, f"record has k = {k} outside 1..{n}")
        key = (q, n, k)
        if key in db:
            raise ParseError(no, f"duplicate record for q={q} n={n} k={k}")
        field = make_field(q)
        idx += 1
        rows = []
        while idx < len(lines) and lines[idx][1].startswith("- "):
            no2, ln2 = lines[idx]
            entries = _parse_tuple(ln2[2:], no2)
            if len(entries) != n:
                raise ParseError(
                    no2, f"row has {len(entries)} entries, record length "
                    f"is {n}")
            rows.append(_parse_elem_row(entries, field, no2))
            idx += 1
        if not rows:
            raise ParseError(no, f"record q={q} n={n} k={k} lists no rows")
        db[key] = tuple(rows)
    return db


def render_database(db: Mapping[tuple[int, int, int],
                                Sequence[Sequence[int]]]) -> str:
    """Canonical text of a code database, records sorted by key."""
    out = []
    for q, n, k in sorted(db):
        field = make_field(q)
        out.append(f"code {q} {n} {k}:")
        for row in db[(q, n, k)]:
            out.append("- " + _tuple_text(_elem_text(e, field) for e in row))
    return "\n".join(out) + "\n"
