"""Constructors for CSS, toric and Gottesman codes, plus the text parser.

The shared text format is one generator per line in letters I/X/Y/Z with
an optional +/- sign prefix; blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .f2 import F2Matrix, rank
from .pauli import PauliOperator, StabilizerCode, parse_pauli, validate_code

__all__ = [
    "CssSpec",
    "css",
    "is_dual_containing",
    "toric",
    "gottesman",
    "parse_code",
    "code_to_text",
    "parse_binary_matrix",
]


@dataclass(frozen=True)
class CssSpec:
    """X checks ``U`` and Z checks ``V``; commutation needs U V^T = 0."""

    U: F2Matrix
    V: F2Matrix

    def __post_init__(self) -> None:
        if self.U.cols != self.V.cols:
            raise ValueError("U and V must have the same number of columns")

    @property
    def n(self) -> int:
        return self.U.cols


def css(spec: CssSpec) -> StabilizerCode:
    """Build the stabilizer code with X-type rows from U and Z-type from V."""
    u, v = spec.U, spec.V
    if not (u @ v.transpose()).is_zero():
        raise ValidationError("U V^T != 0: X and Z checks do not commute")
    if rank(u) != u.rows:
        raise ValidationError("rows of U are dependent")
    if rank(v) != v.rows:
        raise ValidationError("rows of V are dependent")
    n = spec.n
    gens = [PauliOperator(n, row, 0, 0) for row in u.data]
    gens += [PauliOperator(n, 0, row, 0) for row in v.data]
    return StabilizerCode(n, n - u.rows - v.rows, tuple(gens))


def is_dual_containing(spec: CssSpec) -> bool:
    """True iff V spans the same row space as U and U is self-orthogonal."""
    if not (spec.U @ spec.U.transpose()).is_zero():
        return False
    ru, rv = rank(spec.U), rank(spec.V)
    return ru == rv == rank(spec.U.vstack(spec.V))


def _toric_spec(k: int) -> CssSpec:
    """Star and plaquette checks on a k x k periodic lattice.

    Qubits sit on edges: vertical edge at (x, y) gets index y*k + x,
    horizontal edge at (x, y) gets k^2 + y*k + x.  The last vertex and
    last face operator are dropped (their products telescope to the
    identity), leaving 2k^2 - 2 independent generators.
    """
    n = 2 * k * k

    def v_edge(x: int, y: int) -> int:
        return (y % k) * k + (x % k)

    def h_edge(x: int, y: int) -> int:
        return k * k + (y % k) * k + (x % k)

    u_rows = []
    for y in range(k):
        for x in range(k):
            if (x, y) == (k - 1, k - 1):
                continue
            row = 0
            for e in (v_edge(x, y), v_edge(x, y - 1), h_edge(x, y), h_edge(x - 1, y)):
                row |= 1 << e
            u_rows.append(row)
    v_rows = []
    for y in range(k):
        for x in range(k):
            if (x, y) == (k - 1, k - 1):
                continue
            row = 0
            for e in (v_edge(x, y), v_edge(x + 1, y), h_edge(x, y), h_edge(x, y + 1)):
                row |= 1 << e
            v_rows.append(row)
    return CssSpec(F2Matrix.from_ints(u_rows, n), F2Matrix.from_ints(v_rows, n))


def toric(k: int) -> StabilizerCode:
    """Toric code on a k x k lattice: 2k^2 qubits, two logical qubits."""
    if k < 2:
        raise ValidationError("toric lattice size must be at least 2")
    return css(_toric_spec(k))


# Primitive polynomials over GF(2), bit i = coefficient of x^i.
_PRIMITIVE_POLY = {
    3: 0b1011,          # x^3 + x + 1
    4: 0b10011,         # x^4 + x + 1
    5: 0b100101,        # x^5 + x^2 + 1
    6: 0b1000011,       # x^6 + x + 1
    7: 0b10001001,      # x^7 + x^3 + 1
    8: 0b100011101,     # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,    # x^9 + x^4 + 1
    10: 0b10000001001,  # x^10 + x^3 + 1
}


def _companion_matrix(poly: int, m: int) -> F2Matrix:
    """Multiplication-by-x matrix in the polynomial basis of GF(2^m)."""
    rows = [0] * m
    for j in range(m - 1):
        rows[j + 1] |= 1 << j
    for i in range(m):
        if (poly >> i) & 1:
            rows[i] |= 1 << (m - 1)
    return F2Matrix.from_ints(rows, m)


def gottesman(m: int, C: F2Matrix | None = None) -> StabilizerCode:
    """The [[2^m, 2^m - m - 2, 3]] code family, m >= 3.

    Generators are X on all qubits, Z on all qubits, and m rows pairing
    the binary-counting matrix H (column c = bits of the integer c) with
    C H, where C must be invertible with no nonzero fixed point.  The
    default C is the companion matrix of a primitive polynomial, which
    satisfies both conditions for every m >= 2.
    """
    if m < 3:
        raise ValidationError("gottesman family needs m >= 3")
    if C is None:
        if m not in _PRIMITIVE_POLY:
            raise ValidationError(f"no built-in primitive polynomial for m={m}")
        C = _companion_matrix(_PRIMITIVE_POLY[m], m)
    if C.rows != m or C.cols != m:
        raise ValidationError("C must be m x m")
    if rank(C) != m:
        raise ValidationError("C is singular")
    eye = F2Matrix.identity(m)
    if rank(C + eye) != m:
        raise ValidationError("C has a nonzero fixed point (C + I is singular)")

    n = 1 << m
    h_rows = [sum(((c >> i) & 1) << c for c in range(n)) for i in range(m)]
    h = F2Matrix.from_ints(h_rows, n)
    ch = C @ h
    all_ones = (1 << n) - 1
    gens = [PauliOperator(n, all_ones, 0, 0), PauliOperator(n, 0, all_ones, 0)]
    for i in range(m):
        a, b = h.data[i], ch.data[i]
        gens.append(PauliOperator(n, a, b, (a & b).bit_count()))
    return StabilizerCode(n, n - m - 2, tuple(gens))


def parse_code(text: str) -> StabilizerCode:
    """Parse a multi-line letter listing into a validated code."""
    gens: list[PauliOperator] = []
    width: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        # Tolerate spacing between letters, as in printed tables.
        line = line.replace(" ", "").replace("\t", "")
        try:
            op = parse_pauli(line)
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if width is None:
            width = op.n
        elif op.n != width:
            raise ParseError(f"row has {op.n} letters, expected {width}", line=lineno)
        gens.append(op)
    if not gens:
        raise ParseError("no generators found")
    assert width is not None
    if len(gens) > width:
        raise ValidationError("more generators than qubits")
    code = StabilizerCode(width, width - len(gens), tuple(gens))
    report = validate_code(code)
    if not report.ok:
        raise ValidationError("; ".join(report.failures))
    return code


def code_to_text(code: StabilizerCode) -> str:
    return "\n".join(str(g) for g in code.generators) + "\n"


def parse_binary_matrix(text: str) -> F2Matrix:
    """Parse lines of 0/1 digits (spaces allowed) into a matrix."""
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().replace(" ", "")
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise ParseError("binary matrix rows must be 0/1 digits", line=lineno)
        rows.append([int(c) for c in line])
    if not rows:
        raise ParseError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("ragged binary matrix")
    return F2Matrix.from_rows(rows)
