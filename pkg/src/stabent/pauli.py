"""Pauli operators in symplectic form and stabilizer-code bookkeeping.

An n-qubit Pauli is stored as ``i^p * X^a * Z^b`` with bit-packed ``a``
(X part), ``b`` (Z part) and a phase exponent ``p`` mod 4.  The letter Y
at qubit j contributes a=b=1 there plus one unit of phase (Y = iXZ); a
leading minus sign adds two units.  Hermitian operators therefore
satisfy ``p = popcount(a & b) (mod 2)``.

This module also provides code validation, the standard form of the
generator matrix (identity block on the X part, Z-type generators last),
and completion of a codeword stabilizer with pure-Z logical operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InternalError, ParseError, ValidationError
from .f2 import F2Matrix, RowOp, rank

__all__ = [
    "PauliOperator",
    "StabilizerCode",
    "ValidationReport",
    "StandardFormResult",
    "parse_pauli",
    "commutes",
    "validate_code",
    "standard_form",
    "codeword_base",
    "complete_logicals",
    "z_type_count",
]

_LETTER = {"I": (0, 0, 0), "X": (1, 0, 0), "Y": (1, 1, 1), "Z": (0, 1, 0)}


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class PauliOperator:
    """``i^phase_exp * X^a * Z^b`` on ``n`` qubits."""

    n: int
    a: int
    b: int
    phase_exp: int

    def __post_init__(self) -> None:
        mask = (1 << self.n) - 1
        if self.a & ~mask or self.b & ~mask:
            raise ValueError("support bits beyond the qubit count")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def y_count(self) -> int:
        return _popcount(self.a & self.b)

    @property
    def weight(self) -> int:
        return _popcount(self.a | self.b)

    def support(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if (self.a | self.b) >> j & 1)

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_z_type(self) -> bool:
        return self.a == 0

    def is_hermitian(self) -> bool:
        return (self.phase_exp - self.y_count) % 2 == 0

    def commutes_with(self, other: "PauliOperator") -> bool:
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        return (_popcount(self.a & other.b) + _popcount(self.b & other.a)) % 2 == 0

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        # X^a1 Z^b1 X^a2 Z^b2 = (-1)^(b1.a2) X^(a1+a2) Z^(b1+b2)
        phase = (self.phase_exp + other.phase_exp + 2 * _popcount(self.b & other.a)) % 4
        return PauliOperator(self.n, self.a ^ other.a, self.b ^ other.b, phase)

    def negate(self) -> "PauliOperator":
        return PauliOperator(self.n, self.a, self.b, self.phase_exp + 2)

    def permute_qubits(self, perm: Sequence[int]) -> "PauliOperator":
        """Relabel qubits so new position p holds old qubit perm[p]."""
        a = sum(((self.a >> perm[p]) & 1) << p for p in range(self.n))
        b = sum(((self.b >> perm[p]) & 1) << p for p in range(self.n))
        return PauliOperator(self.n, a, b, self.phase_exp)

    def sign(self) -> int:
        """+1 or -1 for a Hermitian operator written in letters."""
        rem = (self.phase_exp - self.y_count) % 4
        if rem == 0:
            return 1
        if rem == 2:
            return -1
        raise ValueError("operator with imaginary overall phase has no letter sign")

    def __str__(self) -> str:
        body = "".join("IXZY"[((self.a >> j) & 1) | (((self.b >> j) & 1) << 1)] for j in range(self.n))
        return ("-" if self.sign() < 0 else "") + body


def parse_pauli(text: str) -> PauliOperator:
    """Parse a signed letter string such as ``-XZZY`` into an operator.

    Y at position j sets a_j = b_j = 1 and adds one to the phase
    exponent; a leading minus adds two.  Raises ParseError with the
    offending column on any other character.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty Pauli string")
    sign_offset = 0
    body = stripped
    phase = 0
    if body[0] in "+-":
        if body[0] == "-":
            phase = 2
        sign_offset = 1
        body = body[1:]
    if not body:
        raise ParseError("sign with no Pauli letters")
    a = b = 0
    for j, ch in enumerate(body):
        entry = _LETTER.get(ch.upper())
        if entry is None:
            raise ParseError(f"invalid Pauli letter {ch!r}", column=j + sign_offset)
        aj, bj, ph = entry
        a |= aj << j
        b |= bj << j
        phase += ph
    return PauliOperator(len(body), a, b, phase)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return p.commutes_with(q)


@dataclass(frozen=True)
class StabilizerCode:
    """n qubits, k logical qubits, n-k stabilizer generators."""

    n: int
    k: int
    generators: tuple[PauliOperator, ...]
    logical_z: tuple[PauliOperator, ...] | None = None

    def __post_init__(self) -> None:
        if self.k != self.n - len(self.generators):
            raise ValueError("k must equal n minus the generator count")
        for g in self.generators:
            if g.n != self.n:
                raise ValueError("generator length mismatch")

    @classmethod
    def from_generators(cls, generators: Sequence[PauliOperator]) -> "StabilizerCode":
        if not generators:
            raise ValueError("at least one generator required")
        n = generators[0].n
        return cls(n, n - len(generators), tuple(generators))

    def a_matrix(self) -> F2Matrix:
        return F2Matrix.from_ints((g.a for g in self.generators), self.n)

    def b_matrix(self) -> F2Matrix:
        return F2Matrix.from_ints((g.b for g in self.generators), self.n)

    def symplectic_matrix(self) -> F2Matrix:
        """(n-k) x 2n matrix with rows (a | b)."""
        return F2Matrix.from_ints((g.a | (g.b << self.n) for g in self.generators), 2 * self.n)


@dataclass(frozen=True)
class ValidationReport:
    hermitian: bool
    commuting: bool
    independent: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.hermitian and self.commuting and self.independent


def validate_code(code: StabilizerCode) -> ValidationReport:
    """Check Hermiticity, pairwise commutation, and GF(2) independence."""
    failures: list[str] = []
    hermitian = True
    for i, g in enumerate(code.generators):
        if not g.is_hermitian():
            hermitian = False
            failures.append(f"generator {i} is not Hermitian")
    commuting = True
    gens = code.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not gens[i].commutes_with(gens[j]):
                commuting = False
                failures.append(f"generators {i} and {j} anticommute")
    independent = rank(code.symplectic_matrix()) == len(gens)
    if not independent:
        failures.append("generators are dependent over GF(2)")
    return ValidationReport(hermitian, commuting, independent, tuple(failures))


def _require_valid(code: StabilizerCode) -> None:
    report = validate_code(code)
    if not report.ok:
        raise ValidationError("; ".join(report.failures))


@dataclass(frozen=True)
class StandardFormResult:
    """Generator matrix brought to ((I D | F G), (0 0 | J K)) shape.

    ``code`` holds the transformed generators on permuted qubits: the
    first ``r`` rows have an identity block on the X part, the remaining
    rows are Z-type.  ``qubit_perm[p]`` is the original index of the
    qubit now at position p.  ``row_ops`` replayed against the original
    generator list (as Pauli products) reproduces the transformed list
    before the qubit permutation.
    """

    code: StabilizerCode
    qubit_perm: tuple[int, ...]
    r: int
    row_ops: tuple[RowOp, ...] = field(repr=False, default=())

    @property
    def n(self) -> int:
        return self.code.n

    def a_matrix(self) -> F2Matrix:
        return self.code.a_matrix()

    def b_matrix(self) -> F2Matrix:
        return self.code.b_matrix()

    # Named views of the block structure.  x_tail is the X-part block on
    # non-pivot columns of the first r rows; the z_* blocks split the Z
    # part the same way, pure_z_* covering the trailing Z-type rows.

    @property
    def x_tail(self) -> F2Matrix:
        return self.a_matrix().submatrix(range(self.r), range(self.r, self.n))

    @property
    def z_head(self) -> F2Matrix:
        return self.b_matrix().submatrix(range(self.r), range(self.r))

    @property
    def z_tail(self) -> F2Matrix:
        return self.b_matrix().submatrix(range(self.r), range(self.r, self.n))

    @property
    def pure_z_head(self) -> F2Matrix:
        nk = len(self.code.generators)
        return self.b_matrix().submatrix(range(self.r, nk), range(self.r))

    @property
    def pure_z_tail(self) -> F2Matrix:
        nk = len(self.code.generators)
        return self.b_matrix().submatrix(range(self.r, nk), range(self.r, self.n))

    def original_frame_generators(self) -> tuple[PauliOperator, ...]:
        """Transformed generators relabelled back to the input qubit order."""
        inverse = [0] * len(self.qubit_perm)
        for p, q in enumerate(self.qubit_perm):
            inverse[q] = p
        return tuple(g.permute_qubits(inverse) for g in self.code.generators)


def standard_form(
    code: StabilizerCode, preferred_cols: Sequence[int] | None = None
) -> StandardFormResult:
    """Bring the generator matrix to standard form.

    Generator replacements are genuine Pauli products, so signs stay
    exact.  Pivots take the lowest-index candidate column (after any
    ``preferred_cols``, which are scanned first) and the lowest-index
    row, making the output deterministic.  Non-Z-type rows come first,
    ordered by pivot column; the qubit permutation moves pivot columns
    to the leading positions.
    """
    _require_valid(code)
    n = code.n
    gens = list(code.generators)
    ops: list[RowOp] = []

    order = list(range(n))
    if preferred_cols is not None:
        pref = list(dict.fromkeys(preferred_cols))
        if any(c < 0 or c >= n for c in pref):
            raise ValueError("preferred column out of range")
        order = pref + [c for c in range(n) if c not in set(pref)]

    def xor_rows(i: int, j: int) -> None:
        gens[i] = gens[i] * gens[j]
        ops.append(("xor", i, j))

    def swap_rows(i: int, j: int) -> None:
        gens[i], gens[j] = gens[j], gens[i]
        ops.append(("swap", i, j))

    pivots: list[int] = []
    prow = 0
    for col in order:
        if prow == len(gens):
            break
        hit = -1
        for i in range(prow, len(gens)):
            if (gens[i].a >> col) & 1:
                hit = i
                break
        if hit < 0:
            continue
        if hit != prow:
            swap_rows(prow, hit)
        for i in range(len(gens)):
            if i != prow and (gens[i].a >> col) & 1:
                xor_rows(i, prow)
        pivots.append(col)
        prow += 1
    r = prow

    # Canonicalise the pure-Z tail rows (their X part is already zero):
    # reduce their Z parts among themselves, same column order.
    zrow_ids = list(range(r, len(gens)))
    zprow = 0
    for col in order:
        if zprow == len(zrow_ids):
            break
        hit = -1
        for idx in range(zprow, len(zrow_ids)):
            if (gens[zrow_ids[idx]].b >> col) & 1:
                hit = idx
                break
        if hit < 0:
            continue
        if hit != zprow:
            swap_rows(zrow_ids[zprow], zrow_ids[hit])
        for idx in range(len(zrow_ids)):
            if idx != zprow and (gens[zrow_ids[idx]].b >> col) & 1:
                xor_rows(zrow_ids[idx], zrow_ids[zprow])
        zprow += 1

    perm = pivots + [c for c in order if c not in set(pivots)]
    permuted = tuple(g.permute_qubits(perm) for g in gens)
    new_code = StabilizerCode(n, code.k, permuted)
    return StandardFormResult(new_code, tuple(perm), r, tuple(ops))


def codeword_base(std: StandardFormResult) -> int:
    """Computational basis state (packed, permuted frame) fixed by every
    pure-Z generator with eigenvalue +1.

    A pure-Z row ``i^p Z^z`` fixes |x> iff z.x = p/2 (mod 2); the system
    is consistent for any valid code (an inconsistency would put -I in
    the group).  Free variables are set to zero.
    """
    nk = len(std.code.generators)
    zrows = [std.code.generators[i] for i in range(std.r, nk)]
    if not zrows:
        return 0
    mat = F2Matrix.from_ints((g.b for g in zrows), std.n)
    rhs = sum((((g.phase_exp >> 1) & 1) << i) for i, g in enumerate(zrows))
    from .f2 import solve

    x = solve(mat, rhs, side="right")
    if x is None:
        raise InternalError("inconsistent Z-type signs: -I is in the group")
    return x


def complete_logicals(code: StabilizerCode) -> tuple[PauliOperator, ...]:
    """Pure-Z logical operators completing the codeword stabilizer.

    Returns k Z-type operators that commute with every generator, are
    independent of the stabilizer group, and fix the basis codeword with
    eigenvalue +1.  The candidates live in the kernel of the X-part
    matrix; a dimension count shows k pure-Z representatives always
    exist, so no general fallback is needed.
    """
    _require_valid(code)
    if code.k == 0:
        return ()
    std = standard_form(code)
    n, r = code.n, std.r
    base = codeword_base(std)

    # In the permuted frame A = (I D) on the first r rows, so w is in the
    # kernel of A iff w_head = D w_tail.  Existing Z-type rows span part
    # of that kernel; extend the span by k more basis candidates.
    d = std.x_tail
    existing = [g.b for g in std.code.generators[r:]]
    chosen: list[int] = []
    span = list(existing)
    span_rank = rank(F2Matrix.from_ints(span, n)) if span else 0
    for t in range(n - r):
        tail = 1 << t
        head = 0
        for i in range(r):
            if (d.data[i] >> t) & 1:
                head |= 1 << i
        w = head | (tail << r)
        trial = span + [w]
        new_rank = rank(F2Matrix.from_ints(trial, n))
        if new_rank > span_rank:
            span = trial
            span_rank = new_rank
            chosen.append(w)
            if len(chosen) == code.k:
                break
    if len(chosen) != code.k:
        raise InternalError("failed to complete the logical-Z set")

    inverse = [0] * n
    for p, q in enumerate(std.qubit_perm):
        inverse[q] = p
    out = []
    for w in chosen:
        sign_exp = 2 * (_popcount(w & base) % 2)
        op = PauliOperator(n, 0, w, sign_exp).permute_qubits(inverse)
        out.append(op)
    return tuple(out)


def z_type_count(code: StabilizerCode) -> int:
    """Maximal number of Z-type generators over all generating sets."""
    _require_valid(code)
    return len(code.generators) - rank(code.a_matrix())
