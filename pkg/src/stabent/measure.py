"""Single-qubit Pauli measurements on codeword stabilizer states and the
minimal disentangling-sequence search.

Measuring a single-qubit Pauli either leaves the state unchanged (the
operator, up to sign, is already in the group: one deterministic
outcome) or splits it into two equiprobable branches via the standard
generator update.  Branches of one measurement differ only in generator
signs, so a fixed measurement sequence drives every branch through the
same unsigned group; the search for the shortest sequence after which
all branches are product states therefore walks unsigned groups only,
with iterative deepening and a transposition table on the row-reduced
generator matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .f2 import F2Matrix, rank, solve
from .pauli import PauliOperator, StabilizerCode, complete_logicals, validate_code

__all__ = [
    "CodewordStabilizerState",
    "MeasurementBranch",
    "PersistencyResult",
    "codeword_state",
    "measure",
    "is_product",
    "persistency",
    "branch_product_params",
]

_BASES = ("Z", "X", "Y")


def _basis_pauli(n: int, qubit: int, basis: str) -> PauliOperator:
    if qubit < 0 or qubit >= n:
        raise ValueError(f"qubit {qubit} out of range for n={n}")
    bit = 1 << qubit
    if basis == "X":
        return PauliOperator(n, bit, 0, 0)
    if basis == "Z":
        return PauliOperator(n, 0, bit, 0)
    if basis == "Y":
        return PauliOperator(n, bit, bit, 1)
    raise ValueError(f"basis must be X, Y or Z, got {basis!r}")


@dataclass(frozen=True)
class CodewordStabilizerState:
    """A fully determined n-qubit stabilizer state: n signed generators."""

    n: int
    generators: tuple[PauliOperator, ...]

    def __post_init__(self) -> None:
        if len(self.generators) != self.n:
            raise ValidationError("a stabilizer state needs exactly n generators")

    def symplectic_matrix(self) -> F2Matrix:
        return F2Matrix.from_ints((g.a | (g.b << self.n) for g in self.generators), 2 * self.n)


def codeword_state(code: StabilizerCode) -> CodewordStabilizerState:
    """The basis codeword as a stabilizer state: generators plus the
    sign-fixed pure-Z logical completion."""
    logicals = code.logical_z if code.logical_z is not None else complete_logicals(code)
    gens = tuple(code.generators) + tuple(logicals)
    state = CodewordStabilizerState(code.n, gens)
    as_code = StabilizerCode(code.n, 0, gens)
    report = validate_code(as_code)
    if not report.ok:
        raise ValidationError("; ".join(report.failures))
    return state


@dataclass(frozen=True)
class MeasurementBranch:
    outcome: int
    probability: float
    state: CodewordStabilizerState


def _group_member_exact(
    state: CodewordStabilizerState, p: PauliOperator
) -> PauliOperator | None:
    """The group element with the same (a|b) as ``p``, or None."""
    target = p.a | (p.b << state.n)
    mu = solve(state.symplectic_matrix(), target, side="left")
    if mu is None:
        return None
    acc = PauliOperator(state.n, 0, 0, 0)
    for i, g in enumerate(state.generators):
        if (mu >> i) & 1:
            acc = acc * g
    return acc


def measure(
    state: CodewordStabilizerState, qubit: int, basis: str
) -> list[MeasurementBranch]:
    """Apply a single-qubit Pauli measurement, returning all branches.

    One branch of probability 1 when the measured operator (up to sign)
    is in the group, otherwise two branches of probability 1/2 with the
    signed operator adjoined and anticommuting generators repaired.
    """
    p = _basis_pauli(state.n, qubit, basis)
    member = _group_member_exact(state, p)
    if member is not None:
        outcome = 1 if member.phase_exp == p.phase_exp else -1
        return [MeasurementBranch(outcome, 1.0, state)]
    anti = [i for i, g in enumerate(state.generators) if not g.commutes_with(p)]
    i0 = anti[0]
    branches = []
    for outcome in (1, -1):
        gens = list(state.generators)
        for i in anti[1:]:
            gens[i] = gens[i] * gens[i0]
        gens[i0] = p if outcome == 1 else p.negate()
        branches.append(
            MeasurementBranch(outcome, 0.5, CodewordStabilizerState(state.n, tuple(gens)))
        )
    return branches


# -- unsigned-group machinery for the sequence search -----------------


def _canonical(rows: Sequence[int], n: int) -> tuple[int, ...]:
    """RREF of packed (a | b << n) rows: canonical form of the group."""
    work = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    for row in sorted(work, reverse=True):
        cur = row
        for piv, red in zip(pivots, out):
            if (cur >> piv) & 1:
                cur ^= red
        if cur == 0:
            continue
        piv = cur.bit_length() - 1
        out = [r ^ cur if (r >> piv) & 1 else r for r in out]
        # insert keeping pivots descending
        idx = 0
        while idx < len(pivots) and pivots[idx] > piv:
            idx += 1
        pivots.insert(idx, piv)
        out.insert(idx, cur)
    return tuple(out)


def _member(rows: Sequence[int], vec: int) -> bool:
    cur = vec
    for red in rows:
        piv = red.bit_length() - 1
        if (cur >> piv) & 1:
            cur ^= red
    return cur == 0


def _symp_anticommutes(row: int, vec: int, n: int) -> bool:
    mask = (1 << n) - 1
    a1, b1 = row & mask, row >> n
    a2, b2 = vec & mask, vec >> n
    return ((a1 & b2).bit_count() + (b1 & a2).bit_count()) % 2 == 1


def _measure_unsigned(rows: tuple[int, ...], vec: int, n: int) -> tuple[int, ...]:
    anti = [r for r in rows if _symp_anticommutes(r, vec, n)]
    keep = [r for r in rows if not _symp_anticommutes(r, vec, n)]
    fixed = [r ^ anti[0] for r in anti[1:]]
    return _canonical(keep + fixed + [vec], n)


def _basis_vec(n: int, qubit: int, basis: str) -> int:
    p = _basis_pauli(n, qubit, basis)
    return p.a | (p.b << n)


def _analysis(rows: Sequence[int], n: int) -> tuple[list[int | None], int]:
    """Per-qubit weight-1 group elements and the count of entangled
    clusters (a valid lower bound on the measurements still needed,
    since one measurement touches one cluster)."""
    mask = (1 << n) - 1
    weight1: list[int | None] = [None] * n
    for j in range(n):
        for basis in _BASES:
            vec = _basis_vec(n, j, basis)
            if _member(rows, vec):
                weight1[j] = vec
                break
    cleaned = []
    for row in rows:
        cur = row
        for j in range(n):
            w = weight1[j]
            if w is None or not ((cur | (cur >> n)) >> j) & 1:
                continue
            # An abelian group forces the row's qubit-j part to match the
            # weight-1 element there, so xoring it out clears qubit j.
            candidate = cur ^ w
            if not ((candidate | (candidate >> n)) >> j) & 1:
                cur = candidate
        if cur:
            cleaned.append(cur)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched: set[int] = set()
    for row in cleaned:
        supp = [j for j in range(n) if ((row | (row >> n)) >> j) & 1]
        touched.update(supp)
        for a, b in zip(supp, supp[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    clusters = len({find(j) for j in touched})
    return weight1, clusters


def is_product(state: CodewordStabilizerState) -> bool:
    """True iff the group has a weight-1 generating set, i.e. every qubit
    carries its own single-qubit stabilizer."""
    rows = _canonical([g.a | (g.b << state.n) for g in state.generators], state.n)
    weight1, _ = _analysis(rows, state.n)
    return all(w is not None for w in weight1)


@dataclass(frozen=True)
class PersistencyResult:
    count: int
    sequence: tuple[tuple[int, str], ...]
    minimal: bool


def _move_order(rows: Sequence[int], n: int, weight1: Sequence[int | None]) -> list[int]:
    mask = (1 << n) - 1
    incidence = []
    for j in range(n):
        if weight1[j] is not None:
            continue  # measuring an already-product qubit never helps
        count = sum(1 for r in rows if ((r | (r >> n)) >> j) & 1)
        incidence.append((-count, j))
    incidence.sort()
    return [j for _, j in incidence]


def persistency(code: StabilizerCode, budget: int | None = None) -> PersistencyResult:
    """Minimal number of single-qubit Pauli measurements after which every
    outcome branch is a product state.

    Exact (iterative deepening over measurement sequences) within the
    budget, which defaults to min(n, 2 * rank of the X part).  If the
    budget is exhausted the guaranteed fallback is returned: Z
    measurements on the X-part pivot qubits always disentangle the
    state, so that sequence is emitted flagged non-minimal.
    """
    report = validate_code(code)
    if not report.ok:
        raise ValidationError("; ".join(report.failures))
    state = codeword_state(code)
    n = state.n
    root = _canonical([g.a | (g.b << n) for g in state.generators], n)
    r = rank(code.a_matrix())
    if budget is None:
        budget = min(n, 2 * r)
    if budget < 0:
        raise ValueError("budget must be non-negative")

    memo: dict[tuple[int, ...], int] = {}

    def dfs(rows: tuple[int, ...], depth_left: int) -> list[tuple[int, str]] | None:
        weight1, clusters = _analysis(rows, n)
        if clusters == 0:
            return []
        if depth_left < clusters:
            return None
        if memo.get(rows, -1) >= depth_left:
            return None
        for qubit in _move_order(rows, n, weight1):
            for basis in _BASES:
                vec = _basis_vec(n, qubit, basis)
                if _member(rows, vec):
                    continue  # one-result measurement, state unchanged
                child = _measure_unsigned(rows, vec, n)
                sub = dfs(child, depth_left - 1)
                if sub is not None:
                    return [(qubit, basis)] + sub
        memo[rows] = depth_left
        return None

    for depth in range(budget + 1):
        found = dfs(root, depth)
        if found is not None:
            return PersistencyResult(depth, tuple(found), True)

    # Guaranteed disentangling sequence: Z on each X-part pivot qubit.
    from .f2 import rref

    pivots = rref(code.a_matrix()).pivot_cols
    seq = tuple((q, "Z") for q in pivots)
    return PersistencyResult(len(seq), seq, False)


_EIGENVECTORS = {
    ("Z", 1): (1.0, 0.0),
    ("Z", -1): (0.0, 1.0),
    ("X", 1): (2 ** -0.5, 2 ** -0.5),
    ("X", -1): (2 ** -0.5, -(2 ** -0.5)),
    ("Y", 1): (2 ** -0.5, 2 ** -0.5 * 1j),
    ("Y", -1): (2 ** -0.5, -(2 ** -0.5) * 1j),
}


def branch_product_params(
    state: CodewordStabilizerState, sequence: Sequence[tuple[int, str]]
) -> np.ndarray:
    """Product-state amplitudes of one measurement branch.

    Follows ``sequence`` taking the first branch at every step; the
    final state must be a product state (as after a disentangling
    sequence), and its per-qubit (amplitude of |0>, amplitude of |1>)
    pairs are returned as an (n, 2) complex array.  Such a branch state
    overlaps the original codeword with probability equal to the branch
    probability, which makes it a strong starting point for the
    closest-product-state iteration.
    """
    cur = state
    for qubit, basis in sequence:
        cur = measure(cur, qubit, basis)[0].state
    params = np.zeros((state.n, 2), dtype=complex)
    for j in range(state.n):
        hit = None
        for basis in _BASES:
            member = _group_member_exact(cur, _basis_pauli(state.n, j, basis))
            if member is not None and not member.is_identity():
                sign = 1 if member.phase_exp == _basis_pauli(state.n, j, basis).phase_exp else -1
                hit = (basis, sign)
                break
        if hit is None:
            raise ValidationError("branch state is not a product state")
        params[j] = _EIGENVECTORS[hit]
    return params
