"""Random stabilizer and CSS codes for property tests.

Random codes come from conjugating the trivial stabilizer Z_1..Z_(n-k)
through a random Clifford circuit, tracking phases exactly, then
randomly flipping generator signs.  CSS variants sample check matrices
directly under their orthogonality constraints.
"""

from __future__ import annotations

import random

from stabent.codes import CssSpec
from stabent.f2 import F2Matrix, kernel, rank
from stabent.pauli import PauliOperator, StabilizerCode


def _apply_h(op: PauliOperator, q: int) -> PauliOperator:
    bit = 1 << q
    aq, bq = op.a & bit, op.b & bit
    phase = op.phase_exp + (2 if (aq and bq) else 0)
    a = (op.a & ~bit) | (bit if bq else 0)
    b = (op.b & ~bit) | (bit if aq else 0)
    return PauliOperator(op.n, a, b, phase)


def _apply_s(op: PauliOperator, q: int) -> PauliOperator:
    bit = 1 << q
    if not op.a & bit:
        return op
    return PauliOperator(op.n, op.a, op.b ^ bit, op.phase_exp + 1)


def _apply_cnot(op: PauliOperator, c: int, t: int) -> PauliOperator:
    # Phase-free in the global i^p X^a Z^b convention: images of X and Z
    # factors stay inside their own blocks, so no reorder sign appears.
    xc = (op.a >> c) & 1
    zt = (op.b >> t) & 1
    a = op.a ^ (xc << t)
    b = op.b ^ (zt << c)
    return PauliOperator(op.n, a, b, op.phase_exp)


def random_clifford_code(n: int, k: int, rng: random.Random, gates: int | None = None) -> StabilizerCode:
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    gens = [PauliOperator(n, 0, 1 << i, 0) for i in range(n - k)]
    for _ in range(gates if gates is not None else 3 * n * n):
        kind = rng.randrange(3)
        if kind == 0:
            q = rng.randrange(n)
            gens = [_apply_h(g, q) for g in gens]
        elif kind == 1:
            q = rng.randrange(n)
            gens = [_apply_s(g, q) for g in gens]
        else:
            c, t = rng.sample(range(n), 2)
            gens = [_apply_cnot(g, c, t) for g in gens]
    gens = [g.negate() if rng.random() < 0.3 else g for g in gens]
    return StabilizerCode(n, k, tuple(gens))


def random_css_spec(n: int, lx: int, lz: int, rng: random.Random) -> CssSpec:
    """Random CSS checks: U full rank lx, V in the kernel of U, rank lz."""
    if lx + lz > n:
        raise ValueError("too many checks")
    while True:
        u_rows = [rng.getrandbits(n) for _ in range(lx)]
        u = F2Matrix.from_ints(u_rows, n)
        if all(u_rows) and rank(u) == lx:
            break
    ker = kernel(u.transpose())  # vectors v with v U^T = 0, i.e. U v^T = 0
    v_rows: list[int] = []
    guard = 0
    while len(v_rows) < lz:
        guard += 1
        if guard > 10000:
            raise RuntimeError("failed to sample independent Z checks")
        combo = 0
        for row in ker.data:
            if rng.random() < 0.5:
                combo ^= row
        if combo == 0:
            continue
        trial = v_rows + [combo]
        if rank(F2Matrix.from_ints(trial, n)) == len(trial):
            v_rows = trial
    return CssSpec(u, F2Matrix.from_ints(v_rows, n))


def random_dual_css_spec(n: int, l: int, rng: random.Random) -> CssSpec:
    """Random dual-containing CSS: U self-orthogonal of rank l, V = U."""
    if 2 * l > n:
        raise ValueError("need 2l <= n")
    rows: list[int] = []
    ones = (1 << n) - 1
    guard = 0
    while len(rows) < l:
        guard += 1
        if guard > 50000:
            raise RuntimeError("failed to sample a self-orthogonal code")
        # Constraints: orthogonal to current rows and to the all-ones
        # vector (even weight = self-orthogonality over GF(2)).
        constraints = F2Matrix.from_ints(rows + [ones], n)
        candidates = kernel(constraints.transpose())
        if candidates.rows == 0:
            raise RuntimeError("no candidates left")
        combo = 0
        for row in candidates.data:
            if rng.random() < 0.5:
                combo ^= row
        if combo == 0:
            continue
        trial = rows + [combo]
        if rank(F2Matrix.from_ints(trial, n)) == len(trial):
            rows = trial
    u = F2Matrix.from_ints(rows, n)
    return CssSpec(u, u)
