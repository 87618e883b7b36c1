"""Independent brute-force oracles used only by the test suite.

Deliberately naive: per-bit numpy Gaussian elimination, Kronecker-product
Pauli matrices, and partial-trace entropies via eigenvalues.  None of it
shares code with the package paths it checks.
"""

from __future__ import annotations

import numpy as np

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


def naive_rank(mat: np.ndarray) -> int:
    m = (np.array(mat, dtype=np.uint8) & 1).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
    return r


def naive_rref(mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m = (np.array(mat, dtype=np.uint8) & 1).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def naive_left_solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """Any x with x @ mat = rhs over GF(2), by brute augmentation."""
    aug, pivots = naive_rref(np.array(mat).T % 2)
    # Solve mat^T x^T = rhs^T instead, re-using rref on the augmented system.
    mt = np.array(mat, dtype=np.uint8).T % 2
    b = np.array(rhs, dtype=np.uint8) % 2
    a = np.hstack([mt, b.reshape(-1, 1)])
    red, pivots = naive_rref(a)
    n = mt.shape[1]
    x = np.zeros(n, dtype=np.uint8)
    for row_i, c in enumerate(pivots):
        if c == n:
            return None
        x[c] = red[row_i, n]
    if ((x @ mt.T) % 2 != b).any():
        return None
    return x


def pauli_matrix(op) -> np.ndarray:
    """Dense matrix of a PauliOperator; index bit j is qubit j."""
    m = np.array([[1]], dtype=complex)
    for j in range(op.n):
        aj = (op.a >> j) & 1
        bj = (op.b >> j) & 1
        factor = (_X if aj else _I2) @ (_Z if bj else _I2)
        m = np.kron(factor, m)
    return (1j) ** (op.phase_exp % 4) * m


def stabilizer_projector(generators) -> np.ndarray:
    """Projector prod (I + M_i) / 2 over all generators."""
    n = generators[0].n
    proj = np.eye(2**n, dtype=complex)
    for g in generators:
        proj = proj @ (np.eye(2**n, dtype=complex) + pauli_matrix(g)) / 2.0
    return proj


def entropy_of_subset(state: np.ndarray, subset, n: int) -> float:
    """Entropy of the reduced density matrix on ``subset`` via eigenvalues."""
    keep = sorted(set(subset))
    m = len(keep)
    if m == 0 or m == n:
        return 0.0
    axes_keep = [n - 1 - q for q in keep]
    axes_rest = [ax for ax in range(n) if ax not in set(axes_keep)]
    t = state.reshape((2,) * n).transpose(axes_keep + axes_rest).reshape(2**m, -1)
    rho = t @ t.conj().T
    vals = np.linalg.eigvalsh(rho).real
    vals = vals[vals > 1e-13]
    return float(-(vals * np.log2(vals)).sum())
