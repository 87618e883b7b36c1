"""Local-Clifford conversion of CSS codewords to graph states.

Completing a CSS codeword stabilizer with its logical-Z rows and
reducing both halves to systematic form turns the generator matrix into
the stabilizer of a two-colorable graph state after a basis exchange on
the second color class; the adjacency picks up the X-tail block and its
transpose on the off-diagonal.  Local operations preserve every
bipartite entropy, so the graph carries the same entanglement bounds as
the codeword.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import CssSpec, css
from .errors import InternalError, ValidationError
from .f2 import F2Matrix, rank, rref
from .pauli import PauliOperator, StabilizerCode, complete_logicals

__all__ = [
    "GraphStateForm",
    "css_to_graph",
    "graph_bounds",
    "graph_state_code",
    "css_spec_from_code",
    "edges",
]


@dataclass(frozen=True)
class GraphStateForm:
    """Adjacency of the equivalent graph state on permuted qubits.

    ``first_class`` is the size of the first color class (the X-check
    qubits); the basis exchange acted on the remaining positions, listed
    in ``hadamard_positions``.  ``qubit_perm[p]`` is the original qubit
    at position p.
    """

    adjacency: F2Matrix
    first_class: int
    qubit_perm: tuple[int, ...]
    hadamard_positions: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.adjacency.rows

    @property
    def cross_block(self) -> F2Matrix:
        l = self.first_class
        return self.adjacency.submatrix(range(l), range(l, self.n))


def css_to_graph(spec: CssSpec, logical_z: F2Matrix | None = None) -> GraphStateForm:
    """Adjacency of the graph state locally equivalent to the codeword.

    ``logical_z`` rows complete the codeword stabilizer; when omitted
    they are derived from the pure-Z logical completion.  The result is
    bipartite-blocked by construction: no edges inside either color
    class.
    """
    code = css(spec)
    n, l = spec.n, spec.U.rows
    if logical_z is None:
        logical_z = F2Matrix.from_ints((g.b for g in complete_logicals(code)), n)
    if logical_z.cols != n or logical_z.rows != code.k:
        raise ValidationError("logical-Z block must be k rows of n columns")

    u_red = rref(spec.U)
    if len(u_red.pivot_cols) != l:
        raise ValidationError("rows of U are dependent")
    perm1 = list(u_red.pivot_cols) + [c for c in range(n) if c not in set(u_red.pivot_cols)]
    u_sys = u_red.matrix.permute_columns(perm1)

    stacked = spec.V.vstack(logical_z).permute_columns(perm1)
    tail = list(range(l, n))
    reduced = rref(stacked, col_order=tail + list(range(l)))
    if len(reduced.pivot_cols) != n - l or any(p < l for p in reduced.pivot_cols):
        raise InternalError("Z half does not reduce to systematic form on the tail qubits")

    full_perm = list(range(l)) + list(reduced.pivot_cols)
    u_final = u_sys.permute_columns(full_perm)
    z_final = reduced.matrix.permute_columns(full_perm)

    cross = u_final.submatrix(range(l), range(l, n))
    head = z_final.submatrix(range(n - l), range(l))
    if head.to_lists() != cross.transpose().to_lists():
        raise InternalError("systematic Z block is not the transpose of the X tail")

    rows = []
    for i in range(l):
        rows.append(cross.data[i] << l)
    for j in range(n - l):
        rows.append(cross.column(j))
    adjacency = F2Matrix.from_ints(rows, n)
    if not adjacency.is_symmetric():
        raise InternalError("graph adjacency is not symmetric")
    qubit_perm = tuple(perm1[p] for p in full_perm)
    return GraphStateForm(adjacency, l, qubit_perm, tuple(range(l, n)))


def graph_bounds(form: GraphStateForm) -> tuple[int, int]:
    """(upper, lower) entanglement bounds read off the bipartite graph.

    Upper: the first color class size (every edge can be covered from
    there).  Lower: the rank of the cross block, which is half the
    adjacency rank.  Only bipartite-blocked forms are supported.
    """
    l, n = form.first_class, form.n
    adj = form.adjacency
    for i in range(l):
        if adj.data[i] & ((1 << l) - 1):
            raise ValidationError("adjacency has edges inside the first color class")
    for i in range(l, n):
        if adj.data[i] >> l:
            raise ValidationError("adjacency has edges inside the second color class")
    return l, rank(form.cross_block)


def graph_state_code(adjacency: F2Matrix) -> StabilizerCode:
    """Stabilizer state generated by X_i Z^(neighbors of i)."""
    if adjacency.rows != adjacency.cols or not adjacency.is_symmetric():
        raise ValidationError("adjacency must be symmetric and square")
    if any((adjacency.data[i] >> i) & 1 for i in range(adjacency.rows)):
        raise ValidationError("adjacency must have zero diagonal")
    n = adjacency.rows
    gens = tuple(PauliOperator(n, 1 << i, adjacency.data[i], 0) for i in range(n))
    return StabilizerCode(n, 0, gens)


def css_spec_from_code(code: StabilizerCode) -> CssSpec | None:
    """Recover (U, V) when every generator is pure X-type or pure Z-type."""
    u_rows, v_rows = [], []
    for g in code.generators:
        if g.b == 0 and g.a != 0:
            u_rows.append(g.a)
        elif g.a == 0 and g.b != 0:
            v_rows.append(g.b)
        else:
            return None
    return CssSpec(F2Matrix.from_ints(u_rows, code.n), F2Matrix.from_ints(v_rows, code.n))


def edges(form: GraphStateForm) -> list[tuple[int, int]]:
    out = []
    for i in range(form.n):
        row = form.adjacency.data[i] >> (i + 1)
        j = i + 1
        while row:
            if row & 1:
                out.append((i, j))
            row >>= 1
            j += 1
    return out
