"""Entanglement of stabilizer codewords: bounds, measurement search,
graph-state conversion, and an iterated exact-value estimate."""

from .bounds import (
    BipartitionReport,
    bipartition_rank,
    family_expected,
    lower_bound,
    upper_bound_nonz,
)
from .codes import CssSpec, css, gottesman, is_dual_containing, parse_code, toric
from .exact import (
    EntanglementReport,
    IterationResult,
    build_codeword,
    entanglement_report,
    iterate_closest_product,
    overlap_f,
    reduced_entropy,
)
from .f2 import F2Matrix, kernel, rank, rref, solve
from .graphstate import GraphStateForm, css_to_graph, graph_bounds, graph_state_code
from .measure import (
    CodewordStabilizerState,
    MeasurementBranch,
    PersistencyResult,
    codeword_state,
    is_product,
    measure,
    persistency,
)
from .pauli import (
    PauliOperator,
    StabilizerCode,
    StandardFormResult,
    commutes,
    complete_logicals,
    parse_pauli,
    standard_form,
    validate_code,
    z_type_count,
)

__version__ = "0.1.0"

__all__ = [
    "BipartitionReport",
    "CodewordStabilizerState",
    "CssSpec",
    "EntanglementReport",
    "F2Matrix",
    "GraphStateForm",
    "IterationResult",
    "MeasurementBranch",
    "PauliOperator",
    "PersistencyResult",
    "StabilizerCode",
    "StandardFormResult",
    "bipartition_rank",
    "build_codeword",
    "codeword_state",
    "commutes",
    "complete_logicals",
    "css",
    "css_to_graph",
    "entanglement_report",
    "family_expected",
    "gottesman",
    "graph_bounds",
    "graph_state_code",
    "is_dual_containing",
    "is_product",
    "iterate_closest_product",
    "kernel",
    "lower_bound",
    "measure",
    "overlap_f",
    "parse_code",
    "parse_pauli",
    "persistency",
    "rank",
    "reduced_entropy",
    "rref",
    "solve",
    "standard_form",
    "toric",
    "upper_bound_nonz",
    "validate_code",
    "z_type_count",
]
