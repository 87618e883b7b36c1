"""Dense codeword oracle and the closest-product-state iteration.

The basis codeword expands into 2^r computational basis terms, one per
combination of the r non-Z-type standard-form generators, with exact
unit-modulus coefficients obtained from Pauli products (no hand-derived
sign rules).  That expansion backs three things: the dense state vector
for small n, the product-state overlap used by the fixed-point
iteration, and the entanglement report that stitches the bounds, the
measurement search and the iteration together.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import log2
from typing import Sequence

import numpy as np

from .bounds import (
    EXHAUSTIVE_QUBIT_LIMIT,
    BipartitionReport,
    bipartition_rank,
    lower_bound,
    upper_bound_nonz,
)
from .errors import InternalError, ResourceLimitError, ValidationError
from .measure import PersistencyResult, branch_product_params, codeword_state, persistency
from .pauli import (
    PauliOperator,
    StabilizerCode,
    codeword_base,
    standard_form,
    validate_code,
)

__all__ = [
    "IterationResult",
    "EntanglementReport",
    "build_codeword",
    "reduced_entropy",
    "overlap_f",
    "iterate_closest_product",
    "entanglement_report",
]

_I_POWERS = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)

DEFAULT_DENSE_LIMIT = 20
DEFAULT_SUM_LIMIT = 24


@dataclass(frozen=True)
class _Expansion:
    """Codeword written as norm * sum_t coeffs[t] |vcodes[t]>."""

    vcodes: np.ndarray
    coeffs: np.ndarray
    base: int
    r: int
    norm: float


def _require_valid(code: StabilizerCode) -> None:
    report = validate_code(code)
    if not report.ok:
        raise ValidationError("; ".join(report.failures))


@lru_cache(maxsize=32)
def _expansion(code: StabilizerCode) -> _Expansion:
    """Exact basis-state expansion of the codeword.

    The base computational state solves the Z-type sign system (so a
    generator like -Z flips the corresponding base bit), and each of the
    2^r group combinations of the non-Z-type rows contributes one basis
    state with coefficient i^p (-1)^(b.base).  Terms are enumerated in
    Gray-code order so each step costs one Pauli product.  Returned
    arrays are cached and must be treated as read-only.
    """
    _require_valid(code)
    std = standard_form(code)
    r = std.r
    n = code.n
    base_perm = codeword_base(std)
    inverse = [0] * n
    for p, q in enumerate(std.qubit_perm):
        inverse[q] = p
    base = sum(((base_perm >> inverse[q]) & 1) << q for q in range(n))
    gens = std.original_frame_generators()[:r]

    size = 1 << r
    vcodes = np.empty(size, dtype=np.int64)
    coeffs = np.empty(size, dtype=np.complex128)
    vcodes[0] = base
    coeffs[0] = 1.0
    cur = PauliOperator(n, 0, 0, 0)
    for t in range(1, size):
        flip = (t & -t).bit_length() - 1
        cur = cur * gens[flip]
        gray = t ^ (t >> 1)
        sign = -1.0 if (cur.b & base).bit_count() & 1 else 1.0
        coeffs[gray] = _I_POWERS[cur.phase_exp] * sign
        vcodes[gray] = base ^ cur.a
    return _Expansion(vcodes, coeffs, base, r, 2.0 ** (-r / 2))


def build_codeword(code: StabilizerCode, dense_limit: int = DEFAULT_DENSE_LIMIT) -> np.ndarray:
    """Dense unit-norm state vector of the basis codeword.

    Basis index bit j is qubit j.  The result is a simultaneous +1
    eigenvector of every generator and of the pure-Z logical completion.
    """
    _require_valid(code)
    if code.n > dense_limit:
        raise ResourceLimitError(f"dense build refused for n={code.n} > limit {dense_limit}")
    exp = _expansion(code)
    amps = np.zeros(1 << code.n, dtype=np.complex128)
    np.add.at(amps, exp.vcodes, exp.coeffs)
    amps *= exp.norm
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > 1e-9:
        raise InternalError(f"codeword expansion norm {norm} != 1; colliding terms?")
    return amps


def reduced_entropy(state: np.ndarray, subset: Sequence[int]) -> float:
    """Von Neumann entropy (bits) of the state reduced to the complement
    of ``subset``; equals the entropy of the subset side for pure states."""
    n = int(round(log2(state.size)))
    if 1 << n != state.size:
        raise ValueError("state length is not a power of two")
    side = sorted(set(subset))
    if any(q < 0 or q >= n for q in side):
        raise ValueError("subset qubit out of range")
    m = len(side)
    if m == 0 or m == n:
        return 0.0
    axes_a = [n - 1 - q for q in side]
    axes_b = [ax for ax in range(n) if ax not in set(axes_a)]
    block = state.reshape((2,) * n).transpose(axes_a + axes_b).reshape(1 << m, -1)
    svals = np.linalg.svd(block, compute_uv=False)
    probs = svals**2
    probs = probs[probs > 1e-14]
    return float(-(probs * np.log2(probs)).sum())


def _check_params(params: np.ndarray, n: int) -> np.ndarray:
    arr = np.asarray(params, dtype=np.complex128)
    if arr.shape != (n, 2):
        raise ValueError(f"params must have shape ({n}, 2)")
    norms = np.abs(arr[:, 0]) ** 2 + np.abs(arr[:, 1]) ** 2
    if np.max(np.abs(norms - 1.0)) > 1e-9:
        raise ValueError("per-qubit amplitude pairs must be unit norm")
    return arr


def overlap_f(
    code: StabilizerCode, params: np.ndarray, sum_limit: int = DEFAULT_SUM_LIMIT
) -> complex:
    """Overlap <codeword|product state> for per-qubit amplitudes ``params``.

    Runs over the 2^r expansion terms, so |f| <= 1 and f agrees with the
    dense inner product wherever the dense vector is available.
    """
    _require_valid(code)
    arr = _check_params(params, code.n)
    exp = _expansion_guarded(code, sum_limit)
    bits = (exp.vcodes[:, None] >> np.arange(code.n)[None, :]) & 1
    vals = np.where(bits == 1, arr[None, :, 1], arr[None, :, 0])
    prods = vals.prod(axis=1)
    return complex(exp.norm * np.sum(np.conj(exp.coeffs) * prods))


def _expansion_guarded(code: StabilizerCode, sum_limit: int) -> _Expansion:
    r = upper_bound_nonz(code)
    if r > sum_limit:
        raise ResourceLimitError(f"expansion has 2^{r} terms, over the limit 2^{sum_limit}")
    return _expansion(code)


@dataclass(frozen=True)
class IterationResult:
    E_estimate: float
    params: np.ndarray
    iterations: int
    residual: float
    converged: bool
    starts_used: int


def _bloch_params(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.uniform(-1.0, 1.0, size=n)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
    out = np.empty((n, 2), dtype=np.complex128)
    out[:, 0] = np.sqrt((1.0 + z) / 2.0)
    out[:, 1] = np.exp(1j * phi) * np.sqrt((1.0 - z) / 2.0)
    return out


def iterate_closest_product(
    code: StabilizerCode,
    starts: int = 64,
    tol: float = 1e-10,
    max_iter: int = 10000,
    seed: int = 0,
    seed_params: Sequence[np.ndarray] | None = None,
    sum_limit: int = DEFAULT_SUM_LIMIT,
) -> IterationResult:
    """Coordinate-ascent search for the closest product state.

    Sweeps the qubits cyclically; each step replaces one amplitude pair
    by the conjugated partial derivatives of the overlap, renormalized,
    which maximizes |f| in that coordinate and makes |f|^2 monotone per
    sweep (a decrease beyond ``tol`` raises InternalError).  A sweep
    whose largest parameter change is below ``tol`` counts as converged.
    The first start is the heaviest computational basis state of the
    codeword; optional ``seed_params`` follow, then seeded random Bloch
    products.  The best start wins and only upper-bounds the true
    entanglement, since the ascent may settle in a local maximum.
    """
    _require_valid(code)
    if starts < 1:
        raise ValueError("starts must be positive")
    n = code.n
    exp = _expansion_guarded(code, sum_limit)
    bits = ((exp.vcodes[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)
    cbar = np.conj(exp.coeffs)

    start_list: list[np.ndarray] = []
    anchor = np.zeros((n, 2), dtype=np.complex128)
    for j in range(n):
        anchor[j, (exp.base >> j) & 1] = 1.0
    start_list.append(anchor)
    for extra in seed_params or ():
        start_list.append(_check_params(extra, n))
    rng = np.random.default_rng(seed)
    while len(start_list) < starts:
        start_list.append(_bloch_params(rng, n))
    start_list = start_list[:starts]

    best_f2 = -1.0
    best = None
    for params in start_list:
        params = params.copy()
        vals = np.where(bits, params[None, :, 1], params[None, :, 0])
        f2_prev = abs(exp.norm * np.sum(cbar * vals.prod(axis=1))) ** 2
        converged = False
        residual = np.inf
        sweeps = 0
        for sweeps in range(1, max_iter + 1):
            max_delta = 0.0
            f2_now = f2_prev
            for j in range(n):
                other = np.prod(vals[:, :j], axis=1) * np.prod(vals[:, j + 1 :], axis=1)
                weighted = cbar * other
                f_one = exp.norm * np.sum(weighted[bits[:, j]])
                f_zero = exp.norm * np.sum(weighted) - f_one
                scale = np.hypot(abs(f_zero), abs(f_one))
                if scale < 1e-300:
                    continue
                new_pair = np.array([np.conj(f_zero), np.conj(f_one)]) / scale
                max_delta = max(max_delta, float(np.max(np.abs(new_pair - params[j]))))
                params[j] = new_pair
                vals[:, j] = np.where(bits[:, j], new_pair[1], new_pair[0])
                f2_now = scale * scale
            if f2_now < f2_prev - max(tol, 1e-12):
                raise InternalError(
                    f"overlap decreased within a sweep: {f2_prev} -> {f2_now}"
                )
            f2_prev = f2_now
            residual = max_delta
            if max_delta < tol:
                converged = True
                break
        if f2_prev > best_f2:
            best_f2 = f2_prev
            best = (params, sweeps, residual, converged)
    assert best is not None
    params, sweeps, residual, converged = best
    estimate = float(-log2(best_f2)) if best_f2 > 0 else float("inf")
    return IterationResult(estimate, params, sweeps, float(residual), converged, len(start_list))


@dataclass(frozen=True)
class EntanglementReport:
    """Everything the pipeline knows about one codeword."""

    code: StabilizerCode
    upper: int
    upper_method: str
    lower: int
    lower_witness: BipartitionReport
    value: float
    exact: bool
    iteration: IterationResult | None
    persistency_result: PersistencyResult | None
    oracle_checked: bool


def entanglement_report(
    code: StabilizerCode,
    use_persistency: bool = False,
    starts: int = 64,
    tol: float = 1e-10,
    max_iter: int = 10000,
    seed: int = 0,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
    budget: int | None = None,
    lower_strategy: str | None = None,
    samples: int = 10000,
    oracle_limit: int = 12,
    persistency_limit: int = 16,
    sum_limit: int = DEFAULT_SUM_LIMIT,
) -> EntanglementReport:
    """Full analysis: both bounds, exact value when they meet, otherwise
    the iterated estimate (seeded with a disentangling-branch product
    state when the measurement search ran, which pins the estimate at or
    below the measurement upper bound).
    """
    _require_valid(code)
    n = code.n
    upper = upper_bound_nonz(code)
    upper_method = "non-z-generators"
    pers: PersistencyResult | None = None
    if use_persistency and n <= persistency_limit:
        pers = persistency(code, budget)
        if pers.count < upper:
            upper, upper_method = pers.count, "persistency"

    strategy = lower_strategy or ("exhaustive" if n <= EXHAUSTIVE_QUBIT_LIMIT else "random")
    lower, witness = lower_bound(code, strategy, samples=samples, seed=seed, oracle_limit=oracle_limit)
    if lower > upper:
        raise InternalError(f"lower bound {lower} exceeds upper bound {upper}")

    iteration = None
    if upper == lower:
        value, exact = float(upper), True
    else:
        seeds = []
        if pers is not None:
            seeds.append(branch_product_params(codeword_state(code), pers.sequence))
        iteration = iterate_closest_product(
            code,
            starts=starts,
            tol=tol,
            max_iter=max_iter,
            seed=seed,
            seed_params=seeds,
            sum_limit=sum_limit,
        )
        value, exact = iteration.E_estimate, False
        slack = max(tol, 1e-6)
        if not (lower - slack <= value <= upper + slack):
            raise InternalError(
                f"iterated estimate {value} escapes the bounds [{lower}, {upper}]"
            )

    oracle_checked = False
    if n <= dense_limit:
        state = build_codeword(code, dense_limit)
        if witness.subset and witness.method == "cut-rank":
            ent = reduced_entropy(state, witness.subset)
            if abs(ent - witness.rank) > 1e-6:
                raise InternalError(
                    f"witness cut rank {witness.rank} != dense entropy {ent}"
                )
        if iteration is not None:
            # Full-contraction cross-check of the iterated overlap.
            dense_f = _dense_overlap(state, iteration.params)
            if abs(abs(dense_f) ** 2 - 2.0 ** (-iteration.E_estimate)) > 1e-9:
                raise InternalError("iterated overlap disagrees with the dense oracle")
        oracle_checked = True

    return EntanglementReport(
        code,
        upper,
        upper_method,
        lower,
        witness,
        value,
        exact,
        iteration,
        pers,
        oracle_checked,
    )


def _dense_overlap(state: np.ndarray, params: np.ndarray) -> complex:
    """<state|product(params)> by tensor contraction, one qubit at a time."""
    n = int(round(log2(state.size)))
    vec = np.conj(state).reshape((2,) * n)
    for j in range(n):
        # The last remaining axis always holds qubit j at step j.
        vec = vec[..., 0] * params[j, 0] + vec[..., 1] * params[j, 1]
    return complex(vec)
