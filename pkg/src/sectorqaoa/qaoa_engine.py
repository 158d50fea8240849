"""QAOA chains, expectation evaluation, sampling, and sector-restricted runs.

The chain applies alternating problem and mixer exponentials to an initial
state; depth-p parameter vectors are optimized by seeded Nelder-Mead
simplex descent with uniform random restarts under a hard evaluation
budget, so identical seeds reproduce identical traces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .combinatorics import Partition, as_partition
from .errors import SymmetryViolationError
from .hamiltonians import ProblemSpec, default_epsilon, problem_hamiltonian, reduced_mixer
from .schur_weyl import ground_state, sector_basis, sector_projector, admissible_shapes
from .tensor_ops import (
    Operator,
    StateVector,
    evolve,
    index_permutation,
    index_to_string,
    transposition,
)

CHAIN_ORDERS = ("problem_first", "mixer_first")


@dataclass(frozen=True)
class QaoaParams:
    """Depth-p angle arrays, gammas in [0, 2pi) and betas in [0, pi)."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas):
            raise ValueError("gammas and betas must have equal length")
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))

    @property
    def p(self) -> int:
        return len(self.gammas)


@dataclass(eq=False)
class QaoaResult:
    """Outcome of one optimized (or fixed-parameter) run."""

    final_state: StateVector
    expectation: float
    probabilities: np.ndarray
    best_string: int
    optimizer_trace: list[tuple[np.ndarray, float]]
    seed: int

    @property
    def evaluations(self) -> int:
        return len(self.optimizer_trace)

    def best_so_far(self) -> list[float]:
        out, best = [], np.inf
        for _, value in self.optimizer_trace:
            best = min(best, value)
            out.append(best)
        return out


@dataclass(eq=False)
class SectorRunReport:
    """Reduced-run summary: exact sector minimum vs the value reached."""

    shape: Partition
    sector_min: float
    achieved: float
    leakage: float
    params: QaoaParams
    result: QaoaResult


def qaoa_state(
    H_P: Operator,
    H_M: Operator,
    xi: StateVector,
    params: QaoaParams,
    chain_order: str = "problem_first",
) -> StateVector:
    """Apply the depth-p alternating chain to xi.

    The default order applies the problem exponential of layer p first
    (the rightmost factor of the written operator product); `mixer_first`
    is the alternative reading where each layer's mixer touches the state
    before its problem exponential.
    """
    if chain_order not in CHAIN_ORDERS:
        raise ValueError(f"chain_order must be one of {CHAIN_ORDERS}")
    psi = xi
    for k in range(params.p - 1, -1, -1):
        if chain_order == "problem_first":
            psi = evolve(H_P, params.gammas[k], psi)
            psi = evolve(H_M, params.betas[k], psi)
        else:
            psi = evolve(H_M, params.betas[k], psi)
            psi = evolve(H_P, params.gammas[k], psi)
    return psi


def expectation(psi: StateVector, H: Operator) -> float:
    """<psi|H|psi> for a diagonal H; exact real arithmetic on probabilities."""
    if (H.n, H.d) != (psi.n, psi.d):
        raise ValueError("state and operator dimensions do not match")
    diag = H.diagonal()
    return float(np.dot(psi.probabilities(), diag))


def sample(psi: StateVector, shots: int, seed: int) -> dict[int, int]:
    """Multinomial measurement counts in the string basis, deterministic per seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = psi.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {int(i): int(c) for i, c in enumerate(counts) if c > 0}


def interpolation_params(p: int, delta: float = 1.0) -> QaoaParams:
    """Annealing-style schedule: problem angles ramp up, mixer angles ramp down."""
    if p < 1:
        raise ValueError(f"depth must be >= 1, got {p}")
    gammas = tuple(delta * k / p for k in range(1, p + 1))
    betas = tuple(delta * (1.0 - k / p) for k in range(1, p + 1))
    return QaoaParams(gammas, betas)


class _BudgetExhausted(Exception):
    pass


def _wrap_params(vec: np.ndarray, p: int) -> np.ndarray:
    out = np.array(vec, dtype=np.float64)
    out[:p] = np.mod(out[:p], 2.0 * np.pi)
    out[p:] = np.mod(out[p:], np.pi)
    return out


def optimize(
    H_P: Operator,
    H_M: Operator,
    xi: StateVector,
    p: int,
    budget: int,
    seed: int,
    chain_order: str = "problem_first",
) -> tuple[QaoaParams, QaoaResult]:
    """Derivative-free search over depth-p angles minimizing the expectation.

    Nelder-Mead with standard coefficients, restarted from seeded uniform
    draws until the evaluation budget is exhausted.  Every evaluation is
    recorded, so the best-so-far curve is monotone and runs with the same
    seed and budget are bitwise identical.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    if p < 0:
        raise ValueError(f"depth must be >= 0, got {p}")
    diag = H_P.diagonal()
    trace: list[tuple[np.ndarray, float]] = []
    best: dict = {"value": np.inf, "params": None}

    def objective(vec: np.ndarray) -> float:
        if len(trace) >= budget:
            raise _BudgetExhausted
        wrapped = _wrap_params(vec, p)
        params = QaoaParams(tuple(wrapped[:p]), tuple(wrapped[p:]))
        psi = qaoa_state(H_P, H_M, xi, params, chain_order)
        value = float(np.dot(psi.probabilities(), diag))
        trace.append((wrapped, value))
        if value < best["value"]:
            best["value"] = value
            best["params"] = params
        return value

    rng = np.random.default_rng(seed)
    if p == 0:
        params = QaoaParams((), ())
        value = expectation(xi, H_P)
        trace.append((np.zeros(0), value))
        best.update(value=value, params=params)
    else:
        while len(trace) < budget:
            x0 = np.concatenate(
                [rng.uniform(0.0, 2.0 * np.pi, size=p), rng.uniform(0.0, np.pi, size=p)]
            )
            try:
                minimize(
                    objective,
                    x0,
                    method="Nelder-Mead",
                    options={"maxfev": budget - len(trace), "xatol": 1e-8, "fatol": 1e-12},
                )
            except _BudgetExhausted:
                break

    params = best["params"]
    psi = qaoa_state(H_P, H_M, xi, params, chain_order)
    probs = psi.probabilities()
    result = QaoaResult(
        final_state=psi,
        expectation=float(np.dot(probs, diag)),
        probabilities=probs,
        best_string=int(np.argmax(probs)),
        optimizer_trace=trace,
        seed=seed,
    )
    return params, result


def check_site_permutation_symmetry(spec: ProblemSpec) -> None:
    """Raise unless the objective is invariant under every site permutation.

    Invariance under all adjacent transpositions is checked; they generate
    the full site-permutation group.
    """
    vals = spec.values()
    for i in range(1, spec.n):
        sigma = transposition(spec.n, i, i + 1)
        dest = index_permutation(spec.n, spec.d, sigma)
        if float(np.max(np.abs(vals[dest] - vals))) > 1e-9:
            raise SymmetryViolationError(
                f"objective is not invariant under site transposition {sigma}",
                permutation=sigma,
            )


def sector_minimum(shape: Partition | Sequence[int], spec: ProblemSpec) -> float:
    """Smallest eigenvalue of the problem Hamiltonian compressed to a sector."""
    shape = as_partition(shape)
    basis = sector_basis(shape, spec.n, spec.d)
    diag = spec.values()
    compressed = basis.conj().T @ (diag[:, None] * basis)
    return float(np.linalg.eigvalsh(compressed)[0])


def run_reduced(
    shape: Partition | Sequence[int],
    spec: ProblemSpec,
    p: int,
    epsilon: float | None = None,
    budget: int = 200,
    seed: int = 0,
    chain_order: str = "problem_first",
) -> SectorRunReport:
    """Optimize the sector-restricted chain from the sector ground state.

    Reports the exact compressed sector minimum, the achieved expectation,
    and the final-state norm outside the sector.
    """
    shape = as_partition(shape)
    if epsilon is None:
        epsilon = default_epsilon(spec.n, spec.d)
    H_P = problem_hamiltonian(spec)
    H_M = reduced_mixer(shape, spec.n, spec.d, epsilon)
    xi = ground_state(shape, spec.n, spec.d).vector
    params, result = optimize(H_P, H_M, xi, p, budget, seed, chain_order)
    proj = sector_projector(shape, spec.n, spec.d).matrix
    outside = result.final_state.amplitudes - proj @ result.final_state.amplitudes
    return SectorRunReport(
        shape=shape,
        sector_min=sector_minimum(shape, spec),
        achieved=result.expectation,
        leakage=float(np.linalg.norm(outside)),
        params=params,
        result=result,
    )


@dataclass(frozen=True)
class SectorMinima:
    """Exact per-sector minima of a permutation-symmetric objective."""

    minima: dict[Partition, float]
    global_min: float
    attaining: tuple[Partition, ...]


def sector_minima_table(spec: ProblemSpec, tol: float = 1e-9) -> SectorMinima:
    """Minimum of the objective inside every sector, with global-minimum attainment.

    Requires the objective to be invariant under site permutations, since
    sectors are only preserved in that case.
    """
    check_site_permutation_symmetry(spec)
    minima = {
        shape: sector_minimum(shape, spec) for shape in admissible_shapes(spec.n, spec.d)
    }
    global_min = float(np.min(spec.values()))
    attaining = tuple(s for s, v in minima.items() if v <= global_min + tol)
    return SectorMinima(minima=minima, global_min=global_min, attaining=attaining)
