"""Invariant battery: every structural claim the package rests on, as checks.

Each check returns a CheckResult with a measured detail string; assertive
checks gate the verify command's exit code, report-only checks (the
Perron-Frobenius verdicts and the per-sector minima probes) always execute
and emit but carry no pass threshold.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from . import combinatorics
from .combinatorics import Box, Partition, conjugacy_class_size, partitions
from .hamiltonians import (
    ProblemSpec,
    default_epsilon,
    eigenvalue_blocks,
    problem_hamiltonian,
    reduced_mixer,
    standard_mixer,
    z_form,
    z_form_values,
)
from .qaoa_engine import (
    QaoaParams,
    expectation,
    interpolation_params,
    qaoa_state,
    run_reduced,
    sector_minima_table,
)
from .schur_weyl import (
    admissible_shapes,
    ground_state,
    sector_basis,
    sector_projector,
    sector_table,
)
from .symmetry import (
    orbit_count,
    orbit_invariance_check,
    orbits,
    string_group_from_site_generators,
)
from .tensor_ops import Operator, pf_check, uniform_state, yjm

DEFAULT_NMAX = 6
DEFAULT_DMAX = 3


@dataclass
class CheckResult:
    name: str
    passed: bool | None  # None marks a report-only check
    assertive: bool
    detail: str
    elapsed: float

    @property
    def status(self) -> str:
        if self.passed is None:
            return "REPORT"
        return "PASS" if self.passed else "FAIL"


def _nd_grid(nmax: int, dmax: int, cap: int = 729) -> list[tuple[int, int]]:
    return [(n, d) for d in range(2, dmax + 1) for n in range(1, nmax + 1) if d**n <= cap]


def check_paper_worked_dimensions() -> CheckResult:
    """Hook length 6 at the corner of (4,3,2) and irrep dimension 168."""
    combinatorics.dim_symmetric_irrep((4, 3, 2))  # warm caches before timing
    start = time.perf_counter()
    dim = combinatorics.dim_symmetric_irrep((4, 3, 2))
    hook = combinatorics.hook_length((4, 3, 2), Box(1, 1))
    elapsed = time.perf_counter() - start
    ok = dim == 168 and hook == 6
    return CheckResult(
        "paper_worked_dimensions",
        ok,
        True,
        f"dim(4,3,2)={dim} (want 168), hook(1,1)={hook} (want 6), {elapsed * 1e3:.3f} ms",
        elapsed,
    )


def check_sector_table_7_3() -> CheckResult:
    start = time.perf_counter()
    table = sector_table(7, 3)
    elapsed = time.perf_counter() - start
    ok = len(table.entries) == 8 and table.total == 3**7
    return CheckResult(
        "sector_table_7_3",
        ok,
        True,
        f"{len(table.entries)} sectors (want 8), total {table.total} (want {3 ** 7})",
        elapsed,
    )


def check_schur_weyl_completeness(nmax: int = 8, dmax: int = DEFAULT_DMAX) -> CheckResult:
    start = time.perf_counter()
    failures = []
    count = 0
    for n, d in _nd_grid(nmax, dmax, cap=6561):
        total = sum(
            combinatorics.dim_symmetric_irrep(s) * combinatorics.dim_unitary_irrep(s, d)
            for s in partitions(n, d)
        )
        count += 1
        if total != d**n:
            failures.append((n, d, total))
    elapsed = time.perf_counter() - start
    return CheckResult(
        "schur_weyl_completeness",
        not failures,
        True,
        f"{count} (n,d) pairs, failures: {failures or 'none'}",
        elapsed,
    )


def check_hook_shape_dimensions(nmax: int = 12, kmax: int = 4) -> CheckResult:
    start = time.perf_counter()
    bad = []
    for n in range(1, nmax + 1):
        for k in range(0, min(n, kmax)):
            shape = (n - k,) + (1,) * k
            got = combinatorics.dim_symmetric_irrep(shape)
            if got != comb(n - 1, k):
                bad.append((n, k, got))
    elapsed = time.perf_counter() - start
    return CheckResult(
        "hook_shape_dimensions",
        not bad,
        True,
        f"hook dims vs binomials up to n={nmax}, failures: {bad or 'none'}",
        elapsed,
    )


def check_character_orthogonality(nmax: int = 6) -> CheckResult:
    start = time.perf_counter()
    ok = True
    worst = None
    for n in range(1, nmax + 1):
        classes = partitions(n, n)
        shapes = partitions(n, n)
        for ci in classes:
            for cj in classes:
                inner = sum(
                    combinatorics.character(s, ci) * combinatorics.character(s, cj)
                    for s in shapes
                ) * conjugacy_class_size(ci)
                want = factorial(n) if ci == cj else 0
                if inner != want:
                    ok = False
                    worst = (n, ci.parts, cj.parts, inner)
    elapsed = time.perf_counter() - start
    return CheckResult(
        "character_orthogonality",
        ok,
        True,
        f"exact column orthogonality up to n={nmax}"
        + ("" if ok else f", first failure {worst}"),
        elapsed,
    )


def check_yjm_commuting_family(nmax: int = 5, dmax: int = DEFAULT_DMAX) -> CheckResult:
    start = time.perf_counter()
    worst_comm = 0.0
    worst_int = 0.0
    for n, d in _nd_grid(nmax, dmax):
        ops = [yjm(n, d, k).matrix for k in range(1, n + 1)]
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                worst_comm = max(worst_comm, float(np.max(np.abs(ops[a] @ ops[b] - ops[b] @ ops[a]))))
            evals = np.linalg.eigvalsh(ops[a])
            worst_int = max(worst_int, float(np.max(np.abs(evals - np.round(evals)))))
    elapsed = time.perf_counter() - start
    ok = worst_comm <= 1e-10 and worst_int <= 1e-9
    return CheckResult(
        "yjm_commuting_family",
        ok,
        True,
        f"max commutator {worst_comm:.2e} (tol 1e-10), max integer deviation {worst_int:.2e} (tol 1e-9)",
        elapsed,
    )


def check_projector_algebra(nmax: int = DEFAULT_NMAX, dmax: int = DEFAULT_DMAX) -> CheckResult:
    start = time.perf_counter()
    worst = {"idem": 0.0, "orth": 0.0, "complete": 0.0, "trace": 0.0}
    for n, d in _nd_grid(nmax, dmax):
        table = sector_table(n, d)
        projs = {s: sector_projector(s, n, d).matrix for s in table.entries}
        total = np.zeros((d**n, d**n), dtype=np.complex128)
        shapes = list(projs)
        for i, s in enumerate(shapes):
            p = projs[s]
            total += p
            worst["idem"] = max(worst["idem"], float(np.max(np.abs(p @ p - p))))
            ds, dv, _ = table.entries[s]
            worst["trace"] = max(worst["trace"], abs(float(np.real(np.trace(p))) - ds * dv))
            for t in shapes[i + 1 :]:
                worst["orth"] = max(worst["orth"], float(np.max(np.abs(p @ projs[t]))))
        worst["complete"] = max(
            worst["complete"], float(np.max(np.abs(total - np.eye(d**n))))
        )
    elapsed = time.perf_counter() - start
    ok = all(v <= 1e-9 for v in worst.values())
    detail = ", ".join(f"{k}={v:.2e}" for k, v in worst.items()) + " (tol 1e-9)"
    return CheckResult("projector_algebra", ok, True, detail, elapsed)


def check_mixer_ground_states(nmax: int = DEFAULT_NMAX, dmax: int = DEFAULT_DMAX) -> CheckResult:
    start = time.perf_counter()
    min_gap = np.inf
    worst_overlap = 1.0
    worst_leak = 0.0
    sectors = 0
    for n, d in _nd_grid(nmax, dmax):
        eps = default_epsilon(n, d)
        for shape in admissible_shapes(n, d):
            sectors += 1
            mixer = reduced_mixer(shape, n, d, eps)
            evals, evecs = np.linalg.eigh(mixer.matrix)
            min_gap = min(min_gap, float(evals[1] - evals[0]))
            v0 = evecs[:, 0]
            xi = ground_state(shape, n, d).vector.amplitudes
            worst_overlap = min(worst_overlap, float(np.abs(np.vdot(v0, xi))))
            proj = sector_projector(shape, n, d).matrix
            worst_leak = max(worst_leak, float(np.linalg.norm(v0 - proj @ v0)))
    elapsed = time.perf_counter() - start
    ok = min_gap > 1e-6 and worst_overlap >= 1.0 - 1e-9 and worst_leak <= 1e-9
    return CheckResult(
        "mixer_ground_states",
        ok,
        True,
        f"{sectors} sectors: min gap {min_gap:.3e} (>1e-6), "
        f"min overlap {worst_overlap:.12f} (>=1-1e-9), max leakage {worst_leak:.2e} (<=1e-9)",
        elapsed,
    )


def check_yjm_content_spectra(nmax: int = 5, dmax: int = DEFAULT_DMAX) -> CheckResult:
    start = time.perf_counter()
    worst = 0.0
    checked = 0
    for n, d in _nd_grid(nmax, dmax):
        for shape in admissible_shapes(n, d):
            basis = sector_basis(shape, n, d)
            dv = combinatorics.dim_unitary_irrep(shape, d)
            tableaux = combinatorics.enumerate_tableaux(shape, "SYT")
            for k in range(1, n + 1):
                compressed = basis.conj().T @ (yjm(n, d, k).matrix @ basis)
                got = np.sort(np.linalg.eigvalsh(compressed))
                want = np.sort(
                    np.repeat(
                        [combinatorics.content(shape, t.box_of(k)) for t in tableaux], dv
                    ).astype(np.float64)
                )
                worst = max(worst, float(np.max(np.abs(got - want))))
                checked += 1
    elapsed = time.perf_counter() - start
    return CheckResult(
        "yjm_content_spectra",
        worst <= 1e-9,
        True,
        f"{checked} (sector, k) spectra, max deviation from contents {worst:.2e} (tol 1e-9)",
        elapsed,
    )


def _symmetric_square_spec(n: int, d: int = 2) -> ProblemSpec:
    """F = (sum_k x_k - n/2)^2 written as quadratic coefficients."""
    quad = {(i, i): 1.0 for i in range(1, n + 1)}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            quad[(i, j)] = 2.0
    return ProblemSpec(
        n=n, d=d, constant=(n / 2.0) ** 2, linear=(-float(n),) * n, quadratic=quad
    )


def check_sector_confinement(trials: int = 50, p: int = 3, seed: int = 2024) -> CheckResult:
    start = time.perf_counter()
    n, d = 4, 2
    spec = _symmetric_square_spec(n)
    H_P = problem_hamiltonian(spec)
    eps = default_epsilon(n, d)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for shape in admissible_shapes(n, d):
        H_M = reduced_mixer(shape, n, d, eps)
        xi = ground_state(shape, n, d).vector
        proj = sector_projector(shape, n, d).matrix
        for _ in range(trials):
            params = QaoaParams(
                tuple(rng.uniform(0, 2 * np.pi, size=p)), tuple(rng.uniform(0, np.pi, size=p))
            )
            psi = qaoa_state(H_P, H_M, xi, params).amplitudes
            worst = max(worst, float(np.linalg.norm(psi - proj @ psi)))
    elapsed = time.perf_counter() - start
    return CheckResult(
        "sector_confinement",
        worst <= 1e-8,
        True,
        f"{trials} random parameter vectors per sector at (4,2): max leakage {worst:.2e} (tol 1e-8)",
        elapsed,
    )


def check_reduced_convergence_probe(seed: int = 7) -> CheckResult:
    start = time.perf_counter()
    spec = _symmetric_square_spec(4)
    report = run_reduced((4,), spec, p=3, epsilon=None, budget=2000, seed=seed)
    # annealing-style schedules as an extra probe beside free optimization
    H_P = problem_hamiltonian(spec)
    H_M = reduced_mixer((4,), 4, 2, default_epsilon(4, 2))
    xi = ground_state((4,), 4, 2).vector
    sweep = min(
        expectation(qaoa_state(H_P, H_M, xi, interpolation_params(p, delta)), H_P)
        for p in (1, 2, 3, 5, 8)
        for delta in (0.25, 0.5, 1.0, 2.0)
    )
    elapsed = time.perf_counter() - start
    gap = report.achieved - report.sector_min
    ok = gap <= 0.05 and report.leakage <= 1e-8
    return CheckResult(
        "reduced_convergence_probe",
        ok,
        True,
        f"achieved {report.achieved:.6f} vs sector min {report.sector_min:.6f} "
        f"(gap {gap:.4f}, tol 0.05), leakage {report.leakage:.2e}; "
        f"best interpolation-schedule value {sweep:.6f}",
        elapsed,
    )


def check_orbit_machinery() -> CheckResult:
    start = time.perf_counter()
    n, d = 3, 2
    group = string_group_from_site_generators(n, d, [(2, 1, 3), (2, 3, 1)])
    oset = orbits(group)
    m, crosscheck = orbit_count(oset)
    counting_ok = m == 4 and crosscheck == Fraction(4)
    spec = _symmetric_square_spec(n)  # site-permutation symmetric objective
    H_P = problem_hamiltonian(spec)
    H_M = standard_mixer(n, d)
    psi = qaoa_state(H_P, H_M, uniform_state(n, d), QaoaParams((0.7, 0.3), (0.4, 0.9)))
    report = orbit_invariance_check(psi.probabilities(), oset, tol=1e-10)
    elapsed = time.perf_counter() - start
    ok = counting_ok and report.passed
    return CheckResult(
        "orbit_machinery",
        ok,
        True,
        f"m={m} (want 4), sum 1/|orbit| = {crosscheck} (want 4), "
        f"QAOA orbit spread max {report.max_spread:.2e} (tol 1e-10)",
        elapsed,
    )


def _random_integer_qubo(n: int, rng: np.random.Generator) -> ProblemSpec:
    # integer coefficients make eigenvalue collisions (nontrivial blocks) common
    quad = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            quad[(i, j)] = float(rng.integers(-3, 4))
    linear = tuple(float(v) for v in rng.integers(-3, 4, size=n))
    return ProblemSpec(n=n, d=2, constant=float(rng.integers(-3, 4)), linear=linear, quadratic=quad)


def _random_block_unitary(groups, dim: int, rng: np.random.Generator) -> np.ndarray:
    U = np.zeros((dim, dim), dtype=np.complex128)
    for idxs in groups:
        k = len(idxs)
        z = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        q, r = np.linalg.qr(z)
        q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
        U[np.ix_(idxs, idxs)] = q
    return U


def check_block_symmetry(trials: int = 20, seed: int = 99) -> CheckResult:
    start = time.perf_counter()
    n = 4
    rng = np.random.default_rng(seed)
    worst_comm = 0.0
    grouping_ok = True
    for _ in range(trials):
        spec = _random_integer_qubo(n, rng)
        H_P = problem_hamiltonian(spec)
        blocks = eigenvalue_blocks(H_P)
        U = Operator(n, 2, _random_block_unitary(blocks.index_groups(), 2**n, rng))
        worst_comm = max(
            worst_comm, float(np.max(np.abs(U.matrix @ H_P.matrix - H_P.matrix @ U.matrix)))
        )
        formula_vals = z_form_values(z_form(spec), n)
        formula_blocks = eigenvalue_blocks(Operator(n, 2, np.diag(formula_vals.astype(np.complex128))))
        if formula_blocks.index_groups() != blocks.index_groups():
            grouping_ok = False
    elapsed = time.perf_counter() - start
    ok = worst_comm <= 1e-10 and grouping_ok
    return CheckResult(
        "block_symmetry",
        ok,
        True,
        f"{trials} random QUBOs: max block-unitary commutator {worst_comm:.2e} (tol 1e-10), "
        f"eigenvalue formula grouping {'matches' if grouping_ok else 'MISMATCH'}",
        elapsed,
    )


def check_pf_reports(nmax: int = 5, dmax: int = DEFAULT_DMAX) -> CheckResult:
    start = time.perf_counter()
    lines = []
    for n, d in _nd_grid(nmax, dmax):
        eps = default_epsilon(n, d)
        for shape in admissible_shapes(n, d):
            rep = pf_check(reduced_mixer(shape, n, d, eps))
            lines.append(
                f"n={n} d={d} {shape.parts}: nonneg={rep.nonnegative} "
                f"irred={rep.irreducible} shift={rep.min_offdiag_shift:.3g}"
            )
    elapsed = time.perf_counter() - start
    return CheckResult(
        "pf_reports",
        None,
        False,
        f"{len(lines)} sector mixers; " + "; ".join(lines),
        elapsed,
    )


def check_sector_minima_probe() -> CheckResult:
    start = time.perf_counter()
    instances = [
        ("n=2 linear sum", ProblemSpec(n=2, d=2, linear=(1.0, 1.0))),
        ("n=3 square around 1", ProblemSpec(
            n=3, d=2, constant=1.0, linear=(-1.0,) * 3,
            quadratic={(i, j): 2.0 for i in range(1, 4) for j in range(i + 1, 4)},
        )),
        ("n=4 pair count", ProblemSpec(
            n=4, d=2, quadratic={(i, j): 1.0 for i in range(1, 5) for j in range(i + 1, 5)},
        )),
    ]
    lines = []
    for label, spec in instances:
        result = sector_minima_table(spec)
        minima = {s.parts: round(v, 9) for s, v in result.minima.items()}
        attain = [s.parts for s in result.attaining]
        agree = "all sectors attain" if len(attain) == len(minima) else f"only {attain} attain"
        lines.append(f"{label}: minima {minima}, global {result.global_min:g}, {agree}")
    elapsed = time.perf_counter() - start
    return CheckResult("sector_minima_probe", None, False, "; ".join(lines), elapsed)


def default_suite(nmax: int = DEFAULT_NMAX, dmax: int = DEFAULT_DMAX) -> list[CheckResult]:
    """The full battery at the requested scope (clamped per check)."""
    return [
        check_paper_worked_dimensions(),
        check_sector_table_7_3(),
        check_schur_weyl_completeness(8, dmax),
        check_hook_shape_dimensions(),
        check_character_orthogonality(min(nmax, 6)),
        check_yjm_commuting_family(min(nmax, 5), dmax),
        check_projector_algebra(nmax, dmax),
        check_mixer_ground_states(nmax, dmax),
        check_yjm_content_spectra(min(nmax, 5), dmax),
        check_sector_confinement(),
        check_reduced_convergence_probe(),
        check_orbit_machinery(),
        check_block_symmetry(),
        check_pf_reports(min(nmax, 5), dmax),
        check_sector_minima_probe(),
    ]
