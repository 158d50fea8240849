"""Classical symmetry groups on d-ary strings: orbits and invariant vectors."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .tensor_ops import Operator, StateVector, index_permutation


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by generator image arrays on {0..degree-1}."""

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = tuple(int(v) for v in g)
            if sorted(g) != list(range(self.degree)):
                raise ValueError(f"generator {g} is not a permutation of 0..{self.degree - 1}")
            gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))


@dataclass(frozen=True)
class OrbitSet:
    """Disjoint orbits covering {0..degree-1}, ordered by smallest element."""

    degree: int
    orbits: tuple[tuple[int, ...], ...]

    def orbit_of(self, index: int) -> tuple[int, ...]:
        for orbit in self.orbits:
            if index in orbit:
                return orbit
        raise IndexError(f"index {index} outside degree {self.degree}")


def site_permutation_action(n: int, d: int, sigma: Sequence[int]) -> tuple[int, ...]:
    """String-index permutation induced by permuting sites; matches permutation_rep."""
    return tuple(int(v) for v in index_permutation(n, d, sigma))


def string_group_from_site_generators(
    n: int, d: int, site_generators: Sequence[Sequence[int]]
) -> PermGroup:
    """Lift 1-based site permutations to a group acting on string indices."""
    gens = tuple(site_permutation_action(n, d, g) for g in site_generators)
    return PermGroup(degree=d**n, generators=gens)


def orbits(group: PermGroup) -> OrbitSet:
    """Orbit partition by breadth-first closure under the generators."""
    seen = [False] * group.degree
    out = []
    for start in range(group.degree):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        seen[start] = True
        while frontier:
            nxt = []
            for idx in frontier:
                for g in group.generators:
                    img = g[idx]
                    if not seen[img]:
                        seen[img] = True
                        orbit.add(img)
                        nxt.append(img)
            frontier = nxt
        out.append(tuple(sorted(orbit)))
    return OrbitSet(degree=group.degree, orbits=tuple(out))


def orbit_count(orbitset: OrbitSet) -> tuple[int, Fraction]:
    """Number of orbits, with the exact cross-check sum of 1/|orbit(x)| over x."""
    m = len(orbitset.orbits)
    total = Fraction(0)
    for orbit in orbitset.orbits:
        for _ in orbit:
            total += Fraction(1, len(orbit))
    return m, total


def invariant_vectors(orbitset: OrbitSet, n: int, d: int) -> list[StateVector]:
    """One unit vector per orbit: uniform positive amplitudes on the orbit."""
    if orbitset.degree != d**n:
        raise ValueError(f"orbit degree {orbitset.degree} != d^n = {d ** n}")
    vectors = []
    for orbit in orbitset.orbits:
        amp = np.zeros(orbitset.degree, dtype=np.complex128)
        amp[list(orbit)] = 1.0 / np.sqrt(len(orbit))
        vectors.append(StateVector(n, d, amp))
    return vectors


@dataclass(frozen=True)
class OrbitInvarianceReport:
    """Per-orbit probability spreads against a tolerance."""

    passed: bool
    tol: float
    spreads: tuple[float, ...]
    failing_orbits: tuple[int, ...]

    @property
    def max_spread(self) -> float:
        return max(self.spreads) if self.spreads else 0.0


def orbit_invariance_check(
    probabilities: Sequence[float], orbitset: OrbitSet, tol: float
) -> OrbitInvarianceReport:
    """Check that probabilities are constant on every orbit (max - min <= tol)."""
    probs = np.asarray(probabilities, dtype=np.float64)
    if probs.shape != (orbitset.degree,):
        raise ValueError(f"need {orbitset.degree} probabilities, got {probs.shape}")
    if np.min(probs) < -1e-12 or abs(float(np.sum(probs)) - 1.0) > 1e-9:
        raise ValueError("probabilities must be nonnegative and sum to 1")
    spreads = []
    failing = []
    for k, orbit in enumerate(orbitset.orbits):
        vals = probs[list(orbit)]
        spread = float(np.max(vals) - np.min(vals))
        spreads.append(spread)
        if spread > tol:
            failing.append(k)
    return OrbitInvarianceReport(
        passed=not failing, tol=tol, spreads=tuple(spreads), failing_orbits=tuple(failing)
    )


def generator_symmetry_report(
    group: PermGroup, H_P: Operator | None = None, H_M: Operator | None = None
) -> list[dict]:
    """Which symmetry definition each generator satisfies.

    A generator may be undetectable by the objective (commutes with the
    problem Hamiltonian) and may additionally commute with the mixer; both
    commutator norms are reported per generator.
    """
    report = []
    for g in group.generators:
        entry: dict = {"generator": g}
        dest = np.array(g)
        inv = np.empty_like(dest)
        inv[dest] = np.arange(len(dest))
        if H_P is not None:
            diag = H_P.diagonal()
            entry["problem_commutator"] = float(np.max(np.abs(diag[dest] - diag)))
            entry["commutes_with_problem"] = entry["problem_commutator"] <= 1e-9
        if H_M is not None:
            # P M - M P via row/column index gymnastics; P[g[i], i] = 1
            pm = H_M.matrix[inv, :]
            mp = H_M.matrix[:, dest]
            entry["mixer_commutator"] = float(np.max(np.abs(pm - mp)))
            entry["commutes_with_mixer"] = entry["mixer_commutator"] <= 1e-9
        report.append(entry)
    return report
