"""Sector projectors, Young symmetrizers, and sector ground states.

W splits into blocks indexed by partitions of n with at most d parts, each
block a tensor product of a permutation-group irrep and a unitary-group
irrep.  Projectors onto the blocks are built with the central character
idempotents; the distinguished state inside a block comes from applying
the Young symmetrizer of the canonical tableau to the lowest-weight base
tensor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np

from .combinatorics import (
    Partition,
    Tableau,
    as_partition,
    canonical_tableau,
    character,
    cycle_type,
    dim_symmetric_irrep,
    dim_unitary_irrep,
    partitions,
)
from .errors import ConstructionFailureError, DimensionCapError, SectorInadmissibleError
from .tensor_ops import (
    DIMENSION_CAP,
    Operator,
    StateVector,
    digit_strings,
    index_permutation,
    string_to_index,
)

PROJECTOR_MAX_N = 8  # n! permutation sums beyond this are not desk-scale


@dataclass(frozen=True)
class SectorTable:
    """Dimension bookkeeping for every admissible sector."""

    n: int
    d: int
    entries: dict[Partition, tuple[int, int, int]]  # shape -> (dimS, dimV, product)
    total: int


@dataclass(eq=False)
class SectorState:
    """A state vector tagged with the sector it lives in."""

    shape: Partition
    vector: StateVector


def admissible_shapes(n: int, d: int) -> list[Partition]:
    return partitions(n, d)


def _require_admissible(shape: Partition, n: int, d: int):
    if shape.n != n:
        raise SectorInadmissibleError(f"shape {shape} is not a partition of n={n}")
    if len(shape) > d:
        raise SectorInadmissibleError(f"shape {shape} has more than d={d} parts")


def sector_table(n: int, d: int) -> SectorTable:
    """Per-sector irrep dimensions and the d^n completeness total."""
    if d**n > DIMENSION_CAP:
        raise DimensionCapError(f"d^n = {d ** n} exceeds the dense cap {DIMENSION_CAP}")
    entries = {}
    total = 0
    for shape in admissible_shapes(n, d):
        ds = dim_symmetric_irrep(shape)
        dv = dim_unitary_irrep(shape, d)
        entries[shape] = (ds, dv, ds * dv)
        total += ds * dv
    assert total == d**n, f"sector dimensions sum to {total}, expected {d ** n}"
    return SectorTable(n=n, d=d, entries=entries, total=total)


@lru_cache(maxsize=None)
def _projector_matrix(parts: tuple[int, ...], n: int, d: int) -> np.ndarray:
    shape = Partition(parts)
    dim = d**n
    acc = np.zeros((dim, dim), dtype=np.float64)
    cols = np.arange(dim)
    for sigma in itertools.permutations(range(1, n + 1)):
        chi = character(shape, cycle_type(sigma))
        if chi == 0:
            continue
        acc[index_permutation(n, d, sigma), cols] += chi
    mat = acc.astype(np.complex128) * (dim_symmetric_irrep(shape) / factorial(n))
    mat.setflags(write=False)
    return mat


def sector_projector(shape: Partition | Sequence[int], n: int, d: int) -> Operator:
    """Character-averaged projector onto the sector of `shape`.

    Hermitian idempotent with trace dimS * dimV; refuses n > 8 since the
    construction sums over all n! permutation operators.
    """
    shape = as_partition(shape)
    _require_admissible(shape, n, d)
    if n > PROJECTOR_MAX_N:
        raise DimensionCapError(f"projector construction refuses n={n} > {PROJECTOR_MAX_N}")
    return Operator(n, d, _projector_matrix(shape.parts, n, d))


def _row_groups(tableau: Tableau) -> list[tuple[int, ...]]:
    return [tuple(row) for row in tableau.rows if len(row) > 1]


def _column_groups(tableau: Tableau) -> list[tuple[int, ...]]:
    cols = []
    width = len(tableau.rows[0]) if tableau.rows else 0
    for c in range(width):
        col = tuple(row[c] for row in tableau.rows if len(row) > c)
        if len(col) > 1:
            cols.append(col)
    return cols


def _permutation_parity(original: Sequence[int], image: Sequence[int]) -> int:
    pos = {v: i for i, v in enumerate(original)}
    perm = [pos[v] for v in image]
    inversions = sum(
        1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


def _subgroup_elements(cells: list[tuple[int, ...]], n: int, signed: bool):
    """Permutations preserving each cell, as (sign, image array) pairs."""
    for images in itertools.product(*(itertools.permutations(c) for c in cells)):
        sigma = list(range(1, n + 1))
        sign = 1
        for cell, image in zip(cells, images):
            if signed:
                sign *= _permutation_parity(cell, image)
            for orig, img in zip(cell, image):
                sigma[orig - 1] = img
        yield sign, tuple(sigma)


def young_symmetrizer(tableau: Tableau, n: int, d: int) -> Operator:
    """Row symmetrizer times column antisymmetrizer, as an operator on W."""
    if tableau.shape.n != n or not tableau.is_standard():
        raise ValueError(f"need a standard tableau of size {n}")
    if n > PROJECTOR_MAX_N:
        raise DimensionCapError(f"symmetrizer construction refuses n={n} > {PROJECTOR_MAX_N}")
    dim = d**n
    cols = np.arange(dim)
    sym = np.zeros((dim, dim), dtype=np.float64)
    for _, sigma in _subgroup_elements(_row_groups(tableau), n, signed=False):
        sym[index_permutation(n, d, sigma), cols] += 1.0
    antisym = np.zeros((dim, dim), dtype=np.float64)
    for sign, sigma in _subgroup_elements(_column_groups(tableau), n, signed=True):
        antisym[index_permutation(n, d, sigma), cols] += sign
    return Operator(n, d, (sym @ antisym).astype(np.complex128))


def _apply_to_digits(sigma: Sequence[int], digits: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(digits)
    for i, digit in enumerate(digits):
        out[sigma[i] - 1] = digit
    return tuple(out)


def lowest_weight_digits(shape: Partition, n: int) -> tuple[int, ...]:
    """Base string for the sector state: site j gets digit (row of j in T) - 1."""
    tab = canonical_tableau(shape)
    digits = [0] * n
    for r, row in enumerate(tab.rows):
        for num in row:
            digits[num - 1] = r
    return tuple(digits)


def ground_state(shape: Partition | Sequence[int], n: int, d: int) -> SectorState:
    """Symmetrized lowest-weight state of a sector.

    Applies the canonical tableau's Young symmetrizer to the base tensor
    that fills row r sites with level r-1, then normalizes.  The sign is
    canonicalized so the first nonzero amplitude is positive.
    """
    shape = as_partition(shape)
    _require_admissible(shape, n, d)
    tab = canonical_tableau(shape)
    base = lowest_weight_digits(shape, n)
    amp = np.zeros(d**n, dtype=np.float64)
    col_images = [
        (sign, _apply_to_digits(sigma, base))
        for sign, sigma in _subgroup_elements(_column_groups(tab), n, signed=True)
    ]
    for _, sigma in _subgroup_elements(_row_groups(tab), n, signed=False):
        for sign, digits in col_images:
            amp[string_to_index(_apply_to_digits(sigma, digits), d)] += sign
    nrm = float(np.linalg.norm(amp))
    if nrm < 1e-12:
        raise ConstructionFailureError(f"symmetrization of sector {shape} collapsed to zero")
    amp /= nrm
    first = np.flatnonzero(np.abs(amp) > 1e-12)[0]
    if amp[first] < 0:
        amp = -amp
    return SectorState(shape=shape, vector=StateVector(n, d, amp))


@lru_cache(maxsize=None)
def _sector_basis_matrix(parts: tuple[int, ...], n: int, d: int) -> np.ndarray:
    proj = _projector_matrix(parts, n, d)
    evals, evecs = np.linalg.eigh(proj)
    basis = np.ascontiguousarray(evecs[:, evals > 0.5])
    shape = Partition(parts)
    expected = dim_symmetric_irrep(shape) * dim_unitary_irrep(shape, d)
    assert basis.shape[1] == expected, f"projector rank {basis.shape[1]} != {expected}"
    basis.setflags(write=False)
    return basis


def sector_basis(shape: Partition | Sequence[int], n: int, d: int) -> np.ndarray:
    """Orthonormal columns spanning the sector (rank revealed from the projector)."""
    shape = as_partition(shape)
    _require_admissible(shape, n, d)
    return _sector_basis_matrix(shape.parts, n, d)


def sector_preservation_report(H: Operator, n: int, d: int) -> dict[Partition, float]:
    """Per-sector leakage ‖(I - P) H P‖ (max-abs entry); all near zero iff H preserves the split."""
    if (H.n, H.d) != (n, d):
        raise ValueError(f"operator lives on ({H.n},{H.d}), not ({n},{d})")
    eye = np.eye(d**n, dtype=np.complex128)
    report = {}
    for shape in admissible_shapes(n, d):
        proj = sector_projector(shape, n, d).matrix
        leak = (eye - proj) @ H.matrix @ proj
        report[shape] = float(np.max(np.abs(leak)))
    return report
