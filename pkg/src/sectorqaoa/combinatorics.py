"""Partitions, Young tableaux, hooks, contents, and symmetric-group characters.

Conventions used throughout the package: boxes carry 1-based (row, col)
coordinates with rows growing downward, and the content of a box is
col - row.  All functions here are pure; the character table is memoized.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, NamedTuple, Sequence

from .errors import SectorInadmissibleError, ShapeMismatchError


class Box(NamedTuple):
    """1-based cell coordinates inside a Young diagram."""

    row: int
    col: int


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive integer parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 1 for p in self.parts):
            raise ValueError(f"partition parts must be positive, got {self.parts}")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing, got {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __repr__(self) -> str:
        return f"Partition{self.parts}"

    def contains(self, box: Box) -> bool:
        return 1 <= box.row <= len(self.parts) and 1 <= box.col <= self.parts[box.row - 1]

    def boxes(self) -> Iterator[Box]:
        for r, width in enumerate(self.parts, start=1):
            for c in range(1, width + 1):
                yield Box(r, c)

    def padded(self, length: int) -> tuple[int, ...]:
        """Parts extended with zeros up to the requested length."""
        return self.parts + (0,) * (length - len(self.parts))

    def column_heights(self) -> tuple[int, ...]:
        width = self.parts[0] if self.parts else 0
        return tuple(sum(1 for p in self.parts if p >= c) for c in range(1, width + 1))

    def is_hook(self) -> bool:
        return all(p == 1 for p in self.parts[1:])


def as_partition(shape: Partition | Sequence[int]) -> Partition:
    """Coerce a part sequence to a Partition (validating it)."""
    if isinstance(shape, Partition):
        return shape
    return Partition(tuple(shape))


@dataclass(frozen=True)
class Tableau:
    """A shape together with a filling, stored row by row."""

    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != self.shape.parts:
            raise ShapeMismatchError(f"filling {self.rows} does not match shape {self.shape}")

    def entry(self, box: Box) -> int:
        if not self.shape.contains(box):
            raise ShapeMismatchError(f"box {box} outside shape {self.shape}")
        return self.rows[box.row - 1][box.col - 1]

    def entries(self) -> dict[Box, int]:
        return {box: self.entry(box) for box in self.shape.boxes()}

    def box_of(self, value: int) -> Box:
        for r, row in enumerate(self.rows, start=1):
            for c, v in enumerate(row, start=1):
                if v == value:
                    return Box(r, c)
        raise ValueError(f"value {value} not present in tableau")

    def reading_word(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.rows))

    def is_standard(self) -> bool:
        n = self.shape.n
        if sorted(self.reading_word()) != list(range(1, n + 1)):
            return False
        return self._rows_increase(strict=True) and self._cols_increase()

    def is_semistandard(self, d: int) -> bool:
        if any(v < 1 or v > d for v in self.reading_word()):
            return False
        return self._rows_increase(strict=False) and self._cols_increase()

    def _rows_increase(self, strict: bool) -> bool:
        for row in self.rows:
            for a, b in zip(row, row[1:]):
                if b < a or (strict and b == a):
                    return False
        return True

    def _cols_increase(self) -> bool:
        for upper, lower in zip(self.rows, self.rows[1:]):
            for a, b in zip(upper, lower):
                if b <= a:
                    return False
        return True


def partitions(n: int, max_parts: int) -> list[Partition]:
    """All partitions of n with at most max_parts parts, lexicographically decreasing."""
    if n < 1 or max_parts < 1:
        raise ValueError("n and max_parts must be positive")
    return [Partition(p) for p in _partition_tuples(n, max_parts, n)]


def _partition_tuples(n: int, max_parts: int, max_first: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    if max_parts == 0:
        return []
    out = []
    for first in range(min(n, max_first), 0, -1):
        for rest in _partition_tuples(n - first, max_parts - 1, first):
            out.append((first,) + rest)
    return out


def hook_length(shape: Partition | Sequence[int], box: Box) -> int:
    """Number of boxes in the hook: the box, its row to the right, its column below."""
    shape = as_partition(shape)
    if not shape.contains(box):
        raise ShapeMismatchError(f"box {box} outside shape {shape}")
    arm = shape[box.row - 1] - box.col
    leg = sum(1 for p in shape.parts[box.row:] if p >= box.col)
    return arm + leg + 1


def content(shape: Partition | Sequence[int], box: Box) -> int:
    """Content of a box: column index minus row index."""
    shape = as_partition(shape)
    if not shape.contains(box):
        raise ShapeMismatchError(f"box {box} outside shape {shape}")
    return box.col - box.row


def dim_symmetric_irrep(shape: Partition | Sequence[int]) -> int:
    """Hook length formula: n! over the product of all hook lengths."""
    shape = as_partition(shape)
    hooks = prod(hook_length(shape, box) for box in shape.boxes())
    dim, rem = divmod(factorial(shape.n), hooks)
    assert rem == 0
    return dim


def dim_unitary_irrep(shape: Partition | Sequence[int], d: int) -> int:
    """Weyl dimension: product over i<j of (l_i - l_j + j - i)/(j - i), parts padded to d."""
    shape = as_partition(shape)
    if len(shape) > d:
        raise SectorInadmissibleError(f"shape {shape} has more than d={d} parts")
    lam = shape.padded(d)
    num = prod(lam[i] - lam[j] + j - i for i in range(d) for j in range(i + 1, d))
    den = prod(j - i for i in range(d) for j in range(i + 1, d))
    dim, rem = divmod(num, den)
    assert rem == 0
    return dim


def canonical_tableau(shape: Partition | Sequence[int]) -> Tableau:
    """The row-filling standard tableau: row i holds consecutive numbers."""
    shape = as_partition(shape)
    rows, start = [], 1
    for width in shape:
        rows.append(tuple(range(start, start + width)))
        start += width
    return Tableau(shape, tuple(rows))


def enumerate_tableaux(
    shape: Partition | Sequence[int], mode: str, d: int | None = None
) -> list[Tableau]:
    """All SYT or SSYT of a shape, sorted by row-major reading word.

    SSYT mode fills with entries 1..d and requires d >= number of parts.
    """
    shape = as_partition(shape)
    if mode == "SYT":
        fillings = _standard_fillings(shape.parts)
    elif mode == "SSYT":
        if d is None:
            raise ValueError("SSYT enumeration requires d")
        if d < len(shape):
            raise SectorInadmissibleError(f"SSYT of {shape} needs d >= {len(shape)}, got {d}")
        fillings = _semistandard_fillings(shape.parts, d)
    else:
        raise ValueError(f"mode must be 'SYT' or 'SSYT', got {mode!r}")
    fillings.sort(key=lambda rows: tuple(itertools.chain.from_iterable(rows)))
    return [Tableau(shape, rows) for rows in fillings]


def _standard_fillings(parts: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    n = sum(parts)
    grid = [[0] * p for p in parts]
    filled = [0] * len(parts)  # boxes filled so far in each row
    out = []

    def place(k: int):
        if k > n:
            out.append(tuple(tuple(row) for row in grid))
            return
        for r in range(len(parts)):
            c = filled[r]
            if c >= parts[r]:
                continue
            if r > 0 and filled[r - 1] <= c:
                continue  # box above must be filled first
            grid[r][c] = k
            filled[r] += 1
            place(k + 1)
            filled[r] -= 1

    place(1)
    return out


def _semistandard_fillings(parts: tuple[int, ...], d: int) -> list[tuple[tuple[int, ...], ...]]:
    out = []
    grid = [[0] * p for p in parts]

    def fill(r: int, c: int):
        if r == len(parts):
            out.append(tuple(tuple(row) for row in grid))
            return
        nr, nc = (r, c + 1) if c + 1 < parts[r] else (r + 1, 0)
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])  # weak increase along the row
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)  # strict increase down the column
        for v in range(lo, d + 1):
            grid[r][c] = v
            fill(nr, nc)

    fill(0, 0)
    return out


def cycle_type(sigma: Sequence[int]) -> Partition:
    """Cycle type of a permutation given as a 1-based image array."""
    n = len(sigma)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
            length += 1
        lengths.append(length)
    return Partition(tuple(sorted(lengths, reverse=True)))


def conjugacy_class_size(ct: Partition | Sequence[int]) -> int:
    """Number of permutations with the given cycle type."""
    ct = as_partition(ct)
    z = 1
    for length in set(ct.parts):
        m = ct.parts.count(length)
        z *= length ** m * factorial(m)
    return factorial(ct.n) // z


def character(shape: Partition | Sequence[int], ct: Partition | Sequence[int]) -> int:
    """Symmetric group character of the irrep `shape` at cycle type `ct`.

    Computed by the Murnaghan-Nakayama rule on beta numbers (first-column
    hook lengths): removing a border strip of size t from `shape` is
    sliding one beta number down by t into an empty slot, with sign given
    by the number of occupied slots passed over.
    """
    shape = as_partition(shape)
    ct = as_partition(ct)
    if shape.n != ct.n:
        raise ShapeMismatchError(f"shape of {shape.n} vs cycle type of {ct.n}")
    return _mn_character(shape.parts, ct.parts)


@lru_cache(maxsize=None)
def _mn_character(shape: tuple[int, ...], ct: tuple[int, ...]) -> int:
    if not shape:
        return 1
    t, rest = ct[0], ct[1:]
    length = len(shape)
    beta = [shape[i] + (length - 1 - i) for i in range(length)]
    occupied = set(beta)
    total = 0
    for i, b in enumerate(beta):
        nb = b - t
        if nb < 0 or nb in occupied:
            continue
        crossings = sum(1 for other in beta if nb < other < b)
        new_beta = sorted((c for j, c in enumerate(beta) if j != i), reverse=True)
        new_beta.append(nb)
        new_beta.sort(reverse=True)
        new_shape = tuple(new_beta[k] - (length - 1 - k) for k in range(length))
        total += (-1) ** crossings * _mn_character(tuple(p for p in new_shape if p > 0), rest)
    return total
