"""Partition, tableau, hook, and character tests against brute-force oracles."""
import itertools
from math import comb, factorial

import pytest

from sectorqaoa.combinatorics import (
    Box,
    Partition,
    Tableau,
    canonical_tableau,
    character,
    conjugacy_class_size,
    content,
    cycle_type,
    dim_symmetric_irrep,
    dim_unitary_irrep,
    enumerate_tableaux,
    hook_length,
    partitions,
)
from sectorqaoa.errors import SectorInadmissibleError, ShapeMismatchError


# ---------------------------------------------------------------------------
# independent oracles

def brute_partitions(n, max_parts):
    """Filter all bounded tuples; independent of the library's recursion."""
    found = set()
    for length in range(1, max_parts + 1):
        for tup in itertools.product(range(1, n + 1), repeat=length):
            if sum(tup) == n and all(a >= b for a, b in zip(tup, tup[1:])):
                found.add(tup)
    return found


def brute_hook(shape, row, col):
    count = 0
    for r, width in enumerate(shape, start=1):
        for c in range(1, width + 1):
            if (r == row and c >= col) or (c == col and r >= row):
                count += 1
    return count


def brute_syt(shape):
    """All standard fillings by filtering permutations placed row-major."""
    n = sum(shape)
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        rows, pos = [], 0
        for width in shape:
            rows.append(perm[pos : pos + width])
            pos += width
        rows_ok = all(r[i] < r[i + 1] for r in rows for i in range(len(r) - 1))
        cols_ok = all(
            rows[r][c] < rows[r + 1][c]
            for r in range(len(rows) - 1)
            for c in range(len(rows[r + 1]))
        )
        if rows_ok and cols_ok:
            out.append(tuple(rows))
    return out


def brute_ssyt(shape, d):
    """All semistandard fillings by filtering products of digits per box."""
    boxes = [(r, c) for r, width in enumerate(shape) for c in range(width)]
    out = []
    for values in itertools.product(range(1, d + 1), repeat=len(boxes)):
        grid = [[0] * width for width in shape]
        for (r, c), v in zip(boxes, values):
            grid[r][c] = v
        rows_ok = all(row[i] <= row[i + 1] for row in grid for i in range(len(row) - 1))
        cols_ok = all(
            grid[r][c] < grid[r + 1][c]
            for r in range(len(grid) - 1)
            for c in range(len(grid[r + 1]))
        )
        if rows_ok and cols_ok:
            out.append(tuple(tuple(row) for row in grid))
    return out


# ---------------------------------------------------------------------------
# partitions

def test_partitions_of_seven_with_three_parts():
    got = [p.parts for p in partitions(7, 3)]
    assert got == [
        (7,), (6, 1), (5, 2), (5, 1, 1), (4, 3), (4, 2, 1), (3, 3, 1), (3, 2, 2),
    ]


def test_partitions_trivial():
    assert [p.parts for p in partitions(1, 5)] == [(1,)]


def test_partitions_of_four_with_two_parts():
    assert brute_partitions(4, 2) == {(4,), (3, 1), (2, 2)}
    assert [p.parts for p in partitions(4, 2)] == [(4,), (3, 1), (2, 2)]


@pytest.mark.parametrize("n,max_parts", [(5, 2), (6, 3), (7, 7), (8, 4)])
def test_partitions_match_bruteforce(n, max_parts):
    got = [p.parts for p in partitions(n, max_parts)]
    assert set(got) == brute_partitions(n, max_parts)
    assert len(got) == len(set(got))
    assert got == sorted(got, reverse=True)  # lexicographically decreasing


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


# ---------------------------------------------------------------------------
# hooks and dimensions

def test_hook_length_paper_corner():
    assert hook_length((4, 3, 2), Box(1, 1)) == 6


def test_hook_length_single_box():
    assert hook_length((1,), Box(1, 1)) == 1


def test_hook_length_two_by_two():
    assert brute_hook((2, 2), 1, 1) == 3
    assert hook_length((2, 2), Box(1, 1)) == 3


@pytest.mark.parametrize("shape", [(4, 3, 2), (5, 1), (3, 3, 3), (2, 2, 1, 1)])
def test_hook_length_matches_bruteforce(shape):
    for box in Partition(shape).boxes():
        assert hook_length(shape, box) == brute_hook(shape, box.row, box.col)


def test_hook_length_outside_shape():
    with pytest.raises(ShapeMismatchError):
        hook_length((2, 1), Box(2, 2))


def test_dim_symmetric_irrep_paper_value():
    assert dim_symmetric_irrep((4, 3, 2)) == 168


def test_dim_symmetric_irrep_trivial_row():
    for n in range(1, 9):
        assert dim_symmetric_irrep((n,)) == 1


def test_dim_symmetric_irrep_three_two():
    assert len(brute_syt((3, 2))) == 5
    assert dim_symmetric_irrep((3, 2)) == 5


def test_dim_unitary_irrep_row_and_column():
    for n in range(1, 7):
        assert dim_unitary_irrep((n,), 2) == n + 1
        assert dim_unitary_irrep((n,), 2) == len(brute_ssyt((n,), 2))
    assert dim_unitary_irrep((1, 1), 2) == 1


def test_dim_unitary_irrep_two_one_three_levels():
    assert dim_unitary_irrep((2, 1), 3) == 8
    assert len(brute_ssyt((2, 1), 3)) == 8


def test_dim_unitary_irrep_too_many_parts():
    with pytest.raises(SectorInadmissibleError):
        dim_unitary_irrep((2, 1, 1), 2)


def test_hook_shape_binomials():
    for n in range(1, 13):
        for k in range(n):
            shape = (n - k,) + (1,) * k
            assert dim_symmetric_irrep(shape) == comb(n - 1, k)


def test_schur_weyl_dimension_sum():
    for d in (2, 3):
        for n in range(1, 9):
            total = sum(
                dim_symmetric_irrep(s) * dim_unitary_irrep(s, d) for s in partitions(n, d)
            )
            assert total == d**n


# ---------------------------------------------------------------------------
# tableaux

def test_enumerate_syt_three_two():
    tabs = enumerate_tableaux((3, 2), "SYT")
    assert len(tabs) == 5
    assert all(t.is_standard() for t in tabs)
    # the classic spread-out filling appears among them
    assert ((1, 2, 4), (3, 5)) in [t.rows for t in tabs]
    words = [t.reading_word() for t in tabs]
    assert words == sorted(words)


def test_enumerate_syt_single_box():
    tabs = enumerate_tableaux((1,), "SYT")
    assert len(tabs) == 1 and tabs[0].rows == ((1,),)


def test_enumerate_ssyt_row_of_two():
    tabs = enumerate_tableaux((2,), "SSYT", d=2)
    assert [t.rows for t in tabs] == [((1, 1),), ((1, 2),), ((2, 2),)]


@pytest.mark.parametrize("shape", [(3, 1), (2, 2), (4, 2, 1), (3, 3), (2, 2, 2)])
def test_syt_count_matches_bruteforce(shape):
    got = enumerate_tableaux(shape, "SYT")
    assert len(got) == len(brute_syt(shape))
    assert len(got) == dim_symmetric_irrep(shape)


@pytest.mark.parametrize("shape,d", [((2, 1), 2), ((2, 2), 3), ((3, 1), 3), ((2, 1, 1), 4)])
def test_ssyt_count_matches_bruteforce(shape, d):
    got = enumerate_tableaux(shape, "SSYT", d=d)
    assert [t.rows for t in got] == sorted(brute_ssyt(shape, d))
    assert len(got) == dim_unitary_irrep(shape, d)


def test_syt_counts_match_hook_formula_up_to_eight():
    for n in range(1, 9):
        for shape in partitions(n, n):
            assert len(enumerate_tableaux(shape, "SYT")) == dim_symmetric_irrep(shape)


def test_ssyt_counts_match_weyl_formula():
    for n in range(1, 7):
        for d in range(2, 5):
            for shape in partitions(n, d):
                count = len(enumerate_tableaux(shape, "SSYT", d=d))
                assert count == dim_unitary_irrep(shape, d)


def test_ssyt_requires_enough_levels():
    with pytest.raises(SectorInadmissibleError):
        enumerate_tableaux((1, 1, 1), "SSYT", d=2)


def test_enumerate_tableaux_bad_mode():
    with pytest.raises(ValueError):
        enumerate_tableaux((2, 1), "SSTY")


def test_canonical_tableau_paper_figure():
    assert canonical_tableau((3, 3, 2, 1)).rows == ((1, 2, 3), (4, 5, 6), (7, 8), (9,))


def test_canonical_tableau_row():
    assert canonical_tableau((5,)).rows == ((1, 2, 3, 4, 5),)


def test_canonical_tableau_square():
    assert canonical_tableau((2, 2)).rows == ((1, 2), (3, 4))


def test_canonical_tableau_is_standard():
    for n in range(1, 9):
        for shape in partitions(n, n):
            assert canonical_tableau(shape).is_standard()


# ---------------------------------------------------------------------------
# contents

def test_content_grid_first_column():
    assert content((4, 3, 2), Box(1, 1)) == 0
    assert content((4, 3, 2), Box(2, 1)) == -1
    assert content((4, 3, 2), Box(3, 1)) == -2


def test_content_corner_always_zero():
    for shape in [(1,), (3, 2), (4, 4, 4)]:
        assert content(shape, Box(1, 1)) == 0


def test_content_row_end():
    assert content((3, 2), Box(1, 3)) == 2


def test_content_outside_shape():
    with pytest.raises(ShapeMismatchError):
        content((3, 2), Box(2, 3))


# ---------------------------------------------------------------------------
# characters

def test_character_trivial_representation():
    for n in range(1, 7):
        for ct in partitions(n, n):
            assert character((n,), ct) == 1


def test_character_sign_representation_transposition():
    assert character((1, 1, 1), (2, 1)) == -1


def test_character_identity_is_dimension():
    assert character((2, 1), (1, 1, 1)) == 2
    assert character((2, 1), (1, 1, 1)) == dim_symmetric_irrep((2, 1))
    for n in range(1, 8):
        identity = (1,) * n
        for shape in partitions(n, n):
            assert character(shape, identity) == dim_symmetric_irrep(shape)


def test_character_size_mismatch():
    with pytest.raises(ShapeMismatchError):
        character((2, 1), (2, 2))


def test_character_column_orthogonality():
    # exact integer identity: sum_shape chi(c) chi(c') |class c| = n! [c == c']
    for n in range(1, 7):
        classes = partitions(n, n)
        for ci in classes:
            for cj in classes:
                inner = conjugacy_class_size(ci) * sum(
                    character(s, ci) * character(s, cj) for s in partitions(n, n)
                )
                assert inner == (factorial(n) if ci == cj else 0)


def test_conjugacy_class_sizes_sum_to_group_order():
    for n in range(1, 8):
        assert sum(conjugacy_class_size(ct) for ct in partitions(n, n)) == factorial(n)


def test_cycle_type():
    assert cycle_type((2, 1, 3)).parts == (2, 1)
    assert cycle_type((2, 3, 1)).parts == (3,)
    assert cycle_type((1, 2, 3, 4)).parts == (1, 1, 1, 1)


def test_tableau_entry_accessors():
    tab = canonical_tableau((3, 2))
    assert tab.entry(Box(2, 1)) == 4
    assert tab.box_of(5) == Box(2, 2)
    assert tab.entries()[Box(1, 3)] == 3
    with pytest.raises(ShapeMismatchError):
        tab.entry(Box(3, 1))
    with pytest.raises(ShapeMismatchError):
        Tableau(Partition((3, 2)), ((1, 2), (3, 4)))
