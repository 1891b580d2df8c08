import numpy as np
import pytest

from opsets.families import (
    CompletionError,
    Family,
    FamilyError,
    complete_with_grid,
    computational_basis,
    count_formula,
    feng8,
    generate,
    in_region,
    is_complete_basis,
    middle_grid,
    novel,
    novel5x5,
    shi_subset,
    theorem1_4x4,
)
from opsets.states import ProductState, StateSet, ket, validate_set
from util import same_rays_any_order, same_rays_in_order

GRID = [(m, n) for m in range(3, 9) for n in range(3, 9)]


@pytest.mark.parametrize("m, n", GRID)
def test_novel_count_and_orthogonality(m, n):
    s = novel(m, n)
    assert (s.m, s.n) == (m, n)
    assert len(s) == 2 * (m + n) - 4 == count_formula(Family.NOVEL, m, n)
    assert validate_set(s).valid


@pytest.mark.parametrize("m, n", GRID)
def test_shi_count_and_orthogonality(m, n):
    s = shi_subset(m, n)
    assert len(s) == 2 * (m + n) - 4
    assert validate_set(s).valid


@pytest.mark.parametrize(
    "family, size",
    [
        (Family.FENG8, 8),
        (Family.THEOREM1_4X4, 12),
        (Family.ZHANG3X3, 8),
        (Family.ZHANG4X4, 12),
        (Family.NOVEL5X5, 16),
        (Family.SHI_SUBSET5X5, 16),
    ],
)
def test_fixed_families(family, size):
    s = generate(family)
    assert len(s) == size == count_formula(family)
    assert validate_set(s).valid
    assert s.family == family.value


def test_labels_are_sequential():
    assert feng8().labels == [f"phi{i}" for i in range(1, 9)]


@pytest.mark.parametrize(
    "family, m, n",
    [
        (Family.NOVEL, 2, 5),
        (Family.SHI_SUBSET, 5, 2),
        (Family.NOVEL_ODD_ODD, 4, 5),
        (Family.NOVEL_EVEN_EVEN, 4, 5),
        (Family.NOVEL_EVEN_ODD, 5, 5),
        (Family.FENG8, 4, 4),
    ],
)
def test_out_of_region(family, m, n):
    assert not in_region(family, m, n)
    with pytest.raises(FamilyError):
        generate(family, m, n)


def test_parametric_needs_dimensions():
    with pytest.raises(FamilyError):
        generate(Family.SHI_SUBSET)


def test_novel_3x3_matches_feng8():
    assert same_rays_in_order(novel(3, 3), feng8())


def test_novel_5x5_matches_fixed_set_as_a_set():
    assert same_rays_any_order(novel(5, 5), novel5x5())


def test_novel_4x7():
    s = novel(4, 7)
    assert len(s) == 18 and validate_set(s).valid


def test_shi_4x4_matches_fixed_4x4_set():
    assert same_rays_in_order(shi_subset(4, 4), theorem1_4x4())


@pytest.mark.parametrize("m, n", [(3, 4), (4, 6), (5, 3), (6, 7), (7, 4)])
def test_shi_party_swap(m, n):
    # exchanging parties and reversing the new Bob basis gives the (n, m) set
    swapped = shi_subset(m, n).swapped()
    rev = swapped.with_states([ProductState(x.label, x.a, x.b[::-1]) for x in swapped])
    assert same_rays_any_order(rev, shi_subset(n, m))


@pytest.mark.parametrize("m, n", [(3, 4), (4, 3), (5, 6), (6, 5)])
def test_novel_odd_even_is_swapped_even_odd(m, n):
    s = novel(m, n)
    if m % 2:
        assert same_rays_in_order(s, generate(Family.NOVEL_EVEN_ODD, n, m).swapped())
    else:
        assert same_rays_in_order(s, generate(Family.NOVEL_EVEN_ODD, m, n))


def test_completion_sizes():
    assert len(complete_with_grid(novel(3, 3))) == 9
    full = complete_with_grid(novel(5, 5))
    assert len(full) == 25
    assert full.labels[-1] == "grid_3_3"
    assert is_complete_basis(full)


def test_middle_grid():
    grid = middle_grid(4, 5)
    assert len(grid) == 2 * 3
    assert np.array_equal(grid[0].a, ket(4, 1)) and np.array_equal(grid[0].b, ket(5, 1))


def test_completion_refuses_overlapping_state():
    with pytest.raises(CompletionError) as err:
        complete_with_grid(computational_basis(3, 3))
    assert err.value.pair == ("grid_1_1", "e11")


def test_is_complete_basis():
    assert is_complete_basis(computational_basis(3, 4))
    assert not is_complete_basis(novel(3, 3))
    dup = computational_basis(2, 2).states
    dependent = StateSet(2, 2, dup[:3] + (ProductState("x", ket(2, 0), ket(2, 0)),))
    assert not is_complete_basis(dependent)


def test_count_formula_zhang():
    assert count_formula(Family.ZHANG4X4) == 12
    assert count_formula(Family.NOVEL, 4, 7) == 18
