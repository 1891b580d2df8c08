"""Generators for the orthogonal product-state families and their completions.

Every generator returns states in the published listing order, labelled
``phi1, phi2, ...``. Basis kets are 0-indexed: ``|0>, ..., |d-1>``.
"""

from __future__ import annotations

import enum
import itertools
import math

import numpy as np

from .states import ORTHO_TOL, ProductState, StateSet, inner_product, ket


class FamilyError(ValueError):
    """Parameters outside a family's validity region."""


class Family(str, enum.Enum):
    FENG8 = "feng8"
    THEOREM1_4X4 = "theorem1"
    SHI_SUBSET = "shi"
    NOVEL_ODD_ODD = "novel-odd-odd"
    NOVEL_EVEN_EVEN = "novel-even-even"
    NOVEL_EVEN_ODD = "novel-even-odd"
    NOVEL = "novel"
    ZHANG3X3 = "zhang3x3"
    ZHANG4X4 = "zhang4x4"
    NOVEL5X5 = "novel5x5"
    SHI_SUBSET5X5 = "shi5x5"


FIXED_DIMS = {
    Family.FENG8: (3, 3),
    Family.THEOREM1_4X4: (4, 4),
    Family.ZHANG3X3: (3, 3),
    Family.ZHANG4X4: (4, 4),
    Family.NOVEL5X5: (5, 5),
    Family.SHI_SUBSET5X5: (5, 5),
}

PARAMETRIC = (
    Family.SHI_SUBSET,
    Family.NOVEL_ODD_ODD,
    Family.NOVEL_EVEN_EVEN,
    Family.NOVEL_EVEN_ODD,
    Family.NOVEL,
)


def root_of_unity(order: int, power: int = 1) -> complex:
    """``exp(2 pi i power / order)`` as (cos, sin) at double precision."""
    power %= order
    theta = 2 * math.pi * power / order
    return complex(math.cos(theta), math.sin(theta))


def fourier_vector(dim: int, order: int, power: int, offset: int = 0) -> np.ndarray:
    """``sum_j (w^power)^j |j + offset>`` for ``j < order``, ``w = e^{2 pi i / order}``."""
    return ket(dim, *((j + offset, root_of_unity(order, power * j)) for j in range(order)))


def _pm(dim: int, i: int, j: int, sign: int) -> np.ndarray:
    return ket(dim, i, (j, float(sign)))


def _assemble(m, n, pairs, family) -> StateSet:
    states = tuple(ProductState(f"phi{k + 1}", a, b) for k, (a, b) in enumerate(pairs))
    return StateSet(m, n, states, family)


def _check_region(family: Family, m: int, n: int) -> None:
    if family in FIXED_DIMS:
        return
    if m < 3 or n < 3:
        raise FamilyError(f"{family.value} requires m, n >= 3, got ({m}, {n})")
    if family is Family.NOVEL_ODD_ODD and (m % 2 == 0 or n % 2 == 0):
        raise FamilyError(f"novel-odd-odd requires odd m and n, got ({m}, {n})")
    if family is Family.NOVEL_EVEN_EVEN and (m % 2 or n % 2):
        raise FamilyError(f"novel-even-even requires even m, n >= 4, got ({m}, {n})")
    if family is Family.NOVEL_EVEN_ODD and (m % 2 or n % 2 == 0):
        raise FamilyError(f"novel-even-odd requires even m >= 4 and odd n >= 3, got ({m}, {n})")


# -- fixed sets -----------------------------------------------------------


def feng8() -> StateSet:
    """Eight of the nine domino states in 3x3.

    The last pair is ``(|1> ± |2>)|0>``; with ``|2>`` on Bob's side instead it
    would overlap ``phi3``/``phi4`` and the set would not be orthogonal.
    """
    k = ket
    pairs = [
        (k(3, 0), _pm(3, 0, 1, +1)),
        (k(3, 0), _pm(3, 0, 1, -1)),
        (_pm(3, 0, 1, +1), k(3, 2)),
        (_pm(3, 0, 1, -1), k(3, 2)),
        (k(3, 2), _pm(3, 1, 2, +1)),
        (k(3, 2), _pm(3, 1, 2, -1)),
        (_pm(3, 1, 2, +1), k(3, 0)),
        (_pm(3, 1, 2, -1), k(3, 0)),
    ]
    return _assemble(3, 3, pairs, Family.FENG8.value)


def theorem1_4x4() -> StateSet:
    """Twelve states in 4x4 built from cube roots of unity."""
    f = fourier_vector
    pairs = []
    pairs += [(ket(4, 0), f(4, 3, t)) for t in range(3)]
    pairs += [(f(4, 3, t), ket(4, 3)) for t in range(3)]
    pairs += [(ket(4, 3), f(4, 3, t, offset=1)) for t in range(3)]
    pairs += [(f(4, 3, t, offset=1), ket(4, 0)) for t in range(3)]
    return _assemble(4, 4, pairs, Family.THEOREM1_4X4.value)


def zhang3x3() -> StateSet:
    pairs = [
        (ket(3, 1), _pm(3, 0, 1, +1)),
        (ket(3, 1), _pm(3, 0, 1, -1)),
        (ket(3, 2), _pm(3, 0, 2, +1)),
        (ket(3, 2), _pm(3, 0, 2, -1)),
        (_pm(3, 0, 1, +1), ket(3, 2)),
        (_pm(3, 0, 1, -1), ket(3, 2)),
        (_pm(3, 0, 2, +1), ket(3, 1)),
        (_pm(3, 0, 2, -1), ket(3, 1)),
    ]
    return _assemble(3, 3, pairs, Family.ZHANG3X3.value)


def zhang4x4() -> StateSet:
    pairs = []
    for i in (1, 2, 3):
        pairs += [(ket(4, i), _pm(4, 0, i, s)) for s in (+1, -1)]
    for i, j in ((1, 2), (2, 3), (3, 1)):
        pairs += [(_pm(4, 0, i, s), ket(4, j)) for s in (+1, -1)]
    return _assemble(4, 4, pairs, Family.ZHANG4X4.value)


def novel5x5() -> StateSet:
    """Sixteen states in 5x5 in their original listing order.

    The last pair is ``(|1> ± |2>)|0>``, which is what the general odd/odd
    pattern produces; with ``|4>`` on Bob's side it would overlap ``phi5``/``phi6``.
    """
    pairs = []
    for a, b in (
        ((0,), (0, 1)),
        ((0,), (2, 3)),
        ((0, 1), (4,)),
        ((2, 3), (4,)),
        ((4,), (3, 4)),
        ((4,), (1, 2)),
        ((3, 4), (0,)),
        ((1, 2), (0,)),
    ):
        for s in (+1, -1):
            va = ket(5, a[0]) if len(a) == 1 else _pm(5, a[0], a[1], s)
            vb = ket(5, b[0]) if len(b) == 1 else _pm(5, b[0], b[1], s)
            pairs.append((va, vb))
    return _assemble(5, 5, pairs, Family.NOVEL5X5.value)


# -- parametric families --------------------------------------------------


def shi_subset(m: int, n: int) -> StateSet:
    """``2(m+n)-4`` states: four blocks of discrete-Fourier vectors on the grid edges."""
    _check_region(Family.SHI_SUBSET, m, n)
    f = fourier_vector
    pairs = []
    pairs += [(ket(m, 0), f(n, n - 1, s)) for s in range(n - 1)]
    pairs += [(f(m, m - 1, e), ket(n, n - 1)) for e in range(m - 1)]
    pairs += [(ket(m, m - 1), f(n, n - 1, s, offset=1)) for s in range(n - 1)]
    pairs += [(f(m, m - 1, e, offset=1), ket(n, 0)) for e in range(m - 1)]
    return _assemble(m, n, pairs, Family.SHI_SUBSET.value)


def _pm_block(dim: int, starts):
    # (|s> + |s+1>), (|s> - |s+1>) for each start s
    out = []
    for s in starts:
        out.append(_pm(dim, s, s + 1, +1))
        out.append(_pm(dim, s, s + 1, -1))
    return out


def novel_odd_odd(m: int, n: int) -> StateSet:
    _check_region(Family.NOVEL_ODD_ODD, m, n)
    d1, d2 = (m - 1) // 2, (n - 1) // 2
    pairs = []
    pairs += [(ket(m, 0), b) for b in _pm_block(n, [2 * d for d in range(d2)])]
    pairs += [(a, ket(n, n - 1)) for a in _pm_block(m, [2 * s for s in range(d1)])]
    pairs += [(ket(m, m - 1), b) for b in _pm_block(n, [2 * d + 1 for d in range(d2)])]
    pairs += [(a, ket(n, 0)) for a in _pm_block(m, [2 * s + 1 for s in range(d1)])]
    return _assemble(m, n, pairs, Family.NOVEL_ODD_ODD.value)


def novel_even_even(m: int, n: int) -> StateSet:
    _check_region(Family.NOVEL_EVEN_EVEN, m, n)
    d1, d2 = m // 2, n // 2
    f = fourier_vector
    pairs = []
    pairs += [(ket(m, 0), f(n, 3, t)) for t in range(3)]
    pairs += [(ket(m, 0), b) for b in _pm_block(n, [2 * d + 3 for d in range(d2 - 2)])]
    pairs += [(f(m, 3, t), ket(n, n - 1)) for t in range(3)]
    pairs += [(a, ket(n, n - 1)) for a in _pm_block(m, [2 * s + 3 for s in range(d1 - 2)])]
    pairs += [(ket(m, m - 1), f(n, 3, t, offset=1)) for t in range(3)]
    pairs += [(ket(m, m - 1), b) for b in _pm_block(n, [2 * d + 4 for d in range(d2 - 2)])]
    pairs += [(f(m, 3, t, offset=1), ket(n, 0)) for t in range(3)]
    pairs += [(a, ket(n, 0)) for a in _pm_block(m, [2 * s + 4 for s in range(d1 - 2)])]
    return _assemble(m, n, pairs, Family.NOVEL_EVEN_EVEN.value)


def novel_even_odd(m: int, n: int) -> StateSet:
    _check_region(Family.NOVEL_EVEN_ODD, m, n)
    d1, d2 = m // 2, (n - 1) // 2
    f = fourier_vector
    pairs = []
    pairs += [(ket(m, 0), b) for b in _pm_block(n, [2 * d for d in range(d2)])]
    pairs += [(f(m, 3, t), ket(n, n - 1)) for t in range(3)]
    pairs += [(a, ket(n, n - 1)) for a in _pm_block(m, [2 * s + 3 for s in range(d1 - 2)])]
    pairs += [(ket(m, m - 1), b) for b in _pm_block(n, [2 * d + 1 for d in range(d2)])]
    pairs += [(f(m, 3, t, offset=1), ket(n, 0)) for t in range(3)]
    pairs += [(a, ket(n, 0)) for a in _pm_block(m, [2 * s + 4 for s in range(d1 - 2)])]
    return _assemble(m, n, pairs, Family.NOVEL_EVEN_ODD.value)


def novel(m: int, n: int) -> StateSet:
    """Dispatch on the parities of ``m`` and ``n``.

    Odd ``m`` with even ``n`` reuses the even/odd construction at ``(n, m)``
    with the two parties exchanged.
    """
    _check_region(Family.NOVEL, m, n)
    if m % 2 and n % 2:
        s = novel_odd_odd(m, n)
    elif m % 2 == 0 and n % 2 == 0:
        s = novel_even_even(m, n)
    elif m % 2 == 0:
        s = novel_even_odd(m, n)
    else:
        s = novel_even_odd(n, m).swapped()
    return StateSet(s.m, s.n, s.states, Family.NOVEL.value)


_GENERATORS = {
    Family.FENG8: lambda m, n: feng8(),
    Family.THEOREM1_4X4: lambda m, n: theorem1_4x4(),
    Family.ZHANG3X3: lambda m, n: zhang3x3(),
    Family.ZHANG4X4: lambda m, n: zhang4x4(),
    Family.NOVEL5X5: lambda m, n: novel5x5(),
    Family.SHI_SUBSET5X5: lambda m, n: StateSet(
        5, 5, shi_subset(5, 5).states, Family.SHI_SUBSET5X5.value
    ),
    Family.SHI_SUBSET: shi_subset,
    Family.NOVEL_ODD_ODD: novel_odd_odd,
    Family.NOVEL_EVEN_EVEN: novel_even_even,
    Family.NOVEL_EVEN_ODD: novel_even_odd,
    Family.NOVEL: novel,
}


def generate(family: Family | str, m: int | None = None, n: int | None = None) -> StateSet:
    """Build a family instance.

    Fixed-size families accept ``m``/``n`` of ``None`` or their own dimensions.
    """
    family = Family(family)
    if family in FIXED_DIMS:
        fm, fn = FIXED_DIMS[family]
        if (m is not None and m != fm) or (n is not None and n != fn):
            raise FamilyError(f"{family.value} is fixed at {fm}x{fn}, got ({m}, {n})")
        m, n = fm, fn
    elif m is None or n is None:
        raise FamilyError(f"{family.value} needs both m and n")
    return _GENERATORS[family](m, n)


def in_region(family: Family | str, m: int, n: int) -> bool:
    family = Family(family)
    if family in FIXED_DIMS:
        return FIXED_DIMS[family] == (m, n)
    try:
        _check_region(family, m, n)
    except FamilyError:
        return False
    return True


def count_formula(family: Family | str, m: int | None = None, n: int | None = None) -> int:
    """Closed-form size of a family instance."""
    family = Family(family)
    if family in FIXED_DIMS:
        fm, fn = FIXED_DIMS[family]
        if (m is not None and m != fm) or (n is not None and n != fn):
            raise FamilyError(f"{family.value} is fixed at {fm}x{fn}, got ({m}, {n})")
        if family in (Family.ZHANG3X3, Family.ZHANG4X4):
            return 4 * fm - 4
        return 2 * (fm + fn) - 4
    if m is None or n is None:
        raise FamilyError(f"{family.value} needs both m and n")
    _check_region(family, m, n)
    return 2 * n + 2 * m - 4


# -- completion -----------------------------------------------------------


class CompletionError(ValueError):
    def __init__(self, msg, pair):
        super().__init__(msg)
        self.pair = pair


def middle_grid(m: int, n: int) -> list[ProductState]:
    """``|i>|j>`` for ``1 <= i <= m-2`` and ``1 <= j <= n-2``, labelled ``grid_i_j``."""
    return [
        ProductState(f"grid_{i}_{j}", ket(m, i), ket(n, j))
        for i, j in itertools.product(range(1, m - 1), range(1, n - 1))
    ]


def complete_with_grid(s: StateSet, tol: float = ORTHO_TOL) -> StateSet:
    """Append the middle-grid states, refusing any that overlap an existing state."""
    grid = middle_grid(s.m, s.n)
    for g in grid:
        for st in s.states:
            ov = abs(inner_product(g.a, st.a) * inner_product(g.b, st.b))
            scale = np.linalg.norm(st.a) * np.linalg.norm(st.b)
            if ov > tol * scale:
                raise CompletionError(
                    f"grid state {g.label} is not orthogonal to {st.label}", (g.label, st.label)
                )
    return s.with_states(list(s.states) + grid)


def is_complete_basis(s: StateSet, tol: float = 1e-9) -> bool:
    """True iff there are ``m n`` states whose joint vectors have full rank."""
    if len(s) != s.m * s.n:
        return False
    mat = np.column_stack([st.vector() / np.linalg.norm(st.vector()) for st in s.states])
    sv = np.linalg.svd(mat, compute_uv=False)
    return bool(sv[-1] > tol * sv[0])


def computational_basis(m: int, n: int) -> StateSet:
    """All ``|i>|j>``; a locally distinguishable control set."""
    states = [
        ProductState(f"e{i}{j}" if max(m, n) <= 10 else f"e{i}_{j}", ket(m, i), ket(n, j))
        for i in range(m)
        for j in range(n)
    ]
    return StateSet(m, n, tuple(states), None)
