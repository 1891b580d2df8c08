import cmath
import dataclasses
from fractions import Fraction

import numpy as np
import pytest
import sympy

from opsets.exact import (
    CyclotomicField,
    OracleUnavailable,
    SelectionMismatch,
    cyclotomic_polynomial,
    exact_nullspace_dim,
    exact_rank,
    exact_rank_oracle,
    solve_rational,
)
from opsets.families import Family, computational_basis, generate, novel5x5, theorem1_4x4
from opsets.nonlocality import Party, assemble_constraints, nullspace_basis
from opsets.states import ProductState
from util import random_unitary

x = sympy.Symbol("x")


@pytest.mark.parametrize("k", [1, 2, 3, 4, 6, 8, 9, 12, 15, 30, 36])
def test_cyclotomic_polynomial_matches_sympy(k):
    expected = sympy.Poly(sympy.cyclotomic_poly(k, x), x).all_coeffs()[::-1]
    assert cyclotomic_polynomial(k) == [int(c) for c in expected]


def test_phi12():
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]


def _random_element(field, rng):
    return tuple(Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))) for _ in range(field.degree))


@pytest.mark.parametrize("k", [3, 4, 5, 12])
def test_field_arithmetic_matches_complex(k):
    f = CyclotomicField(k)
    rng = np.random.default_rng(k)
    for _ in range(20):
        a, b = _random_element(f, rng), _random_element(f, rng)
        za, zb = f.to_complex(a), f.to_complex(b)
        assert f.to_complex(f.add(a, b)) == pytest.approx(za + zb)
        assert f.to_complex(f.mul(a, b)) == pytest.approx(za * zb)
        if not f.is_zero(a):
            assert f.mul(a, f.inv(a)) == f.one


def test_zeta_powers_cycle():
    f = CyclotomicField(6)
    assert f.zeta_power(6) == f.one
    assert f.to_complex(f.zeta_power(1)) == pytest.approx(cmath.exp(1j * cmath.pi / 3))
    # zeta_6^3 = -1
    assert f.zeta_power(3) == f.neg(f.one)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        CyclotomicField(3).inv(CyclotomicField(3).zero)


def test_solve_rational():
    F = Fraction
    sol = solve_rational([[F(2), F(1), F(3)], [F(1), F(-1), F(0)]])
    assert sol == [F(1), F(1)]


def test_exact_rank_over_rationals():
    f = CyclotomicField(1)
    r = lambda v: (Fraction(v),)
    rows = [{0: r(1), 1: r(2)}, {0: r(2), 1: r(4)}, {2: r(1)}]
    assert exact_rank(rows, f) == 2
    assert exact_rank([], f) == 0


def _floating_dim(s, party):
    return len(nullspace_basis(assemble_constraints(s, party)))


@pytest.mark.parametrize("party", list(Party))
def test_computational_basis(party):
    c = assemble_constraints(computational_basis(3, 4), party)
    assert exact_nullspace_dim(c) == c.d == _floating_dim(computational_basis(3, 4), party)


def test_fixed_4x4_set_rank():
    c = assemble_constraints(theorem1_4x4(), Party.ALICE)
    assert exact_rank_oracle(c) == 15


def test_novel5x5_without_last_two_states():
    # frozen: dropping the two (|1>+-|2>)|0> states frees Alice; checked exactly and by SVD
    s = novel5x5()
    t = s.with_states(s.states[:14])
    ca = assemble_constraints(t, Party.ALICE)
    cb = assemble_constraints(t, Party.BOB)
    assert exact_nullspace_dim(ca) == _floating_dim(t, Party.ALICE) == 4
    assert exact_nullspace_dim(cb) == _floating_dim(t, Party.BOB) == 1


def test_fourier_amplitudes_are_recognized():
    s = generate(Family.SHI_SUBSET, 3, 4)
    for party in Party:
        assert exact_nullspace_dim(assemble_constraints(s, party)) == 1


def test_random_unitary_input_is_unavailable():
    rng = np.random.default_rng(0)
    s = computational_basis(3, 3)
    u = random_unitary(3, rng)
    t = s.with_states([ProductState(x.label, u @ x.a, x.b) for x in s])
    with pytest.raises(OracleUnavailable):
        exact_rank_oracle(assemble_constraints(t, Party.ALICE))


def test_selection_mismatch_detected():
    c = assemble_constraints(computational_basis(3, 3), Party.ALICE)
    dropped = dataclasses.replace(c, sources=c.sources[1:], rows=c.rows[2:])
    with pytest.raises(SelectionMismatch):
        exact_rank_oracle(dropped)
