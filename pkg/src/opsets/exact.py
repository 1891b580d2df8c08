"""Exact rank of orthogonality-preserving constraints over a cyclotomic field.

Amplitudes of the constructed families are rationals times roots of unity.
They are recognized from their floating values, mapped into ``Q(zeta_k)``
(polynomials with rational coefficients modulo the k-th cyclotomic
polynomial), and the constraint matrix is row-reduced without rounding.

The equations are rebuilt from scratch over all ``d**2`` complex entries of
the operator, so this path shares nothing with the floating solver beyond the
input vectors. Because the equation set is closed under swapping a pair,
the complex solution space is closed under ``H -> H^dag`` and its complex
dimension equals the real dimension of the Hermitian solution space.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import reduce

import numpy as np

MAX_ORDER = 720
MAX_DENOMINATOR = 10**6
RECOGNIZE_TOL = 1e-9


class OracleUnavailable(ValueError):
    """Some coefficient could not be identified as a cyclotomic number."""


class SelectionMismatch(AssertionError):
    """The exact zero pattern disagrees with the floating pair selection."""


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, coefficients low -> high, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, dc in enumerate(den):
                num[shift + i] -= c * dc
    rem = num[: len(den) - 1]
    return q, rem


def cyclotomic_polynomial(k: int) -> list[int]:
    """Integer coefficients of ``Phi_k``, lowest degree first."""
    if k < 1:
        raise ValueError("k must be positive")
    poly = [-1] + [0] * (k - 1) + [1]  # x^k - 1
    for d in range(1, k):
        if k % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


class CyclotomicField:
    """``Q(zeta_k)`` with elements stored as tuples of ``Fraction`` (power basis)."""

    def __init__(self, k: int):
        self.k = k
        self.modulus = cyclotomic_polynomial(k)
        self.degree = len(self.modulus) - 1
        self.zero = (Fraction(0),) * self.degree
        self.one = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)
        self._powers = [self._reduce([0] * e + [1]) for e in range(k)]

    def _reduce(self, coeffs) -> tuple[Fraction, ...]:
        c = [Fraction(x) for x in coeffs]
        deg = self.degree
        for top in range(len(c) - 1, deg - 1, -1):
            lead = c[top]
            if lead:
                for i in range(deg + 1):
                    c[top - deg + i] -= lead * self.modulus[i]
        c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
        return tuple(c)

    def zeta_power(self, e: int) -> tuple[Fraction, ...]:
        return self._powers[e % self.k]

    def monomial(self, r: Fraction, e: int) -> tuple[Fraction, ...]:
        """``r * zeta_k**e``."""
        return tuple(r * x for x in self.zeta_power(e))

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        return self._reduce(prod)

    def is_zero(self, x) -> bool:
        return not any(x)

    def inv(self, x):
        """Solve ``x * y = 1`` as a rational linear system in the power basis."""
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero")
        deg = self.degree
        cols = []
        basis_el = list(self.one)
        for _ in range(deg):
            cols.append(self.mul(x, tuple(basis_el)))
            basis_el = [Fraction(0)] + basis_el[:-1]
        mat = [[cols[j][i] for j in range(deg)] + [self.one[i]] for i in range(deg)]
        sol = solve_rational(mat)
        return tuple(sol)

    def to_complex(self, x) -> complex:
        z = cmath.exp(2j * math.pi / self.k)
        return sum(float(c) * z**i for i, c in enumerate(x))


def solve_rational(aug: list[list[Fraction]]) -> list[Fraction]:
    """Gauss-Jordan on a square nonsingular augmented matrix ``[A | b]``."""
    n = len(aug)
    m = [row[:] for row in aug]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def exact_rank(rows, field: CyclotomicField) -> int:
    """Rank of sparse rows (dicts ``col -> element``) by incremental echelon reduction."""
    pivots: dict[int, dict] = {}
    for raw in rows:
        row = {c: v for c, v in raw.items() if not field.is_zero(v)}
        while row:
            lead = min(row)
            if lead in pivots:
                f = row[lead]
                for c, v in pivots[lead].items():
                    nv = field.sub(row.get(c, field.zero), field.mul(f, v))
                    if field.is_zero(nv):
                        row.pop(c, None)
                    else:
                        row[c] = nv
            else:
                inv = field.inv(row[lead])
                pivots[lead] = {c: field.mul(inv, v) for c, v in row.items()}
                break
    return len(pivots)


# -- recognizing amplitudes -------------------------------------------------


def _recognize(z: complex) -> tuple[Fraction, int, int] | None:
    """``z = r * exp(2 pi i p / q)`` with rational ``r`` and small ``q``; None for zero."""
    r = abs(z)
    if r <= RECOGNIZE_TOL:
        return None
    rat = Fraction(r).limit_denominator(MAX_DENOMINATOR)
    if abs(float(rat) - r) > RECOGNIZE_TOL * max(1.0, r):
        raise OracleUnavailable(f"modulus {r!r} is not a recognizable rational")
    turns = (cmath.phase(z) / (2 * math.pi)) % 1.0
    for q in range(1, MAX_ORDER + 1):
        p = round(turns * q)
        if abs(turns * q - p) <= RECOGNIZE_TOL * q:
            return rat, q, p % q
    raise OracleUnavailable(f"phase of {z!r} is not a root of unity of order <= {MAX_ORDER}")


def _recognize_rows(vectors: np.ndarray):
    # each local vector is rescaled by the modulus of its first nonzero entry;
    # rescaling a state multiplies its equations by a nonzero constant
    out = []
    for v in vectors:
        nz = np.flatnonzero(np.abs(v) > RECOGNIZE_TOL)
        scale = abs(v[nz[0]])
        out.append([_recognize(z / scale) for z in v])
    return out


def _common_order(*recognized) -> int:
    orders = [q for rows in recognized for row in rows for x in row if x is not None for q in [x[1]]]
    return reduce(math.lcm, orders, 1)


def _exact_overlap(u, v, field: CyclotomicField, k: int):
    # <u|v> = sum conj(u_p) v_p
    acc = field.zero
    for x, y in zip(u, v):
        if x is None or y is None:
            continue
        (rx, qx, px), (ry, qy, py) = x, y
        e = -px * (k // qx) + py * (k // qy)
        acc = field.add(acc, field.monomial(rx * ry, e))
    return acc


def exact_rank_oracle(c) -> int:
    """Exact complex rank of ``c``'s equations; nullspace dim is ``d**2 - rank``.

    Raises
    ------
    OracleUnavailable
        If an amplitude is not a rational multiple of a root of unity.
    SelectionMismatch
        If the exact zero pattern of opposite-side overlaps differs from the
        pairs the floating assembly selected.
    """
    local = _recognize_rows(c.local)
    other = _recognize_rows(c.other)
    k = _common_order(local, other)
    field = CyclotomicField(k)
    count = len(local)

    selected = set()
    for i in range(count):
        for j in range(count):
            if i != j and not field.is_zero(_exact_overlap(other[i], other[j], field, k)):
                selected.add((i, j))
    if selected != set(c.sources):
        raise SelectionMismatch(
            f"exact pair selection differs from floating selection: "
            f"{sorted(selected ^ set(c.sources))}"
        )

    d = c.d
    rows = []
    for i, j in sorted(selected):
        row = {}
        for p, x in enumerate(local[i]):
            if x is None:
                continue
            for q, y in enumerate(local[j]):
                if y is None:
                    continue
                (rx, qx, px), (ry, qy, py) = x, y
                e = -px * (k // qx) + py * (k // qy)
                row[p * d + q] = field.monomial(rx * ry, e)
        rows.append(row)
    return exact_rank(rows, field)


def exact_nullspace_dim(c) -> int:
    return c.d * c.d - exact_rank_oracle(c)
