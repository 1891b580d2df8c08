"""Orthogonality-preserving measurement analysis.

For a party (say Alice) a POVM element ``E = M^dag M`` preserves the
orthogonality of the post-measurement states iff

    <a_i| E |a_j> <b_i|b_j> = 0    for all i != j.

Pairs with ``<b_i|b_j> = 0`` impose nothing; every other ordered pair gives one
complex linear equation on ``E``. The solution space always contains the
identity. If it contains nothing else, every orthogonality-preserving
measurement of that party is trivial.

Hermitian operators are parametrized by ``d**2`` reals: the ``d`` diagonal
entries, then ``sqrt(2) Re H[p, q]`` and ``sqrt(2) Im H[p, q]`` for each
``p < q`` in row-major order. The ``sqrt(2)`` makes the Euclidean norm of the
parameter vector equal the Frobenius norm of ``H``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .states import ORTHO_TOL, StateSet, validate_set

RANK_TOL = 1e-9
HERMITIAN_TOL = 1e-12

_SQRT2 = np.sqrt(2.0)


class Party(str, enum.Enum):
    ALICE = "alice"
    BOB = "bob"


class Verdict(str, enum.Enum):
    TRIVIAL_ONLY = "trivial_only"
    NONTRIVIAL_EXISTS = "nontrivial_exists"


class InvalidSetError(ValueError):
    """The input set is not pairwise orthogonal (or has duplicate labels)."""


class InternalInconsistency(RuntimeError):
    """The solution space came out empty; the identity must always be in it."""


# -- Hermitian parametrization ------------------------------------------------


def _upper_pairs(d: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(d), 2))


def hermitian_from_params(y: np.ndarray, d: int) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (d * d,):
        raise ValueError(f"expected {d * d} parameters, got shape {y.shape}")
    h = np.diag(y[:d]).astype(np.complex128)
    for k, (p, q) in enumerate(_upper_pairs(d)):
        z = complex(y[d + 2 * k], y[d + 2 * k + 1]) / _SQRT2
        h[p, q] = z
        h[q, p] = z.conjugate()
    return h


def params_from_hermitian(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h)
    d = h.shape[0]
    y = np.empty(d * d)
    y[:d] = h.diagonal().real
    for k, (p, q) in enumerate(_upper_pairs(d)):
        y[d + 2 * k] = _SQRT2 * h[p, q].real
        y[d + 2 * k + 1] = _SQRT2 * h[p, q].imag
    return y


def identity_overlap(h: np.ndarray) -> float:
    """``|<I/sqrt(d), H>_F| / |H|_F``; 1 exactly when ``H`` is a multiple of the identity."""
    d = h.shape[0]
    return float(abs(np.trace(h)) / (np.sqrt(d) * np.linalg.norm(h)))


# -- constraint system ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """Real-linearized orthogonality-preserving constraints for one party.

    ``local`` and ``other`` hold the party's and the opposite party's factors as
    rows; the exact oracle rebuilds its own equations from them.
    """

    party: Party
    d: int
    rows: np.ndarray
    sources: tuple[tuple[int, int], ...]
    local: np.ndarray
    other: np.ndarray

    @property
    def n_params(self) -> int:
        return self.d * self.d


def _factors(s: StateSet, party: Party) -> tuple[np.ndarray, np.ndarray]:
    a = s.alice_matrix().T
    b = s.bob_matrix().T
    return (a, b) if party is Party.ALICE else (b, a)


def _equation_coefficients(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Complex coefficients of ``<u|H|v>`` over the Hermitian parameters."""
    d = u.size
    c = np.outer(u.conj(), v)
    coef = np.empty(d * d, dtype=np.complex128)
    coef[:d] = c.diagonal()
    for k, (p, q) in enumerate(_upper_pairs(d)):
        coef[d + 2 * k] = (c[p, q] + c[q, p]) / _SQRT2
        coef[d + 2 * k + 1] = 1j * (c[p, q] - c[q, p]) / _SQRT2
    return coef


def assemble_constraints(
    s: StateSet, party: Party | str = Party.ALICE, tol: float = ORTHO_TOL, check: bool = True
) -> ConstraintSystem:
    """Collect two real rows per ordered pair whose opposite-side overlap is nonzero."""
    party = Party(party)
    if check:
        report = validate_set(s, tol)
        if not report.valid:
            raise InvalidSetError(
                f"set is not orthogonal: offending pairs {report.offending_pairs}, "
                f"duplicate labels {report.duplicate_labels}"
            )
    local, other = _factors(s, party)
    d = s.m if party is Party.ALICE else s.n
    norms = np.linalg.norm(other, axis=1) if len(s) else np.zeros(0)
    gram = other.conj() @ other.T if len(s) else np.zeros((0, 0))
    rows = []
    sources = []
    for i, j in itertools.permutations(range(len(s)), 2):
        if abs(gram[i, j]) > tol * norms[i] * norms[j]:
            coef = _equation_coefficients(local[i], local[j])
            rows.append(coef.real)
            rows.append(coef.imag)
            sources.append((i, j))
    mat = np.array(rows) if rows else np.zeros((0, d * d))
    return ConstraintSystem(party, d, mat, tuple(sources), local, other)


def _numerical_rank_and_null(rows: np.ndarray, n_params: int, rank_tol: float):
    if rows.shape[0] == 0:
        return 0, np.eye(n_params)
    _, sv, vt = np.linalg.svd(rows, full_matrices=True)
    rank = int(np.sum(sv > rank_tol * sv[0])) if sv.size and sv[0] > 0 else 0
    return rank, vt[rank:]


def nullspace_basis(c: ConstraintSystem, rank_tol: float = RANK_TOL) -> list[np.ndarray]:
    """Frobenius-orthonormal Hermitian basis of the solution space."""
    _, null = _numerical_rank_and_null(c.rows, c.n_params, rank_tol)
    return [hermitian_from_params(y, c.d) for y in null]


def numerical_rank(c: ConstraintSystem, rank_tol: float = RANK_TOL) -> int:
    """Real rank of the linearized rows (twice the complex rank)."""
    return _numerical_rank_and_null(c.rows, c.n_params, rank_tol)[0]


# -- per-party analysis ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class PartyAnalysis:
    party: Party
    nullspace_dim: int
    verdict: Verdict
    witness: np.ndarray | None
    max_residual: float
    basis: tuple[np.ndarray, ...] = ()

    def to_dict(self, with_witness: bool = False) -> dict:
        out = {
            "dim": self.nullspace_dim,
            "verdict": self.verdict.value,
            "max_residual": self.max_residual,
        }
        if with_witness and self.witness is not None:
            out["witness"] = [[[float(z.real), float(z.imag)] for z in row] for row in self.witness]
        return out


def constraint_residual(s: StateSet, party: Party | str, h: np.ndarray) -> float:
    """Largest ``|<a_i|H|a_j> <b_i|b_j>|`` over ordered pairs ``i != j``."""
    local, other = _factors(s, Party(party))
    if len(s) < 2:
        return 0.0
    sandwich = local.conj() @ h @ local.T
    overlaps = other.conj() @ other.T
    r = np.abs(sandwich * overlaps)
    np.fill_diagonal(r, 0.0)
    return float(r.max())


def _witness(basis: list[np.ndarray], d: int) -> np.ndarray:
    ident = params_from_hermitian(np.eye(d)) / np.sqrt(d)
    proj = np.array([params_from_hermitian(h) for h in basis])
    proj -= np.outer(proj @ ident, ident)
    _, _, vt = np.linalg.svd(proj)
    w = hermitian_from_params(vt[0], d)
    return w / np.linalg.norm(w)


def analyze_party(
    s: StateSet,
    party: Party | str = Party.ALICE,
    tol: float = ORTHO_TOL,
    rank_tol: float = RANK_TOL,
) -> PartyAnalysis:
    """Dimension of the orthogonality-preserving operator space for one party.

    Raises
    ------
    InvalidSetError
        If ``s`` is not an orthogonal set.
    InternalInconsistency
        If the computed space is empty.
    """
    party = Party(party)
    c = assemble_constraints(s, party, tol)
    basis = nullspace_basis(c, rank_tol)
    if not basis:
        raise InternalInconsistency(
            f"empty solution space for {party.value}; the identity should always solve the system"
        )
    dim = len(basis)
    if dim == 1:
        verdict, witness = Verdict.TRIVIAL_ONLY, None
    else:
        verdict, witness = Verdict.NONTRIVIAL_EXISTS, _witness(basis, c.d)
    checked = basis + ([witness] if witness is not None else [])
    residual = max(constraint_residual(s, party, h) for h in checked)
    return PartyAnalysis(party, dim, verdict, witness, residual, tuple(basis))


@dataclass(frozen=True, eq=False)
class NonlocalityReport:
    alice: PartyAnalysis
    bob: PartyAnalysis

    @property
    def certified_nonlocal(self) -> bool:
        return (
            self.alice.verdict is Verdict.TRIVIAL_ONLY and self.bob.verdict is Verdict.TRIVIAL_ONLY
        )

    def to_dict(self, with_witness: bool = False) -> dict:
        return {
            "alice": self.alice.to_dict(with_witness),
            "bob": self.bob.to_dict(with_witness),
            "certified_nonlocal": self.certified_nonlocal,
        }


def certify_nonlocal(
    s: StateSet, tol: float = ORTHO_TOL, rank_tol: float = RANK_TOL
) -> NonlocalityReport:
    """Run both parties.

    ``certified_nonlocal`` means neither party can open with a nontrivial
    orthogonality-preserving measurement, which rules out perfect LOCC
    discrimination. A negative result is only the absence of that certificate.
    """
    return NonlocalityReport(
        analyze_party(s, Party.ALICE, tol, rank_tol),
        analyze_party(s, Party.BOB, tol, rank_tol),
    )


# -- explicit measurement from a witness ----------------------------------


def witness_to_povm(w: np.ndarray, margin: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Two-outcome measurement ``(E, I - E)`` with ``E`` in ``span{w, I}``.

    ``E = (w + lam I) / c`` with ``lam = max(0, -lambda_min(w)) + margin`` and
    ``c = lambda_max(w) + lam``, so the spectrum of ``E`` lies in ``[0, 1]``
    and its top eigenvalue is exactly 1.
    """
    w = np.asarray(w, dtype=np.complex128)
    d = w.shape[0]
    if np.max(np.abs(w - w.conj().T)) > HERMITIAN_TOL * max(1.0, np.linalg.norm(w)):
        raise ValueError("witness is not Hermitian")
    traceless = w - np.trace(w) / d * np.eye(d)
    if np.linalg.norm(traceless) <= HERMITIAN_TOL * max(1.0, np.linalg.norm(w)):
        raise ValueError("witness is proportional to the identity")
    w = (w + w.conj().T) / 2
    evals = np.linalg.eigvalsh(w)
    lam = max(0.0, -evals[0]) + margin
    scale = evals[-1] + lam
    e = (w + lam * np.eye(d)) / scale
    return e, np.eye(d) - e
