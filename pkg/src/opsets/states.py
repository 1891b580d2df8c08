"""Product-state primitives: local vectors, orthogonality sides, validation, JSON I/O.

States are kept unnormalized. Every amplitude lives in a read-only complex128
numpy array, so a ``StateSet`` can be shared freely once built.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

ORTHO_TOL = 1e-10


class SchemaError(ValueError):
    """Raised when a serialized state set is malformed or inconsistent."""


class Side(str, enum.Enum):
    """Side(s) on which two product states are orthogonal."""

    A = "A"
    B = "B"
    BOTH = "Both"


def local_vector(amps: Iterable[complex]) -> np.ndarray:
    """Return a read-only complex128 copy of ``amps``.

    Raises
    ------
    ValueError
        If the vector is empty, contains non-finite entries, or is identically zero.
    """
    v = np.array(list(amps), dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("local vector must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(v)):
        raise ValueError("local vector has non-finite amplitudes")
    if not np.any(np.abs(v) > 0):
        raise ValueError("local vector is identically zero")
    v.setflags(write=False)
    return v


def ket(dim: int, *terms: tuple[int, complex] | int) -> np.ndarray:
    """Build ``sum coeff |index>`` in ``C^dim``.

    Each term is either an index (coefficient 1) or an ``(index, coeff)`` pair.

    >>> ket(3, 0, (1, -1)).tolist()
    [(1+0j), (-1+0j), 0j]
    """
    v = np.zeros(dim, dtype=np.complex128)
    for t in terms:
        idx, c = (t, 1.0) if isinstance(t, (int, np.integer)) else t
        v[idx] += c
    return local_vector(v)


def inner_product(v: np.ndarray, w: np.ndarray) -> complex:
    """<v|w>, conjugate-linear in the first argument."""
    v = np.asarray(v)
    w = np.asarray(w)
    if v.shape != w.shape:
        raise ValueError(f"dimension mismatch: {v.shape} vs {w.shape}")
    return complex(np.vdot(v, w))


def _is_zero_overlap(v: np.ndarray, w: np.ndarray, tol: float) -> bool:
    return abs(inner_product(v, w)) <= tol * np.linalg.norm(v) * np.linalg.norm(w)


@dataclass(frozen=True, eq=False)
class ProductState:
    """``|a>_A |b>_B`` with a string label."""

    label: str
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", local_vector(self.a))
        object.__setattr__(self, "b", local_vector(self.b))

    def __eq__(self, other):
        if not isinstance(other, ProductState):
            return NotImplemented
        return (
            self.label == other.label
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    __hash__ = None

    def vector(self) -> np.ndarray:
        """The joint vector ``a ⊗ b`` in ``C^(m n)``."""
        return np.kron(self.a, self.b)

    def swapped(self) -> "ProductState":
        return ProductState(self.label, self.b, self.a)

    def scaled(self, ca: complex, cb: complex = 1.0) -> "ProductState":
        return ProductState(self.label, self.a * ca, self.b * cb)

    def normalized(self) -> "ProductState":
        return ProductState(
            self.label, self.a / np.linalg.norm(self.a), self.b / np.linalg.norm(self.b)
        )


def orthogonality_side(s: ProductState, t: ProductState, tol: float = ORTHO_TOL) -> Side | None:
    """Which local factors of ``s`` and ``t`` are orthogonal, or ``None``.

    A factor pair counts as orthogonal when its overlap modulus is at most
    ``tol`` times the product of the two local norms.
    """
    on_a = _is_zero_overlap(s.a, t.a, tol)
    on_b = _is_zero_overlap(s.b, t.b, tol)
    if on_a and on_b:
        return Side.BOTH
    if on_a:
        return Side.A
    if on_b:
        return Side.B
    return None


@dataclass(frozen=True, eq=False)
class StateSet:
    """An ordered collection of product states in ``C^m ⊗ C^n``."""

    m: int
    n: int
    states: tuple[ProductState, ...] = ()
    family: str | None = None

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError(f"local dimensions must be >= 2, got ({self.m}, {self.n})")
        states = tuple(self.states)
        for st in states:
            if st.a.size != self.m or st.b.size != self.n:
                raise ValueError(
                    f"state {st.label!r} has dims ({st.a.size}, {st.b.size}), "
                    f"expected ({self.m}, {self.n})"
                )
        object.__setattr__(self, "states", states)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def __eq__(self, other):
        if not isinstance(other, StateSet):
            return NotImplemented
        return (
            (self.m, self.n, self.family) == (other.m, other.n, other.family)
            and len(self.states) == len(other.states)
            and all(x == y for x, y in zip(self.states, other.states))
        )

    __hash__ = None

    @property
    def labels(self) -> list[str]:
        return [st.label for st in self.states]

    def alice_matrix(self) -> np.ndarray:
        """Columns are the Alice factors, shape ``(m, k)``."""
        if not self.states:
            return np.zeros((self.m, 0), dtype=np.complex128)
        return np.column_stack([st.a for st in self.states])

    def bob_matrix(self) -> np.ndarray:
        if not self.states:
            return np.zeros((self.n, 0), dtype=np.complex128)
        return np.column_stack([st.b for st in self.states])

    def with_states(self, states: Sequence[ProductState], family: str | None = None) -> "StateSet":
        return StateSet(self.m, self.n, tuple(states), self.family if family is None else family)

    def swapped(self) -> "StateSet":
        """Exchange the roles of Alice and Bob."""
        return StateSet(self.n, self.m, tuple(st.swapped() for st in self.states), self.family)

    def normalized(self) -> "StateSet":
        return self.with_states([st.normalized() for st in self.states])


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    pairs: dict[tuple[int, int], Side | None]
    duplicate_labels: list[str] = field(default_factory=list)
    max_residual: float = 0.0

    @property
    def offending_pairs(self) -> list[tuple[int, int]]:
        return [p for p, side in self.pairs.items() if side is None]

    def to_dict(self, labels: Sequence[str] | None = None) -> dict:
        def name(i):
            return labels[i] if labels is not None else i

        return {
            "valid": self.valid,
            "pairs": len(self.pairs),
            "offending_pairs": [[name(i), name(j)] for i, j in self.offending_pairs],
            "duplicate_labels": list(self.duplicate_labels),
            "max_residual": self.max_residual,
        }


def validate_set(s: StateSet, tol: float = ORTHO_TOL) -> ValidationReport:
    """Label every unordered pair and check pairwise total orthogonality.

    ``max_residual`` is the largest normalized joint overlap
    ``|<psi_i|psi_j>| / (|psi_i| |psi_j|)`` over all pairs.
    """
    pairs: dict[tuple[int, int], Side | None] = {}
    residual = 0.0
    for i, j in itertools.combinations(range(len(s)), 2):
        x, y = s[i], s[j]
        pairs[(i, j)] = orthogonality_side(x, y, tol)
        ra = abs(inner_product(x.a, y.a)) / (np.linalg.norm(x.a) * np.linalg.norm(y.a))
        rb = abs(inner_product(x.b, y.b)) / (np.linalg.norm(x.b) * np.linalg.norm(y.b))
        residual = max(residual, ra * rb)
    seen: set[str] = set()
    dupes = []
    for lab in s.labels:
        if lab in seen:
            dupes.append(lab)
        seen.add(lab)
    valid = not dupes and all(side is not None for side in pairs.values())
    return ValidationReport(valid, pairs, dupes, residual)


# -- JSON -----------------------------------------------------------------


def _encode_vec(v: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in v]


def _decode_vec(raw, where: str) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{where}: expected a non-empty list of [re, im] pairs")
    out = []
    for amp in raw:
        if (
            not isinstance(amp, list)
            or len(amp) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in amp)
        ):
            raise SchemaError(f"{where}: amplitude {amp!r} is not a [re, im] pair")
        if not all(math.isfinite(x) for x in amp):
            raise SchemaError(f"{where}: non-finite amplitude {amp!r}")
        out.append(complex(amp[0], amp[1]))
    return np.array(out, dtype=np.complex128)


def to_dict(s: StateSet) -> dict:
    return {
        "m": s.m,
        "n": s.n,
        "family": s.family,
        "states": [
            {"label": st.label, "a": _encode_vec(st.a), "b": _encode_vec(st.b)} for st in s.states
        ],
    }


def from_dict(data) -> StateSet:
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    try:
        m, n, raw_states = data["m"], data["n"], data["states"]
    except KeyError as exc:
        raise SchemaError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(m, int) or not isinstance(n, int) or m < 2 or n < 2:
        raise SchemaError(f"m and n must be integers >= 2, got {m!r}, {n!r}")
    family = data.get("family")
    if family is not None and not isinstance(family, str):
        raise SchemaError("family must be a string or null")
    if not isinstance(raw_states, list):
        raise SchemaError("states must be a list")
    states = []
    for k, raw in enumerate(raw_states):
        if not isinstance(raw, dict) or not {"label", "a", "b"} <= raw.keys():
            raise SchemaError(f"states[{k}] must have label, a and b")
        label = raw["label"]
        if not isinstance(label, str):
            raise SchemaError(f"states[{k}].label must be a string")
        a = _decode_vec(raw["a"], f"states[{k}].a")
        b = _decode_vec(raw["b"], f"states[{k}].b")
        if a.size != m or b.size != n:
            raise SchemaError(
                f"states[{k}] ({label}) has dims ({a.size}, {b.size}), expected ({m}, {n})"
            )
        try:
            states.append(ProductState(label, a, b))
        except ValueError as exc:
            raise SchemaError(f"states[{k}]: {exc}") from None
    return StateSet(m, n, tuple(states), family)


def save_json(s: StateSet, indent: int | None = None) -> str:
    """Serialize ``s``; floats use ``repr`` so doubles round-trip exactly."""
    return json.dumps(to_dict(s), indent=indent)


def load_json(text: str) -> StateSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None
    return from_dict(data)
