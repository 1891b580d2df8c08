import json

import numpy as np
import pytest

from opsets.families import computational_basis, novel5x5, zhang3x3
from opsets.states import (
    ProductState,
    SchemaError,
    Side,
    StateSet,
    inner_product,
    ket,
    load_json,
    local_vector,
    orthogonality_side,
    save_json,
    validate_set,
)

W = np.exp(2j * np.pi / 3)


def test_inner_product_conjugates_first_argument():
    v = np.array([1, 1j])
    w = np.array([1j, 1])
    assert inner_product(v, w) == pytest.approx(1j - 1j)
    assert inner_product(np.array([1j, 0]), np.array([1, 0])) == pytest.approx(-1j)


def test_inner_product_cube_roots():
    # Fourier vectors with distinct powers are orthogonal
    f = [np.array([1, W**t, W ** (2 * t)]) for t in range(3)]
    for s in range(3):
        for t in range(3):
            expected = 3 if s == t else 0
            assert abs(inner_product(f[s], f[t]) - expected) < 1e-14


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        inner_product(np.ones(2), np.ones(3))


@pytest.mark.parametrize("bad", [[], [0, 0], [np.nan, 1], [np.inf]])
def test_local_vector_rejects(bad):
    with pytest.raises(ValueError):
        local_vector(bad)


def test_local_vector_is_read_only():
    v = local_vector([1, 2])
    with pytest.raises(ValueError):
        v[0] = 3


def test_ket():
    assert ket(3, 0, (2, -1)).tolist() == [1, 0, -1]


@pytest.mark.parametrize(
    "a1, b1, a2, b2, side",
    [
        ((0,), (0,), (1,), (0,), Side.A),
        ((0,), (0,), (0,), (1,), Side.B),
        ((0,), (0,), (1,), (1,), Side.BOTH),
        ((0,), (0,), (0,), (0,), None),
    ],
)
def test_orthogonality_side(a1, b1, a2, b2, side):
    s = ProductState("s", ket(3, *a1), ket(3, *b1))
    t = ProductState("t", ket(3, *a2), ket(3, *b2))
    assert orthogonality_side(s, t) is side
    assert orthogonality_side(t, s) is side


def test_orthogonality_is_scale_free():
    s = ProductState("s", ket(2, 0, 1), ket(2, 0))
    t = ProductState("t", ket(2, 0, (1, -1)), ket(2, 0))
    assert orthogonality_side(s.scaled(1e-8), t.scaled(1e6, 3j)) is Side.A


def test_zhang3x3_validates_all_pairs():
    rep = validate_set(zhang3x3())
    assert rep.valid
    assert len(rep.pairs) == 28
    assert rep.max_residual < 1e-15


def test_identical_states_are_invalid():
    s = ProductState("x", ket(3, 0), ket(3, 1))
    rep = validate_set(StateSet(3, 3, (s, ProductState("y", s.a, s.b))))
    assert not rep.valid
    assert rep.offending_pairs == [(0, 1)]


def test_duplicate_labels_are_invalid():
    rep = validate_set(StateSet(3, 3, (ProductState("x", ket(3, 0), ket(3, 0)),
                                       ProductState("x", ket(3, 1), ket(3, 1)))))
    assert not rep.valid
    assert rep.duplicate_labels == ["x"]


def test_empty_set_is_valid():
    rep = validate_set(StateSet(3, 3, ()))
    assert rep.valid and rep.pairs == {} and rep.max_residual == 0.0


def test_dimension_check():
    with pytest.raises(ValueError):
        StateSet(3, 3, (ProductState("x", ket(2, 0), ket(3, 0)),))


def test_swap_exchanges_factors():
    s = computational_basis(3, 4).swapped()
    assert (s.m, s.n) == (4, 3)
    assert np.array_equal(s[1].a, ket(4, 1))


def test_json_round_trip_is_bit_exact():
    s = novel5x5()
    back = load_json(save_json(s))
    assert back == s
    for x, y in zip(s, back):
        assert x.a.tobytes() == y.a.tobytes()
        assert x.b.tobytes() == y.b.tobytes()


def test_json_round_trip_empty():
    s = StateSet(4, 5, ())
    assert load_json(save_json(s)) == s


def _doc():
    return json.loads(save_json(zhang3x3()))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("m"),
        lambda d: d.__setitem__("n", "three"),
        lambda d: d["states"][0].__setitem__("a", []),
        lambda d: d["states"][0].__setitem__("a", [[1, 0], [0, 0]]),
        lambda d: d["states"][0].__setitem__("b", [[1], [0], [0]]),
        lambda d: d["states"][0].__setitem__("a", [[0, 0], [0, 0], [0, 0]]),
        lambda d: d["states"][0].pop("label"),
    ],
)
def test_schema_errors(mutate):
    d = _doc()
    mutate(d)
    with pytest.raises(SchemaError):
        load_json(json.dumps(d))


def test_malformed_json():
    with pytest.raises(SchemaError):
        load_json("{not json")
