import json

import pytest
from hypothesis import given, settings, strategies as st

from cgc.combin import (PartitionFn, SymplecticFn, TypeError_, complete, enumerate_types, level,
                        modify, ncomplete, partition, partitions, symplectic_partitions,
                        t_minus_one, type_from_json, type_to_json, unipotent_split,
                        weight)
from cgc.gf import field
from cgc.poly import Poly

F3 = field(3)
TM = t_minus_one(F3)
QUAD = Poly.of(F3, (1, 0, 1))  # t^2 - alpha with alpha = 2 a nonsquare


def mu_example():
    return PartitionFn.from_dict(F3, {TM: (3, 2, 1, 1), QUAD: (2, 2, 1)})


def test_partition_operators():
    assert modify((4, 3, 3, 2, 1, 1, 1)) == (3, 2, 2, 1)
    assert modify(()) == ()
    assert complete((2, 1)) == (3, 2)
    assert ncomplete((3, 2, 2, 1), 15) == (4, 3, 3, 2, 1, 1, 1)
    assert ncomplete((), 5) == (1, 1, 1, 1, 1)
    with pytest.raises(TypeError_):
        ncomplete((3, 2), 4)


def test_weights_of_example_function():
    mu = mu_example()
    assert weight(mu) == 17
    # the modified function is {t-1: (2,1), t^2-alpha: (2,2,1)}, so 1*3 + 2*5
    assert modify(mu) == PartitionFn.from_dict(F3, {TM: (2, 1), QUAD: (2, 2, 1)})
    assert weight(modify(mu)) == 13
    assert ncomplete(modify(mu), 17) == mu
    assert weight(PartitionFn(F3)) == 0


def test_unipotent_split():
    e, ne = unipotent_split(mu_example())
    assert e == PartitionFn.from_dict(F3, {TM: (3, 2, 1, 1)})
    assert ne == PartitionFn.from_dict(F3, {QUAD: (2, 2, 1)})
    assert unipotent_split(e) == (e, PartitionFn(F3))
    assert unipotent_split(PartitionFn(F3)) == (PartitionFn(F3), PartitionFn(F3))


def test_symplectic_modification_shifts_signs():
    x = SymplecticFn(PartitionFn.from_dict(F3, {TM: (2, 1, 1)}), ((1, 2, -1), (2, 1, 1)))
    m = modify(x)
    assert m.modified and m.hminus == ((1, 1, 1),)
    assert complete(m).base == PartitionFn.from_dict(F3, {TM: (2,)})
    assert ncomplete(m, 2) == x
    assert weight(m) == weight(m.base) == 1


def test_sign_data_must_match_base():
    with pytest.raises(TypeError_):
        SymplecticFn(PartitionFn.from_dict(F3, {TM: (2,)}), ((1, 2, -1),))


@pytest.mark.parametrize("w,q,kind,count", [
    (1, 3, "gl", 2), (2, 2, "gl", 3), (2, 3, "gl", 8), (3, 3, "gl", 24), (2, 5, "gl", 24),
    (2, 3, "sp", 7), (4, 3, "sp", 34), (2, 5, "sp", 9),
])
def test_type_counts(w, q, kind, count):
    types = enumerate_types(w, field(q), kind)
    assert len(types) == len(set(types)) == count
    assert all(weight(t) == w for t in types)
    if kind == "sp":
        assert all(t.is_valid() for t in types)


def test_odd_symplectic_weight_rejected():
    with pytest.raises(TypeError_):
        enumerate_types(3, F3, "sp")


def test_symplectic_partitions_small():
    # (1,1) with sign -1 and (2) with either sign
    assert set(symplectic_partitions(2)) == {((1, 2, -1),), ((2, 1, -1),), ((2, 1, 1),)}


@pytest.mark.parametrize("kind,w", [("gl", 3), ("sp", 4)])
def test_round_trip_and_weights(kind, w):
    for t in enumerate_types(w, F3, kind):
        m = modify(t)
        n = w // 2 if kind == "sp" else w
        assert ncomplete(m, n) == t
        assert level(m) <= n
        for extra in (1, 2):
            big = ncomplete(m, n + extra)
            assert weight(big) == (2 * (n + extra) if kind == "sp" else n + extra)
            assert modify(big) == m


@pytest.mark.parametrize("kind,w", [("gl", 3), ("sp", 4)])
def test_json_round_trip(kind, w):
    for t in enumerate_types(w, F3, kind):
        assert type_from_json(F3, type_to_json(t), kind) == t
        m = modify(t)
        assert type_from_json(F3, json.loads(type_to_json(m)), kind) == m


def test_json_reduces_integers():
    data = {"factors": [{"poly": [-1, 1], "parts": [2]}]}
    assert type_from_json(F3, data) == PartitionFn.from_dict(F3, {TM: (2,)})


@settings(max_examples=50)
@given(st.lists(st.integers(1, 6), max_size=6), st.integers(0, 5))
def test_partition_round_trip(parts, extra):
    p = partition(parts)
    n = sum(p) + len(p) + extra
    assert modify(ncomplete(p, n)) == p
    assert sum(ncomplete(p, n)) == n


def test_partitions_count():
    assert [len(partitions(k)) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
