"""Monotone map arithmetic and the interval duality."""

from math import comb

import pytest
from hypothesis import given, strategies as st

from trusskit import (
    DeltaMap,
    DomainError,
    NablaMap,
    Ordinal,
    compose_delta,
    compose_nabla,
    dual_delta_to_nabla,
    dual_nabla_to_delta,
    enumerate_delta_maps,
    enumerate_nabla_maps,
)


def delta_maps(max_n=3):
    return st.tuples(
        st.integers(min_value=0, max_value=max_n),
        st.integers(min_value=0, max_value=max_n),
    ).flatmap(
        lambda nm: st.lists(
            st.integers(min_value=0, max_value=nm[1]),
            min_size=nm[0] + 1,
            max_size=nm[0] + 1,
        ).map(lambda vs: DeltaMap(nm[0], nm[1], tuple(sorted(vs))))
    )


def test_ordinal_rejects_negative():
    with pytest.raises(DomainError):
        Ordinal(-1)


def test_ordinal_size():
    assert Ordinal(0).size == 1
    assert Ordinal(4).size == 5


def test_delta_map_validation():
    DeltaMap(1, 2, (0, 2))
    with pytest.raises(DomainError):
        DeltaMap(1, 2, (2, 0))  # not monotone
    with pytest.raises(DomainError):
        DeltaMap(1, 2, (0, 3))  # out of range
    with pytest.raises(DomainError):
        DeltaMap(1, 2, (0, 1, 2))  # wrong arity


def test_nabla_map_needs_endpoints():
    NablaMap(1, 2, (0, 2))
    with pytest.raises(DomainError):
        NablaMap(1, 2, (0, 1))
    with pytest.raises(DomainError):
        NablaMap(1, 2, (1, 2))
    with pytest.raises(DomainError):
        NablaMap(0, 2, (0,))  # ordinals too small on the interval side


def test_compose_requires_matching_middle():
    f = DeltaMap(1, 2, (0, 2))
    with pytest.raises(DomainError):
        compose_delta(f, f)


def test_delta_count_is_binomial():
    for n in range(4):
        for m in range(4):
            assert len(enumerate_delta_maps(n, m)) == comb(n + m + 1, n + 1)


def test_nabla_count_matches_delta_via_duality():
    # endpoint-preserving [n] -> [m] correspond to plain [m-1] -> [n-1]
    for n in range(1, 4):
        for m in range(1, 4):
            assert len(enumerate_nabla_maps(n, m)) == len(
                enumerate_delta_maps(m - 1, n - 1)
            )


def test_dual_of_inner_face():
    f = DeltaMap(1, 2, (0, 2))
    g = dual_delta_to_nabla(f)
    assert (g.src, g.dst) == (Ordinal(3), Ordinal(2))
    assert g.values == (0, 1, 1, 2)
    assert dual_nabla_to_delta(g) == f


def test_dual_roundtrip_exhaustive():
    for n in range(4):
        for m in range(4):
            for f in enumerate_delta_maps(n, m):
                assert dual_nabla_to_delta(dual_delta_to_nabla(f)) == f
    for n in range(1, 4):
        for m in range(1, 4):
            for g in enumerate_nabla_maps(n, m):
                assert dual_delta_to_nabla(dual_nabla_to_delta(g)) == g


def test_duality_is_contravariant():
    for f in enumerate_delta_maps(1, 2):
        for g in enumerate_delta_maps(2, 1):
            lhs = dual_delta_to_nabla(compose_delta(f, g))
            rhs = compose_nabla(dual_delta_to_nabla(g), dual_delta_to_nabla(f))
            assert lhs == rhs


def test_identity_is_neutral():
    f = DeltaMap(2, 1, (0, 0, 1))
    assert compose_delta(DeltaMap.identity(2), f) == f
    assert compose_delta(f, DeltaMap.identity(1)) == f
    g = NablaMap(2, 3, (0, 2, 3))
    assert compose_nabla(NablaMap.identity(2), g) == g
    assert compose_nabla(g, NablaMap.identity(3)) == g


@given(delta_maps())
def test_dual_roundtrip_property(f):
    assert dual_nabla_to_delta(dual_delta_to_nabla(f)) == f


@given(delta_maps(), st.data())
def test_compose_associative_property(f, data):
    g = data.draw(delta_maps().filter(lambda g: g.src == f.dst))
    h = data.draw(delta_maps().filter(lambda h: h.src == g.dst))
    assert compose_delta(compose_delta(f, g), h) == compose_delta(
        f, compose_delta(g, h)
    )


@given(delta_maps())
def test_dual_counts_preimages(f):
    g = dual_delta_to_nabla(f)
    for j in range(g.src.size):
        assert g(j) == sum(1 for i in range(f.src.size) if f(i) < j)
