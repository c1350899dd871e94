import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bits
from gccd.codec import (
    BitString,
    CodecError,
    ExtensionPlan,
    Graph,
    Padding,
    bits_to_graph,
    graph_to_bits,
    order_for_length,
    padding_bit,
    pair_at,
    pos_of,
    serialize_symbols,
    triangle_size,
)


def hand_sequence(m):
    # a21, a31, a32, a41, ... written out the slow way
    return [(i, j) for i in range(2, m + 1) for j in range(1, i)]


@pytest.mark.parametrize("i,j,m,t", [(2, 1, 4, 0), (4, 3, 4, 5), (3, 2, 5, 2)])
def test_pos_of(i, j, m, t):
    assert pos_of(i, j, m) == t


@pytest.mark.parametrize("t,m,pair", [(0, 3, (2, 1)), (5, 4, (4, 3)), (2, 5, (3, 2))])
def test_pair_at(t, m, pair):
    assert pair_at(t, m) == pair


@pytest.mark.parametrize("i,j,m", [(2, 2, 4), (2, 3, 4), (5, 1, 4), (3, 0, 4)])
def test_pos_of_rejects_invalid(i, j, m):
    with pytest.raises(CodecError):
        pos_of(i, j, m)


@pytest.mark.parametrize("t,m", [(-1, 4), (6, 4), (0, 1)])
def test_pair_at_rejects_out_of_range(t, m):
    with pytest.raises(CodecError):
        pair_at(t, m)


@pytest.mark.parametrize("m", range(1, 9))
def test_positions_bijective(m):
    seq = hand_sequence(m)
    assert len(seq) == triangle_size(m)
    for t, (i, j) in enumerate(seq):
        assert pos_of(i, j, m) == t
        assert pair_at(t, m) == (i, j)


def test_pair_at_large_orders():
    for m in (64, 200):
        for t in range(triangle_size(m)):
            i, j = pair_at(t, m)
            assert pos_of(i, j, m) == t


@pytest.mark.parametrize("l,expected", [(6, (4, 0)), (7, (5, 3)), (1, (2, 0)), (2, (3, 1)), (2016, (64, 0))])
def test_order_for_length(l, expected):
    assert order_for_length(l) == expected


def test_order_for_length_rejects_empty():
    with pytest.raises(CodecError):
        order_for_length(0)


def test_order_for_length_minimal():
    for l in range(1, 3000):
        m0, slack = order_for_length(l)
        assert triangle_size(m0) >= l > triangle_size(m0 - 1)
        assert slack == triangle_size(m0) - l


class TestExtensionPlan:
    def test_zero_fill(self):
        plan = ExtensionPlan.build(7)
        assert (plan.payload_order, plan.total_order, plan.pin_size) == (5, 5, 0)

    def test_clique_pin(self):
        plan = ExtensionPlan.build(3, Padding.CLIQUE_PIN, 3)
        assert (plan.payload_order, plan.total_order) == (3, 6)

    def test_rejects_pin_size_with_zero_fill(self):
        with pytest.raises(CodecError):
            ExtensionPlan.build(3, Padding.ZERO_FILL, 2)

    def test_rejects_missing_pin_size(self):
        with pytest.raises(CodecError):
            ExtensionPlan.build(3, Padding.CLIQUE_PIN, 0)

    def test_rejects_inconsistent_fields(self):
        with pytest.raises(CodecError):
            ExtensionPlan(3, 3, 4, Padding.ZERO_FILL, 0)


def test_padding_bits():
    assert padding_bit(ExtensionPlan.build(7), 8) == 0
    pin = ExtensionPlan.build(3, Padding.CLIQUE_PIN, 3)
    assert padding_bit(pin, pos_of(6, 5, 6)) == 1
    assert padding_bit(pin, pos_of(5, 2, 6)) == 0


def test_padding_bit_rejects_payload_region():
    with pytest.raises(CodecError):
        padding_bit(ExtensionPlan.build(7), 6)


class TestBitsToGraph:
    def test_path(self):
        g = bits_to_graph(bits("110"), ExtensionPlan.build(3))
        assert g.order == 3
        assert g.edges == {(2, 1), (3, 1)}

    def test_empty(self):
        g = bits_to_graph(bits("000000"), ExtensionPlan.build(6))
        assert g.order == 4 and not g.edges

    def test_clique_pin(self):
        g = bits_to_graph(bits("1"), ExtensionPlan.build(1, Padding.CLIQUE_PIN, 2))
        assert g.order == 4
        assert g.edges == {(2, 1), (4, 3)}

    def test_length_mismatch(self):
        with pytest.raises(CodecError):
            bits_to_graph(bits("11"), ExtensionPlan.build(3))


class TestGraphToBits:
    def test_path(self, path_213):
        assert str(graph_to_bits(path_213, 3)) == "110"

    def test_empty(self):
        assert str(graph_to_bits(Graph.empty(4), 6)) == "000000"

    def test_complete(self):
        assert str(graph_to_bits(Graph.complete(3), 3)) == "111"

    def test_capacity(self):
        with pytest.raises(CodecError):
            graph_to_bits(Graph.empty(3), 4)


class TestSerializeSymbols:
    def test_path(self, path_213):
        assert serialize_symbols(path_213, (0, 1, 1)) == (1, 1, 0, 0, 1, 1)

    def test_no_edge(self):
        assert serialize_symbols(Graph.empty(2), (0, 0)) == (0, 0, 0)

    def test_triangle(self):
        assert serialize_symbols(Graph.complete(3), (0, 1, 2)) == (1, 1, 1, 0, 1, 2)

    def test_length_mismatch(self):
        with pytest.raises(CodecError):
            serialize_symbols(Graph.complete(3), (0, 1))


class TestBitString:
    def test_leading_zeros_significant(self):
        assert bits("0011") != bits("11")

    def test_bytes_msb_first(self):
        assert bits("110").to_bytes() == b"\xc0"
        assert bits("000000001").to_bytes() == b"\x00\x80"

    def test_from_bytes_rejects_spare_bits(self):
        with pytest.raises(CodecError):
            BitString.from_bytes(b"\xc1", 3)

    @given(st.lists(st.integers(0, 1), min_size=0, max_size=200))
    def test_bytes_roundtrip(self, raw):
        b = BitString(tuple(raw))
        assert BitString.from_bytes(b.to_bytes(), b.length) == b

    def test_from_int(self):
        assert str(BitString.from_int(6, 3)) == "110"
        assert str(BitString.from_int(6, 5)) == "00110"
        with pytest.raises(CodecError):
            BitString.from_int(8, 3)


def test_roundtrip_random_payloads():
    rnd = random.Random(7)
    for _ in range(1000):
        l = rnd.randint(1, 2000)
        b = BitString(tuple(rnd.getrandbits(1) for _ in range(l)))
        mode = rnd.choice(list(Padding))
        plan = ExtensionPlan.build(l, mode, rnd.randint(1, 4) if mode is Padding.CLIQUE_PIN else 0)
        assert graph_to_bits(bits_to_graph(b, plan), l) == b


@settings(max_examples=200)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=60), st.sampled_from(list(Padding)), st.integers(1, 5))
def test_padding_deterministic(raw, mode, r):
    b = BitString(tuple(raw))
    pin = r if mode is Padding.CLIQUE_PIN else 0
    first = bits_to_graph(b, ExtensionPlan.build(b.length, mode, pin))
    second = bits_to_graph(BitString(tuple(raw)), ExtensionPlan.build(len(raw), mode, pin))
    assert first == second


@pytest.mark.parametrize("l", range(1, 11))
@pytest.mark.parametrize("r", range(1, 5))
def test_clique_pin_block(l, r):
    plan = ExtensionPlan.build(l, Padding.CLIQUE_PIN, r)
    m = plan.total_order
    pinned = set(range(m - r + 1, m + 1))
    for value in range(1 << l):
        g = bits_to_graph(BitString.from_int(value, l), plan)
        for i, j in ((i, j) for i in pinned for j in pinned if i > j):
            assert g.has_edge(i, j)
        for i, j in g.edges:
            assert (i in pinned) == (j in pinned)
