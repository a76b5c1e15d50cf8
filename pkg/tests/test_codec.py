import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grec import ans, codec, metrics
from grec.codec import (
    GraphSpec,
    decode_graph,
    decode_sequence,
    decode_stream,
    encode_graph,
    encode_sequence,
    pack_header,
    payload_bits,
    unpack_header,
)
from grec.errors import BoundsError, CorruptStreamError, IntegrityError
from grec.graph_io import graphs_equal

from conftest import random_multigraph


def test_header_roundtrip():
    for spec in (
        GraphSpec(n=5, m=3, arity=2, beta=1, directed=False),
        GraphSpec(n=1, m=0, arity=2, beta=7, directed=True),
        GraphSpec(n=10, m=4, arity=3, beta=2, directed=False,
                  sequence=True),
    ):
        assert unpack_header(pack_header(spec)) == spec


def test_header_rejects_garbage():
    good = pack_header(GraphSpec(n=5, m=3, arity=2, beta=1, directed=False))
    with pytest.raises(CorruptStreamError):
        unpack_header(good[:10])
    with pytest.raises(CorruptStreamError):
        unpack_header(b"NOPE" + good[4:])
    with pytest.raises(CorruptStreamError):
        unpack_header(bytes([good[0], good[1], good[2], good[3], 99])
                      + good[5:])
    # hypergraph flag must agree with the arity byte
    bad = bytearray(good)
    bad[5] |= codec.FLAG_HYPERGRAPH
    with pytest.raises(CorruptStreamError):
        unpack_header(bytes(bad))


def test_empty_graph():
    blob = encode_graph([], n=4)
    assert len(blob) == codec.HEADER_LEN
    edges, spec = decode_graph(blob)
    assert edges == [] and spec.m == 0
    with pytest.raises(CorruptStreamError):
        decode_graph(blob + b"\x00")


def test_single_edge_and_loop():
    for edges in ([(1, 2)], [(1, 1)], [(2, 1), (1, 2)]):
        blob = encode_graph(edges, n=2)
        dec, _ = decode_graph(blob)
        assert graphs_equal(edges, dec)


def test_directed_preserves_orientation():
    edges = [(2, 1), (1, 2), (2, 1)]
    dec, _ = decode_graph(encode_graph(edges, n=2, directed=True))
    assert sorted(dec) == [(1, 2), (2, 1), (2, 1)]


def test_hyperedges_roundtrip(rng):
    edges = random_multigraph(rng, n=12, m=40, arity=3)
    dec, spec = decode_graph(encode_graph(edges, n=12))
    assert spec.arity == 3
    assert graphs_equal(edges, dec)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_roundtrip_random_multigraphs(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 50)
    m = rng.randint(0, 60)
    directed = rng.random() < 0.5
    beta = rng.choice([1, 1, 1, 2, 5])
    edges = random_multigraph(rng, n, m)
    blob = encode_graph(edges, n, beta=beta, directed=directed)
    dec, spec = decode_graph(blob)
    assert graphs_equal(edges, dec, directed)
    assert (spec.n, spec.m, spec.beta, spec.directed) == (
        n, m, beta, directed
    )


def test_stream_length_matches_nll(rng):
    # net payload is the graph NLL up to the flushed head
    for directed in (False, True):
        edges = random_multigraph(rng, n=40, m=300)
        blob = encode_graph(edges, n=40, directed=directed)
        nll = metrics.graph_nll(edges, 40, directed=directed).graph_bits
        bits = payload_bits(blob)
        assert nll - 1 < bits <= nll + 129


def test_sequence_codec_preserves_order(rng):
    edges = [(2, 1), (1, 2), (3, 1)]
    blob = encode_sequence(edges, n=3)
    dec, spec = decode_sequence(blob)
    assert dec == edges
    assert spec.sequence


def test_sequence_codec_length(rng):
    edges = random_multigraph(rng, n=30, m=200)
    blob = encode_sequence(edges, n=30)
    deg = metrics.endpoint_degrees(edges)
    nll = metrics.sequence_nll(deg, 30)
    assert nll - 1 < payload_bits(blob) <= nll + 129


def test_decode_stream_dispatch(rng):
    edges = [(1, 2), (2, 3)]
    g = encode_graph(edges, n=3)
    s = encode_sequence(edges, n=3)
    assert graphs_equal(decode_stream(g)[0], edges)
    assert decode_stream(s)[0] == edges
    with pytest.raises(CorruptStreamError):
        decode_graph(s)
    with pytest.raises(CorruptStreamError):
        decode_sequence(g)


def test_tampering_is_detected(rng):
    edges = random_multigraph(rng, n=20, m=100)
    blob = bytearray(encode_graph(edges, n=20))
    pos = rng.randrange(codec.HEADER_LEN, len(blob))
    blob[pos] ^= 0x40
    try:
        dec, _ = decode_graph(bytes(blob))
    except (IntegrityError, CorruptStreamError, BoundsError):
        return
    assert not graphs_equal(edges, dec)


def test_truncation_is_detected(rng):
    edges = random_multigraph(rng, n=20, m=100)
    blob = encode_graph(edges, n=20)
    with pytest.raises((IntegrityError, CorruptStreamError, BoundsError)):
        decode_graph(blob[:-5])


def test_input_validation():
    with pytest.raises(BoundsError):
        encode_graph([(1, 2), (1, 2, 3)], n=3)  # ragged arity
    with pytest.raises(BoundsError):
        encode_graph([(0, 2)], n=3)
    with pytest.raises(BoundsError):
        encode_graph([(1, 4)], n=3)
    with pytest.raises(BoundsError):
        encode_graph([(1, 2)], n=3, beta=0)
    with pytest.raises(BoundsError):
        # coding totals must fit in 32 bits
        encode_graph([(1, 2)], n=(1 << 32), beta=2)


def test_decoder_ends_at_initial_state(rng):
    edges = random_multigraph(rng, n=15, m=80)
    blob = encode_graph(edges, n=15)
    state = ans.restore(blob[codec.HEADER_LEN:])
    assert state != ans.init()  # nonempty graph carries payload
    decode_graph(blob)  # raises IntegrityError if it does not drain
