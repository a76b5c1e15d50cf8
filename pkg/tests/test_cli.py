import json

import pytest

from grec import cli, codec
from grec.graph_io import graphs_equal, parse_edge_list

SAMPLE = "1 2\n2 3\n2 1\n"


@pytest.fixture
def sample(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(SAMPLE)
    return p


def run(argv):
    return cli.main([str(a) for a in argv])


def test_compress_decompress_roundtrip(sample, tmp_path, capsys):
    out = tmp_path / "g.grec"
    back = tmp_path / "g.out.txt"
    assert run(["compress", sample, "-o", out]) == 0
    assert run(["decompress", out, "-o", back]) == 0
    got = parse_edge_list(back.read_text().splitlines())
    assert graphs_equal(got, parse_edge_list(SAMPLE.splitlines()))


def test_compress_reports_stats(sample, tmp_path, capsys):
    out = tmp_path / "g.grec"
    assert run(["compress", sample, "-o", out, "--json"]) == 0
    rep = json.loads(capsys.readouterr().err.strip())
    assert rep["n"] == 3 and rep["m"] == 3
    assert rep["payload_bits"] == codec.payload_bits(out.read_bytes())
    assert abs(rep["gap_percent"]) < 3000  # tiny graph, header dominates


def test_compress_to_stdout(sample, capsys, monkeypatch):
    # binary data goes to the output stream, diagnostics to stderr
    import io
    import sys

    buf = io.BytesIO()

    class FakeOut:
        buffer = buf

        @staticmethod
        def write(s):
            raise AssertionError("text on binary stdout")

    monkeypatch.setattr(sys, "stdout", FakeOut)
    assert run(["compress", sample]) == 0
    edges, spec = codec.decode_graph(buf.getvalue())
    assert spec.m == 3


def test_info_on_edge_list(sample, capsys):
    assert run(["info", sample, "--edge-list", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out.strip())
    for field in ("n", "m", "beta", "sequence_bits", "class_bits",
                  "graph_bits"):
        assert field in rep
    assert rep["sequence_bits"] > rep["graph_bits"]


def test_info_on_stream(sample, tmp_path, capsys):
    out = tmp_path / "g.grec"
    run(["compress", sample, "-o", out])
    capsys.readouterr()
    assert run(["info", out, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out.strip())
    assert rep["m"] == 3


def test_verify(sample, capsys):
    assert run(["verify", sample]) == 0
    assert "PASS" in capsys.readouterr().err


def test_sequence_mode(sample, tmp_path):
    out = tmp_path / "g.grec"
    back = tmp_path / "g.out.txt"
    assert run(["compress", sample, "-o", out, "--sequence"]) == 0
    assert run(["decompress", out, "-o", back]) == 0
    # the sequence codec keeps the original edge and endpoint order
    assert back.read_text() == SAMPLE


def test_compact_ids_with_sidecar(tmp_path):
    src = tmp_path / "sparse.txt"
    src.write_text("1000 2000\n2000 9999\n")
    out = tmp_path / "s.grec"
    back = tmp_path / "s.out.txt"
    assert run(["compress", src, "-o", out, "--compact-ids"]) == 0
    ids = tmp_path / "s.grec.ids"
    assert ids.exists()
    assert run(["decompress", out, "-o", back, "--id-map", ids]) == 0
    got = parse_edge_list(back.read_text().splitlines())
    assert graphs_equal(got, [(1000, 2000), (2000, 9999)])


def test_directed_and_beta_flags(tmp_path):
    src = tmp_path / "d.txt"
    src.write_text("2 1\n1 2\n")
    out = tmp_path / "d.grec"
    back = tmp_path / "d.out.txt"
    assert run(["compress", src, "-o", out, "--directed", "--beta", "2"]) == 0
    spec = codec.unpack_header(out.read_bytes())
    assert spec.directed and spec.beta == 2
    assert run(["decompress", out, "-o", back]) == 0
    got = parse_edge_list(back.read_text().splitlines())
    assert sorted(got) == [(1, 2), (2, 1)]


def test_errors_exit_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 x\n")
    assert run(["compress", bad, "-o", tmp_path / "o"]) == 1
    assert "error:" in capsys.readouterr().err
    assert run(["decompress", tmp_path / "missing.grec"]) == 1
    junk = tmp_path / "junk.grec"
    junk.write_bytes(b"not a stream")
    assert run(["info", junk]) == 1


def test_arity_mismatch_rejected(sample):
    assert run(["compress", sample, "-o", "/dev/null", "--arity", "3"]) == 1
