"""Command-line front end: compress, decompress, info, verify.

Data goes to the output stream (stdout unless -o is given), diagnostics
to stderr.  Exit code 0 means the operation fully succeeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from . import codec, graph_io, metrics
from .errors import GrecError


def _read_text(path: str) -> List[str]:
    if path == "-":
        return sys.stdin.read().splitlines(keepends=True)
    with open(path, "r") as fh:
        return fh.readlines()


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_bytes(path: Optional[str], data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_graph(args) -> Tuple[List[Tuple[int, ...]], int, Optional[dict]]:
    """Parse, optionally remap ids, settle n. Returns (edges, n, id map)."""
    edges = graph_io.parse_edge_list(_read_text(args.input))
    if args.arity is not None:
        for e in edges:
            if len(e) != args.arity:
                raise GrecError(
                    f"edge {e} has arity {len(e)}, expected {args.arity}"
                )
    back = None
    if args.compact_ids:
        edges, back = graph_io.compact_ids(edges)
    n = args.n if args.n is not None else graph_io.max_vertex(edges)
    return edges, n, back


def _report(edges, n: int, beta: int, directed: bool, blob: bytes) -> dict:
    rep = metrics.graph_nll(edges, n, beta, directed)
    bits = codec.payload_bits(blob)
    out = {
        "n": rep.n,
        "m": rep.m,
        "beta": rep.beta,
        "directed": rep.directed,
        "sequence_bits": rep.sequence_bits,
        "class_bits": rep.class_bits,
        "graph_bits": rep.graph_bits,
        "payload_bits": bits,
        "header_bits": 8 * codec.HEADER_LEN,
        "bits_per_edge": bits / rep.m if rep.m else 0.0,
        "gap_percent": (
            100.0 * (bits - rep.graph_bits) / rep.graph_bits
            if rep.graph_bits > 0 else 0.0
        ),
    }
    return out


def _emit(args, payload: dict, stream=None) -> None:
    stream = stream or sys.stderr
    if args.json:
        stream.write(json.dumps(payload) + "\n")
    else:
        for k, v in payload.items():
            if isinstance(v, float):
                stream.write(f"{k}: {v:.4f}\n")
            else:
                stream.write(f"{k}: {v}\n")


def cmd_compress(args) -> int:
    edges, n, back = _load_graph(args)
    if args.sequence:
        blob = codec.encode_sequence(edges, n, args.beta, args.directed)
    else:
        blob = codec.encode_graph(edges, n, args.beta, args.directed)
    _write_bytes(args.output, blob)
    if back is not None:
        sidecar = (args.output or "out") + ".ids"
        _write_text(sidecar, graph_io.dump_id_map(back))
        sys.stderr.write(f"id map written to {sidecar}\n")
    _emit(args, _report(edges, n, args.beta, args.directed, blob))
    return 0


def cmd_decompress(args) -> int:
    edges, spec = codec.decode_stream(_read_bytes(args.input))
    if args.id_map:
        back = graph_io.load_id_map(_read_text(args.id_map))
        edges = graph_io.apply_ids(edges, back)
    _write_text(args.output, graph_io.write_edge_list(edges))
    sys.stderr.write(f"decoded n={spec.n} m={spec.m}\n")
    return 0


def cmd_info(args) -> int:
    if args.edge_list:
        edges, n, _ = _load_graph(args)
        blob = codec.encode_graph(edges, n, args.beta, args.directed)
        _emit(args, _report(edges, n, args.beta, args.directed, blob),
              stream=sys.stdout)
        return 0
    blob = _read_bytes(args.input)
    spec = codec.unpack_header(blob)
    edges, _ = codec.decode_stream(blob)
    _emit(args, _report(edges, spec.n, spec.beta, spec.directed, blob),
          stream=sys.stdout)
    return 0


def cmd_verify(args) -> int:
    edges, n, _ = _load_graph(args)
    blob = codec.encode_graph(edges, n, args.beta, args.directed)
    decoded, _ = codec.decode_graph(blob)
    ok = graph_io.graphs_equal(edges, decoded, args.directed)
    sys.stderr.write("verify: " + ("PASS" if ok else "FAIL") + "\n")
    return 0 if ok else 1


def _add_graph_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--directed", action="store_true")
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--compact-ids", action="store_true")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grec",
                                 description="Graph compressor")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compress", help="edge list -> compressed stream")
    c.add_argument("input")
    c.add_argument("-o", "--output", default=None)
    c.add_argument("--sequence", action="store_true",
                   help="code the endpoint sequence as-is (no bits-back)")
    _add_graph_opts(c)
    c.set_defaults(func=cmd_compress)

    d = sub.add_parser("decompress", help="compressed stream -> edge list")
    d.add_argument("input")
    d.add_argument("-o", "--output", default=None)
    d.add_argument("--id-map", default=None,
                   help="sidecar file restoring original vertex ids")
    d.set_defaults(func=cmd_decompress)

    i = sub.add_parser("info", help="codelength report")
    i.add_argument("input")
    i.add_argument("--edge-list", action="store_true",
                   help="input is an edge list, not a compressed stream")
    _add_graph_opts(i)
    i.set_defaults(func=cmd_info)

    v = sub.add_parser("verify", help="roundtrip check on an edge list")
    v.add_argument("input")
    _add_graph_opts(v)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GrecError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
