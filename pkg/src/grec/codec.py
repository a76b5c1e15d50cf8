"""Graph compression by bits-back sampling over an ANS stack.

The graph codec samples an edge order (and, for undirected graphs, an
endpoint order per edge) by *decoding* from the ANS state, then encodes
the resulting endpoint sequence under the urn model.  The decoder runs
the same steps backwards, returning the sampled bits to the stack, so
the net stream length is the sequence cost minus the log of the number
of sequences describing the graph.

A plain sequence codec (no bits-back) is included for comparison; it
codes the endpoint sequence exactly as given, preserving edge and
endpoint order.
"""

from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from . import ans
from .ans import MAX_TOTAL, SymbolRange
from .edges import Edge, EdgeMultiset, StaticEdgeMultiset, canonical_edge
from .errors import BoundsError, CorruptStreamError, IntegrityError
from .metrics import endpoint_degrees
from .polya import DegreeWeightTable, StaticDegreeWeightTable

MAGIC = b"GREC"
VERSION = 1
HEADER_LEN = 31

FLAG_DIRECTED = 0x01
FLAG_HYPERGRAPH = 0x02
FLAG_SEQUENCE = 0x04    # plain sequence codec, no bits-back

_HEADER = struct.Struct("<4sBBBQQQ")


@dataclass(frozen=True)
class GraphSpec:
    n: int
    m: int
    arity: int
    beta: int
    directed: bool
    sequence: bool = False

    def validate(self) -> None:
        if not (1 <= self.n):
            raise BoundsError(f"need n >= 1, got {self.n}")
        if not (0 <= self.m <= MAX_TOTAL):
            raise BoundsError(f"need 0 <= m <= 2^32, got {self.m}")
        if not (2 <= self.arity <= 255):
            raise BoundsError(f"need 2 <= arity <= 255, got {self.arity}")
        if self.beta < 1:
            raise BoundsError(f"need integer beta >= 1, got {self.beta}")
        # every coding total must fit the coder's 32-bit budget
        if self.n * self.beta + self.arity * self.m > MAX_TOTAL:
            raise BoundsError(
                f"n*beta + arity*m = "
                f"{self.n * self.beta + self.arity * self.m} exceeds 2^32"
            )


def pack_header(spec: GraphSpec) -> bytes:
    spec.validate()
    flags = 0
    if spec.directed:
        flags |= FLAG_DIRECTED
    if spec.arity > 2:
        flags |= FLAG_HYPERGRAPH
    if spec.sequence:
        flags |= FLAG_SEQUENCE
    return _HEADER.pack(
        MAGIC, VERSION, flags, spec.arity, spec.beta, spec.n, spec.m
    )


def unpack_header(blob: bytes) -> GraphSpec:
    if len(blob) < HEADER_LEN:
        raise CorruptStreamError(f"stream too short ({len(blob)} bytes)")
    magic, version, flags, arity, beta, n, m = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise CorruptStreamError(f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptStreamError(f"unsupported version {version}")
    if flags & ~(FLAG_DIRECTED | FLAG_HYPERGRAPH | FLAG_SEQUENCE):
        raise CorruptStreamError(f"unknown flags {flags:#x}")
    spec = GraphSpec(
        n=n, m=m, arity=arity, beta=beta,
        directed=bool(flags & FLAG_DIRECTED),
        sequence=bool(flags & FLAG_SEQUENCE),
    )
    if (arity > 2) != bool(flags & FLAG_HYPERGRAPH):
        raise CorruptStreamError("arity and hypergraph flag disagree")
    try:
        spec.validate()
    except BoundsError as exc:
        raise CorruptStreamError(str(exc)) from exc
    return spec


def payload_bits(blob: bytes) -> int:
    """Size of the coded payload in bits, excluding the fixed header."""
    if len(blob) < HEADER_LEN:
        raise CorruptStreamError(f"stream too short ({len(blob)} bytes)")
    return 8 * (len(blob) - HEADER_LEN)


def _checked_edges(
    edges: Iterable[Sequence[int]], n: int, directed: bool
) -> Tuple[List[Edge], int]:
    canon: List[Edge] = []
    arity = 0
    for e in edges:
        if len(e) == 2 and not directed:
            u, v = e
            ce = (u, v) if u <= v else (v, u)
        else:
            ce = canonical_edge(e, directed)
        if arity == 0:
            arity = len(ce)
        elif len(ce) != arity:
            raise BoundsError(
                f"mixed arities {arity} and {len(ce)} in one graph"
            )
        if min(ce) < 1 or max(ce) > n:
            raise BoundsError(f"edge {tuple(e)} outside vertex range [1, {n}]")
        canon.append(ce)
    return canon, arity or 2


_BIT = (SymbolRange(1, 0, 2), SymbolRange(1, 1, 2))

# vertex ids stay below 2^33, so a pair packs into one int and the
# packed order matches tuple order
_PACK = 33
_PACK_MASK = (1 << _PACK) - 1


def _locate_bit(slot: int):
    return slot, _BIT[slot]


def _sample_order(state: ans.AnsState, e: Edge) -> List[int]:
    """Sample (by ANS decode) a uniformly random ordering of the edge."""
    items: List[List[int]] = []     # run-length over the sorted tuple
    for v in e:
        if items and items[-1][0] == v:
            items[-1][1] += 1
        else:
            items.append([v, 1])
    p: List[int] = []
    remaining = len(e)

    def locate(slot: int):
        acc = 0
        for i, (v, c) in enumerate(items):
            if slot < acc + c:
                return i, SymbolRange(c, acc, remaining)
            acc += c
        raise IntegrityError("pick slot out of range")

    while remaining:
        i = ans.decode(state, remaining, locate)
        p.append(items[i][0])
        items[i][1] -= 1
        if items[i][1] == 0:
            del items[i]
        remaining -= 1
    return p


def _return_order(state: ans.AnsState, p: Sequence[int]) -> None:
    """Re-encode the ordering picks, rebuilding the per-edge multiset."""
    counts: Counter = Counter()
    for t in range(len(p) - 1, -1, -1):
        v = p[t]
        counts[v] += 1
        rank = sum(c for u, c in counts.items() if u < v)
        ans.encode(state, SymbolRange(counts[v], rank, len(p) - t))


def encode_graph(
    edges: Iterable[Sequence[int]],
    n: int,
    beta: int = 1,
    directed: bool = False,
) -> bytes:
    """Compress an edge list to a self-describing byte stream."""
    canon, arity = _checked_edges(edges, n, directed)
    spec = GraphSpec(n=n, m=len(canon), arity=arity, beta=beta,
                     directed=directed)
    header = pack_header(spec)
    if spec.m == 0:
        return header
    pack = arity == 2
    if pack:
        # pairs become single ints; lighter tree keys, same ordering
        counts = Counter((u << _PACK) | v for u, v in canon)
    else:
        counts = Counter(canon)
    ms = StaticEdgeMultiset(counts)
    table = StaticDegreeWeightTable(n, endpoint_degrees(canon), beta)
    del canon, counts
    state = ans.init()
    for _ in range(spec.m):
        e = ans.decode(state, ms.size, ms.pop_slot)
        if pack:
            u = e >> _PACK
            v = e & _PACK_MASK
            if directed or u == v:
                p = (u, v)
            elif ans.decode(state, 2, _locate_bit):
                # a single bit orders a plain pair; loops need nothing
                p = (v, u)
            else:
                p = (u, v)
        elif directed:
            p = e
        else:
            p = _sample_order(state, e)
        # code p[t] against the degrees of everything after it, so the
        # decoder sees the same conditioning when it runs forward
        for v in p:
            ans.encode(state, table.remove_and_range(v))
    if table.degree_sum or ms.size:
        raise IntegrityError("encoder state not fully drained")
    return header + ans.flush(state)


def decode_graph(blob: bytes) -> Tuple[List[Edge], GraphSpec]:
    """Invert `encode_graph`; raises on tampered or truncated streams."""
    spec = unpack_header(blob)
    if spec.sequence:
        raise CorruptStreamError("stream was made by the sequence codec")
    if spec.m == 0:
        if len(blob) != HEADER_LEN:
            raise CorruptStreamError("trailing bytes after empty graph")
        return [], spec
    state = ans.restore(blob[HEADER_LEN:])
    table = DegreeWeightTable(spec.n, spec.beta)
    ms = EdgeMultiset()
    arity = spec.arity
    pack = arity == 2
    for _ in range(spec.m):
        if pack:
            v = ans.decode(state, table.total(), table.pull_slot)
            u = ans.decode(state, table.total(), table.pull_slot)
            if spec.directed:
                e = (u << _PACK) | v
            elif u > v:
                ans.encode(state, _BIT[1])
                e = (v << _PACK) | u
            else:
                if u != v:
                    ans.encode(state, _BIT[0])
                e = (u << _PACK) | v
        else:
            q = []
            for _ in range(arity):
                q.append(ans.decode(state, table.total(), table.pull_slot))
            q.reverse()
            if spec.directed:
                e = tuple(q)
            else:
                _return_order(state, q)
                e = tuple(sorted(q))
        ans.encode(state, ms.push_and_range(e))
    if state != ans.init():
        raise IntegrityError("decoder did not drain to the initial state")
    out: List[Edge] = []
    for e, c in ms.items():
        if pack:
            e = (e >> _PACK, e & _PACK_MASK)
        out.extend([e] * c)
    return out, spec


def encode_sequence(
    edges: Iterable[Sequence[int]],
    n: int,
    beta: int = 1,
    directed: bool = False,
) -> bytes:
    """Compress the endpoint sequence as given, without bits-back."""
    canon: List[Tuple[int, ...]] = [tuple(e) for e in edges]
    _, arity = _checked_edges(canon, n, directed)
    spec = GraphSpec(n=n, m=len(canon), arity=arity, beta=beta,
                     directed=directed, sequence=True)
    header = pack_header(spec)
    if spec.m == 0:
        return header
    seq = [v for e in canon for v in e]
    table = StaticDegreeWeightTable(n, endpoint_degrees(canon), beta)
    state = ans.init()
    for v in reversed(seq):
        ans.encode(state, table.remove_and_range(v))
    return header + ans.flush(state)


def decode_sequence(blob: bytes) -> Tuple[List[Tuple[int, ...]], GraphSpec]:
    spec = unpack_header(blob)
    if not spec.sequence:
        raise CorruptStreamError("stream was made by the graph codec")
    if spec.m == 0:
        if len(blob) != HEADER_LEN:
            raise CorruptStreamError("trailing bytes after empty graph")
        return [], spec
    state = ans.restore(blob[HEADER_LEN:])
    table = DegreeWeightTable(spec.n, spec.beta)
    seq: List[int] = []
    for _ in range(spec.arity * spec.m):
        v = ans.decode(state, table.total(), table.find_slot)
        table.add(v)
        seq.append(v)
    if state != ans.init():
        raise IntegrityError("decoder did not drain to the initial state")
    a = spec.arity
    edges = [tuple(seq[i:i + a]) for i in range(0, len(seq), a)]
    return edges, spec


def decode_stream(blob: bytes) -> Tuple[List[Tuple[int, ...]], GraphSpec]:
    """Dispatch on the header to whichever codec wrote the stream."""
    spec = unpack_header(blob)
    if spec.sequence:
        return decode_sequence(blob)
    return decode_graph(blob)
