"""Edge-list text format and id remapping.

One edge per line, whitespace-separated integer vertex ids.  Blank lines
and lines starting with ``#`` are skipped.  The coder wants dense ids in
``[1, n]``; `compact_ids` remaps arbitrary ids and returns the mapping
so a decompressed graph can be restored to its original labels.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, Iterable, List, Sequence, Tuple

from .edges import canonical_edge
from .errors import GraphFormatError


def parse_edge_list(lines: Iterable[str]) -> List[Tuple[int, ...]]:
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            edge = tuple(int(p) for p in parts)
        except ValueError:
            raise GraphFormatError(
                f"line {lineno}: non-integer vertex in {line!r}"
            ) from None
        if len(edge) < 2:
            raise GraphFormatError(
                f"line {lineno}: edge needs at least 2 endpoints"
            )
        edges.append(edge)
    return edges


def write_edge_list(edges: Iterable[Sequence[int]]) -> str:
    return "".join(" ".join(str(v) for v in e) + "\n" for e in edges)


def max_vertex(edges: Iterable[Sequence[int]]) -> int:
    out = 0
    for e in edges:
        for v in e:
            if v > out:
                out = v
    return out


def compact_ids(
    edges: Iterable[Sequence[int]],
) -> Tuple[List[Tuple[int, ...]], Dict[int, int]]:
    """Relabel vertices to 1..n in order of first appearance.

    Returns the relabeled edges and the dense-id -> original-id map.
    """
    fwd: Dict[int, int] = {}
    out = []
    for e in edges:
        ne = []
        for v in e:
            d = fwd.get(v)
            if d is None:
                d = len(fwd) + 1
                fwd[v] = d
            ne.append(d)
        out.append(tuple(ne))
    back = {d: v for v, d in fwd.items()}
    return out, back


def apply_ids(
    edges: Iterable[Sequence[int]], back: Dict[int, int]
) -> List[Tuple[int, ...]]:
    try:
        return [tuple(back[v] for v in e) for e in edges]
    except KeyError as exc:
        raise GraphFormatError(f"id map lacks vertex {exc.args[0]}") from None


# sidecar id map: two columns, dense id then original id
def dump_id_map(back: Dict[int, int]) -> str:
    return "".join(f"{k} {v}\n" for k, v in sorted(back.items()))


def load_id_map(lines: Iterable[str]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"id map line {lineno}: want two columns")
        try:
            out[int(parts[0])] = int(parts[1])
        except ValueError:
            raise GraphFormatError(
                f"id map line {lineno}: non-integer id"
            ) from None
    return out


def graphs_equal(
    a: Iterable[Sequence[int]],
    b: Iterable[Sequence[int]],
    directed: bool = False,
) -> bool:
    """Equality as edge multisets, ignoring edge and endpoint order."""
    ca = Counter(canonical_edge(e, directed) for e in a)
    cb = Counter(canonical_edge(e, directed) for e in b)
    return ca == cb
