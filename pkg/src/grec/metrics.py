"""Codelength accounting for the urn model.

The compressed size of a graph decomposes as the information content of
one endpoint sequence under the urn, minus the log of the number of
sequences that describe the same graph.  Everything here is measured in
bits; exact rational counterparts are provided for small-scale checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from .edges import Edge, canonical_edge
from .errors import BoundsError

_LN2 = math.log(2.0)


def log2_rising(x: int, k: int) -> float:
    """log2 of the ascending factorial x * (x+1) * ... * (x+k-1)."""
    if k < 0 or x < 1:
        raise BoundsError(f"need x >= 1, k >= 0; got x={x}, k={k}")
    if k == 0:
        return 0.0
    return (math.lgamma(x + k) - math.lgamma(x)) / _LN2


def log2_factorial(k: int) -> float:
    if k < 0:
        raise BoundsError(f"need k >= 0, got {k}")
    return math.lgamma(k + 1) / _LN2


def endpoint_degrees(edges: Iterable[Edge]) -> Dict[int, int]:
    """Endpoint-slot counts per vertex; a loop counts once per slot."""
    deg: Dict[int, int] = {}
    for e in edges:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    return deg


def sequence_nll(degrees: Dict[int, int], n: int, beta: int = 1) -> float:
    """Bits to code one endpoint sequence realizing the given degrees."""
    k = sum(degrees.values())
    terms = [log2_rising(beta, d) for d in degrees.values()]
    return log2_rising(n * beta, k) - math.fsum(terms)


def _within_edge_orderings_log2(e: Edge) -> float:
    # log2 of the number of distinct orderings of the edge's endpoints
    mult: Dict[int, int] = {}
    for v in e:
        mult[v] = mult.get(v, 0) + 1
    out = log2_factorial(len(e))
    for c in mult.values():
        out -= log2_factorial(c)
    return out


def class_log_size(
    counts: Dict[Edge, int], directed: bool = False
) -> float:
    """log2 of the number of endpoint sequences mapping to this graph."""
    m = sum(counts.values())
    bits = log2_factorial(m)
    terms: List[float] = []
    for e, c in counts.items():
        terms.append(-log2_factorial(c))
        if not directed:
            terms.append(c * _within_edge_orderings_log2(e))
    return bits + math.fsum(terms)


@dataclass
class NllReport:
    n: int
    m: int
    beta: int
    directed: bool
    sequence_bits: float
    class_bits: float
    graph_bits: float

    @property
    def bits_per_edge(self) -> float:
        return self.graph_bits / self.m if self.m else 0.0


def graph_nll(
    edges: Iterable[Iterable[int]],
    n: int,
    beta: int = 1,
    directed: bool = False,
) -> NllReport:
    """Negative log-likelihood of a graph under the urn model, in bits."""
    counts: Dict[Edge, int] = {}
    for e in edges:
        ce = canonical_edge(e, directed)
        counts[ce] = counts.get(ce, 0) + 1
    deg = endpoint_degrees(counts_expand(counts))
    for v in deg:
        if not (1 <= v <= n):
            raise BoundsError(f"vertex {v} outside [1, {n}]")
    m = sum(counts.values())
    seq = sequence_nll(deg, n, beta)
    cls = class_log_size(counts, directed)
    return NllReport(
        n=n, m=m, beta=beta, directed=directed,
        sequence_bits=seq, class_bits=cls, graph_bits=seq - cls,
    )


def counts_expand(counts: Dict[Edge, int]) -> Iterable[Edge]:
    for e, c in counts.items():
        for _ in range(c):
            yield e


# -- exact rational counterparts, for small cases only --

def rising_exact(x: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= x + i
    return out


def sequence_prob_exact(
    degrees: Dict[int, int], n: int, beta: int = 1
) -> Fraction:
    k = sum(degrees.values())
    num = 1
    for d in degrees.values():
        num *= rising_exact(beta, d)
    return Fraction(num, rising_exact(n * beta, k))


def class_size_exact(counts: Dict[Edge, int], directed: bool = False) -> int:
    m = sum(counts.values())
    size = math.factorial(m)
    for e, c in counts.items():
        size //= math.factorial(c)
        if not directed:
            mult: Dict[int, int] = {}
            for v in e:
                mult[v] = mult.get(v, 0) + 1
            per = math.factorial(len(e))
            for cc in mult.values():
                per //= math.factorial(cc)
            size *= per ** c
    return size


def graph_prob_exact(
    edges: Iterable[Iterable[int]],
    n: int,
    beta: int = 1,
    directed: bool = False,
) -> Fraction:
    counts: Dict[Edge, int] = {}
    for e in edges:
        ce = canonical_edge(e, directed)
        counts[ce] = counts.get(ce, 0) + 1
    deg = endpoint_degrees(counts_expand(counts))
    return sequence_prob_exact(deg, n, beta) * class_size_exact(
        counts, directed
    )


def sequence_prob_walk(
    seq: List[int], n: int, beta: int = 1
) -> Fraction:
    """Probability of a sequence as a product of urn conditionals."""
    deg: Dict[int, int] = {}
    p = Fraction(1)
    for i, v in enumerate(seq):
        if not (1 <= v <= n):
            raise BoundsError(f"vertex {v} outside [1, {n}]")
        p *= Fraction(deg.get(v, 0) + beta, n * beta + i)
        deg[v] = deg.get(v, 0) + 1
    return p


def check_vpi(
    seq: List[int], n: int, beta: int = 1, trials: int = 20
) -> bool:
    """Probability must not change when the sequence is reordered."""
    import random as _random

    base = sequence_prob_walk(seq, n, beta)
    rng = _random.Random(len(seq) * 2654435761 % (1 << 32))
    exact = len(seq) <= 20
    for _ in range(trials):
        perm = list(seq)
        rng.shuffle(perm)
        p = sequence_prob_walk(perm, n, beta)
        if exact:
            if p != base:
                return False
        else:
            # log-domain compare; the raw fractions can underflow float
            d = (math.log2(p.numerator) - math.log2(p.denominator)
                 - math.log2(base.numerator) + math.log2(base.denominator))
            if abs(d) >= 1e-9:
                return False
    return True


def relabeled_nll_gap(
    edges: List[Tuple[int, ...]],
    n: int,
    perm: Dict[int, int],
    beta: int = 1,
    directed: bool = False,
) -> float:
    """NLL difference under a vertex relabeling (zero for a valid model)."""
    base = graph_nll(edges, n, beta, directed).graph_bits
    moved = [tuple(perm[v] for v in e) for e in edges]
    return graph_nll(moved, n, beta, directed).graph_bits - base
