"""Lossless graph compression with bits-back coding under an urn model."""

from .codec import (
    GraphSpec,
    decode_graph,
    decode_sequence,
    decode_stream,
    encode_graph,
    encode_sequence,
    payload_bits,
)
from .errors import (
    BoundsError,
    CorruptStreamError,
    GraphFormatError,
    GrecError,
    IntegrityError,
)
from .metrics import NllReport, graph_nll

__version__ = "0.1.0"

__all__ = [
    "GraphSpec",
    "NllReport",
    "encode_graph",
    "decode_graph",
    "encode_sequence",
    "decode_sequence",
    "decode_stream",
    "payload_bits",
    "graph_nll",
    "GrecError",
    "BoundsError",
    "CorruptStreamError",
    "GraphFormatError",
    "IntegrityError",
]
