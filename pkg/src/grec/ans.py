"""Stack (LIFO) entropy coder with exact integer frequencies.

The coder state is an integer head plus a stack of 32-bit words.  Encoding
a symbol whose frequency is ``f`` out of a per-step total ``M`` multiplies
the head by roughly ``M/f`` (adding about ``log2(M/f)`` bits); decoding
divides by the same amount and is the exact inverse, so a decode doubles
as a sampler driven by the bits already in the state.  All arithmetic is
integer-only and totals need not be powers of two.

The head lives in ``[2**64, 2**96)`` between operations.  The 64-bit
lower bound leaves enough headroom over the 32-bit word size that
renormalization never straddles the interval boundary for any total up to
``2**32`` (with a 32-bit lower bound the straddle is reachable in
practice and corrupts the stream).  A decode may drive the head below
``2**64`` once the word stack is empty; that is the expected state of a
fresh coder being used as a sampler, and the matching encode wins the
bits back exactly.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple, Tuple

from .errors import BoundsError, CorruptStreamError

WORD_BITS = 32
WORD_MASK = 0xFFFFFFFF
HEAD_LOW = 1 << 64          # lower bound of the normalized head interval
HEAD_SPAN = HEAD_LOW << WORD_BITS
MAX_TOTAL = 1 << 32

_HEAD_BYTES = 16
_WORD_BYTES = 4


class SymbolRange(NamedTuple):
    """Slot range of one symbol under an integer-weighted distribution.

    The symbol occupies slots ``[c_lo, c_lo + f)`` out of ``[0, M)``.
    """

    f: int
    c_lo: int
    M: int


class AnsState:
    """Mutable coder state: integer head plus a stack of 32-bit words."""

    __slots__ = ("head", "words")

    def __init__(self, head: int, words: list):
        self.head = head
        self.words = words

    def __eq__(self, other):
        return (
            isinstance(other, AnsState)
            and self.head == other.head
            and self.words == other.words
        )

    def __repr__(self):
        return f"AnsState(head={self.head:#x}, words={len(self.words)})"

    def copy(self) -> "AnsState":
        return AnsState(self.head, list(self.words))


def init() -> AnsState:
    """Fresh deterministic state: head at the interval floor, no words."""
    return AnsState(HEAD_LOW, [])


def _check_range(r: SymbolRange) -> None:
    f, c_lo, M = r
    if not (1 <= M <= MAX_TOTAL):
        raise BoundsError(f"total M={M} outside [1, 2^32]")
    if f < 1 or c_lo < 0 or c_lo + f > M:
        raise BoundsError(f"invalid symbol range {r}")


def encode(state: AnsState, r: SymbolRange) -> AnsState:
    """Push one symbol onto the state; exact inverse of `decode`."""
    _check_range(r)
    f, c_lo, M = r
    head = state.head
    if head >= f * (HEAD_SPAN // M):
        state.words.append(head & WORD_MASK)
        head >>= WORD_BITS
    state.head = (head // f) * M + head % f + c_lo
    return state


def decode(
    state: AnsState,
    M: int,
    locate: Callable[[int], Tuple[object, SymbolRange]],
) -> object:
    """Pop one symbol from the state under an M-slot distribution.

    ``locate(slot)`` must map each slot in ``[0, M)`` to ``(symbol,
    SymbolRange)`` where the range covers the slot.  Returns the symbol.
    """
    if not (1 <= M <= MAX_TOTAL):
        raise BoundsError(f"total M={M} outside [1, 2^32]")
    slot = state.head % M
    symbol, (f, c_lo, _M) = locate(slot)
    head = f * (state.head // M) + slot - c_lo
    words = state.words
    while head < HEAD_LOW and words:
        head = (head << WORD_BITS) | words.pop()
    state.head = head
    return symbol


def flush(state: AnsState) -> bytes:
    """Serialize: 16-byte little-endian head, then words bottom-to-top."""
    out = bytearray(state.head.to_bytes(_HEAD_BYTES, "little"))
    for w in state.words:
        out += w.to_bytes(_WORD_BYTES, "little")
    return bytes(out)


def restore(data: bytes) -> AnsState:
    """Exact inverse of `flush`."""
    if len(data) < _HEAD_BYTES or (len(data) - _HEAD_BYTES) % _WORD_BYTES:
        raise CorruptStreamError(f"bad state length {len(data)}")
    head = int.from_bytes(data[:_HEAD_BYTES], "little")
    if head >= HEAD_SPAN:
        raise CorruptStreamError("head out of range")
    words = [
        int.from_bytes(data[i : i + _WORD_BYTES], "little")
        for i in range(_HEAD_BYTES, len(data), _WORD_BYTES)
    ]
    return AnsState(head, words)


def information_bits(state: AnsState) -> float:
    """Information content of the state relative to `init`, in bits."""
    return WORD_BITS * len(state.words) + math.log2(state.head) - 64.0
