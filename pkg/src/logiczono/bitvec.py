"""Bit-packed binary vectors and matrices with word-wide gate kernels.

Bits are packed LSB-first into 64-bit words: bit i of a vector lives in
word i // 64 at position i % 64, so an elementwise gate over n bits is
ceil(n / 64) machine instructions. Padding bits past the declared length
are kept at zero; every constructor and gate maintains that invariant.

Textual form: index 0 is the leftmost character, e.g. "1010" has bit 0
set, bit 1 clear.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError

WORD_BITS = 64
_ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)


class Gate(Enum):
    XOR = "xor"
    AND = "and"
    OR = "or"
    XNOR = "xnor"
    NAND = "nand"
    NOR = "nor"


def n_words(nbits: int) -> int:
    return (nbits + WORD_BITS - 1) // WORD_BITS


def pad_mask(nbits: int) -> np.ndarray:
    """Per-word mask with ones at bit positions < nbits and zeros in the padding."""
    nw = n_words(nbits)
    mask = np.full(nw, _ALL_ONES, dtype=np.uint64)
    tail = nbits % WORD_BITS
    if nw and tail:
        mask[-1] = (np.uint64(1) << np.uint64(tail)) - np.uint64(1)
    return mask


def pack_bool_rows(rows: np.ndarray) -> np.ndarray:
    """Pack a (k, nbits) boolean array into (k, n_words(nbits)) uint64 rows."""
    rows = np.ascontiguousarray(rows, dtype=bool)
    k, nbits = rows.shape
    if nbits == 0:
        return np.zeros((k, 0), dtype=np.uint64)
    shifts = (np.arange(nbits, dtype=np.uint64) % np.uint64(WORD_BITS))
    contrib = rows.astype(np.uint64) << shifts
    boundaries = np.arange(0, nbits, WORD_BITS)
    return np.bitwise_or.reduceat(contrib, boundaries, axis=1)


def unpack_rows(words: np.ndarray, nbits: int) -> np.ndarray:
    """Expand (k, nw) packed rows back into a (k, nbits) boolean array."""
    k = words.shape[0]
    if nbits == 0:
        return np.zeros((k, 0), dtype=bool)
    idx = np.arange(nbits)
    w = words[:, idx // WORD_BITS]
    shifts = (idx % WORD_BITS).astype(np.uint64)
    return ((w >> shifts) & np.uint64(1)).astype(bool)


class BitVector:
    """Immutable fixed-length vector over {0, 1}.

    Equality and hashing are bitwise over the first ``len`` positions.
    """

    __slots__ = ("n", "words")

    def __init__(self, n: int, words: np.ndarray):
        if n < 0:
            raise ValueError("bit length must be non-negative")
        words = np.asarray(words, dtype=np.uint64)
        if words.shape != (n_words(n),):
            raise ValueError(f"expected {n_words(n)} words for {n} bits, got shape {words.shape}")
        words = words & pad_mask(n)
        words.setflags(write=False)
        self.n = n
        self.words = words

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, np.zeros(n_words(n), dtype=np.uint64))

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, pad_mask(n))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        arr = np.asarray(list(bits), dtype=bool)
        return cls(arr.size, pack_bool_rows(arr[None, :])[0])

    @classmethod
    def from01(cls, text: str) -> "BitVector":
        if any(ch not in "01" for ch in text):
            raise ValueError(f"bit string may contain only '0'/'1': {text!r}")
        return cls.from_bits(1 if ch == "1" else 0 for ch in text)

    def to01(self) -> str:
        return "".join("1" if b else "0" for b in self.bits())

    def bits(self) -> np.ndarray:
        return unpack_rows(self.words[None, :], self.n)[0]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return int((self.words[i // WORD_BITS] >> np.uint64(i % WORD_BITS)) & np.uint64(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.n, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector('{self.to01()}')"


def elementwise_gate(gate: Gate, a: BitVector, b: BitVector) -> BitVector:
    """Apply one of the six binary gates position by position."""
    if a.n != b.n:
        raise DimensionError(f"bit length mismatch: {a.n} != {b.n}")
    aw, bw = a.words, b.words
    if gate is Gate.XOR:
        out = aw ^ bw
    elif gate is Gate.AND:
        out = aw & bw
    elif gate is Gate.OR:
        out = aw | bw
    elif gate is Gate.XNOR:
        out = ~(aw ^ bw) & pad_mask(a.n)
    elif gate is Gate.NAND:
        out = ~(aw & bw) & pad_mask(a.n)
    elif gate is Gate.NOR:
        out = ~(aw | bw) & pad_mask(a.n)
    else:
        raise ValueError(f"unknown gate {gate!r}")
    return BitVector(a.n, out)


def complement(a: BitVector) -> BitVector:
    """Flip every bit; padding stays zero."""
    return BitVector(a.n, ~a.words & pad_mask(a.n))


def concat(a: BitVector, b: BitVector) -> BitVector:
    """Concatenate two vectors: result index i < a.n maps to a[i], the rest to b."""
    bits = np.concatenate([a.bits(), b.bits()])
    return BitVector(bits.size, pack_bool_rows(bits[None, :])[0])


class BitMatrix:
    """Matrix over {0, 1} stored column-major: one packed payload per column.

    ``data`` has shape (cols, n_words(rows)); row index is the bit index
    inside a column payload. A 0-column matrix is valid.
    """

    __slots__ = ("rows", "data")

    def __init__(self, rows: int, data: np.ndarray):
        if rows < 0:
            raise ValueError("row count must be non-negative")
        data = np.asarray(data, dtype=np.uint64)
        if data.ndim != 2 or data.shape[1] != n_words(rows):
            raise ValueError(f"expected (cols, {n_words(rows)}) payload for {rows} rows, got {data.shape}")
        data = data & pad_mask(rows)[None, :]
        data.setflags(write=False)
        self.rows = rows
        self.data = data

    @property
    def cols(self) -> int:
        return self.data.shape[0]

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, np.zeros((cols, n_words(rows)), dtype=np.uint64))

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls.from_bool(np.eye(k, dtype=bool))

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector], rows: int | None = None) -> "BitMatrix":
        if rows is None:
            if not columns:
                raise ValueError("row count required for a matrix with no columns")
            rows = columns[0].n
        for c in columns:
            if c.n != rows:
                raise DimensionError(f"column length {c.n} != {rows}")
        if not columns:
            return cls.zeros(rows, 0)
        return cls(rows, np.stack([c.words for c in columns]))

    @classmethod
    def from_bool(cls, arr: np.ndarray) -> "BitMatrix":
        """Build from a (rows, cols) boolean array."""
        arr = np.asarray(arr, dtype=bool)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        rows, _ = arr.shape
        return cls(rows, pack_bool_rows(np.ascontiguousarray(arr.T)))

    def to_bool(self) -> np.ndarray:
        return unpack_rows(self.data, self.rows).T

    def column(self, j: int) -> BitVector:
        return BitVector(self.rows, self.data[j])

    def columns(self) -> list[BitVector]:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.rows == other.rows and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.rows, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def hconcat(*mats: BitMatrix) -> BitMatrix:
    """Concatenate matrices side by side (same row count)."""
    rows = mats[0].rows
    for m in mats[1:]:
        if m.rows != rows:
            raise DimensionError(f"row count mismatch: {m.rows} != {rows}")
    return BitMatrix(rows, np.concatenate([m.data for m in mats], axis=0))


def vstack(top: BitMatrix, bottom: BitMatrix) -> BitMatrix:
    """Stack matrices vertically (same column count)."""
    if top.cols != bottom.cols:
        raise DimensionError(f"column count mismatch: {top.cols} != {bottom.cols}")
    out = np.concatenate([top.to_bool(), bottom.to_bool()], axis=0)
    return BitMatrix.from_bool(out)


def blkdiag(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Block-diagonal composition [[a, 0], [0, b]]."""
    out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=bool)
    out[: a.rows, : a.cols] = a.to_bool()
    out[a.rows :, a.cols :] = b.to_bool()
    return BitMatrix.from_bool(out)


def embed_rows(m: BitMatrix, positions: Sequence[int], new_rows: int) -> BitMatrix:
    """Spread m's rows into a taller matrix: row k lands at positions[k], the rest are zero."""
    if len(positions) != m.rows:
        raise DimensionError(f"need {m.rows} positions, got {len(positions)}")
    out = np.zeros((new_rows, m.cols), dtype=bool)
    if m.rows:
        out[list(positions), :] = m.to_bool()
    return BitMatrix.from_bool(out)
