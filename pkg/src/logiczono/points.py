"""Ground-truth point-domain machinery.

Converts generator-domain sets to explicit point sets by sweeping all
factor assignments that satisfy the constraints, and provides brute-force
set operations for equivalence testing. The sweep cost is 2^p, so it is
guarded by an EnumerationBudget; sets whose monomials all have degree at
most one (plain logical zonotopes and anything promoted from one) are
affine subspaces over GF(2) and are counted or materialized through a
basis instead of a sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .bitvec import BitVector, Gate, n_words, pack_bool_rows, pad_mask
from .errors import BudgetExceeded, DimensionError
from .sets import (
    ConstrainedPolyLogicalZonotope,
    IdAllocator,
    LogicalZonotope,
    as_cplz,
)

DEFAULT_MAX_FACTORS = 24
DEFAULT_MAX_POINTS = 2_000_000

_CHUNK_BITS = 20  # sweep in chunks of 2^20 assignments to bound memory
_MERGE_ROWS = 1 << 22  # deduplicate once this many candidate rows accumulate


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    """Lexicographically sorted unique rows; much faster than unique(axis=0)."""
    if rows.shape[0] == 0 or rows.shape[1] == 0:
        return rows[:1] if rows.shape[1] == 0 and rows.shape[0] else rows.copy()
    if rows.shape[1] == 1:
        return np.unique(rows[:, 0])[:, None]
    as_void = np.ascontiguousarray(rows).view([("", rows.dtype)] * rows.shape[1]).ravel()
    return np.unique(as_void).view(rows.dtype).reshape(-1, rows.shape[1])


@dataclass(frozen=True)
class EnumerationBudget:
    """Caps on the enumeration sweep: factor count and emitted set size."""

    max_factors: int = DEFAULT_MAX_FACTORS
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        if self.max_factors <= 0 or self.max_points <= 0:
            raise ValueError("budget caps must be positive")
        if self.max_factors > 63:
            raise ValueError("at most 63 factors are supported per sweep")


DEFAULT_BUDGET = EnumerationBudget()


class PointSet:
    """Deduplicated collection of equal-length binary vectors.

    Rows are stored packed and lexicographically sorted, so equality is a
    plain array comparison and enumeration order never shows through.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: np.ndarray):
        rows = np.asarray(rows, dtype=np.uint64)
        if rows.ndim != 2 or rows.shape[1] != n_words(n):
            raise ValueError(f"expected (k, {n_words(n)}) rows for {n} bits, got {rows.shape}")
        rows = _unique_rows(rows & pad_mask(n)[None, :])
        rows.setflags(write=False)
        self.n = n
        self.rows = rows

    @classmethod
    def empty(cls, n: int) -> "PointSet":
        return cls(n, np.zeros((0, n_words(n)), dtype=np.uint64))

    @classmethod
    def from_bitvectors(cls, vectors: Iterable[BitVector], n: int | None = None) -> "PointSet":
        vectors = list(vectors)
        if n is None:
            if not vectors:
                raise ValueError("dimension required for an empty point set")
            n = vectors[0].n
        for v in vectors:
            if v.n != n:
                raise DimensionError(f"point length {v.n} != {n}")
        if not vectors:
            return cls.empty(n)
        return cls(n, np.stack([v.words for v in vectors]))

    @classmethod
    def from_bitstrings(cls, strings: Iterable[str], n: int | None = None) -> "PointSet":
        return cls.from_bitvectors([BitVector.from01(s) for s in strings], n)

    def __len__(self) -> int:
        return self.rows.shape[0]

    def __contains__(self, x: BitVector) -> bool:
        if x.n != self.n:
            raise DimensionError(f"point length {x.n} != set dimension {self.n}")
        return bool((self.rows == x.words).all(axis=1).any())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.rows, other.rows))

    def __hash__(self):
        return hash((self.n, self.rows.tobytes()))

    def issubset(self, other: "PointSet") -> bool:
        if self.n != other.n:
            raise DimensionError(f"dimensions differ: {self.n} != {other.n}")
        merged = _unique_rows(np.concatenate([self.rows, other.rows]))
        return merged.shape[0] == other.rows.shape[0]

    def union(self, other: "PointSet") -> "PointSet":
        if self.n != other.n:
            raise DimensionError(f"dimensions differ: {self.n} != {other.n}")
        return PointSet(self.n, np.concatenate([self.rows, other.rows]))

    def bitvectors(self) -> list[BitVector]:
        return [BitVector(self.n, row) for row in self.rows]

    def to_bitstrings(self) -> list[str]:
        return [v.to01() for v in self.bitvectors()]

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, k={len(self)})"


def pointset_gate(gate: Gate, p1: PointSet, p2: PointSet) -> PointSet:
    """Brute-force Minkowski semantics: the gate applied to every point pair."""
    if p1.n != p2.n:
        raise DimensionError(f"dimensions differ: {p1.n} != {p2.n}")
    a = p1.rows[:, None, :]
    b = p2.rows[None, :, :]
    if gate is Gate.XOR:
        out = a ^ b
    elif gate is Gate.AND:
        out = a & b
    elif gate is Gate.OR:
        out = a | b
    elif gate is Gate.XNOR:
        out = ~(a ^ b) & pad_mask(p1.n)
    elif gate is Gate.NAND:
        out = ~(a & b) & pad_mask(p1.n)
    elif gate is Gate.NOR:
        out = ~(a | b) & pad_mask(p1.n)
    else:
        raise ValueError(f"unknown gate {gate!r}")
    return PointSet(p1.n, out.reshape(-1, p1.rows.shape[1]))


def pointset_complement(p: PointSet) -> PointSet:
    """Flip every point (the pointwise NOT image)."""
    return PointSet(p.n, ~p.rows & pad_mask(p.n)[None, :])


def sets_equal(p1: PointSet, p2: PointSet) -> bool:
    """True iff same dimension and identical point collections."""
    return p1.n == p2.n and bool(np.array_equal(p1.rows, p2.rows))


# --- generator domain -> point domain ---------------------------------------


def _gf2_basis(rows: np.ndarray) -> list[np.ndarray]:
    """Reduce packed row vectors to an independent GF(2) basis."""
    pivots: dict[int, np.ndarray] = {}
    for row in rows:
        v = row.copy()
        while True:
            msb = _top_bit(v)
            if msb < 0:
                break
            if msb in pivots:
                v = v ^ pivots[msb]
            else:
                pivots[msb] = v
                break
    return [pivots[k] for k in sorted(pivots)]


def _top_bit(words: np.ndarray) -> int:
    for w in range(words.shape[0] - 1, -1, -1):
        if words[w]:
            return w * 64 + int(words[w]).bit_length() - 1
    return -1


class _SpanForm:
    """Affine-subspace view: point set == offset XOR span(basis)."""

    __slots__ = ("n", "offset", "basis")

    def __init__(self, n: int, offset: np.ndarray, basis: list[np.ndarray]):
        self.n = n
        self.offset = offset
        self.basis = basis

    def count(self) -> int:
        return 1 << len(self.basis)

    def materialize(self, max_points: int) -> PointSet:
        if self.count() > max_points:
            raise BudgetExceeded(
                f"affine set has 2^{len(self.basis)} points, over the cap of {max_points}"
            )
        pts = self.offset[None, :].copy()
        for vec in self.basis:
            pts = np.concatenate([pts, pts ^ vec[None, :]])
        return PointSet(self.n, pts)


def _span_form(c: ConstrainedPolyLogicalZonotope) -> _SpanForm | None:
    """Detect sets whose monomials all have degree <= 1 (no effective constraints).

    Columns sharing a factor aggregate by XOR; degree-0 columns fold into
    the offset. Returns None when a sweep is required, or when the empty
    constraint system is unsatisfiable (caller checks that first).
    """
    if c.q > 0 and c.m > 0:
        return None
    eb = c.E.to_bool()
    if c.h and eb.sum(axis=0).max(initial=0) > 1:
        return None
    gb = c.G.to_bool()
    offset_bits = c.c.bits().copy()
    per_factor = []
    if c.h:
        degree = eb.sum(axis=0)
        const = degree == 0
        if const.any():
            offset_bits ^= (gb[:, const].sum(axis=1) % 2).astype(bool)
        for k in range(c.p):
            gated = eb[k]
            if gated.any():
                agg = (gb[:, gated].sum(axis=1) % 2).astype(bool)
                if agg.any():
                    per_factor.append(agg)
    offset = pack_bool_rows(offset_bits[None, :])[0]
    vecs = pack_bool_rows(np.array(per_factor, dtype=bool).reshape(len(per_factor), c.n))
    return _SpanForm(c.n, offset, _gf2_basis(vecs))


def _lz_span(l: LogicalZonotope) -> _SpanForm:
    return _SpanForm(l.n, l.c.words.copy(), _gf2_basis(l.G.data))


def _empty_by_constraints(c: ConstrainedPolyLogicalZonotope) -> bool:
    """q == 0 leaves the fixed constraint 0 == b; unsatisfiable iff b has a set bit."""
    return c.q == 0 and c.m > 0 and bool(c.b.words.any())


def _sweep_inputs(c: ConstrainedPolyLogicalZonotope):
    """Compact inert factor rows away and pack the masks the kernels expect."""
    eb = c.E.to_bool()
    rb = c.R.to_bool()
    active = eb.any(axis=1) | rb.any(axis=1)
    ea = eb[active]
    ra = rb[active]
    p_active = int(active.sum())
    shifts = np.arange(p_active, dtype=np.uint64)

    def masks(cols: np.ndarray) -> np.ndarray:
        if cols.shape[1] == 0:
            return np.zeros(0, dtype=np.uint64)
        return (cols.astype(np.uint64).T << shifts).sum(axis=1, dtype=np.uint64)

    emasks = masks(ea)
    rmasks = masks(ra)
    gwords = np.ascontiguousarray(c.G.data)
    awords = np.ascontiguousarray(c.A.data)
    cwords = np.ascontiguousarray(c.c.words)
    bwords = np.ascontiguousarray(c.b.words)
    return p_active, emasks, gwords, cwords, rmasks, awords, bwords


def _sweep(c: ConstrainedPolyLogicalZonotope, limit: int | None):
    """Run the chunked assignment sweep; yields packed candidate blocks."""
    p_active, emasks, gwords, cwords, rmasks, awords, bwords = _sweep_inputs(c)
    total = 1 << p_active
    chunk = 1 << min(_CHUNK_BITS, p_active)
    out = np.empty((chunk, cwords.shape[0]), dtype=np.uint64)
    emitted = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        cap = chunk if limit is None else max(0, limit - emitted)
        if cap == 0:
            return
        cnt = kernels.sweep_chunk(
            start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, cap
        )
        if cnt:
            emitted += cnt
            yield out[:cnt].copy()


def _check_factor_budget(c, budget: EnumerationBudget) -> None:
    if c.p > budget.max_factors:
        raise BudgetExceeded(
            f"{c.p} factors exceed the enumeration cap of {budget.max_factors};"
            " raise max_factors if the sweep is really wanted"
        )


def enumerate_points(s, budget: EnumerationBudget | None = None) -> PointSet:
    """All points of a set, per the defining comprehension.

    For each factor assignment alpha in {0,1}^p satisfying the constraint
    system, emits c XOR the XOR of generator columns whose monomial is 1
    (convention alpha^0 == 1, alpha^1 == alpha), then deduplicates.
    Logical zonotopes enumerate through their GF(2) span; everything else
    sweeps, subject to the factor budget.
    """
    budget = budget or DEFAULT_BUDGET
    if isinstance(s, LogicalZonotope):
        return _lz_span(s).materialize(budget.max_points)
    c = as_cplz(s, IdAllocator(10**9))
    if _empty_by_constraints(c):
        return PointSet.empty(c.n)
    span = _span_form(c)
    if span is not None:
        return span.materialize(budget.max_points)
    _check_factor_budget(c, budget)
    blocks: list[np.ndarray] = []
    uniq = np.zeros((0, n_words(c.n)), dtype=np.uint64)
    for block in _sweep(c, None):
        blocks.append(block)
        if sum(b.shape[0] for b in blocks) >= _MERGE_ROWS:
            uniq = _unique_rows(np.concatenate([uniq, *blocks]))
            blocks = []
            if uniq.shape[0] > budget.max_points:
                raise BudgetExceeded(f"point set exceeds the cap of {budget.max_points}")
    if blocks:
        uniq = _unique_rows(np.concatenate([uniq, *blocks]))
    if uniq.shape[0] > budget.max_points:
        raise BudgetExceeded(f"point set exceeds the cap of {budget.max_points}")
    return PointSet(c.n, uniq)


def count_points(s, budget: EnumerationBudget | None = None) -> int:
    """Cardinality of the point set; affine sets are counted by rank, without
    materializing."""
    budget = budget or DEFAULT_BUDGET
    if isinstance(s, LogicalZonotope):
        return _lz_span(s).count()
    c = as_cplz(s, IdAllocator(10**9))
    if _empty_by_constraints(c):
        return 0
    span = _span_form(c)
    if span is not None:
        return span.count()
    return len(enumerate_points(c, budget))


def witness_point(s, budget: EnumerationBudget | None = None) -> BitVector | None:
    """Some member of the set, or None when it is empty."""
    budget = budget or DEFAULT_BUDGET
    if isinstance(s, LogicalZonotope):
        return BitVector(s.n, s.c.words.copy())
    c = as_cplz(s, IdAllocator(10**9))
    if _empty_by_constraints(c):
        return None
    span = _span_form(c)
    if span is not None:
        return BitVector(c.n, span.offset)
    _check_factor_budget(c, budget)
    for block in _sweep(c, 1):
        return BitVector(c.n, block[0])
    return None


def is_empty(s, budget: EnumerationBudget | None = None) -> bool:
    """True iff no factor assignment satisfies the constraints."""
    return witness_point(s, budget) is None


def contains(s, x: BitVector, budget: EnumerationBudget | None = None) -> bool:
    """Membership query in the point domain."""
    if x.n != s.n:
        raise DimensionError(f"point length {x.n} != set dimension {s.n}")
    return x in enumerate_points(s, budget)
