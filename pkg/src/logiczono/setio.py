"""Set-exchange JSON format and binding files.

A set document looks like

    {"kind": "lz" | "plz" | "cplz", "n": int,
     "c": "bitstring", "G": ["bitstring", ...],
     "E": [...], "A": [...], "b": "bitstring", "R": [...],
     "id": [int, ...]}

Matrices are serialized column-wise as bitstrings whose length equals the
row count; absent fields default to empty. Index 0 of a bitstring is the
leftmost character.

The shorthand {"points": ["bitstring", ...]} converts to an unconstrained
set with the first point as center and one generator per additional point
under identity exponents. That is exact only when the listed points form
a GF(2) affine subspace (so the count is a power of two); other lists are
split into exactly-representable chunks that together cover the list, and
callers treat the result as a union.
"""

from __future__ import annotations

import json

import numpy as np

from .bitvec import BitMatrix, BitVector, Gate, elementwise_gate
from .points import PointSet
from .sets import (
    ConstrainedPolyLogicalZonotope,
    IdAllocator,
    LogicalZonotope,
    PolyLogicalZonotope,
)

CPLZ = ConstrainedPolyLogicalZonotope


def _matrix_to_strings(m: BitMatrix) -> list[str]:
    return [m.column(j).to01() for j in range(m.cols)]


def _matrix_from_strings(strings, rows: int, what: str) -> BitMatrix:
    cols = []
    for s in strings:
        if len(s) != rows:
            raise ValueError(f"{what} column {s!r} has length {len(s)}, expected {rows}")
        cols.append(BitVector.from01(s))
    return BitMatrix.from_columns(cols, rows)


def set_to_json(s) -> dict:
    """Serialize any of the three representations to the exchange schema."""
    if isinstance(s, LogicalZonotope):
        return {"kind": "lz", "n": s.n, "c": s.c.to01(), "G": _matrix_to_strings(s.G)}
    if isinstance(s, PolyLogicalZonotope):
        return {
            "kind": "plz",
            "n": s.n,
            "c": s.c.to01(),
            "G": _matrix_to_strings(s.G),
            "E": _matrix_to_strings(s.E),
            "id": list(s.id),
        }
    if isinstance(s, ConstrainedPolyLogicalZonotope):
        return {
            "kind": "cplz",
            "n": s.n,
            "c": s.c.to01(),
            "G": _matrix_to_strings(s.G),
            "E": _matrix_to_strings(s.E),
            "A": _matrix_to_strings(s.A),
            "b": s.b.to01(),
            "R": _matrix_to_strings(s.R),
            "id": list(s.id),
        }
    raise TypeError(f"cannot serialize {type(s).__name__}")


def set_from_json(doc: dict):
    """Parse one exchange document into its declared representation."""
    if "points" in doc:
        raise ValueError("point-list shorthand describes a union; load it with sets_from_json")
    kind = doc.get("kind")
    if kind not in ("lz", "plz", "cplz"):
        raise ValueError(f"unknown set kind {kind!r}")
    n = int(doc["n"])
    c = BitVector.from01(doc.get("c", "0" * n))
    if c.n != n:
        raise ValueError(f"center has length {c.n}, expected {n}")
    G = _matrix_from_strings(doc.get("G", []), n, "G")
    if kind == "lz":
        return LogicalZonotope(c, G)
    ids = [int(i) for i in doc.get("id", [])]
    E = _matrix_from_strings(doc.get("E", []), len(ids), "E")
    if kind == "plz":
        return PolyLogicalZonotope(c, G, E, ids)
    b = BitVector.from01(doc.get("b", ""))
    A = _matrix_from_strings(doc.get("A", []), b.n, "A")
    R = _matrix_from_strings(doc.get("R", []), len(ids), "R")
    return ConstrainedPolyLogicalZonotope(c, G, E, A, b, R, ids)


def _affine_rank(points: list[BitVector]) -> int:
    base = points[0].bits()
    diffs = np.array([p.bits() ^ base for p in points[1:]], dtype=bool)
    if diffs.size == 0:
        return 0
    # GF(2) rank by elimination over the boolean rows
    rank = 0
    mat = diffs.copy()
    rows, cols = mat.shape
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if mat[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[[rank, pivot]] = mat[[pivot, rank]]
        for r in range(rows):
            if r != rank and mat[r, col]:
                mat[r] ^= mat[rank]
        rank += 1
    return rank


def _points_chunk_to_set(points: list[BitVector], alloc: IdAllocator) -> CPLZ:
    center = points[0]
    gens = [elementwise_gate(Gate.XOR, center, p) for p in points[1:]]
    G = BitMatrix.from_columns(gens, center.n)
    return ConstrainedPolyLogicalZonotope.unconstrained(
        center, G, BitMatrix.identity(G.cols), alloc.fresh(G.cols)
    )


def sets_from_points(strings: list[str], alloc: IdAllocator) -> list[CPLZ]:
    """Convert a point list into one set when exactly representable, else a union.

    A deduplicated list is representable iff it is affinely closed over
    GF(2); otherwise it is covered by pairs (always exact) plus at most
    one singleton.
    """
    points = list(dict.fromkeys(BitVector.from01(s) for s in strings))
    if not points:
        raise ValueError("a point list must contain at least one point")
    widths = {p.n for p in points}
    if len(widths) != 1:
        raise ValueError(f"points of mixed lengths: {sorted(widths)}")
    if len(points) == (1 << _affine_rank(points)):
        return [_points_chunk_to_set(points, alloc)]
    return [
        _points_chunk_to_set(points[i : i + 2], alloc) for i in range(0, len(points), 2)
    ]


def sets_from_json(doc, alloc: IdAllocator) -> list[CPLZ]:
    """Load one binding value: an exchange document or the points shorthand.

    Returns a list of constrained sets whose union is the described set;
    the list has one element whenever the description is exactly
    representable as a single set.
    """
    if isinstance(doc, dict) and "points" in doc:
        return sets_from_points(doc["points"], alloc)
    s = set_from_json(doc)
    if isinstance(s, LogicalZonotope):
        s = PolyLogicalZonotope(s.c, s.G, BitMatrix.identity(s.h), alloc.fresh(s.h))
    if isinstance(s, PolyLogicalZonotope):
        s = ConstrainedPolyLogicalZonotope.unconstrained(s.c, s.G, s.E, s.id)
    return [s]


def load_bindings(doc: dict, alloc: IdAllocator) -> dict[str, list[CPLZ]]:
    """A bindings file: JSON object mapping variable names to set documents."""
    if not isinstance(doc, dict):
        raise ValueError("bindings must be a JSON object mapping names to sets")
    return {name: sets_from_json(value, alloc) for name, value in doc.items()}


def load_input_bindings(doc, alloc: IdAllocator):
    """Input bindings: one map reused every step, or an array of per-step maps."""
    if isinstance(doc, list):
        return [load_bindings(step, alloc) for step in doc]
    return load_bindings(doc, alloc)


def pointset_to_json(p: PointSet) -> list[str]:
    return p.to_bitstrings()


def read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path: str, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
