import numpy as np
import pytest

from logiczono.bitvec import BitMatrix, BitVector, Gate
from logiczono.errors import BudgetExceeded, DimensionError
from logiczono.points import (
    EnumerationBudget,
    PointSet,
    contains,
    count_points,
    enumerate_points,
    is_empty,
    pointset_gate,
    sets_equal,
)
from logiczono.sets import (
    ConstrainedPolyLogicalZonotope as CPLZ,
    LogicalZonotope,
    intersect,
    promote,
)
from conftest import naive_enumerate, random_cplz


def set01(strings):
    return PointSet.from_bitstrings(strings)


def two_valued(alloc, zero="0", one="1"):
    """{zero, zero^one} over one generator and one factor."""
    n = len(zero)
    return CPLZ.unconstrained(
        BitVector.from01(zero),
        BitMatrix.from_columns([BitVector.from01(one)], n),
        BitMatrix.identity(1),
        alloc.fresh(1),
    )


def test_singleton_enumerates_to_center(alloc):
    z = CPLZ.singleton(BitVector.from01("101"))
    assert enumerate_points(z) == set01(["101"])


def test_two_independent_generators(alloc):
    z = CPLZ.unconstrained(
        BitVector.from01("00"),
        BitMatrix.from_columns([BitVector.from01("10"), BitVector.from01("01")]),
        BitMatrix.identity(2),
        alloc.fresh(2),
    )
    assert len(enumerate_points(z)) == 4


def test_enumeration_matches_reference(rng, alloc):
    for _ in range(60):
        z = random_cplz(rng, alloc)
        assert set(enumerate_points(z).to_bitstrings()) == naive_enumerate(z)


def test_intersection_point_example(alloc):
    x01 = two_valued(alloc)
    one = CPLZ.singleton(BitVector.from01("1"))
    got = enumerate_points(intersect(x01, one, alloc))
    assert got == set01(["1"])


def test_budget_on_factor_count(alloc):
    z = CPLZ.unconstrained(
        BitVector.from01("0"),
        BitMatrix.from_bool(np.ones((1, 1), dtype=bool)),
        BitMatrix.from_bool(np.ones((10, 1), dtype=bool)),
        alloc.fresh(10),
    )
    with pytest.raises(BudgetExceeded):
        enumerate_points(z, EnumerationBudget(max_factors=5))
    # the same set fits a larger budget
    assert len(enumerate_points(z, EnumerationBudget(max_factors=12))) == 2


def test_budget_validation():
    with pytest.raises(ValueError):
        EnumerationBudget(max_factors=0)
    with pytest.raises(ValueError):
        EnumerationBudget(max_factors=64)
    with pytest.raises(ValueError):
        EnumerationBudget(max_points=0)


def test_affine_sets_skip_the_sweep(alloc):
    # identity exponents: enumerable through the GF(2) span even past the cap
    h = 70
    rng = np.random.default_rng(9)
    lz = LogicalZonotope(
        BitVector.from_bits(rng.integers(0, 2, size=6)),
        BitMatrix.from_bool(rng.integers(0, 2, size=(6, h)).astype(bool)),
    )
    plz = promote(lz, alloc)
    pts = enumerate_points(plz)
    assert pts == enumerate_points(lz)
    assert len(pts) == count_points(lz) <= 2 ** 6


def test_is_empty_cases(alloc):
    assert not is_empty(two_valued(alloc))
    zero = CPLZ.singleton(BitVector.from01("0"))
    one = CPLZ.singleton(BitVector.from01("1"))
    assert is_empty(intersect(zero, one, alloc))
    x01 = two_valued(alloc)
    overlap = intersect(x01, one, alloc)
    assert not is_empty(overlap)
    assert enumerate_points(overlap).issubset(enumerate_points(x01))


def test_contains(alloc):
    c = BitVector.from01("10")
    assert contains(CPLZ.singleton(c), c)
    x01 = two_valued(alloc)
    assert contains(x01, BitVector.from01("1"))
    one = CPLZ.singleton(BitVector.from01("1"))
    assert not contains(intersect(x01, one, alloc), BitVector.from01("0"))
    with pytest.raises(DimensionError):
        contains(x01, BitVector.from01("10"))


def test_pointset_gate_examples():
    assert pointset_gate(Gate.XOR, set01(["1"]), set01(["0"])) == set01(["1"])
    both = set01(["0", "1"])
    assert pointset_gate(Gate.AND, both, both) == both
    quad = pointset_gate(Gate.XOR, set01(["00", "10"]), set01(["00", "01"]))
    assert quad == set01(["00", "01", "10", "11"])


def test_pointset_gate_dimension_error():
    with pytest.raises(DimensionError):
        pointset_gate(Gate.AND, set01(["1"]), set01(["10"]))


def test_sets_equal():
    p = set01(["01", "10"])
    assert sets_equal(p, set01(["10", "01"]))
    assert not sets_equal(set01(["0"]), set01(["1"]))
    assert not sets_equal(set01(["0"]), set01(["00"]))


def test_cardinality_bounds(rng, alloc):
    for _ in range(30):
        z = random_cplz(rng, alloc)
        assert len(enumerate_points(z)) <= 2 ** z.p


def test_unconstrained_full_sweep(alloc):
    # independent identity exponents: exactly 2^p distinct evaluations land
    z = CPLZ.unconstrained(
        BitVector.from01("000"),
        BitMatrix.from_bool(np.eye(3, dtype=bool)),
        BitMatrix.identity(3),
        alloc.fresh(3),
    )
    assert len(enumerate_points(z)) == 8


def test_pointset_dedup_and_order():
    a = PointSet.from_bitstrings(["10", "01", "10"])
    b = PointSet.from_bitstrings(["01", "10"])
    assert len(a) == 2 and a == b
    assert a.to_bitstrings() == b.to_bitstrings()


def test_union_subset():
    a = set01(["00", "01"])
    b = set01(["01", "11"])
    u = a.union(b)
    assert len(u) == 3
    assert a.issubset(u) and b.issubset(u) and not u.issubset(a)


def test_count_matches_enumeration(rng, alloc):
    for _ in range(20):
        z = random_cplz(rng, alloc)
        assert count_points(z) == len(enumerate_points(z))
