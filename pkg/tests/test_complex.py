import random

import pytest
from helpers import dense_inverse, random_graded_differential, random_rips

from pcform.complex import (
    Cell,
    ComplexFormatError,
    FilteredComplex,
    InvalidComplexError,
    Ordering,
    adapted_basis,
    boundary_matrix,
    complex_from_matrix,
    faces,
    format_complex,
    is_nondegenerate,
    parse_complex,
    validate,
)
from pcform.field import GF2, QQ, FieldSpec
from pcform.matrix import GradedDifferential, standard_reduction
from pcform.matrix.predicates import is_upper_triangular

TRIANGLE = FilteredComplex.from_levels(
    [((0,), 1), ((1,), 1), ((0, 1), 2), ((2,), 3), ((1, 2), 4), ((0, 2), 5), ((0, 1, 2), 6)]
)


def _rules(fc):
    return sorted({v.rule for v in validate(fc)})


def test_faces():
    assert faces((0, 1, 2)) == [(1, 2), (0, 2), (0, 1)]
    assert faces((3,)) == []


def test_valid_complex():
    assert validate(TRIANGLE) == []
    # the two initial vertices share degree 0 and level 1
    assert not is_nondegenerate(TRIANGLE)
    assert TRIANGLE.levels() == [1, 2, 3, 4, 5, 6]
    assert TRIANGLE.max_degree() == 2


@pytest.mark.parametrize(
    "cells, rule",
    [
        ([((), 1)], "empty"),
        ([((1, 0), 1), ((0,), 1), ((1,), 1)], "vertex-order"),
        ([((0,), 1), ((0,), 2)], "duplicate"),
        ([((0,), 1), ((0, 1), 1)], "face-closure"),
        ([((0,), 2), ((1,), 1), ((0, 1), 1)], "monotonicity"),
    ],
)
def test_invalid_complexes(cells, rule):
    fc = FilteredComplex.from_levels(cells)
    assert rule in _rules(fc)
    with pytest.raises(InvalidComplexError):
        adapted_basis(fc)


def test_birth_order_rule():
    fc = FilteredComplex((Cell((0,), 1, 0.5), Cell((1,), 2, 0.5)))
    assert _rules(fc) == ["birth-order"]
    fc = FilteredComplex((Cell((0,), 2, 0.1), Cell((1,), 1, 0.5)))
    assert _rules(fc) == ["birth-order"]


def test_degenerate_complex():
    fc = FilteredComplex.from_levels([((0,), 1), ((1,), 1)])
    assert validate(fc) == [] and not is_nondegenerate(fc)


def test_orderings():
    deg = adapted_basis(TRIANGLE, "degree")
    lvl = adapted_basis(TRIANGLE, Ordering.LEVEL_MAJOR)
    assert deg.labels() == ["[0]", "[1]", "[2]", "[0,1]", "[1,2]", "[0,2]", "[0,1,2]"]
    assert lvl.labels() == ["[0]", "[1]", "[0,1]", "[2]", "[1,2]", "[0,2]", "[0,1,2]"]
    assert [e.level for e in deg.elements] == [1, 1, 3, 2, 4, 5, 6]
    assert deg.partition.blocks == ((0, 3), (1, 3), (2, 1))
    assert lvl.partition is None
    with pytest.raises(ValueError):
        adapted_basis(TRIANGLE, "random")


def test_boundary_matrices():
    d = boundary_matrix(TRIANGLE, adapted_basis(TRIANGLE, "degree"))
    assert isinstance(d, GradedDifferential)
    assert d.matrix.to_int_lists()[:3] == [
        [0, 0, 0, -1, 0, -1, 0],
        [0, 0, 0, 1, -1, 0, 0],
        [0, 0, 0, 0, 1, 1, 0],
    ]
    level = boundary_matrix(TRIANGLE, adapted_basis(TRIANGLE, "level"), FieldSpec.prime(3))
    assert level.field == FieldSpec.prime(3)
    assert level[0, 2] == 2  # -1 mod 3
    with pytest.raises(ValueError):
        boundary_matrix(TRIANGLE, adapted_basis(FilteredComplex.from_levels([((0,), 1)])))


def test_level_major_matrix_is_upper_triangular():
    rng = random.Random(5)
    for _ in range(50):
        fc = random_rips(rng, max_points=7)
        d = boundary_matrix(fc, adapted_basis(fc, "level"), GF2)
        assert is_upper_triangular(d) and all(d[i, i] == 0 for i in range(d.rows))


def test_orderings_give_same_pairs():
    # both orderings pair the same simplices
    rng = random.Random(6)
    for _ in range(40):
        fc = random_rips(rng, max_points=6)
        pairs = []
        for mode in ("degree", "level"):
            basis = adapted_basis(fc, mode)
            res = standard_reduction(boundary_matrix(fc, basis, QQ))
            pairs.append({(basis[i].vertices, basis[j].vertices) for i, j, _ in res.Dcanon.entries()})
        assert pairs[0] == pairs[1]


def test_chain_complex_from_matrix():
    rng = random.Random(7)
    d = random_graded_differential(rng, QQ)
    fcc = complex_from_matrix(d)
    basis = fcc.basis()
    assert [e.level for e in basis.elements] == list(range(1, d.dim + 1))
    assert basis.labels()[0] == "g1"
    assert fcc.level_complex(0).dim == 0
    assert fcc.level_complex(d.dim + 5) == d
    assert fcc.level_complex(2).matrix == d.matrix.upper_left(min(2, d.dim))
    assert fcc.is_nondegenerate()


def test_matrix_complex_round_trip():
    rng = random.Random(14)
    for field in (QQ, GF2):
        for _ in range(20):
            d = random_graded_differential(rng, field)
            fcc = complex_from_matrix(d)
            assert fcc.boundary_matrix() == d
            assert complex_from_matrix(fcc.boundary_matrix()) == fcc
    # simplicial route: the boundary of the triangle reproduces itself
    d = boundary_matrix(TRIANGLE, adapted_basis(TRIANGLE, "degree"))
    assert complex_from_matrix(d).boundary_matrix() == d


def test_parse_complex():
    fc = parse_complex("# comment\n0.5 0\n0.5 1\n2 1 0  # edge\n")
    assert {c.vertices: c.level for c in fc.cells} == {(0,): 1, (1,): 1, (0, 1): 2}
    assert {c.birth for c in fc.cells} == {0.5, 2.0}


@pytest.mark.parametrize(
    "text",
    ["1\n", "x 0\n", "1 a\n", "1 -1\n", "1 0 0\n", "1 0\n2 0\n"],
)
def test_parse_complex_errors(text):
    with pytest.raises(ComplexFormatError):
        parse_complex(text)


def test_missing_faces_need_close():
    text = "1 0 1 2\n"
    with pytest.raises(InvalidComplexError):
        adapted_basis(parse_complex(text))
    closed = parse_complex("3 0 1 2\n2 0 1\n1 0\n", close=True)
    assert validate(closed) == []
    levels = {c.vertices: c.level for c in closed.cells}
    assert levels[(0,)] == 1 and levels[(1,)] == 2 and levels[(2,)] == 3
    assert levels[(0, 2)] == 3


def test_format_round_trip():
    rng = random.Random(8)
    for _ in range(30):
        fc = random_rips(rng)
        back = parse_complex(format_complex(fc))
        assert sorted((c.vertices, c.level) for c in back.cells) == sorted((c.vertices, c.level) for c in fc.cells)


def _level_respecting_automorphism(rng, basis, field):
    """Random invertible map sending each element into the span of same-degree elements at no later level."""
    n = len(basis)
    while True:
        a = [[field.zero] * n for _ in range(n)]
        for i, ei in enumerate(basis.elements):
            for j, ej in enumerate(basis.elements):
                if ei.degree == ej.degree and ei.level <= ej.level:
                    a[i][j] = field.random_nonzero(rng) if i == j else field.random_element(rng)
        if dense_inverse(a, field) is not None:
            return a


def test_example_matrix_gives_nondegenerate_complex():
    d = boundary_matrix(TRIANGLE, adapted_basis(TRIANGLE, "degree"))
    fcc = complex_from_matrix(d)
    assert fcc.is_nondegenerate()
    assert [fcc.level_complex(p).dim for p in range(0, 9)] == [0, 1, 2, 3, 4, 5, 6, 7, 7]
    assert fcc.level_complex(4).partition.blocks == ((0, 3), (1, 1))


@pytest.mark.parametrize("field", [QQ, GF2, FieldSpec.prime(5)], ids=str)
def test_basis_changes_on_nondegenerate_complexes_are_triangular(field):
    rng = random.Random(9 + (field.p or 0))
    for _ in range(40):
        fcc = complex_from_matrix(random_graded_differential(rng, field))
        a = _level_respecting_automorphism(rng, fcc.basis(), field)
        assert all(not a[i][j] for i in range(len(a)) for j in range(i))


def test_degenerate_complex_admits_non_triangular_change():
    basis = adapted_basis(TRIANGLE, "degree")
    # [0] and [1] share degree and level, so each may map onto the other
    assert basis[0].level == basis[1].level
    swap = [[int(i == j) for j in range(7)] for i in range(7)]
    swap[0][0] = swap[1][1] = 0
    swap[0][1] = swap[1][0] = 1
    # the swap respects levels and degrees yet is not triangular
    ok = all(
        not swap[i][j] or (basis[i].degree == basis[j].degree and basis[i].level <= basis[j].level)
        for i in range(7)
        for j in range(7)
    )
    assert ok and swap[1][0]
