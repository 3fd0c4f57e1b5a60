import csv
import io
import json
import random

import pytest
from helpers import random_rips

from pcform.barcode import (
    Barcode,
    Pairing,
    bars_to_csv,
    bars_to_json,
    betti,
    extract_pairing,
    render_summands,
    render_text,
    summands,
    summary_dict,
)
from pcform.complex import adapted_basis, complex_from_matrix, parse_complex
from pcform.field import QQ
from pcform.matrix import ColumnMatrix, DegreePartition, GradedDifferential
from pcform.pipeline import persistence

TRIANGLE = "1 0\n1 1\n2 0 1\n3 2\n4 1 2\n5 0 2\n6 0 1 2\n"
ALPHA = "0 1\n0 2\n0 3\n0 4\n1 1 2\n1.12 1 3\n1.12 1 4\n1.12 2 3\n1.12 2 4\n1.25 1 2 3\n1.25 1 2 4\n"


def test_pairing_of_triangle():
    pers = persistence(parse_complex(TRIANGLE))
    assert pers.pairing == Pairing(((1, 3), (2, 4), (5, 6)), (0,))
    labels = pers.basis.labels()
    assert [(labels[i], labels[j]) for i, j in pers.pairing.pairs] == [("[1]", "[0,1]"), ("[2]", "[1,2]"), ("[0,2]", "[0,1,2]")]


def test_triangle_bars():
    bars = persistence(parse_complex(TRIANGLE)).barcodes()
    assert [b.label() for b in bars] == ["[1,2)_0", "[1,∞)_0", "[3,4)_0", "[5,6)_1"]
    assert [betti(bars, 0, p) for p in range(1, 8)] == [2, 1, 2, 1, 1, 1, 1]
    assert [betti(bars, 1, p) for p in range(1, 8)] == [0, 0, 0, 0, 1, 0, 0]


def test_empty_bars_are_dropped_by_default():
    fc = parse_complex("0 0\n0 1\n0 0 1\n")
    pers = persistence(fc)
    assert [b.label() for b in pers.barcodes()] == ["[1,∞)_0"]
    assert [b.label() for b in pers.barcodes(drop_empty=False)] == ["[1,1)_0", "[1,∞)_0"]
    kinds = [(s.label, s.is_empty_interval) for s in pers.summands()]
    assert kinds == [("[1,∞)_0", False), ("[1,1)_0", True)]


def test_extract_pairing_checks():
    basis = adapted_basis(parse_complex(TRIANGLE), "degree")
    with pytest.raises(ValueError):
        extract_pairing(ColumnMatrix.zeros(3, 3), basis)
    bad_degree = ColumnMatrix.from_entries(7, 7, [(0, 1, 1)], QQ)
    with pytest.raises(ValueError, match="degree"):
        extract_pairing(bad_degree, basis)
    with pytest.raises(ValueError):
        extract_pairing(ColumnMatrix.from_entries(7, 7, [(0, 3, 2)], QQ), basis)


def test_summands_of_triangle():
    pers = persistence(parse_complex(TRIANGLE))
    items = pers.summands()
    assert [(s.kind, s.label) for s in items] == [("J", "[1,∞)_0"), ("K", "[1,2)_0"), ("K", "[3,4)_0"), ("K", "[5,6)_1")]
    summary = summary_dict(pers.result, pers.basis, items)
    assert summary[0]["members"][0]["vector"] == [[1, "1"]]
    assert [m["role"] for m in summary[1]["members"]] == ["creator", "destroyer"]
    # each destroyer's boundary is its creator's basis vector
    d, b = pers.result.D, pers.result.B
    for s in items:
        if s.kind == "K":
            c, k = s.members
            assert d @ b.submatrix(range(7), [k]) == b.submatrix(range(7), [c])
    text = render_summands(pers.result, pers.basis, items)
    assert text.splitlines()[0] == "[1,∞)_0  (J[0])"


def test_alpha_bars():
    bars = persistence(parse_complex(ALPHA)).barcodes()
    assert [b.label() for b in bars if b.degree == 1] == ["[3,4)_1", "[3,4)_1"]
    assert [b.birth_value for b in bars if b.degree == 1] == [1.12, 1.12]


def test_json_and_csv():
    bars = [Barcode(0, 1, None, 0.0), Barcode(1, 3, 4, 1.12, 1.25)]
    data = json.loads(bars_to_json(bars))
    assert data[0] == {"degree": 0, "birth_level": 1, "death_level": None, "birth_value": 0.0}
    assert data[1]["death_value"] == 1.25
    rows = list(csv.reader(io.StringIO(bars_to_csv(bars))))
    assert rows[0] == ["degree", "birth_level", "death_level", "birth_value", "death_value"]
    assert rows[1] == ["0", "1", "", "0.0", ""]
    assert rows[2] == ["1", "3", "4", "1.12", "1.25"]


def test_render_text():
    pers = persistence(parse_complex(TRIANGLE))
    text = render_text(pers.barcodes(), pers.basis)
    lines = text.splitlines()
    assert lines[0] == "levels 1..6"
    assert "  [1,∞)  ------>" in lines
    assert "  [5,6)      -" in lines
    assert render_text([]) == "no bars\n"


def test_barcode_helpers():
    b = Barcode(1, 2, 5)
    assert b.contains(2) and b.contains(4) and not b.contains(5) and not b.contains(1)
    assert Barcode(0, 1, None).contains(10**6)
    assert b.interval() == "[2,5)"


def test_summands_partition_the_basis():
    rng = random.Random(13)
    for _ in range(40):
        pers = persistence(random_rips(rng))
        members = [i for s in pers.summands() for i in s.members]
        assert sorted(members) == list(range(len(pers.basis)))
        finite = [s for s in pers.summands() if s.kind == "K" and not s.is_empty_interval]
        infinite = [s for s in pers.summands() if s.kind == "J"]
        bars = pers.barcodes()
        assert len(bars) == len(finite) + len(infinite)


def test_zero_matrix_single_element():
    d = GradedDifferential(ColumnMatrix.zeros(1, 1), DegreePartition.single(1))
    assert [s.label for s in persistence(complex_from_matrix(d)).summands()] == ["[1,∞)_0"]
