from fractions import Fraction

import pytest

from crossvar.core.errors import LayoutTableError
from crossvar.core.frequency import ProductType
from crossvar.core.layout import (
    RLA_PROBABILITIES,
    ExpectationTable,
    builtin_rla_table,
    load_layout_table,
    read_layout_table,
    resolve_layout,
)

RLA_TEXT = """
# uniformly random linear arrangement
name = rla-copy
delta = 1/3
p_00 = 1/9
p_24 = 1/3
p_13 = 1/6
p_12 = 2/15
p_04 = 0
p_03 = 1/12
p_021 = 1/10
p_022 = 7/60
p_01 = 1/9
"""


def custom_probabilities():
    probabilities = dict(RLA_PROBABILITIES)
    probabilities.update(
        {
            ProductType.T00: Fraction(1, 4),
            ProductType.T01: Fraction(1, 4),
            ProductType.T24: Fraction(1, 2),
            ProductType.T13: Fraction(1, 3),
            ProductType.T12: Fraction(1, 5),
            ProductType.T03: Fraction(1, 7),
            ProductType.T021: Fraction(1, 6),
            ProductType.T022: Fraction(2, 9),
        }
    )
    return probabilities


def test_builtin_rla_expectations(rla):
    assert rla.delta == Fraction(1, 3)
    assert rla[ProductType.T24] == Fraction(2, 9)
    assert rla[ProductType.T13] == Fraction(1, 18)
    assert rla[ProductType.T12] == Fraction(1, 45)
    assert rla[ProductType.T04] == Fraction(-1, 9)
    assert rla[ProductType.T03] == Fraction(-1, 36)
    assert rla[ProductType.T021] == Fraction(-1, 90)
    assert rla[ProductType.T022] == Fraction(1, 180)
    assert rla[ProductType.T00] == 0
    assert rla[ProductType.T01] == 0


def test_builtin_table_is_shared():
    assert builtin_rla_table() is builtin_rla_table()
    assert resolve_layout("rla") is builtin_rla_table()


def test_expectation(rla):
    assert rla.expectation(3) == 1
    assert rla.expectation(0) == 0


def test_load_layout_table_with_probabilities():
    table = load_layout_table(RLA_TEXT)
    assert table.name == "rla-copy"
    assert table.is_rla()


def test_load_layout_table_with_expectations(rla):
    lines = ["delta = 1/2"] + [f"E_{w.value} = {rla[w]}" for w in ProductType]
    lines[1 + list(ProductType).index(ProductType.T24)] = "E_24 = 1/4"
    table = load_layout_table("\n".join(lines), name="mixed")
    assert table.name == "mixed"
    assert table.delta == Fraction(1, 2)
    assert not table.is_rla()


def test_load_layout_table_reports_every_offender():
    source = RLA_TEXT.replace("p_022 = 7/60\n", "").replace("p_13 = 1/6", "p_13 = one")
    with pytest.raises(LayoutTableError) as info:
        load_layout_table(source)
    offenders = " ".join(info.value.offenders)
    assert "missing type 022" in offenders
    assert "not an exact rational" in offenders


@pytest.mark.parametrize(
    "replacement",
    [
        ("p_24 = 1/3", "p_24 = 1/2"),
        ("p_00 = 1/9", "p_00 = 1/8"),
        ("p_12 = 2/15", "p_12 = 3/2"),
        ("delta = 1/3", "delta = 4/3"),
        ("p_01 = 1/9", "p_01 = 1/9\nE_01 = 1/7"),
        ("p_04 = 0", "p_04 = 0\nq_04 = 0"),
    ],
)
def test_load_layout_table_consistency(replacement):
    with pytest.raises(LayoutTableError):
        load_layout_table(RLA_TEXT.replace(*replacement))


def test_load_layout_table_needs_delta():
    with pytest.raises(LayoutTableError):
        load_layout_table(RLA_TEXT.replace("delta = 1/3", ""))


def test_read_layout_table(tmp_path):
    path = tmp_path / "rla.table"
    path.write_text(RLA_TEXT)
    assert read_layout_table(str(path)).is_rla()
    assert resolve_layout(str(path)).is_rla()


def test_from_probabilities():
    table = ExpectationTable.from_probabilities("custom", Fraction(1, 2), custom_probabilities())
    assert table[ProductType.T24] == Fraction(1, 4)
    assert table[ProductType.T04] == Fraction(-1, 4)
    assert table.to_json()["gamma"]["022"] == "-1/36"


def test_from_probabilities_missing_type():
    probabilities = custom_probabilities()
    del probabilities[ProductType.T03]
    with pytest.raises(LayoutTableError):
        ExpectationTable.from_probabilities("custom", Fraction(1, 2), probabilities)


SPHERICAL_TEXT = """
name = spherical
delta = 1/8
p_00 = 1/64
p_01 = 1/64
p_24 = 1/8
p_04 = 0
"""

SPHERICAL_REST = """
p_13 = 1/24
p_12 = 1/64
p_03 = 1/48
p_021 = 1/40
p_022 = 1/36
"""


def test_load_spherical_table():
    table = load_layout_table(SPHERICAL_TEXT + SPHERICAL_REST)
    assert table.name == "spherical"
    assert table.delta == Fraction(1, 8)
    assert table[ProductType.T24] == Fraction(7, 64)
    assert table[ProductType.T04] == Fraction(-1, 64)
    assert table[ProductType.T00] == table[ProductType.T01] == 0
    assert not table.is_rla()


def test_partial_spherical_table_lists_missing_types():
    with pytest.raises(LayoutTableError) as info:
        load_layout_table(SPHERICAL_TEXT)
    assert sorted(info.value.offenders) == sorted(
        f"missing type {code}" for code in ("13", "12", "03", "021", "022")
    )
