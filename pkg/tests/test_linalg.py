from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from eqtc.errors import InputError
from eqtc.linalg import Echelon, Field, axpy, nullspace, rank

FIELDS = [Field(0), Field(2), Field(3), Field(7)]


def sympy_rank(field: Field, dense):
    dom = QQ if field.p == 0 else GF(field.p)
    if not dense or not dense[0]:
        return 0
    return DomainMatrix([[dom.convert(x) for x in row] for row in dense], (len(dense), len(dense[0])), dom).rank()


def sparse(field, dense):
    return [{j: field(x) for j, x in enumerate(row) if field(x)} for row in dense]


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=0, max_size=6))


@pytest.mark.parametrize("text,p", [("Q", 0), ("QQ", 0), ("F2", 2), ("F_7", 7), ("GF(3)", 3), (5, 5), ("f97", 97)])
def test_field_parse(text, p):
    assert Field.parse(text).p == p


@pytest.mark.parametrize("bad", ["F4", "F101", "R", "F_x", 1])
def test_field_parse_rejects(bad):
    with pytest.raises(InputError):
        Field.parse(bad)


def test_field_coercion():
    assert Field(0)("-3/4") == Fraction(-3, 4)
    assert Field(7)(Fraction(1, 2)) == 4
    assert Field(5)(-1) == 4
    with pytest.raises(InputError):
        Field(3)(Fraction(1, 3))
    assert Field(0).to_json(Fraction(1, 2)) == "1/2" and Field(0).to_json(Fraction(4)) == 4


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(dense=matrices)
def test_rank_matches_sympy(field, dense):
    assert rank(field, sparse(field, dense)) == sympy_rank(field, dense)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(dense=matrices)
def test_nullspace_is_kernel_of_full_dimension(field, dense):
    cols = list(range(len(dense[0]))) if dense else [0, 1]
    rows = sparse(field, dense)
    basis = nullspace(field, rows, cols)
    for v in basis:
        for r in rows:
            assert field.norm(sum(r.get(k, 0) * x for k, x in v.items())) == 0
    assert len(basis) == len(cols) - rank(field, rows)
    assert rank(field, basis) == len(basis)


def test_echelon_tracks_combinations():
    f = Field(0)
    e = Echelon(f)
    assert e.add({0: 1, 1: 1}, "a")
    assert e.add({1: 1}, "b")
    assert not e.add({0: 2, 1: 5}, "c")
    residual, combo = e.reduce({0: 3, 1: 4})
    assert residual == {}
    # {0:3, 1:4} = 3 a + 1 b
    assert {k: v for k, v in combo.items()} == {"a": 3, "b": 1}
    assert e.contains({0: 1}) and len(e) == 2


def test_axpy_cancels_entries():
    f = Field(0)
    y = {0: Fraction(1), 1: Fraction(2)}
    axpy(f, y, Fraction(-1), {0: Fraction(1)})
    assert y == {1: 2}
