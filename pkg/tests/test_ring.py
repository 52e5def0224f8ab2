import pytest
from hypothesis import given, strategies as st

from eqtc.errors import BudgetError, InputError, RingAxiomError
from eqtc.moment_angle import zk_betti
from eqtc.ring import (TensorPower, build_ring, cup_length, cup_length_bound, sphere_ring, tensor_product,
                       user_ring, zcl, zero_divisor_kernel)
from eqtc.simplicial import SimplicialComplex
from strategies import complexes, join

C4 = SimplicialComplex.cycle(4)


def poincare(R):
    out = [0] * (max(R.degrees) + 1)
    for d in R.degrees:
        out[d] += 1
    return out


@pytest.mark.parametrize("field", ["Q", "F2"])
@given(K=complexes(max_m=5, max_facets=4))
def test_ring_axioms_and_betti(field, K):
    R = build_ring(K, field)
    assert R.violations() == []
    betti = zk_betti(K, field)
    while betti and betti[-1] == 0:
        betti.pop()
    assert poincare(R) == betti


@given(K=complexes(max_m=5, max_facets=4))
def test_overlapping_supports_multiply_to_zero(K):
    R = build_ring(K)
    for a in range(R.dim):
        for b in range(R.dim):
            if set(R.classes[a].J) & set(R.classes[b].J):
                assert not R.mul(a, b)


@given(K=complexes(max_m=3, max_facets=2), L=complexes(max_m=3, max_facets=2))
def test_cup_length_is_additive_on_joins(K, L):
    # H*(Z_{K*L}) = H*(Z_K) (x) H*(Z_L)
    assert cup_length(build_ring(join(K, L))) == cup_length(build_ring(K)) + cup_length(build_ring(L))


def test_square_gives_s3_times_s3():
    R = build_ring(C4)
    assert R.degrees == [0, 3, 3, 6]
    x, y = 1, 2
    assert R.mul(x, y) and R.mul(x, y) == {3: -R.mul(y, x)[3]}
    assert not R.mul(x, x)
    assert cup_length(R) == 2 and zcl(R) == 2


def test_bipyramid_products_commute_with_sign():
    # the case that separates a correct sign rule from a wrong one
    K = SimplicialComplex.from_faces(5, [[a, b, p] for a, b in ((1, 2), (1, 3), (2, 3)) for p in (4, 5)])
    R = build_ring(K)
    assert R.violations() == []
    assert poincare(R) == [1, 0, 0, 1, 0, 1, 0, 0, 1]
    assert cup_length(R) == 2


@pytest.mark.parametrize("d", [1, 3, 5])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_odd_sphere_zcl(d, n):
    assert zcl(sphere_ring(d), n) == n - 1


@pytest.mark.parametrize("n", [2, 3])
def test_even_sphere_zcl(n):
    assert zcl(sphere_ring(2), n) == n


@pytest.mark.parametrize("field", ["Q", "F2", "F3"])
def test_torus_zcl(field):
    S1 = sphere_ring(1, field)
    T3 = tensor_product(tensor_product(S1, S1), S1)
    assert T3.dim == 8 and T3.violations() == []
    assert zcl(T3) == 3 and cup_length(T3) == 3


def test_kernel_has_codimension_dim():
    R = build_ring(C4)
    assert len(zero_divisor_kernel(R, 2)) == R.dim ** 2 - R.dim


def test_koszul_sign_in_tensor_square():
    R = sphere_ring(3)
    T = TensorPower(R, 2)
    assert T.basis_product((0, 1), (1, 0)) == {(1, 1): -1}
    assert T.basis_product((1, 0), (0, 1)) == {(1, 1): 1}


def test_zcl_budget_and_arguments():
    R = build_ring(C4)
    with pytest.raises(BudgetError):
        zcl(R, 3, max_tensor_dim=10)
    with pytest.raises(InputError):
        zcl(R, 1)
    with pytest.raises(BudgetError):
        build_ring(SimplicialComplex.cycle(8), max_vertices=6)


def test_user_ring_round_trip_and_zero_default():
    spec = {"field": "Q", "unit": "1",
            "basis": [{"label": "1", "degree": 0}, {"label": "a", "degree": 2}, {"label": "b", "degree": 4}],
            "products": [["a", "a", {"b": 1}]]}
    R = user_ring(spec)
    assert R.mul(1, 2) == {} and R.mul(1, 1) == {2: 1}
    again = user_ring(R.to_json())
    assert again.table == R.table and again.degrees == R.degrees
    assert cup_length(R) == 2


@pytest.mark.parametrize("products,error", [
    ([["a", "b", {"c": 1}]], RingAxiomError),          # b*a missing: not graded commutative
    ([["a", "a", {"a": 1}]], RingAxiomError),          # degree 2 != 1 + 1
    ([["a", "z", {"c": 1}]], InputError),               # unknown label
])
def test_user_ring_rejects(products, error):
    spec = {"basis": [{"label": "1", "degree": 0}, {"label": "a", "degree": 1},
                      {"label": "b", "degree": 1}, {"label": "c", "degree": 2}],
            "products": products}
    with pytest.raises(error):
        user_ring(spec)


def test_user_ring_rejects_nonassociative():
    # (a a) b = c b = e but a (a b) = 0; degrees and commutativity are fine
    basis = [{"label": "1", "degree": 0}, {"label": "a", "degree": 2}, {"label": "b", "degree": 2},
             {"label": "c", "degree": 4}, {"label": "e", "degree": 6}]
    products = [["a", "a", {"c": 1}], ["c", "b", {"e": 1}], ["b", "c", {"e": 1}]]
    with pytest.raises(RingAxiomError, match="associativity"):
        user_ring({"basis": basis, "products": products})


@given(d=st.integers(1, 6))
def test_cup_length_bound_leaf(d):
    b = cup_length_bound("X", sphere_ring(d))
    assert b.interval.lo == 2 and b.source == "cohomology_ring"


def test_markdown_lists_products():
    md = build_ring(C4).to_markdown()
    assert "x1 * x2 =" in md and "| x3 |" in md
