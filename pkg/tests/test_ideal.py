import pytest
from hypothesis import given, settings

from corelab.field import FieldSpec
from corelab.ideal import (
    ColonError,
    PresentedRing,
    RingError,
    colon,
    colon_degreewise,
    colon_element,
    degree_piece_basis,
    equal_degree_ideal,
    intersect,
    power,
    product,
    truncation_ideal,
)
from corelab.linalg import Subspace, ideal_piece
from strategies import generator_lists

F = FieldSpec(32003)
Q = FieldSpec(None)
S = PresentedRing(F, ["x", "y", "z"])
CUSP = PresentedRing(Q, ["a", "b"], [2, 3], ["b^2 - a^3"])


def gens_str(I):
    return sorted(str(g) for g in I.reduced_basis())


def piece_dim(gens, n):
    return len(ideal_piece(gens, n, S.ambient)) if gens else 0


def test_presented_ring_validation():
    with pytest.raises(RingError):
        PresentedRing(F, ["x", "y"], None, ["x^2 - y"])
    with pytest.raises(RingError):
        PresentedRing(F, ["x"], [0])
    with pytest.raises(RingError):
        PresentedRing(F, ["x"], None, ["1"])


def test_nonhomogeneous_generator_rejected():
    with pytest.raises(RingError):
        S.ideal("x^2 + y")


def test_generators_reduced_modulo_relations():
    I = CUSP.ideal("b^2")
    assert [str(g) for g in I.generators] == [str(CUSP.reduce(CUSP.parse("b^2")))]
    assert I.contains_poly(CUSP.parse("a^3"))


def test_degree_pieces_of_cusp():
    assert [len(degree_piece_basis(CUSP, n)) for n in range(9)] == [1, 0, 1, 1, 1, 1, 1, 1, 1]
    assert [str(b) for b in degree_piece_basis(CUSP, 6)] == ["b^2"]


def test_truncation_and_equal_degree():
    # generators after pruning; the reduced basis also shows b^2 = a^3
    assert sorted(str(g) for g in truncation_ideal(CUSP, 4).generators) == ["a*b", "a^2"]
    assert [str(g) for g in equal_degree_ideal(CUSP, 4).generators] == ["a^2"]
    assert truncation_ideal(CUSP, 4).contains_poly(CUSP.parse("b^2"))
    m = S.maximal_ideal()
    assert truncation_ideal(S, 2).equals(power(m, 2))


def test_membership_in_quotient():
    I = CUSP.ideal("a")
    assert I.contains_poly(CUSP.parse("b^2"))
    assert not I.contains_poly(CUSP.parse("b"))


def test_known_intersection_and_colon():
    x, y = S.ideal("x"), S.ideal("y")
    assert gens_str(intersect(x, y)) == ["x*y"]
    I = S.ideal("x^2", "x*y")
    assert gens_str(colon_element(I, S.parse("x"))) == ["x", "y"]
    assert gens_str(colon(I, S.ideal("y"))) == ["x"]
    assert colon_element(I, S.parse("x^2")).is_unit()
    with pytest.raises(ValueError):
        colon(I, S.zero_ideal())


def test_colon_in_quotient_ring():
    node = PresentedRing(Q, ["x", "y"], None, ["x*y"])
    assert gens_str(colon_element(node.zero_ideal(), node.parse("x"))) == ["y"]
    assert colon_element(node.zero_ideal(), node.parse("x + y")).is_zero


def test_colon_error_type_exists():
    assert issubclass(ColonError, ArithmeticError)


@given(generator_lists(max_gens=2, max_degree=2), generator_lists(max_gens=2, max_degree=2))
@settings(max_examples=25)
def test_intersection_matches_dimension_oracle(a, b):
    I, J = S.ideal(a), S.ideal(b)
    K = intersect(I, J)
    for n in range(5):
        # dim (I ∩ J)_n = dim I_n + dim J_n - dim (I + J)_n
        expect = piece_dim(a, n) + piece_dim(b, n) - piece_dim(a + b, n)
        assert K.piece_dimension(n) == expect


@given(generator_lists(max_gens=2, max_degree=2), generator_lists(max_gens=2, max_degree=2))
@settings(max_examples=20)
def test_colon_matches_degreewise_oracle(a, b):
    I, J = S.ideal(a), S.ideal(b)
    C = colon(I, J)
    oracle = colon_degreewise(I, J, 3)
    for n, piece in enumerate(oracle):
        assert C.piece_dimension(n) == len(piece)
        assert all(C.contains_poly(f) for f in piece)


@given(generator_lists(max_gens=2, max_degree=2), generator_lists(max_gens=2, max_degree=2))
@settings(max_examples=25)
def test_lattice_identities(a, b):
    I, J = S.ideal(a), S.ideal(b)
    assert intersect(I, I + J).equals(I)
    assert (I + intersect(I, J)).equals(I)
    assert intersect(I, J).contains(product(I, J))
    assert intersect(I, J).equals(intersect(J, I))
    assert colon(I, J).contains(I)
    assert I.contains(product(colon(I, J), J))


@given(generator_lists(max_gens=2, max_degree=2))
@settings(max_examples=15)
def test_power_and_product_agree(a):
    I = S.ideal(a)
    assert power(I, 2).equals(product(I, I))
    assert power(I, 0).is_unit()


def test_piece_basis_echelon():
    I = S.ideal("x^2", "x*y")
    basis = I.piece_basis(3)
    sp = Subspace(S.ambient)
    assert all(sp.add(b) for b in basis)
    assert len(basis) == I.piece_dimension(3) == 5
