import random

import pytest
from hypothesis import given, strategies as st

from corelab.field import FieldSpec
from corelab.groebner import (
    BudgetExceeded,
    buchberger,
    divide_with_remainder,
    eliminate,
    is_groebner,
    normal_form,
)
from corelab.linalg import macaulay_member
from corelab.poly import PolyRing
from strategies import XYZ, generator_lists, homogeneous

R = XYZ


def P(s, ring=R):
    return ring.parse(s)


def strs(G):
    return sorted(str(g) for g in G)


def test_simple_bases():
    assert strs(buchberger([P("x+y"), P("y")])) == ["x", "y"]
    G = buchberger([P("x^2 - y"), P("x*y - z")])
    assert is_groebner(list(G), G.order)


def test_twisted_cubic_elimination():
    T = PolyRing(FieldSpec(32003), ["t", "x", "y", "z"])
    gens = [T.parse("x - t"), T.parse("y - t^2"), T.parse("z - t^3")]
    sub, out = eliminate(gens, ["t"])
    assert sub.names == ("x", "y", "z")
    G = buchberger(out)
    assert strs(G) == ["x*y - z", "x^2 - y", "y^2 - x*z"]


def test_normal_form_and_division():
    f = P("x^2 + y")
    assert normal_form(f, [P("x^2 - y")], R.order) == P("2*y")
    qs, r = divide_with_remainder(P("x^2*y + x*y^2 + y^2"), [P("x*y - 1"), P("y^2 - 1")])
    total = qs[0] * P("x*y - 1") + qs[1] * P("y^2 - 1") + r
    assert total == P("x^2*y + x*y^2 + y^2")


def test_degree_cap_truncates():
    G = buchberger([P("x^2 - y*z"), P("x*y - z^2")], degree_cap=2)
    assert G.truncated
    full = buchberger([P("x^2 - y*z"), P("x*y - z^2")])
    assert not full.truncated
    assert all(g.degree() <= 2 for g in G)


def test_pair_budget():
    with pytest.raises(BudgetExceeded):
        buchberger([P("x^3 - y*z^2"), P("y^3 - x*z^2"), P("z^3 - x*y^2")], max_pairs=1)


@given(generator_lists())
def test_buchberger_criterion_exhaustive(gens):
    G = buchberger(gens)
    assert is_groebner(list(G), G.order)
    for g in gens:
        assert G.reduces_to_zero(g)


@given(generator_lists(), st.randoms(use_true_random=False))
def test_reduced_basis_unique_under_permutation(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    # scaling generators must not matter either
    scaled = [g.scale(rnd.randint(1, 32002)) for g in shuffled]
    assert list(buchberger(gens)) == list(buchberger(scaled))


@given(generator_lists(max_gens=3, max_degree=2), homogeneous(max_degree=4))
def test_membership_matches_macaulay_oracle(gens, f):
    G = buchberger(gens)
    assert G.reduces_to_zero(f) == macaulay_member(f, gens)


@given(generator_lists(max_gens=2, max_degree=2), homogeneous(max_degree=2), homogeneous(max_degree=2))
def test_combinations_are_members(gens, a, b):
    G = buchberger(gens)
    f = a * gens[0] + (b * gens[-1])
    assert G.reduces_to_zero(f)


def test_rational_coefficients():
    Q = PolyRing(FieldSpec(None), ["x", "y"])
    G = buchberger([Q.parse("2x^2 - 3y^2"), Q.parse("x*y")])
    assert is_groebner(list(G), G.order)
    assert all(g.lc() == 1 for g in G)


def test_random_dense_ideal_is_groebner():
    rng = random.Random(3)
    from corelab.invariants import random_combination
    from corelab.linalg import monomials_of_degree

    basis = [R.monomial(m) for m in monomials_of_degree(R.weights, 2)]
    gens = [random_combination(basis, R.field, rng) for _ in range(3)]
    G = buchberger(gens)
    assert is_groebner(list(G), G.order)
