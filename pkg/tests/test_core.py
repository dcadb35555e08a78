import pytest

from corelab import core as core_mod
from corelab.core import (
    PreconditionError,
    char_scan,
    core_colon,
    core_monte_carlo,
    find_nilpotent,
    grcore_monte_carlo,
    verify_dim1,
    verify_sandwich,
    verify_standard_formula,
)
from corelab.field import FieldSpec
from corelab.ideal import PresentedRing, power, truncation_ideal
from corelab.invariants import HilbertSeries
from corelab.reductions import NotMPrimary

F = FieldSpec(32003)
Q = FieldSpec(None)
PLANE = PresentedRing(F, ["x", "y"])
PLANE_Q = PresentedRing(Q, ["x", "y"])
FERMAT = PresentedRing(F, list("xyz"), None, ["x^3 + y^3 + z^3"])
CUSP = PresentedRing(Q, ["a", "b"], [2, 3], ["b^2 - a^3"])


def m(R, k):
    return power(R.maximal_ideal(), k)


def test_core_of_maximal_ideal_is_itself():
    assert core_monte_carlo(m(PLANE, 1)).ideal.equals(m(PLANE, 1))


def test_core_of_m2_in_plane():
    rep = core_monte_carlo(m(PLANE, 2))
    assert rep.stabilized and rep.samples >= 16
    assert rep.ideal.equals(m(PLANE, 3))


def test_core_fermat_cubic():
    assert core_monte_carlo(m(FERMAT, 1)).ideal.equals(m(FERMAT, 3))


def test_grcore_plane_N3():
    assert grcore_monte_carlo(PLANE, 3).ideal.equals(m(PLANE, 5))


def test_grcore_cusp_is_unique_reduction():
    rep = grcore_monte_carlo(CUSP, 4)
    assert rep.ideal.equals(CUSP.ideal("a^2"))


def test_report_invariants():
    rep = core_monte_carlo(m(PLANE, 2), seed=5)
    # containment floor and descending dimension tables
    rmax = max(c.r for c in rep.certificates)
    assert rep.ideal.contains(power(m(PLANE, 2), rmax + 1))
    dims = [s["dims"] for s in rep.stabilization]
    for a, b in zip(dims, dims[1:]):
        assert all(x >= y for x, y in zip(a, b))
    assert all(g.is_homogeneous()[0] for g in rep.ideal.generators)


def test_seed_determinism():
    a = core_monte_carlo(m(PLANE, 2), seed=11).as_dict()
    b = core_monte_carlo(m(PLANE, 2), seed=11).as_dict()
    assert a == b


def test_parallel_matches_serial():
    a = core_monte_carlo(m(PLANE, 2), seed=2, jobs=1).as_dict()
    b = core_monte_carlo(m(PLANE, 2), seed=2, jobs=2).as_dict()
    assert a == b


def test_not_m_primary_rejected():
    with pytest.raises(NotMPrimary):
        core_monte_carlo(PLANE.ideal("x^2"))


def test_core_colon_examples():
    line = PresentedRing(Q, ["x"])
    I = line.ideal("x^3")
    C, _ = core_colon(line, I, I)
    assert C.equals(I)
    rep = core_monte_carlo(m(PLANE_Q, 2))
    C, r = core_colon(PLANE_Q, m(PLANE_Q, 2), rep.certificates[0])
    assert C.equals(m(PLANE_Q, 3)) and r >= 1


def test_core_colon_cusp():
    I = truncation_ideal(CUSP, 4)
    C, _ = core_colon(CUSP, I, CUSP.ideal("a^2"))
    # S_{>=6}: t^6 = b^2, t^7 = a^2 b; t^8 = a^4 = a b^2 lies in it
    assert C.equals(CUSP.ideal("b^2", "a^2*b"))
    assert C.contains_poly(CUSP.parse("a^4"))
    assert not C.contains_poly(CUSP.parse("a^2"))


def test_core_colon_gated_to_rationals():
    with pytest.raises(PreconditionError):
        core_colon(PLANE, m(PLANE, 2), PLANE.ideal("x^2", "y^2"))


def test_verify_standard_examples():
    assert verify_standard_formula(PLANE, 2).verdict == "consistent"
    rep = verify_standard_formula(PresentedRing(F, list("xyz")), 2)
    assert rep.verdict == "consistent" and rep.candidate_text == "m^4"


def test_verify_standard_rejections():
    with pytest.raises(PreconditionError, match="not reduced"):
        verify_standard_formula(PresentedRing(F, ["x", "y"], None, ["x^2"]), 1)
    flagged = PresentedRing(F, ["x", "y"], None, ["x*y"], reduced=False)
    with pytest.raises(PreconditionError, match="flagged"):
        verify_standard_formula(flagged, 1)
    with pytest.raises(PreconditionError, match="standard graded"):
        verify_standard_formula(CUSP, 4)
    planes = PresentedRing(F, list("xyzw"), None, ["x*z", "x*w", "y*z", "y*w"])
    with pytest.raises(PreconditionError, match="Cohen-Macaulay"):
        verify_standard_formula(planes, 1)


def test_wrong_candidate_is_refuted_with_witness(monkeypatch):
    real = HilbertSeries.a_invariant
    monkeypatch.setattr(HilbertSeries, "a_invariant", lambda self: real(self) - 1)
    rep = verify_standard_formula(PLANE, 2)
    assert rep.verdict == "refuted"
    f = PLANE.parse(rep.witness.polynomial)
    # recheck from scratch: f is in the candidate m^2 but outside some reduction
    assert m(PLANE, 2).contains_poly(f)
    assert any(not c.reduction.contains_poly(f) for c in rep.certificates)


def test_nilpotent_detection():
    fermat3 = PresentedRing(FieldSpec(3, warn=False), list("xyz"), None, ["x^3 + y^3 + z^3"])
    assert find_nilpotent(fermat3) is not None
    assert find_nilpotent(FERMAT) is None
    assert str(find_nilpotent(PresentedRing(F, ["x", "y"], None, ["x^2*y"]))) == "x*y"


def test_char_scan_fermat():
    rows, same = char_scan(FERMAT, 1, [3, 7, 13], rationals=False)
    verdicts = {r.field: r.verdict for r in rows}
    assert verdicts == {"p=3": "rejected", "p=7": "consistent", "p=13": "consistent"}
    assert same


def test_sandwich_plane_degenerate():
    rep = verify_sandwich(PLANE, 2)
    assert rep.verdict == "consistent"
    assert rep.extra["gaps"] == [] and rep.checks["grcore_equals_upper"]


def test_sandwich_fermat():
    rep = verify_sandwich(FERMAT, 1)
    assert rep.verdict == "consistent" and rep.ideal.equals(m(FERMAT, 3))


def test_dim1_examples():
    node = PresentedRing(Q, ["x", "y"], None, ["x*y"])
    res = verify_dim1(node, 2)
    assert res.equal and res.nzd_degree_one and not res.theorem_violation
    line = PresentedRing(Q, ["x"])
    res = verify_dim1(line, 3)
    assert res.equal and res.core.equals(line.ideal("x^3"))
    res = verify_dim1(CUSP, 4)
    assert not res.equal and not res.nzd_degree_one and not res.theorem_violation
    assert res.grcore_colon_agrees


def test_dim1_rejects_other_dimensions():
    with pytest.raises(PreconditionError):
        verify_dim1(PLANE_Q, 2)


def test_gap_set():
    gap = PresentedRing(F, ["a", "b", "u"], [2, 3, 2], ["b^2 - a^3"])
    assert core_mod.gap_set(gap, 10) == [1]


def test_gap_ring_sandwich_at_first_usable_even_degree():
    # S_3·S is not m-primary here; N = 4 is the smallest N >= 3 the engine can run
    gap = PresentedRing(F, ["a", "b", "u"], [2, 3, 2], ["b^2 - a^3"])
    rep = verify_sandwich(gap, 4, min_samples=48)
    assert rep.verdict == "consistent" and rep.samples >= 48
    assert rep.extra["upper_gap_degrees"] == [6]
    assert rep.checks["grcore_equals_upper"]
    with pytest.raises(NotMPrimary, match="smallest usable N is 2"):
        verify_sandwich(gap, 3)
