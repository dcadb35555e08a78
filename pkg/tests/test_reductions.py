import itertools

import pytest

from corelab.field import FieldSpec
from corelab.ideal import PresentedRing, power
from corelab.reductions import (
    NotMPrimary,
    NotSubideal,
    derived_rng,
    graded_reduction_stream,
    reduction_number,
    sample_minimal_reduction,
    smallest_m_primary_degree,
)

F = FieldSpec(32003)
S = PresentedRing(F, ["x", "y"])
M2 = power(S.maximal_ideal(), 2)


def test_reduction_numbers():
    assert reduction_number(S.ideal("x^2", "y^2"), M2) == 1
    assert reduction_number(S.ideal("x^2"), M2) is None
    assert reduction_number(M2, M2) == 0
    with pytest.raises(NotSubideal):
        reduction_number(S.ideal("x"), M2)


def test_sampled_reduction_certificates_verify():
    for i in range(5):
        c = sample_minimal_reduction(M2, derived_rng(0, i), seed_label=f"0:{i}")
        assert len(c.reduction.generators) == 2
        assert c.verify()
        assert c.r == 1


def test_stream_is_seed_deterministic():
    a = [c.as_dict() for c in itertools.islice(graded_reduction_stream(S, 2, 7), 4)]
    b = [c.as_dict() for c in itertools.islice(graded_reduction_stream(S, 2, 7), 4)]
    c = [c.as_dict() for c in itertools.islice(graded_reduction_stream(S, 2, 8), 4)]
    assert a == b and a != c


def test_stream_sample_depends_only_on_index():
    first = next(itertools.islice(graded_reduction_stream(S, 2, 3), 2, 3)).as_dict()
    alone = sample_minimal_reduction(M2, derived_rng(3, 2), seed_label="3:2").as_dict()
    assert first == alone


def test_gap_ring_smallest_degree():
    gap = PresentedRing(F, ["a", "b", "u"], [2, 3, 2], ["b^2 - a^3"])
    assert smallest_m_primary_degree(gap) == 2
    with pytest.raises(NotMPrimary, match="smallest usable N is 2"):
        next(graded_reduction_stream(gap, 3))


def test_cusp_graded_reductions_are_principal():
    cusp = PresentedRing(FieldSpec(None), ["a", "b"], [2, 3], ["b^2 - a^3"])
    c = next(graded_reduction_stream(cusp, 4))
    assert len(c.reduction.generators) == 1
    assert c.reduction.equals(cusp.ideal("a^2"))
