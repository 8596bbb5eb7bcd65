import random

import pytest

from sylowkit.corpus import group_by_name
from sylowkit.errors import NotSylow, PreconditionError
from sylowkit.escalation import (
    CASE1, CASE2, check_involution_dichotomy, escalation_step, find_conjugator,
)
from sylowkit.groups import (
    center, conjugate_subgroup, find_subgroup_conjugator, generate_subgroup, intersection,
    whole_group,
)
from sylowkit.sylow import all_sylow_p


def distinct_pairs(G):
    subs = all_sylow_p(G, 2)
    return [(P, Q) for P in subs for Q in subs if P != Q]


def test_step_s4_reaches_equality_on_some_leg():
    G = group_by_name("S4")
    P, Q = distinct_pairs(G)[0]
    assert intersection(P, Q).order == 4
    step = escalation_step(G, P, Q)
    assert step.D_order == 4
    assert any(n >= 8 for _, _, n in step.pairs)


def test_step_rejects_equal_and_non_sylow():
    V = group_by_name("C2xC2")
    W = whole_group(V)
    with pytest.raises(PreconditionError):
        escalation_step(V, W, W)
    G = group_by_name("S4")
    P, _ = distinct_pairs(G)[0]
    small = generate_subgroup(G, [G.id_of("(1,2)")])
    with pytest.raises(NotSylow):
        escalation_step(G, P, small)


def test_step_d12_center_intersection():
    G = group_by_name("D12")
    Z = center(G)
    pairs = [(P, Q) for P, Q in distinct_pairs(G) if intersection(P, Q) == Z]
    assert pairs
    for P, Q in pairs:
        step = escalation_step(G, P, Q)
        assert step.kind in (CASE1, CASE2)
        assert step.D_order == 2
        assert all(n == 4 for _, _, n in step.pairs)


def test_case1_step_conjugates_the_pair():
    G = group_by_name("S4")
    P, Q = distinct_pairs(G)[0]
    step = escalation_step(G, P, Q)
    assert step.kind == CASE1
    P1, Q1, _ = step.pairs[0]
    assert P1 == conjugate_subgroup(P, step.conjugator) and Q1 == Q


def test_identical_pair_gives_identity():
    G = group_by_name("S4")
    P = all_sylow_p(G, 2)[0]
    trace = find_conjugator(G, P, P)
    assert trace.conjugator == 0 and trace.rounds == 0 and trace.verify()


@pytest.mark.parametrize("name,max_rounds", [("S4", 3), ("A5", None), ("S5", None), ("D12", None)])
def test_all_pairs_verified_against_oracle(name, max_rounds):
    G = group_by_name(name)
    for P, Q in distinct_pairs(G):
        trace = find_conjugator(G, P, Q)
        assert trace.verify() and trace.is_monotone()
        assert conjugate_subgroup(P, trace.conjugator) == Q
        assert find_subgroup_conjugator(G, P, Q) is not None
        if max_rounds is not None:
            assert trace.rounds <= max_rounds


@pytest.mark.parametrize("name", ["S3xS3", "S4xS3", "S5"])
def test_random_choices_exercise_case2(name):
    G = group_by_name(name)
    rng = random.Random(1)
    kinds = set()
    for P, Q in distinct_pairs(G)[:60]:
        trace = find_conjugator(G, P, Q, rng=rng)
        assert trace.verify() and trace.is_monotone()
        kinds |= {s.kind for s in trace.steps}
    assert CASE2 in kinds


def test_case2_step_structure():
    G = group_by_name("S3xS3")
    rng = random.Random(1)
    for P, Q in distinct_pairs(G):
        trace = find_conjugator(G, P, Q, rng=rng)
        for s in trace.steps:
            if s.kind == CASE2:
                assert len(s.pairs) == 3 and s.k is not None
                assert all(n > s.D_order for _, _, n in s.pairs)
                return
    pytest.fail("no case-2 step observed")


def test_trace_to_dict_names_elements():
    G = group_by_name("S4")
    P, Q = distinct_pairs(G)[0]
    d = find_conjugator(G, P, Q).to_dict()
    assert d["group"] == "S4" and d["steps"][0]["kind"] == CASE1
    assert d["conjugator"].startswith("(")


def test_dichotomy_examples():
    V = group_by_name("C2xC2")
    rep = check_involution_dichotomy(V)
    assert rep.ok and rep.pairs_checked == 3
    # a and b are not conjugate; ab commutes with both
    a, b = V.id_of("(1,g)"), V.id_of("(g,1)")
    y = V.mul(a, b)
    assert V.commute(y, a) and V.commute(y, b)
    S = group_by_name("S3")
    g, h, t = S.id_of("(1,2)"), S.id_of("(1,3)"), S.id_of("(2,3)")
    assert S.conj(t, g) == h
    assert check_involution_dichotomy(S).ok
    Q = check_involution_dichotomy(group_by_name("Q8"))
    assert Q.ok and Q.pairs_checked == 0 and Q.involution_count == 1


@pytest.mark.parametrize("name", ["S4", "D12", "A5", "Q8xC2", "S3xS3", "D8xC2"])
def test_dichotomy_no_failures(name):
    rep = check_involution_dichotomy(group_by_name(name))
    assert rep.ok and not rep.failures
