import random

import pytest

import oracles
from swapbribe import (
    BriberyInstance,
    CandidateSet,
    Election,
    ParseError,
    Preference,
    ReplayError,
    Rule,
    SwapPriceFn,
    SwapSequence,
    BriberySolution,
    exact_oracle,
    gen_bb_kapproval,
    gen_x3c_3approval,
    gen_x3c_borda_shift,
    gen_x3c_maximin_shift,
    gen_x3c_spav_mixed,
    parse_instance,
    parse_pw,
    parse_solution,
    parse_source,
    serialize_instance,
    serialize_pw,
    serialize_solution,
    solve_plurality_veto_swap,
    transform_sequence,
)
from swapbribe.reductions import BBInstance, X3CInstance
from swapbribe.serialize import serialize_bb, serialize_x3c

MINIMAL = """\
candidates a p
preferred p
rule plurality
budget 3
vote a p
swapprices 1
0 3
x 0
"""


def test_parse_minimal_document():
    inst = parse_instance(MINIMAL)
    assert inst.election.n == 1
    assert inst.rule.kind == "plurality"
    assert inst.budget == 3
    assert inst.swap_prices[0].price(0, 1) == 3


def test_round_trip_is_canonical():
    inst = parse_instance(MINIMAL)
    text = serialize_instance(inst)
    again = parse_instance(text)
    assert again == inst
    assert serialize_instance(again) == text


def test_parse_duplicate_candidate_in_vote():
    bad = MINIMAL.replace("vote a p", "vote a a")
    with pytest.raises(ParseError, match="line 5.*twice"):
        parse_instance(bad)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 3"):
        parse_instance("candidates a b\npreferred a\nrule nonsense\nbudget 0\n")
    with pytest.raises(ParseError, match="line 4"):
        parse_instance("candidates a b\npreferred a\nrule borda\nbudget -1\n")
    with pytest.raises(ParseError):
        parse_instance("candidates a b\npreferred a\nrule borda\n")
    shifty = ("candidates a p\npreferred p\nrule borda\nbudget 1\n"
              "vote a p\nshiftprices 1 2 1\n")
    with pytest.raises(ParseError):  # non-monotone rho
        parse_instance(shifty)


def test_spav_threshold_bounds_checked():
    doc = ("candidates a b p\npreferred p\nrule spav\nbudget 0\n"
           "vote a b p approve 3\n")
    with pytest.raises(ParseError, match="line 5"):
        parse_instance(doc)


def test_generated_instances_round_trip():
    x3c = X3CInstance.of(2, [f"b{i}" for i in range(1, 7)],
                         [(0, 1, 2), (3, 4, 5), (0, 3, 4)])
    bb = BBInstance.of(2, 1, [(0, 0), (1, 1)])
    reductions = [
        gen_x3c_3approval(x3c),
        gen_x3c_borda_shift(x3c),
        gen_bb_kapproval(bb),
        gen_x3c_maximin_shift(x3c),
        gen_x3c_spav_mixed(x3c),
    ]
    for reduction in reductions:
        text = serialize_instance(reduction.instance)
        assert parse_instance(text) == reduction.instance
        assert serialize_instance(parse_instance(text)) == text


def test_solution_document_round_trip():
    inst = parse_instance(MINIMAL)
    sol = solve_plurality_veto_swap(inst)
    text = serialize_solution(sol, inst, solver="plurality-veto")
    assert "swap 1 a p" in text
    assert "cost 3" in text
    assert "winners p" in text
    parsed = parse_solution(text, inst)
    assert parsed.total_cost == 3


def test_solution_document_empty_bribery():
    doc = MINIMAL.replace("preferred p", "preferred a")
    inst = parse_instance(doc)
    sol = exact_oracle(inst)
    text = serialize_solution(sol, inst, solver="exact")
    assert "cost 0" in text and "winners a" in text


def test_reversal_solution_document():
    cset = CandidateSet(["a", "b", "c"])
    e = Election(cset, [Preference([0, 1, 2])])
    prices = (SwapPriceFn.uniform(3, 1),)
    inst = BriberyInstance(e, Rule.plurality(), 2, 3, swap_prices=prices)
    seq = transform_sequence(Preference([0, 1, 2]), Preference([2, 1, 0]),
                             prices[0])
    sol = BriberySolution.of_swaps(seq, 3, {2})
    text = serialize_solution(sol, inst, solver="manual")
    assert text.count("swap 1 ") == 3
    assert "cost 3" in text


def test_write_solution_refuses_broken_claims():
    inst = parse_instance(MINIMAL)
    fake = BriberySolution.of_swaps(SwapSequence.empty(), 0, {1})
    with pytest.raises(ReplayError):
        serialize_solution(fake, inst, solver="bogus")


def test_parse_solution_cross_checks_winner_line():
    inst = parse_instance(MINIMAL)
    sol = solve_plurality_veto_swap(inst)
    text = serialize_solution(sol, inst, solver="x")
    tampered = text.replace("winners p", "winners a")
    with pytest.raises(ReplayError):
        parse_solution(tampered, inst)


def test_source_documents_round_trip():
    x3c = X3CInstance.of(2, [f"b{i}" for i in range(1, 7)],
                         [(0, 1, 2), (3, 4, 5)])
    assert parse_source(serialize_x3c(x3c)) == x3c
    bb = BBInstance.of(3, 2, [(0, 1), (2, 2)])
    assert parse_source(serialize_bb(bb)) == bb
    with pytest.raises(ParseError):
        parse_source("nonsense 1\n")


def test_pw_documents_round_trip():
    text = ("candidates a b p\npreferred p\nrule kapproval 1\n"
            "pvote a>b b>p\npvote\n")
    pw = parse_pw(text)
    assert len(pw.votes) == 2
    assert pw.votes[0].comparable(0, 2)  # transitive closure a > p
    assert serialize_pw(parse_pw(serialize_pw(pw))) == serialize_pw(pw)
    with pytest.raises(ParseError):
        parse_pw("candidates a b\npreferred a\nrule borda\npvote a>a\n")


def test_random_instances_round_trip():
    rng = random.Random(12)
    for trial in range(25):
        m = rng.randint(2, 4)
        n = rng.randint(0, 3)
        kind = trial % 3
        if kind == 0:
            inst = oracles.random_swap_instance(rng, m, max(n, 1))
        elif kind == 1:
            inst = oracles.random_shift_instance(rng, m, max(n, 1))
        else:
            inst = oracles.random_mixed_instance(rng, m, max(n, 1))
        text = serialize_instance(inst)
        assert parse_instance(text) == inst
