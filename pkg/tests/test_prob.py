import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import CORPUS, NOT_FREE
from ftcrit.cutset import form_from_sets, minimal_cut_sets
from ftcrit.errors import (
    NegativeRate,
    NegativeTime,
    NotFreeViolation,
    ProbabilityOutOfRange,
    TooManyCuts,
)
from ftcrit.model import BasicEvent, Or, build_tree
from ftcrit.prob import (
    and_prob,
    event_probabilities,
    exp_cdf,
    nand_prob,
    nor_prob,
    or_prob,
    pie_probability,
    probability,
    system_unreliability,
    xor_prob,
)
from ftcrit.structure import oracle_probability
from oracle import enumerate_probability
from treegen import random_tree

unit = st.floats(0.0, 1.0)


def test_exp_cdf_cases():
    assert exp_cdf(3.0, 0.0) == 0.0
    assert exp_cdf(0.0, 50.0) == 0.0
    assert abs(exp_cdf(18e-3, 2000) - (1 - math.exp(-36))) <= 1e-15
    assert exp_cdf(1e-12, 1.0) == pytest.approx(1e-12, rel=1e-12)


def test_exp_cdf_errors():
    with pytest.raises(NegativeRate):
        exp_cdf(-1.0, 1.0)
    with pytest.raises(NegativeTime):
        exp_cdf(1.0, -1.0)


def test_gate_identities():
    assert and_prob([]) == 1.0
    assert or_prob([]) == 0.0
    assert or_prob([0.1, 0.2]) == pytest.approx(0.28, abs=1e-15)
    assert xor_prob(0.3, 0.5) == pytest.approx(0.5, abs=1e-15)


def test_gate_range_check():
    with pytest.raises(ProbabilityOutOfRange):
        and_prob([0.5, 1.2])
    with pytest.raises(ProbabilityOutOfRange):
        xor_prob(-0.1, 0.5)


def _enumerated(fn, ps):
    """Sum over outcomes of Π weights where fn(outcome) holds."""
    total = []
    for bits in itertools.product((0, 1), repeat=len(ps)):
        if fn(bits):
            w = 1.0
            for b, p in zip(bits, ps):
                w *= p if b else 1 - p
            total.append(w)
    return math.fsum(total)


@given(st.lists(unit, min_size=1, max_size=4))
def test_gates_match_enumeration(ps):
    assert and_prob(ps) == pytest.approx(_enumerated(all, ps), abs=1e-15)
    assert or_prob(ps) == pytest.approx(_enumerated(any, ps), abs=1e-15)
    assert nor_prob(ps) == pytest.approx(_enumerated(lambda b: not any(b), ps), abs=1e-15)
    k = len(ps) // 2
    expected = _enumerated(lambda b: not any(b[:k]) and all(b[k:]), ps)
    assert nand_prob(ps[:k], ps[k:]) == pytest.approx(expected, abs=1e-15)


@given(st.lists(unit, max_size=6))
def test_nor_is_complement_of_or(ps):
    assert nor_prob(ps) == 1.0 - or_prob(ps)


def test_pie_examples():
    assert pie_probability(form_from_sets([{"x1"}, {"x2"}]), {"x1": 0.1, "x2": 0.2}) == pytest.approx(0.28, abs=1e-16)
    half = {"x1": 0.5, "x2": 0.5, "x3": 0.5}
    assert pie_probability(form_from_sets([{"x1", "x2"}, {"x1", "x3"}]), half) == 0.375
    assert pie_probability(form_from_sets([{"x1", "x2"}]), {"x1": 0.1, "x2": 0.2}) == pytest.approx(0.02, abs=1e-17)


def test_pie_degenerate_forms():
    assert pie_probability(form_from_sets([]), {}) == 0.0
    assert pie_probability(form_from_sets([set()]), {}) == 1.0


def test_pie_cap():
    cuts = [{f"x{k}"} for k in range(26)]
    with pytest.raises(TooManyCuts):
        pie_probability(form_from_sets(cuts), {f"x{k}": 0.1 for k in range(26)})


def test_pie_against_reference_enumeration():
    rng = random.Random(23)
    for _ in range(40):
        tree = random_tree(rng, max_events=8)
        probs = {e: rng.random() for e in tree.event_ids}
        form = minimal_cut_sets(tree)
        if len(form) <= 25:
            assert pie_probability(form, probs) == pytest.approx(enumerate_probability(tree, probs), abs=1e-12)


def test_pie_many_cuts_many_events():
    # 20 disjoint pairs: 20 cuts over 40 events, beyond a single 64-bit block in size
    ids = [f"y{k}" for k in range(40)]
    cuts = [{ids[2 * k], ids[2 * k + 1]} for k in range(20)]
    rng = random.Random(2)
    probs = {e: rng.uniform(0.05, 0.4) for e in ids}
    expected = 1 - math.prod(1 - probs[a] * probs[b] for a, b in (sorted(c) for c in cuts))
    assert pie_probability(form_from_sets(cuts, order=ids), probs) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("name", sorted(NOT_FREE))
@pytest.mark.parametrize("t", [0, 1, 10, 100])
def test_corpus_oracle_equivalence(name, t):
    tree = NOT_FREE[name]
    probs = event_probabilities(tree, t)
    assert abs(system_unreliability(tree, t) - oracle_probability(tree, probs)) <= 1e-12


def test_path_equivalence():
    rng = random.Random(29)
    checked = 0
    while checked < 100:
        tree = random_tree(rng, max_events=10, repeat_prob=0.0)
        probs = {e: rng.random() for e in tree.event_ids}
        if len(minimal_cut_sets(tree)) > 25:
            continue
        a = probability(tree, probs, method="bottom_up")
        b = probability(tree, probs, method="pie")
        assert abs(a - b) <= 1e-12
        checked += 1


def test_bottom_up_refuses_repeats():
    with pytest.raises(ValueError):
        probability(CORPUS["bridge"], event_probabilities(CORPUS["bridge"], 1.0), method="bottom_up")


def test_repeated_not_falls_back_to_enumeration():
    tree = CORPUS["xor"]
    probs = event_probabilities(tree, 30.0)
    assert system_unreliability(tree, 30.0) == oracle_probability(tree, probs)
    with pytest.raises(NotFreeViolation):
        probability(tree, probs, method="pie")


def test_not_without_repeats_uses_closed_form():
    tree = build_tree([BasicEvent("a", "", 0.1)], Or([_not("a")]))
    assert system_unreliability(tree, 1.0) == pytest.approx(math.exp(-0.1), abs=1e-15)


def _not(x):
    from ftcrit.model import Not
    return Not(x)


@pytest.mark.parametrize("name", sorted(NOT_FREE))
def test_monotone_in_time(name):
    tree = NOT_FREE[name]
    grid = np.linspace(0, 3000, 50)
    values = [system_unreliability(tree, float(t)) for t in grid]
    # the closed form is exactly monotone; alternating PIE sums carry rounding
    # of up to the 1e-12 accuracy bound once F saturates near 1
    slack = 1e-12 if tree.repeated_events else 0.0
    assert all(a <= b + slack for a, b in zip(values, values[1:]))


def test_case_study_examples(casestudy):
    assert system_unreliability(casestudy, 0) == 0.0
    assert system_unreliability(casestudy, 2000) >= 0.999999
    rates = {e.id: e.rate for e in casestudy.events}
    t = 5.0
    surv = lambda e: math.exp(-rates[e] * t)
    pairs = [("x9", "x10"), ("x13", "x14"), ("x15", "x16"), ("x11", "x12")]
    block = math.prod(1 - surv(a) * surv(b) for a, b in pairs)
    closed = 1 - math.prod(surv(f"x{k}") for k in range(1, 9)) * (1 - block)
    assert abs(system_unreliability(casestudy, t) - closed) <= 1e-12


def _many_cut_tree():
    # 26 singleton cuts plus a repeated event forces the cut-set route
    ids = [f"z{k}" for k in range(1, 27)]
    events = [BasicEvent(e, "", 1e-3 * k) for k, e in enumerate(ids, 1)]
    from ftcrit.model import And
    return build_tree(events, Or(ids[:-1] + [And([ids[-1], ids[0]])]))


def test_too_many_cuts_falls_back_within_event_cap(monkeypatch):
    monkeypatch.setenv("FTCRIT_MAX_EVENTS", "26")
    tree = _many_cut_tree()
    assert len(minimal_cut_sets(tree)) == 25
    probs = event_probabilities(tree, 10.0)
    assert probability(tree, probs, pie_cap=24) == oracle_probability(tree, probs)
    with pytest.raises(TooManyCuts):
        probability(tree, probs, method="pie", pie_cap=24)


def test_too_many_cuts_beyond_event_cap(monkeypatch):
    monkeypatch.setenv("FTCRIT_MAX_EVENTS", "20")
    tree = _many_cut_tree()
    with pytest.raises(TooManyCuts):
        probability(tree, event_probabilities(tree, 10.0), pie_cap=24)
