import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, CORPUS_DIR
from ftcrit.casestudy import casestudy_text
from ftcrit.model import And, BasicEvent, Or, build_tree, xor
from ftcrit.parser import ParseError, parse_ftdl, serialize_ftdl, tokenize
from treegen import random_tree


def test_two_event_example():
    tree = parse_ftdl('event x1 rate 18e-3 "Vehicle Failure"\nevent x2 rate 1.347e-4 "Human Factor"\ntop OR(x1, x2)')
    assert tree.event_ids == ("x1", "x2")
    assert tree.top == Or(["x1", "x2"])
    assert tree.event("x1").rate == 18e-3
    assert tree.event("x1").label == "Vehicle Failure"


def test_empty_or_without_events():
    tree = parse_ftdl("top OR()")
    assert tree.events == () and tree.top == Or([])


def test_negative_rate_is_semantic():
    with pytest.raises(ParseError) as info:
        parse_ftdl('event x1 rate -1 "bad"\ntop OR(x1)')
    assert info.value.kind == "Semantic"
    assert (info.value.line, info.value.column) == (1, 15)


def test_canonical_single_event():
    tree = build_tree([BasicEvent("x1")], Or(["x1"]))
    assert serialize_ftdl(tree) == 'event x1 rate 0 ""\ntop OR(x1)\n'


def test_xor_is_written_desugared_with_note():
    text = serialize_ftdl(parse_ftdl('event a rate 1 ""\nevent b rate 2 ""\ntop XOR(a, b)'))
    assert "XOR(a, b)" in text.splitlines()[2]
    assert text.splitlines()[2].startswith("#")
    assert text.splitlines()[-1] == "top OR(AND(NOT(a), b), AND(a, NOT(b)))"
    assert parse_ftdl(text).top == xor("a", "b")


def test_nand_is_not_and():
    tree = parse_ftdl('event a rate 1 ""\nevent b rate 1 ""\ntop NAND(a, b)')
    assert serialize_ftdl(tree).splitlines()[-1] == "top NOT(AND(a, b))"


def test_case_study_fixpoint():
    once = serialize_ftdl(parse_ftdl(casestudy_text()))
    assert serialize_ftdl(parse_ftdl(once)) == once


def test_crlf_and_comments():
    tree = parse_ftdl('# header\r\nevent x1 rate 1 "a" # trailing\r\n\r\ntop OR(\r\n  x1\r\n)\r\n')
    assert tree.event_ids == ("x1",)


def test_label_escapes_round_trip():
    tree = build_tree([BasicEvent("x1", 'say "hi"\\\n\tok', 0.5)], Or(["x1"]))
    assert parse_ftdl(serialize_ftdl(tree)) == tree


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_round_trip(name):
    tree = CORPUS[name]
    assert parse_ftdl(serialize_ftdl(tree)) == tree


def test_random_round_trip():
    rng = random.Random(11)
    for _ in range(300):
        tree = random_tree(rng, not_prob=0.2)
        back = parse_ftdl(serialize_ftdl(tree))
        assert back == tree
        assert [e.rate for e in back.events] == [e.rate for e in tree.events]


@pytest.mark.parametrize(
    "source, line, column, kind",
    [
        ('event x1 rate 1 "a\ntop OR(x1)', 1, 17, "Lexical"),
        ('event x1 rate 1 "a"\ntop OR(x1) $', 2, 12, "Lexical"),
        ('event x1 rate 1 "a"\ntop OR(x1', 2, 10, "Syntax"),
        ('event x1 rate "a"\ntop OR(x1)', 1, 15, "Syntax"),
        ('event x1 rate 1 "a"\ntop NOT(x1, x1)', 2, 5, "Syntax"),
        ('event x1 rate 1 "a"\ntop XOR(x1)', 2, 5, "Syntax"),
        ('event x1 rate 1 "a"\ntop NAND()', 2, 5, "Syntax"),
        ('event AND rate 1 "a"\ntop OR(AND)', 1, 7, "Syntax"),
        ('top OR(x1)', 1, 8, "Semantic"),
        ('event x1 rate 1 "a"\nevent x1 rate 2 "b"\ntop OR(x1)', 2, 7, "Semantic"),
        ('event x1 rate 1 "a"\nevent x2 rate 1 "b"\ntop OR(x1)', 2, 1, "Semantic"),
        ('event x1 rate 1 "a"\ntop OR(x1)\nevent x2 rate 1 ""', 3, 1, "Syntax"),
        ('event x1 rate 1e999 "a"\ntop OR(x1)', 1, 15, "Semantic"),
        ("", 1, 1, "Syntax"),
    ],
)
def test_located_errors(source, line, column, kind):
    with pytest.raises(ParseError) as info:
        parse_ftdl(source)
    err = info.value
    assert (err.line, err.column, err.kind) == (line, column, kind)


def test_bad_utf8():
    with pytest.raises(ParseError) as info:
        parse_ftdl(b'event x1 rate 1 "\xff"\ntop OR(x1)')
    assert info.value.kind == "Lexical"


def test_nesting_limit():
    src = 'event x1 rate 1 ""\ntop ' + "AND(" * 500 + "x1" + ")" * 500
    with pytest.raises(ParseError):
        parse_ftdl(src)


def test_tokens_carry_positions():
    toks = tokenize('top OR(\n x1)')
    assert [(t.type, t.line, t.column) for t in toks] == [
        ("ID", 1, 1), ("ID", 1, 5), ("LPAREN", 1, 7), ("ID", 2, 2), ("RPAREN", 2, 4), ("EOF", 2, 5),
    ]


SEED_FILES = [p.read_text() for p in sorted(CORPUS_DIR.glob("*.ftdl"))]


@settings(max_examples=300, deadline=None)
@given(
    st.sampled_from(SEED_FILES),
    st.lists(st.tuples(st.integers(0, 10_000), st.sampled_from(["del", "ins", "dup"]), st.characters()), max_size=4),
)
def test_mutations_never_crash(text, edits):
    for pos, op, ch in edits:
        pos %= len(text) + 1
        if op == "del":
            text = text[:pos] + text[pos + 1:]
        elif op == "ins":
            text = text[:pos] + ch + text[pos:]
        else:
            text = text[:pos] + text[pos:pos + 5] + text[pos:]
    try:
        tree = parse_ftdl(text)
    except ParseError as err:
        assert err.line >= 1 and err.column >= 1
    else:
        assert parse_ftdl(serialize_ftdl(tree)) == tree


def test_unused_and_gate_nesting_is_structural():
    tree = parse_ftdl('event a rate 1 ""\ntop AND(AND(a))')
    assert tree.top == And([And(["a"])])
