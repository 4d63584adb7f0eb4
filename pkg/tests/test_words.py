import pytest

from coxcover.words import (
    Letter,
    canonical_cyclic,
    commutator,
    conjugate,
    cyclic_reduce,
    format_word,
    invert,
    involutory_collapse,
    multiply,
    parse_word,
    reduce,
    rotations,
    sandwich_collapse,
)


def test_token_round_trip():
    text = "7 17' 13- 19'-"
    word = parse_word(text)
    assert format_word(word) == text
    assert word[1] == Letter("17", True, False)
    assert word[3] == Letter("19", True, True)
    assert word[3].key() == "19'"


def test_bad_tokens_rejected():
    for bad in ["-", "'", "a'b", ""]:
        with pytest.raises(ValueError):
            parse_word(bad) if bad else parse_word("a  ''")


def test_free_reduction():
    assert reduce(parse_word("1 2 2- 1-")) == ()
    assert reduce(parse_word("1 2 2- 3")) == parse_word("1 3")
    assert format_word(reduce(parse_word("5 5 5-"))) == "5"


def test_multiply_invert_conjugate():
    u = parse_word("1 2")
    v = parse_word("2- 3")
    assert format_word(multiply(u, v)) == "1 3"
    assert format_word(invert(u)) == "2- 1-"
    assert multiply(u, invert(u)) == ()
    assert format_word(conjugate(parse_word("2"), parse_word("1"))) == "1 2 1-"
    assert format_word(commutator(parse_word("1"), parse_word("2"))) == "1 2 1- 2-"


def test_involutory_collapse():
    invol = {"1", "2", "17'"}
    assert involutory_collapse(parse_word("1 2 2 1"), invol) == ()
    assert format_word(involutory_collapse(parse_word("1- 2"), invol)) == "1 2"
    assert involutory_collapse(parse_word("17' 17'-"), invol) == ()
    # non-involutory letters still need real inverses
    assert format_word(involutory_collapse(parse_word("3 3"), invol)) == "3 3"


def test_sandwich_collapse():
    comm = {frozenset(("1", "2"))}
    assert format_word(sandwich_collapse(parse_word("1 2 1-"), comm)) == "2"
    assert format_word(sandwich_collapse(parse_word("1 3 1-"), comm)) == "1 3 1-"
    assert format_word(sandwich_collapse(parse_word("1 2 2 1-"), comm)) == "2 2"
    assert sandwich_collapse(parse_word("1 2 1"), comm, involutory={"1"}) == parse_word("2")
    # powers of the same letter slide through each other
    assert format_word(sandwich_collapse(parse_word("3 3 3-"), set())) == "3"


def test_rotations_and_cyclic_forms():
    w = parse_word("1 2 3")
    rots = rotations(w)
    assert len(rots) == 3
    assert parse_word("2 3 1") in rots
    assert cyclic_reduce(parse_word("1 2 1-")) == parse_word("2")
    assert cyclic_reduce(parse_word("1 2 1"), involutory={"1"}) == parse_word("2")
    a = canonical_cyclic(parse_word("2 3 1"))
    b = canonical_cyclic(parse_word("1- 3- 2-"))
    assert a == b
