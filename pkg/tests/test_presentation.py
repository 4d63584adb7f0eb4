import pytest

from coxcover.presentation import (
    COMMUTING_CONJUGATES,
    ORDER_THREE_PRODUCT,
    ORDER_TWO,
    OTHER,
    PRIME_CONJUGATE,
    Presentation,
    apply_substitution_table,
    classify_relator,
    eliminate_generator,
    format_presentation,
    overlap_shorten,
    parse_presentation,
    replay,
    trivial_simplify,
)
from coxcover.words import parse_word


def pres(gens, rels, invol=(), comm=()):
    return Presentation(gens.split(), [parse_word(r) for r in rels],
                        invol.split() if isinstance(invol, str) else invol,
                        [frozenset(pair.split()) for pair in comm])


def test_constructor_validation():
    with pytest.raises(ValueError):
        Presentation(["a", "a"])
    with pytest.raises(ValueError):
        Presentation(["a-"])
    with pytest.raises(ValueError):
        Presentation(["a"], involutory=["b"])
    with pytest.raises(ValueError):
        pres("a", ["a b"])
    with pytest.raises(ValueError):
        Presentation(["a", "b"], commuting=[frozenset(["a"])])


def test_constructor_normalizes_relators():
    p = pres("a b", ["a a- b", "a a b"], invol="a")
    assert p.relators == (parse_word("b"), parse_word("b"))


def test_classify_order_two():
    p = pres("5 6", ["5 5"])
    assert classify_relator(parse_word("5 5"), p) == ORDER_TWO
    assert classify_relator(parse_word("6- 6-"), p) == ORDER_TWO


def test_classify_commuting_conjugates():
    p = pres("3 4", ["3 4 3- 4-"])
    assert classify_relator(parse_word("3 4 3- 4-"), p) == COMMUTING_CONJUGATES
    q = pres("3 4 9", ["9 3 9- 4 9 3- 9- 4-"])
    assert classify_relator(q.relators[0], q) == COMMUTING_CONJUGATES
    inv = Presentation("u v w".split(), [parse_word("u v u w u v u w")],
                       involutory="u v w".split())
    assert classify_relator(inv.relators[0], inv) == COMMUTING_CONJUGATES


def test_classify_order_three_product():
    word = " ".join(["15 16 21' 16"] * 3)
    p = Presentation(["15", "16", "21'"], [parse_word(word)],
                     involutory=["15", "16", "21'"])
    assert classify_relator(p.relators[0], p) == ORDER_THREE_PRODUCT
    braid = pres("u v", ["u v u v u v"], invol="u v")
    assert classify_relator(braid.relators[0], braid) == ORDER_THREE_PRODUCT


def test_classify_prime_conjugate_and_other():
    word = "9' 3 7 7' 3' 9 3' 7' 7 3"
    gens = ["3", "7", "9", "3'", "7'", "9'"]
    p = Presentation(gens, [parse_word(word)], involutory=gens)
    assert classify_relator(p.relators[0], p) == PRIME_CONJUGATE
    q = pres("1 2 3", ["1 2 3"])
    assert classify_relator(parse_word("1 2 3"), q) == OTHER


def test_trivial_simplify_collapse_rule():
    p = pres("g d", ["g g d"], invol="g d")
    out, log = trivial_simplify(p)
    assert out.relators == (parse_word("d"),)
    assert replay(p, log) == out
    # cyclic squares are outside the constructor's normal form
    q = pres("g d", ["g d g"], invol="g d")
    out2, log2 = trivial_simplify(q)
    assert out2.relators == (parse_word("d"),)
    assert len(log2) == 1
    assert replay(q, log2) == out2


def test_trivial_simplify_duplicates_and_empties():
    p = pres("a b c", ["a b c", "b c a", "a a-"])
    out, log = trivial_simplify(p)
    assert out.relators == (parse_word("a b c"),)
    assert replay(p, log) == out
    # inversion counts as a duplicate too
    q = pres("a b", ["a b", "b- a-"])
    out2, _ = trivial_simplify(q)
    assert len(out2.relators) == 1


def test_trivial_simplify_minimal_is_noop():
    p = pres("a b", ["a b a- b-"])
    out, log = trivial_simplify(p)
    assert out == p
    assert len(log) == 0


def test_trivial_simplify_never_grows():
    p = pres("a b c", ["a c a- c", "c b c b", "a b a b"], invol="a b c", comm=["a c"])
    out, _ = trivial_simplify(p)
    assert out.total_length() <= p.total_length()


def test_overlap_shorten_basic_rule():
    p = pres("a b c d", ["a b c", "a b d-"])
    out, log = overlap_shorten(p, seed=1, max_rounds=10)
    assert parse_word("c- d-") in [r for r in out.relators] or \
        any(r == parse_word("d- c-") for r in out.relators)
    assert out.total_length() <= p.total_length()
    assert replay(p, log) == out


def test_overlap_shorten_duplicates_and_single():
    p = pres("a b", ["a b", "a b"])
    out, _ = overlap_shorten(p, seed=3, max_rounds=10)
    assert out.relators == (parse_word("a b"),)
    single = pres("a b", ["a b"])
    out2, log2 = overlap_shorten(single, seed=3, max_rounds=10)
    assert out2 == single and len(log2) == 0


def test_overlap_shorten_deterministic_per_seed():
    p = pres("a b c", ["a b", "b c", "c a", "a b c a b c"])
    first, log1 = overlap_shorten(p, seed=42, max_rounds=20)
    second, log2 = overlap_shorten(p, seed=42, max_rounds=20)
    assert first == second
    assert log1.entries == log2.entries


def test_eliminate_generator():
    p = pres("a b g", ["g b- a-", "g g b"])
    out, log = eliminate_generator(p, "g", parse_word("a b"))
    assert "g" not in out.alphabet
    assert all(letter.key() != "g" for r in out.relators for letter in r)
    assert replay(p, log) == out
    # defining relator becomes empty and is dropped
    assert parse_word("a b a b b") in out.relators
    assert len(out.relators) == 1


def test_eliminate_generator_edge_cases():
    p = pres("a g", ["a g a g"])
    out, _ = eliminate_generator(p, "g", ())
    assert out.relators == (parse_word("a a"),)
    unused = pres("a g", ["a a a"])
    out2, _ = eliminate_generator(unused, "g", parse_word("a"))
    assert out2.alphabet == ("a",) and out2.relators == (parse_word("a a a"),)
    with pytest.raises(ValueError):
        eliminate_generator(p, "g", parse_word("a g"))
    with pytest.raises(ValueError):
        eliminate_generator(p, "z", parse_word("a"))


def test_substitution_table():
    table = [("x", parse_word("a y a")), ("y", parse_word("b"))]
    assert apply_substitution_table(parse_word("x"), table) == parse_word("a b a")
    assert apply_substitution_table(parse_word("x-"), table) == parse_word("a- b- a-")
    assert apply_substitution_table(parse_word("a b"), table) == parse_word("a b")
    entry = parse_word("3 7 7' 3' 9 3' 7' 7 3")
    out = apply_substitution_table(parse_word("9'"), [("9'", entry)])
    assert out == entry


def test_substitution_table_cycle_reported():
    table = [("x", parse_word("y")), ("y", parse_word("x"))]
    with pytest.raises(ValueError) as err:
        apply_substitution_table(parse_word("x"), table)
    assert "x" in str(err.value) and "y" in str(err.value)


def test_presentation_io_round_trip():
    text = "gens: a b c\ninvol: all\ncomm: a b\nrel: a b a b\nrel: b c b c\n"
    p = parse_presentation(text)
    assert format_presentation(p) == text
    assert p.involutory == {"a", "b", "c"}
    commented = "# header\ngens: a b # trailing\nrel: a a\n"
    q = parse_presentation(commented)
    assert q.alphabet == ("a", "b")
    partial = format_presentation(pres("a b", ["a a"], invol="a"))
    assert "invol: a\n" in partial
