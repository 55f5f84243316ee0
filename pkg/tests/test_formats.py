"""File formats: parsing, serialization, and round-trip determinism."""

import pytest

from autostruct import Alphabet, Order
from autostruct.diff import DiffMachine
from autostruct.errors import InputError
from autostruct.formats import (
    diff_to_fsa,
    parse_fsa,
    parse_presentation,
    parse_rules,
    serialize_fsa,
    serialize_presentation,
    serialize_rules,
)
from autostruct.fsa import Fsa
from autostruct.pipeline import compute_structure
from autostruct.presentations import FamilySpec, builtin_family
from autostruct.rewrite import RewriteSystem

GRID = """\
# two commuting generators
version 1
generators x y
inverse x X
inverse y Y
order wreathshortlex
lexorder x X y Y
level x 1
level y 2
relation y x = x y
"""


def test_parse_presentation_grid():
    pres, order = parse_presentation(GRID)
    assert pres.alphabet.symbols == ("x", "X", "y", "Y")
    assert pres.relations == ((("y", "x"), ("x", "y")),)
    assert order.kind == "wreathshortlex"
    assert pres.alphabet.level("Y") == 2


def test_presentation_round_trip():
    pres, order = parse_presentation(GRID)
    text = serialize_presentation(pres, order)
    pres2, order2 = parse_presentation(text)
    assert pres2.relations == pres.relations
    assert pres2.alphabet.symbols == pres.alphabet.symbols
    assert serialize_presentation(pres2, order2) == text


def test_presentation_defaults_and_e_side():
    text = "version 1\ngenerators x\ninverse x X\nrelation x x x = e\n"
    pres, order = parse_presentation(text)
    assert order.kind == "shortlex"
    assert pres.relations == ((("x", "x", "x"), ()),)


@pytest.mark.parametrize("bad,hint", [
    ("generators x\ninverse x X\n", "version"),
    ("version 1\ninverse x X\n", "generators"),
    ("version 1\ngenerators x\n", "inverse"),
    ("version 1\ngenerators x\ninverse x X\nrelation x = y\n", "unknown symbol"),
    ("version 1\ngenerators x\ninverse x X\nrelation x x\n", "exactly one ="),
    ("version 1\ngenerators x\ninverse x X\norder wtlex\n", "weight"),
    ("version 1\ngenerators x\ninverse x X\norder wreathshortlex\n", "level"),
    ("version 1\ngenerators x\ninverse x X\nweight x 2\n", "weight"),
    ("version 1\ngenerators x\ninverse x X\nlexorder x\n", "every symbol"),
    ("version 1\ngenerators x\ninverse x X\nfrobnicate\n", "frobnicate"),
    (
        "version 1\ngenerators x y\ninverse x X\ninverse y Y\n"
        "order wreathshortlex\nlevel x 1\nlevel X 2\nlevel y 2\n",
        "level",
    ),
], ids=lambda v: v[:24].replace("\n", ";"))
def test_presentation_errors_carry_line_numbers(bad, hint):
    with pytest.raises(InputError) as err:
        parse_presentation(bad)
    assert "line" in str(err.value)
    assert hint.split()[0] in str(err.value)


def test_weighted_order_parses_with_default_weights():
    text = (
        "version 1\ngenerators x y\ninverse x X\ninverse y Y\n"
        "order wtlex\nweight y 3\nrelation y = x x x\n"
    )
    pres, order = parse_presentation(text)
    assert order.alphabet.weights == {"x": 1, "X": 1, "y": 3, "Y": 1}


def test_rules_round_trip_and_free_rule_merge():
    pres, order = parse_presentation(GRID)
    rs = RewriteSystem.from_relations(order, pres.relations)
    text = serialize_rules(rs)
    rs2 = parse_rules(text)
    assert list(rs2.active()) == list(rs.active())
    assert serialize_rules(rs2) == text
    # free rules come back even when a file omits them
    bare = (
        "rws version 1\ngenerators x\ninverse x X\nrule x x -> e\n"
    )
    rs3 = parse_rules(bare)
    assert (("x", "X"), ()) in set(rs3.active())
    assert rs3.rewrite(("x", "x", "x")) == ("x",)


def test_rules_reject_misoriented_rule():
    bad = "rws version 1\ngenerators x\ninverse x X\nrule x -> x x\n"
    with pytest.raises(InputError) as err:
        parse_rules(bad)
    assert "oriented" in str(err.value)


def small_word_fsa():
    # accepts words over {x, y} with no yy factor
    return Fsa(
        symbols=("x", "y"),
        num_states=2,
        start=0,
        accepting={0, 1},
        transitions={(0, "x"): 0, (0, "y"): 1, (1, "x"): 0},
        track=1,
    )


def test_fsa_round_trip_word():
    a = small_word_fsa()
    text = serialize_fsa(a)
    b = parse_fsa(text)
    assert b.num_states == 2
    assert b.equal_languages(a) is None
    assert serialize_fsa(b) == text


def test_fsa_serialization_is_canonical():
    a = small_word_fsa()
    # the same machine with its states listed the other way around
    swapped = Fsa(
        symbols=("x", "y"),
        num_states=2,
        start=1,
        accepting={0, 1},
        transitions={(1, "x"): 1, (1, "y"): 0, (0, "x"): 1},
        track=1,
    )
    assert serialize_fsa(a) == serialize_fsa(swapped)


def test_fsa_hand_written_parses():
    text = (
        "fsa version 1\ntype word\nalphabet x\npad _\n"
        "states 2\nstart 1\naccept 2\n1 x 2\n"
    )
    a = parse_fsa(text)
    assert a.num_states == 2
    assert a.accepts(("x",))
    assert not a.accepts(())


@pytest.mark.parametrize("mutate,hint", [
    (lambda t: t.replace("fsa version 1", "fsa version 2"), "fsa version 1"),
    (lambda t: t.replace("type word", "type tape"), "word or pair"),
    (lambda t: t.replace("1 x 2", "1 q 2"), "unknown symbol"),
    (lambda t: t.replace("1 x 2", "1 x 9"), "out of range"),
    (lambda t: t.replace("1 x 2", "1 x 2\n1 x 1"), "duplicate"),
    (lambda t: t.replace("pad _", "pad +"), "padding"),
    (lambda t: t.replace("states 2\n", ""), "missing states"),
])
def test_fsa_errors(mutate, hint):
    good = (
        "fsa version 1\ntype word\nalphabet x\npad _\n"
        "states 2\nstart 1\naccept 2\n1 x 2\n"
    )
    with pytest.raises(InputError) as err:
        parse_fsa(mutate(good))
    assert hint in str(err.value)


def test_pair_fsa_round_trip_with_labels():
    fam = builtin_family(FamilySpec("BSpq", 1, 1))
    rs = RewriteSystem.from_relations(fam.order, fam.presentation.relations)
    from autostruct.rewrite import CONFLUENT, kb_complete

    assert kb_complete(rs) == CONFLUENT
    diff = DiffMachine.from_rules(rs)
    a, labels = diff_to_fsa(diff)
    text = serialize_fsa(a, labels)
    b = parse_fsa(text)
    assert b.track == 2
    assert b.num_states == diff.state_count()
    assert sorted(b.state_labels.values()) == sorted(labels.values())
    # start state is the empty-word difference
    assert b.state_labels[b.start] == ()
    assert serialize_fsa(b, b.state_labels) == text


def test_multiplier_survives_the_file_format():
    fam = builtin_family(FamilySpec("BSpq", 1, 1))
    res = compute_structure(fam.order, fam.presentation.relations)
    m = res.multipliers["x"]
    again = parse_fsa(serialize_fsa(m))
    assert again.equal_languages(m) is None
    assert again.accepts_pair(("y",), ("y", "x"))
