import random

import pytest

from autostruct import Alphabet, LogicError, Order, PAD, SHORTLEX, WREATH
from autostruct.diff import DiffMachine, EPS
from autostruct.rewrite import CONFLUENT, RewriteSystem, kb_complete


def free_order():
    return Order(Alphabet(("a", "A"), {"a": "A", "A": "a"}), SHORTLEX)


def z2_system():
    alpha = Alphabet(
        ("a", "A", "b", "B"), {"a": "A", "A": "a", "b": "B", "B": "b"}
    )
    rs = RewriteSystem.from_relations(
        Order(alpha, SHORTLEX), [(("b", "a"), ("a", "b"))]
    )
    assert kb_complete(rs, 50, 20) == CONFLUENT
    return rs


def g11_system():
    alpha = Alphabet(
        ("x", "X", "y", "Y"),
        {"x": "X", "X": "x", "y": "Y", "Y": "y"},
        levels={"x": 1, "X": 1, "y": 2, "Y": 2},
    )
    rs = RewriteSystem(Order(alpha, WREATH))
    for lhs, rhs in [
        (("x", "Y"), ("Y", "x")),
        (("X", "Y"), ("Y", "X")),
        (("x", "y"), ("y", "x")),
        (("X", "y"), ("y", "X")),
    ]:
        rs.add_rule(lhs, rhs)
    return rs


def check_machine_axioms(d, strict=True):
    """Structural requirements every difference machine must satisfy."""
    alpha = d.alpha
    assert d.labels[EPS] == ()
    assert len(set(d.labels)) == len(d.labels)
    for label in d.labels:
        assert d.rws.is_irreducible(label)
    # every move's target label is the reduction of inverse(a).source.b
    for (s, (a, b)), t in d.transitions.items():
        left = alpha.invert((a,)) if a != PAD else ()
        right = (b,) if b != PAD else ()
        assert d.rws.rewrite(left + d.labels[s] + right) == d.labels[t]
    # diagonal loops at the start state
    for g in alpha.symbols:
        assert d.step(EPS, g, g) == EPS
    # labels are closed under inversion, prefix and suffix, and the
    # one-letter moves witnessing the factor labels exist
    for s, label in enumerate(d.labels):
        inv = d.inverse_state[s]
        assert d.rws.rewrite(alpha.invert(label)) == d.labels[inv]
        if not label:
            continue
        pre = d.index[label[:-1]]
        suf = d.index[label[1:]]
        assert d.step(pre, PAD, label[-1]) == s
        assert d.step(suf, alpha.inverse[label[0]], PAD) == s
    if strict:
        # moves reverse under inversion when reduction is canonical
        for (s, (a, b)), t in d.transitions.items():
            ra = alpha.inverse[a] if a != PAD else PAD
            rb = alpha.inverse[b] if b != PAD else PAD
            assert d.step(t, ra, rb) == s


def test_free_group_machine():
    rs = RewriteSystem(free_order())
    d = DiffMachine.from_rules(rs)
    assert sorted(d.labels) == [(), ("A",), ("a",)]
    check_machine_axioms(d)
    assert d.equal_in_group(("a", "A", "a"), ("a",))
    assert d.reduce(("a", "A", "a")) == ("a",)
    assert d.reduce(("a", "a", "A")) == ("a",)
    assert d.reduce(("A", "a")) == ()


GRID = {
    (e1 + e2): ()
    for e1 in [(), ("a",), ("A",)]
    for e2 in [(), ("b",), ("B",)]
}


def test_z2_traced_labels():
    # one commuting pair generates the full 3x3 grid of differences
    d = DiffMachine.from_rules(z2_system())
    assert set(d.labels) == set(GRID)
    check_machine_axioms(d)


def test_z2_extension_completes_grid():
    # a machine lacking the ab / AB corners cannot witness bA -> Ab;
    # feeding it one multiplication instance restores them
    full = DiffMachine.from_rules(z2_system())
    d = full.restricted(
        [w for w in GRID if w not in {("a", "b"), ("A", "B")}]
    )
    assert d.state_count() == 7
    assert d.trace_pair(("b", "A"), ("A", "b")) is None
    assert d.reduce(("b", "A")) == ("b", "A")
    d.add_equation(("A", "b", "a"), ("b",))
    d.close()
    assert ("a", "b") in d.index and ("A", "B") in d.index
    assert d.state_count() == 9
    check_machine_axioms(d)
    assert d.trace_pair(("b", "A"), ("A", "b")) == EPS
    assert d.reduce(("b", "A")) == ("A", "b")


def full_z2_machine():
    return DiffMachine.from_rules(z2_system())


def test_z2_reduce_matches_rewrite():
    d = full_z2_machine()
    rs = d.rws
    rng = random.Random(7)
    syms = list(d.alpha.symbols)
    for _ in range(300):
        w = tuple(rng.choices(syms, k=rng.randrange(9)))
        assert d.reduce(w) == rs.rewrite(w)


def test_z2_rule_steps_witnessed():
    d = full_z2_machine()
    rng = random.Random(11)
    syms = list(d.alpha.symbols)
    for lhs, rhs in d.rws.active():
        assert d.trace_pair(lhs, rhs) == EPS
        # shared prefixes keep the tracks aligned; unequal rule sides
        # shift any appended context out of step, so none is added
        a = tuple(rng.choices(syms, k=2))
        assert d.equal_in_group(a + lhs, a + rhs)


def test_g11_wreath_machine():
    d = DiffMachine.from_rules(g11_system())
    assert d.state_count() == 9
    assert ("y", "x") in d.index and ("Y", "X") in d.index
    check_machine_axioms(d)
    assert d.reduce(("x", "y")) == ("y", "x")
    assert d.reduce(("x", "x", "Y")) == ("Y", "x", "x")
    assert d.reduce(("x", "X", "y")) == ("y",)


def test_restricted_machine():
    d = full_z2_machine()
    small = d.restricted([(), ("a",), ("A",)])
    assert small.state_count() == 3
    check_machine_axioms(small, strict=False)
    with pytest.raises(LogicError):
        d.restricted([(), ("a",)])


def test_unreduced_label_rejected():
    d = DiffMachine.from_rules(RewriteSystem(free_order()))
    with pytest.raises(LogicError):
        d.restricted([(), ("a", "A")])


def test_trace_pair_falls_off():
    d = DiffMachine.from_rules(RewriteSystem(free_order()))
    assert d.trace_pair(("a", "a", "a"), ()) is None


def test_violations_clean_on_constructed_machines():
    for rs in (z2_system(), g11_system()):
        assert DiffMachine.from_rules(rs).violations() == []


def test_violations_flag_a_relabelled_state():
    d = DiffMachine.from_rules(z2_system())
    d.labels[2] = ("a", "a", "a")
    bad = d.violations()
    assert bad
    assert any("does not track the labels" in msg for msg in bad)


def test_violations_flag_a_missing_diagonal():
    d = DiffMachine.from_rules(z2_system())
    del d.transitions[(EPS, ("b", "b"))]
    assert d.violations() == ["missing diagonal loop on 'b'"]


def test_violations_flag_duplicate_labels():
    d = DiffMachine.from_rules(z2_system())
    d.labels[3] = d.labels[2]
    assert any("share the label" in msg for msg in d.violations())
