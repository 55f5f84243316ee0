"""Group presentations and the built-in example families.

A presentation is an alphabet plus defining relations; orders are chosen
separately, so the same presentation can be fed to several of them.  The
built-in families cover two parametric one-relator classes that need the
wreath-product order (their normal forms are not shortlex-regular) and
three knot group presentations that work under plain shortlex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InputError
from .orders import Order, SHORTLEX, WREATH
from .rewrite import RewriteSystem
from .words import Alphabet, Word

FAMILY_NAMES = (
    "BSpq",
    "BSpNegq",
    "Hpq",
    "HpNegq",
    "KNOT41",
    "KNOT52",
    "KNOT74",
)


@dataclass(frozen=True)
class Presentation:
    """Generators with formal inverses, and relations between words."""

    alphabet: Alphabet
    relations: tuple  # of (Word, Word) pairs, both sides over the alphabet

    def __post_init__(self):
        rels = tuple(
            (self.alphabet.check_word(x), self.alphabet.check_word(y))
            for x, y in self.relations
        )
        object.__setattr__(self, "relations", rels)


@dataclass(frozen=True)
class FamilySpec:
    """Selects one built-in family instance: a name plus its parameters."""

    family: str
    p: int = 1
    q: int = 1

    def __post_init__(self):
        if self.family not in FAMILY_NAMES:
            raise InputError(
                f"unknown family {self.family!r}; choose one of "
                + ", ".join(FAMILY_NAMES)
            )
        for label, v in (("p", self.p), ("q", self.q)):
            if not isinstance(v, int) or v < 1:
                raise InputError(f"family parameter {label} must be an integer >= 1")


@dataclass(frozen=True)
class BuiltFamily:
    """A family instance ready to run: presentation, order, and (for the
    parametric families) the rewriting system their normal forms come from."""

    spec: FamilySpec
    presentation: Presentation
    order: Order
    expected: Optional[RewriteSystem] = field(default=None, compare=False)


def _xy_alphabet() -> Alphabet:
    # level 1 for the x pair, level 2 for the y pair: the wreath order
    # compares y-content first and treats x-runs as decorations
    return Alphabet(
        ["x", "X", "y", "Y"],
        {"x": "X", "X": "x", "y": "Y", "Y": "y"},
        levels={"x": 1, "X": 1, "y": 2, "Y": 2},
    )


def _xrun(n: int) -> Word:
    """x to the n-th power as a word; negative n spells the inverse letter."""
    return ("x",) * n if n >= 0 else ("X",) * (-n)


def _conjugation_family(p: int, q: int, flip: bool) -> BuiltFamily:
    """One relator of the form y x^p = x^(+-q) y.

    Conjugation by y multiplies the x-exponent by q/p (or -q/p when
    flipped), so accepted representatives need bounded x-runs between
    y-letters; the expected rules push overlong runs through the y.
    """
    name = "BSpNegq" if flip else "BSpq"
    alpha = _xy_alphabet()
    sign = -1 if flip else 1
    relation = (("y",) + _xrun(p), _xrun(sign * q) + ("y",))
    pres = Presentation(alpha, (relation,))
    order = Order(alpha, WREATH)

    r, s = p // 2, q // 2
    rs = RewriteSystem(order)
    rs.add_equation(_xrun(r + 1) + ("Y",), _xrun(r + 1 - p) + ("Y",) + _xrun(sign * q))
    rs.add_equation(_xrun(r - p) + ("Y",), _xrun(r) + ("Y",) + _xrun(-sign * q))
    rs.add_equation(_xrun(s + 1) + ("y",), _xrun(s + 1 - q) + ("y",) + _xrun(sign * p))
    rs.add_equation(_xrun(s - q) + ("y",), _xrun(s) + ("y",) + _xrun(-sign * p))
    return BuiltFamily(FamilySpec(name, p, q), pres, order, rs)


def _inversion_family(p: int, q: int, flip: bool) -> BuiltFamily:
    """One relator of the form x^p y = y^-1 x^(+-q).

    Here y^-1 is expressible without inverse letters, so the expected
    rules eliminate Y outright and cap x-runs in front of each y.
    """
    name = "HpNegq" if flip else "Hpq"
    alpha = _xy_alphabet()
    sign = -1 if flip else 1
    relation = (_xrun(p) + ("y",), ("Y",) + _xrun(sign * q))
    pres = Presentation(alpha, (relation,))
    order = Order(alpha, WREATH)

    rs = RewriteSystem(order)
    rs.add_equation(("Y",), _xrun(p) + ("y",) + _xrun(-sign * q))
    rs.add_equation(("y",) + _xrun(p) + ("y",), _xrun(sign * q))
    if not flip:
        t = (p + q) // 2
        rs.add_equation(
            _xrun(t + 1) + ("y",), _xrun(t + 1 - (p + q)) + ("y",) + _xrun(p + q)
        )
        rs.add_equation(
            _xrun(t - (p + q)) + ("y",), _xrun(t) + ("y",) + _xrun(-(p + q))
        )
    return BuiltFamily(FamilySpec(name, p, q), pres, order, rs)


# Knot group data: generator names (one per arc, plus a leading derived
# generator spelling a fixed product of the others) and the relator words
# that equal the identity.  Inverse pairs sit adjacent in the alphabet.

_KNOT_DATA = {
    "KNOT41": (
        ("a", "x", "y", "z", "t"),
        (
            ("A", "x", "Y", "z", "T"),
            ("X", "Z", "t", "z"),
            ("Y", "t", "x", "T"),
            ("Z", "X", "y", "x"),
        ),
    ),
    "KNOT52": (
        ("a", "x", "y", "z", "t", "u"),
        (
            ("A", "t", "u", "x", "z", "y"),
            ("x", "T", "X", "z"),
            ("t", "Y", "T", "x"),
            ("t", "z", "U", "Z"),
            ("u", "Z", "U", "y"),
        ),
    ),
    "KNOT74": (
        ("a", "x", "y", "z", "t", "u", "v", "w"),
        (
            ("A", "v", "U", "X", "W", "Y", "Z", "T"),
            ("T", "x", "z", "X"),
            ("x", "v", "Y", "V"),
            ("y", "u", "Y", "v"),
            ("y", "U", "Z"),
            ("w", "t", "W", "U"),
            ("t", "w", "T", "X"),
        ),
    ),
}


def _knot_alphabet(gens: tuple) -> Alphabet:
    symbols, inverse = [], {}
    for g in gens:
        u = g.upper()
        symbols += [g, u]
        inverse[g] = u
        inverse[u] = g
    return Alphabet(symbols, inverse)


def knot_presentation(name: str, wirtinger: bool = False) -> Presentation:
    """One of the built-in knot groups.

    The full presentation carries an extra leading generator defined by
    the first relator.  With wirtinger=True that generator and its
    defining relator are dropped, leaving the arc generators only.
    """
    if name not in _KNOT_DATA:
        raise InputError(f"unknown knot family {name!r}")
    gens, relators = _KNOT_DATA[name]
    if wirtinger:
        gens, relators = gens[1:], relators[1:]
    alpha = _knot_alphabet(gens)
    return Presentation(alpha, tuple((rel, ()) for rel in relators))


def builtin_family(spec: FamilySpec, wirtinger: bool = False) -> BuiltFamily:
    """Instantiate a built-in family at the requested parameters.

    Knot families ignore p and q and come without an expected rewriting
    system; completion finds one on its own.
    """
    if spec.family == "BSpq":
        return _conjugation_family(spec.p, spec.q, flip=False)
    if spec.family == "BSpNegq":
        return _conjugation_family(spec.p, spec.q, flip=True)
    if spec.family == "Hpq":
        return _inversion_family(spec.p, spec.q, flip=False)
    if spec.family == "HpNegq":
        return _inversion_family(spec.p, spec.q, flip=True)
    pres = knot_presentation(spec.family, wirtinger)
    return BuiltFamily(spec, pres, Order(pres.alphabet, SHORTLEX))
