"""Reduction word orders.

Four kinds: plain shortlex, weighted lex, weighted shortlex, and the
level-wise wreath-product order.  Each is a translation-invariant well-order
on words with the empty word least, which is what both rewriting and the
acceptor construction need.

Comparison conventions:

* lex comparisons use the rank a symbol has in its alphabet, and a proper
  prefix precedes every extension of itself
* the weighted orders compare total weight first; the shortlex variant
  breaks weight ties by length before falling back to lex
* the wreath-product order strips the common prefix, then repeatedly
  compares the projections to the highest remaining level by shortlex and,
  on a tie, cuts both words back to the prefix before their first symbol of
  that level
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError, LogicError
from .words import Alphabet, Word

LT, EQ, GT = -1, 0, 1

SHORTLEX = "shortlex"
WTLEX = "wtlex"
WTSHORTLEX = "wtshortlex"
WREATH = "wreathshortlex"

KINDS = (SHORTLEX, WTLEX, WTSHORTLEX, WREATH)


def lex_cmp(alpha: Alphabet, u: Word, v: Word) -> int:
    """Lexicographic comparison; a proper prefix precedes its extensions."""
    for a, b in zip(u, v):
        if a != b:
            return LT if alpha.rank(a) < alpha.rank(b) else GT
    return (len(u) > len(v)) - (len(u) < len(v))


def shortlex_cmp(alpha: Alphabet, u: Word, v: Word) -> int:
    if len(u) != len(v):
        return LT if len(u) < len(v) else GT
    return lex_cmp(alpha, u, v)


def strip_common_prefix(u: Word, v: Word) -> tuple:
    i = 0
    n = min(len(u), len(v))
    while i < n and u[i] == v[i]:
        i += 1
    return u[i:], v[i:]


def _wt_cmp(alpha: Alphabet, u: Word, v: Word, length_tier: bool) -> int:
    wu, wv = alpha.word_weight(u), alpha.word_weight(v)
    if wu != wv:
        return LT if wu < wv else GT
    if length_tier and len(u) != len(v):
        return LT if len(u) < len(v) else GT
    return lex_cmp(alpha, u, v)


def _wreath_cmp(alpha: Alphabet, u: Word, v: Word) -> int:
    u, v = strip_common_prefix(u, v)
    # Invariant: u and v differ in their first symbol (or one is empty), so
    # the loop always decides before the words can become equal and nonempty.
    while u != v:
        j = max(alpha.max_level(u), alpha.max_level(v))
        c = shortlex_cmp(alpha, alpha.project(u, j), alpha.project(v, j))
        if c != EQ:
            return c
        u = alpha.prefix_below(u, j)
        v = alpha.prefix_below(v, j)
    return EQ


@dataclass(frozen=True)
class Order:
    """An order kind bound to its alphabet."""

    alphabet: Alphabet
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown order kind {self.kind!r}")
        if self.kind == WREATH and self.alphabet.levels is None:
            raise InputError("the wreath-product order needs generator levels")

    def compare(self, u: Word, v: Word) -> int:
        a = self.alphabet
        if self.kind == SHORTLEX:
            return shortlex_cmp(a, u, v)
        if self.kind == WTLEX:
            return _wt_cmp(a, u, v, False)
        if self.kind == WTSHORTLEX:
            return _wt_cmp(a, u, v, True)
        return _wreath_cmp(a, u, v)

    def precedes(self, u: Word, v: Word) -> bool:
        """Strictly earlier in the order."""
        return self.compare(u, v) == LT

    def weight(self, s: str) -> int:
        # Plain shortlex ignores declared weights entirely; reading them as 1
        # here keeps the history machinery consistent with compare().
        return 1 if self.kind == SHORTLEX else self.alphabet.weights[s]

    def word_weight(self, w: Word) -> int:
        return sum(self.weight(s) for s in w)

    def least(self, ws: Iterable[Word]) -> Word:
        best = None
        for w in ws:
            if best is None or self.compare(w, best) == LT:
                best = w
        if best is None:
            raise LogicError("least() of an empty collection")
        return best
