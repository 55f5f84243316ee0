"""Comparison histories for synchronously read word pairs.

The acceptor construction walks pairs (w1, w2) of words letter by letter,
where w1 is the candidate being tested (track 1) and w2 a potential earlier
spelling of the same group element (track 2).  A history is a bounded summary
of the pair that still answers, for appended endings e1 and e2, whether
w2.e2 strictly precedes w1.e1 in the reduction order.  Histories can be
computed from scratch, stepped one letter pair at a time, and filtered
against bounds derived from a difference machine's label set.

Conventions:

* pairs are always stripped of their common prefix, and track 1 is never
  shorter than track 2; once track 2 has fallen behind (the ``longer`` flag),
  it stays behind and only (letter, padding) steps are legal
* for the weighted orders the summary is (longer, lexsign, wtdiff), with
  lexsign read as "+1 when track 2 is lex-earlier at the first divergence"
  and wtdiff capped at 1 once track 1 is strictly longer
* for the wreath-product order the summary keeps, per level, either a final
  verdict (level settled for one side), equality, or the lex sign of the
  matched parts of the level projections plus the single-sided overhang;
  overhangs longer than the cap collapse to an overflow marker that the
  bounds filter rejects
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import LogicError
from .orders import LT, EQ, GT, Order, SHORTLEX, WTLEX, WTSHORTLEX, WREATH, lex_cmp, shortlex_cmp, strip_common_prefix
from .words import PAD, Word


class _Overflow:
    __slots__ = ()

    def __repr__(self):
        return "OVERFLOW"


OVERFLOW = _Overflow()


@dataclass(frozen=True)
class WtHistory:
    longer: bool  # track 1 strictly longer than track 2
    lexsign: int  # +1: track 2 lex-earlier, -1: later; 0 only when unset
    wtdiff: int  # weight(track 1) - weight(track 2), capped at 1 once longer


@dataclass(frozen=True)
class LevelRec:
    """Unsettled level: matched parts compared, one side may overhang."""

    sign: int  # lex sign of matched projection parts, track 2 vs track 1
    over1: Word  # overhang of track 1's projection (then over2 is empty)
    over2: Word  # overhang of track 2's projection (then over1 is empty)


LevelComp = Union[int, LevelRec, _Overflow]  # int is -1, 0 or +1


@dataclass(frozen=True)
class WreathHistory:
    longer: bool
    top1: int  # highest level in track 1's stripped word
    top2: int  # highest level in track 2's stripped word
    levels: tuple  # component per level 1..max(top1, top2)


History = Union[WtHistory, WreathHistory]


def _pi(order: Order, w: Word, j: int) -> Word:
    """Level-j symbols of the longest prefix of w that stays at level <= j."""
    a = order.alphabet
    return a.project(a.prefix_below(w, j + 1), j)


def _wt_like(order: Order) -> bool:
    return order.kind in (SHORTLEX, WTLEX, WTSHORTLEX)


# ------------------------------------------------------------ construction


def history(
    order: Order, w1: Word, w2: Word, overhang_cap: Optional[int] = None
) -> History:
    """Summary of the pair (w1, w2) computed from scratch."""
    w1, w2 = strip_common_prefix(w1, w2)
    if w1 == w2:
        raise LogicError("history of an equal pair")
    if len(w1) < len(w2):
        raise LogicError("track 1 must not be shorter than track 2")
    if _wt_like(order):
        return _wt_history(order, w1, w2)
    return _wreath_history(order, w1, w2, overhang_cap)


def _divergence_sign(order: Order, w1: Word, w2: Word) -> int:
    # +1 iff track 2 is lex-earlier; a proper prefix counts as earlier
    c = lex_cmp(order.alphabet, w2, w1)
    return 1 if c == LT else -1


def _wt_history(order: Order, w1: Word, w2: Word) -> WtHistory:
    longer = len(w1) > len(w2)
    wtd = order.word_weight(w1) - order.word_weight(w2)
    if longer:
        wtd = min(wtd, 1)
    if order.kind == WTLEX:
        lexsign = _divergence_sign(order, w1, w2)
    else:
        # length ties are what the lex component is for; otherwise unset
        lexsign = 0 if longer else _divergence_sign(order, w1, w2)
    return WtHistory(longer, lexsign, wtd)


def _normalize_level(
    sign: int,
    over1: Word,
    over2: Word,
    j: int,
    longer: bool,
    top1: int,
    top2: int,
    cap: Optional[int],
) -> LevelComp:
    """Classify one level from its raw matched-part/overhang content."""
    if not over1 and not over2 and sign == EQ:
        return 0
    # a nonempty over1 makes track 1's projection longer, so track 2's is
    # shortlex-smaller at this level, and symmetrically
    side2_smaller = bool(over1) or (not over2 and sign == LT)
    if side2_smaller:
        if longer or top2 > j:
            return 1
    else:
        if top1 > j:
            return -1
    if cap is not None and (len(over1) > cap or len(over2) > cap):
        return OVERFLOW
    return LevelRec(sign, over1, over2)


def _wreath_history(
    order: Order, w1: Word, w2: Word, cap: Optional[int]
) -> WreathHistory:
    a = order.alphabet
    top1, top2 = a.max_level(w1), a.max_level(w2)
    longer = len(w1) > len(w2)
    comps = []
    for j in range(1, max(top1, top2) + 1):
        p1, p2 = _pi(order, w1, j), _pi(order, w2, j)
        m = min(len(p1), len(p2))
        sign = lex_cmp(a, p2[:m], p1[:m])
        comps.append(
            _normalize_level(sign, p1[m:], p2[m:], j, longer, top1, top2, cap)
        )
    return WreathHistory(longer, top1, top2, tuple(comps))


# ----------------------------------------------------------------- stepping


def history_step(
    order: Order,
    h: History,
    a: str,
    b: str,
    overhang_cap: Optional[int] = None,
) -> History:
    """History of the pair extended by one letter pair (a, b).

    a is a generator; b is a generator or the padding symbol.  A history
    whose track 1 is already longer only accepts padded steps.
    """
    if a == PAD:
        raise LogicError("track 1 never pads")
    if h.longer and b != PAD:
        raise LogicError("track 2 cannot resume after falling behind")
    if _wt_like(order):
        return _wt_step(order, h, a, b)
    return _wreath_step(order, h, a, b, overhang_cap)


def _wt_step(order: Order, h: WtHistory, a: str, b: str) -> WtHistory:
    if b == PAD:
        wtd = min(h.wtdiff + order.weight(a), 1)
        lexsign = 0 if order.kind != WTLEX else h.lexsign
        return WtHistory(True, lexsign, wtd)
    wtd = h.wtdiff + order.weight(a) - order.weight(b)
    return WtHistory(False, h.lexsign, wtd)


def _wreath_step(
    order: Order, h: WreathHistory, a: str, b: str, cap: Optional[int]
) -> WreathHistory:
    alpha = order.alphabet
    la = alpha.level(a)
    lb = None if b == PAD else alpha.level(b)
    top1 = max(h.top1, la)
    top2 = h.top2 if lb is None else max(h.top2, lb)
    longer = h.longer or b == PAD
    comps = []
    for j in range(1, max(top1, top2) + 1):
        old = h.levels[j - 1] if j <= len(h.levels) else 0
        # a letter lands in a level projection only while nothing above that
        # level has been seen on its own track
        app1 = a if (h.top1 <= j and la == j) else None
        app2 = b if (lb is not None and h.top2 <= j and lb == j) else None
        comps.append(
            _step_level(alpha, old, app1, app2, j, longer, top1, top2, cap)
        )
    return WreathHistory(longer, top1, top2, tuple(comps))


def _step_level(alpha, old, app1, app2, j, longer, top1, top2, cap):
    if old is OVERFLOW:
        return OVERFLOW
    if old == 1 or old == -1:
        # settled levels stay settled: the losing side's projection is
        # frozen by construction while the winner can only grow
        return old
    if old == 0:
        if app1 is None and app2 is None:
            return 0
        if app1 is not None and app2 is not None:
            if app1 == app2:
                return 0
            sign = lex_cmp(alpha, (app2,), (app1,))
            over1: Word = ()
            over2: Word = ()
        elif app1 is not None:
            sign, over1, over2 = EQ, (app1,), ()
        else:
            sign, over1, over2 = EQ, (), (app2,)
        return _normalize_level(sign, over1, over2, j, longer, top1, top2, cap)

    sign, over1, over2 = old.sign, old.over1, old.over2
    if app1 is not None and app2 is None:
        if not over2:
            over1 = over1 + (app1,)
        else:
            if sign == EQ:
                sign = lex_cmp(alpha, (over2[0],), (app1,))
            over2 = over2[1:]
    elif app2 is not None and app1 is None:
        if not over1:
            over2 = over2 + (app2,)
        else:
            if sign == EQ:
                sign = lex_cmp(alpha, (app2,), (over1[0],))
            over1 = over1[1:]
    elif app1 is not None and app2 is not None:
        if over1:
            if sign == EQ:
                sign = lex_cmp(alpha, (app2,), (over1[0],))
            over1 = over1[1:] + (app1,)
        elif over2:
            if sign == EQ:
                sign = lex_cmp(alpha, (over2[0],), (app1,))
            over2 = over2[1:] + (app2,)
        else:
            if sign == EQ:
                sign = lex_cmp(alpha, (app2,), (app1,))
    return _normalize_level(sign, over1, over2, j, longer, top1, top2, cap)


# ----------------------------------------------------------------- deciding


def decide_precedes(order: Order, h: History, e1: Word, e2: Word) -> bool:
    """Does (track 2).e2 strictly precede (track 1).e1 in the order?

    Once track 1 is longer, the exact length gap is gone from a weight
    history (the weight gap is clamped), so a track-2 extension can only
    be affirmed by a strict weight drop; anything else answers False,
    which for the acceptor's pruning is the safe side.  Level histories
    carry enough to stay exact.
    """
    if _wt_like(order):
        if h.longer and e2:
            return h.wtdiff + order.word_weight(e1) - order.word_weight(e2) > 0
        return _wt_decide(order, h, e1, e2)
    return _wreath_decide(order, h, e1, e2)


def _wt_decide(order: Order, h: WtHistory, e1: Word, e2: Word) -> bool:
    d = h.wtdiff + order.word_weight(e1) - order.word_weight(e2)
    if d != 0:
        return d > 0
    if order.kind == WTLEX:
        return h.lexsign == 1
    if h.longer:
        # equal weight and track 2 strictly shorter
        return True
    if len(e1) != len(e2):
        return len(e2) < len(e1)
    return h.lexsign == 1


def _wreath_decide(order: Order, h: WreathHistory, e1: Word, e2: Word) -> bool:
    a = order.alphabet
    t1 = max(h.top1, a.max_level(e1))
    t2 = max(h.top2, a.max_level(e2))
    for j in range(max(t1, t2), 0, -1):
        c = h.levels[j - 1] if j <= len(h.levels) else 0
        ext1 = _pi(order, e1, j) if h.top1 <= j else ()
        ext2 = _pi(order, e2, j) if h.top2 <= j else ()
        if c is OVERFLOW:
            raise LogicError("deciding with an overflowed history")
        if c == 1:
            # settled for synced steps, but an extension can reopen the
            # level unless track 2's projection here is frozen
            return not ext2
        if c == -1:
            # track 1's projection is frozen here and track 2 can only
            # grow past it, so this stands
            return False
        if c == 0:
            s = shortlex_cmp(a, ext2, ext1)
            if s != EQ:
                return s == LT
            continue
        # unsettled level: matched parts carry c.sign, then the overhangs
        # and the extensions fight it out by shortlex
        delta = (len(c.over2) + len(ext2)) - (len(c.over1) + len(ext1))
        if delta != 0:
            return delta < 0
        if c.sign != EQ:
            return c.sign == LT
        s = lex_cmp(a, c.over2 + ext2, c.over1 + ext1)
        if s != EQ:
            return s == LT
    return False


# ------------------------------------------------------------------- bounds


@dataclass(frozen=True)
class HistoryBounds:
    """Admissible-history bounds computed from a difference label set."""

    max_weight: Optional[int] = None  # weighted orders
    overhang_cap: Optional[int] = None  # wreath-product order


def bounds_for(order: Order, labels) -> HistoryBounds:
    if _wt_like(order):
        return HistoryBounds(max_weight=max(order.word_weight(d) for d in labels))
    a = order.alphabet
    cap = 0
    for d in labels:
        for j in range(1, (a.max_level(d) if d else 0) + 1):
            cap = max(cap, sum(1 for s in d if a.level(s) == j))
    return HistoryBounds(overhang_cap=cap)


def in_bounds(order: Order, bounds: HistoryBounds, h: History, label: Word) -> bool:
    """Is this history inside the sufficient set at the given state label?"""
    if _wt_like(order):
        return -order.word_weight(label) <= h.wtdiff <= bounds.max_weight
    cap = bounds.overhang_cap
    for c in h.levels:
        if c is OVERFLOW:
            return False
        if isinstance(c, LevelRec) and (len(c.over1) > cap or len(c.over2) > cap):
            return False
    return True
