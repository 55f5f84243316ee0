"""Word acceptor built outwards from histories of candidate reductions.

A state of the acceptor is a set of pairs (difference state, history):
one for each way some suffix of the word read so far could be shadowed
by a smaller-so-far companion word walking through the difference
machine.  Reading a further generator either extends each shadow, kills
the word (some shadow is certified to complete into an earlier equal
word), or drops shadows that leave the bounded sufficient set.  Every
surviving state accepts.

The result accepts every word with no machine-witnessed reduction, and
never both a word and its machine reduction.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .diff import EPS, DiffMachine
from .errors import ResourceLimit
from .fsa import Fsa
from .history import (
    HistoryBounds,
    bounds_for,
    decide_precedes,
    history,
    history_step,
    in_bounds,
)
from .orders import Order, WREATH
from .rewrite import RewriteSystem
from .words import PAD, Word


def irreducible_word_acceptor(rs: RewriteSystem) -> Fsa:
    """Automaton of the words containing no left-hand side as a factor.

    For a confluent system this language is exactly the set of least
    representatives, so it can serve as the word acceptor directly,
    bypassing the history construction."""
    lhss = [lhs for lhs, _ in rs.active()]
    prefixes = {()}
    for lhs in lhss:
        for i in range(len(lhs)):
            prefixes.add(lhs[:i])

    def extend(p: Word, a: str) -> Optional[Word]:
        w = p + (a,)
        for l in lhss:
            if len(l) <= len(w) and w[-len(l):] == l:
                return None
        for i in range(len(w) + 1):
            if w[i:] in prefixes:
                return w[i:]  # longest live suffix
        return ()

    gens = rs.order.alphabet.symbols
    ids: dict = {(): 0}
    order_of: list = [()]
    transitions = {}
    queue = deque([()])
    while queue:
        p = queue.popleft()
        sid = ids[p]
        for a in gens:
            t = extend(p, a)
            if t is None:
                continue
            if t not in ids:
                ids[t] = len(order_of)
                order_of.append(t)
                queue.append(t)
            transitions[(sid, a)] = ids[t]
    fsa = Fsa(
        symbols=gens,
        num_states=len(order_of),
        start=0,
        accepting=range(len(order_of)),
        transitions=transitions,
        track=1,
    )
    return fsa.minimized()


def _least_trivial_companions(diff: DiffMachine, g: str) -> dict:
    """For each difference state: the least word z such that the padded
    pair (g, z) drives the start state there.  Track-1 silent moves are
    relaxed to a fixpoint; translation invariance keeps that finite."""
    order = diff.order
    best: dict = {}

    def offer(s, z):
        old = best.get(s)
        if old is None or order.precedes(z, old):
            best[s] = z
            return True
        return False

    for b in diff.alpha.symbols:
        t = diff.step(EPS, g, b)
        if t is not None:
            offer(t, (b,))
    t = diff.step(EPS, g, PAD)
    if t is not None:
        offer(t, ())
    changed = True
    while changed:
        changed = False
        for s, z in list(best.items()):
            for h in diff.alpha.symbols:
                t = diff.step(s, PAD, h)
                if t is not None and offer(t, z + (h,)):
                    changed = True
    return best


def _generator_reduces(diff: DiffMachine, g: str) -> bool:
    z = _least_trivial_companions(diff, g).get(EPS)
    return z is not None and diff.order.precedes(z, (g,))


def _fresh_shadows(diff: DiffMachine, bounds: HistoryBounds, g: str) -> frozenset:
    """Shadows opened by g itself: companions h (a generator or nothing)
    whose difference with g is a known state, bounded."""
    order = diff.order
    out = set()
    cap = bounds.overhang_cap
    for h in diff.alpha.symbols:
        if h == g:
            continue
        t = diff.step(EPS, g, h)
        if t is not None:
            hist = history(order, (g,), (h,), overhang_cap=cap)
            if in_bounds(order, bounds, hist, diff.labels[t]):
                out.add((t, hist))
    t = diff.step(EPS, g, PAD)
    if t is not None:
        hist = history(order, (g,), (), overhang_cap=cap)
        if in_bounds(order, bounds, hist, diff.labels[t]):
            out.add((t, hist))
    return frozenset(out)


def build_acceptor(
    diff: DiffMachine,
    bounds: Optional[HistoryBounds] = None,
    prune_dominated: bool = False,
    max_shadows: int = 200_000,
    max_states: int = 150_000,
) -> Fsa:
    order = diff.order
    gens = diff.alpha.symbols
    if bounds is None:
        bounds = bounds_for(order, diff.labels)
    cap = bounds.overhang_cap
    wt_like = order.kind != WREATH

    reduces = {g: _generator_reduces(diff, g) for g in gens}
    fresh = {
        g: (frozenset() if reduces[g] else _fresh_shadows(diff, bounds, g))
        for g in gens
    }

    # Shadows are interned to integers so the hot loop hashes small ints,
    # not nested history records.  A shadow's fate under a generator is
    # independent of the set it sits in, so kill flags and successor id
    # tuples are filled lazily per (shadow id, generator index).
    n_gens = len(gens)
    gen_index = {g: i for i, g in enumerate(gens)}
    shadow_ids: dict = {}
    shadow_list: list = []
    kill_rows: list = []
    succ_rows: list = []

    def intern(d: int, hist) -> int:
        key = (d, hist)
        sid = shadow_ids.get(key)
        if sid is None:
            sid = len(shadow_list)
            if sid >= max_shadows:
                raise ResourceLimit(
                    f"acceptor shadow universe exceeded {max_shadows}"
                )
            shadow_ids[key] = sid
            shadow_list.append(key)
            kill_rows.append([None] * n_gens)
            succ_rows.append([None] * n_gens)
        return sid

    def compute_kill(sid: int, g: str) -> bool:
        d, hist = shadow_list[sid]
        # (a) the companion already equals the extended word
        t = diff.step(d, g, PAD)
        if t == EPS and decide_precedes(order, hist, (g,), ()):
            return True
        for h in gens:
            t = diff.step(d, g, h)
            if t is None:
                continue
            if t == EPS:
                # (b) companion plus one generator
                if decide_precedes(order, hist, (g,), (h,)):
                    return True
            else:
                # (c) companion, a generator, and the closing word
                dd = diff.labels[diff.inverse_state[t]]
                if decide_precedes(order, hist, (g,), (h,) + dd):
                    return True
        return False

    def compute_successors(sid: int, g: str) -> tuple:
        d, hist = shadow_list[sid]
        out = []
        # a move onto the trivial difference is not a shadow: the kill
        # rules already weighed it and found the companion larger, and
        # an equal companion stays larger
        t = diff.step(d, g, PAD)
        if t is not None and t != EPS:
            nh = history_step(order, hist, g, PAD, overhang_cap=cap)
            if in_bounds(order, bounds, nh, diff.labels[t]):
                out.append(intern(t, nh))
        if not hist.longer:  # a companion that stopped cannot resume
            for h in gens:
                t = diff.step(d, g, h)
                if t is not None and t != EPS:
                    nh = history_step(order, hist, g, h, overhang_cap=cap)
                    if in_bounds(order, bounds, nh, diff.labels[t]):
                        out.append(intern(t, nh))
        return tuple(out)

    fresh_ids = {
        g: frozenset(intern(d, h) for d, h in fresh[g]) for g in gens
    }

    def prune(out: set) -> set:
        # optional discard of dominated shadows: with machine state, the
        # stopped flag and the lex sign all equal, a lighter companion
        # decides everything a heavier one decides, so only the largest
        # weight gap needs keeping (weighted orders only)
        best: dict = {}
        for sid in out:
            d, hist = shadow_list[sid]
            key = (d, hist.longer, hist.lexsign)
            cur = best.get(key)
            if cur is None or hist.wtdiff > shadow_list[cur][1].wtdiff:
                best[key] = sid
        return set(best.values())

    def target(sids: frozenset, g: str) -> Optional[frozenset]:
        if reduces[g]:
            return None
        gi = gen_index[g]
        for sid in sids:
            row = kill_rows[sid]
            v = row[gi]
            if v is None:
                v = compute_kill(sid, g)
                row[gi] = v
            if v:
                return None
        out = set(fresh_ids[g])
        for sid in sids:
            row = succ_rows[sid]
            t = row[gi]
            if t is None:
                t = compute_successors(sid, g)
                row[gi] = t
            out.update(t)
        if prune_dominated and wt_like:
            out = prune(out)
        return frozenset(out)

    start: frozenset = frozenset()
    ids = {start: 0}
    order_of = [start]
    transitions = {}
    queue = deque([start])
    while queue:
        shadows = queue.popleft()
        sid = ids[shadows]
        for g in gens:
            tset = target(shadows, g)
            if tset is None:
                continue
            if tset not in ids:
                if len(order_of) >= max_states:
                    raise ResourceLimit(
                        f"acceptor subset construction exceeded {max_states} states"
                    )
                ids[tset] = len(order_of)
                order_of.append(tset)
                queue.append(tset)
            transitions[(sid, g)] = ids[tset]

    fsa = Fsa(
        symbols=gens,
        num_states=len(order_of),
        start=0,
        accepting=range(len(order_of)),
        transitions=transitions,
        track=1,
    )
    return fsa.minimized()
