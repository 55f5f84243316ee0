"""Rewriting systems oriented by a reduction order, plus completion.

A system always carries the free-reduction rules (a generator followed by
its inverse cancels) ahead of the oriented relation rules, and rewriting is
deterministic: leftmost match first, lowest rule index on ties.  Completion
is the classic critical-pair loop with interreduction, run in bounded passes
so a caller can interleave it with other work and stop early.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Iterator, Optional

from .errors import InputError, LogicError
from .orders import EQ, GT, LT, Order
from .words import Word

CONFLUENT = "confluent"
STOPPED = "stopped"
RUNNING = "running"


class RewriteSystem:
    """Ordered list of rules lhs -> rhs with rhs strictly earlier."""

    def __init__(self, order: Order):
        self.order = order
        self.rules = []  # [lhs, rhs, active]
        self._by_first = {}
        self._max_lhs = 0
        for g in order.alphabet.symbols:
            self._append((g, order.alphabet.inverse[g]), ())

    @classmethod
    def from_relations(cls, order: Order, relations: Iterable[tuple]) -> "RewriteSystem":
        rs = cls(order)
        for x, y in relations:
            rs.add_equation(x, y)
        return rs

    # ------------------------------------------------------------ building

    def _append(self, lhs: Word, rhs: Word) -> int:
        idx = len(self.rules)
        self.rules.append([lhs, rhs, True])
        self._by_first.setdefault(lhs[0], []).append(idx)
        self._max_lhs = max(self._max_lhs, len(lhs))
        return idx

    def add_rule(self, lhs: Word, rhs: Word) -> int:
        """Append an oriented rule; the caller vouches for rhs < lhs."""
        if not lhs:
            raise LogicError("empty left-hand side")
        if self.order.compare(rhs, lhs) != LT:
            raise LogicError("rule is not oriented by the order")
        return self._append(lhs, rhs)

    def add_equation(self, x: Word, y: Word) -> Optional[int]:
        """Orient a valid group equation into a rule; drop it if trivial."""
        x = self.order.alphabet.check_word(x)
        y = self.order.alphabet.check_word(y)
        c = self.order.compare(x, y)
        if c == EQ:
            return None
        if c == LT:
            x, y = y, x
        return self.add_rule(x, y)

    def deactivate(self, idx: int) -> None:
        self.rules[idx][2] = False

    def active(self) -> Iterator[tuple]:
        for lhs, rhs, on in self.rules:
            if on:
                yield lhs, rhs

    def active_count(self) -> int:
        return sum(1 for r in self.rules if r[2])

    # ----------------------------------------------------------- rewriting

    def rewrite(self, w: Word) -> Word:
        """Deterministic normal form of w under the active rules."""
        out = list(w)
        i = 0
        while i < len(out):
            hit = False
            for idx in self._by_first.get(out[i], ()):
                rule = self.rules[idx]
                if not rule[2]:
                    continue
                lhs = rule[0]
                n = len(lhs)
                if out[i : i + n] == list(lhs):
                    out[i : i + n] = rule[1]
                    # no earlier match can start before this window
                    i = max(0, i - self._max_lhs + 1)
                    hit = True
                    break
            if not hit:
                i += 1
        return tuple(out)

    def is_irreducible(self, w: Word) -> bool:
        for i in range(len(w)):
            for idx in self._by_first.get(w[i], ()):
                rule = self.rules[idx]
                if rule[2] and w[i : i + len(rule[0])] == rule[0]:
                    return False
        return True

    def normal_form(self, w: Word) -> Word:
        return self.rewrite(self.order.alphabet.check_word(w))


# -------------------------------------------------------- critical pairs


def critical_pairs(lhs1: Word, rhs1: Word, lhs2: Word, rhs2: Word, same_rule: bool):
    """Superpositions of two rules: (superposed word, reduction 1, reduction 2).

    Proper overlaps (a suffix of the first left side equals a prefix of the
    second) and strict containments of the second inside the first.  The
    full self-overlap of a rule with itself is no superposition at all.
    """
    n1, n2 = len(lhs1), len(lhs2)
    for k in range(1, min(n1, n2)):
        if lhs1[n1 - k :] == lhs2[:k]:
            sup = lhs1 + lhs2[k:]
            yield sup, rhs1 + lhs2[k:], lhs1[: n1 - k] + rhs2
    for s in range(0, n1 - n2 + 1):
        if same_rule and s == 0 and n1 == n2:
            continue
        if lhs1[s : s + n2] == lhs2:
            yield lhs1, rhs1, lhs1[:s] + rhs2 + lhs1[s + n2 :]


def is_confluent(rs: RewriteSystem) -> bool:
    """Do all critical pairs of the active rules join?"""
    rules = list(rs.active())
    for i, (l1, r1) in enumerate(rules):
        for j, (l2, r2) in enumerate(rules):
            for _sup, p, q in critical_pairs(l1, r1, l2, r2, i == j):
                if rs.rewrite(p) != rs.rewrite(q):
                    return False
    return True


# ------------------------------------------------------------- completion


class KbCompletion:
    """Critical-pair completion driver over a rewriting system.

    Runs in bounded passes; between passes the caller may inspect the rule
    set.  Equations whose normalized sides exceed the length cap are
    discarded but remembered: a drained queue then means the system is
    incomplete, not confluent.
    """

    def __init__(
        self,
        rs: RewriteSystem,
        max_rules: int = 1000,
        max_len: int = 40,
    ):
        if max_rules < 1 or max_len < 1:
            raise InputError("completion caps must be positive")
        self.rs = rs
        self.max_rules = max_rules
        self.max_len = max_len
        self.discarded = False
        self._queue = []
        self._seq = 0
        rules = [
            (i, r[0], r[1]) for i, r in enumerate(rs.rules) if r[2]
        ]
        for i, l1, r1 in rules:
            for j, l2, r2 in rules:
                self._push_pairs(l1, r1, l2, r2, i == j)

    def _push_pairs(self, l1, r1, l2, r2, same):
        for sup, p, q in critical_pairs(l1, r1, l2, r2, same):
            self._push(len(sup), p, q)

    def _push(self, prio, p, q):
        self._seq += 1
        heapq.heappush(self._queue, (prio, self._seq, p, q))

    def status(self) -> str:
        if self.rs.active_count() > self.max_rules:
            return STOPPED
        if self._queue:
            return RUNNING
        return STOPPED if self.discarded else CONFLUENT

    def run(self, max_pairs: int = 1000) -> str:
        """Process up to max_pairs queued superpositions; return status."""
        done = 0
        rs = self.rs
        while self._queue and done < max_pairs:
            if rs.active_count() > self.max_rules:
                break
            _prio, _seq, p, q = heapq.heappop(self._queue)
            done += 1
            p2, q2 = rs.rewrite(p), rs.rewrite(q)
            if p2 == q2:
                continue
            c = rs.order.compare(p2, q2)
            lhs, rhs = (p2, q2) if c == GT else (q2, p2)
            if len(lhs) > self.max_len or len(rhs) > self.max_len:
                self.discarded = True
                continue
            new_idx = rs.add_rule(lhs, rhs)
            # interreduce: retire rules whose left side the new rule hits,
            # and renormalize right sides in place
            for i, rule in enumerate(rs.rules):
                if i == new_idx or not rule[2]:
                    continue
                old_lhs, old_rhs = rule[0], rule[1]
                if _contains(old_lhs, lhs):
                    rs.deactivate(i)
                    self._push(len(old_lhs), old_lhs, old_rhs)
                    continue
                reduced = rs.rewrite(old_rhs)
                if reduced != old_rhs:
                    rule[1] = reduced
            for i, rule in enumerate(rs.rules):
                if not rule[2]:
                    continue
                l2, r2 = rule[0], rule[1]
                if i != new_idx:
                    self._push_pairs(lhs, rhs, l2, r2, False)
                    self._push_pairs(l2, r2, lhs, rhs, False)
                else:
                    self._push_pairs(lhs, rhs, lhs, rhs, True)
        return self.status()


def _contains(w: Word, factor: Word) -> bool:
    n = len(factor)
    return any(w[i : i + n] == factor for i in range(len(w) - n + 1))


def kb_complete(
    rs: RewriteSystem,
    max_rules: int = 1000,
    max_len: int = 40,
    max_pairs: int = 200000,
) -> str:
    """One-shot completion; returns the final status."""
    kb = KbCompletion(rs, max_rules=max_rules, max_len=max_len)
    status = kb.run(max_pairs)
    if status == RUNNING:
        status = STOPPED
    return status
