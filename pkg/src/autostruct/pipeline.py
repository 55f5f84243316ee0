"""End-to-end computation and verification of an automatic structure.

The stages:

1. run Knuth-Bendix on the presentation's rules until the system is
   confluent, the rule-derived difference labels stop changing, or the
   caps bite;
2. trace the rules into a difference machine and close it;
3. build the word acceptor from the machine;
4. build one multiplier per generator as the product of two acceptor
   copies with the machine, plus the diagonal identity multiplier;
5. check every multiplier's domain equals the accepted language; a gap
   word feeds new differences back in and restarts from stage 3;
6. unless the rewriting system was confluent, check every defining
   relation (and every generator against its inverse) by composing
   multipliers and comparing with the identity multiplier; a mismatch
   feeds its witness back in, and if that adds nothing the structure is
   refuted.

The outcome is always one of VERIFIED, KB_STOPPED, LOOP_LIMIT or
AXIOM_FAILED, with the machines and counts gathered in the result.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .acceptor import build_acceptor, irreducible_word_acceptor
from .diff import EPS, DiffMachine
from .errors import ResourceLimit
from .fsa import Fsa, pair_symbols
from .orders import Order
from .rewrite import CONFLUENT, RUNNING, KbCompletion, RewriteSystem
from .words import PAD, Word

VERIFIED = "verified"
KB_STOPPED = "kb-stopped"
LOOP_LIMIT = "loop-limit"
AXIOM_FAILED = "axiom-failed"

_LIVE, _ONLY2, _ONLY1 = 0, 1, 2  # which track is still reading


@dataclass
class StructureResult:
    outcome: str
    order: Order
    rws: RewriteSystem
    confluent: bool
    loops: int
    diff: Optional[DiffMachine] = None
    acceptor: Optional[Fsa] = None
    multipliers: dict = field(default_factory=dict)
    identity: Optional[Fsa] = None
    witness: Optional[tuple] = None
    raw_diff_count: Optional[int] = None
    pruned_diff_count: Optional[int] = None
    seconds: float = 0.0

    @property
    def verified(self) -> bool:
        return self.outcome == VERIFIED

    def report(self) -> dict:
        out = {
            "outcome": self.outcome,
            "confluent": self.confluent,
            "loops": self.loops,
            "rules": self.rws.active_count(),
            "seconds": round(self.seconds, 3),
        }
        if self.acceptor is not None:
            out["acceptor_states"] = self.acceptor.num_states
        if self.diff is not None:
            out["difference_states"] = self.diff.state_count()
        if self.raw_diff_count is not None:
            out["difference_states_raw"] = self.raw_diff_count
        if self.pruned_diff_count is not None:
            out["difference_states_pruned"] = self.pruned_diff_count
        if self.multipliers:
            out["multiplier_states"] = {
                g: m.num_states for g, m in sorted(self.multipliers.items())
            }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _rule_difference_labels(rs: RewriteSystem, cache: dict = None) -> frozenset:
    inv = rs.order.alphabet.invert
    out = set()
    for lhs, rhs in rs.active():
        key = (lhs, rhs)
        labels = None if cache is None else cache.get(key)
        if labels is None:
            labels = set()
            for i in range(max(len(lhs), len(rhs)) + 1):
                labels.add(rs.rewrite(inv(lhs[:i]) + rhs[:i]))
                labels.add(rs.rewrite(inv(rhs[:i]) + lhs[:i]))
            labels = frozenset(labels)
            if cache is not None:
                cache[key] = labels
        out |= labels
    return frozenset(out)


def run_knuth_bendix(
    rs: RewriteSystem,
    max_rules: int = 1000,
    max_len: int = 40,
    pass_pairs: int = 500,
    max_passes: int = 400,
) -> tuple:
    """Drive completion in passes until confluence or the difference
    labels derived from the rules stop moving.  Returns (proceed,
    confluent): proceed is False when the caps won out first."""
    comp = KbCompletion(rs, max_rules=max_rules, max_len=max_len)
    prev = None
    cache: dict = {}  # rules persist across passes, so their labels do too
    for _ in range(max_passes):
        comp.run(pass_pairs)
        status = comp.status()
        if status == CONFLUENT:
            return True, True
        snap = _rule_difference_labels(rs, cache)
        if snap == prev:
            return True, False
        prev = snap
        if status != RUNNING:
            return False, False
    return False, False


def _diagonal_multiplier(acc: Fsa) -> Fsa:
    symbols = pair_symbols(acc.symbols)
    transitions = {
        (s, (g, g)): t for (s, g), t in acc.transitions.items()
    }
    return Fsa(
        symbols=symbols,
        num_states=acc.num_states,
        start=acc.start,
        accepting=acc.accepting,
        transitions=transitions,
        track=2,
    ).minimized()


def build_multiplier(
    acc: Fsa, diff: DiffMachine, target: int, max_states: int = 100_000
) -> tuple:
    """Product of two acceptor copies with the difference machine,
    accepting where the difference hits the target state.  Also returns
    the difference labels used on accepting paths, for pruning."""
    gens = acc.symbols
    symbols = pair_symbols(gens)
    start = (acc.start, acc.start, EPS, _LIVE)
    ids = {start: 0}
    states = [start]
    transitions = {}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        sv, sw, d, mode = state
        sid = ids[state]
        for a, b in symbols:
            if a != PAD and b != PAD:
                if mode != _LIVE:
                    continue
                nv = acc.step(sv, a)
                nw = acc.step(sw, b)
                nd = diff.step(d, a, b)
                nmode = _LIVE
            elif b == PAD:
                if mode == _ONLY2:
                    continue
                nv = acc.step(sv, a)
                nw = sw
                nd = diff.step(d, a, PAD)
                nmode = _ONLY1
            else:
                if mode == _ONLY1:
                    continue
                nv = sv
                nw = acc.step(sw, b)
                nd = diff.step(d, PAD, b)
                nmode = _ONLY2
            if nv is None or nw is None or nd is None:
                continue
            nstate = (nv, nw, nd, nmode)
            if nstate not in ids:
                if len(states) >= max_states:
                    raise ResourceLimit(
                        f"multiplier product exceeded {max_states} states"
                    )
                ids[nstate] = len(states)
                states.append(nstate)
                queue.append(nstate)
            transitions[(sid, (a, b))] = ids[nstate]
    accepting = {i for i, (_, _, d, _) in enumerate(states) if d == target}
    # difference labels on useful paths: reachable and co-reachable
    back = {}
    for (sid, _), tid in transitions.items():
        back.setdefault(tid, set()).add(sid)
    alive = set(accepting)
    frontier = deque(alive)
    while frontier:
        s = frontier.popleft()
        for p in back.get(s, ()):
            if p not in alive:
                alive.add(p)
                frontier.append(p)
    used = {diff.labels[states[i][2]] for i in alive}
    fsa = Fsa(
        symbols=symbols,
        num_states=len(states),
        start=0,
        accepting=accepting,
        transitions=transitions,
        track=2,
    ).minimized()
    return fsa, used


def _multiplier_target(diff: DiffMachine, g: str) -> int:
    label = diff.rws.rewrite((g,))
    if label not in diff.index:
        diff.add_equation((g,), label)
        diff.close()
    return diff.index[label]


def build_all_multipliers(acc: Fsa, diff: DiffMachine) -> tuple:
    mults = {}
    used = set()
    for g in diff.alpha.symbols:
        m, u = build_multiplier(acc, diff, _multiplier_target(diff, g))
        mults[g] = m
        used |= u
    return mults, used


def check_domains(acc: Fsa, mults: dict) -> list:
    """Words the acceptor takes but some multiplier cannot move."""
    gaps = []
    for g in acc.symbols:
        dom = mults[g].project(1)
        wit = acc.equal_languages(dom)
        if wit is not None:
            gaps.append((g, wit))
    return gaps


def _compose_chain(mults: dict, identity: Fsa, letters: Word) -> Fsa:
    out = identity
    for a in letters:
        out = out.compose(mults[a]).minimized()
    return out


def check_axioms(
    order: Order, relations, mults: dict, identity: Fsa
) -> Optional[tuple]:
    """First relator (or generator-inverse word) whose composed
    multiplier differs from the identity multiplier."""
    alpha = order.alphabet
    words = [x + alpha.invert(y) for x, y in relations]
    words += [(g, alpha.inverse[g]) for g in alpha.symbols]
    for r in words:
        composed = _compose_chain(mults, identity, r)
        wit = composed.equal_languages(identity)
        if wit is not None:
            return r, wit
    return None


def compute_structure(
    order: Order,
    relations,
    kb_max_rules: int = 1000,
    kb_max_len: int = 40,
    max_loops: int = 10,
    prune: bool = False,
) -> StructureResult:
    began = time.monotonic()
    relations = [(tuple(x), tuple(y)) for x, y in relations]
    rs = RewriteSystem.from_relations(order, relations)

    def done(result):
        result.seconds = time.monotonic() - began
        return result

    proceed, confluent = run_knuth_bendix(rs, kb_max_rules, kb_max_len)
    if not proceed:
        return done(StructureResult(KB_STOPPED, order, rs, False, 0))

    diff = DiffMachine.from_rules(rs)
    # a confluent system names its language directly (no factor may be a
    # left-hand side), and that does not move as the machine grows
    exact_acc = irreducible_word_acceptor(rs) if confluent else None
    loops = 0
    while True:
        try:
            acc = exact_acc if exact_acc is not None else build_acceptor(diff)
            mults, used = build_all_multipliers(acc, diff)
        except ResourceLimit:
            return done(StructureResult(
                LOOP_LIMIT, order, rs, confluent, loops, diff=diff,
            ))
        identity = _diagonal_multiplier(acc)

        gaps = check_domains(acc, mults)
        if gaps:
            loops += 1
            if loops > max_loops:
                res = StructureResult(
                    LOOP_LIMIT, order, rs, confluent, loops,
                    diff=diff, acceptor=acc, multipliers=mults,
                    identity=identity, witness=gaps[0],
                )
                return done(res)
            for g, v in gaps:
                w = diff.reduce(rs.rewrite(v + (g,)))
                diff.add_equation(v + (g,), w)
                diff.add_equation(v, w)
            diff.close()
            continue

        if not confluent:
            bad = check_axioms(order, relations, mults, identity)
            if bad is not None:
                relator, wit = bad
                loops += 1
                if loops > max_loops:
                    res = StructureResult(
                        LOOP_LIMIT, order, rs, confluent, loops,
                        diff=diff, acceptor=acc, multipliers=mults,
                        identity=identity, witness=(relator, wit),
                    )
                    return done(res)
                before = diff.state_count()
                # the witness is a padded pair word; the repair walks the
                # relator starting from its first track
                u = rs.rewrite(tuple(g for g, _ in wit if g != PAD))
                for a in relator:
                    nxt = diff.reduce(rs.rewrite(u + (a,)))
                    diff.add_equation(u + (a,), nxt)
                    diff.add_equation(u, nxt)
                    u = nxt
                diff.close()
                if diff.state_count() == before:
                    res = StructureResult(
                        AXIOM_FAILED, order, rs, confluent, loops,
                        diff=diff, acceptor=acc, multipliers=mults,
                        identity=identity, witness=(relator, wit),
                    )
                    return done(res)
                continue

        res = StructureResult(
            VERIFIED, order, rs, confluent, loops,
            diff=diff, acceptor=acc, multipliers=mults, identity=identity,
            raw_diff_count=diff.state_count(),
        )
        if prune:
            _prune_verified(res, used)
        return done(res)


def _prune_verified(res: StructureResult, used: set) -> None:
    """Shrink the difference machine to the labels multipliers touch,
    then rebuild and re-verify; keep the smaller set only if everything
    still checks out."""
    rs, diff = res.rws, res.diff
    small = DiffMachine(rs, sorted(used, key=lambda w: (len(w), w)))
    small.close()
    if small.state_count() >= diff.state_count():
        return
    try:
        acc = (
            irreducible_word_acceptor(rs) if res.confluent
            else build_acceptor(small)
        )
        mults, _ = build_all_multipliers(acc, small)
    except ResourceLimit:
        return
    identity = _diagonal_multiplier(acc)
    if check_domains(acc, mults):
        return
    if acc.equal_languages(res.acceptor) is not None:
        return
    res.diff = small
    res.acceptor = acc
    res.multipliers = mults
    res.identity = identity
    res.pruned_diff_count = small.state_count()
