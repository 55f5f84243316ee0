"""The word difference machine: reduced differences with recomputed moves.

States are distinct reduced words ("differences"); the start state is the
empty word.  Rather than storing transitions found during tracing, every
move is defined by recomputation: there is a move from d to d' on the pair
(a, b) exactly when reducing inverse(a).d.b yields the label of an existing
state d' (with a padded coordinate contributing nothing).  This makes the
start state's diagonal loops, the prefix/suffix moves required by substring
closure, and label consistency hold by construction; closing the label set
under inversion, prefix and suffix is then a plain set fixpoint.

Labels are reduced by the rewriting system.  When the system is confluent
the labels are the least representatives under the order; otherwise they
are a best effort, which the later verification stages compensate for.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import InputError, LogicError
from .fsa import pad_pair, pair_symbols
from .rewrite import RewriteSystem
from .words import PAD, Word

EPS = 0  # index of the start state; its label is the empty word


class DiffMachine:
    def __init__(self, rws: RewriteSystem, labels: Optional[Iterable[Word]] = None):
        self.rws = rws
        self.order = rws.order
        self.alpha = rws.order.alphabet
        self.labels = [()]
        self.index = {(): EPS}
        self.pairs = pair_symbols(self.alpha.symbols)
        self.transitions = {}
        self.inverse_state = {}
        if labels:
            for w in labels:
                self._add_label(w)

    @classmethod
    def from_rules(cls, rws: RewriteSystem) -> "DiffMachine":
        """Differences traced along every rule, closed and wired up."""
        d = cls(rws)
        for lhs, rhs in rws.active():
            d.add_equation(lhs, rhs)
        d.close()
        return d

    # ------------------------------------------------------------- labels

    def _add_label(self, w: Word) -> int:
        if w in self.index:
            return self.index[w]
        if not self.rws.is_irreducible(w):
            raise LogicError(f"difference label {w!r} is not reduced")
        self.labels.append(w)
        self.index[w] = len(self.labels) - 1
        return self.index[w]

    def state_count(self) -> int:
        return len(self.labels)

    def add_equation(self, x: Word, y: Word) -> None:
        """Record the differences along the padded pair (x, y).

        Both the from-scratch reductions of the prefix differences and the
        incrementally chained ones are added; they agree for a confluent
        system, and the chain keeps the trace walkable for an incomplete
        one.  Call close() afterwards to rewire transitions.
        """
        rw, inv = self.rws.rewrite, self.alpha.invert
        for i in range(max(len(x), len(y)) + 1):
            self._add_label(rw(inv(x[:i]) + y[:i]))
        d: Word = ()
        for a, b in pad_pair(x, y):
            left = inv((a,)) if a != PAD else ()
            right = (b,) if b != PAD else ()
            d = rw(left + d + right)
            self._add_label(d)

    def close(self, max_states: Optional[int] = None) -> None:
        """Close labels under inversion, prefix and suffix; recompute moves.

        Factors of reduced words are reduced, so only the inverses need a
        rewrite.  The fixpoint is guarded for pathological incomplete
        systems where inversion chains could wander.
        """
        if max_states is None:
            max_states = 10 * len(self.labels) + 1000
        queue = list(self.labels)
        while queue:
            w = queue.pop()
            for cand in (self.rws.rewrite(self.alpha.invert(w)), w[:-1], w[1:]):
                if cand not in self.index:
                    if len(self.labels) >= max_states:
                        raise LogicError("difference label closure exploded")
                    self._add_label(cand)
                    queue.append(cand)
        self.rebuild()

    def rebuild(self) -> None:
        """Recompute every move and the inversion map from the labels."""
        rw, inv = self.rws.rewrite, self.alpha.invert
        self.transitions = {}
        for s, label in enumerate(self.labels):
            for a, b in self.pairs:
                left = inv((a,)) if a != PAD else ()
                right = (b,) if b != PAD else ()
                t = self.index.get(rw(left + label + right))
                if t is not None:
                    self.transitions[(s, (a, b))] = t
        self.inverse_state = {}
        for s, label in enumerate(self.labels):
            t = self.index.get(rw(inv(label)))
            if t is None:
                raise LogicError("labels are not closed under inversion")
            self.inverse_state[s] = t

    def restricted(self, keep_labels: Iterable[Word]) -> "DiffMachine":
        """Copy with only the given labels (the empty word always kept)."""
        d = DiffMachine(self.rws, keep_labels)
        d.rebuild()
        return d

    def violations(self) -> list:
        """Audit the defining conditions of a difference machine.

        Returns human-readable complaints; an empty list means the machine
        is sound: states labelled by distinct words over the alphabet, the
        start state labelled by the empty word, every diagonal loop at the
        start present, and each transition on (a, b) carrying its source
        label d to a state whose label spells the same group element as
        a^-1 d b.  Every state accepting is structural here: the machine
        stores no rejecting states at all.
        """
        out = []
        rw, inv = self.rws.rewrite, self.alpha.invert
        seen = {}
        for i, w in enumerate(self.labels):
            try:
                self.alpha.check_word(w)
            except InputError:
                out.append(f"state {i} label {w!r} is not a word")
                continue
            if w in seen:
                out.append(f"states {seen[w]} and {i} share the label {w!r}")
            else:
                seen[w] = i
        if self.labels[EPS] != ():
            out.append("start state is not labelled by the empty word")
        for g in self.alpha.symbols:
            if self.transitions.get((EPS, (g, g))) != EPS:
                out.append(f"missing diagonal loop on {g!r}")
        for (s, (a, b)), t in sorted(self.transitions.items()):
            left = inv((a,)) if a != PAD else ()
            right = (b,) if b != PAD else ()
            if rw(left + self.labels[s] + right) != rw(self.labels[t]):
                out.append(
                    f"transition {s} --({a},{b})--> {t} does not track the labels"
                )
        return out

    # ------------------------------------------------------------ walking

    def step(self, s: int, a: str, b: str) -> Optional[int]:
        return self.transitions.get((s, (a, b)))

    def trace_pair(self, w1: Word, w2: Word) -> Optional[int]:
        """Target state of the padded pair, or None when it falls off."""
        s = EPS
        for a, b in pad_pair(w1, w2):
            s = self.transitions.get((s, (a, b)))
            if s is None:
                return None
        return s

    def equal_in_group(self, w1: Word, w2: Word) -> bool:
        """Do the words fellow travel to the trivial difference?"""
        return self.trace_pair(w1, w2) == EPS

    # ----------------------------------------------------------- reducing

    def reduce(self, w: Word) -> Word:
        """Iteratively replace factors with earlier spellings the machine
        can witness; deterministic and terminating."""
        w = tuple(w)
        while True:
            hit = self._find_reduction(w)
            if hit is None:
                return w
            p, i, u = hit
            w = w[:p] + u + w[i:]

    def _find_reduction(self, w: Word):
        gens = self.alpha.symbols
        order = self.order
        for p in range(len(w)):
            # (state, track-2 padded) -> earliest candidate spelling
            frontier = {(EPS, False): ()}
            for i in range(p, len(w)):
                g = w[i]
                nxt = {}

                def offer(key, cand):
                    old = nxt.get(key)
                    if old is None or order.precedes(cand, old):
                        nxt[key] = cand

                for (d, padded), cand in frontier.items():
                    if padded:
                        t = self.transitions.get((d, (g, PAD)))
                        if t is not None:
                            offer((t, True), cand)
                        continue
                    for b in gens:
                        t = self.transitions.get((d, (g, b)))
                        if t is not None:
                            offer((t, False), cand + (b,))
                    t = self.transitions.get((d, (g, PAD)))
                    if t is not None:
                        offer((t, True), cand)
                frontier = nxt
                if not frontier:
                    break
                factor = w[p : i + 1]
                best = None
                for (d, _padded), cand in frontier.items():
                    if d == EPS and order.precedes(cand, factor):
                        if best is None or order.precedes(cand, best):
                            best = cand
                # candidates longer than the factor: silent track-1 tail
                tails = {
                    d: cand
                    for (d, padded), cand in frontier.items()
                    if not padded
                }
                changed = True
                while changed:
                    changed = False
                    for d, cand in list(tails.items()):
                        for h in gens:
                            t = self.transitions.get((d, (PAD, h)))
                            if t is None:
                                continue
                            longer = cand + (h,)
                            old = tails.get(t)
                            if old is None or order.precedes(longer, old):
                                tails[t] = longer
                                changed = True
                ext = tails.get(EPS)
                if ext is not None and order.precedes(ext, factor):
                    if best is None or order.precedes(ext, best):
                        best = ext
                if best is not None:
                    return p, i + 1, best
        return None
