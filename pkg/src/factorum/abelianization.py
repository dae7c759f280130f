"""Abelianization of a presentation and the weak-transfer criterion.

The abelianization of <X | R> is the commutative semigroup on exponent
vectors N^X modulo the vector rewrites induced by R; equality is again a
bounded congruence closure, mirroring the word engine's certification
semantics.  Under the reduced-presentation restriction no nontrivial units
arise inside certified balls (a unit scan guards this), so the reduced
abelianization coincides with the abelianization.

Two elements are related by equiv_p when they admit rigid factorizations
with the same multiset of atom associate-classes.  The canonical map to
the reduced abelianization is a weak transfer homomorphism iff whenever
a equiv_p b, *every* atom multiset of a is matched by one of b; the
bounded checker scans all explored equiv_p-related pairs for exactly this
condition and returns the blocking pair and factorization otherwise.
Transitivity of equiv_p is checked, not assumed, and the (undecidable)
cancellativity of the abelianization is verified as a bounded necessary
condition and recorded as an assumption.

When every relation is length-preserving, word length is a transfer
homomorphism onto (N_0, +); ``length_map`` returns it with a certificate
checked over the explored ball.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .factorizations import rigid_factorizations
from .handles import DivisorPairs, SemigroupHandle
from .presentation import (Element, ExplorationBudget, Presentation,
                           PresentationSemigroup)

Vector = Tuple[int, ...]


def _vec_of(word: Tuple[str, ...], index: Dict[str, int], n: int) -> Vector:
    v = [0] * n
    for sym in word:
        v[index[sym]] += 1
    return tuple(v)


@dataclass(frozen=True)
class VectorElement:
    coords: Vector
    certified: bool = True

    def __hash__(self):
        return hash(self.coords)

    def __eq__(self, other):
        return isinstance(other, VectorElement) and self.coords == other.coords


class CommutativeVectorSemigroup(SemigroupHandle):
    """Free commutative monoid N^k modulo vector rewrites, with bounded
    congruence closure.  Elements are exponent vectors."""

    reduced = True
    commutative = True

    def __init__(self, generators: Tuple[str, ...],
                 relations: Sequence[Tuple[Vector, Vector]],
                 budget: ExplorationBudget):
        self.generators = generators
        self.budget = budget
        self.n = len(generators)
        self._rules: List[Tuple[Vector, Vector]] = []
        for lhs, rhs in relations:
            self._rules.append((lhs, rhs))
            if lhs != rhs:
                self._rules.append((rhs, lhs))
        self._canon: Dict[Vector, Vector] = {}
        self._balls: Dict[Vector, Tuple[FrozenSet[Vector], bool]] = {}
        self.name = "abelianization(" + " ".join(generators) + ")"

    def _key(self, v: Vector):
        return (sum(v), v)

    def ball(self, v: Vector) -> Tuple[FrozenSet[Vector], bool]:
        if v in self._canon:
            return self._balls[self._canon[v]]
        cap = max(self.budget.max_word_length, sum(v))
        members = {v}
        queue = [v]
        closed = True
        while queue:
            w = queue.pop()
            for lhs, rhs in self._rules:
                if all(a >= b for a, b in zip(w, lhs)):
                    nb = tuple(a - b + c for a, b, c in zip(w, lhs, rhs))
                    if sum(nb) > cap:
                        closed = False
                        continue
                    if nb not in members:
                        if len(members) >= self.budget.max_ball_size:
                            closed = False
                            queue = []
                            break
                        members.add(nb)
                        queue.append(nb)
        canonical = min(members, key=self._key)
        result = (frozenset(members), closed)
        for m in members:
            self._canon[m] = canonical
        self._balls[canonical] = result
        return result

    def element(self, v: Vector) -> VectorElement:
        members, closed = self.ball(v)
        return VectorElement(self._canon[v], closed)

    def project_word(self, word: Tuple[str, ...]) -> VectorElement:
        index = {g: i for i, g in enumerate(self.generators)}
        return self.element(_vec_of(word, index, self.n))

    # SemigroupHandle interface

    def identity(self) -> VectorElement:
        return VectorElement((0,) * self.n, True)

    def key(self, x: VectorElement):
        return x.coords

    def is_unit(self, x: VectorElement) -> bool:
        return sum(x.coords) == 0

    def multiply(self, x: VectorElement, y: VectorElement) -> VectorElement:
        return self.element(tuple(a + b for a, b in zip(x.coords, y.coords)))

    def certified(self, x: VectorElement) -> bool:
        return x.certified

    def is_atom(self, x: VectorElement) -> bool:
        if self.is_unit(x):
            return False
        members, closed = self.ball(x.coords)
        return closed and all(sum(m) == 1 for m in members)

    def left_divisor_atoms(self, x: VectorElement) -> DivisorPairs:
        members, closed = self.ball(x.coords)
        complete = closed
        pairs = {}
        for m in sorted(members, key=self._key):
            for sub in _subvectors(m):
                el = self.element(sub)
                if not self.is_atom(el):
                    if not el.certified:
                        complete = False
                    continue
                rest = self.element(tuple(a - b for a, b in zip(m, sub)))
                complete = complete and el.certified and rest.certified
                pairs[(el.coords, rest.coords)] = (el, rest)
        ordered = [pairs[k] for k in sorted(pairs)]
        return ordered, complete

    def length_cap(self, x: VectorElement) -> int:
        return max(self.budget.max_word_length, sum(x.coords))

    def format_element(self, x: VectorElement) -> str:
        if self.is_unit(x):
            return "1"
        return " ".join(f"{g}^{e}" if e > 1 else g
                        for g, e in zip(self.generators, x.coords) if e)

    def unit_scan(self, max_total: int = 6) -> bool:
        """Guard: no nonzero vector inside certified balls is congruent to 0
        (so the abelianization is reduced as assumed)."""
        zero = (0,) * self.n
        for v in _vectors_up_to(self.n, max_total):
            if sum(v) == 0:
                continue
            members, closed = self.ball(v)
            if closed and zero in members:
                return False
        return True

    def cancellativity_scan(self, max_total: int = 5) -> Optional[Tuple]:
        """Bounded necessary condition for cancellativity: no a+c == b+c
        with a != b inside certified balls.  Cancelling a sum of generators
        reduces to cancelling one generator at a time, so c ranges over the
        unit vectors only.  Returns a violation or None."""
        vecs = _vectors_up_to(self.n, max_total)
        gens = [tuple(1 if i == j else 0 for j in range(self.n))
                for i in range(self.n)]
        for a in vecs:
            ea = self.element(a)
            for b in vecs:
                if b <= a:
                    continue
                eb = self.element(b)
                if ea.coords == eb.coords:
                    continue
                if not (ea.certified and eb.certified):
                    continue
                for c in gens:
                    eac = self.multiply(ea, self.element(c))
                    ebc = self.multiply(eb, self.element(c))
                    if eac.certified and ebc.certified \
                            and eac.coords == ebc.coords:
                        return (a, b, c)
        return None


def _subvectors(v: Vector):
    ranges = [range(c + 1) for c in v]
    for sub in itertools.product(*ranges):
        if any(sub):
            yield sub


def _vectors_up_to(n: int, total: int) -> List[Vector]:
    out = []
    for v in itertools.product(range(total + 1), repeat=n):
        if sum(v) <= total:
            out.append(v)
    return sorted(out, key=lambda v: (sum(v), v))


def abelianize(engine: PresentationSemigroup,
               budget: Optional[ExplorationBudget] = None
               ) -> CommutativeVectorSemigroup:
    """The abelianization of the presentation as a commutative handle."""
    p = engine.presentation
    index = {g: i for i, g in enumerate(p.generators)}
    n = len(p.generators)
    relations = [(_vec_of(r.lhs, index, n), _vec_of(r.rhs, index, n))
                 for r in p.relations]
    return CommutativeVectorSemigroup(p.generators, relations,
                                      budget or engine.budget)


# equiv_p and the weak-transfer criterion -----------------------------------


@dataclass(frozen=True)
class EquivPWitness:
    pair: Tuple[Element, Element]
    multiset: Tuple              # the shared multiset of atom classes


@dataclass(frozen=True)
class EquivPAnswer:
    related: Optional[bool]      # None: not related within budget, uncertified
    witness: Optional[EquivPWitness]
    certified: bool


def _multiset_map(handle: PresentationSemigroup, elements: Sequence[Element]
                  ) -> Tuple[Dict, bool]:
    """element -> set of atom-class multisets of its factorizations."""
    out = {}
    complete = True
    for a in elements:
        fs = rigid_factorizations(handle, a)
        complete = complete and fs.complete
        out[a] = frozenset(tuple(sorted(handle.atom_class(u) for u in z.atoms))
                           for z in fs)
    return out, complete


def equiv_p(handle: PresentationSemigroup, a: Element, b: Element
            ) -> EquivPAnswer:
    """a equiv_p b iff they admit factorizations matching up to permutation
    of associates."""
    fa = rigid_factorizations(handle, a)
    fb = rigid_factorizations(handle, b)
    sets_a = {tuple(sorted(handle.atom_class(u) for u in z.atoms)): z for z in fa}
    sets_b = {tuple(sorted(handle.atom_class(u) for u in z.atoms)): z for z in fb}
    shared = sorted(set(sets_a) & set(sets_b))
    certified = fa.complete and fb.complete
    if shared:
        return EquivPAnswer(True, EquivPWitness((a, b), shared[0]), True)
    return EquivPAnswer(False if certified else None, None, certified)


@dataclass(frozen=True)
class ExwtReport:
    passed: Optional[bool]          # None: inconclusive within budget
    certified: bool
    counterexamples: Tuple[Tuple[Element, Element, Tuple], ...]
    equiv_p_transitive: bool
    abelianization_cancellative_within_budget: bool
    notes: Tuple[str, ...]


def weak_transfer_counterexample(handle: PresentationSemigroup,
                                 a: Element, b: Element) -> Optional[Tuple]:
    """If a equiv_p b but some atom multiset of a has no match among b's,
    return (a, b, unmatched multiset); None otherwise."""
    ans = equiv_p(handle, a, b)
    if not ans.related:
        return None
    ma, _ = _multiset_map(handle, [a])
    mb, _ = _multiset_map(handle, [b])
    missing = sorted(ma[a] - mb[b]) + sorted(mb[b] - ma[a])
    if missing:
        return (a, b, missing[0])
    return None


def check_exwt(handle: PresentationSemigroup, max_length: Optional[int] = None
               ) -> ExwtReport:
    """Is the canonical map to the reduced abelianization a weak transfer
    homomorphism?  Verified over all explored equiv_p-related pairs."""
    elements, scope_complete = handle.enumerate_elements(max_length)
    msets, facts_complete = _multiset_map(handle, elements)
    by_multiset: Dict[Tuple, List[Element]] = {}
    for el, mset in msets.items():
        for m in mset:
            by_multiset.setdefault(m, []).append(el)

    counterexamples = []
    seen_pairs = set()
    for m in sorted(by_multiset):
        group = by_multiset[m]
        for x, y in itertools.combinations(group, 2):
            kp = (x.word, y.word)
            if kp in seen_pairs:
                continue
            seen_pairs.add(kp)
            if msets[x] != msets[y]:
                missing = sorted(msets[x] - msets[y]) + sorted(msets[y] - msets[x])
                counterexamples.append((x, y, missing[0]))

    transitive = _equiv_p_transitive(msets)
    ab = abelianize(handle)
    cancel = ab.cancellativity_scan(min(5, handle.budget.max_word_length)) is None
    reduced_ok = ab.unit_scan(min(6, handle.budget.max_word_length))

    notes = ["cancellativity of the abelianization is assumed; a bounded "
             "necessary condition was checked"]
    if not reduced_ok:
        notes.append("unit scan failed: abelianization not reduced in budget")
    certified = scope_complete and facts_complete
    counterexamples.sort(key=lambda t: (handle.shortlex_key(t[0].word),
                                        handle.shortlex_key(t[1].word)))
    if counterexamples:
        return ExwtReport(False, True, tuple(counterexamples), transitive,
                          cancel, tuple(notes))
    return ExwtReport(True if certified else None, certified, (), transitive,
                      cancel, tuple(notes))


def _equiv_p_transitive(msets: Dict) -> bool:
    """equiv_p is reflexive and symmetric by construction; transitivity is
    checked: shared-multiset overlap must be transitive on the scope."""
    items = list(msets.items())
    for b, mb in items:
        related = [(x, mx) for x, mx in items if x != b and mx & mb]
        for (x, mx), (y, my) in itertools.combinations(related, 2):
            if not (mx & my):
                return False
    return True


# the length map -------------------------------------------------------------


@dataclass(frozen=True)
class LengthMapReport:
    exists: bool
    transfer_certified: bool
    notes: Tuple[str, ...]


def length_map(handle: PresentationSemigroup, max_length: int = 5
               ) -> Optional[LengthMapReport]:
    """The word-length homomorphism onto (N_0, +), when every relation is
    length-preserving; None otherwise.  The transfer properties (T1)/(T2)
    are certified by direct check on the explored ball."""
    for rel in handle.presentation.relations:
        if len(rel.lhs) != len(rel.rhs):
            return None
    elements, _ = handle.enumerate_elements(max_length)
    # (T1): only the identity maps to 0; every explored length is realized
    lengths = {len(el.word) for el in elements}
    t1 = 0 not in lengths and lengths >= set(range(1, max_length + 1))
    # (T2): any split of the image lifts to a product in the semigroup
    t2 = True
    for el in elements:
        L = len(el.word)
        for b1 in range(L + 1):
            x = handle.element(el.word[:b1])
            y = handle.element(el.word[b1:])
            if len(x.word) != b1 or len(y.word) != L - b1:
                t2 = False
            if handle.multiply(x, y).word != el.word:
                t2 = False
    notes = ("length is constant on congruence classes because every "
             "relation is length-preserving",)
    return LengthMapReport(True, t1 and t2, notes)
