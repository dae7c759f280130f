"""Finite abelian groups, zero-sum sequences, and block monoids.

A sequence over a subset G_P of a finite abelian group G is a multiset of
group elements; the zero-sum ones form the monoid B(G_P) under multiset
union.  Its atoms are the minimal zero-sum sequences, and the Davenport
constant D(G_P) is their maximal length.  Minimal zero-sum sequences have
length at most |G|: among the partial sums of a longer sequence two agree,
and the consecutive block between them is a proper nonempty zero-sum
subsequence (this pigeonhole bound is exercised by a unit test).

``BlockMonoidHandle`` exposes B(G_P) through the shared semigroup
interface, so factorizations, distances and catenary degrees apply
unchanged.  ``maximal_order_bound`` evaluates max(2, c_p(B(C))) together
with the known small-group classification of that catenary degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .catenary import CatenaryReport, catenary
from .distances import DistanceKind
from .handles import DivisorPairs, SemigroupHandle

GroupElement = Tuple[int, ...]
ZeroSumSequence = Tuple[GroupElement, ...]   # sorted multiset of elements


class GroupTooLarge(ValueError):
    """Group order exceeds the enumeration cap."""


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups C_{n_1} + ... + C_{n_r}."""
    orders: Tuple[int, ...]

    def __post_init__(self):
        if any(n < 1 for n in self.orders):
            raise ValueError("cyclic orders must be >= 1")

    @property
    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    @property
    def exponent(self) -> int:
        out = 1
        for n in self.orders:
            g = _gcd(out, n)
            out = out // g * n
        return out

    def zero(self) -> GroupElement:
        return (0,) * len(self.orders)

    def element(self, coords: Sequence[int]) -> GroupElement:
        if len(coords) != len(self.orders):
            raise ValueError("coordinate count mismatch")
        return tuple(c % n for c, n in zip(coords, self.orders))

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x: GroupElement) -> GroupElement:
        return tuple((-a) % n for a, n in zip(x, self.orders))

    def elements(self) -> List[GroupElement]:
        return sorted(itertools.product(*(range(n) for n in self.orders)))

    def element_order(self, x: GroupElement) -> int:
        k, acc = 1, x
        while acc != self.zero():
            acc = self.add(acc, x)
            k += 1
        return k

    def describe(self) -> str:
        if not self.orders or self.order == 1:
            return "trivial"
        return " + ".join(f"C{n}" for n in self.orders if n > 1) or "trivial"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def invariant_factors(group: FiniteAbelianGroup) -> Tuple[int, ...]:
    """Invariant-factor normal form d_1 | d_2 | ... of the group."""
    from .arith import factor

    primary: Dict[int, List[int]] = {}
    for n in group.orders:
        for p, e in factor(n).items():
            primary.setdefault(p, []).append(e)
    rank = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(rank):
        d = 1
        for p, exps in primary.items():
            exps_sorted = sorted(exps, reverse=True)
            if i < len(exps_sorted):
                d *= p ** exps_sorted[i]
        factors.append(d)
    return tuple(sorted(factors))


def sequence_sum(group: FiniteAbelianGroup, seq: Sequence[GroupElement]) -> GroupElement:
    out = group.zero()
    for g in seq:
        out = group.add(out, g)
    return out


def atoms_of_block_monoid(group: FiniteAbelianGroup,
                          subset: Optional[Sequence[GroupElement]] = None,
                          cap: int = 64) -> List[ZeroSumSequence]:
    """All minimal zero-sum sequences over the subset (default: all of G).

    DFS over nondecreasing sequences, pruning as soon as a proper nonempty
    sub-multiset of the prefix sums to zero; depth is capped at |G|.
    """
    if group.order > cap:
        raise GroupTooLarge(f"group order {group.order} exceeds cap {cap}")
    support = sorted(set(subset)) if subset is not None else group.elements()
    for g in support:
        if group.element(g) != g:
            raise ValueError(f"{g} is not a reduced element of the group")
    zero = group.zero()
    atoms: List[ZeroSumSequence] = []
    if zero in support:
        atoms.append((zero,))
    nonzero = [g for g in support if g != zero]
    max_len = group.order

    def dfs(start: int, prefix: List[GroupElement], total: GroupElement,
            proper_sums: FrozenSet[GroupElement]) -> None:
        if total == zero and prefix:
            atoms.append(tuple(prefix))
            return  # extending a zero-sum sequence can never stay minimal
        if len(prefix) >= max_len:
            return
        for i in range(start, len(nonzero)):
            g = nonzero[i]
            new_proper = set(proper_sums)
            new_proper.update(group.add(s, g) for s in proper_sums)
            if prefix:
                # the old prefix, and {g} alone, are proper in prefix + [g]
                new_proper.add(total)
                new_proper.add(g)
            if zero in new_proper:
                continue  # a proper nonempty sub-multiset already sums to 0
            dfs(i, prefix + [g], group.add(total, g), frozenset(new_proper))

    dfs(0, [], zero, frozenset())
    return sorted(atoms, key=lambda a: (len(a), a))


def davenport(group: FiniteAbelianGroup,
              subset: Optional[Sequence[GroupElement]] = None,
              cap: int = 64) -> int:
    """D(G_P): maximal length of a minimal zero-sum sequence."""
    atoms = atoms_of_block_monoid(group, subset, cap)
    return max((len(a) for a in atoms), default=0)


class BlockMonoidHandle(SemigroupHandle):
    """B(G_P) as a SemigroupHandle: elements are sorted multisets of group
    elements with zero sum, products are multiset unions."""

    reduced = True
    commutative = True

    def __init__(self, group: FiniteAbelianGroup,
                 subset: Optional[Sequence[GroupElement]] = None, cap: int = 64):
        self.group = group
        self.subset = tuple(sorted(set(subset))) if subset is not None \
            else tuple(group.elements())
        self.atoms = atoms_of_block_monoid(group, self.subset, cap)
        self._atom_set = set(self.atoms)
        self.name = f"B({group.describe()})"

    def sequence(self, terms: Sequence[GroupElement]) -> ZeroSumSequence:
        seq = tuple(sorted(self.group.element(tuple(g)) for g in terms))
        if sequence_sum(self.group, seq) != self.group.zero():
            raise ValueError("sequence does not have zero sum")
        return seq

    def identity(self) -> ZeroSumSequence:
        return ()

    def is_unit(self, x) -> bool:
        return not x

    def multiply(self, x, y) -> ZeroSumSequence:
        return tuple(sorted(x + y))

    def is_atom(self, x) -> bool:
        return x in self._atom_set

    def _contains(self, big, small) -> bool:
        from collections import Counter
        cb, cs = Counter(big), Counter(small)
        return all(cb[g] >= k for g, k in cs.items())

    def left_divisor_atoms(self, x) -> DivisorPairs:
        pairs = []
        for atom in self.atoms:
            if len(atom) > len(x):
                break
            if self._contains(x, atom):
                rest = list(x)
                for g in atom:
                    rest.remove(g)
                pairs.append((atom, tuple(rest)))
        return pairs, True

    def leftright_divides(self, b, a) -> bool:
        # commutative: b | a iff b is a sub-multiset of a
        return self._contains(a, b)

    def length_cap(self, x) -> int:
        return len(x)

    def format_element(self, x) -> str:
        if not x:
            return "()"
        if len(self.group.orders) == 1:
            return "(" + " ".join(str(g[0]) for g in x) + ")"
        return "(" + " ".join("+".join(map(str, g)) for g in x) + ")"

    def enumerate_elements(self, max_size: int) -> Tuple[List[ZeroSumSequence], bool]:
        return list(zero_sum_sequences(self.group, self.subset, max_size)), True


def zero_sum_sequences(group: FiniteAbelianGroup,
                       subset: Optional[Sequence[GroupElement]] = None,
                       max_length: int = 6) -> Iterator[ZeroSumSequence]:
    """All nonempty zero-sum sequences over the subset of length <= max_length."""
    support = sorted(set(subset)) if subset is not None else group.elements()
    zero = group.zero()

    def dfs(start: int, prefix: List[GroupElement], total: GroupElement):
        if prefix and total == zero:
            yield tuple(prefix)
        if len(prefix) >= max_length:
            return
        for i in range(start, len(support)):
            g = support[i]
            yield from dfs(i, prefix + [g], group.add(total, g))

    yield from dfs(0, [], zero)


def block_catenary(group: FiniteAbelianGroup,
                   subset: Optional[Sequence[GroupElement]] = None,
                   max_sequence_length: int = 6,
                   kind: DistanceKind = DistanceKind.PERMUTABLE,
                   cap: int = 64) -> CatenaryReport:
    """max of c_d over all zero-sum sequences of length <= the bound.

    A lower bound for c_d(B(G_P)); the report notes the scope and, when the
    group falls under the known classification, whether the computed value
    agrees with it.
    """
    handle = BlockMonoidHandle(group, subset, cap)
    value, witness, element = 0, None, None
    for seq in zero_sum_sequences(group, handle.subset, max_sequence_length):
        rep = catenary(handle, seq, kind)
        if rep.value > value:
            value, witness, element = rep.value, rep.witness, seq
    notes = [f"searched all zero-sum sequences of length <= {max_sequence_length}"]
    known = _classified_catenary(group)
    if known is not None:
        agreement = "agrees with" if value == known else "below"
        notes.append(f"classification value {known} for {group.describe()}: "
                     f"computed bound {agreement} it")
    return CatenaryReport(value, kind, "semigroup", True, witness=witness,
                          element=element, notes=tuple(notes))


_CLASSIFICATION_3 = {(3,), (2, 2), (3, 3)}
_CLASSIFICATION_4 = {(4,), (2, 4), (2, 2, 2), (3, 3, 3)}


def _classified_catenary(group: FiniteAbelianGroup) -> Optional[int]:
    inv = tuple(f for f in invariant_factors(group) if f > 1)
    if inv in _CLASSIFICATION_3:
        return 3
    if inv in _CLASSIFICATION_4:
        return 4
    return None


@dataclass(frozen=True)
class OrderBoundReport:
    """max(2, c_p(B(C))) for a classical maximal order with class group C."""
    group: FiniteAbelianGroup
    bound: int
    computed_catenary: int
    classification: str
    catenary: CatenaryReport


def maximal_order_bound(group: FiniteAbelianGroup,
                        max_sequence_length: Optional[int] = None,
                        cap: int = 64) -> OrderBoundReport:
    """Catenary-degree bound max(2, c_p(B(C))) over a user-supplied finite
    abelian class group C, with the small-group classification echoed."""
    if max_sequence_length is None:
        dav = davenport(group, cap=cap)
        max_sequence_length = max(2, 2 * dav)
    rep = block_catenary(group, None, max_sequence_length, cap=cap)
    bound = max(2, rep.value)
    inv = tuple(f for f in invariant_factors(group) if f > 1)
    if not inv:
        classification = ("trivial class group: catenary degree <= 2 and the "
                          "order is d_sim-factorial")
    elif inv == (2,):
        classification = "|C| <= 2: catenary degree <= 2"
    elif inv in _CLASSIFICATION_3:
        classification = "catenary degree = 3 exactly for this class group"
    elif inv in _CLASSIFICATION_4:
        classification = "catenary degree = 4 exactly for this class group"
    else:
        classification = ("outside the quoted classification; the computed "
                          "value is a bounded lower bound")
    return OrderBoundReport(group, bound, rep.value, classification, rep)
