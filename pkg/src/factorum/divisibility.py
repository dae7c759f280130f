"""Divisibility relations, prime-like elements, omega invariants, tame degree.

Two divisibility relations are implemented.  Left-right divisibility,
b | a iff a lies in H*b*H, and divisibility up to permutation, b |_p a iff
a multiset of atom classes of some factorization of b injects into one of
some factorization of a.  For atoms the two agree; for general elements
they differ.

An atom q is almost prime-like when q dividing a product forces q to
divide a factor; equivalently (for atomic semigroups), q occurs in one
rigid factorization of an element iff it occurs in all of them, which is
how the bounded check works.  The q-adic valuation set V_q(a) collects the
number of q-associates across factorizations of a; q is prime-like when
every valuation set is a singleton.

omega_p(a, b) takes, over all rigid factorizations u_1...u_n of a, the
worst minimal k such that b divides (up to permutation) a subproduct
u_{s(1)}...u_{s(k)} taken along increasing positions s(1) < ... < s(k).
omega'_p(a, b) ranges over all decompositions of a into non-unit factors
instead.  The permutable tame degree t_p(a, x) measures how far an
arbitrary permutable factorization of a is from one containing the
pattern x.

Semigroup-level values are suprema; bounded enumeration reports them as
certified lower bounds with the exploration scope embedded.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .distances import permutable_distance
from .factorizations import (RigidFactorization, permutable_factorizations,
                             rigid_factorizations)
from .handles import SemigroupHandle
from .presentation import PresentationSemigroup


class DivisibilityKind(Enum):
    LEFT_RIGHT = "left-right"
    PERMUTATION = "permutation"


class NotAlmostPrimeLikeError(ValueError):
    pass


class UnsupportedOperation(NotImplementedError):
    pass


@dataclass(frozen=True)
class DivisibilityAnswer:
    holds: Optional[bool]     # None = unknown within budget
    certified: bool


def _divides_p_cached(handle: SemigroupHandle, b, a) -> DivisibilityAnswer:
    cache = getattr(handle, "_divp_cache", None)
    if cache is None:
        cache = handle._divp_cache = {}
    key = (handle.key(b), handle.key(a))
    hit = cache.get(key)
    if hit is not None:
        return hit
    if handle.is_unit(b):
        ans = DivisibilityAnswer(True, True)
        cache[key] = ans
        return ans
    from .factorizations import permutable_class_multisets
    b_sets, b_complete = permutable_class_multisets(handle, b)
    a_sets, a_complete = permutable_class_multisets(handle, a)
    for bm in b_sets:
        cb = Counter(bm)
        for am in a_sets:
            ca = Counter(am)
            if all(ca[c] >= k for c, k in cb.items()):
                ans = DivisibilityAnswer(True, True)
                cache[key] = ans
                return ans
    certified = b_complete and a_complete
    ans = DivisibilityAnswer(False if certified else None, certified)
    cache[key] = ans
    return ans


def divides(handle: SemigroupHandle, kind: DivisibilityKind, b, a
            ) -> DivisibilityAnswer:
    """Does b divide a in the given sense?  Unknown on truncation."""
    if kind is DivisibilityKind.PERMUTATION:
        return _divides_p_cached(handle, b, a)
    return _divides_leftright(handle, b, a)


def divides_p(handle: SemigroupHandle, b, a) -> DivisibilityAnswer:
    return _divides_p_cached(handle, b, a)


def _divides_leftright(handle: SemigroupHandle, b, a) -> DivisibilityAnswer:
    if handle.is_unit(b):
        return DivisibilityAnswer(True, True)
    custom = getattr(handle, "leftright_divides", None)
    if custom is not None:
        return DivisibilityAnswer(bool(custom(b, a)), True)
    if isinstance(handle, PresentationSemigroup):
        # a in S b S iff some ball member of a has a contiguous factor equal
        # to b; exhaustive whenever the ball is closed
        ball = handle.congruence_ball(a.word)
        for m in sorted(ball.members, key=handle.shortlex_key):
            for i in range(len(m) + 1):
                for j in range(i, len(m) + 1):
                    mid = m[i:j]
                    if not mid:
                        continue
                    if handle.element(mid).word == b.word:
                        return DivisibilityAnswer(True, True)
        return DivisibilityAnswer(False if ball.closed else None, ball.closed)
    raise UnsupportedOperation(
        f"left-right divisibility is not implemented for {handle.name}")


def occurs_in(handle: SemigroupHandle, q, z: RigidFactorization) -> bool:
    """Does the atom q occur (up to associates) in the factorization z?"""
    cls = handle.atom_class(q)
    return any(handle.atom_class(u) == cls for u in z.atoms)


@dataclass(frozen=True)
class AlmostPrimeLikeReport:
    atom: object
    holds: bool
    certified: bool            # True: exhaustive over the given scope
    counterexample: Optional[Tuple[object, RigidFactorization,
                                   RigidFactorization]] = None
    scope: str = ""


def is_almost_prime_like(handle: SemigroupHandle, q,
                         scope_elements: Sequence,
                         scope_certified: bool = True,
                         scope: str = "") -> AlmostPrimeLikeReport:
    """Bounded almost-prime-like check: over every scoped element, q occurs
    in one rigid factorization iff it occurs in all of them."""
    if not handle.is_atom(q):
        raise NotAlmostPrimeLikeError("q must be a certified atom")
    certified = scope_certified
    for a in scope_elements:
        fs = rigid_factorizations(handle, a)
        certified = certified and fs.complete
        with_q = [z for z in fs if occurs_in(handle, q, z)]
        without_q = [z for z in fs if not occurs_in(handle, q, z)]
        if with_q and without_q:
            return AlmostPrimeLikeReport(q, False, True,
                                         (a, with_q[0], without_q[0]), scope)
    return AlmostPrimeLikeReport(q, True, certified, None, scope)


@dataclass(frozen=True)
class ValuationSet:
    atom: object
    element: object
    values: Tuple[int, ...]
    certified: bool


def valuation_set(handle: SemigroupHandle, q, a,
                  precheck_scope: Optional[Sequence] = None) -> ValuationSet:
    """V_q(a): counts of q-associates across the rigid factorizations of a.

    When a precheck scope is given, q must pass the almost-prime-like check
    over it first (NotAlmostPrimeLikeError otherwise).
    """
    if precheck_scope is not None:
        rep = is_almost_prime_like(handle, q, precheck_scope)
        if not rep.holds:
            raise NotAlmostPrimeLikeError(
                f"{handle.format_element(q)} is not almost prime-like "
                f"(counterexample element {handle.format_element(rep.counterexample[0])})")
    if handle.is_unit(a):
        return ValuationSet(q, a, (0,), True)
    fs = rigid_factorizations(handle, a)
    cls = handle.atom_class(q)
    values = sorted({sum(1 for u in z.atoms if handle.atom_class(u) == cls)
                     for z in fs})
    return ValuationSet(q, a, tuple(values), fs.complete)


@dataclass(frozen=True)
class PrimeLikeReport:
    atom: object
    holds: bool
    certified: bool
    counterexample: Optional[object] = None


def is_prime_like(handle: SemigroupHandle, q, scope_elements: Sequence,
                  scope_certified: bool = True) -> PrimeLikeReport:
    """Prime-like within budget: almost prime-like and every valuation set
    over the scope is a singleton."""
    apl = is_almost_prime_like(handle, q, scope_elements, scope_certified)
    if not apl.holds:
        raise NotAlmostPrimeLikeError(
            f"{handle.format_element(q)} is not almost prime-like")
    certified = apl.certified
    for a in scope_elements:
        vs = valuation_set(handle, q, a)
        certified = certified and vs.certified
        if len(vs.values) > 1:
            return PrimeLikeReport(q, False, True, a)
    return PrimeLikeReport(q, True, certified, None)


# omega invariants ---------------------------------------------------------


@dataclass(frozen=True)
class OmegaWitness:
    element: object
    parts: Tuple                   # the factorization/decomposition reaching the max
    min_k: int
    subproduct: Tuple[int, ...]    # increasing indices realizing min_k


@dataclass(frozen=True)
class OmegaReport:
    divisor: object
    mode: str                      # "atoms" or "nonunits"
    value: int
    certified: bool
    witness: Optional[OmegaWitness] = None
    scope: str = ""


def min_subproduct_k(handle: SemigroupHandle, parts: Sequence, b
                      ) -> Tuple[int, Tuple[int, ...], bool]:
    """Smallest k with b |_p a subproduct of the parts taken along
    increasing indices; returns (k, indices, certified)."""
    n = len(parts)
    certified = True
    for k in range(1, n + 1):
        for idxs in itertools.combinations(range(n), k):
            prod = handle.product([parts[i] for i in idxs])
            ans = _divides_p_cached(handle, b, prod)
            if ans.holds:
                return k, idxs, certified
            if ans.holds is None:
                certified = False
    # the full increasing product is the element itself, so this is only
    # reached when the precondition b |_p a failed to certify
    return n, tuple(range(n)), False


def omega_element(handle: SemigroupHandle, a, b, mode: str = "atoms",
                  max_parts: int = 8) -> OmegaReport:
    """omega_p(a, b) (mode "atoms") or omega'_p(a, b) (mode "nonunits")."""
    div = _divides_p_cached(handle, b, a)
    if div.holds is not True:
        return OmegaReport(b, mode, 0, div.certified, None)
    if mode == "atoms":
        decomps, complete = _atom_decompositions(handle, a)
    elif mode == "nonunits":
        decomps, complete = _nonunit_decompositions(handle, a, max_parts)
    else:
        raise ValueError("mode must be 'atoms' or 'nonunits'")
    value, witness, certified = 0, None, complete
    for parts in decomps:
        k, idxs, cert = min_subproduct_k(handle, parts, b)
        certified = certified and cert
        if k > value:
            value = k
            witness = OmegaWitness(a, tuple(parts), k, idxs)
    return OmegaReport(b, mode, value, certified, witness)


def _atom_decompositions(handle, a) -> Tuple[List[Tuple], bool]:
    fs = rigid_factorizations(handle, a)
    return [z.atoms for z in fs], fs.complete


def _nonunit_decompositions(handle, a, max_parts: int) -> Tuple[List[Tuple], bool]:
    """All decompositions of a into at most max_parts non-unit elements.

    For presentation engines: compositions of every ball member into
    nonempty contiguous parts, which is exhaustive for closed balls.
    """
    if not isinstance(handle, PresentationSemigroup):
        raise UnsupportedOperation(
            "omega'_p decomposition search is implemented for finitely "
            "presented semigroups only")
    ball = handle.congruence_ball(a.word)
    out = []
    seen = set()
    for m in sorted(ball.members, key=handle.shortlex_key):
        L = len(m)
        for parts_count in range(1, min(L, max_parts) + 1):
            for cut in itertools.combinations(range(1, L), parts_count - 1):
                bounds = (0,) + cut + (L,)
                parts = tuple(handle.element(m[i:j])
                              for i, j in zip(bounds, bounds[1:]))
                key = tuple(p.word for p in parts)
                if key not in seen:
                    seen.add(key)
                    out.append(parts)
    return out, ball.closed


def omega_semigroup(handle: SemigroupHandle, b, scope_elements: Sequence,
                    mode: str = "atoms", scope: str = "",
                    max_parts: int = 8) -> OmegaReport:
    """Semigroup-level omega: max over the explored elements (lower bound)."""
    value, witness, certified = 0, None, True
    for a in scope_elements:
        rep = omega_element(handle, a, b, mode, max_parts)
        certified = certified and rep.certified
        if rep.value > value:
            value, witness = rep.value, rep.witness
    return OmegaReport(b, mode, value, certified, witness, scope)


# tame degree --------------------------------------------------------------


@dataclass(frozen=True)
class TameReport:
    pattern: Tuple
    value: int
    certified: bool
    witness: Optional[Tuple[object, Tuple, Tuple]] = None
    scope: str = ""


def _pattern_divides(pattern_classes: Counter, z_classes: Tuple) -> bool:
    cz = Counter(z_classes)
    return all(cz[c] >= k for c, k in pattern_classes.items())


def tame_element(handle: SemigroupHandle, a,
                 pattern: Sequence) -> TameReport:
    """t_p(a, x) for a pattern x given as a sequence of atoms: 0 when no
    permutable factorization of a contains x, else the worst distance from
    an arbitrary one to a qualifying one."""
    for u in pattern:
        if not handle.is_atom(u):
            raise ValueError(
                f"pattern entry {handle.format_element(u)} is not an atom")
    pat = Counter(handle.atom_class(u) for u in pattern)
    pfs, complete = permutable_factorizations(handle, a)
    qualifying = [p for p in pfs if _pattern_divides(pat, p.classes)]
    if not qualifying:
        return TameReport(tuple(pattern), 0, complete, None)
    value, witness = 0, None
    for z in pfs:
        best, arg = None, None
        for zp in qualifying:
            d = permutable_distance(handle, z.representative, zp.representative)
            if best is None or d < best:
                best, arg = d, zp
        if best > value:
            value = best
            witness = (a, z.classes, arg.classes)
    return TameReport(tuple(pattern), value, complete, witness)


def tame_semigroup(handle: SemigroupHandle, pattern: Sequence,
                   scope_elements: Sequence, scope: str = "",
                   scope_certified: bool = True) -> TameReport:
    """t_p(H, x) over the explored elements (certified lower bound)."""
    value, witness, certified = 0, None, scope_certified
    for a in scope_elements:
        rep = tame_element(handle, a, pattern)
        certified = certified and rep.certified
        if rep.value > value:
            value, witness = rep.value, rep.witness
    return TameReport(tuple(pattern), value, certified, witness, scope)
