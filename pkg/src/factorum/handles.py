"""The semigroup capability contract shared by every element source.

All invariant machinery (factorizations, distances, catenary degrees,
divisibility, omega and tame degrees) is written against this interface.
Finitely presented semigroups, monoids of zero-sum sequences and matrix
semigroups each implement it, so the same code computes their invariants.

A handle must provide: an equality test (via canonical ``key``), products,
a unit test, an atom test with an associate test on atoms, and enumeration
of the atoms that left-divide a given element together with the unique
left quotient (uniqueness is the cancellativity assumption).
"""

from __future__ import annotations

from typing import Any, Hashable, Iterable, List, Tuple

from .arith import factor, is_prime

DivisorPairs = Tuple[List[Tuple[Any, Any]], bool]


class SemigroupHandle:
    # reduced: trivial unit group, so associate classes of atoms are elements
    reduced = True
    commutative = False
    name = "semigroup"

    # structure ------------------------------------------------------
    def identity(self):
        raise NotImplementedError

    def key(self, x) -> Hashable:
        """Canonical hashable key; two elements are equal iff keys agree."""
        return x

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def multiply(self, x, y):
        raise NotImplementedError

    def product(self, xs: Iterable):
        out = self.identity()
        for x in xs:
            out = self.multiply(out, x)
        return out

    def certified(self, x) -> bool:
        """Whether answers about x are exact (no exploration budget was hit)."""
        return True

    # atoms ------------------------------------------------------------
    def is_atom(self, x) -> bool:
        raise NotImplementedError

    def atom_class(self, u) -> Hashable:
        """Associate-class key of an atom (an equivalence relation on atoms)."""
        return self.key(u)

    def atoms_associated(self, u, v) -> bool:
        return self.atom_class(u) == self.atom_class(v)

    # divisibility backbone ---------------------------------------------
    def left_divisor_atoms(self, x) -> DivisorPairs:
        """All atoms u with x in u*H, as (u, quotient) pairs, plus a
        completeness flag (False when a search was truncated)."""
        raise NotImplementedError

    def length_cap(self, x) -> int | None:
        """Upper bound on factorization lengths of x, if one is known."""
        return None

    def format_element(self, x) -> str:
        return str(x)

    # optional element enumeration (used by semigroup-level invariants)
    def enumerate_elements(self, max_size: int) -> Tuple[List[Any], bool]:
        raise NotImplementedError


class FactorialVectorHandle(SemigroupHandle):
    """(N_{>0})^n under componentwise multiplication.

    This is the free abelian monoid on the atoms e_i(p) = (1,..,p,..,1); it
    serves as the target of the diagonal map on triangular matrices (n slots)
    and of the determinant on full matrix semigroups (one slot).
    """

    reduced = True
    commutative = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("need at least one slot")
        self.n = n
        self.name = f"positive-int-vectors^{n}"

    def identity(self):
        return (1,) * self.n

    def is_unit(self, x) -> bool:
        return all(c == 1 for c in x)

    def multiply(self, x, y):
        return tuple(a * b for a, b in zip(x, y))

    def is_atom(self, x) -> bool:
        nontrivial = [c for c in x if c != 1]
        return len(nontrivial) == 1 and is_prime(nontrivial[0])

    def atom_class(self, u):
        for i, c in enumerate(u):
            if c != 1:
                return (i, c)
        raise ValueError("unit is not an atom")

    def left_divisor_atoms(self, x) -> DivisorPairs:
        pairs = []
        for i, c in enumerate(x):
            if c == 1:
                continue
            for p in sorted(factor(c)):
                atom = tuple(p if j == i else 1 for j in range(self.n))
                quot = tuple(v // p if j == i else v for j, v in enumerate(x))
                pairs.append((atom, quot))
        return pairs, True

    def length_cap(self, x) -> int:
        return sum(sum(factor(c).values()) for c in x if c != 1)

    def format_element(self, x) -> str:
        if self.n == 1:
            return str(x[0])
        return "(" + ",".join(str(c) for c in x) + ")"

    def enumerate_elements(self, max_size: int) -> Tuple[List[Any], bool]:
        # all non-unit vectors with every component in [1, max_size]
        import itertools

        out = [v for v in itertools.product(range(1, max_size + 1), repeat=self.n)
               if not self.is_unit(v)]
        return sorted(out), True
