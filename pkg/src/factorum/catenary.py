"""Catenary degrees: plain, equal, adjacent, monotone, and in fibers.

The catenary degree of a in distance d is the least N such that any two
rigid factorizations of a are joined by an N-chain (consecutive distances
at most N).  On the finite explored factorization set this is exactly the
bottleneck of the complete distance graph: the maximum edge of a minimum
spanning tree.  The equal catenary degree restricts chains to one length
class, the adjacent catenary degree takes min-distances between adjacent
length classes, and the monotone catenary degree is the max of those two.

The catenary degree in the permutable fibers of a transfer map phi
restricts chains to a fiber: z ~ z' iff the images phi*(z), phi*(z') agree
up to permutation.  Chains always range over rigid representatives (the
distances factor through their d-classes, so bottleneck values agree).

Infinity never arises in a bounded computation and is represented by an
explicit flag, never a sentinel integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .distances import DistanceKind, distance
from .factorizations import RigidFactorization, rigid_factorizations
from .handles import SemigroupHandle


@dataclass(frozen=True)
class ChainWitness:
    steps: Tuple[RigidFactorization, ...]
    bound: int


@dataclass(frozen=True)
class CatenaryReport:
    value: int
    kind: DistanceKind
    variant: str
    certified: bool
    infinite: bool = False
    witness: Optional[ChainWitness] = None
    element: object = None
    notes: Tuple[str, ...] = field(default=())


def _distance_matrix(handle, kind, facts: Sequence[RigidFactorization]):
    n = len(facts)
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            mat[i][j] = mat[j][i] = distance(handle, kind, facts[i], facts[j])
    return mat


def _bottleneck(nodes: Sequence[int], mat) -> Tuple[int, Optional[Tuple[int, int]]]:
    """Bottleneck connectivity value of the complete graph on ``nodes``:
    max edge of a minimum spanning tree (Prim), plus that edge."""
    if len(nodes) <= 1:
        return 0, None
    in_tree = {nodes[0]}
    best: Dict[int, Tuple[int, int]] = {
        v: (mat[nodes[0]][v], nodes[0]) for v in nodes[1:]}
    value, arg = 0, None
    while best:
        v = min(best, key=lambda u: (best[u][0], u))
        w, parent = best.pop(v)
        if w > value:
            value, arg = w, (parent, v)
        in_tree.add(v)
        for u in list(best):
            if mat[v][u] < best[u][0]:
                best[u] = (mat[v][u], v)
    return value, arg


def catenary(handle: SemigroupHandle, a, kind: DistanceKind = DistanceKind.PERMUTABLE
             ) -> CatenaryReport:
    """c_d(a): bottleneck over the complete distance graph on Z*(a).

    The reported value N is exact for the explored set: the threshold graph
    with edges <= N is connected and with edges <= N-1 it is not.
    """
    fs = rigid_factorizations(handle, a)
    facts = list(fs)
    mat = _distance_matrix(handle, kind, facts)
    value, arg = _bottleneck(range(len(facts)), mat)
    witness = None
    if arg is not None:
        witness = ChainWitness((facts[arg[0]], facts[arg[1]]), value)
    return CatenaryReport(value, kind, "plain", fs.complete,
                          witness=witness, element=a)


def equal_catenary(handle, a, kind: DistanceKind = DistanceKind.PERMUTABLE
                   ) -> CatenaryReport:
    """c_{d,eq}(a): chains between equal-length factorizations staying in
    that length class; max over length classes of in-class bottlenecks."""
    fs = rigid_factorizations(handle, a)
    facts = list(fs)
    mat = _distance_matrix(handle, kind, facts)
    by_len: Dict[int, List[int]] = {}
    for i, z in enumerate(facts):
        by_len.setdefault(z.length, []).append(i)
    value, witness = 0, None
    for _, idxs in sorted(by_len.items()):
        v, arg = _bottleneck(idxs, mat)
        if v > value:
            value = v
            witness = ChainWitness((facts[arg[0]], facts[arg[1]]), v)
    return CatenaryReport(value, kind, "equal", fs.complete,
                          witness=witness, element=a)


def adjacent_catenary(handle, a, kind: DistanceKind = DistanceKind.PERMUTABLE
                      ) -> CatenaryReport:
    """c_{d,adj}(a) = max over adjacent k, l in L(a) of
    d_{k,l}(a) = min d(z, z') with |z| = k, |z'| = l."""
    fs = rigid_factorizations(handle, a)
    facts = list(fs)
    mat = _distance_matrix(handle, kind, facts)
    by_len: Dict[int, List[int]] = {}
    for i, z in enumerate(facts):
        by_len.setdefault(z.length, []).append(i)
    lengths = sorted(by_len)
    value, witness = 0, None
    for k, l in zip(lengths, lengths[1:]):
        best, arg = None, None
        for i in by_len[k]:
            for j in by_len[l]:
                if best is None or mat[i][j] < best:
                    best, arg = mat[i][j], (i, j)
        if best is not None and best > value:
            value = best
            witness = ChainWitness((facts[arg[0]], facts[arg[1]]), best)
    return CatenaryReport(value, kind, "adjacent", fs.complete,
                          witness=witness, element=a)


def monotone_catenary(handle, a, kind: DistanceKind = DistanceKind.PERMUTABLE
                      ) -> CatenaryReport:
    """c_{d,mon}(a) = max(c_{d,eq}(a), c_{d,adj}(a))."""
    eq = equal_catenary(handle, a, kind)
    adj = adjacent_catenary(handle, a, kind)
    pick = eq if eq.value >= adj.value else adj
    return CatenaryReport(max(eq.value, adj.value), kind, "monotone",
                          eq.certified and adj.certified,
                          witness=pick.witness, element=a)


def monotone_catenary_direct(handle, a, kind: DistanceKind = DistanceKind.PERMUTABLE,
                             max_factorizations: int = 12) -> CatenaryReport:
    """Direct monotone-chain search (exponential; gated to tiny instances).

    Verifies the decomposition c_mon = max(c_eq, c_adj) on instances with
    at most ``max_factorizations`` rigid factorizations.
    """
    fs = rigid_factorizations(handle, a)
    facts = list(fs)
    if len(facts) > max_factorizations:
        raise ValueError("instance too large for the direct monotone search")
    mat = _distance_matrix(handle, kind, facts)
    n = len(facts)

    def connected_monotone(i: int, j: int, bound: int) -> bool:
        if facts[i].length > facts[j].length:
            i, j = j, i
        lo, hi = facts[i].length, facts[j].length
        seen = {i}
        queue = [i]
        while queue:
            u = queue.pop()
            if u == j:
                return True
            for v in range(n):
                if v in seen or mat[u][v] > bound:
                    continue
                if facts[u].length <= facts[v].length <= hi and facts[v].length >= lo:
                    seen.add(v)
                    queue.append(v)
        return j in seen

    value = 0
    for i in range(n):
        for j in range(i + 1, n):
            bound = 0
            while not connected_monotone(i, j, bound):
                bound += 1
            value = max(value, bound)
    return CatenaryReport(value, kind, "monotone-direct", fs.complete, element=a)


def catenary_in_fibers(handle, a, kind: DistanceKind, transfer_map
                       ) -> CatenaryReport:
    """c_d(a, phi): chains restricted to permutable fibers of the map.

    Two rigid factorizations lie in one fiber iff the multisets of
    target-classes of their atom images coincide (d_p of the images is 0).
    """
    fs = rigid_factorizations(handle, a)
    facts = list(fs)
    mat = _distance_matrix(handle, kind, facts)
    target = transfer_map.target
    fibers: Dict[Tuple, List[int]] = {}
    for i, z in enumerate(facts):
        key = tuple(sorted(target.atom_class(transfer_map.apply(u))
                           for u in z.atoms))
        fibers.setdefault(key, []).append(i)
    value, witness = 0, None
    for key in sorted(fibers):
        v, arg = _bottleneck(fibers[key], mat)
        if v > value:
            value = v
            witness = ChainWitness((facts[arg[0]], facts[arg[1]]), v)
    return CatenaryReport(value, kind, "in_fibers", fs.complete,
                          witness=witness, element=a)


def semigroup_catenary(handle, elements: Sequence, kind: DistanceKind,
                       variant: str = "plain",
                       scope_complete: bool = True) -> CatenaryReport:
    """sup of c_d over the explored elements (a certified lower bound for
    the semigroup-level value)."""
    fn: Callable = {"plain": catenary, "equal": equal_catenary,
                    "adjacent": adjacent_catenary,
                    "monotone": monotone_catenary}[variant]
    value, witness, element, certified = 0, None, None, scope_complete
    for a in elements:
        rep = fn(handle, a, kind)
        certified = certified and rep.certified
        if rep.value > value:
            value, witness, element = rep.value, rep.witness, a
    return CatenaryReport(value, kind, variant, certified,
                          witness=witness, element=element,
                          notes=("semigroup-level value is a lower bound "
                                 "over the explored scope",))
