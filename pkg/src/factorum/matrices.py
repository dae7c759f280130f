"""Triangular and full integer matrix semigroups.

T_n(Z)* is the semigroup of upper triangular integer matrices with nonzero
determinant.  Its atoms are the matrices with exactly one prime (up to
sign) on the diagonal and units elsewhere; each atom is associated to the
diagonal matrix carrying that prime, and two atoms are associated iff
their (position, prime) profiles agree, which also realizes similarity and
subsimilarity on atoms.  The diagonal map delta(A) = (|a_11|, ..., |a_nn|)
into (N_{>0})^n is an isoatomic weak transfer homomorphism.

M_n(Z)* is the semigroup of integer matrices with nonzero determinant.
Smith Normal Form A = U*C*V (U, V unimodular, descending divisibility
c_{i+1,i+1} | c_{i,i}) makes |det| a transfer homomorphism to N_{>0};
atoms are the matrices of prime |determinant|.

Left-divisor enumeration is original plumbing: candidate atoms are
parameterized by a position/prime and off-diagonal residues mod p, kept
when the inverse times A stays integral, and deduplicated up to right-unit
multiplication so that each rigid-factorization branch is produced once.
Exhaustiveness is cross-checked against brute scans in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .arith import factor, is_prime
from .handles import DivisorPairs, FactorialVectorHandle, SemigroupHandle

Mat = Tuple[Tuple[int, ...], ...]


class NotAtomError(ValueError):
    pass


class DetTooLargeError(ValueError):
    pass


# basic exact matrix helpers ---------------------------------------------

def mat(rows: Sequence[Sequence[int]]) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in rows)


def mat_identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def mat_det(a: Mat) -> int:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    det = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in a[1:])
        det += (-1) ** j * a[0][j] * mat_det(minor)
    return det


def is_upper_triangular(a: Mat) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i))


def parse_matrix(text: str) -> Mat:
    """Rows separated by ';', entries by spaces: "2 5; 0 3"."""
    rows = [r.split() for r in text.split(";")]
    m = mat(rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square")
    return m


def format_matrix(a: Mat) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in a)


def _solve_upper(u: Mat, a: Mat) -> Optional[Mat]:
    """Solve U X = A exactly for upper triangular U; None unless X is integral."""
    n = len(u)
    x = [[0] * n for _ in range(n)]
    for col in range(n):
        for row in range(n - 1, -1, -1):
            s = a[row][col] - sum(u[row][k] * x[k][col] for k in range(row + 1, n))
            if s % u[row][row] != 0:
                return None
            x[row][col] = s // u[row][row]
    return tuple(tuple(r) for r in x)


# triangular matrices -----------------------------------------------------


@dataclass(frozen=True)
class AtomProfile:
    """Associate-class data of a triangular atom: the diagonal position
    carrying the prime, and the prime itself."""
    position: int   # 1-based
    prime: int


def tri_is_unit(a: Mat) -> bool:
    return is_upper_triangular(a) and all(a[i][i] in (1, -1) for i in range(len(a)))


def tri_is_atom(a: Mat) -> Optional[AtomProfile]:
    """Atom test per the diagonal criterion: exactly one diagonal entry is
    (up to sign) prime, every other diagonal entry is a unit."""
    if not is_upper_triangular(a) or mat_det(a) == 0:
        return None
    profile = None
    for i in range(len(a)):
        d = abs(a[i][i])
        if d == 1:
            continue
        if not is_prime(d) or profile is not None:
            return None
        profile = AtomProfile(i + 1, d)
    return profile


def tri_associate_normal_form(a: Mat) -> Tuple[Mat, Tuple[Mat, Mat]]:
    """Associate normal form of a triangular atom: the diagonal matrix with
    its prime at (m, m) and ones elsewhere, together with unit matrices
    (E, F) certifying E * a * F = normal form.

    Row i < m is cleared by right multiplication, column j > m by left
    multiplication, exactly the elimination by unit matrices from the
    structure theory of T_n.
    """
    profile = tri_is_atom(a)
    if profile is None:
        raise NotAtomError(f"{a} is not an atom of T_n(Z)")
    n = len(a)
    m = profile.position - 1
    # normalize diagonal signs first
    signs = tuple(tuple((1 if a[i][i] > 0 else -1) if i == j else 0
                        for j in range(n)) for i in range(n))
    left = signs
    cur = mat_mul(signs, a)
    right = mat_identity(n)
    for i in range(m):                      # clear row i right of the diagonal
        c = tuple(tuple((1 if r == s else 0) - (cur[i][s] if r == i and s > i else 0)
                        for s in range(n)) for r in range(n))
        cur = mat_mul(cur, c)
        right = mat_mul(right, c)
    for j in range(m + 1, n):               # clear column j above the diagonal
        c = tuple(tuple((1 if r == s else 0) - (cur[r][j] if s == j and r < j else 0)
                        for s in range(n)) for r in range(n))
        cur = mat_mul(c, cur)
        left = mat_mul(c, left)
    return cur, (left, right)


def annihilator_profile(a: Mat) -> AtomProfile:
    """Profile (m, p) classifying the annihilator ideal of a triangular
    atom; two atoms are associated (equivalently similar, subsimilar) iff
    their profiles agree."""
    profile = tri_is_atom(a)
    if profile is None:
        raise NotAtomError(f"{a} is not an atom of T_n(Z)")
    return profile


def tri_atoms_associated(a: Mat, b: Mat) -> bool:
    return annihilator_profile(a) == annihilator_profile(b)


def delta_map(a: Mat) -> Tuple[int, ...]:
    """The diagonal weak transfer homomorphism delta: T_n(Z)* -> (N_{>0})^n."""
    return tuple(abs(a[i][i]) for i in range(len(a)))


def tri_left_divisors(a: Mat, det_cap: int = 1_000_000,
                      dedupe: bool = True) -> List[Tuple[Mat, Mat]]:
    """All atoms U left-dividing a (up to right units) with quotients.

    Candidates place a prime p | |a_mm| at position m with off-diagonal
    residues mod p in row m (right of the diagonal) and column m (above
    it); a candidate survives iff U^{-1} A is integral upper triangular.
    With dedupe=True right-associated candidates collapse, so each rigid
    branch appears once.
    """
    n = len(a)
    d = mat_det(a)
    if d == 0 or not is_upper_triangular(a):
        raise ValueError("need an upper triangular matrix with nonzero det")
    if abs(d) > det_cap:
        raise DetTooLargeError(f"|det| = {abs(d)} exceeds cap {det_cap}")
    found: List[Tuple[Mat, Mat]] = []
    for m in range(n):
        for p in sorted(factor(abs(a[m][m]))):
            slots = [(m, j) for j in range(m + 1, n)] + [(i, m) for i in range(m)]
            for residues in itertools.product(range(p), repeat=len(slots)):
                u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
                u[m][m] = p
                for (i, j), x in zip(slots, residues):
                    u[i][j] = x
                um = tuple(tuple(row) for row in u)
                q = _solve_upper(um, a)
                if q is None or not is_upper_triangular(q):
                    continue
                found.append((um, q))
    if not dedupe:
        return found
    kept: List[Tuple[Mat, Mat]] = []
    for u, q in found:
        if not any(_right_associated(u, u2) for u2, _ in kept):
            kept.append((u, q))
    return kept


def _right_associated(u: Mat, v: Mat) -> bool:
    """u ~ v up to right multiplication by a unit of T_n(Z)."""
    x = _solve_upper(u, v)
    return x is not None and tri_is_unit(x)


class TriangularMatrixHandle(SemigroupHandle):
    """T_n(Z)* as a SemigroupHandle (n = 2 or 3 for divisor enumeration)."""

    reduced = False   # units are the +-1-diagonal triangular matrices

    def __init__(self, n: int, det_cap: int = 1_000_000):
        if n < 1:
            raise ValueError("dimension must be positive")
        self.n = n
        self.det_cap = det_cap
        self.name = f"T_{n}(Z)*"

    def matrix(self, rows) -> Mat:
        m = mat(rows)
        if len(m) != self.n or not is_upper_triangular(m) or mat_det(m) == 0:
            raise ValueError("need an upper triangular matrix with nonzero det")
        return m

    def identity(self) -> Mat:
        return mat_identity(self.n)

    def is_unit(self, x: Mat) -> bool:
        return tri_is_unit(x)

    def multiply(self, x: Mat, y: Mat) -> Mat:
        return mat_mul(x, y)

    def is_atom(self, x: Mat) -> bool:
        return tri_is_atom(x) is not None

    def atom_class(self, u: Mat) -> Tuple[int, int]:
        profile = annihilator_profile(u)
        return (profile.position, profile.prime)

    def atoms_associated(self, u: Mat, v: Mat) -> bool:
        return tri_atoms_associated(u, v)

    def left_divisor_atoms(self, x: Mat) -> DivisorPairs:
        return tri_left_divisors(x, self.det_cap), True

    def length_cap(self, x: Mat) -> int:
        return sum(factor(abs(mat_det(x))).values()) if abs(mat_det(x)) > 1 else 0

    def format_element(self, x: Mat) -> str:
        return "[" + format_matrix(x) + "]"

    def right_normalize_key(self, x: Mat) -> Mat:
        """Canonical representative of x up to right units (memo key: the
        factorization class structure is invariant under right units)."""
        n = self.n
        cols = [list(col) for col in zip(*x)]
        # sign-normalize diagonals, then reduce each column mod earlier diag
        for j in range(n):
            if cols[j][j] < 0:
                cols[j] = [-v for v in cols[j]]
        for j in range(1, n):
            for i in range(j):
                d = cols[i][i]
                t = (cols[j][i] % d) - cols[j][i]
                if t:
                    k = t // d
                    cols[j] = [v + k * w for v, w in zip(cols[j], cols[i])]
        return tuple(zip(*[tuple(c) for c in cols]))


@dataclass(frozen=True)
class SnfResult:
    """A = U * C * V with U, V unimodular and c_{i+1,i+1} | c_{i,i}."""
    u: Mat
    c: Mat
    v: Mat


def snf(a: Mat) -> SnfResult:
    """Smith Normal Form with the descending divisibility convention.

    The usual ascending form (d_1 | d_2 | ...) is computed by exact row and
    column reduction while accumulating the inverse operations, then the
    diagonal is reversed by permutation matrices.
    """
    n = len(a)
    if mat_det(a) == 0:
        raise ValueError("need nonzero determinant")
    m = [list(row) for row in a]
    left = [list(row) for row in mat_identity(n)]    # accumulates U with A = U M V
    right = [list(row) for row in mat_identity(n)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        for col in range(n):                         # left *= swap^{-1} = swap
            left[col][i], left[col][j] = left[col][j], left[col][i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        right[i], right[j] = right[j], right[i]

    def add_row(src, dst, k):                        # row_dst += k * row_src
        for col in range(n):
            m[dst][col] += k * m[src][col]
        for row in range(n):                         # left: col_src -= k * col_dst
            left[row][src] -= k * left[row][dst]

    def add_col(src, dst, k):
        for row in m:
            row[dst] += k * row[src]
        for col in range(n):
            right[src][col] -= k * right[dst][col]

    def negate_row(i):
        for col in range(n):
            m[i][col] = -m[i][col]
        for row in range(n):
            left[row][i] = -left[row][i]

    for t in range(n):
        while True:
            pivots = [(abs(m[i][j]), i, j) for i in range(t, n)
                      for j in range(t, n) if m[i][j] != 0]
            _, pi, pj = min(pivots)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            if m[t][t] < 0:
                negate_row(t)
            done = True
            for i in range(t + 1, n):
                if m[i][t] % m[t][t] != 0:
                    add_row(t, i, -(m[i][t] // m[t][t]))
                    done = False
            for j in range(t + 1, n):
                if m[t][j] % m[t][t] != 0:
                    add_col(t, j, -(m[t][j] // m[t][t]))
                    done = False
            if not done:
                continue
            for i in range(t + 1, n):
                if m[i][t] != 0:
                    add_row(t, i, -(m[i][t] // m[t][t]))
            for j in range(t + 1, n):
                if m[t][j] != 0:
                    add_col(t, j, -(m[t][j] // m[t][t]))
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if m[i][j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
    # ascending d_1 | d_2 | ... achieved; reverse to the descending convention
    rev = tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n))
                for i in range(n))
    c = mat_mul(rev, mat_mul(tuple(tuple(r) for r in m), rev))
    u = mat_mul(tuple(tuple(r) for r in left), rev)
    v = mat_mul(rev, tuple(tuple(r) for r in right))
    return SnfResult(u, c, v)


def snf_ascending(a: Mat) -> SnfResult:
    """Converter to the common ascending convention d_1 | d_2 | ..."""
    res = snf(a)
    n = len(a)
    rev = tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n))
                for i in range(n))
    return SnfResult(mat_mul(res.u, rev), mat_mul(rev, mat_mul(res.c, rev)),
                     mat_mul(rev, res.v))


def det_transfer(a: Mat) -> int:
    """|det|: the transfer homomorphism M_n(Z)* -> N_{>0}."""
    d = mat_det(a)
    if d == 0:
        raise ValueError("zero determinant")
    return abs(d)


def mat_is_atom(a: Mat) -> bool:
    return is_prime(det_transfer(a))


def mat_left_divisors(a: Mat, det_cap: int = 1_000_000) -> List[Tuple[Mat, Mat]]:
    """Atom left divisors of a in M_n(Z)*, one per index-p column lattice
    between A's column lattice and Z^n (Hermite-form parameterization)."""
    n = len(a)
    d = abs(mat_det(a))
    if d == 0:
        raise ValueError("zero determinant")
    if d > det_cap:
        raise DetTooLargeError(f"|det| = {d} exceeds cap {det_cap}")
    pairs: List[Tuple[Mat, Mat]] = []
    for p in sorted(factor(d)):
        for k in range(n):
            # Hermite parameterization of the index-p column lattices:
            # diag(1,..,p,..,1) with residues mod p in row k right of it
            for residues in itertools.product(range(p), repeat=n - 1 - k):
                u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
                u[k][k] = p
                for off, x in enumerate(residues):
                    u[k][k + 1 + off] = x
                um = tuple(tuple(row) for row in u)
                q = _solve_upper(um, a)
                if q is not None:
                    pairs.append((um, q))
    return pairs


class FullMatrixHandle(SemigroupHandle):
    """M_n(Z)* as a SemigroupHandle."""

    reduced = False

    def __init__(self, n: int, det_cap: int = 1_000_000):
        self.n = n
        self.det_cap = det_cap
        self.name = f"M_{n}(Z)*"

    def matrix(self, rows) -> Mat:
        m = mat(rows)
        if len(m) != self.n or mat_det(m) == 0:
            raise ValueError("need a square integer matrix with nonzero det")
        return m

    def identity(self) -> Mat:
        return mat_identity(self.n)

    def is_unit(self, x: Mat) -> bool:
        return abs(mat_det(x)) == 1

    def multiply(self, x: Mat, y: Mat) -> Mat:
        return mat_mul(x, y)

    def is_atom(self, x: Mat) -> bool:
        return mat_is_atom(x)

    def atom_class(self, u: Mat) -> int:
        # two atoms share a Smith Normal Form diag(p, 1, ..., 1), hence are
        # associated, iff their |det|s agree
        p = det_transfer(u)
        if not is_prime(p):
            raise NotAtomError(f"{u} is not an atom of M_n(Z)")
        return p

    def left_divisor_atoms(self, x: Mat) -> DivisorPairs:
        return mat_left_divisors(x, self.det_cap), True

    def length_cap(self, x: Mat) -> int:
        d = det_transfer(x)
        return sum(factor(d).values()) if d > 1 else 0

    def format_element(self, x: Mat) -> str:
        return "[" + format_matrix(x) + "]"


# transfer maps and their verification ------------------------------------


@dataclass(frozen=True)
class TransferMap:
    """A computable homomorphism into a target handle."""
    name: str
    source: SemigroupHandle
    target: SemigroupHandle
    fn: object

    def apply(self, x):
        return self.fn(x)


def delta_transfer_map(handle: TriangularMatrixHandle) -> TransferMap:
    target = FactorialVectorHandle(handle.n)
    return TransferMap("delta", handle, target, delta_map)


def det_transfer_map(handle: FullMatrixHandle) -> TransferMap:
    target = FactorialVectorHandle(1)
    return TransferMap("det", handle, target, lambda a: (det_transfer(a),))


def identity_transfer_map(handle: SemigroupHandle) -> TransferMap:
    return TransferMap("identity", handle, handle, lambda x: x)


@dataclass(frozen=True)
class TransferReport:
    map_name: str
    unit_preservation_ok: bool
    atom_preservation_ok: bool
    lifting_ok: bool          # (WT2) on the sample
    isoatomic_ok: bool
    homomorphism_ok: bool
    sample_size: int
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return (self.unit_preservation_ok and self.atom_preservation_ok
                and self.lifting_ok and self.isoatomic_ok
                and self.homomorphism_ok)


def verify_transfer_properties(tmap: TransferMap, sample: Sequence,
                               pair_limit: int = 400) -> TransferReport:
    """Check (T1) unit fibers, atom preservation, the (WT2) lifting of
    target factorizations up to permutation, isoatomicity, and the
    homomorphism law, over the given sample of source elements."""
    from .factorizations import permutable_class_multisets

    src, tgt = tmap.source, tmap.target
    units_ok = atoms_ok = lifting_ok = iso_ok = hom_ok = True
    counterexample = None
    sample = list(sample)

    for a in sample:
        fa = tmap.apply(a)
        if src.is_unit(a) != tgt.is_unit(fa):
            units_ok = False
            counterexample = f"(T1) unit fiber fails at {src.format_element(a)}"
            break
        if not src.is_unit(a) and src.is_atom(a) != tgt.is_atom(fa):
            atoms_ok = False
            counterexample = f"atom preservation fails at {src.format_element(a)}"
            break

    if counterexample is None:
        from .factorizations import rigid_factorizations
        for a in sample:
            if src.is_unit(a):
                continue
            tgt_sets, _ = permutable_class_multisets(tgt, tmap.apply(a))
            fs = rigid_factorizations(src, a)
            images = set()
            for z in fs:
                images.add(tuple(sorted(tgt.atom_class(tmap.apply(u))
                                        for u in z.atoms)))
            if fs.complete and not tgt_sets <= images:
                lifting_ok = False
                missing = sorted(tgt_sets - images)[0]
                counterexample = (f"(WT2) target factorization {missing} of "
                                  f"{src.format_element(a)} does not lift")
                break

    if counterexample is None:
        atoms = [a for a in sample if not src.is_unit(a) and src.is_atom(a)]
        count = 0
        for i, u in enumerate(atoms):
            for v in atoms[i + 1:]:
                count += 1
                if count > pair_limit:
                    break
                tu, tv = tmap.apply(u), tmap.apply(v)
                if tgt.atom_class(tu) == tgt.atom_class(tv) \
                        and not src.atoms_associated(u, v):
                    iso_ok = False
                    counterexample = (f"isoatomicity fails: {src.format_element(u)}"
                                      f" vs {src.format_element(v)}")
                    break
            if not iso_ok or count > pair_limit:
                break

    if counterexample is None:
        count = 0
        for a in sample:
            for b in sample:
                count += 1
                if count > pair_limit:
                    break
                lhs = tmap.apply(src.multiply(a, b))
                rhs = tgt.multiply(tmap.apply(a), tmap.apply(b))
                if tgt.key(lhs) != tgt.key(rhs):
                    hom_ok = False
                    counterexample = "homomorphism law fails"
                    break
            if not hom_ok or count > pair_limit:
                break

    return TransferReport(tmap.name, units_ok, atoms_ok, lifting_ok, iso_ok,
                          hom_ok, len(sample), counterexample)
