"""Finitely presented semigroup engine.

A presentation is a finite alphabet together with relations u = v whose two
sides are nonempty words (reduced presentations: the unit group stays
trivial, because rewriting never changes a nonempty word into the empty
one).  Equality of elements is decided by a bounded congruence-closure
search: the *ball* of a word is the set of words reachable by single
relation applications, in both directions at every position, subject to a
length cap and a size cap.  A ball that closes (no rewrite escapes it)
certifies the full congruence class, so equality, atomhood and divisor
enumeration become exact; a truncated ball downgrades every dependent
answer to "within budget".

Canonical forms are shortlex-minimal ball members, with the generator
order taken from the declaration order.  The word problem is undecidable
in general; every answer therefore carries a certification flag.

Cancellativity is assumed, not decided.  ``check_adyan`` provides the one
sufficient certificate used throughout: if each relation contributes an
edge between the first letters of its two sides (left graph) and likewise
for last letters (right graph), and both graphs are forests, the semigroup
embeds into a group and is cancellative.  Non-Adyan presentations are
accepted with a warning recorded on the engine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .handles import DivisorPairs, SemigroupHandle

Word = Tuple[str, ...]

_GENERATOR_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class PresentationError(ValueError):
    """Invalid presentation text or data."""


class EmptyRelationSideError(PresentationError):
    """A relation has an empty side (reduced presentations only)."""


class UndeclaredGeneratorError(PresentationError):
    """A relation mentions a symbol that is not a declared generator."""


class BudgetError(ValueError):
    """Exploration budget is inconsistent with the presentation."""


@dataclass(frozen=True)
class ExplorationBudget:
    max_word_length: int = 12
    max_ball_size: int = 100_000

    def __post_init__(self):
        if self.max_word_length < 1 or self.max_ball_size < 1:
            raise BudgetError("budget bounds must be positive")


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...]
    budget: ExplorationBudget = ExplorationBudget()

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if not _GENERATOR_RE.match(g):
                raise PresentationError(f"invalid generator name {g!r}")
            if g in seen:
                raise PresentationError(f"duplicate generator {g!r}")
            seen.add(g)
        for rel in self.relations:
            if not rel.lhs or not rel.rhs:
                raise EmptyRelationSideError(
                    "reduced presentations only: relation sides must be nonempty")
            for sym in rel.lhs + rel.rhs:
                if sym not in seen:
                    raise UndeclaredGeneratorError(f"undeclared generator {sym!r}")
            if len(rel.lhs) > self.budget.max_word_length \
                    or len(rel.rhs) > self.budget.max_word_length:
                raise BudgetError("max_word_length is below a relation side")


def parse_presentation(text: str) -> Presentation:
    """Parse presentation-file content.

    Grammar (one directive per line, '#' starts a comment)::

        gens: a b c
        rel: a b c = c b
        budget: max_word_length=12 max_ball_size=100000
    """
    generators: Optional[Tuple[str, ...]] = None
    relations: List[Relation] = []
    budget = ExplorationBudget()

    def err(lineno: int, col: int, msg: str) -> PresentationError:
        return PresentationError(f"line {lineno}, column {col}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("gens:"):
            names = stripped[len("gens:"):].split()
            if not names:
                raise err(lineno, line.find(":") + 1, "no generators declared")
            if generators is not None:
                raise err(lineno, 1, "duplicate gens: line")
            for name in names:
                if not _GENERATOR_RE.match(name):
                    raise err(lineno, line.find(name) + 1,
                              f"invalid generator name {name!r}")
            generators = tuple(names)
        elif stripped.startswith("rel:"):
            if generators is None:
                raise err(lineno, 1, "rel: before gens:")
            body = stripped[len("rel:"):]
            if body.count("=") != 1:
                raise err(lineno, line.find("=") + 1 if "=" in line else len(line),
                          "relation needs exactly one '='")
            left, right = body.split("=")
            lhs, rhs = tuple(left.split()), tuple(right.split())
            for side in (lhs, rhs):
                if not side or side == ("1",):
                    raise EmptyRelationSideError(
                        f"line {lineno}: reduced presentations only "
                        "(no empty or unit relation side)")
                for sym in side:
                    if sym not in generators:
                        raise UndeclaredGeneratorError(
                            f"line {lineno}, column {line.find(sym) + 1}: "
                            f"undeclared generator {sym!r}")
            relations.append(Relation(lhs, rhs))
        elif stripped.startswith("budget:"):
            fields = stripped[len("budget:"):].split()
            kwargs = {}
            for f in fields:
                k, _, v = f.partition("=")
                if k not in ("max_word_length", "max_ball_size") or not v.isdigit():
                    raise err(lineno, line.find(f) + 1, f"bad budget field {f!r}")
                kwargs[k] = int(v)
            budget = ExplorationBudget(**kwargs)
        else:
            raise err(lineno, 1, f"unrecognized directive {stripped.split()[0]!r}")

    if generators is None:
        raise PresentationError("missing gens: line")
    return Presentation(generators, tuple(relations), budget)


@dataclass(frozen=True)
class AdyanReport:
    left_edges: Tuple[Tuple[str, str], ...]
    right_edges: Tuple[Tuple[str, str], ...]
    is_adyan: bool
    left_acyclic: bool
    right_acyclic: bool


def _is_forest(vertices: Sequence[str], edges: Sequence[Tuple[str, str]]) -> bool:
    # multigraph acyclicity: every relation contributes one edge, so a
    # self-loop or a second edge inside one component is a cycle
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def check_adyan(p: Presentation) -> AdyanReport:
    """Build the left/right graphs of the presentation and test both for
    acyclicity.  If both are forests the semigroup is Adyan, embeds into a
    group and is therefore cancellative."""
    left = tuple((r.lhs[0], r.rhs[0]) for r in p.relations)
    right = tuple((r.lhs[-1], r.rhs[-1]) for r in p.relations)
    la = _is_forest(p.generators, left)
    ra = _is_forest(p.generators, right)
    return AdyanReport(left, right, la and ra, la, ra)


@dataclass(frozen=True)
class CongruenceBall:
    seed: Word
    members: FrozenSet[Word]
    closed: bool
    truncated: bool = False


class Equality(Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not-equal"       # only issued when certified
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Element:
    """Canonical (shortlex-minimal explored) representative of a class."""
    word: Word
    certified: bool = field(compare=False, default=True)

    def __len__(self):
        return len(self.word)


class AtomKind(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AtomAnswer:
    kind: AtomKind
    witness: Optional[Tuple[Element, Element]] = None  # split u, v with uv = w


class PresentationSemigroup(SemigroupHandle):
    """SemigroupHandle over a finite presentation with bounded closure."""

    reduced = True

    def __init__(self, presentation: Presentation,
                 budget: Optional[ExplorationBudget] = None):
        self.presentation = presentation
        self.budget = budget or presentation.budget
        for rel in presentation.relations:
            if max(len(rel.lhs), len(rel.rhs)) > self.budget.max_word_length:
                raise BudgetError("max_word_length is below a relation side")
        self.name = "<" + " ".join(presentation.generators) + " | " + ", ".join(
            " ".join(r.lhs) + "=" + " ".join(r.rhs) for r in presentation.relations) + ">"
        self._gidx = {g: i for i, g in enumerate(presentation.generators)}
        self._rules = []
        for r in presentation.relations:
            self._rules.append((r.lhs, r.rhs))
            if r.lhs != r.rhs:
                self._rules.append((r.rhs, r.lhs))
        self._canon: Dict[Word, Word] = {}
        self._balls: Dict[Word, CongruenceBall] = {}
        self.adyan = check_adyan(presentation)
        self.warnings: List[str] = []
        if not self.adyan.is_adyan:
            self.warnings.append(
                "presentation is not certified Adyan; cancellativity is assumed")

    # words ----------------------------------------------------------

    def word_from_str(self, text: str) -> Word:
        word = tuple(text.split())
        for sym in word:
            if sym not in self._gidx:
                raise UndeclaredGeneratorError(f"undeclared generator {sym!r}")
        return word

    def shortlex_key(self, word: Word):
        return (len(word), tuple(self._gidx[g] for g in word))

    def _rewrites(self, word: Word):
        for lhs, rhs in self._rules:
            n = len(lhs)
            for i in range(len(word) - n + 1):
                if word[i:i + n] == lhs:
                    yield word[:i] + rhs + word[i + n:]

    # balls -----------------------------------------------------------

    def congruence_ball(self, word: Word) -> CongruenceBall:
        if word in self._canon:
            return self._balls[self._canon[word]]
        cap = max(self.budget.max_word_length, len(word))
        members = {word}
        queue = [word]
        escaped = False
        truncated = False
        while queue:
            w = queue.pop()
            for nb in self._rewrites(w):
                if len(nb) > cap:
                    escaped = True
                    continue
                if nb in members:
                    continue
                if len(members) >= self.budget.max_ball_size:
                    truncated = True
                    queue = []
                    break
                members.add(nb)
                queue.append(nb)
                # absorb a previously explored overlapping class
                prev = self._canon.get(nb)
                if prev is not None:
                    for m in self._balls[prev].members:
                        if len(m) <= cap and m not in members:
                            members.add(m)
                            queue.append(m)
                        elif len(m) > cap:
                            escaped = True
        closed = not escaped and not truncated
        canonical = min(members, key=self.shortlex_key)
        ball = CongruenceBall(seed=word, members=frozenset(members),
                              closed=closed, truncated=truncated)
        for m in members:
            self._canon[m] = canonical
        self._balls[canonical] = ball
        return ball

    def element(self, word: Word) -> Element:
        ball = self.congruence_ball(word)
        return Element(self._canon[word], ball.closed)

    def element_from_str(self, text: str) -> Element:
        return self.element(self.word_from_str(text))

    def equal(self, w1: Word, w2: Word) -> Equality:
        b1 = self.congruence_ball(w1)
        if w2 in b1.members:
            return Equality.EQUAL
        if b1.closed:
            return Equality.NOT_EQUAL
        b2 = self.congruence_ball(w2)
        if w1 in b2.members:
            return Equality.EQUAL
        if b2.closed:
            return Equality.NOT_EQUAL
        return Equality.UNKNOWN

    # atoms and divisors ------------------------------------------------

    def atom_answer(self, el: Element) -> AtomAnswer:
        if not el.word:
            return AtomAnswer(AtomKind.NO)  # the unit is not an atom
        ball = self.congruence_ball(el.word)
        long_members = sorted((m for m in ball.members if len(m) >= 2),
                              key=self.shortlex_key)
        if long_members:
            m = long_members[0]
            return AtomAnswer(AtomKind.NO,
                              (self.element(m[:1]), self.element(m[1:])))
        if ball.closed:
            return AtomAnswer(AtomKind.YES)
        return AtomAnswer(AtomKind.UNKNOWN)

    def left_divisors(self, el: Element) -> DivisorPairs:
        """All atoms u with el in u*S, each with its left quotient.

        Every split of every ball member is tried; for a closed ball this is
        exhaustive, because u.word + quotient.word is itself a member.
        """
        ball = self.congruence_ball(el.word)
        complete = ball.closed
        pairs = {}
        by_atom: Dict[Word, set] = {}
        for m in sorted(ball.members, key=self.shortlex_key):
            for i in range(1, len(m) + 1):
                prefix_el = self.element(m[:i])
                ans = self.atom_answer(prefix_el)
                if ans.kind is AtomKind.UNKNOWN:
                    complete = False
                    continue
                if ans.kind is AtomKind.NO:
                    continue
                rest_el = self.element(m[i:])
                complete = complete and prefix_el.certified and rest_el.certified
                pairs[(prefix_el.word, rest_el.word)] = (prefix_el, rest_el)
                by_atom.setdefault(prefix_el.word, set()).add(rest_el.word)
        for atom_word, rests in by_atom.items():
            if len(rests) > 1:
                msg = ("left quotient of " + self.format_element(el)
                       + " by " + " ".join(atom_word) + " is not unique; "
                       "the presentation is not cancellative")
                if msg not in self.warnings:
                    self.warnings.append(msg)
        ordered = [pairs[k] for k in sorted(pairs, key=lambda k: (
            self.shortlex_key(k[0]), self.shortlex_key(k[1])))]
        return ordered, complete

    # enumeration -------------------------------------------------------

    def enumerate_elements(self, max_length: Optional[int] = None
                           ) -> Tuple[List[Element], bool]:
        """Canonical representatives of all classes having a member of
        length <= max_length (default: the ball budget), identity excluded.

        Shortlex-canonical words are closed under taking factors, so a DFS
        that extends only canonical prefixes finds every one of them.
        """
        limit = self.budget.max_word_length if max_length is None else max_length
        limit = min(limit, self.budget.max_word_length)
        out: List[Element] = []
        complete = True
        stack: List[Word] = [()]
        while stack:
            w = stack.pop()
            for g in self.presentation.generators:
                cand = w + (g,)
                if len(cand) > limit:
                    continue
                ball = self.congruence_ball(cand)
                complete = complete and ball.closed
                if min(ball.members, key=self.shortlex_key) == cand:
                    out.append(Element(cand, ball.closed))
                    stack.append(cand)
        out.sort(key=lambda e: self.shortlex_key(e.word))
        return out, complete

    def enumerate_atoms(self, max_length: Optional[int] = None
                        ) -> Tuple[List[Element], bool]:
        elements, complete = self.enumerate_elements(max_length)
        atoms = []
        for el in elements:
            ans = self.atom_answer(el)
            if ans.kind is AtomKind.YES:
                atoms.append(el)
            elif ans.kind is AtomKind.UNKNOWN:
                complete = False
        return atoms, complete

    # SemigroupHandle interface -----------------------------------------

    def identity(self) -> Element:
        return Element((), True)

    def key(self, x: Element):
        return x.word

    def is_unit(self, x: Element) -> bool:
        return not x.word

    def multiply(self, x: Element, y: Element) -> Element:
        return self.element(x.word + y.word)

    def certified(self, x: Element) -> bool:
        return x.certified

    def is_atom(self, x: Element) -> bool:
        return self.atom_answer(x).kind is AtomKind.YES

    def left_divisor_atoms(self, x: Element) -> DivisorPairs:
        return self.left_divisors(x)

    def length_cap(self, x: Element) -> int:
        return max(self.budget.max_word_length, len(x.word))

    def format_element(self, x: Element) -> str:
        return " ".join(x.word) if x.word else "1"
