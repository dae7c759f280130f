"""Command-line front end.

Load a presentation file, a finite abelian group, or a matrix; dispatch an
invariant computation; emit a human table or machine JSON ("factorum/1"
schema, byte-identical across repeated runs).  Exit codes: 0 success, 2 on
budget exhaustion with partial results, 1 on input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import regression as regression_mod
from .abelianization import abelianize, check_exwt
from .catenary import (adjacent_catenary, catenary, equal_catenary,
                       monotone_catenary, semigroup_catenary)
from .distances import (DistanceKind, distance, rigid_distance_alignment)
from .divisibility import (is_almost_prime_like, is_prime_like, omega_element,
                           omega_semigroup, tame_element, tame_semigroup)
from .factorizations import length_profile, rigid_factorizations
from .matrices import (FullMatrixHandle, TriangularMatrixHandle, delta_map,
                       det_transfer, parse_matrix, snf, tri_is_atom)
from .presentation import (ExplorationBudget, Presentation, PresentationError,
                           PresentationSemigroup, check_adyan,
                           parse_presentation)
from .reports import Certification, InvariantReport
from .zerosum import (BlockMonoidHandle, FiniteAbelianGroup,
                      atoms_of_block_monoid, block_catenary, davenport,
                      maximal_order_bound)

_KINDS = {"len": DistanceKind.LENGTH, "perm": DistanceKind.PERMUTABLE,
          "rigid": DistanceKind.RIGID}


def _load_engine(args) -> PresentationSemigroup:
    with open(args.file, "r", encoding="utf-8") as fh:
        pres = parse_presentation(fh.read())
    budget = pres.budget
    if args.budget_len or args.budget_ball:
        budget = ExplorationBudget(args.budget_len or budget.max_word_length,
                                   args.budget_ball or budget.max_ball_size)
    return PresentationSemigroup(pres, budget)


def _budget_dict(h: PresentationSemigroup) -> dict:
    return {"max_word_length": h.budget.max_word_length,
            "max_ball_size": h.budget.max_ball_size}


def _group_from_spec(spec: str) -> FiniteAbelianGroup:
    orders = tuple(int(t) for t in spec.split(","))
    return FiniteAbelianGroup(orders)


def _emit(reports: List[InvariantReport], fmt: str) -> int:
    exit_code = 0
    for rep in reports:
        if fmt == "json":
            print(rep.to_json())
        else:
            print(rep.to_table())
        if rep.certification is not Certification.EXACT:
            exit_code = 2
    return exit_code


def _fact_strings(h, fs) -> list:
    return [[h.format_element(u) for u in z.atoms] for z in fs]


def cmd_parse(args) -> int:
    h = _load_engine(args)
    p = h.presentation
    rep = InvariantReport(
        "presentation", {
            "generators": list(p.generators),
            "relations": [" ".join(r.lhs) + " = " + " ".join(r.rhs)
                          for r in p.relations],
        }, Certification.EXACT, _budget_dict(h), warnings=list(h.warnings))
    return _emit([rep], args.format)


def cmd_adyan(args) -> int:
    h = _load_engine(args)
    rep = check_adyan(h.presentation)
    out = InvariantReport("adyan", {
        "is_adyan": rep.is_adyan,
        "left_graph": [list(e) for e in rep.left_edges],
        "right_graph": [list(e) for e in rep.right_edges],
        "cancellativity": "certified" if rep.is_adyan else "assumed",
    }, Certification.EXACT, _budget_dict(h))
    return _emit([out], args.format)


def cmd_elements(args) -> int:
    h = _load_engine(args)
    els, complete = h.enumerate_elements(args.max_length)
    rep = InvariantReport(
        "elements", [h.format_element(e) for e in els],
        Certification.EXACT if complete else Certification.LOWER_BOUND,
        _budget_dict(h), warnings=list(h.warnings))
    return _emit([rep], args.format)


def cmd_atoms(args) -> int:
    h = _load_engine(args)
    atoms, complete = h.enumerate_atoms(args.max_length)
    rep = InvariantReport(
        "atoms", [h.format_element(e) for e in atoms],
        Certification.EXACT if complete else Certification.LOWER_BOUND,
        _budget_dict(h), warnings=list(h.warnings))
    return _emit([rep], args.format)


def cmd_factorize(args) -> int:
    h = _load_engine(args)
    el = h.element_from_str(args.element)
    fs = rigid_factorizations(h, el)
    rep = InvariantReport(
        "rigid-factorizations", _fact_strings(h, fs),
        Certification.EXACT if fs.complete else Certification.LOWER_BOUND,
        _budget_dict(h), warnings=list(h.warnings))
    return _emit([rep], args.format)


def cmd_lengths(args) -> int:
    h = _load_engine(args)
    el = h.element_from_str(args.element)
    L = length_profile(h, el)
    rep = InvariantReport(
        "length-profile", {"lengths": list(L.lengths), "delta": list(L.delta),
                           "elasticity": L.elasticity},
        Certification.EXACT if L.certified else Certification.LOWER_BOUND,
        _budget_dict(h), warnings=list(h.warnings))
    return _emit([rep], args.format)


def cmd_distance(args) -> int:
    h = _load_engine(args)
    el = h.element_from_str(args.element)
    fs = rigid_factorizations(h, el)
    facts = list(fs)
    if not (0 <= args.z < len(facts) and 0 <= args.zprime < len(facts)):
        print(f"error: factorization index out of range (0..{len(facts)-1})",
              file=sys.stderr)
        return 1
    kind = _KINDS[args.kind]
    z, zp = facts[args.z], facts[args.zprime]
    witnesses = [{"z": _fact_strings(h, [z])[0],
                  "zprime": _fact_strings(h, [zp])[0]}]
    if kind is DistanceKind.RIGID:
        value, alignment = rigid_distance_alignment(h, z, zp)
        witnesses.append({"alignment_blocks": [list(b) for b in alignment.blocks],
                          "gap_costs": list(alignment.gap_costs)})
    else:
        value = distance(h, kind, z, zp)
    rep = InvariantReport(
        f"distance-{kind.value}", value,
        Certification.EXACT if fs.complete else Certification.LOWER_BOUND,
        _budget_dict(h), witnesses, list(h.warnings))
    return _emit([rep], args.format)


def cmd_catenary(args) -> int:
    h = _load_engine(args)
    kind = _KINDS[args.kind]
    fn = {"plain": catenary, "equal": equal_catenary,
          "adjacent": adjacent_catenary, "monotone": monotone_catenary}[args.variant]
    if args.all:
        els, complete = h.enumerate_elements(args.max_length)
        rep = semigroup_catenary(h, els, kind, args.variant, complete)
        name = f"catenary-{kind.value}-{args.variant}-semigroup"
        cert = Certification.LOWER_BOUND
    elif args.element:
        el = h.element_from_str(args.element)
        rep = fn(h, el, kind)
        name = f"catenary-{kind.value}-{args.variant}"
        cert = Certification.EXACT if rep.certified else Certification.LOWER_BOUND
    else:
        print("error: need --element or --all", file=sys.stderr)
        return 1
    witnesses = []
    if rep.witness is not None:
        witnesses.append({"chain": _fact_strings(h, rep.witness.steps),
                          "bound": rep.witness.bound})
    out = InvariantReport(name, rep.value, cert, _budget_dict(h), witnesses,
                          list(h.warnings) + list(rep.notes))
    return _emit([out], args.format)


def cmd_omega(args) -> int:
    h = _load_engine(args)
    divisor = h.element_from_str(args.divisor)
    mode = "nonunits" if args.nonunits else "atoms"
    notes = []
    if args.element:
        el = h.element_from_str(args.element)
        rep = omega_element(h, el, divisor, mode)
        name = f"omega-{mode}"
        cert = (Certification.EXACT if rep.certified
                else Certification.LOWER_BOUND)
    else:
        els, complete = h.enumerate_elements(args.max_length)
        rep = omega_semigroup(h, divisor, els, mode,
                              scope=f"elements of length <= {args.max_length}")
        name = f"omega-{mode}-semigroup"
        cert = Certification.LOWER_BOUND
        notes.append("semigroup-level value: certified lower bound over "
                     + rep.scope)
    witnesses = []
    if rep.witness:
        witnesses.append({
            "element": h.format_element(rep.witness.element),
            "parts": [h.format_element(p) for p in rep.witness.parts],
            "min_k": rep.witness.min_k,
            "subproduct_indices": list(rep.witness.subproduct)})
    out = InvariantReport(name, rep.value, cert, _budget_dict(h), witnesses,
                          list(h.warnings) + notes)
    return _emit([out], args.format)


def cmd_tame(args) -> int:
    h = _load_engine(args)
    pattern = [h.element_from_str(tok) for tok in args.pattern]
    notes = []
    if args.element:
        el = h.element_from_str(args.element)
        rep = tame_element(h, el, pattern)
        name = "tame"
        cert = (Certification.EXACT if rep.certified
                else Certification.LOWER_BOUND)
    else:
        els, complete = h.enumerate_elements(args.max_length)
        rep = tame_semigroup(h, pattern, els,
                             scope=f"elements of length <= {args.max_length}",
                             scope_certified=complete)
        name = "tame-semigroup"
        cert = Certification.LOWER_BOUND
        notes.append("semigroup-level value: certified lower bound over "
                     + rep.scope)
    out = InvariantReport(
        name, rep.value, cert, _budget_dict(h),
        [repr(rep.witness)] if rep.witness else [], list(h.warnings) + notes)
    return _emit([out], args.format)


def cmd_primelike(args) -> int:
    h = _load_engine(args)
    q = h.element_from_str(args.atom)
    els, complete = h.enumerate_elements(args.max_length)
    rep = is_almost_prime_like(h, q, els, complete,
                               scope=f"length <= {args.max_length}")
    value = {"almost_prime_like": rep.holds}
    witnesses = []
    if rep.counterexample:
        el, zw, zwo = rep.counterexample
        witnesses.append({"element": h.format_element(el),
                          "with": _fact_strings(h, [zw])[0],
                          "without": _fact_strings(h, [zwo])[0]})
    elif rep.holds:
        pl = is_prime_like(h, q, els, complete)
        value["prime_like"] = pl.holds
    out = InvariantReport(
        "prime-like", value,
        Certification.EXACT if rep.certified else Certification.LOWER_BOUND,
        _budget_dict(h), witnesses, list(h.warnings))
    return _emit([out], args.format)


def cmd_abelianize(args) -> int:
    h = _load_engine(args)
    ab = abelianize(h)

    def monomial(vec):
        return " ".join(f"{g}^{e}" if e > 1 else g
                        for g, e in zip(ab.generators, vec) if e) or "1"

    rep = InvariantReport(
        "abelianization", {
            "generators": list(ab.generators),
            "relations": [f"{monomial(lhs)} = {monomial(rhs)}"
                          for lhs, rhs in ab._rules[::2]],
            "reduced_within_budget": ab.unit_scan(),
        }, Certification.EXACT, _budget_dict(h), warnings=list(h.warnings))
    return _emit([rep], args.format)


def cmd_check_wth(args) -> int:
    h = _load_engine(args)
    rep = check_exwt(h, args.max_length)
    value = {"weak_transfer_within_budget": rep.passed,
             "equiv_p_transitive": rep.equiv_p_transitive,
             "abelianization_cancellative_within_budget":
                 rep.abelianization_cancellative_within_budget}
    witnesses = []
    for a, b, mset in rep.counterexamples[:5]:
        witnesses.append({"pair": [h.format_element(a), h.format_element(b)],
                          "unliftable_multiset": [" ".join(w) for w in mset]})
    cert = Certification.EXACT if rep.certified else Certification.LOWER_BOUND
    out = InvariantReport("check-wth", value, cert, _budget_dict(h), witnesses,
                          list(h.warnings) + list(rep.notes))
    return _emit([out], args.format)


def cmd_zss(args) -> int:
    group = _group_from_spec(args.group)
    handle = BlockMonoidHandle(group)
    if args.zss_command == "atoms":
        atoms = atoms_of_block_monoid(group)
        rep = InvariantReport(f"zss-atoms({group.describe()})",
                              [handle.format_element(a) for a in atoms],
                              Certification.EXACT)
    elif args.zss_command == "davenport":
        rep = InvariantReport(f"davenport({group.describe()})",
                              davenport(group), Certification.EXACT)
    elif args.zss_command == "catenary":
        res = block_catenary(group, max_sequence_length=args.max_len)
        witnesses = []
        if res.element is not None:
            witnesses.append({"element": handle.format_element(res.element)})
        rep = InvariantReport(f"block-catenary({group.describe()})", res.value,
                              Certification.LOWER_BOUND, witnesses=witnesses,
                              warnings=list(res.notes))
    else:   # order-bound
        res = maximal_order_bound(group)
        rep = InvariantReport(
            f"order-bound({group.describe()})",
            {"bound": res.bound, "computed_catenary": res.computed_catenary,
             "classification": res.classification},
            Certification.EXACT)
    return _emit([rep], args.format)


def cmd_order_bound(args) -> int:
    group = _group_from_spec(args.group)
    res = maximal_order_bound(group)
    rep = InvariantReport(
        f"order-bound({group.describe()})",
        {"bound": res.bound, "computed_catenary": res.computed_catenary,
         "classification": res.classification},
        Certification.EXACT)
    return _emit([rep], args.format)


def cmd_tri(args) -> int:
    m = parse_matrix(args.matrix)
    h = TriangularMatrixHandle(len(m))
    if args.tri_command == "atom":
        profile = tri_is_atom(m)
        value = {"atom": profile is not None}
        if profile:
            value["profile"] = {"position": profile.position,
                                "prime": profile.prime}
        rep = InvariantReport("tri-atom", value, Certification.EXACT)
    elif args.tri_command == "delta":
        rep = InvariantReport("tri-delta", list(delta_map(m)),
                              Certification.EXACT)
    else:   # factorize
        fs = rigid_factorizations(h, m)
        rep = InvariantReport("tri-factorizations", _fact_strings(h, fs),
                              Certification.EXACT if fs.complete
                              else Certification.LOWER_BOUND)
    return _emit([rep], args.format)


def cmd_mat(args) -> int:
    m = parse_matrix(args.matrix)
    h = FullMatrixHandle(len(m))
    if args.mat_command == "snf":
        res = snf(m)
        rep = InvariantReport("mat-snf", {
            "U": [list(r) for r in res.u], "C": [list(r) for r in res.c],
            "V": [list(r) for r in res.v]}, Certification.EXACT)
    elif args.mat_command == "atom":
        rep = InvariantReport("mat-atom",
                              {"atom": h.is_atom(m),
                               "abs_det": det_transfer(m)},
                              Certification.EXACT)
    else:   # lengths
        L = length_profile(h, m)
        rep = InvariantReport("mat-lengths",
                              {"lengths": list(L.lengths),
                               "delta": list(L.delta),
                               "elasticity": L.elasticity},
                              Certification.EXACT if L.certified
                              else Certification.LOWER_BOUND)
    return _emit([rep], args.format)


def cmd_regression(args) -> int:
    budget = None
    if args.budget_len or args.budget_ball:
        budget = ExplorationBudget(args.budget_len or 12,
                                   args.budget_ball or 100_000)
    names = regression_mod.CRITERIA
    if args.case:
        if args.case not in names:
            print(f"error: unknown case {args.case!r}; available: "
                  + ", ".join(names), file=sys.stderr)
            return 1
        names = [args.case]
    any_fail = False
    any_bound = False
    for i, name in enumerate(names, start=1):
        rows = regression_mod.run_case(name, budget)
        for row in rows:
            status = row.status
            if status == "FAIL":
                any_fail = True
            if status == "lower-bound":
                any_bound = True
            rel = "" if row.relation == "==" else f" ({row.relation})"
            print(f"[{status:>11}] {name}: {row.label}: expected{rel} "
                  f"{row.expected}, computed {row.computed}")
    if any_fail:
        return 1
    return 2 if any_bound else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorum",
        description="factorization-theoretic invariants of noncommutative "
                    "cancellative semigroups")
    parser.add_argument("--format", choices=("table", "json"), default="table")
    parser.add_argument("--budget-len", type=int, default=None,
                        help="override max word length")
    parser.add_argument("--budget-ball", type=int, default=None,
                        help="override max congruence-ball size")
    sub = parser.add_subparsers(dest="command", required=True)

    def pres_cmd(name, fn, **extra):
        p = sub.add_parser(name)
        p.add_argument("file", help="presentation file")
        for arg, kw in extra.items():
            p.add_argument(arg.replace("_", "-"), **kw)
        p.set_defaults(func=fn)
        return p

    pres_cmd("parse", cmd_parse)
    pres_cmd("adyan", cmd_adyan)
    p = sub.add_parser("elements")
    p.add_argument("file")
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(func=cmd_elements)
    p = sub.add_parser("atoms")
    p.add_argument("file")
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(func=cmd_atoms)
    p = sub.add_parser("factorize")
    p.add_argument("file")
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_factorize)
    p = sub.add_parser("lengths")
    p.add_argument("file")
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_lengths)
    p = sub.add_parser("distance")
    p.add_argument("file")
    p.add_argument("--kind", choices=tuple(_KINDS), default="perm")
    p.add_argument("--element", required=True)
    p.add_argument("--z", type=int, required=True,
                   help="factorization index (enumeration order)")
    p.add_argument("--zprime", type=int, required=True)
    p.set_defaults(func=cmd_distance)
    p = sub.add_parser("catenary")
    p.add_argument("file")
    p.add_argument("--kind", choices=tuple(_KINDS), default="perm")
    p.add_argument("--variant", choices=("plain", "equal", "adjacent",
                                         "monotone"), default="plain")
    p.add_argument("--element", default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(func=cmd_catenary)
    p = sub.add_parser("omega")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    p.add_argument("--element", default=None,
                   help="omit for the semigroup-level value")
    p.add_argument("--nonunits", action="store_true")
    p.add_argument("--max-length", type=int, default=6)
    p.set_defaults(func=cmd_omega)
    p = sub.add_parser("tame")
    p.add_argument("file")
    p.add_argument("--pattern", nargs="+", required=True)
    p.add_argument("--element", default=None)
    p.add_argument("--max-length", type=int, default=6)
    p.set_defaults(func=cmd_tame)
    p = sub.add_parser("primelike")
    p.add_argument("file")
    p.add_argument("--atom", required=True)
    p.add_argument("--max-length", type=int, default=6)
    p.set_defaults(func=cmd_primelike)
    pres_cmd("abelianize", cmd_abelianize)
    p = sub.add_parser("check-wth")
    p.add_argument("file")
    p.add_argument("--max-length", type=int, default=4)
    p.set_defaults(func=cmd_check_wth)
    p = sub.add_parser("zss")
    p.add_argument("--group", required=True, help="cyclic orders, e.g. 2,2")
    p.add_argument("zss_command", choices=("atoms", "davenport", "catenary",
                                           "order-bound"))
    p.add_argument("--max-len", type=int, default=6)
    p.set_defaults(func=cmd_zss)
    p = sub.add_parser("order-bound")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_order_bound)
    p = sub.add_parser("tri")
    p.add_argument("--matrix", required=True, help='e.g. "2 5; 0 3"')
    p.add_argument("tri_command", choices=("factorize", "atom", "delta"))
    p.set_defaults(func=cmd_tri)
    p = sub.add_parser("mat")
    p.add_argument("--matrix", required=True)
    p.add_argument("mat_command", choices=("snf", "atom", "lengths"))
    p.set_defaults(func=cmd_mat)
    p = sub.add_parser("regression")
    p.add_argument("--case", default=None)
    p.set_defaults(func=cmd_regression)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PresentationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
