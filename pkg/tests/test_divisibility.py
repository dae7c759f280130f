import random

import pytest

from factorum.divisibility import (DivisibilityKind, NotAlmostPrimeLikeError,
                                   divides, divides_p, is_almost_prime_like,
                                   is_prime_like, min_subproduct_k, occurs_in,
                                   omega_element, omega_semigroup,
                                   tame_element, tame_semigroup,
                                   valuation_set)
from factorum.factorizations import (permutable_factorizations,
                                     rigid_factorizations)
from factorum.presentation import (ExplorationBudget, PresentationSemigroup,
                                   parse_presentation)
from factorum.presets import ab_ban, b_an_c, engine


def make(text, mwl=12):
    return PresentationSemigroup(parse_presentation(text),
                                 ExplorationBudget(mwl))


def test_divides_p_ab_cd_cede_ba():
    h = engine("ab_cd_cede_ba")
    a = h.element_from_str("a")
    cd = h.element_from_str("c d")
    assert divides_p(h, a, cd).holds   # cd = ab, so a |_p cd


def test_divides_reflexive_on_atoms():
    h = engine("abc_cb")
    u = h.element_from_str("b")
    assert divides_p(h, u, u).holds
    assert divides(h, DivisibilityKind.LEFT_RIGHT, u, u).holds


def test_atom_divisibility_kinds_agree():
    # for atoms, |_p and |_{l-r} coincide (explored pairs)
    for h in (engine("abc_cb"), engine("ab_cd_cede_ba"), ab_ban(3)):
        atoms, _ = h.enumerate_atoms(2)
        els, _ = h.enumerate_elements(4)
        for u in atoms:
            for a in els:
                dp = divides(h, DivisibilityKind.PERMUTATION, u, a)
                dlr = divides(h, DivisibilityKind.LEFT_RIGHT, u, a)
                if dp.certified and dlr.certified:
                    assert dp.holds == dlr.holds


def test_divisibility_relation_axioms():
    # (i) a|b or a|c implies a|bc; (ii) associate closure is trivial in the
    # reduced engine; (iii) atom | atom implies associated; (iv) nothing
    # non-trivial divides the identity
    rng = random.Random(23)
    for h in (engine("abc_cb"), ab_ban(3)):
        els, _ = h.enumerate_elements(3)
        atoms, _ = h.enumerate_atoms(2)
        for kind in DivisibilityKind:
            for _ in range(40):
                a, b, c = (rng.choice(els) for _ in range(3))
                hit = None
                if divides(h, kind, a, b).holds:
                    hit = True
                elif divides(h, kind, a, c).holds:
                    hit = True
                if hit:
                    assert divides(h, kind, a, h.multiply(b, c)).holds
            for u in atoms:
                for v in atoms:
                    if divides(h, kind, u, v).holds:
                        assert h.atoms_associated(u, v)
                assert not divides(h, kind, u, h.identity()).holds


def test_almost_prime_like_aba_ba3bc():
    h = engine("aba_ba3bc")
    els, comp = h.enumerate_elements(6)
    a, b, c = (h.element_from_str(x) for x in "abc")
    assert is_almost_prime_like(h, a, els).holds
    assert is_almost_prime_like(h, b, els).holds
    rep = is_almost_prime_like(h, c, els)
    assert not rep.holds
    el, z_with, z_without = rep.counterexample
    assert el.word == ("a", "b", "a")
    assert occurs_in(h, c, z_with) and not occurs_in(h, c, z_without)
    # counterexample factorizations recompose to the element
    assert h.product(z_with.atoms).word == el.word
    assert h.product(z_without.atoms).word == el.word


def test_almost_prime_like_free_monoid():
    h = make("gens: a b\n")
    els, comp = h.enumerate_elements(4)
    rep = is_almost_prime_like(h, h.element_from_str("a"), els, comp)
    assert rep.holds and rep.certified


def test_almost_prime_like_ab_cd_counterexample():
    h = engine("ab_cd")
    els, _ = h.enumerate_elements(4)
    rep = is_almost_prime_like(h, h.element_from_str("a"), els)
    assert not rep.holds
    assert rep.counterexample[0].word == ("a", "b")


def test_valuations_aba_ba3bc():
    h = engine("aba_ba3bc")
    a, b = h.element_from_str("a"), h.element_from_str("b")
    aba = h.element_from_str("a b a")
    assert valuation_set(h, a, aba).values == (2, 3)
    assert valuation_set(h, b, aba).values == (1, 2)
    assert valuation_set(h, a, a).values == (1,)


def test_valuation_precheck_raises():
    h = engine("aba_ba3bc")
    els, _ = h.enumerate_elements(6)
    c = h.element_from_str("c")
    with pytest.raises(NotAlmostPrimeLikeError):
        valuation_set(h, c, h.element_from_str("a b a"), precheck_scope=els)


def test_prime_like_but_not_permutably_factorial():
    # <a,b | a^2 = b a^2 b>: a is prime-like, yet |Z_p(a^2)| > 1
    h = make("gens: a b\nrel: a a = b a a b\n", 10)
    els, _ = h.enumerate_elements(4)
    rep = is_prime_like(h, h.element_from_str("a"), els, False)
    assert rep.holds
    pfs, _ = permutable_factorizations(h, h.element_from_str("a a"))
    assert len(pfs) > 1


def test_additivity_of_singleton_valuations():
    # prime-like q: V_q(ab) = V_q(a) + V_q(b) on samples
    h = b_an_c(3)
    els, _ = h.enumerate_elements(3)
    q = h.element_from_str("a")
    for x in els[:8]:
        for y in els[:8]:
            vx = valuation_set(h, q, x).values
            vy = valuation_set(h, q, y).values
            vxy = valuation_set(h, q, h.multiply(x, y)).values
            if len(vx) == 1 and len(vy) == 1 and len(vxy) == 1:
                assert vxy[0] == vx[0] + vy[0]


def test_consdivprod_atom_case():
    # almost-prime-like q |_p u_1...u_m with atoms u_i implies q ~ some u_i
    h = engine("aba_ba3bc")
    rng = random.Random(9)
    atoms, _ = h.enumerate_atoms(1)
    q = h.element_from_str("a")
    for _ in range(30):
        us = [rng.choice(atoms) for _ in range(rng.randint(1, 3))]
        prod = h.product(us)
        if divides_p(h, q, prod).holds:
            fs = rigid_factorizations(h, prod)
            if fs.complete and all(occurs_in(h, q, z) for z in fs):
                assert any(h.atoms_associated(q, u) for u in us)


def test_ab_cd_cede_ba_values():
    h = engine("ab_cd_cede_ba")
    a = h.element_from_str("a")
    els, comp = h.enumerate_elements(5)
    assert comp
    rep = omega_semigroup(h, a, els)
    assert rep.value == 2 and rep.certified
    ba = h.element_from_str("b a")
    repp = omega_element(h, ba, a, "nonunits")
    assert repp.value >= 3
    parts = tuple(h.element_from_str(s) for s in ("c e", "d", "e"))
    assert min_subproduct_k(h, parts, a)[0] == 3


def test_omega_free_monoid_prime():
    h = make("gens: a b\n")
    els, _ = h.enumerate_elements(4)
    rep = omega_semigroup(h, h.element_from_str("a"), els)
    assert rep.value == 1


def test_omega_banc_values():
    h = b_an_c(3)
    els, _ = h.enumerate_elements(5)
    assert omega_semigroup(h, h.element_from_str("a"), els).value == 1
    assert omega_semigroup(h, h.element_from_str("b"), els).value == 3
    assert omega_semigroup(h, h.element_from_str("c"), els).value == 3


def test_omega_le_omega_prime():
    h = engine("ab_cd_cede_ba")
    els, _ = h.enumerate_elements(4)
    for divisor in (h.element_from_str("a"), h.element_from_str("c")):
        for x in els[:20]:
            w = omega_element(h, x, divisor, "atoms").value
            wp = omega_element(h, x, divisor, "nonunits").value
            assert w <= wp


def test_tame_aba_bab():
    h = engine("aba_bab")
    els, comp = h.enumerate_elements(6)
    for g in "ab":
        rep = tame_semigroup(h, [h.element_from_str(g)], els,
                             scope_certified=comp)
        assert rep.value == 0 and rep.certified


def test_tame_banc():
    h = b_an_c(3)
    els, comp = h.enumerate_elements(6)
    assert tame_semigroup(h, [h.element_from_str("a")], els).value == 0
    assert tame_semigroup(h, [h.element_from_str("b")], els).value == 1
    assert tame_semigroup(h, [h.element_from_str("c")], els).value == 1


def test_tame_single_class_zero():
    h = engine("abc_cb")
    el = h.element_from_str("a b")   # unique factorization
    rep = tame_element(h, el, [h.element_from_str("a")])
    assert rep.value == 0


def test_permutable_factoriality_iff_prime_like_atoms():
    # within a finite scope: every atom prime-like <=> |Z_p| = 1 throughout
    free = make("gens: a b\n")
    els, _ = free.enumerate_elements(4)
    atoms, _ = free.enumerate_atoms(1)
    assert all(is_prime_like(free, u, els, False).holds for u in atoms)
    assert all(len(permutable_factorizations(free, el)[0]) == 1 for el in els)

    h = engine("ab_cd")   # ab = cd has two permutable factorizations
    els2, _ = h.enumerate_elements(3)
    assert any(len(permutable_factorizations(h, el)[0]) > 1 for el in els2)
    atoms2, _ = h.enumerate_atoms(1)
    flags = []
    for u in atoms2:
        try:
            flags.append(is_prime_like(h, u, els2, False).holds)
        except NotAlmostPrimeLikeError:
            flags.append(False)
    assert not all(flags)
