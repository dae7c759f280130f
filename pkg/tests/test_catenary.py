from factorum.catenary import (adjacent_catenary, catenary,
                               catenary_in_fibers, equal_catenary,
                               monotone_catenary, monotone_catenary_direct,
                               semigroup_catenary)
from factorum.distances import DistanceKind, distance
from factorum.factorizations import length_profile, rigid_factorizations
from factorum.matrices import TriangularMatrixHandle, delta_transfer_map
from factorum.presentation import PresentationSemigroup, parse_presentation
from factorum.presets import ab_ban, anbn, engine
from factorum.zerosum import BlockMonoidHandle, FiniteAbelianGroup


def test_catenary_abc_cb():
    h = engine("abc_cb")
    rep = catenary(h, h.element_from_str("a b c"), DistanceKind.PERMUTABLE)
    assert rep.value == 1 and rep.certified
    # witness chain: consecutive distances within the bound, same product
    steps = rep.witness.steps
    assert all(distance(h, DistanceKind.PERMUTABLE, x, y) <= rep.value
               for x, y in zip(steps, steps[1:]))
    assert len({h.key(z.product) for z in steps}) == 1


def test_catenary_anbn():
    h = anbn(2)
    el = h.element_from_str("a a b b")
    assert catenary(h, el, DistanceKind.PERMUTABLE).value == 0
    assert catenary(h, el, DistanceKind.RIGID).value == 4


def test_catenary_atom_zero():
    h = engine("abc_cb")
    assert catenary(h, h.element_from_str("a")).value == 0


def test_catenary_ab_ban_n4():
    # c_p(a^m b) = n - 2 at (m, n) = (2, 4)
    h = ab_ban(4, 14)
    rep = catenary(h, h.element_from_str("a a b"), DistanceKind.PERMUTABLE)
    assert rep.value == 2 and rep.certified


def test_variants_abc_cb():
    h = engine("abc_cb")
    el = h.element_from_str("a b c")
    assert equal_catenary(h, el).value == 0
    assert adjacent_catenary(h, el).value == 1
    assert monotone_catenary(h, el).value == 1


def test_variants_atom():
    h = engine("abc_cb")
    el = h.element_from_str("b")
    for fn in (catenary, equal_catenary, adjacent_catenary, monotone_catenary):
        assert fn(h, el).value == 0


def test_chain_inequality_and_bounds():
    # c_d(a) <= c_mon(a) <= sup L(a); sup Delta <= c_d(a)
    for h in (engine("abc_cb"), ab_ban(3), anbn(2)):
        els, _ = h.enumerate_elements(4)
        for el in els:
            for kind in (DistanceKind.PERMUTABLE, DistanceKind.RIGID):
                c = catenary(h, el, kind).value
                cmon = monotone_catenary(h, el, kind).value
                L = length_profile(h, el)
                assert c <= cmon <= max(L.lengths)
                if L.delta:
                    assert max(L.delta) <= c


def test_catenary_zero_iff_single_class():
    from factorum.factorizations import permutable_factorizations
    h = engine("abc_cb")
    els, _ = h.enumerate_elements(4)
    for el in els:
        pfs, _ = permutable_factorizations(h, el)
        assert (catenary(h, el).value == 0) == (len(pfs) == 1)


def test_catenary_le_one_implies_interval():
    for h in (engine("abc_cb"), ab_ban(3)):
        els, _ = h.enumerate_elements(4)
        for el in els:
            if catenary(h, el).value <= 1:
                L = length_profile(h, el).lengths
                assert L == tuple(range(min(L), max(L) + 1))


def test_threshold_connectivity_exactness():
    # with edges <= N the factorization graph is connected; <= N-1 it is not
    h = ab_ban(4, 14)
    el = h.element_from_str("a a b")
    fs = list(rigid_factorizations(h, el))
    n = catenary(h, el, DistanceKind.PERMUTABLE).value
    assert n > 0

    def connected(bound):
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(len(fs)):
                if j not in seen and distance(
                        h, DistanceKind.PERMUTABLE, fs[i], fs[j]) <= bound:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(fs)

    assert connected(n) and not connected(n - 1)


def test_monotone_decomposition_matches_direct_search():
    checked = 0
    for h in (engine("abc_cb"), ab_ban(3), ab_ban(4, 14), anbn(2)):
        els, _ = h.enumerate_elements(4)
        for el in els:
            fs = rigid_factorizations(h, el)
            if not fs.complete or len(fs) > 12:
                continue
            for kind in (DistanceKind.PERMUTABLE, DistanceKind.RIGID):
                direct = monotone_catenary_direct(h, el, kind).value
                assert monotone_catenary(h, el, kind).value == direct
                checked += 1
    assert checked > 20


def test_fibers_commutative_identity_bounded_by_two():
    from factorum.matrices import identity_transfer_map
    from factorum.zerosum import zero_sum_sequences
    G = FiniteAbelianGroup((3,))
    h = BlockMonoidHandle(G)
    idmap = identity_transfer_map(h)
    for seq in zero_sum_sequences(G, None, 6):
        rep = catenary_in_fibers(h, seq, DistanceKind.RIGID, idmap)
        assert rep.value <= 2


def test_fibers_single_factorization_zero():
    h = engine("abc_cb")
    rep = catenary_in_fibers(h, h.element_from_str("a"), DistanceKind.RIGID,
                             __import__("factorum.matrices",
                                        fromlist=["identity_transfer_map"]
                                        ).identity_transfer_map(h))
    assert rep.value == 0


def test_fibers_bound_on_t2():
    # c_d(a) <= max{c_p(delta(a)), c_d(a, delta)}; the image is factorial
    h = TriangularMatrixHandle(2)
    dmap = delta_transfer_map(h)
    samples = [((2, 1), (0, 3)), ((4, 2), (0, 3)), ((2, 5), (0, 2)),
               ((6, 0), (0, 2)), ((-2, 3), (0, 4))]
    for A in samples:
        for kind in (DistanceKind.PERMUTABLE, DistanceKind.RIGID):
            cd = catenary(h, A, kind).value
            cfib = catenary_in_fibers(h, A, kind, dmap).value
            assert cd <= max(0, cfib)


def test_semigroup_catenary():
    h = anbn(2, 8)
    els, complete = h.enumerate_elements(8)
    rep_p = semigroup_catenary(h, els, DistanceKind.PERMUTABLE)
    assert rep_p.value == 0
    rep_r = semigroup_catenary(h, els, DistanceKind.RIGID)
    assert rep_r.value >= 4

    free = PresentationSemigroup(parse_presentation("gens: a b\n"))
    fels, _ = free.enumerate_elements(5)
    for kind in DistanceKind:
        assert semigroup_catenary(free, fels, kind).value == 0
