import itertools
from collections import Counter

import pytest

from factorum.catenary import catenary
from factorum.factorizations import length_profile, rigid_factorizations
from factorum.zerosum import (BlockMonoidHandle, FiniteAbelianGroup,
                              GroupTooLarge, atoms_of_block_monoid,
                              block_catenary, davenport, invariant_factors,
                              maximal_order_bound, sequence_sum,
                              zero_sum_sequences)


# independent oracle: enumerate all multisets outright and test minimality

def brute_atoms(group, max_len):
    support = group.elements()
    zero = group.zero()
    out = []
    for n in range(1, max_len + 1):
        for seq in itertools.combinations_with_replacement(support, n):
            if sequence_sum(group, seq) != zero:
                continue
            minimal = True
            for k in range(1, n):
                for sub in set(itertools.combinations(seq, k)):
                    if sequence_sum(group, sub) == zero:
                        minimal = False
                        break
                if not minimal:
                    break
            if minimal:
                out.append(tuple(sorted(seq)))
    return sorted(set(out), key=lambda a: (len(a), a))


@pytest.mark.parametrize("orders", [(2,), (3,), (4,), (2, 2), (5,)])
def test_atoms_match_brute_force(orders):
    group = FiniteAbelianGroup(orders)
    assert atoms_of_block_monoid(group) == brute_atoms(group, group.order)


def test_atoms_c2():
    group = FiniteAbelianGroup((2,))
    assert atoms_of_block_monoid(group) == [((0,),), ((1,), (1,))]


def test_atom_lengths_c3():
    group = FiniteAbelianGroup((3,))
    atoms = atoms_of_block_monoid(group)
    assert sorted({len(a) for a in atoms}) == [1, 2, 3]
    assert ((1,), (1,), (1,)) in atoms   # g g g for g != 0


def test_atoms_trivial_group():
    group = FiniteAbelianGroup((1,))
    assert atoms_of_block_monoid(group) == [((0,),)]


def test_atoms_are_minimal_zero_sum():
    group = FiniteAbelianGroup((3, 3))
    for atom in atoms_of_block_monoid(group):
        assert sequence_sum(group, atom) == group.zero()
        for k in range(1, len(atom)):
            for sub in set(itertools.combinations(atom, k)):
                assert sequence_sum(group, sub) != group.zero()


def test_pigeonhole_bound():
    # any sequence of length |G| has a nonempty consecutive-partial-sum
    # zero-sum subsequence, so minimal zero-sum sequences have length <= |G|
    for orders in ((4,), (2, 2), (5,)):
        group = FiniteAbelianGroup(orders)
        n = group.order
        for seq in itertools.product(group.elements(), repeat=n):
            partial = []
            total = group.zero()
            for g in seq:
                total = group.add(total, g)
                partial.append(total)
            found = group.zero() in partial or \
                len(set(partial)) < len(partial)
            assert found
        assert davenport(group) <= n


@pytest.mark.parametrize("n", range(1, 9))
def test_davenport_cyclic(n):
    assert davenport(FiniteAbelianGroup((n,))) == n


def test_davenport_products():
    assert davenport(FiniteAbelianGroup((2, 2))) == 3
    assert davenport(FiniteAbelianGroup((3, 3))) == 5
    assert davenport(FiniteAbelianGroup((1,))) == 1


def test_davenport_at_least_exponent():
    for orders in ((4,), (2, 4), (3, 3)):
        group = FiniteAbelianGroup(orders)
        atoms = atoms_of_block_monoid(group)
        # witnessed by g^{ord(g)} for a maximal-order element
        g = max(group.elements(), key=group.element_order)
        witness = tuple([g] * group.element_order(g))
        assert witness in atoms
        assert davenport(group) >= group.exponent


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        atoms_of_block_monoid(FiniteAbelianGroup((65,)))


def test_invariant_factors():
    assert invariant_factors(FiniteAbelianGroup((6,))) == (6,)
    assert invariant_factors(FiniteAbelianGroup((2, 3))) == (6,)
    assert invariant_factors(FiniteAbelianGroup((2, 4))) == (2, 4)
    assert invariant_factors(FiniteAbelianGroup((2, 2, 2))) == (2, 2, 2)
    assert invariant_factors(FiniteAbelianGroup((1,))) == ()


# the handle ---------------------------------------------------------------

def direct_partition_lengths(handle, seq):
    """Independent counter: lengths of partitions of seq into atoms."""
    if not seq:
        return {0}
    out = set()
    atoms = [a for a in handle.atoms if Counter(seq) >= Counter(a)
             and (not a or a[0] == seq[0])]
    for atom in atoms:
        rest = list(seq)
        for g in atom:
            rest.remove(g)
        for n in direct_partition_lengths(handle, tuple(rest)):
            out.add(n + 1)
    return out


def test_handle_lengths_match_direct_counter():
    for orders in ((3,), (2, 2), (4,)):
        group = FiniteAbelianGroup(orders)
        handle = BlockMonoidHandle(group)
        for seq in zero_sum_sequences(group, None, 8):
            if len(seq) > 8:
                continue
            L = length_profile(handle, seq)
            assert set(L.lengths) == direct_partition_lengths(handle, seq)


def test_block_monoid_example_c3():
    group = FiniteAbelianGroup((3,))
    handle = BlockMonoidHandle(group)
    S = handle.sequence([(1,)] * 3 + [(2,)] * 3)
    assert length_profile(handle, S).lengths == (2, 3)


def test_block_monoid_atom_single_factorization():
    group = FiniteAbelianGroup((3,))
    handle = BlockMonoidHandle(group)
    atom = handle.atoms[-1]
    fs = rigid_factorizations(handle, atom)
    assert len(fs) == 1 and fs.factorizations[0].atoms == (atom,)


def test_block_monoid_c22_catenary_example():
    group = FiniteAbelianGroup((2, 2))
    handle = BlockMonoidHandle(group)
    U = handle.sequence([(1, 0), (1, 0), (0, 1), (0, 1), (1, 1), (1, 1)])
    assert catenary(handle, U).value == 3


def test_block_catenary_values():
    assert block_catenary(FiniteAbelianGroup((3,)),
                          max_sequence_length=6).value == 3
    assert block_catenary(FiniteAbelianGroup((2, 2)),
                          max_sequence_length=6).value == 3
    rep = block_catenary(FiniteAbelianGroup((2,)), max_sequence_length=8)
    assert rep.value == 0   # half-factorial: computed Delta is empty


def test_half_factorial_c2():
    group = FiniteAbelianGroup((2,))
    handle = BlockMonoidHandle(group)
    for seq in zero_sum_sequences(group, None, 8):
        assert length_profile(handle, seq).delta == ()


def test_sup_delta_le_catenary():
    group = FiniteAbelianGroup((3,))
    handle = BlockMonoidHandle(group)
    for seq in zero_sum_sequences(group, None, 6):
        L = length_profile(handle, seq)
        if L.delta:
            assert max(L.delta) <= catenary(handle, seq).value


def test_maximal_order_bounds():
    triv = maximal_order_bound(FiniteAbelianGroup((1,)))
    assert triv.bound == 2 and "d_sim-factorial" in triv.classification
    c2 = maximal_order_bound(FiniteAbelianGroup((2,)))
    assert c2.bound == 2 and "|C| <= 2" in c2.classification
    c4 = maximal_order_bound(FiniteAbelianGroup((4,)))
    assert c4.bound == 4 and c4.computed_catenary == 4
    assert "= 4" in c4.classification
    c3 = maximal_order_bound(FiniteAbelianGroup((3,)))
    assert c3.bound == 3 and "= 3" in c3.classification
