import pytest
from hypothesis import given, settings, strategies as st

from oracles import (generic_transfer_index2, order_census, quotient_order_census,
                     semidirect_elements, semidirect_mul)
from perindex.abelian import FgAbelianGroup, direct_sum_of_cyclics, element_order
from perindex.errors import InconsistentPresentationError, PreconditionError
from perindex.grouptransfer import (FiniteGroupTable, IndexTwoData, abelian_table,
                                    abelianization, abelianized_presentation_group,
                                    build_semidirect, commutator_subgroup, transfer_index2)


def valid_pairs(max_n=16):
    return [(n, k) for n in range(1, max_n + 1) for k in range(n) if (k * k - 1) % n == 0]


def test_semidirect_8_5():
    G = build_semidirect(8, 5)
    assert G.order == 16
    a, b = G.generators["a"], G.generators["b"]
    assert G.element_order(a) == 8 and G.element_order(b) == 2
    assert G.mul(G.mul(b, a), G.inv(b)) == G.power(a, 5)
    assert not G.is_abelian()
    assert G.labels[G.parse_word("a^4")] == "a^4"
    assert G.parse_word("a^3 b") == G.mul(G.power(a, 3), b)
    assert G.parse_word("b*a^-1") == G.mul(b, G.inv(a))


def test_small_semidirects():
    G = build_semidirect(3, 1)
    assert G.is_abelian() and G.order_census() == order_census((6,))
    D4 = build_semidirect(4, 3)
    assert D4.order_census() == [1, 2, 2, 2, 2, 2, 4, 4]


def test_inconsistent_presentation_rejected():
    with pytest.raises(InconsistentPresentationError):
        build_semidirect(8, 2)
    with pytest.raises(InconsistentPresentationError):
        FiniteGroupTable([[0, 1], [1, 1]])   # no inverse for 1
    with pytest.raises(InconsistentPresentationError):
        FiniteGroupTable([[1, 0], [0, 1]])   # 0 is not the identity


def test_non_associative_table_rejected():
    # a Latin square with identity 0 that is not a group (order-5 loop)
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(InconsistentPresentationError):
        FiniteGroupTable(t)


def test_abelianization_of_8_5():
    G = build_semidirect(8, 5)
    ab = abelianization(G)
    assert ab.group == FgAbelianGroup((2, 4))
    assert element_order(ab.group, ab.image[G.generators["a"]]) == 4
    assert sorted(commutator_subgroup(G)) == sorted({G.power(G.generators["a"], 4), 0})


def test_abelianization_of_dihedral():
    ab = abelianization(build_semidirect(4, 3))
    assert ab.group == FgAbelianGroup((2, 2))


@pytest.mark.parametrize("orders", [(), (2,), (6,), (2, 4), (2, 2, 2), (3, 5)])
def test_abelian_tables_abelianize_to_themselves(orders):
    G = abelian_table(orders)
    ab = abelianization(G)
    assert ab.group == direct_sum_of_cyclics(list(orders)).group
    assert ab.commutator == [G.identity]
    assert order_census(ab.group.invariant_factors) == G.order_census()


@pytest.mark.parametrize("n,k", valid_pairs())
def test_abelianization_matches_presentation_and_quotient(n, k):
    G = build_semidirect(n, k)
    ab = abelianization(G)
    assert ab.group == abelianized_presentation_group(n, k)[0]
    elems = semidirect_elements(n, k)
    mul = semidirect_mul(n, k)
    inv = {x: next(y for y in elems if mul(x, y) == (0, 0)) for x in elems}
    N = [(g % n, g // n) for g in ab.commutator]
    assert quotient_order_census(elems, mul, inv.get, N) == order_census(
        ab.group.invariant_factors)
    # projection is a homomorphism
    for g in range(G.order):
        for h in range(G.order):
            assert ab.image[G.mul(g, h)] == ab.group.add(ab.image[g], ab.image[h])


def _cyclic_index2(G):
    return IndexTwoData(G, {"a": 0, "b": 1})


def test_transfer_on_8_5():
    G = build_semidirect(8, 5)
    tr = transfer_index2(_cyclic_index2(G))
    assert tr.target.group == FgAbelianGroup((8,))
    a = G.generators["a"]
    a2 = G.power(a, 2)
    t = tr.of_element(a2)
    assert G.labels[tr.as_element_of_G(t)] == "a^4"
    assert element_order(tr.target.group, t) == 2 and any(t)
    assert G.labels[tr.as_element_of_G(tr.of_element(a))] == "a^6"


@pytest.mark.parametrize("n,k", [p for p in valid_pairs() if p[0] >= 2])
def test_transfer_matches_transversal_definition(n, k):
    G = build_semidirect(n, k)
    data = _cyclic_index2(G)
    elems = semidirect_elements(n, k)
    mul = semidirect_mul(n, k)

    def inv(x):
        return next(y for y in elems if mul(x, y) == (0, 0))

    for r in (g for g in range(G.order) if data.chi[g]):
        tr = transfer_index2(data, r)
        expect = generic_transfer_index2(elems, mul, inv, lambda x: x[1] == 0, (r % n, r // n))
        for g in range(G.order):
            i, j = expect[(g % n, g // n)]
            assert j == 0
            assert tr.of_element(g) == tr.target.image[data.subgroup.index(i)]


def test_transfer_is_independent_of_representative():
    G = build_semidirect(8, 5)
    data = _cyclic_index2(G)
    base = transfer_index2(data).values
    for r in range(G.order):
        if data.chi[r]:
            assert transfer_index2(data, r).values == base


def test_transfer_of_klein_four_onto_first_factor_is_zero():
    G = abelian_table((2, 2))
    tr = transfer_index2(IndexTwoData(G, {"g0": 0, "g1": 1}))
    assert all(not any(v) for v in tr.values)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=2))
def test_abelian_transfer_is_doubling_on_h(orders):
    orders = [2] + orders
    G = abelian_table(orders)
    char = {name: int(name == "g0") for name in G.generators}
    data = IndexTwoData(G, char)
    tr = transfer_index2(data)
    for g in data.subgroup:
        assert tr.of_element(g) == tr.target.image[data.subgroup.index(G.mul(g, g))]


def test_character_preconditions():
    G = build_semidirect(8, 5)
    with pytest.raises(PreconditionError):
        IndexTwoData(G, {"a": 0, "b": 0})
    with pytest.raises(PreconditionError):
        IndexTwoData(G, {"a": 1})
    with pytest.raises(PreconditionError):
        transfer_index2(_cyclic_index2(G), representative=G.generators["a"])
    # a -> 1 on C3 x| C2 = C6 is not a homomorphism (a has odd order)
    with pytest.raises(PreconditionError):
        IndexTwoData(build_semidirect(3, 1), {"a": 1, "b": 1})
