from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from invcorr import fixtures as fx
from invcorr.errors import MalformedTable, NoZero, NotRegular, PreconditionFailed, PresheafConditionFailed, SizeLimit
from invcorr.generate import inflate
from invcorr.inverse_set import (
    LeftSet,
    RightSet,
    SetMap,
    check_left_inverse,
    check_left_regular,
    check_map,
    check_partial_morita,
    check_right_inverse,
    check_right_regular,
    direct_sum,
    enlargement_set,
    find_set_isomorphism,
    inverse_conditions,
    is_left_full,
    is_morita,
    is_right_full,
    is_right_inverse,
    partial_bijection_biset,
    presheaf_set,
    right_ideal_set,
    semigroup_as_left_set,
    semigroup_as_right_set,
    set_order,
    zero_set,
)
from invcorr.semigroup import natural_order
from strategies import inverse_semigroups, inverse_sets, regular_sets

F = fx.semigroups()


def shuffled(U, perm):
    """U with point u renamed perm[u]."""
    m = U.size
    act = [None] * m
    pair = [[0] * m for _ in range(m)]
    for u in range(m):
        act[perm[u]] = [perm[x] for x in U.action[u]]
        for v in range(m):
            pair[perm[u]][perm[v]] = U.pairing[u][v]
    return RightSet(U.semigroup, act, pair)


class TestRegular:
    @pytest.mark.parametrize("name", sorted(F))
    def test_semigroup_as_set(self, name):
        U = semigroup_as_right_set(F[name])
        assert check_right_regular(U).ok and check_right_inverse(U).ok

    def test_product_pairing_on_semilattice(self):
        E2 = F["E2"]
        U = RightSet(E2, E2.table, E2.table)
        assert check_right_regular(U).ok

    def test_product_pairing_on_two_element_group(self):
        # in Z2 every element is its own inverse, so s.s' is the canonical pairing s*.s'
        Z2 = F["Z2"]
        U = RightSet(Z2, Z2.table, Z2.table)
        assert U == semigroup_as_right_set(Z2)
        assert check_right_regular(U).ok

    def test_product_pairing_on_three_element_group(self):
        Z3 = F["Z3"]
        U = RightSet(Z3, Z3.table, Z3.table)
        rep = check_right_regular(U)
        # <1|1> = 2 and 1.2 = 0, not 1
        assert rep.first("(R-iii)").witness == (1,)
        assert rep.first("(R-ii)") is not None

    def test_empty_carrier(self):
        assert check_right_regular(fx.empty_set(F["E2"])).ok
        assert check_right_inverse(fx.empty_set(F["E2"])).ok

    def test_malformed(self):
        with pytest.raises(MalformedTable):
            RightSet(F["E2"], [[0, 2]], [[0]])

    def test_action_law_violation(self):
        # a sends both points to 1, so (0.a).a = 1 but 0.(aa) = 0.e = 0
        U = RightSet(F["Z2"], [[0, 1], [1, 1]], [[0, 0], [0, 0]])
        assert check_right_regular(U).first("action law").witness == (0, 1, 1)


class TestInverse:
    def test_direct_sum_of_brandt_rows(self):
        U = direct_sum(fx.sets()["B2-row"], fx.sets()["B2-row"])
        assert check_right_regular(U).ok and check_right_inverse(U).ok

    def test_trivial_group_two_points(self):
        T1 = F["T1"]
        U = RightSet(T1, [[0], [1]], [[0, 0], [0, 0]])
        assert check_right_regular(U).ok
        rep = check_right_inverse(U)
        assert not rep.ok and rep.first("(R-iv)").witness in ((0, 1), (1, 0))

    def test_requires_regular(self):
        Z3 = F["Z3"]
        with pytest.raises(NotRegular):
            check_right_inverse(RightSet(Z3, Z3.table, Z3.table))

    @given(regular_sets(max_size=8))
    def test_four_forms_agree(self, U):
        assert len({not c for c in inverse_conditions(U)}) == 1

    @given(regular_sets())
    def test_pairing_values_on_diagonal_are_idempotent(self, U):
        T = U.semigroup
        assert all(T.is_idempotent(U.pairing[u][u]) for u in range(U.size))

    @given(inverse_sets)
    def test_pairing_rows_separate_points(self, U):
        assert len(set(U.pairing)) == U.size
        for u, v in product(range(U.size), repeat=2):
            if u != v:
                assert not (U.pairing[u][u] == U.pairing[u][v] == U.pairing[v][v])

    @given(inverse_semigroups())
    def test_random_semigroup_as_set(self, S):
        assert is_right_inverse(semigroup_as_right_set(S))
        L = semigroup_as_left_set(S)
        assert check_left_regular(L).ok and check_left_inverse(L).ok


class TestFull:
    def test_semigroup_as_set(self):
        for S in F.values():
            assert is_right_full(semigroup_as_right_set(S)) == (S.order > 0)

    def test_zero_point(self):
        assert not is_right_full(zero_set(F["E2"]))

    def test_empty(self):
        assert not is_right_full(fx.empty_set(F["E2"]))


class TestMaps:
    def test_identity(self):
        U = fx.sets()["B2-row-sum"]
        sigma = SetMap(U, U, tuple(range(U.size)))
        assert check_map(sigma).ok
        assert find_set_isomorphism(U, U) is not None

    def test_kinds(self):
        E2 = F["E2"]
        U = semigroup_as_right_set(E2)
        const = SetMap(U, U, (0, 0), "right_T_map")
        assert check_map(const).ok  # 0.t = 0
        assert not check_map(SetMap(U, U, (0, 0), "pairing_preserving")).ok

    def test_group_sets_all_isomorphic(self):
        Z3 = F["Z3"]
        G = semigroup_as_left_set(Z3)
        # the regular action with the basepoint moved to 1
        act = [[(u + s) % 3 for s in range(3)] for u in range(3)]
        pair = [[(u - v) % 3 for v in range(3)] for u in range(3)]
        U = LeftSet(Z3, act, pair, labels=(2, 0, 1))
        assert check_left_regular(U).ok
        assert find_set_isomorphism(U, G) is not None

    def test_brandt_sum_not_isomorphic(self):
        U = fx.sets()["B2-row"]
        assert find_set_isomorphism(U, direct_sum(U, U)) is None

    @given(inverse_sets, st.randoms(use_true_random=False))
    def test_finds_relabelling(self, U, rnd):
        perm = list(range(U.size))
        rnd.shuffle(perm)
        V = shuffled(U, perm)
        sigma = find_set_isomorphism(U, V)
        assert sigma is not None and check_map(sigma).ok and sorted(sigma.map) == list(range(U.size))


class TestSemigroupAsSet:
    def test_semilattice_pairing_is_min(self):
        U = semigroup_as_right_set(F["E2"])
        assert U.pairing == ((0, 0), (0, 1))

    def test_group_pairing(self):
        Z3 = F["Z3"]
        U = semigroup_as_right_set(Z3)
        assert all(U.pairing[s][t] == (t - s) % 3 for s in range(3) for t in range(3))

    def test_I2(self):
        U = semigroup_as_right_set(F["I2"])
        assert U.size == 7 and is_right_full(U)


class TestEnlargement:
    @pytest.mark.parametrize("name", ["T1", "E2", "Z2", "E3", "I2", "B2"])
    def test_whole_semigroup_is_morita(self, name):
        S = F[name]
        M = enlargement_set(S, range(S.order))
        assert check_partial_morita(M).ok and is_morita(M)

    def test_identity_and_empty_map_rejected(self):
        # {empty, id} in I2: id.s.id = s leaves the subset
        I2 = F["I2"]
        with pytest.raises(PreconditionFailed):
            enlargement_set(I2, [0, I2.identity])

    def test_corner_of_I2(self):
        I2 = F["I2"]
        e = I2.labels.index((0, -1))
        corner = [x for x in range(I2.order) if I2.prod(e, x, e) == x]
        M = enlargement_set(I2, corner)
        assert check_partial_morita(M).ok and is_left_full(M.left_set())
        # I2 e I2 = I2 minus the invertible elements, so this is not Morita
        assert not is_morita(M)

    def test_zero_of_semilattice(self):
        M = enlargement_set(F["E2"], [0])
        assert M.size == 1
        assert is_left_full(M.left_set()) and not is_right_full(M.right_set())


class TestDirectSum:
    def test_size(self):
        U = fx.sets()["B2-row"]
        assert direct_sum(U, U).size == 2 * U.size - 1

    def test_zero_summand(self):
        U = fx.sets()["B2-row"]
        V = direct_sum(U, zero_set(F["B2"]))
        assert find_set_isomorphism(U, V) is not None

    def test_cross_pairings_are_zero(self):
        U = fx.sets()["B2-row"]
        W = direct_sum(U, U)
        for u, v in product(range(U.size), range(U.size, W.size)):
            assert W.pairing[u][v] == W.pairing[v][u] == 0

    def test_needs_zero(self):
        U = semigroup_as_right_set(F["Z2"])
        with pytest.raises(NoZero):
            direct_sum(U, U)


class TestPresheaf:
    def test_two_point(self):
        U = presheaf_set(F["E2"], [1, 1], {(0, 1): [0]})
        assert U.size == 2 and check_left_regular(U).ok and check_left_inverse(U).ok
        # the point over 1 paired with the point over 0 agrees from 0 on
        assert U.pairing[1][0] == 0 and U.pairing[1][1] == 1

    def test_empty_parts(self):
        U = presheaf_set(F["E2"], [0, 0], {(0, 1): []})
        assert U.size == 0

    def test_not_functorial(self):
        with pytest.raises(PresheafConditionFailed) as e:
            presheaf_set(F["E3"], [2, 2, 1], {(0, 1): [0, 1], (1, 2): [0], (0, 2): [1]})
        assert e.value.code == "CONDITION_II_FAILS"

    def test_missing_restriction(self):
        with pytest.raises(PreconditionFailed):
            presheaf_set(F["E2"], [1, 1], {})

    def test_not_identity(self):
        with pytest.raises(PresheafConditionFailed):
            presheaf_set(F["E2"], [2, 1], {(0, 0): [1, 0], (0, 1): [0]})


class TestPartialBijections:
    def test_sizes(self):
        assert partial_bijection_biset(1, 1).size == 2
        assert partial_bijection_biset(1, 2).size == 3
        assert partial_bijection_biset(2, 2).size == 7

    def test_compatibility(self):
        for nx, ny in product(range(3), repeat=2):
            assert check_partial_morita(partial_bijection_biset(nx, ny)).ok

    def test_limit(self):
        with pytest.raises(SizeLimit):
            partial_bijection_biset(4, 1)


class TestOrder:
    def test_matches_semigroup_order(self):
        for S in F.values():
            U = semigroup_as_right_set(S)
            for s, t in product(range(S.order), repeat=2):
                assert set_order(U, s, t) == natural_order(S, s, t)

    @given(inverse_sets)
    def test_partial_order_and_monotone(self, U):
        m = U.size
        leq = [[set_order(U, u, v) for v in range(m)] for u in range(m)]
        for u in range(m):
            assert leq[u][u]
        for u, v in product(range(m), repeat=2):
            if u != v:
                assert not (leq[u][v] and leq[v][u])
            if leq[u][v]:
                for t in range(U.semigroup.order):
                    assert leq[U.action[u][t]][U.action[v][t]]


def test_inflated_copies_are_regular_but_not_inverse():
    U = semigroup_as_right_set(F["E2"])
    W = inflate(U, 2)
    assert check_right_regular(W).ok and not check_right_inverse(W).ok


@given(regular_sets())
def test_right_ideals_of_fixtures_are_inverse(U):
    T = U.semigroup
    for t in range(T.order):
        assert is_right_inverse(right_ideal_set(T, [t]))
