from itertools import product

import pytest
from hypothesis import given

from invcorr import fixtures as fx
from invcorr.adjointable import K_semigroup
from invcorr.errors import InvalidMcAlister, NotInverse
from invcorr.inverse_set import find_set_isomorphism, is_right_full, semigroup_as_right_set
from invcorr.rees import (
    all_congruences,
    check_mcalister,
    congruence_closure,
    gamma_is_minimum,
    gamma_relation,
    inverse_rees,
    inverse_set_from_p,
    mcalister_from_set,
    mcalister_report,
    regular_rees,
    roundtrip_checks,
    theta_into_K,
)
from invcorr.semigroup import find_isomorphism, recognize_inverse
from strategies import inverse_sets

F = fx.semigroups()
PM = fx.mcalister_functions()


class TestMcAlister:
    def test_semilattice_unit(self):
        pm = check_mcalister(F["E2"], [[1]])
        assert pm.is_full_MF

    def test_zero_is_partial(self):
        assert not check_mcalister(F["E2"], [[0]]).is_full_MF

    def test_not_symmetric(self):
        rep = mcalister_report(F["Z2"], [[0, 1], [0, 0]])
        assert rep.first("(MF3)").witness == (0, 1)
        with pytest.raises(InvalidMcAlister):
            check_mcalister(F["Z2"], [[0, 1], [0, 0]])

    def test_diagonal_not_idempotent(self):
        assert mcalister_report(F["Z2"], [[1]]).first("(MF1)").witness == (0,)

    def test_shape(self):
        assert "shape" in mcalister_report(F["E2"], [[1, 1]]).failed()

    @given(inverse_sets)
    def test_pairing_of_inverse_set(self, U):
        pm = mcalister_from_set(U)
        assert pm.is_full_MF == is_right_full(U)

    def test_semigroup_set_pairing(self):
        S = F["I2"]
        pm = mcalister_from_set(semigroup_as_right_set(S))
        assert all(pm.p[s][t] == S.mul(S.inv[s], t) for s, t in product(range(S.order), repeat=2))


class TestRegularRees:
    def test_semilattice_unit(self):
        assert len(regular_rees(PM["E2-unit"]).labels) == 2

    def test_trivial_group_pair(self):
        rm = regular_rees(PM["T1-pair"])
        assert len(rm.labels) == 4
        # a rectangular band: every element is an inverse of every other
        with pytest.raises(NotInverse) as e:
            recognize_inverse(rm.table)
        assert e.value.reason == "NOT_UNIQUE"

    @pytest.mark.parametrize("name", sorted(PM))
    def test_triples_admissible(self, name):
        pm = PM[name]
        T, p = pm.semigroup, pm.p
        for j, t, i in regular_rees(pm).labels:
            assert T.prod(p[j][j], t, p[i][i]) == t


class TestInverseRees:
    def test_collapse(self):
        assert inverse_rees(PM["T1-pair"]).semigroup.order == 1

    def test_semilattice_unit(self):
        im = inverse_rees(PM["E2-unit"])
        assert im.semigroup.order == 2 and find_isomorphism(im.semigroup, F["E2"]) is not None

    @pytest.mark.parametrize("name", ["E2", "Z2", "E3", "B2"])
    def test_recovers_semigroup(self, name):
        assert find_isomorphism(inverse_rees(PM[f"{name}-pU"]).semigroup, F[name]) is not None

    @pytest.mark.parametrize("name", sorted(PM))
    def test_gamma_is_equivalence(self, name):
        pm = PM[name]
        rel = gamma_relation(pm, regular_rees(pm))
        n = len(rel)
        for a, b, c in product(range(n), repeat=3):
            assert rel[a][a] and rel[a][b] == rel[b][a]
            if rel[a][b] and rel[b][c]:
                assert rel[a][c]

    @pytest.mark.parametrize("name", sorted(PM))
    def test_gamma_is_minimum(self, name):
        assert gamma_is_minimum(PM[name]) in (True, None)

    def test_gamma_minimum_checked_somewhere(self):
        assert sum(gamma_is_minimum(pm) is True for pm in PM.values()) >= 3

    def test_too_large(self):
        assert gamma_is_minimum(PM["B2-pU"], max_order=1) is None


class TestUp:
    def test_semilattice_unit(self):
        rs = inverse_set_from_p(PM["E2-unit"])
        assert rs.size == 2
        assert find_set_isomorphism(rs.right_set, semigroup_as_right_set(F["E2"])) is not None

    @pytest.mark.parametrize("name", sorted(PM))
    def test_im_is_K(self, name):
        rs = inverse_set_from_p(PM[name])
        h = theta_into_K(rs)
        assert h.injective and rs.im.semigroup.order == K_semigroup(rs.right_set).semigroup.order

    def test_full_only_with_mf5(self):
        assert is_right_full(inverse_set_from_p(PM["E2-unit"]).right_set)
        assert not is_right_full(inverse_set_from_p(PM["E2-zero"]).right_set)


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(fx.sets()))
    def test_fixtures(self, name):
        rep = roundtrip_checks(fx.sets()[name])
        assert rep.ok, rep.failed()

    def test_empty(self):
        assert roundtrip_checks(fx.empty_set(F["E2"])).ok

    @given(inverse_sets)
    def test_random(self, U):
        assert roundtrip_checks(U).ok

    @pytest.mark.parametrize("name", ["B2-enlarge", "E3-self", "I(2,2)"])
    def test_morita_pair_recovers_left(self, name):
        # S comes back as IM(T, U, p_U) for a Morita biset from S to T
        M = fx.morita_fixtures()[name]
        im = inverse_rees(mcalister_from_set(M.right_set()))
        assert find_isomorphism(im.semigroup, M.left_semigroup) is not None


class TestCongruences:
    def test_closure_of_nothing(self):
        E2 = F["E2"]
        assert congruence_closure(E2.table, [], 2) == (0, 1)

    def test_group_congruences(self):
        # Z3 is simple: only equality and the full relation
        assert len(all_congruences(F["Z3"].table)) == 2

    def test_chain(self):
        # 0 < 1 < 2: gluing 0 and 2 forces 1 in too, the other three partitions survive
        assert len(all_congruences(F["E3"].table)) == 4

    @pytest.mark.parametrize("name", ["E2", "Z2", "E3", "I1", "B2"])
    def test_against_brute_force(self, name):
        S = F[name]
        n = S.order
        parts = set()
        for lab in product(range(n), repeat=n):
            if any(lab[S.mul(a, c)] != lab[S.mul(b, c)] or lab[S.mul(c, a)] != lab[S.mul(c, b)]
                   for a in range(n) for b in range(n) if lab[a] == lab[b] for c in range(n)):
                continue
            first = {}
            parts.add(tuple(first.setdefault(x, len(first)) for x in lab))
        assert all_congruences(S.table) == parts
