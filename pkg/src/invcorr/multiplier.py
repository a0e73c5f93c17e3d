"""Multiplier semigroups, homomorphism extension along ideals, idealizers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .adjointable import K_semigroup, L_semigroup, MapSemigroup, morita_from_set
from .correspondence import InverseCorrespondence, is_non_degenerate
from .errors import NotIdeal, NotNonDegenerate, NotSubsemigroup, InternalInconsistency, ensure
from .inverse_set import RightSet, semigroup_as_right_set
from .semigroup import (
    InverseSemigroup,
    SemigroupHom,
    check_hom,
    find_homomorphisms,
    find_isomorphism,
    is_essential_ideal,
    is_ideal,
)


@dataclass(frozen=True)
class MultiplierSemigroup:
    base: InverseSemigroup
    carrier: MapSemigroup          # L(S) acting on S-as-set
    embedding: tuple[int, ...]     # s -> index of lambda_s

    @property
    def semigroup(self) -> InverseSemigroup:
        return self.carrier.semigroup


def multiplier(S: InverseSemigroup, budget: int | None = None) -> MultiplierSemigroup:
    """M(S) realized as L(S-as-set), with s -> lambda_s verified."""
    L = L_semigroup(semigroup_as_right_set(S), budget)
    emb = tuple(L.index_of(S.table[s]) for s in range(S.order))
    lam = SemigroupHom(S, L.semigroup, emb)
    ensure(check_hom(lam) and lam.injective, "lambda is not an injective homomorphism")
    ensure(is_ideal(L.semigroup, emb), "lambda(S) is not a two-sided ideal of L(S)")
    ensure(is_essential_ideal(L.semigroup, emb), "lambda(S) is not essential in L(S)")
    ensure(L.semigroup.identity is not None, "M(S) has no identity")
    return MultiplierSemigroup(S, L, emb)


def _ideal_preimage(S_tilde: InverseSemigroup, inclusion: Sequence[int]) -> dict[int, int]:
    back = {x: s for s, x in enumerate(inclusion)}
    if len(back) != len(inclusion):
        raise NotIdeal("the inclusion is not injective")
    if not is_ideal(S_tilde, back):
        raise NotIdeal("the image of S is not a two-sided ideal")
    return back


def extend_hom(c: InverseCorrespondence, S_tilde: InverseSemigroup, inclusion: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """theta~(s0)(theta(s) u) := theta(s0 s)(u); returns one carrier map per element of S~."""
    if not is_non_degenerate(c):
        raise NotNonDegenerate("theta must be non-degenerate")
    S = c.left_semigroup
    if not check_hom(SemigroupHom(S, S_tilde, tuple(inclusion))):
        raise NotIdeal("the inclusion is not a homomorphism")
    back = _ideal_preimage(S_tilde, inclusion)
    m = c.size
    LA = c.left_action
    out = []
    for s0 in range(S_tilde.order):
        f = [-1] * m
        for s, u in product(range(S.order), range(m)):
            x = LA[u][s]
            val = LA[u][back[S_tilde.mul(s0, inclusion[s])]]
            if f[x] == -1:
                f[x] = val
            elif f[x] != val:
                raise InternalInconsistency("extension is not well defined", (s0, s, u))
        out.append(tuple(f))
    for s in range(S.order):
        ensure(out[inclusion[s]] == c.theta(s), "extension does not restrict to theta", (s,))
    for a, b in product(range(S_tilde.order), repeat=2):
        comp = tuple(out[a][x] for x in out[b])
        ensure(comp == out[S_tilde.mul(a, b)], "extension is not multiplicative", (a, b))
    return tuple(out)


def all_extensions(c: InverseCorrespondence, S_tilde: InverseSemigroup, inclusion: Sequence[int],
                   budget: int | None = None) -> list[tuple[tuple[int, ...], ...]]:
    """Every homomorphism S~ -> L(U) restricting to theta, by exhaustive search."""
    L = L_semigroup(c.right_set, budget)
    fixed = {}
    for s in range(c.left_semigroup.order):
        i = L.get(c.theta(s))
        if i is None:
            return []
        fixed[inclusion[s]] = i
    return [tuple(L.maps[i].fwd for i in h.map) for h in find_homomorphisms(S_tilde, L.semigroup, fixed=fixed)]


def idealizer(L: InverseSemigroup, members) -> list[int]:
    """Largest subsemigroup of L in which ``members`` is a two-sided ideal."""
    mem = set(members)
    for a, b in product(mem, repeat=2):
        if L.mul(a, b) not in mem:
            raise NotSubsemigroup("members are not closed under multiplication", (a, b))
    return [x for x in range(L.order) if all(L.mul(x, m) in mem and L.mul(m, x) in mem for m in mem)]


@dataclass(frozen=True)
class KasparovWitness:
    multiplier: MultiplierSemigroup   # M(K(U))
    L: MapSemigroup                   # L(U)
    iso: SemigroupHom                 # M(K(U)) -> L(U)


def verify_kasparov(U: RightSet, budget: int | None = None) -> KasparovWitness:
    """M(K(U)) is isomorphic to L(U) via the extension of K(U) -> L(U)."""
    L = L_semigroup(U, budget)
    M = morita_from_set(U)
    K = K_semigroup(U, check_ideal=False)
    MK = multiplier(K.semigroup, budget)
    c = InverseCorrespondence(K.semigroup, U, M.left_action, U.labels)
    ext = extend_hom(c, MK.semigroup, MK.embedding)
    iso = SemigroupHom(MK.semigroup, L.semigroup, tuple(L.index_of(f) for f in ext))
    ensure(check_hom(iso), "extension M(K(U)) -> L(U) is not a homomorphism")
    ensure(iso.injective and len(iso.image()) == L.semigroup.order, "M(K(U)) -> L(U) is not bijective")
    k_in_l = [L.index_of(k.fwd) for k in K.maps]
    ensure(sorted(idealizer(L.semigroup, k_in_l)) == list(range(L.semigroup.order)),
           "idealizer of K(U) in L(U) is not all of L(U)")
    ensure(find_isomorphism(MK.semigroup, L.semigroup) is not None, "isomorphism search disagrees")
    return KasparovWitness(MK, L, iso)


def double_centralizers(S: InverseSemigroup) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Brute force pairs (l, r) of maps S -> S with s1 l(s2) = r(s1) s2 (tiny S only)."""
    n = S.order
    maps = list(product(range(n), repeat=n))
    out = []
    for l in maps:
        for r in maps:
            if all(S.mul(s1, l[s2]) == S.mul(r[s1], s2) for s1 in range(n) for s2 in range(n)):
                out.append((l, r))
    return out
