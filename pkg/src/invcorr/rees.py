"""Partial McAlister functions, Rees matrix semigroups RM/IM, and the set U_p."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .adjointable import K_semigroup, enumerate_K
from .errors import InternalInconsistency, InvalidMcAlister, NotInverse, ensure
from .inverse_set import (
    PartialMoritaEquivalence,
    RightSet,
    check_partial_morita,
    is_left_full,
    is_right_full,
    map_failures,
)
from .report import AxiomReport
from .semigroup import (
    InverseSemigroup,
    MulTable,
    SemigroupHom,
    Table,
    check_associative,
    check_hom,
    freeze,
    order_matrix,
    recognize_inverse,
)
from .unionfind import UnionFind


@dataclass(frozen=True)
class PartialMcAlisterFunction:
    semigroup: InverseSemigroup
    p: Table
    is_full_MF: bool = False

    @property
    def index_size(self) -> int:
        return len(self.p)


def mcalister_report(T: InverseSemigroup, p: Sequence[Sequence[int]]) -> AxiomReport:
    """(MF1)-(MF4) violations with witnesses."""
    p = freeze(p)
    k = len(p)
    rep = AxiomReport()
    if any(len(r) != k for r in p) or any(not 0 <= x < T.order for r in p for x in r):
        rep.add("shape")
        return rep
    leq = order_matrix(T)
    for i in range(k):
        if not T.is_idempotent(p[i][i]):
            rep.add("(MF1)", i)
    for i, j in product(range(k), repeat=2):
        if T.prod(p[i][i], p[i][j], p[j][j]) != p[i][j]:
            rep.add("(MF2)", i, j)
        if T.inv[p[i][j]] != p[j][i]:
            rep.add("(MF3)", i, j)
    for i, j, l in product(range(k), repeat=3):
        if not leq[T.mul(p[i][j], p[j][l])][p[i][l]]:
            rep.add("(MF4)", i, j, l)
    return rep


def mf5_holds(T: InverseSemigroup, p: Table) -> bool:
    leq = order_matrix(T)
    return all(any(leq[e][p[i][i]] for i in range(len(p))) for e in T.idempotents)


def check_mcalister(T: InverseSemigroup, p: Sequence[Sequence[int]]) -> PartialMcAlisterFunction:
    rep = mcalister_report(T, p)
    if not rep.ok:
        raise InvalidMcAlister(rep)
    p = freeze(p)
    return PartialMcAlisterFunction(T, p, mf5_holds(T, p))


@dataclass(frozen=True)
class ReesSemigroup:
    """RM(T, I, p); element i is the admissible triple ``labels[i] = (j, t, i)``."""

    table: MulTable
    labels: tuple[tuple[int, int, int], ...]

    def index(self) -> dict[tuple[int, int, int], int]:
        return {x: i for i, x in enumerate(self.labels)}


def regular_rees(pm: PartialMcAlisterFunction) -> ReesSemigroup:
    T, p = pm.semigroup, pm.p
    k = pm.index_size
    triples = [(j, t, i) for j in range(k) for t in range(T.order) for i in range(k)
               if T.prod(p[j][j], t, p[i][i]) == t]
    idx = {x: n for n, x in enumerate(triples)}
    rows = []
    for (j2, t2, i2) in triples:
        row = []
        for (j1, t1, i1) in triples:
            prod = (j2, T.prod(t2, p[i2][j1], t1), i1)
            ensure(prod in idx, "RM product of admissible triples is not admissible", prod)
            row.append(idx[prod])
        rows.append(row)
    table = MulTable.of(rows)
    ensure(check_associative(table), "RM(T, I, p) is not associative")
    tab = table.table
    n = len(triples)
    for a in range(n):
        ensure(any(tab[tab[a][x]][a] == a for x in range(n)), "RM(T, I, p) is not regular", (a,))
    return ReesSemigroup(table, tuple(triples))


def gamma_relation(pm: PartialMcAlisterFunction, rm: ReesSemigroup) -> list[list[bool]]:
    T, p = pm.semigroup, pm.p
    trip = rm.labels
    rel = []
    for (j1, t1, i1) in trip:
        row = []
        for (j2, t2, i2) in trip:
            row.append(T.prod(p[j1][j2], t2, p[i2][i1]) == t1 and T.prod(p[j2][j1], t1, p[i1][i2]) == t2)
        rel.append(row)
    return rel


def _quotient_by_relation(rel: list[list[bool]], what: str) -> tuple[list[int], list[list[int]]]:
    """Classes of an equivalence relation given as a matrix, via union-find.

    The relation is checked to be reflexive, symmetric and transitive: each
    union-find class must be a clique of the relation.
    """
    n = len(rel)
    uf = UnionFind(n)
    for a in range(n):
        ensure(rel[a][a], f"{what} is not reflexive", (a,))
        for b in range(n):
            if rel[a][b]:
                ensure(rel[b][a], f"{what} is not symmetric", (a, b))
                uf.union(a, b)
    ids, members = uf.classes()
    for cls in members:
        for a, b in product(cls, repeat=2):
            ensure(rel[a][b], f"{what} is not transitive", (a, b))
    return ids, members


@dataclass(frozen=True)
class InverseRees:
    semigroup: InverseSemigroup          # IM(T, I, p); labels are representative triples
    rm: ReesSemigroup
    gamma: tuple[int, ...]               # RM index -> IM index

    def index_of(self, triple: tuple[int, int, int]) -> int:
        return self.gamma[self.rm.index()[triple]]


def inverse_rees(pm: PartialMcAlisterFunction) -> InverseRees:
    T = pm.semigroup
    rm = regular_rees(pm)
    rel = gamma_relation(pm, rm)
    ids, members = _quotient_by_relation(rel, "gamma")
    tab = rm.table.table
    n = len(rm.labels)
    for a, b in product(range(n), repeat=2):
        if rel[a][b]:
            for c in range(n):
                ensure(ids[tab[a][c]] == ids[tab[b][c]] and ids[tab[c][a]] == ids[tab[c][b]],
                       "gamma is not a congruence", (a, b, c))
    rows = [[ids[tab[cls[0]][other[0]]] for other in members] for cls in members]
    labels = tuple(rm.labels[cls[0]] for cls in members)
    try:
        IM = recognize_inverse(MulTable.of(rows), f"IM({T.name})", labels)
    except NotInverse as e:
        raise InternalInconsistency(f"IM(T, I, p) is not inverse: {e}") from e
    idx = rm.index()
    for c, (j, t, i) in enumerate(labels):
        ensure(IM.inv[c] == ids[idx[(i, T.inv[t], j)]], "inverse of [j,t,i] is not [i,t*,j]", (j, t, i))
    return InverseRees(IM, rm, tuple(ids))


# U_p -----------------------------------------------------------------------------------

@dataclass(frozen=True)
class ReesSet:
    pm: PartialMcAlisterFunction = field(repr=False)
    im: InverseRees = field(repr=False)
    right_set: RightSet
    morita: PartialMoritaEquivalence      # from IM(T, I, p) to T
    class_of: dict = field(compare=False, repr=False)   # (j, t) -> carrier index

    @property
    def size(self) -> int:
        return self.right_set.size


def inverse_set_from_p(pm: PartialMcAlisterFunction, im: InverseRees | None = None) -> ReesSet:
    T, p = pm.semigroup, pm.p
    k = pm.index_size
    im = im or inverse_rees(pm)
    IM = im.semigroup
    pairs = [(j, t) for j in range(k) for t in range(T.order) if T.mul(p[j][j], t) == t]
    rel = [[t1 == T.mul(p[j1][j2], t2) and t2 == T.mul(p[j2][j1], t1) for (j2, t2) in pairs]
           for (j1, t1) in pairs]
    ids, members = _quotient_by_relation(rel, "~ on U_p'")
    cls = {pairs[a]: ids[a] for a in range(len(pairs))}
    reps = [pairs[m[0]] for m in members]
    size = len(reps)

    def one(values, what):
        vals = set(values)
        ensure(len(vals) == 1, f"{what} is not well defined on U_p")
        return vals.pop()

    action = [[one((cls[(j, T.mul(t, r))] for (j, t) in (pairs[a] for a in members[c])), "action")
               for r in range(T.order)] for c in range(size)]
    pairing = [[one((T.prod(T.inv[t2], p[j2][j1], t1)
                     for (j2, t2) in (pairs[a] for a in members[c2])
                     for (j1, t1) in (pairs[b] for b in members[c1])), "pairing")
                for c1 in range(size)] for c2 in range(size)]
    left_action = []
    for c in range(size):
        row = []
        for x in range(IM.order):
            triples = [im.rm.labels[a] for a in range(len(im.gamma)) if im.gamma[a] == x]
            row.append(one((cls[(j2, T.prod(t2, p[i2][j1], t1))]
                            for (j2, t2, i2) in triples
                            for (j1, t1) in (pairs[a] for a in members[c])), "left action"))
        left_action.append(row)
    left_pairing = [[one((im.index_of((j2, T.mul(t2, T.inv[t1]), j1))
                          for (j2, t2) in (pairs[a] for a in members[c2])
                          for (j1, t1) in (pairs[b] for b in members[c1])), "left pairing")
                     for c1 in range(size)] for c2 in range(size)]
    U = RightSet(T, action, pairing, tuple(reps))
    M = PartialMoritaEquivalence(IM, T, left_action, action, left_pairing, pairing, tuple(reps))
    rep = check_partial_morita(M)
    ensure(rep.ok, "U_p fails the partial Morita axioms", tuple(rep.failed()))
    ensure(is_left_full(M.left_set()), "U_p is not left full")
    if pm.is_full_MF:
        ensure(is_right_full(U), "U_p is not right full although (MF5) holds")
    for (j, t, i) in im.rm.labels:
        ensure(left_pairing[cls[(j, t)]][cls[(i, T.mul(T.inv[t], t))]] == im.index_of((j, t, i)),
               "left fullness witness fails", (j, t, i))
    return ReesSet(pm, im, U, M, cls)


def mcalister_from_set(U: RightSet) -> PartialMcAlisterFunction:
    pm = check_mcalister(U.semigroup, U.pairing)
    ensure(pm.is_full_MF == is_right_full(U), "(MF5) differs from right fullness")
    return pm


def theta_into_K(rs: ReesSet) -> SemigroupHom:
    """IM(T, I, p) -> K(U_p) via the left action, verified to be an isomorphism."""
    K = K_semigroup(rs.right_set, check_ideal=False)
    IM = rs.im.semigroup
    m = rs.size
    f = []
    for x in range(IM.order):
        fwd = tuple(rs.morita.left_action[u][x] for u in range(m))
        i = K.get(fwd)
        ensure(i is not None, "theta([j,t,i]) is not a rank-one map", (x,))
        f.append(i)
    h = SemigroupHom(IM, K.semigroup, tuple(f))
    ensure(check_hom(h), "IM -> K(U_p) is not a homomorphism")
    ensure(h.injective and len(h.image()) == K.semigroup.order, "IM -> K(U_p) is not bijective")
    return h


def up_to_u_map(U: RightSet, rs: ReesSet) -> tuple[int, ...]:
    """[u, t] -> u.t from U_{p_U} onto U, checked well defined."""
    f = [-1] * rs.size
    for (u, t), c in rs.class_of.items():
        x = U.action[u][t]
        ensure(f[c] in (-1, x), "[u,t] -> ut is not well defined", (u, t))
        f[c] = x
    return tuple(f)


def roundtrip_checks(U: RightSet, pm: PartialMcAlisterFunction | None = None) -> AxiomReport:
    """(a) U_{p_U} = U, (b) IM(T,I,p) = K(U_p), (c) IM(T,U,p_U) = K(U)."""
    rep = AxiomReport()
    pU = mcalister_from_set(U)
    rs = inverse_set_from_p(pU)
    f = up_to_u_map(U, rs)
    mf = map_failures(rs.right_set, U, f)
    for v in mf.violations:
        rep.add("(a) " + v.axiom, *v.witness)
    if len(set(f)) != U.size or rs.size != U.size:
        rep.add("(a) bijective")
    try:
        theta_into_K(rs if pm is None else inverse_set_from_p(pm))
    except InternalInconsistency as e:
        rep.add("(b) IM = K(U_p)", str(e))
    if rep.ok:
        theta = theta_into_K(rs)
        KUp = K_semigroup(rs.right_set, check_ideal=False)
        KU = K_semigroup(U, check_ideal=False)
        inv = [0] * U.size
        for c, x in enumerate(f):
            inv[x] = c
        comp = []
        for i in theta.map:
            k = KUp.maps[i].fwd
            conj = tuple(f[k[inv[x]]] for x in range(U.size))
            j = KU.get(conj)
            if j is None:
                rep.add("(c) conjugate lies in K(U)", i)
                break
            comp.append(j)
        else:
            h = SemigroupHom(rs.im.semigroup, KU.semigroup, tuple(comp))
            if not (check_hom(h) and h.injective and len(h.image()) == KU.semigroup.order):
                rep.add("(c) IM(T,U,p_U) = K(U)")
    return rep


# gamma minimality (bounded) ------------------------------------------------------------

def congruence_closure(table: Table, pairs, n: int) -> tuple[int, ...]:
    uf = UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    changed = True
    while changed:
        changed = False
        for a in range(n):
            r = uf.find(a)
            if r == a:
                continue
            for c in range(n):
                changed |= uf.union(table[a][c], table[r][c])
                changed |= uf.union(table[c][a], table[c][r])
    return tuple(uf.classes()[0])


def all_congruences(table: Table) -> set[tuple[int, ...]]:
    n = len(table)
    principal = {congruence_closure(table, [(a, b)], n) for a in range(n) for b in range(a + 1, n)}
    found = {tuple(range(n))} | principal
    frontier = list(principal)
    while frontier:
        nxt = []
        for C in frontier:
            for P in principal:
                pairs = [(a, b) for a in range(n) for b in range(n) if C[a] == C[b] or P[a] == P[b]]
                J = congruence_closure(table, pairs, n)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return found


def gamma_is_minimum(pm: PartialMcAlisterFunction, max_order: int = 12) -> bool | None:
    """gamma lies below every congruence with inverse quotient; None if RM is too large."""
    rm = regular_rees(pm)
    n = len(rm.labels)
    if n > max_order:
        return None
    inv = inverse_rees(pm)
    gamma = inv.gamma
    tab = rm.table.table
    for C in all_congruences(tab):
        k = max(C) + 1
        reps = [C.index(c) for c in range(k)]
        rows = [[C[tab[reps[a]][reps[b]]] for b in range(k)] for a in range(k)]
        try:
            recognize_inverse(MulTable.of(rows))
        except NotInverse:
            continue
        if any(gamma[a] == gamma[b] and C[a] != C[b] for a in range(n) for b in range(n)):
            return False
    return True
