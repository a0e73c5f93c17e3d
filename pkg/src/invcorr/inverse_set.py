"""Right and left inverse sets, partial Morita equivalences, and their constructions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .errors import (
    InternalInconsistency,
    MalformedTable,
    NoZero,
    NotRegular,
    PreconditionFailed,
    PresheafConditionFailed,
    SizeLimit,
    ensure,
)
from .report import AxiomReport
from .semigroup import (
    InverseSemigroup,
    Table,
    compose_partial,
    freeze,
    invert_partial,
    natural_order,
    partial_injections,
    subsemigroup,
    symmetric_inverse_monoid,
)


def _check_shape(name: str, table: Table, rows: int, cols: int, bound: int) -> None:
    if len(table) != rows:
        raise MalformedTable(f"{name}: expected {rows} rows, got {len(table)}")
    for i, row in enumerate(table):
        if len(row) != cols:
            raise MalformedTable(f"{name}: row {i} has length {len(row)}, expected {cols}", (i,))
        for j, x in enumerate(row):
            if not 0 <= x < bound:
                raise MalformedTable(f"{name}: entry [{i}][{j}] = {x} out of range", (i, j))


@dataclass(frozen=True)
class RightSet:
    """Carrier 0..m-1 with ``action[u][t] = u.t`` and ``pairing[u][v] = <u|v>``.

    Whether it is regular or inverse is a checked property, not part of the type.
    """

    semigroup: InverseSemigroup
    action: Table
    pairing: Table
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "action", freeze(self.action))
        object.__setattr__(self, "pairing", freeze(self.pairing))
        m = len(self.action)
        _check_shape("action", self.action, m, self.semigroup.order, m)
        _check_shape("pairing", self.pairing, m, m, self.semigroup.order)

    @property
    def size(self) -> int:
        return len(self.action)

    def __len__(self) -> int:
        return len(self.action)

    def act(self, u: int, t: int) -> int:
        return self.action[u][t]

    def pair(self, u: int, v: int) -> int:
        return self.pairing[u][v]

    def omega(self, v: int, u: int) -> tuple[int, ...]:
        """Table of the rank-one map x -> v.<u|x> on this set."""
        pu = self.pairing[u]
        av = self.action[v]
        return tuple(av[pu[x]] for x in range(self.size))

    def orbit(self, u: int) -> frozenset[int]:
        return frozenset(self.action[u])

    def label(self, u: int):
        return self.labels[u] if self.labels is not None else u


@dataclass(frozen=True)
class LeftSet:
    """Carrier 0..m-1 with ``action[u][s] = s.u`` and ``pairing[u][v] = <u|v>``."""

    semigroup: InverseSemigroup
    action: Table
    pairing: Table
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "action", freeze(self.action))
        object.__setattr__(self, "pairing", freeze(self.pairing))
        m = len(self.action)
        _check_shape("action", self.action, m, self.semigroup.order, m)
        _check_shape("pairing", self.pairing, m, m, self.semigroup.order)

    @property
    def size(self) -> int:
        return len(self.action)

    def __len__(self) -> int:
        return len(self.action)

    def act(self, s: int, u: int) -> int:
        return self.action[u][s]

    def pair(self, u: int, v: int) -> int:
        return self.pairing[u][v]

    def mirror(self) -> RightSet:
        """The right set with u.s := s*.u and the same pairing.

        Left and right axioms correspond one to one under this translation.
        """
        S = self.semigroup
        act = [[self.action[u][S.inv[s]] for s in range(S.order)] for u in range(self.size)]
        return RightSet(S, act, self.pairing, self.labels)


@dataclass(frozen=True)
class PartialMoritaEquivalence:
    """An S-T biset with a left S-valued and a right T-valued pairing.

    ``left_action[u][s] = s.u`` and ``right_action[u][t] = u.t``.
    """

    left_semigroup: InverseSemigroup
    right_semigroup: InverseSemigroup
    left_action: Table
    right_action: Table
    left_pairing: Table
    right_pairing: Table
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for name in ("left_action", "right_action", "left_pairing", "right_pairing"):
            object.__setattr__(self, name, freeze(getattr(self, name)))
        m = len(self.right_action)
        S, T = self.left_semigroup, self.right_semigroup
        _check_shape("left_action", self.left_action, m, S.order, m)
        _check_shape("right_action", self.right_action, m, T.order, m)
        _check_shape("left_pairing", self.left_pairing, m, m, S.order)
        _check_shape("right_pairing", self.right_pairing, m, m, T.order)

    @property
    def size(self) -> int:
        return len(self.right_action)

    def right_set(self) -> RightSet:
        return RightSet(self.right_semigroup, self.right_action, self.right_pairing, self.labels)

    def left_set(self) -> LeftSet:
        return LeftSet(self.left_semigroup, self.left_action, self.left_pairing, self.labels)

    def correspondence(self):
        from .correspondence import InverseCorrespondence

        return InverseCorrespondence(self.left_semigroup, self.right_set(), self.left_action, self.labels)


# axiom checkers ---------------------------------------------------------------

def check_right_regular(U: RightSet) -> AxiomReport:
    T = U.semigroup
    rep = AxiomReport()
    m, n = U.size, T.order
    A, P = U.action, U.pairing
    for u, t, t2 in product(range(m), range(n), range(n)):
        if A[A[u][t]][t2] != A[u][T.mul(t, t2)]:
            rep.add("action law", u, t, t2)
    for u, v, t in product(range(m), range(m), range(n)):
        if P[u][A[v][t]] != T.mul(P[u][v], t):
            rep.add("(R-i)", u, v, t)
    for u, v in product(range(m), repeat=2):
        if T.inv[P[u][v]] != P[v][u]:
            rep.add("(R-ii)", u, v)
    for u in range(m):
        if A[u][P[u][u]] != u:
            rep.add("(R-iii)", u)
    return rep


def check_left_regular(U: LeftSet) -> AxiomReport:
    S = U.semigroup
    rep = AxiomReport()
    m, n = U.size, S.order
    A, P = U.action, U.pairing
    for u, s, s2 in product(range(m), range(n), range(n)):
        if A[A[u][s2]][s] != A[u][S.mul(s, s2)]:
            rep.add("action law", u, s, s2)
    for u, v, s in product(range(m), range(m), range(n)):
        if P[A[u][s]][v] != S.mul(s, P[u][v]):
            rep.add("(L-i)", u, v, s)
    for u, v in product(range(m), repeat=2):
        if S.inv[P[u][v]] != P[v][u]:
            rep.add("(L-ii)", u, v)
    for u in range(m):
        if A[u][P[u][u]] != u:
            rep.add("(L-iii)", u)
    return rep


def inverse_conditions(U: RightSet) -> tuple[list, list, list, list]:
    """Witness lists for the four equivalent forms of (R-iv); empty list = holds."""
    T = U.semigroup
    m = U.size
    A, P = U.action, U.pairing
    c1, c2, c3, c4 = [], [], [], []
    omegas = [U.omega(u, u) for u in range(m)]
    for u, v in product(range(m), repeat=2):
        if A[u][P[v][u]] == u and A[v][P[u][v]] == v and u != v:
            c1.append((u, v))
        if P[u][u] == P[v][v] == P[u][v] and u != v:
            c2.append((u, v))
        if A[u][P[u][v]] != A[v][T.mul(P[v][u], P[u][v])]:
            c3.append((u, v))
        wu, wv = omegas[u], omegas[v]
        if any(wu[wv[x]] != wv[wu[x]] for x in range(m)):
            c4.append((u, v))
    return c1, c2, c3, c4


def _inverse_report(U: RightSet, axiom: str) -> AxiomReport:
    if not check_right_regular(U).ok:
        raise NotRegular("the pairing is not regular")
    c1, c2, c3, c4 = inverse_conditions(U)
    verdicts = (not c1, not c2, not c3, not c4)
    if len(set(verdicts)) != 1:
        raise InternalInconsistency(f"equivalent forms of {axiom} disagree: {verdicts}")
    rep = AxiomReport()
    for w in c1:
        rep.add(axiom, *w)
    return rep


def check_right_inverse(U: RightSet) -> AxiomReport:
    """Raises NotRegular unless U is right regular; reports (R-iv) failures."""
    return _inverse_report(U, "(R-iv)")


def check_left_inverse(U: LeftSet) -> AxiomReport:
    if not check_left_regular(U).ok:
        raise NotRegular("the pairing is not regular")
    return _inverse_report(U.mirror(), "(L-iv)")


def is_right_inverse(U: RightSet) -> bool:
    return check_right_regular(U).ok and check_right_inverse(U).ok


def is_left_inverse(U: LeftSet) -> bool:
    return check_left_regular(U).ok and check_left_inverse(U).ok


def is_right_full(U: RightSet) -> bool:
    values = {x for row in U.pairing for x in row}
    return len(values) == U.semigroup.order


def is_left_full(U: LeftSet) -> bool:
    values = {x for row in U.pairing for x in row}
    return len(values) == U.semigroup.order


def pairing_image(table: Table) -> frozenset[int]:
    return frozenset(x for row in table for x in row)


def check_partial_morita(M: PartialMoritaEquivalence) -> AxiomReport:
    """Biset law, both regular pairings, compatibility; inverse axioms then asserted."""
    S, T = M.left_semigroup, M.right_semigroup
    rep = AxiomReport()
    L, R = M.left_set(), M.right_set()
    left = check_left_regular(L)
    right = check_right_regular(R)
    for v in left.violations:
        rep.add("left " + v.axiom, *v.witness)
    for v in right.violations:
        rep.add("right " + v.axiom, *v.witness)
    m = M.size
    LA, RA, LP, RP = M.left_action, M.right_action, M.left_pairing, M.right_pairing
    for u, s, t in product(range(m), range(S.order), range(T.order)):
        if LA[RA[u][t]][s] != RA[LA[u][s]][t]:
            rep.add("biset law", s, u, t)
    for u, v, w in product(range(m), repeat=3):
        if LA[w][LP[u][v]] != RA[u][RP[v][w]]:
            rep.add("compatibility", u, v, w)
    if rep.ok:
        # Regular compatible pairings are automatically inverse.
        for v in check_left_inverse(L).violations + check_right_inverse(R).violations:
            raise InternalInconsistency(f"partial Morita data violates {v.axiom}", v.witness)
    return rep


def is_morita(M: PartialMoritaEquivalence) -> bool:
    return is_left_full(M.left_set()) and is_right_full(M.right_set())


# maps and isomorphism -----------------------------------------------------------

@dataclass(frozen=True)
class SetMap:
    source: RightSet
    target: RightSet
    map: tuple[int, ...]
    kind: str = "both"  # right_T_map | pairing_preserving | both

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if self.kind not in ("right_T_map", "pairing_preserving", "both"):
            raise ValueError(f"unknown map kind {self.kind}")
        if len(self.map) != self.source.size or any(not 0 <= x < self.target.size for x in self.map):
            raise MalformedTable("map has wrong shape")


def map_failures(source: RightSet, target: RightSet, f: Sequence[int]) -> AxiomReport:
    rep = AxiomReport()
    T = source.semigroup
    for u, t in product(range(source.size), range(T.order)):
        if f[source.action[u][t]] != target.action[f[u]][t]:
            rep.add("right T-map", u, t)
    for u, v in product(range(source.size), repeat=2):
        if target.pairing[f[u]][f[v]] != source.pairing[u][v]:
            rep.add("pairing preserving", u, v)
    return rep


def check_map(sigma: SetMap) -> AxiomReport:
    if not sigma.source.semigroup.same_table(sigma.target.semigroup):
        raise PreconditionFailed("source and target are over different semigroups")
    full = map_failures(sigma.source, sigma.target, sigma.map)
    keep = {"right_T_map": {"right T-map"}, "pairing_preserving": {"pairing preserving"},
            "both": {"right T-map", "pairing preserving"}}[sigma.kind]
    return AxiomReport([v for v in full.violations if v.axiom in keep])


def fingerprint(U: RightSet) -> Counter:
    return Counter((U.pairing[u][u], len(U.orbit(u))) for u in range(U.size))


def find_set_isomorphism(U, V) -> SetMap | None:
    """Pairing-preserving bijection U -> V, or None. Left sets are handled via their mirrors."""
    if isinstance(U, LeftSet):
        U = U.mirror()
    if isinstance(V, LeftSet):
        V = V.mirror()
    if not U.semigroup.same_table(V.semigroup):
        raise PreconditionFailed("sets over different semigroups")
    if U.size != V.size or fingerprint(U) != fingerprint(V):
        return None
    m = U.size
    key_u = [(U.pairing[u][u], len(U.orbit(u))) for u in range(m)]
    key_v = [(V.pairing[v][v], len(V.orbit(v))) for v in range(m)]
    cands = [[v for v in range(m) if key_v[v] == key_u[u]] for u in range(m)]
    order = sorted(range(m), key=lambda u: (len(cands[u]), u))
    f = [-1] * m
    used = [False] * m

    def rec(i: int) -> bool:
        if i == m:
            return True
        u = order[i]
        for v in cands[u]:
            if used[v]:
                continue
            ok = all(V.pairing[v][f[w]] == U.pairing[u][w] and V.pairing[f[w]][v] == U.pairing[w][u]
                     for w in order[:i])
            if ok:
                f[u], used[v] = v, True
                if rec(i + 1):
                    return True
                f[u], used[v] = -1, False
        return False

    if not rec(0):
        return None
    rep = map_failures(U, V, f)
    ensure(rep.ok, "pairing-preserving surjection is not an isomorphism", tuple(rep.failed()))
    ensure(len(set(f)) == m, "isomorphism is not injective")
    return SetMap(U, V, tuple(f), "both")


# constructions -------------------------------------------------------------------

def semigroup_as_right_set(T: InverseSemigroup) -> RightSet:
    n = T.order
    return RightSet(T, T.table, [[T.mul(T.inv[s], s2) for s2 in range(n)] for s in range(n)], T.labels)


def semigroup_as_left_set(S: InverseSemigroup) -> LeftSet:
    n = S.order
    act = [[S.mul(s, u) for s in range(n)] for u in range(n)]
    return LeftSet(S, act, [[S.mul(u, S.inv[v]) for v in range(n)] for u in range(n)], S.labels)


def restrict_right_set(U: RightSet, members) -> RightSet:
    """Sub-set on an action-closed subset of the carrier (pairing restricted)."""
    keep = sorted(set(members))
    idx = {u: i for i, u in enumerate(keep)}
    act = []
    for u in keep:
        row = []
        for x in U.action[u]:
            if x not in idx:
                raise PreconditionFailed("subset is not closed under the action", (u, x))
            row.append(idx[x])
        act.append(row)
    pair = [[U.pairing[u][v] for v in keep] for u in keep]
    return RightSet(U.semigroup, act, pair, tuple(U.label(u) for u in keep))


def right_ideal_set(T: InverseSemigroup, generators) -> RightSet:
    """The right ideal generated by ``generators`` as a sub-set of T-as-set."""
    members = {T.mul(g, t) for g in generators for t in range(T.order)}
    return restrict_right_set(semigroup_as_right_set(T), members)


def enlargement_set(S: InverseSemigroup, T_sub) -> PartialMoritaEquivalence:
    """TS as a partial Morita equivalence from T to S (left full; Morita iff STS = S)."""
    T_members = sorted(set(T_sub))
    Tmem = set(T_members)
    T, emb = subsemigroup(S, T_members, f"{S.name}|{T_members}")
    for a, s, b in product(T_members, range(S.order), T_members):
        if S.prod(a, s, b) not in Tmem:
            raise PreconditionFailed("T S T is not contained in T", (a, s, b))
    carrier = sorted({S.mul(t, s) for t in T_members for s in range(S.order)})
    idx = {u: i for i, u in enumerate(carrier)}
    t_idx = {x: i for i, x in enumerate(emb)}
    left_action = [[idx[S.mul(emb[t], u)] for t in range(T.order)] for u in carrier]
    right_action = [[idx[S.mul(u, s)] for s in range(S.order)] for u in carrier]
    left_pairing = [[t_idx[S.mul(u, S.inv[v])] for v in carrier] for u in carrier]
    right_pairing = [[S.mul(S.inv[u], v) for v in carrier] for u in carrier]
    M = PartialMoritaEquivalence(T, S, left_action, right_action, left_pairing, right_pairing,
                                 tuple(S.label(u) for u in carrier))
    ensure(is_left_full(M.left_set()), "enlargement is not left full")
    sts = {S.prod(a, t, b) for a in range(S.order) for t in T_members for b in range(S.order)}
    ensure(is_right_full(M.right_set()) == (len(sts) == S.order), "right fullness differs from STS = S")
    return M


def zero_of_set(U: RightSet) -> int:
    z = U.semigroup.zero
    if z is None:
        raise NoZero(f"{U.semigroup.name} has no zero element")
    zs = {U.action[u][z] for u in range(U.size)}
    ensure(len(zs) <= 1, "u.0 is not constant")
    return zs.pop()


def direct_sum(U: RightSet, V: RightSet) -> RightSet:
    """Disjoint union glued at the zero elements; cross pairings are 0."""
    if not U.semigroup.same_table(V.semigroup):
        raise PreconditionFailed("sets over different semigroups")
    S = U.semigroup
    if S.zero is None:
        raise NoZero(f"{S.name} has no zero element")
    if U.size == 0 or V.size == 0:
        raise PreconditionFailed("direct summands must be nonempty")
    z = S.zero
    zu, zv = zero_of_set(U), zero_of_set(V)
    m = U.size
    place = {}
    nxt = m
    for v in range(V.size):
        if v == zv:
            place[v] = zu
        else:
            place[v] = nxt
            nxt += 1
    size = nxt
    act = [[0] * S.order for _ in range(size)]
    pair = [[z] * size for _ in range(size)]
    for u in range(m):
        act[u] = list(U.action[u])
        for u2 in range(m):
            pair[u][u2] = U.pairing[u][u2]
    for v in range(V.size):
        if v == zv:
            continue
        act[place[v]] = [place[x] for x in V.action[v]]
        for v2 in range(V.size):
            pair[place[v]][place[v2]] = V.pairing[v][v2]
            pair[place[v2]][place[v]] = V.pairing[v2][v]
    labels = tuple(("L", U.label(u)) for u in range(m)) + tuple(
        ("R", V.label(v)) for v in range(V.size) if v != zv)
    return RightSet(S, act, pair, labels)


def zero_set(S: InverseSemigroup) -> RightSet:
    """The one-point set {0}; pairing constantly the zero of S."""
    if S.zero is None:
        raise NoZero(f"{S.name} has no zero element")
    return RightSet(S, [[0] * S.order], [[S.zero]], ("0",))


def presheaf_set(E: InverseSemigroup, parts: Sequence[int],
                 restrictions: Mapping[tuple[int, int], Sequence[int]]) -> LeftSet:
    """Left inverse E-set from a presheaf of finite sets over the semilattice E.

    ``parts[e]`` is the size of the part over e; ``restrictions[(e, f)]`` for e <= f
    maps the part over f into the part over e.  Identity restrictions may be omitted.
    """
    n = E.order
    if len(E.idempotents) != n:
        raise PreconditionFailed(f"{E.name} is not a semilattice")
    if len(parts) != n:
        raise PreconditionFailed("one part per element is required")
    leq = [[natural_order(E, e, f) for f in range(n)] for e in range(n)]
    sigma: dict[tuple[int, int], tuple[int, ...]] = {}
    for e, f in product(range(n), repeat=2):
        if not leq[e][f]:
            if (e, f) in restrictions:
                raise PreconditionFailed(f"restriction given for {e} not <= {f}")
            continue
        if (e, f) in restrictions:
            r = tuple(restrictions[(e, f)])
        elif e == f:
            r = tuple(range(parts[e]))
        else:
            raise PreconditionFailed(f"missing restriction for ({e}, {f})")
        if len(r) != parts[f] or any(not 0 <= x < parts[e] for x in r):
            raise MalformedTable(f"restriction ({e}, {f}) has wrong shape")
        sigma[(e, f)] = r
    for e in range(n):
        if sigma[(e, e)] != tuple(range(parts[e])):
            raise PresheafConditionFailed("I", f"restriction ({e}, {e}) is not the identity", (e,))
    for e1, e2, e3 in product(range(n), repeat=3):
        if leq[e1][e2] and leq[e2][e3]:
            a, b, c = sigma[(e1, e2)], sigma[(e2, e3)], sigma[(e1, e3)]
            for x in range(parts[e3]):
                if a[b[x]] != c[x]:
                    raise PresheafConditionFailed("II", "restrictions are not functorial", (e1, e2, e3, x))
    carrier = [(e, x) for e in range(n) for x in range(parts[e])]
    idx = {c: i for i, c in enumerate(carrier)}
    act = []
    for (e, x) in carrier:
        row = []
        for f in range(n):
            fe = E.mul(f, e)
            row.append(idx[(fe, sigma[(fe, e)][x])])
        act.append(row)
    pair = []
    for (e1, x1) in carrier:
        row = []
        for (e2, x2) in carrier:
            meet = E.mul(e1, e2)
            agree = [g for g in range(n) if leq[g][meet]
                     and sigma[(g, e1)][x1] == sigma[(g, e2)][x2]]
            top = [g for g in agree if all(leq[h][g] for h in agree)]
            if not top:
                raise PresheafConditionFailed("III", "no largest agreement idempotent",
                                              (idx[(e1, x1)], idx[(e2, x2)]))
            row.append(top[0])
        pair.append(row)
    U = LeftSet(E, act, pair, tuple(carrier))
    ensure(check_left_regular(U).ok and check_left_inverse(U).ok, "presheaf set fails the inverse axioms")
    return U


def partial_bijection_biset(nX: int, nY: int) -> PartialMoritaEquivalence:
    """Partial bijections X -> Y as a partial Morita equivalence from I(Y) to I(X)."""
    if max(nX, nY) > 3 or min(nX, nY) < 0:
        raise SizeLimit("partial bijection biset supports 0 <= nX, nY <= 3")
    IX, IY = symmetric_inverse_monoid(nX), symmetric_inverse_monoid(nY)
    carrier = partial_injections(nX, nY)
    idx = {u: i for i, u in enumerate(carrier)}
    ix = {f: i for i, f in enumerate(IX.labels)}
    iy = {f: i for i, f in enumerate(IY.labels)}
    left_action = [[idx[compose_partial(s, u)] for s in IY.labels] for u in carrier]
    right_action = [[idx[compose_partial(u, t)] for t in IX.labels] for u in carrier]
    left_pairing = [[iy[compose_partial(u1, invert_partial(u2, nY))] for u2 in carrier] for u1 in carrier]
    right_pairing = [[ix[compose_partial(invert_partial(u1, nY), u2)] for u2 in carrier] for u1 in carrier]
    return PartialMoritaEquivalence(IY, IX, left_action, right_action, left_pairing, right_pairing,
                                    tuple(carrier))


def set_order_conditions(U: RightSet, u: int, v: int) -> tuple[bool, bool, bool, bool]:
    T = U.semigroup
    A, P = U.action, U.pairing
    c1 = u == A[v][P[u][u]]
    c2 = any(u == A[v][e] for e in T.idempotents)
    c3 = u == A[u][P[u][v]]
    c4 = any(u == k[v] for k in _idempotent_rank_ones(U))
    return c1, c2, c3, c4


@lru_cache(maxsize=64)
def _idempotent_rank_ones(U: RightSet) -> frozenset[tuple[int, ...]]:
    idem = set()
    for x, y in product(range(U.size), repeat=2):
        w = U.omega(x, y)
        if all(w[w[z]] == w[z] for z in range(U.size)):
            idem.add(w)
    return frozenset(idem)


def set_order(U: RightSet, u: int, v: int) -> bool:
    conds = set_order_conditions(U, u, v)
    if len(set(conds)) != 1:
        raise InternalInconsistency(f"order conditions disagree for ({u}, {v}): {conds}", (u, v))
    return conds[0]
