"""Adjointable maps between right inverse sets and the semigroups K(U) and L(U)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .budget import charge, resolve_budget
from .errors import InternalInconsistency, SizeLimit, ensure
from .inverse_set import PartialMoritaEquivalence, RightSet, check_partial_morita, is_morita, pairing_image
from .semigroup import InverseSemigroup, MulTable, is_ideal, recognize_inverse, subsemigroup

Map = tuple[int, ...]


@dataclass(frozen=True)
class AdjointableMap:
    """``fwd`` : source -> target together with its adjoint ``adj`` : target -> source."""

    source: RightSet = field(compare=False, repr=False)
    target: RightSet = field(compare=False, repr=False)
    fwd: Map
    adj: Map

    def __call__(self, u: int) -> int:
        return self.fwd[u]


def is_adjoint_pair(U: RightSet, V: RightSet, fwd: Map, adj: Map) -> bool:
    """<adj(v)|u>_U == <v|fwd(u)>_V for all u, v."""
    PU, PV = U.pairing, V.pairing
    return all(PU[adj[v]][u] == PV[v][fwd[u]] for v in range(V.size) for u in range(U.size))


def adjoint_table(U: RightSet, V: RightSet, fwd: Map) -> Map | None:
    """The unique adjoint of ``fwd`` : U -> V, or None when there is none.

    For each v the adjoint value is the u0 whose pairing row matches
    u -> <v|fwd(u)>.  Pairing rows of an inverse set are pairwise distinct,
    so at most one u0 qualifies; a repeat is flagged.
    """
    rows: dict[tuple[int, ...], int] = {}
    for u0 in range(U.size):
        row = U.pairing[u0]
        if row in rows:
            raise InternalInconsistency("two elements share a pairing row; the set is not inverse",
                                        (rows[row], u0))
        rows[row] = u0
    adj = []
    PV = V.pairing
    for v in range(V.size):
        want = tuple(PV[v][fwd[u]] for u in range(U.size))
        u0 = rows.get(want)
        if u0 is None:
            return None
        adj.append(u0)
    return tuple(adj)


def rank_one(V: RightSet, U: RightSet, v: int, u: int) -> AdjointableMap:
    """omega_{v,u} : U -> V, x -> v.<u|x>, with adjoint omega_{u,v}."""
    fwd = tuple(V.action[v][U.pairing[u][x]] for x in range(U.size))
    adj = tuple(U.action[u][V.pairing[v][y]] for y in range(V.size))
    return AdjointableMap(U, V, fwd, adj)


def adjoint(phi: AdjointableMap) -> AdjointableMap:
    return AdjointableMap(phi.target, phi.source, phi.adj, phi.fwd)


def identity_map(U: RightSet) -> AdjointableMap:
    ident = tuple(range(U.size))
    return AdjointableMap(U, U, ident, ident)


def compose(psi: AdjointableMap, phi: AdjointableMap) -> AdjointableMap:
    """psi after phi; the adjoint is phi-dagger after psi-dagger."""
    fwd = tuple(psi.fwd[x] for x in phi.fwd)
    adj = tuple(phi.adj[y] for y in psi.adj)
    ensure(is_adjoint_pair(phi.source, psi.target, fwd, adj), "(psi phi)+ != phi+ psi+")
    return AdjointableMap(phi.source, psi.target, fwd, adj)


def enumerate_K(U: RightSet, V: RightSet) -> list[AdjointableMap]:
    """All rank-one maps U -> V, deduplicated and sorted by table."""
    seen: dict[Map, AdjointableMap] = {}
    for v, u in product(range(V.size), range(U.size)):
        w = rank_one(V, U, v, u)
        if w.fwd in seen:
            ensure(seen[w.fwd].adj == w.adj, "equal rank-one maps with different adjoints")
        else:
            seen[w.fwd] = w
    return [seen[k] for k in sorted(seen)]


def equivariant_maps(U: RightSet, V: RightSet, budget: int | None = None) -> list[Map]:
    """All right T-maps U -> V by backtracking with orbit propagation."""
    limit = resolve_budget(budget)
    m, n = U.size, U.semigroup.order
    AU, AV = U.action, V.action
    f = [-1] * m
    out: list[Map] = []
    nodes = 0

    def assign(u: int, v: int, trail: list[int]) -> bool:
        stack = [(u, v)]
        while stack:
            a, b = stack.pop()
            if f[a] != -1:
                if f[a] != b:
                    return False
                continue
            f[a] = b
            trail.append(a)
            ra, rb = AU[a], AV[b]
            for t in range(n):
                stack.append((ra[t], rb[t]))
        return True

    def rec(u: int) -> None:
        nonlocal nodes
        while u < m and f[u] != -1:
            u += 1
        if u == m:
            out.append(tuple(f))
            return
        for v in range(V.size):
            nodes += 1
            if nodes > limit:
                raise SizeLimit(f"L enumeration exceeded the budget of {limit} nodes")
            trail: list[int] = []
            if assign(u, v, trail):
                rec(u + 1)
            for a in trail:
                f[a] = -1

    try:
        rec(0)
    finally:
        charge(nodes)
    return out


def enumerate_L(U: RightSet, V: RightSet, budget: int | None = None) -> list[AdjointableMap]:
    """All adjointable maps U -> V, sorted by table."""
    out = []
    for fwd in equivariant_maps(U, V, budget):
        adj = adjoint_table(U, V, fwd)
        if adj is not None:
            out.append(AdjointableMap(U, V, fwd, adj))
    return out


@dataclass(frozen=True)
class MapSemigroup:
    """An inverse semigroup of adjointable maps; element i is ``maps[i]``.

    For K(U) built inside L(U), ``ambient`` is L(U) and ``embedding`` lists the
    L-index of each element.
    """

    semigroup: InverseSemigroup
    maps: tuple[AdjointableMap, ...]
    ambient: "MapSemigroup | None" = field(default=None, compare=False, repr=False)
    embedding: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.maps)

    def index_of(self, fwd: Map) -> int:
        return self._index[tuple(fwd)]

    def get(self, fwd: Map) -> int | None:
        return self._index.get(tuple(fwd))

    @property
    def _index(self) -> dict[Map, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {m.fwd: i for i, m in enumerate(self.maps)}
            object.__setattr__(self, "_idx", idx)
        return idx


def _map_semigroup(maps: list[AdjointableMap], name: str) -> MapSemigroup:
    index = {m.fwd: i for i, m in enumerate(maps)}
    rows = []
    for a in maps:
        row = []
        for b in maps:
            c = tuple(a.fwd[x] for x in b.fwd)
            if c not in index:
                raise InternalInconsistency(f"{name} is not closed under composition")
            row.append(index[c])
        rows.append(row)
    S = recognize_inverse(MulTable.of(rows), name, tuple(m.fwd for m in maps))
    for i, m in enumerate(maps):
        ensure(S.inv[i] == index.get(m.adj), f"{name}: generalized inverse differs from the adjoint", (i,))
    return MapSemigroup(S, tuple(maps))


def L_semigroup(U: RightSet, budget: int | None = None) -> MapSemigroup:
    """L(U) under composition (x -> phi(psi(x)) is phi.psi)."""
    L = _map_semigroup(enumerate_L(U, U, budget), "L")
    ident = L.get(tuple(range(U.size)))
    ensure(ident is not None and L.semigroup.identity == ident, "identity map is not the identity of L(U)")
    return L


def K_semigroup(U: RightSet, budget: int | None = None, check_ideal: bool = True) -> MapSemigroup:
    """K(U); with ``check_ideal`` it is also located inside L(U) as a two-sided ideal."""
    K = _map_semigroup(enumerate_K(U, U), "K")
    diag = {U.omega(u, u) for u in range(U.size)}
    idem = {K.maps[e].fwd for e in K.semigroup.idempotents}
    ensure(idem == diag, "E(K(U)) differs from the maps omega_{u,u}")
    if not check_ideal:
        return K
    L = L_semigroup(U, budget)
    emb = []
    for k in K.maps:
        i = L.get(k.fwd)
        ensure(i is not None, "a rank-one map is missing from L(U)")
        emb.append(i)
    ensure(is_ideal(L.semigroup, emb), "K(U) is not a two-sided ideal of L(U)")
    return MapSemigroup(K.semigroup, K.maps, L, tuple(emb))


def adjointable_biset(U: RightSet, V: RightSet, kind: str = "L", budget: int | None = None) -> PartialMoritaEquivalence:
    """L(U,V) (or K(U,V)) as a partial Morita equivalence from L(V) to L(U).

    Left action is composition on the left, right action composition on the
    right, pairings phi1 phi2+ and phi1+ phi2.
    """
    if kind == "L":
        carrier = enumerate_L(U, V, budget)
        left, right = L_semigroup(V, budget), L_semigroup(U, budget)
    elif kind == "K":
        carrier = enumerate_K(U, V)
        left, right = K_semigroup(V, check_ideal=False), K_semigroup(U, check_ideal=False)
    else:
        raise ValueError(f"kind must be 'L' or 'K', not {kind!r}")
    idx = {m.fwd: i for i, m in enumerate(carrier)}

    def at(table: dict, fwd) -> int:
        i = table.get(tuple(fwd))
        if i is None:
            raise InternalInconsistency(f"{kind}(U,V) is not closed under the biset operations")
        return i

    left_action = [[at(idx, [psi.fwd[x] for x in phi.fwd]) for psi in left.maps] for phi in carrier]
    right_action = [[at(idx, [phi.fwd[x] for x in chi.fwd]) for chi in right.maps] for phi in carrier]
    left_pairing = [[left.index_of([p1.fwd[x] for x in p2.adj]) for p2 in carrier] for p1 in carrier]
    right_pairing = [[right.index_of([p1.adj[x] for x in p2.fwd]) for p2 in carrier] for p1 in carrier]
    return PartialMoritaEquivalence(left.semigroup, right.semigroup, left_action, right_action,
                                    left_pairing, right_pairing, tuple(m.fwd for m in carrier))


def morita_from_set(U: RightSet) -> PartialMoritaEquivalence:
    """U as a Morita equivalence from K(U) to the ideal <U|U> of T."""
    T = U.semigroup
    K = K_semigroup(U, check_ideal=False)
    ideal = sorted(pairing_image(U.pairing))
    ensure(is_ideal(T, ideal), "<U|U> is not a two-sided ideal")
    J, emb = subsemigroup(T, ideal, f"<U|U> in {T.name}")
    jdx = {x: i for i, x in enumerate(emb)}
    m = U.size
    left_action = [[k.fwd[u] for k in K.maps] for u in range(m)]
    right_action = [[U.action[u][emb[t]] for t in range(J.order)] for u in range(m)]
    left_pairing = [[K.index_of(U.omega(u, v)) for v in range(m)] for u in range(m)]
    right_pairing = [[jdx[U.pairing[u][v]] for v in range(m)] for u in range(m)]
    M = PartialMoritaEquivalence(K.semigroup, J, left_action, right_action, left_pairing, right_pairing,
                                 U.labels)
    rep = check_partial_morita(M)
    ensure(rep.ok, "U fails the partial Morita axioms over K(U)", tuple(rep.failed()))
    ensure(is_morita(M), "U is not full over K(U) and <U|U>")
    return M
