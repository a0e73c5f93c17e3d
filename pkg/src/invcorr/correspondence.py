"""Inverse correspondences, recovery of partial Morita structure, and tensor products."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .adjointable import enumerate_K
from .errors import (
    InternalInconsistency,
    MiddleMismatch,
    NotPartialMorita,
    PreconditionFailed,
    ensure,
)
from .inverse_set import (
    PartialMoritaEquivalence,
    RightSet,
    check_partial_morita,
    check_right_inverse,
    check_right_regular,
    pairing_image,
)
from .report import AxiomReport
from .semigroup import InverseSemigroup, SemigroupHom, Table, check_hom, freeze, identity_hom, is_ideal
from .unionfind import UnionFind


@dataclass(frozen=True)
class InverseCorrespondence:
    """A right inverse T-set with a left S-action, ``left_action[u][s] = s.u``."""

    left_semigroup: InverseSemigroup
    right_set: RightSet
    left_action: Table
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "left_action", freeze(self.left_action))
        m = self.right_set.size
        S = self.left_semigroup
        if len(self.left_action) != m or any(len(r) != S.order for r in self.left_action):
            raise PreconditionFailed("left action table has the wrong shape")
        if any(not 0 <= x < m for r in self.left_action for x in r):
            raise PreconditionFailed("left action value out of range")
        if self.labels is None and self.right_set.labels is not None:
            object.__setattr__(self, "labels", self.right_set.labels)

    @property
    def size(self) -> int:
        return self.right_set.size

    @property
    def right_semigroup(self) -> InverseSemigroup:
        return self.right_set.semigroup

    def theta(self, s: int) -> tuple[int, ...]:
        """The map u -> s.u."""
        return tuple(self.left_action[u][s] for u in range(self.size))

    def label(self, u: int):
        return self.labels[u] if self.labels is not None else u


def check_correspondence(c: InverseCorrespondence) -> AxiomReport:
    S = c.left_semigroup
    U = c.right_set
    T = U.semigroup
    rep = check_right_regular(U)
    if rep.ok:
        rep.extend(check_right_inverse(U))
    m = c.size
    LA, RA, P = c.left_action, U.action, U.pairing
    for u, s, s2 in product(range(m), range(S.order), range(S.order)):
        if LA[LA[u][s2]][s] != LA[u][S.mul(s, s2)]:
            rep.add("left action law", u, s, s2)
    for u, v, s in product(range(m), range(m), range(S.order)):
        if P[v][LA[u][s]] != P[LA[v][S.inv[s]]][u]:
            rep.add("adjointability", v, s, u)
    for u, s, t in product(range(m), range(S.order), range(T.order)):
        if LA[RA[u][t]][s] != RA[LA[u][s]][t]:
            rep.add("mixed associativity", s, u, t)
    return rep


def is_non_degenerate(c: InverseCorrespondence) -> bool:
    reached = {x for row in c.left_action for x in row}
    return len(reached) == c.size


def hom_carrier(theta: SemigroupHom) -> list[int]:
    """Sorted elements theta(s) t of the target; index i of U_theta is element ``carrier[i]``."""
    S, T = theta.source, theta.target
    return sorted({T.mul(theta(s), t) for s in range(S.order) for t in range(T.order)})


def from_hom(theta: SemigroupHom) -> InverseCorrespondence:
    """U_theta = theta(S) T inside T-as-set, with s.u = theta(s) u."""
    if not check_hom(theta):
        raise PreconditionFailed("theta is not a homomorphism")
    S, T = theta.source, theta.target
    carrier = hom_carrier(theta)
    idx = {x: i for i, x in enumerate(carrier)}
    action = [[idx[T.mul(u, t)] for t in range(T.order)] for u in carrier]
    pairing = [[T.mul(T.inv[u], v) for v in carrier] for u in carrier]
    U = RightSet(T, action, pairing, tuple(T.label(u) for u in carrier))
    left = [[idx[T.mul(theta(s), u)] for s in range(S.order)] for u in carrier]
    c = InverseCorrespondence(S, U, left)
    ensure(is_non_degenerate(c), "U_theta is degenerate")
    return c


def identity_correspondence(S: InverseSemigroup) -> InverseCorrespondence:
    """S as a correspondence from S to S; carrier index = element index."""
    c = from_hom(identity_hom(S))
    ensure(c.size == S.order, "S.S != S")
    return c


def _ideal_search(c: InverseCorrespondence, targets: list[tuple[int, ...]]) -> list[dict[int, int]]:
    """All two-sided ideals I with theta|I a bijection onto ``targets``.

    Returned as maps target-index -> element of S.  Elements are chosen one
    fibre at a time; every choice forces its ideal closure.
    """
    S = c.left_semigroup
    where = {k: i for i, k in enumerate(targets)}
    fibres: list[list[int]] = [[] for _ in targets]
    for s in range(S.order):
        k = where.get(c.theta(s))
        if k is not None:
            fibres[k].append(s)
    if any(not f for f in fibres):
        return []
    chosen: dict[int, int] = {}
    members: set[int] = set()
    found: list[dict[int, int]] = []

    def add(s: int, trail: list[int]) -> bool:
        stack = [s]
        while stack:
            x = stack.pop()
            if x in members:
                continue
            k = where.get(c.theta(x))
            if k is None:
                return False
            if k in chosen:
                return False
            chosen[k] = x
            members.add(x)
            trail.append(k)
            for y in range(S.order):
                stack.append(S.mul(x, y))
                stack.append(S.mul(y, x))
        return True

    def rec(k: int) -> None:
        while k < len(targets) and k in chosen:
            k += 1
        if k == len(targets):
            found.append(dict(chosen))
            return
        for s in fibres[k]:
            trail: list[int] = []
            if add(s, trail):
                rec(k + 1)
            for kk in trail:
                members.discard(chosen.pop(kk))

    rec(0)
    return found


def recover_partial_morita(c: InverseCorrespondence) -> PartialMoritaEquivalence:
    """The unique left pairing making c a partial Morita equivalence, if any."""
    U = c.right_set
    S = c.left_semigroup
    K = [k.fwd for k in enumerate_K(U, U)]
    image = {c.theta(s) for s in range(S.order)}
    if not set(K) <= image:
        raise NotPartialMorita("image mismatch", "theta(S) does not contain K(U)")
    solutions = _ideal_search(c, K)
    if not solutions:
        preimage = [s for s in range(S.order) if c.theta(s) in set(K)]
        raise NotPartialMorita("not injective",
                               "theta is not injective on any two-sided ideal mapping onto K(U)",
                               tuple(preimage))
    ensure(len(solutions) == 1, "two distinct ideals map isomorphically onto K(U)")
    sol = solutions[0]
    ideal = set(sol.values())
    ensure(is_ideal(S, ideal), "recovered set is not an ideal")
    kidx = {k: i for i, k in enumerate(K)}
    m = c.size
    left_pairing = [[sol[kidx[U.omega(u, v)]] for v in range(m)] for u in range(m)]
    M = PartialMoritaEquivalence(S, U.semigroup, c.left_action, U.action, left_pairing, U.pairing, c.labels)
    rep = check_partial_morita(M)
    if not rep.ok:
        raise NotPartialMorita("axioms", f"recovered structure violates {sorted(rep.failed())}")
    return M


@dataclass(frozen=True)
class TensorProduct(InverseCorrespondence):
    """U (x) V; ``class_of[u][v]`` is the class id of u (x) v."""

    left_factor: InverseCorrespondence | None = field(default=None, compare=False, repr=False)
    right_factor: InverseCorrespondence | None = field(default=None, compare=False, repr=False)
    class_of: Table = ()
    representatives: tuple[tuple[int, int], ...] = ()

    def elem(self, u: int, v: int) -> int:
        return self.class_of[u][v]


def tensor(c1: InverseCorrespondence, c2: InverseCorrespondence, *, check: bool = True) -> TensorProduct:
    """Quotient of U x V by (u.t, v) ~ (u, t.v), with its correspondence structure."""
    U = c1.right_set
    T = U.semigroup
    if not T.same_table(c2.left_semigroup):
        raise MiddleMismatch(f"right semigroup {T.name} of the first factor differs from "
                             f"left semigroup {c2.left_semigroup.name} of the second")
    V = c2.right_set
    R = V.semigroup
    S = c1.left_semigroup
    m1, m2 = U.size, V.size
    uf = UnionFind(m1 * m2)
    for u, v, t in product(range(m1), range(m2), range(T.order)):
        uf.union(U.action[u][t] * m2 + v, u * m2 + c2.left_action[v][t])
    ids, members = uf.classes()
    reps = tuple(divmod(cls[0], m2) for cls in members)
    class_of = tuple(tuple(ids[u * m2 + v] for v in range(m2)) for u in range(m1))
    k = len(reps)

    def pair(x: tuple[int, int], y: tuple[int, int]) -> int:
        (u1, v1), (u2, v2) = x, y
        return V.pairing[v1][c2.left_action[v2][U.pairing[u1][u2]]]

    action = [[class_of[u][V.action[v][r]] for r in range(R.order)] for (u, v) in reps]
    pairing = [[pair(x, y) for y in reps] for x in reps]
    left = [[class_of[c1.left_action[u][s]][v] for s in range(S.order)] for (u, v) in reps]
    # every representative must give the same values
    for u, v in product(range(m1), range(m2)):
        cid = class_of[u][v]
        for r in range(R.order):
            if class_of[u][V.action[v][r]] != action[cid][r]:
                raise InternalInconsistency("right action is not well defined on U(x)V", (u, v, r))
        for s in range(S.order):
            if class_of[c1.left_action[u][s]][v] != left[cid][s]:
                raise InternalInconsistency("left action is not well defined on U(x)V", (s, u, v))
        for j, y in enumerate(reps):
            if pair((u, v), y) != pairing[cid][j] or pair(y, (u, v)) != pairing[j][cid]:
                raise InternalInconsistency("pairing is not well defined on U(x)V", (u, v, *y))
    W = RightSet(R, action, pairing, reps)
    out = TensorProduct(S, W, left, reps, c1, c2, class_of, reps)
    if check:
        rep = check_correspondence(out)
        ensure(rep.ok, "tensor product fails the correspondence axioms", tuple(rep.failed()))
        if is_non_degenerate(c1):
            ensure(is_non_degenerate(out), "non-degeneracy of the left factor did not propagate")
    return out


def tensor_partial_morita(m1: PartialMoritaEquivalence, m2: PartialMoritaEquivalence) -> PartialMoritaEquivalence:
    """Tensor of partial Morita equivalences, with the left pairing recovered and cross-checked."""
    U, V = m1.correspondence(), m2.correspondence()
    W = tensor(U, V)
    M = recover_partial_morita(W)
    I = pairing_image(m1.left_pairing)
    J = pairing_image(m2.left_pairing)
    UP = m1.right_pairing
    expected = {s for s in I if all(UP[x][m1.left_action[y][s]] in J
                                   for x in range(m1.size) for y in range(m1.size))}
    ensure(pairing_image(M.left_pairing) == expected, "recovered ideal differs from W")
    for (u2, v2), (u1, v1) in product(W.representatives, repeat=2):
        a = W.elem(u2, v2)
        b = W.elem(u1, v1)
        shifted = m1.right_action[u2][m2.left_pairing[v2][v1]]
        ensure(M.left_pairing[a][b] == m1.left_pairing[shifted][u1], "tensor left pairing formula fails",
               (u2, v2, u1, v1))
    return M


# correspondence maps ---------------------------------------------------------------

@dataclass(frozen=True)
class CorrespondenceMap:
    source: InverseCorrespondence = field(compare=False, repr=False)
    target: InverseCorrespondence = field(compare=False, repr=False)
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.size or any(not 0 <= x < self.target.size for x in self.map):
            raise PreconditionFailed("map has the wrong shape")

    def __call__(self, u: int) -> int:
        return self.map[u]

    @property
    def surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)


def check_correspondence_map(sigma: CorrespondenceMap) -> AxiomReport:
    """Right pairing preserving left S-map; injectivity and T-equivariance then asserted."""
    src, dst, f = sigma.source, sigma.target, sigma.map
    rep = AxiomReport()
    if not src.left_semigroup.same_table(dst.left_semigroup) or not src.right_semigroup.same_table(dst.right_semigroup):
        rep.add("same semigroups")
        return rep
    S = src.left_semigroup
    for u, s in product(range(src.size), range(S.order)):
        if f[src.left_action[u][s]] != dst.left_action[f[u]][s]:
            rep.add("left S-map", s, u)
    P, Q = src.right_set.pairing, dst.right_set.pairing
    for u, v in product(range(src.size), repeat=2):
        if Q[f[u]][f[v]] != P[u][v]:
            rep.add("pairing preserving", u, v)
    if rep.ok:
        ensure(sigma.injective, "pairing-preserving map is not injective")
        T = src.right_semigroup
        ensure(all(f[src.right_set.action[u][t]] == dst.right_set.action[f[u]][t]
                   for u in range(src.size) for t in range(T.order)),
               "pairing-preserving map is not a right T-map")
    return rep


def identity_cmap(c: InverseCorrespondence) -> CorrespondenceMap:
    return CorrespondenceMap(c, c, tuple(range(c.size)))


def compose_cmap(g: CorrespondenceMap, f: CorrespondenceMap) -> CorrespondenceMap:
    return CorrespondenceMap(f.source, g.target, tuple(g.map[x] for x in f.map))


def invert_cmap(sigma: CorrespondenceMap) -> CorrespondenceMap:
    """Inverse of a bijective correspondence map, itself verified."""
    if not sigma.surjective:
        raise PreconditionFailed("only surjective correspondence maps are invertible")
    inv = [0] * sigma.target.size
    for u, x in enumerate(sigma.map):
        inv[x] = u
    out = CorrespondenceMap(sigma.target, sigma.source, tuple(inv))
    ensure(check_correspondence_map(out).ok, "inverse of a bijective correspondence map fails the axioms")
    return out


def tensor_map(s1: CorrespondenceMap, s2: CorrespondenceMap, source: TensorProduct | None = None,
               target: TensorProduct | None = None) -> CorrespondenceMap:
    """s1 (x) s2 : u1 (x) u2 -> s1(u1) (x) s2(u2)."""
    source = source or tensor(s1.source, s2.source)
    target = target or tensor(s1.target, s2.target)
    f = [-1] * source.size
    for u, v in product(range(s1.source.size), range(s2.source.size)):
        cid = source.elem(u, v)
        img = target.elem(s1.map[u], s2.map[v])
        if f[cid] == -1:
            f[cid] = img
        elif f[cid] != img:
            raise InternalInconsistency("tensor of maps is not well defined", (u, v))
    return CorrespondenceMap(source, target, tuple(f))


def hom_tensor_iso(t1: SemigroupHom, t2: SemigroupHom) -> CorrespondenceMap:
    """U_t1 (x) U_t2 -> U_{t2 t1}, u1 (x) u2 -> t2(u1) u2, checked to be bijective."""
    from .semigroup import compose_hom

    W = tensor(from_hom(t1), from_hom(t2))
    composite = compose_hom(t2, t1)
    target = from_hom(composite)
    R = t2.target
    pos = {x: i for i, x in enumerate(hom_carrier(composite))}
    f = [-1] * W.size
    for i, u1 in enumerate(hom_carrier(t1)):
        for j, u2 in enumerate(hom_carrier(t2)):
            img = pos[R.mul(t2.map[u1], u2)]
            cid = W.elem(i, j)
            if f[cid] == -1:
                f[cid] = img
            elif f[cid] != img:
                raise InternalInconsistency("u1 (x) u2 -> t2(u1) u2 is not well defined", (i, j))
    sigma = CorrespondenceMap(W, target, tuple(f))
    rep = check_correspondence_map(sigma)
    ensure(rep.ok and sigma.surjective, "U_t1 (x) U_t2 -> U_{t2 t1} is not an isomorphism")
    return sigma
