"""Finite semigroups as Cayley tables, inverse-semigroup recognition, order and ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import (
    InternalInconsistency,
    MalformedTable,
    NotAssociative,
    NotInverse,
    PreconditionFailed,
    SizeLimit,
    ensure,
)

Table = tuple[tuple[int, ...], ...]


def freeze(rows: Iterable[Iterable[int]]) -> Table:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class MulTable:
    order: int
    table: Table

    def __post_init__(self):
        table = freeze(self.table)
        object.__setattr__(self, "table", table)
        n = self.order
        if n < 0 or len(table) != n:
            raise MalformedTable(f"expected {n} rows, got {len(table)}")
        for a, row in enumerate(table):
            if len(row) != n:
                raise MalformedTable(f"row {a} has length {len(row)}, expected {n}", (a,))
            for b, c in enumerate(row):
                if not 0 <= c < n:
                    raise MalformedTable(f"entry [{a}][{b}] = {c} out of range", (a, b))

    @classmethod
    def of(cls, rows) -> "MulTable":
        rows = freeze(rows)
        return cls(len(rows), rows)


def associativity_failures(t: MulTable) -> Iterator[tuple[int, int, int]]:
    tab = t.table
    n = t.order
    for a in range(n):
        ra = tab[a]
        for b in range(n):
            ab = ra[b]
            rab = tab[ab]
            rb = tab[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    yield (a, b, c)


def check_associative(t: MulTable) -> bool:
    return next(associativity_failures(t), None) is None


@dataclass(frozen=True)
class InverseSemigroup:
    """Build with :func:`recognize_inverse`; ``inv`` is never taken on trust."""

    name: str
    base: MulTable
    inv: tuple[int, ...]
    idempotents: tuple[int, ...]
    labels: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def table(self) -> Table:
        return self.base.table

    def __len__(self) -> int:
        return self.base.order

    def mul(self, a: int, b: int) -> int:
        return self.base.table[a][b]

    def prod(self, *xs: int) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = self.base.table[out][x]
        return out

    def star(self, a: int) -> int:
        return self.inv[a]

    @cached_property
    def idempotent_set(self) -> frozenset[int]:
        return frozenset(self.idempotents)

    def is_idempotent(self, a: int) -> bool:
        return a in self.idempotent_set

    @cached_property
    def identity(self) -> int | None:
        tab = self.base.table
        for e in self.idempotents:
            if all(tab[e][x] == x and tab[x][e] == x for x in range(self.order)):
                return e
        return None

    @cached_property
    def zero(self) -> int | None:
        tab = self.base.table
        for z in self.idempotents:
            if all(tab[z][x] == z and tab[x][z] == z for x in range(self.order)):
                return z
        return None

    def label(self, a: int):
        return self.labels[a] if self.labels is not None else a

    def same_table(self, other: "InverseSemigroup") -> bool:
        return self.base == other.base


def recognize_inverse(t: MulTable | Sequence[Sequence[int]], name: str = "S", labels=None) -> InverseSemigroup:
    """Recognize an inverse semigroup by scanning for generalized inverses.

    Raises NotAssociative, or NotInverse with reason NOT_REGULAR / NOT_UNIQUE.
    The verdict is cross-checked against "regular and idempotents commute".
    """
    if not isinstance(t, MulTable):
        t = MulTable.of(t)
    bad = next(associativity_failures(t), None)
    if bad is not None:
        raise NotAssociative(f"(ab)c != a(bc) at {bad}", bad)
    tab = t.table
    n = t.order
    ginv: list[list[int]] = []
    for s in range(n):
        rs = tab[s]
        ginv.append([x for x in range(n) if tab[rs[x]][s] == s and tab[tab[x][s]][x] == x])
    idem = tuple(e for e in range(n) if tab[e][e] == e)
    regular = all(ginv)
    commute = all(tab[e][f] == tab[f][e] for e in idem for f in idem)
    unique = regular and all(len(g) == 1 for g in ginv)
    if regular and unique != commute:
        raise InternalInconsistency("uniqueness scan disagrees with idempotent commutation")
    if not regular:
        s = next(s for s in range(n) if not ginv[s])
        raise NotInverse("NOT_REGULAR", f"element {s} has no generalized inverse", (s,))
    if not unique:
        s = next(s for s in range(n) if len(ginv[s]) > 1)
        raise NotInverse("NOT_UNIQUE", f"element {s} has generalized inverses {ginv[s]}", (s, *ginv[s]))
    inv = tuple(g[0] for g in ginv)
    return InverseSemigroup(name, t, inv, idem, labels)


def inverse_law_failures(S: InverseSemigroup) -> list[tuple[str, tuple]]:
    """(st)* = t*s*, s** = s, and the ideal-idempotent commutation, exhaustively."""
    out = []
    for s in range(S.order):
        if S.inv[S.inv[s]] != s:
            out.append(("s** = s", (s,)))
        for t in range(S.order):
            if S.inv[S.mul(s, t)] != S.mul(S.inv[t], S.inv[s]):
                out.append(("(st)* = t*s*", (s, t)))
    for e in S.idempotents:
        for f in S.idempotents:
            if S.mul(e, f) != S.mul(f, e):
                out.append(("idempotents commute", (e, f)))
    return out


def right_cancel_failures(S: InverseSemigroup) -> list[tuple[int, int]]:
    """Pairs with s1 s1* = s1 s2* = s2 s2* but s1 != s2 (should be empty)."""
    out = []
    for s1, s2 in product(range(S.order), repeat=2):
        a = S.mul(s1, S.inv[s1])
        if a == S.mul(s1, S.inv[s2]) == S.mul(s2, S.inv[s2]) and s1 != s2:
            out.append((s1, s2))
    return out


def order_conditions(S: InverseSemigroup, s: int, t: int) -> tuple[bool, bool, bool, bool]:
    """The four equivalent descriptions of s <= t."""
    c1 = s == S.prod(t, S.inv[s], s)
    c2 = any(s == S.mul(t, e) for e in S.idempotents)
    c3 = s == S.prod(s, S.inv[s], t)
    c4 = any(s == S.mul(f, t) for f in S.idempotents)
    return c1, c2, c3, c4


def natural_order(S: InverseSemigroup, s: int, t: int) -> bool:
    conds = order_conditions(S, s, t)
    if len(set(conds)) != 1:
        raise InternalInconsistency(f"order conditions disagree for ({s}, {t}): {conds}", (s, t))
    return conds[0]


def order_matrix(S: InverseSemigroup) -> list[list[bool]]:
    """leq[s][t] iff s <= t, from the first description only (cheap)."""
    n = S.order
    return [[s == S.prod(t, S.inv[s], s) for t in range(n)] for s in range(n)]


@dataclass(frozen=True)
class TwoSidedIdeal:
    parent: InverseSemigroup
    members: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)


def is_ideal(S: InverseSemigroup, members: Iterable[int]) -> bool:
    mem = set(members)
    return all(S.mul(s, t) in mem and S.mul(t, s) in mem for s in range(S.order) for t in mem)


def ideal_closure(S: InverseSemigroup, seed: Iterable[int]) -> TwoSidedIdeal:
    members = set(seed)
    frontier = list(members)
    while frontier:
        t = frontier.pop()
        for s in range(S.order):
            for x in (S.mul(s, t), S.mul(t, s)):
                if x not in members:
                    members.add(x)
                    frontier.append(x)
    return TwoSidedIdeal(S, frozenset(members))


def as_ideal(S: InverseSemigroup, members: Iterable[int]) -> TwoSidedIdeal:
    mem = frozenset(members)
    if not is_ideal(S, mem):
        raise PreconditionFailed(f"{sorted(mem)} is not a two-sided ideal")
    return TwoSidedIdeal(S, mem)


def _essential_right(S: InverseSemigroup, members) -> bool:
    rows = {tuple(S.mul(s, t) for t in members) for s in range(S.order)}
    return len(rows) == S.order


def _essential_left(S: InverseSemigroup, members) -> bool:
    cols = {tuple(S.mul(t, s) for t in members) for s in range(S.order)}
    return len(cols) == S.order


def is_essential_ideal(S: InverseSemigroup, I: TwoSidedIdeal | Iterable[int]) -> bool:
    members = sorted(I.members if isinstance(I, TwoSidedIdeal) else I)
    right = _essential_right(S, members)
    left = _essential_left(S, members)
    if right != left:
        raise InternalInconsistency("left and right essentiality disagree", tuple(members))
    return right


@dataclass(frozen=True)
class SemigroupHom:
    source: InverseSemigroup
    target: InverseSemigroup
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.order:
            raise MalformedTable("homomorphism map has wrong length")
        if any(not 0 <= x < self.target.order for x in self.map):
            raise MalformedTable("homomorphism value out of range")

    def __call__(self, s: int) -> int:
        return self.map[s]

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)


def check_hom(h: SemigroupHom) -> bool:
    S, T, f = h.source, h.target, h.map
    ok = all(f[S.mul(a, b)] == T.mul(f[a], f[b]) for a in range(S.order) for b in range(S.order))
    if ok:
        ensure(all(f[S.inv[s]] == T.inv[f[s]] for s in range(S.order)), "hom does not preserve *")
    return ok


def identity_hom(S: InverseSemigroup) -> SemigroupHom:
    return SemigroupHom(S, S, tuple(range(S.order)))


def compose_hom(g: SemigroupHom, f: SemigroupHom) -> SemigroupHom:
    """g after f."""
    return SemigroupHom(f.source, g.target, tuple(g.map[x] for x in f.map))


def _element_invariants(S: InverseSemigroup) -> list[tuple]:
    n = S.order
    leq = order_matrix(S)
    inv = []
    for s in range(n):
        powers = {s}
        x = S.mul(s, s)
        while x not in powers:
            powers.add(x)
            x = S.mul(x, s)
        inv.append((
            s in S.idempotent_set,
            S.inv[s] == s,
            sum(leq[x][s] for x in range(n)),
            sum(leq[s][x] for x in range(n)),
            len(powers),
            len({S.mul(s, x) for x in range(n)}),
            len({S.mul(x, s) for x in range(n)}),
            S.mul(s, S.inv[s]) == S.mul(S.inv[s], s),
        ))
    return inv


def _hom_search(S: InverseSemigroup, T: InverseSemigroup, *, injective: bool,
                candidates: list[list[int]] | None = None,
                fixed: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Backtracking over maps S -> T; products of assigned elements are propagated."""
    n = S.order
    if candidates is None:
        candidates = [list(range(T.order)) for _ in range(n)]
    allowed = [set(c) for c in candidates]
    f = [-1] * n
    used = [0] * T.order
    assigned: list[int] = []

    def assign(s: int, t: int, trail: list[int]) -> bool:
        queue = [(s, t)]
        while queue:
            a, b = queue.pop()
            if f[a] != -1:
                if f[a] != b:
                    return False
                continue
            if b not in allowed[a] or (injective and used[b]):
                return False
            f[a] = b
            used[b] += 1
            trail.append(a)
            assigned.append(a)
            queue.append((S.inv[a], T.inv[b]))
            for c in list(assigned):
                queue.append((S.mul(a, c), T.mul(b, f[c])))
                queue.append((S.mul(c, a), T.mul(f[c], b)))
        return True

    def undo(trail: list[int]) -> None:
        for a in reversed(trail):
            used[f[a]] -= 1
            f[a] = -1
            assigned.remove(a)

    start: list[int] = []
    for s, t in (fixed or {}).items():
        if not assign(s, t, start):
            return

    order = sorted(range(n), key=lambda s: (len(candidates[s]), s))

    def rec(i: int):
        while i < n and f[order[i]] != -1:
            i += 1
        if i == n:
            yield tuple(f)
            return
        s = order[i]
        for t in candidates[s]:
            trail: list[int] = []
            if assign(s, t, trail):
                yield from rec(i + 1)
            undo(trail)

    yield from rec(0)


def find_isomorphism(S: InverseSemigroup, T: InverseSemigroup) -> SemigroupHom | None:
    if S.order != T.order or len(S.idempotents) != len(T.idempotents):
        return None
    inv_s, inv_t = _element_invariants(S), _element_invariants(T)
    if sorted(inv_s) != sorted(inv_t):
        return None
    cands = [[t for t in range(T.order) if inv_t[t] == inv_s[s]] for s in range(S.order)]
    for f in _hom_search(S, T, injective=True, candidates=cands):
        h = SemigroupHom(S, T, f)
        ensure(check_hom(h) and h.injective, "isomorphism search returned a non-isomorphism")
        return h
    return None


def find_homomorphisms(S: InverseSemigroup, T: InverseSemigroup, *,
                       fixed: dict[int, int] | None = None,
                       injective: bool = False) -> Iterator[SemigroupHom]:
    """All homomorphisms S -> T (optionally extending ``fixed``), in search order."""
    for f in _hom_search(S, T, injective=injective, fixed=fixed):
        yield SemigroupHom(S, T, f)


def are_isomorphic(S: InverseSemigroup, T: InverseSemigroup) -> bool:
    return find_isomorphism(S, T) is not None


def subsemigroup(S: InverseSemigroup, members: Iterable[int], name: str | None = None) -> tuple[InverseSemigroup, tuple[int, ...]]:
    """The inverse subsemigroup on ``members`` (sorted) and its embedding into S."""
    emb = tuple(sorted(set(members)))
    idx = {x: i for i, x in enumerate(emb)}
    rows = []
    for a in emb:
        row = []
        for b in emb:
            c = S.mul(a, b)
            if c not in idx:
                raise PreconditionFailed(f"{sorted(emb)} is not closed under multiplication", (a, b))
            row.append(idx[c])
        rows.append(row)
    for a in emb:
        if S.inv[a] not in idx:
            raise PreconditionFailed(f"{sorted(emb)} is not closed under *", (a,))
    labels = tuple(S.label(a) for a in emb)
    sub = recognize_inverse(MulTable.of(rows), name or f"{S.name}|sub", labels)
    ensure(all(emb[sub.inv[i]] == S.inv[a] for i, a in enumerate(emb)), "subsemigroup inverse mismatch")
    return sub, emb


def restrict_hom_ideal_agreement(S: InverseSemigroup, T: InverseSemigroup, theta: SemigroupHom,
                                 I1: TwoSidedIdeal, I2: TwoSidedIdeal) -> bool:
    """Two ideals on which theta is injective with equal images must coincide."""
    for I in (I1, I2):
        if not is_ideal(S, I.members):
            raise PreconditionFailed("argument is not a two-sided ideal")
        if len({theta(x) for x in I.members}) != len(I.members):
            raise PreconditionFailed("theta is not injective on the ideal")
    if {theta(x) for x in I1.members} != {theta(x) for x in I2.members}:
        raise PreconditionFailed("images differ")
    return I1.members == I2.members


# partial bijections ----------------------------------------------------------

def partial_injections(n_src: int, n_dst: int) -> list[tuple[int, ...]]:
    """Partial injections {0..n_src-1} -> {0..n_dst-1} as tuples (-1 = undefined).

    Canonical order: domain bitmask, then the image tuple lexicographically.
    """
    from itertools import permutations

    out = []
    for mask in range(1 << n_src):
        dom = [x for x in range(n_src) if mask >> x & 1]
        for img in permutations(range(n_dst), len(dom)):
            f = [-1] * n_src
            for x, y in zip(dom, img):
                f[x] = y
            out.append(tuple(f))
    return out


def compose_partial(g: tuple[int, ...], f: tuple[int, ...]) -> tuple[int, ...]:
    """g after f: x -> g(f(x))."""
    return tuple(-1 if y == -1 else g[y] for y in f)


def invert_partial(f: tuple[int, ...], n_dst: int) -> tuple[int, ...]:
    out = [-1] * n_dst
    for x, y in enumerate(f):
        if y != -1:
            out[y] = x
    return tuple(out)


def symmetric_inverse_monoid(n: int) -> InverseSemigroup:
    if n > 4 or n < 0:
        raise SizeLimit(f"I_n only supported for 0 <= n <= 4, got {n}")
    elems = partial_injections(n, n)
    idx = {f: i for i, f in enumerate(elems)}
    rows = [[idx[compose_partial(a, b)] for b in elems] for a in elems]
    S = recognize_inverse(MulTable.of(rows), f"I{n}", tuple(elems))
    ensure(all(elems[S.inv[i]] == invert_partial(f, n) for i, f in enumerate(elems)),
           "I_n inverse is not the relational inverse")
    return S


# small generators ------------------------------------------------------------

def chain(n: int) -> InverseSemigroup:
    return recognize_inverse([[min(a, b) for b in range(n)] for a in range(n)], f"E{n}")


def cyclic_group(n: int) -> InverseSemigroup:
    return recognize_inverse([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}")


def brandt(k: int) -> InverseSemigroup:
    """Brandt semigroup over the trivial group: 0 plus matrix units e_ij."""
    units = [(i, j) for i in range(k) for j in range(k)]
    idx = {u: x + 1 for x, u in enumerate(units)}
    rows = [[0] * (len(units) + 1)]
    for (i, j) in units:
        row = [0]
        for (a, b) in units:
            row.append(idx[(i, b)] if j == a else 0)
        rows.append(row)
    labels = ("0",) + tuple(f"e{i}{j}" for i, j in units)
    return recognize_inverse(rows, f"B{k}", labels)


def trivial_group() -> InverseSemigroup:
    return recognize_inverse([[0]], "T1")


def empty_semigroup(name: str = "empty") -> InverseSemigroup:
    return recognize_inverse(MulTable(0, ()), name)


def semigroup_fixtures() -> dict[str, InverseSemigroup]:
    """Shared anchors used throughout the tests and by ``verify``."""
    B2 = recognize_inverse(
        [
            [0, 0, 0, 0, 0],
            [0, 1, 2, 0, 0],
            [0, 0, 0, 1, 2],
            [0, 3, 4, 0, 0],
            [0, 0, 0, 3, 4],
        ],
        "B2",
        ("0", "e11", "e12", "e21", "e22"),
    )
    return {
        "T1": trivial_group(),
        "E2": recognize_inverse([[0, 0], [0, 1]], "E2"),
        "Z2": cyclic_group(2),
        "Z3": cyclic_group(3),
        "E3": chain(3),
        "I1": symmetric_inverse_monoid(1),
        "I2": symmetric_inverse_monoid(2),
        "B2": B2,
    }
