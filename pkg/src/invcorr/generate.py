"""Generators: random regular sets, exhaustive left inverse G-sets, single-entry mutations."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import permutations
from typing import Iterator

from .inverse_set import (
    LeftSet,
    PartialMoritaEquivalence,
    RightSet,
    check_left_inverse,
    check_left_regular,
    direct_sum,
    restrict_right_set,
    right_ideal_set,
    semigroup_as_right_set,
)
from .rees import PartialMcAlisterFunction
from .semigroup import InverseSemigroup, MulTable


# random regular sets ----------------------------------------------------------------

def inflate(U: RightSet, copies: int) -> RightSet:
    """``copies`` disjoint copies of U sharing one pairing; regular, inverse only if copies == 1."""
    m = U.size
    action = [[c * m + x for x in U.action[u]] for c in range(copies) for u in range(m)]
    pairing = [[U.pairing[u][v] for _ in range(copies) for v in range(m)]
               for _ in range(copies) for u in range(m)]
    return RightSet(U.semigroup, action, pairing)


def action_closure(U: RightSet, seed) -> set[int]:
    out = set(seed)
    frontier = list(out)
    while frontier:
        u = frontier.pop()
        for x in U.action[u]:
            if x not in out:
                out.add(x)
                frontier.append(x)
    return out


def base_inverse_sets(T: InverseSemigroup) -> list[RightSet]:
    """T-as-set, its principal right ideals and (with a zero) one direct sum."""
    whole = semigroup_as_right_set(T)
    out = [whole]
    for t in range(T.order):
        out.append(right_ideal_set(T, [t]))
    if T.zero is not None and T.order > 1:
        out.append(direct_sum(whole, right_ideal_set(T, [T.idempotents[-1]])))
    return out


def random_regular_set(rng: random.Random, T: InverseSemigroup, max_size: int = 8) -> RightSet:
    """A right regular T-set of size <= max_size: an action-closed piece of an inflated inverse set."""
    bases = [U for U in base_inverse_sets(T) if 0 < U.size <= max_size]
    while True:
        U = rng.choice(bases)
        copies = rng.randint(1, max(1, max_size // U.size))
        big = inflate(U, copies)
        seed = rng.sample(range(big.size), rng.randint(1, min(3, big.size)))
        keep = action_closure(big, seed)
        if len(keep) <= max_size:
            return restrict_right_set(big, keep)


# left inverse G-sets ----------------------------------------------------------------

def _power(p: tuple[int, ...], k: int) -> tuple[int, ...]:
    out = tuple(range(len(p)))
    for _ in range(k):
        out = tuple(p[x] for x in out)
    return out


def cyclic_actions(G: InverseSemigroup, m: int) -> Iterator[list[list[int]]]:
    """Left actions of a cyclic group (element k = generator^k) on 0..m-1.

    ``action[u][k] = g^k . u``; the generator may act by any permutation p with p^|G| = id.
    """
    n = G.order
    for p in permutations(range(m)):
        if _power(p, n) == tuple(range(m)):
            powers = [_power(p, k) for k in range(n)]
            yield [[powers[k][u] for k in range(n)] for u in range(m)]


def _pairings(G: InverseSemigroup, action: list[list[int]]) -> Iterator[list[list[int]]]:
    """Pairing tables satisfying (L-i)-(L-iii) for a fixed group action, by propagation."""
    m, n = len(action), G.order
    P = [[-1] * m for _ in range(m)]

    def assign(u: int, v: int, g: int, trail: list) -> bool:
        stack = [(u, v, g)]
        while stack:
            a, b, x = stack.pop()
            if P[a][b] != -1:
                if P[a][b] != x:
                    return False
                continue
            P[a][b] = x
            trail.append((a, b))
            stack.append((b, a, G.inv[x]))
            for s in range(n):
                stack.append((action[a][s], b, G.mul(s, x)))
        return True

    cells = [(u, u) for u in range(m)] + [(u, v) for u in range(m) for v in range(m) if u != v]

    def rec(i: int) -> Iterator[list[list[int]]]:
        while i < len(cells) and P[cells[i][0]][cells[i][1]] != -1:
            i += 1
        if i == len(cells):
            yield [row[:] for row in P]
            return
        u, v = cells[i]
        for g in range(n):
            trail: list = []
            if assign(u, v, g, trail):
                yield from rec(i + 1)
            for a, b in trail:
                P[a][b] = -1

    yield from rec(0)


def left_inverse_group_sets(G: InverseSemigroup, max_size: int) -> Iterator[LeftSet]:
    """Every nonempty left inverse G-set on 0..m-1, m <= max_size, for a cyclic group G."""
    for m in range(1, max_size + 1):
        for action in cyclic_actions(G, m):
            for pairing in _pairings(G, action):
                U = LeftSet(G, action, pairing)
                if check_left_regular(U).ok and check_left_inverse(U).ok:
                    yield U


# mutations --------------------------------------------------------------------------

@dataclass(frozen=True)
class Mutation:
    subject: object
    table: str
    row: int
    col: int
    old: int
    new: int


def _flip(table, i: int, j: int, value: int):
    rows = [list(r) for r in table]
    rows[i][j] = value
    return rows


def mutation_targets(obj) -> list[tuple[str, int]]:
    """(table name, value bound) for each mutable table of a structure."""
    if isinstance(obj, InverseSemigroup):
        return [("table", obj.order)]
    if isinstance(obj, RightSet):
        return [("action", obj.size), ("pairing", obj.semigroup.order)]
    if isinstance(obj, PartialMoritaEquivalence):
        return [("left_action", obj.size), ("right_action", obj.size),
                ("left_pairing", obj.left_semigroup.order), ("right_pairing", obj.right_semigroup.order)]
    if isinstance(obj, PartialMcAlisterFunction):
        return [("p", obj.semigroup.order)]
    raise TypeError(f"cannot mutate {type(obj).__name__}")


def apply_mutation(obj, table: str, i: int, j: int, value: int):
    """A copy of ``obj`` with one table entry replaced; semigroups come back as a raw MulTable."""
    if isinstance(obj, InverseSemigroup):
        return MulTable.of(_flip(obj.table, i, j, value))
    return replace(obj, **{table: _flip(getattr(obj, table), i, j, value)})


def mutable_entries(subjects: dict) -> list[tuple[object, str, int, int, int]]:
    """(key, table, row, col, bound) for every entry that has another in-range value."""
    out = []
    for key, obj in subjects.items():
        for table, bound in mutation_targets(obj):
            if bound < 2:
                continue
            for i, row in enumerate(getattr(obj, table)):
                for j in range(len(row)):
                    out.append((key, table, i, j, bound))
    return out


def random_mutation(rng: random.Random, subjects: dict, entries=None) -> tuple[Mutation, object]:
    """A uniformly chosen table entry of some structure, set to a different in-range value."""
    entries = entries if entries is not None else mutable_entries(subjects)
    key, table, i, j, bound = rng.choice(entries)
    obj = subjects[key]
    old = getattr(obj, table)[i][j]
    new = rng.choice([x for x in range(bound) if x != old])
    return Mutation(key, table, i, j, old, new), apply_mutation(obj, table, i, j, new)


def all_single_mutations(obj) -> Iterator[tuple[str, int, int, int]]:
    for table, bound in mutation_targets(obj):
        rows = getattr(obj, table)
        for i, row in enumerate(rows):
            for j, old in enumerate(row):
                for new in range(bound):
                    if new != old:
                        yield table, i, j, new

