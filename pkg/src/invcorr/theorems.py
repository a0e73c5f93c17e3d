"""Executable theorem suite: every structural result checked on finite instances.

``verify`` runs the theorems of one scope (or all) over a pool of structures
and returns one outcome per (theorem, subject).  Structures that fail their
basic axioms are reported once and excluded from later theorems.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import combinations_with_replacement, islice, product
from typing import Callable

from . import fixtures as fx
from .adjointable import (
    K_semigroup,
    L_semigroup,
    adjointable_biset,
    compose,
    enumerate_L,
    morita_from_set,
    rank_one,
)
from .bicategory import (
    associator,
    associator_natural,
    certificate_to_morita,
    check_morita,
    left_unitor,
    morita_to_certificate,
    opposite,
    pentagon_commutes,
    right_unitor,
    triangle_commutes,
    unitors_natural,
    verify_certificate,
)
from .correspondence import (
    InverseCorrespondence,
    check_correspondence,
    compose_cmap,
    from_hom,
    hom_tensor_iso,
    identity_cmap,
    identity_correspondence,
    invert_cmap,
    is_non_degenerate,
    recover_partial_morita,
    tensor,
    tensor_partial_morita,
)
from .errors import InvCorrError, SizeLimit
from .generate import left_inverse_group_sets
from .inverse_set import (
    PartialMoritaEquivalence,
    RightSet,
    check_left_inverse,
    check_partial_morita,
    check_right_inverse,
    check_right_regular,
    enlargement_set,
    find_set_isomorphism,
    inverse_conditions,
    is_morita,
    is_right_full,
    semigroup_as_left_set,
    semigroup_as_right_set,
    set_order_conditions,
)
from .multiplier import all_extensions, extend_hom, idealizer, multiplier, verify_kasparov
from .rees import (
    PartialMcAlisterFunction,
    gamma_is_minimum,
    inverse_rees,
    inverse_set_from_p,
    mcalister_from_set,
    mcalister_report,
    mf5_holds,
    regular_rees,
    roundtrip_checks,
    theta_into_K,
)
from .semigroup import (
    InverseSemigroup,
    SemigroupHom,
    TwoSidedIdeal,
    associativity_failures,
    check_hom,
    find_homomorphisms,
    find_isomorphism,
    ideal_closure,
    inverse_law_failures,
    is_essential_ideal,
    is_ideal,
    order_conditions,
    recognize_inverse,
    restrict_hom_ideal_agreement,
    right_cancel_failures,
)

SCOPES = ("core", "sets", "adjointable", "correspondence", "bicategory", "multiplier", "rees")


@dataclass(frozen=True)
class Skip:
    """Returned by a check whose hypotheses do not hold for the subject."""
    reason: str



@dataclass(frozen=True)
class Outcome:
    scope: str
    theorem: str
    subject: str
    status: str            # pass | fail | skip
    witness: tuple = ()
    detail: str = ""


@dataclass
class Pool:
    semigroups: dict = field(default_factory=dict)        # InverseSemigroup or raw MulTable
    sets: dict = field(default_factory=dict)
    morita: dict = field(default_factory=dict)
    correspondences: dict = field(default_factory=dict)
    mcalister: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    group_sets: bool = False

    def merge(self, other: "Pool") -> "Pool":
        return Pool(*(dict(getattr(self, k), **getattr(other, k))
                      for k in ("semigroups", "sets", "morita", "correspondences", "mcalister", "homs")),
                    group_sets=self.group_sets or other.group_sets)


def builtin_pool() -> Pool:
    return Pool(dict(fx.semigroups()), dict(fx.sets()), dict(fx.morita_fixtures()),
                dict(fx.correspondences()), dict(fx.mcalister_functions()), dict(fx.homomorphisms()),
                group_sets=True)


def mutation_pool(base: Pool, kind: str, name: str, obj) -> Pool:
    """A pool holding one mutated structure.

    A mutated semigroup table is paired with every structure of ``base`` built
    over the original table, re-pointed at the mutated one, since those
    structures no longer fit it.
    """
    pool = Pool(**{kind: {name: obj}})
    if kind != "semigroups":
        return pool
    original = base.semigroups[name]
    try:
        new = recognize_inverse(obj, name, original.labels)
    except InvCorrError:
        return pool

    def swap(S):
        return new if S.same_table(original) else S

    for n, U in base.sets.items():
        if U.semigroup.same_table(original):
            pool.sets[n] = replace(U, semigroup=new)
    for n, M in base.morita.items():
        L, R = swap(M.left_semigroup), swap(M.right_semigroup)
        if L is new or R is new:
            pool.morita[n] = replace(M, left_semigroup=L, right_semigroup=R)
    for n, pm in base.mcalister.items():
        if pm.semigroup.same_table(original):
            pool.mcalister[n] = replace(pm, semigroup=new)
    return pool


def _witness(x) -> tuple:
    if isinstance(x, tuple):
        return tuple(_witness(y) if isinstance(y, tuple) else y for y in x)
    return (x,)


class _Runner:
    def __init__(self, scope_filter: set[str]):
        self.scopes = scope_filter
        self.outcomes: list[Outcome] = []

    def wants(self, scope: str) -> bool:
        return scope in self.scopes

    def run(self, scope: str, theorem: str, subject: str, fn: Callable, *args) -> bool:
        """Record one outcome; returns True unless the theorem failed."""
        if scope not in self.scopes:
            return True
        try:
            res = fn(*args)
        except SizeLimit as e:
            self.outcomes.append(Outcome(scope, theorem, subject, "skip", (), f"{e.code}: {e}"))
            return True
        except InvCorrError as e:
            w = _witness(e.witness) if e.witness is not None else ()
            self.outcomes.append(Outcome(scope, theorem, subject, "fail", w, f"{e.code}: {e}"))
            return False
        except Exception as e:  # a crash on corrupted input counts as a failure
            self.outcomes.append(Outcome(scope, theorem, subject, "fail", (), f"{type(e).__name__}: {e}"))
            return False
        if isinstance(res, Skip):
            self.outcomes.append(Outcome(scope, theorem, subject, "skip", (), res.reason))
            return True
        if res is True or (isinstance(res, list) and not res):
            self.outcomes.append(Outcome(scope, theorem, subject, "pass"))
            return True
        w = _witness(res[0]) if isinstance(res, list) else ()
        self.outcomes.append(Outcome(scope, theorem, subject, "fail", w))
        return False


# core ---------------------------------------------------------------------------------

def _recognize(table) -> list:
    t = table.base if isinstance(table, InverseSemigroup) else table
    bad = list(islice(associativity_failures(t), 1))
    if bad:
        return bad
    recognize_inverse(t)
    return []


def _ideal_idempotents_commute(S: InverseSemigroup) -> list:
    out = []
    for s in range(S.order):
        I = ideal_closure(S, [s])
        for e in S.idempotents:
            for f in S.idempotents:
                if f in I and S.mul(e, f) != S.mul(f, e):
                    out.append((s, e, f))
    return out


def _order_is_compatible_partial_order(S: InverseSemigroup) -> list:
    n = S.order
    conds = [[order_conditions(S, s, t) for t in range(n)] for s in range(n)]
    out = [(s, t) for s in range(n) for t in range(n) if len(set(conds[s][t])) != 1]
    if out:
        return out
    leq = [[conds[s][t][0] for t in range(n)] for s in range(n)]
    for s in range(n):
        if not leq[s][s]:
            out.append(("reflexive", s))
    for s, t in product(range(n), repeat=2):
        if s != t and leq[s][t] and leq[t][s]:
            out.append(("antisymmetric", s, t))
        if leq[s][t]:
            if not leq[S.inv[s]][S.inv[t]]:
                out.append(("star", s, t))
            for x in range(n):
                if leq[t][x] and not leq[s][x]:
                    out.append(("transitive", s, t, x))
                if not leq[S.mul(s, x)][S.mul(t, x)] or not leq[S.mul(x, s)][S.mul(x, t)]:
                    out.append(("compatible", s, t, x))
    return out


def _essential_forms_agree(S: InverseSemigroup) -> bool:
    for s in range(S.order):
        is_essential_ideal(S, ideal_closure(S, [s]))
    return True


def all_ideals(S: InverseSemigroup) -> list[frozenset[int]]:
    """Every two-sided ideal, as unions of principal ideals (including the empty one)."""
    principal = {ideal_closure(S, [s]).members for s in range(S.order)}
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for I in frontier:
            for P in principal:
                J = I | P
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda I: (len(I), sorted(I)))


def _ideals_coincide(h: SemigroupHom) -> list:
    S = h.source
    ideals = [I for I in all_ideals(S) if len({h(x) for x in I}) == len(I)]
    out = []
    for I1, I2 in combinations_with_replacement(ideals, 2):
        if {h(x) for x in I1} != {h(x) for x in I2}:
            continue
        if not restrict_hom_ideal_agreement(S, h.target, h, TwoSidedIdeal(S, I1), TwoSidedIdeal(S, I2)):
            out.append((tuple(sorted(I1)), tuple(sorted(I2))))
    return out


# sets ---------------------------------------------------------------------------------

def _regular_inverse(U: RightSet) -> list:
    rep = check_right_regular(U)
    if rep.ok:
        rep = check_right_inverse(U)
    return [(v.axiom, *v.witness) for v in rep.violations]


def _four_forms_agree(U: RightSet) -> list:
    conds = inverse_conditions(U)
    return [] if len({not c for c in conds}) == 1 else [tuple(len(c) for c in conds)]


def _pairing_basics(U: RightSet) -> list:
    T = U.semigroup
    return [(u,) for u in range(U.size) if not T.is_idempotent(U.pairing[u][u])]


def _non_degenerate_lemma(U: RightSet) -> list:
    P = U.pairing
    out = [(u, v) for u, v in product(range(U.size), repeat=2)
           if u != v and P[u][u] == P[u][v] == P[v][v]]
    rows: dict = {}
    for u in range(U.size):
        if P[u] in rows:
            out.append((rows[P[u]], u))
        rows[P[u]] = u
    return out


def _set_order(U: RightSet) -> list:
    m, n = U.size, U.semigroup.order
    conds = [[set_order_conditions(U, u, v) for v in range(m)] for u in range(m)]
    out = [(u, v) for u in range(m) for v in range(m) if len(set(conds[u][v])) != 1]
    if out:
        return out
    leq = [[conds[u][v][0] for v in range(m)] for u in range(m)]
    for u, v in product(range(m), repeat=2):
        if u != v and leq[u][v] and leq[v][u]:
            out.append(("antisymmetric", u, v))
        if leq[u][v]:
            for t in range(n):
                if not leq[U.action[u][t]][U.action[v][t]]:
                    out.append(("monotone", u, v, t))
            for w in range(m):
                if leq[v][w] and not leq[u][w]:
                    out.append(("transitive", u, v, w))
    out += [("reflexive", u) for u in range(m) if not leq[u][u]]
    return out


def _self_iso(U: RightSet) -> bool:
    return find_set_isomorphism(U, U) is not None


def _morita_axioms(M: PartialMoritaEquivalence) -> list:
    return [(v.axiom, *v.witness) for v in check_partial_morita(M).violations]


def _morita_both_inverse(M: PartialMoritaEquivalence) -> list:
    return [(v.axiom, *v.witness)
            for v in check_left_inverse(M.left_set()).violations + check_right_inverse(M.right_set()).violations]


def _group_sets(G: InverseSemigroup, max_size: int) -> list:
    target = semigroup_as_left_set(G)
    return [(U.size,) for U in left_inverse_group_sets(G, max_size) if find_set_isomorphism(U, target) is None]


# adjointable --------------------------------------------------------------------------

def _KL(U: RightSet, budget) -> bool:
    K_semigroup(U, budget, check_ideal=True)
    return True


def _phi_omega(U: RightSet, budget) -> list:
    out = []
    for phi in enumerate_L(U, U, budget):
        for v, u in product(range(U.size), repeat=2):
            w = rank_one(U, U, v, u)
            if compose(phi, w).fwd != U.omega(phi.fwd[v], u):
                out.append(("phi omega", v, u))
            if compose(w, phi).fwd != U.omega(v, phi.adj[u]):
                out.append(("omega phi", v, u))
    return out


def _idempotents_vs_omega(U: RightSet, budget) -> list:
    L = L_semigroup(U, budget)
    S = L.semigroup
    out = []
    for u in range(U.size):
        w = L.get(U.omega(u, u))
        if w is None:
            out.append(("omega missing", u))
            continue
        for e in S.idempotents:
            if S.mul(e, w) != S.mul(w, e):
                out.append(("commute", u, e))
        for phi in range(S.order):
            x = S.mul(S.mul(S.inv[phi], phi), w)
            if not S.is_idempotent(x) or S.mul(x, w) != S.mul(w, x):
                out.append(("phi* phi omega", u, phi))
    for e in S.idempotents:
        f = L.maps[e].fwd
        P, A = U.pairing, U.action
        for u in range(U.size):
            vals = {f[u], A[u][P[u][f[u]]], A[u][P[f[u]][u]], A[u][P[f[u]][f[u]]]}
            if len(vals) != 1:
                out.append(("idempotent phi", e, u))
    return out


def _biset(U: RightSet, V: RightSet, kind: str, budget) -> list:
    M = adjointable_biset(U, V, kind, budget)
    return [(v.axiom, *v.witness) for v in check_partial_morita(M).violations]


# correspondences ----------------------------------------------------------------------

def _corr_axioms(c: InverseCorrespondence) -> list:
    return [(v.axiom, *v.witness) for v in check_correspondence(c).violations]


def _left_action_basics(c: InverseCorrespondence, budget) -> list:
    S = c.left_semigroup
    L = L_semigroup(c.right_set, budget)
    out = []
    for e in S.idempotents:
        for i in L.semigroup.idempotents:
            f = L.maps[i].fwd
            for u in range(c.size):
                if c.left_action[f[u]][e] != f[c.left_action[u][e]]:
                    out.append((e, i, u))
    return out


def _identity_tensors(c: InverseCorrespondence) -> bool:
    """Tensoring with identities is sound; the unitors are invertible correspondence maps."""
    tensor(identity_correspondence(c.left_semigroup), c)
    tensor(c, identity_correspondence(c.right_semigroup))
    if not is_non_degenerate(c):
        return Skip("degenerate")
    for sigma in (left_unitor(c), right_unitor(c)):
        inv = invert_cmap(sigma)
        if compose_cmap(inv, sigma).map != tuple(range(sigma.source.size)):
            return False
        if compose_cmap(sigma, inv).map != tuple(range(sigma.target.size)):
            return False
    return unitors_natural(identity_cmap(c))


def _tensor_sound(c1: InverseCorrespondence, c2: InverseCorrespondence) -> bool:
    W = tensor(c1, c2)
    if is_right_full(W.right_set) and not is_right_full(c2.right_set):
        return False
    return True


def _hom_iso(h1: SemigroupHom, h2: SemigroupHom) -> bool:
    hom_tensor_iso(h1, h2)
    return True


def _recovers_left_pairing(M: PartialMoritaEquivalence) -> bool:
    return recover_partial_morita(M.correspondence()).left_pairing == M.left_pairing


# bicategory ---------------------------------------------------------------------------

def _morita_iff_certificate(M: PartialMoritaEquivalence) -> list:
    verdict = check_morita(M).verdict
    try:
        cert = morita_to_certificate(M, require=False)
    except InvCorrError:
        cert = None
    if cert is not None and not verify_certificate(cert).ok:
        return [("certificate fails verification",)]
    if (verdict == "MORITA") != (cert is not None):
        return [("verdict", verdict)]
    if cert is not None:
        back = certificate_to_morita(cert)
        if (back.left_pairing, back.left_action, back.right_action, back.right_pairing) != (
                M.left_pairing, M.left_action, M.right_action, M.right_pairing):
            return [("round trip",)]
    return []


def _opposite(M: PartialMoritaEquivalence) -> list:
    O = opposite(M)
    out = [(v.axiom, *v.witness) for v in check_partial_morita(O).violations]
    if is_morita(O) != is_morita(M):
        out.append(("symmetry",))
    if opposite(O) != M:
        out.append(("involution",))
    return out


def _reflexive(S: InverseSemigroup) -> bool:
    return check_morita(enlargement_set(S, range(S.order))).verdict == "MORITA"


def _transitive(M1: PartialMoritaEquivalence, M2: PartialMoritaEquivalence) -> bool:
    return check_morita(tensor_partial_morita(M1, M2)).verdict == "MORITA"


def _associator_invertible(c1, c2, c3) -> bool:
    a = associator(c1, c2, c3)
    inv = invert_cmap(a)
    return (compose_cmap(inv, a).map == tuple(range(a.source.size))
            and associator_natural(identity_cmap(c1), identity_cmap(c2), identity_cmap(c3)))


def chains(pool: dict[str, InverseCorrespondence], count: int, length: int, seed: int = 0) -> list[tuple[str, ...]]:
    """Deterministic random walks through composable non-degenerate correspondences."""
    names = [k for k, c in pool.items() if is_non_degenerate(c) and c.size > 0]
    nxt = {a: [b for b in names if pool[a].right_semigroup.same_table(pool[b].left_semigroup)] for a in names}
    rng = random.Random(seed)
    out: list[tuple[str, ...]] = []
    tries = 0
    while len(out) < count and tries < 50 * count and names:
        tries += 1
        walk = [rng.choice(names)]
        while len(walk) < length and nxt[walk[-1]]:
            walk.append(rng.choice(nxt[walk[-1]]))
        if len(walk) == length and tuple(walk) not in out:
            out.append(tuple(walk))
    return out


def _spread(items: list, cap: int) -> list:
    if len(items) <= cap:
        return items
    step = len(items) / cap
    return [items[int(i * step)] for i in range(cap)]


# multiplier ---------------------------------------------------------------------------

def _multiplier_of_monoid(S: InverseSemigroup, budget) -> list:
    M = multiplier(S, budget)
    if S.identity is None:
        return Skip("no identity")
    if sorted(M.embedding) != list(range(M.semigroup.order)):
        return [("lambda not onto",)]
    return [] if find_isomorphism(S, M.semigroup) is not None else [("no isomorphism",)]


def _lambda_lemma(S: InverseSemigroup, budget) -> list:
    M = multiplier(S, budget)
    L = M.carrier
    out = []
    seen = {}
    for i, phi in enumerate(L.maps):
        for s in range(S.order):
            lam = L.maps[M.embedding[s]]
            if tuple(phi.fwd[x] for x in lam.fwd) != L.maps[M.embedding[phi.fwd[s]]].fwd:
                out.append(("phi lambda", i, s))
            t = S.inv[phi.adj[S.inv[s]]]
            if tuple(lam.fwd[x] for x in phi.fwd) != L.maps[M.embedding[t]].fwd:
                out.append(("lambda phi", i, s))
        key = tuple(phi.fwd[s] for s in range(S.order))
        if key in seen:
            out.append(("cancellation", seen[key], i))
        seen[key] = i
    return out


def _essential_extension(S: InverseSemigroup, S_tilde: InverseSemigroup, h: SemigroupHom, budget) -> list:
    c = identity_correspondence(S)
    ext = extend_hom(c, S_tilde, h.map)
    injective = len(set(ext)) == S_tilde.order
    if injective != is_essential_ideal(S_tilde, h.image()):
        return [("essential iff injective",)]
    if len(all_extensions(c, S_tilde, h.map, budget)) != 1:
        return [("uniqueness",)]
    return []


def _idealizer(h: SemigroupHom, budget) -> list:
    c = from_hom(h)
    S = h.source
    if len({c.theta(s) for s in range(S.order)}) != S.order:
        return Skip("theta not injective")
    M = multiplier(S, budget)
    L = L_semigroup(c.right_set, budget)
    ext = extend_hom(c, M.semigroup, M.embedding)
    image = sorted({L.index_of(f) for f in ext})
    if len(image) != M.semigroup.order:
        return [("extension not injective",)]
    ideal = [L.index_of(c.theta(s)) for s in range(S.order)]
    return [] if image == sorted(idealizer(L.semigroup, ideal)) else [("image differs from idealizer",)]


def _kasparov(U: RightSet, budget) -> bool:
    verify_kasparov(U, budget)
    return True


# rees ---------------------------------------------------------------------------------

def _mcalister_axioms(pm: PartialMcAlisterFunction) -> list:
    rep = mcalister_report(pm.semigroup, pm.p)
    out = [(v.axiom, *v.witness) for v in rep.violations]
    if not out and mf5_holds(pm.semigroup, pm.p) != pm.is_full_MF:
        out.append(("(MF5) flag",))
    return out


def _rm_and_im(pm: PartialMcAlisterFunction) -> bool:
    regular_rees(pm)
    inverse_rees(pm)
    return True


def _gamma_minimum(pm: PartialMcAlisterFunction) -> bool:
    res = gamma_is_minimum(pm)
    return Skip("|RM| > 12") if res is None else res


def _up(pm: PartialMcAlisterFunction) -> bool:
    theta_into_K(inverse_set_from_p(pm))
    return True


def _pU(U: RightSet) -> bool:
    mcalister_from_set(U)
    return True


def _roundtrip(U: RightSet) -> list:
    return [(v.axiom, *v.witness) for v in roundtrip_checks(U).violations]


def _al_instance(M: PartialMoritaEquivalence) -> list:
    if not is_morita(M):
        return Skip("not Morita")
    pm = mcalister_from_set(M.right_set())
    return [] if find_isomorphism(inverse_rees(pm).semigroup, M.left_semigroup) is not None else [("no isomorphism",)]


# driver -------------------------------------------------------------------------------

def verify(scope: str = "all", pool: Pool | None = None, budget: int | None = None, *,
           pair_cap: int = 60, chain_count: int = 12) -> list[Outcome]:
    if scope != "all" and scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; expected one of {('all',) + SCOPES}")
    pool = builtin_pool() if pool is None else pool
    R = _Runner(set(SCOPES) if scope == "all" else {scope})
    run = R.run
    gate = "core" if scope == "all" else scope

    # gates: structures failing their own axioms are reported and dropped
    sgs: dict[str, InverseSemigroup] = {}
    for name, S in pool.semigroups.items():
        if R.run(gate, "inverse semigroup recognition", name, _recognize, S):
            sgs[name] = S if isinstance(S, InverseSemigroup) else recognize_inverse(S, name)
    gate_sets = "sets" if scope == "all" else scope
    sets = {n: U for n, U in pool.sets.items() if R.run(gate_sets, "regular and inverse", n, _regular_inverse, U)}
    moritas = {n: M for n, M in pool.morita.items()
               if R.run(gate_sets, "partial Morita axioms", n, _morita_axioms, M)}
    gate_c = "correspondence" if scope == "all" else scope
    corrs = {n: c for n, c in pool.correspondences.items()
             if R.run(gate_c, "correspondence axioms", n, _corr_axioms, c)}
    gate_r = "rees" if scope == "all" else scope
    pms = {n: pm for n, pm in pool.mcalister.items()
           if R.run(gate_r, "(MF1)-(MF4) and the (MF5) flag", n, _mcalister_axioms, pm)}
    homs = {n: h for n, h in pool.homs.items() if check_hom(h)}

    for name, S in sgs.items():
        run("core", "inverse laws and commuting idempotents", name,
            lambda S=S: [(a, *w) for a, w in inverse_law_failures(S)])
        run("core", "ideal idempotents commute", name, _ideal_idempotents_commute, S)
        run("core", "right cancellation", name, right_cancel_failures, S)
        run("core", "natural order: four descriptions, compatible partial order", name,
            _order_is_compatible_partial_order, S)
        run("core", "essential ideal: left and right forms agree", name, _essential_forms_agree, S)
        run("bicategory", "Morita reflexive (identity biset)", name, _reflexive, S)
        run("multiplier", "M(S) = S for monoids", name, _multiplier_of_monoid, S, budget)
        run("multiplier", "lambda lemma", name, _lambda_lemma, S, budget)
        run("rees", "IM(T, T, p_T) recovers T", name,
            lambda S=S: find_isomorphism(inverse_rees(mcalister_from_set(semigroup_as_right_set(S))).semigroup, S)
            is not None)
    for name, h in homs.items():
        run("core", "ideals with equal injective image coincide", name, _ideals_coincide, h)

    for name, U in sets.items():
        run("sets", "four forms of (R-iv) agree", name, _four_forms_agree, U)
        run("sets", "<u|u> is idempotent", name, _pairing_basics, U)
        run("sets", "pairing separates points", name, _non_degenerate_lemma, U)
        run("sets", "order on U: descriptions agree, monotone partial order", name, _set_order, U)
        run("sets", "fingerprint isomorphism search finds the identity", name, _self_iso, U)
        run("sets", "U is Morita from K(U) to <U|U>", name, lambda U=U: bool(morita_from_set(U)))
        run("adjointable", "K(U), L(U) inverse; adjoint = inverse; K ideal; E(K) = omega_uu", name, _KL, U, budget)
        run("adjointable", "phi omega_{v,u} = omega_{phi v,u} and omega_{v,u} phi = omega_{v,phi+ u}", name,
            _phi_omega, U, budget)
        run("adjointable", "idempotents of L(U) against omega_{u,u}", name, _idempotents_vs_omega, U, budget)
        run("multiplier", "M(K(U)) = L(U)", name, _kasparov, U, budget)
        run("rees", "p_U is a partial McAlister function", name, _pU, U)
        run("rees", "round trips U_{p_U} = U, IM = K(U_p), IM(T,U,p_U) = K(U)", name, _roundtrip, U)
    if pool.group_sets:
        for gname in ("Z2", "Z3"):
            G = fx.semigroups()[gname]
            run("sets", "left inverse G-sets are isomorphic to G", f"{gname} carriers<=4", _group_sets, G, 4)

    set_pairs = [(a, b) for a, b in product(sets, repeat=2)
                 if sets[a].semigroup.same_table(sets[b].semigroup)]
    if R.wants("adjointable"):
        for a, b in _spread(set_pairs, pair_cap):
            for kind in ("L", "K"):
                run("adjointable", f"{kind}(U,V) is a partial Morita equivalence", f"{a},{b}",
                    _biset, sets[a], sets[b], kind, budget)

    for name, M in moritas.items():
        run("sets", "both inverse-set axiom suites hold", name, _morita_both_inverse, M)
        run("correspondence", "left pairing recovered from the correspondence", name, _recovers_left_pairing, M)
        run("bicategory", "Morita iff equivalence certificate", name, _morita_iff_certificate, M)
        run("bicategory", "opposite biset: symmetric and involutive", name, _opposite, M)
        run("rees", "IM(T, U, p_U) recovers S for Morita U", name, _al_instance, M)
    if R.wants("bicategory"):
        mor = [n for n, M in moritas.items() if is_morita(M)]
        pairs = [(a, b) for a, b in product(mor, repeat=2)
                 if moritas[a].right_semigroup.same_table(moritas[b].left_semigroup)]
        for a, b in _spread(pairs, pair_cap // 2):
            run("bicategory", "Morita transitive (tensor)", f"{a},{b}", _transitive, moritas[a], moritas[b])

    for name, c in corrs.items():
        run("correspondence", "e.phi(u) = phi(e.u) for idempotents", name, _left_action_basics, c, budget)
        run("bicategory", "unitors invertible and natural", name, _identity_tensors, c)
    if R.wants("correspondence"):
        cpairs = [(a, b) for a, b in product(corrs, repeat=2) if fx.composable(corrs[a], corrs[b])]
        for a, b in _spread(cpairs, pair_cap):
            run("correspondence", "tensor product sound; full tensor has full right factor", f"{a},{b}",
                _tensor_sound, corrs[a], corrs[b])
        hp = [(a, b) for a, b in product(homs, repeat=2)
              if homs[a].target.same_table(homs[b].source)]
        for a, b in _spread(hp, pair_cap // 3):
            run("correspondence", "U_t1 (x) U_t2 = U_{t2 t1}", f"{a},{b}", _hom_iso, homs[a], homs[b])
    if R.wants("bicategory"):
        for ch in chains(corrs, chain_count, 2, seed=1):
            run("bicategory", "triangle", ",".join(ch), triangle_commutes, corrs[ch[0]], corrs[ch[1]])
        for ch in chains(corrs, chain_count, 3, seed=2):
            run("bicategory", "associator invertible and natural", ",".join(ch), _associator_invertible,
                *(corrs[x] for x in ch))
        for ch in chains(corrs, chain_count, 4, seed=3):
            run("bicategory", "pentagon", ",".join(ch), pentagon_commutes, *(corrs[x] for x in ch))

    if R.wants("multiplier"):
        for big_name, big in sgs.items():
            for small_name, small in sgs.items():
                for k, h in enumerate(islice(find_homomorphisms(small, big, injective=True), 4)):
                    if is_ideal(big, h.image()):
                        run("multiplier", "extension along an ideal: unique; injective iff essential",
                            f"{small_name}->{big_name}#{k}", _essential_extension, small, big, h, budget)
        for name, h in homs.items():
            if h.injective:
                run("multiplier", "extension onto the idealizer", name, _idealizer, h, budget)

    for name, pm in pms.items():
        run("rees", "RM regular; gamma a congruence; IM inverse", name, _rm_and_im, pm)
        run("rees", "gamma is the least inverse congruence (|RM| <= 12)", name, _gamma_minimum, pm)
        run("rees", "U_p is a left full partial Morita equivalence; IM = K(U_p)", name, _up, pm)
    return R.outcomes


def summarize(outcomes: list[Outcome]) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "skip": 0}
    for o in outcomes:
        out[o.status] += 1
    return out
