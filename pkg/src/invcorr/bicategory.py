"""Unitors, associators, coherence diagrams, the opposite set, and Morita certificates."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .adjointable import enumerate_K
from .correspondence import (
    CorrespondenceMap,
    InverseCorrespondence,
    TensorProduct,
    check_correspondence_map,
    compose_cmap,
    identity_cmap,
    identity_correspondence,
    is_non_degenerate,
    recover_partial_morita,
    tensor,
    tensor_map,
)
from .errors import (
    CertInvalid,
    Degenerate,
    InternalInconsistency,
    NotMorita,
    NotPartialMorita,
    ensure,
)
from .inverse_set import (
    PartialMoritaEquivalence,
    check_partial_morita,
    is_left_full,
    is_right_full,
)
from .report import AxiomReport


def opposite(m: PartialMoritaEquivalence) -> PartialMoritaEquivalence:
    """U~ from T to S: t.u~ = (u t*)~, u~.s = (s* u)~, pairings swapped."""
    S, T = m.left_semigroup, m.right_semigroup
    size = m.size
    left_action = [[m.right_action[u][T.inv[t]] for t in range(T.order)] for u in range(size)]
    right_action = [[m.left_action[u][S.inv[s]] for s in range(S.order)] for u in range(size)]
    labels = tuple(("~", x) for x in m.labels) if m.labels is not None else None
    out = PartialMoritaEquivalence(T, S, left_action, right_action, m.right_pairing, m.left_pairing, labels)
    rep = check_partial_morita(out)
    ensure(rep.ok, "opposite fails the partial Morita axioms", tuple(rep.failed()))
    return out


def _require_iso(sigma: CorrespondenceMap, what: str) -> CorrespondenceMap:
    rep = check_correspondence_map(sigma)
    ensure(rep.ok, f"{what} is not a correspondence map", tuple(rep.failed()))
    ensure(sigma.surjective, f"{what} is not surjective")
    return sigma


def left_unitor(c: InverseCorrespondence, source: TensorProduct | None = None) -> CorrespondenceMap:
    """S (x) U -> U, s (x) u -> s.u."""
    if not is_non_degenerate(c):
        raise Degenerate("the left unitor needs a non-degenerate correspondence")
    S = c.left_semigroup
    src = source or tensor(identity_correspondence(S), c)
    f = [-1] * src.size
    for s, u in product(range(S.order), range(c.size)):
        _put(f, src.elem(s, u), c.left_action[u][s], "left unitor")
    return _require_iso(CorrespondenceMap(src, c, tuple(f)), "left unitor")


def right_unitor(c: InverseCorrespondence, source: TensorProduct | None = None) -> CorrespondenceMap:
    """U (x) T -> U, u (x) t -> u.t."""
    T = c.right_semigroup
    src = source or tensor(c, identity_correspondence(T))
    f = [-1] * src.size
    for u, t in product(range(c.size), range(T.order)):
        _put(f, src.elem(u, t), c.right_set.action[u][t], "right unitor")
    return _require_iso(CorrespondenceMap(src, c, tuple(f)), "right unitor")


def associator(c1: InverseCorrespondence, c2: InverseCorrespondence, c3: InverseCorrespondence) -> CorrespondenceMap:
    """U1 (x) (U2 (x) U3) -> (U1 (x) U2) (x) U3."""
    inner_r = tensor(c2, c3)
    src = tensor(c1, inner_r)
    inner_l = tensor(c1, c2)
    dst = tensor(inner_l, c3)
    f = [-1] * src.size
    for u1, u2, u3 in product(range(c1.size), range(c2.size), range(c3.size)):
        _put(f, src.elem(u1, inner_r.elem(u2, u3)), dst.elem(inner_l.elem(u1, u2), u3), "associator")
    return _require_iso(CorrespondenceMap(src, dst, tuple(f)), "associator")


def _put(f: list[int], key: int, value: int, what: str) -> None:
    if f[key] == -1:
        f[key] = value
    elif f[key] != value:
        raise InternalInconsistency(f"{what} is not well defined", (key,))


def unitors_and_associator(c: InverseCorrespondence, c1: InverseCorrespondence,
                           c2: InverseCorrespondence, c3: InverseCorrespondence) -> dict[str, CorrespondenceMap]:
    return {
        "left_unitor": left_unitor(c),
        "right_unitor": right_unitor(c),
        "associator": associator(c1, c2, c3),
    }


def triangle_commutes(c1: InverseCorrespondence, c2: InverseCorrespondence) -> bool:
    """(rho (x) 1) after alpha equals 1 (x) lambda on U1 (x) (T (x) U2)."""
    T = c1.right_semigroup
    ident = identity_correspondence(T)
    alpha = associator(c1, ident, c2)
    rho = right_unitor(c1)
    lam = left_unitor(c2)
    target = tensor(c1, c2)
    lhs = compose_cmap(tensor_map(rho, identity_cmap(c2), alpha.target, target), alpha)
    rhs = tensor_map(identity_cmap(c1), lam, alpha.source, target)
    return lhs.map == rhs.map


def pentagon_commutes(c1, c2, c3, c4) -> bool:
    """Both paths U1(U2(U3U4)) -> ((U1U2)U3)U4 agree pointwise."""
    c34 = tensor(c3, c4)
    c12 = tensor(c1, c2)
    c23 = tensor(c2, c3)
    a1 = associator(c1, c2, c34)            # U1(U2(U3U4)) -> (U1U2)(U3U4)
    a2 = associator(c12, c3, c4)            # (U1U2)(U3U4) -> ((U1U2)U3)U4
    path_a = compose_cmap(a2, a1)
    inner = associator(c2, c3, c4)          # U2(U3U4) -> (U2U3)U4
    b1 = tensor_map(identity_cmap(c1), inner)
    b2 = associator(c1, c23, c4)            # U1((U2U3)U4) -> (U1(U2U3))U4
    b3 = tensor_map(associator(c1, c2, c3), identity_cmap(c4))
    path_b = compose_cmap(b3, compose_cmap(b2, b1))
    ensure(path_a.source.size == path_b.source.size and path_a.target.size == path_b.target.size,
           "pentagon paths have different endpoints")
    return path_a.map == path_b.map


def associator_natural(s1: CorrespondenceMap, s2: CorrespondenceMap, s3: CorrespondenceMap) -> bool:
    """alpha after (s1 (x) (s2 (x) s3)) equals ((s1 (x) s2) (x) s3) after alpha."""
    a_src = associator(s1.source, s2.source, s3.source)
    a_dst = associator(s1.target, s2.target, s3.target)
    left = tensor_map(s1, tensor_map(s2, s3))
    right = tensor_map(tensor_map(s1, s2), s3)
    return compose_cmap(a_dst, left).map == compose_cmap(right, a_src).map


def unitors_natural(sigma: CorrespondenceMap) -> bool:
    """lambda and rho commute with sigma (sigma between non-degenerate correspondences)."""
    src, dst = sigma.source, sigma.target
    S, T = src.left_semigroup, src.right_semigroup
    lam_ok = (compose_cmap(sigma, left_unitor(src)).map
              == compose_cmap(left_unitor(dst), tensor_map(identity_cmap(identity_correspondence(S)), sigma)).map)
    rho_ok = (compose_cmap(sigma, right_unitor(src)).map
              == compose_cmap(right_unitor(dst), tensor_map(sigma, identity_cmap(identity_correspondence(T)))).map)
    return lam_ok and rho_ok


# Morita decisions --------------------------------------------------------------------

@dataclass(frozen=True)
class MoritaVerdict:
    verdict: str  # MORITA | PARTIAL_ONLY | NEITHER
    reasons: tuple[str, ...]
    structure: PartialMoritaEquivalence | None = None

    def __str__(self) -> str:
        return self.verdict if not self.reasons else f"{self.verdict} ({'; '.join(self.reasons)})"


def check_morita(m) -> MoritaVerdict:
    """Decide Morita via: theta is an isomorphism onto K(U) and U is right full."""
    if isinstance(m, PartialMoritaEquivalence):
        rep = check_partial_morita(m)
        if not rep.ok:
            return MoritaVerdict("NEITHER", tuple(f"violates {a}" for a in sorted(rep.failed())))
        M = m
        c = m.correspondence()
    else:
        c = m
        try:
            M = recover_partial_morita(c)
        except NotPartialMorita as e:
            return MoritaVerdict("NEITHER", (f"not a partial Morita equivalence: {e.reason}",))
    U = c.right_set
    S = c.left_semigroup
    thetas = [c.theta(s) for s in range(S.order)]
    K = {k.fwd for k in enumerate_K(U, U)}
    reasons = []
    if len(set(thetas)) != S.order:
        reasons.append("theta is not injective")
    if set(thetas) != K:
        reasons.append("theta(S) != K(U)")
    if not is_right_full(U):
        reasons.append("not right full")
    by_corollary = not reasons
    by_definition = is_left_full(M.left_set()) and is_right_full(M.right_set())
    ensure(by_corollary == by_definition, "Morita criteria disagree")
    return MoritaVerdict("MORITA" if by_corollary else "PARTIAL_ONLY", tuple(reasons), M)


@dataclass(frozen=True)
class EquivalenceCertificate:
    U: InverseCorrespondence
    V: InverseCorrespondence
    iota1: CorrespondenceMap  # U (x) V -> S
    iota2: CorrespondenceMap  # V (x) U -> T


def morita_to_certificate(m: PartialMoritaEquivalence, require: bool = True) -> EquivalenceCertificate:
    """Certificate (U, U~, iota1, iota2).

    With ``require=False`` the Morita precondition is not checked up front; the
    construction is attempted and rejected only if a map fails verification.
    """
    if require:
        v = check_morita(m)
        if v.verdict != "MORITA":
            raise NotMorita(f"not a Morita equivalence: {v}")
    S, T = m.left_semigroup, m.right_semigroup
    U = m.correspondence()
    V = opposite(m).correspondence()
    UV, VU = tensor(U, V), tensor(V, U)
    IS, IT = identity_correspondence(S), identity_correspondence(T)
    f1 = [-1] * UV.size
    for u1, u in product(range(m.size), repeat=2):
        _put(f1, UV.elem(u1, u), m.left_pairing[u1][u], "iota1")
    f2 = [-1] * VU.size
    for u, u1 in product(range(m.size), repeat=2):
        _put(f2, VU.elem(u, u1), m.right_pairing[u][u1], "iota2")
    iota1 = CorrespondenceMap(UV, IS, tuple(f1))
    iota2 = CorrespondenceMap(VU, IT, tuple(f2))
    for name, iota in (("iota1", iota1), ("iota2", iota2)):
        rep = check_correspondence_map(iota)
        if not rep.ok:
            raise NotMorita(f"{name} is not a correspondence map: {sorted(rep.failed())}")
        if not iota.surjective:
            raise NotMorita(f"{name} is not surjective (pairing not full)")
    return EquivalenceCertificate(U, V, iota1, iota2)


def verify_certificate(cert: EquivalenceCertificate) -> AxiomReport:
    rep = AxiomReport()
    U, V = cert.U, cert.V
    S, T = U.left_semigroup, U.right_semigroup
    if not (V.left_semigroup.same_table(T) and V.right_semigroup.same_table(S)):
        rep.add("composable")
        return rep
    for name, iota, first, second, base in (("iota1", cert.iota1, U, V, S), ("iota2", cert.iota2, V, U, T)):
        expected = tensor(first, second)
        src = iota.source
        if not isinstance(src, TensorProduct) or src.class_of != expected.class_of or src.right_set != expected.right_set:
            rep.add(f"{name} source")
            continue
        ident = identity_correspondence(base)
        if iota.target.right_set != ident.right_set or iota.target.left_action != ident.left_action:
            rep.add(f"{name} target")
            continue
        for v in check_correspondence_map(iota).violations:
            rep.add(f"{name} {v.axiom}", *v.witness)
        if not iota.surjective:
            rep.add(f"{name} surjective")
    return rep


def certificate_to_morita(cert: EquivalenceCertificate) -> PartialMoritaEquivalence:
    """Morita structure on U from a verified certificate."""
    U, V = cert.U, cert.V
    if not (is_non_degenerate(U) and is_non_degenerate(V)):
        raise Degenerate("certificate correspondences must be non-degenerate")
    rep = verify_certificate(cert)
    if not rep.ok:
        raise CertInvalid(f"certificate fails: {sorted(rep.failed())}")
    S = U.left_semigroup
    RU = U.right_set
    VU = cert.iota2.source
    rows = {RU.pairing[x]: x for x in range(RU.size)}
    phi = []
    for v in range(V.size):
        want = tuple(cert.iota2.map[VU.elem(v, u)] for u in range(RU.size))
        x = rows.get(want)
        if x is None:
            raise CertInvalid("no element of U represents iota2(v (x) -)", (v,))
        phi.append(x)
    if len(set(phi)) != RU.size:
        raise CertInvalid("Phi: V -> U is not surjective")
    thetas = [U.theta(s) for s in range(S.order)]
    if len(set(thetas)) != S.order:
        raise CertInvalid("theta_U is not injective")
    theta_inv = {th: s for s, th in enumerate(thetas)}
    pre: list[list[int]] = [[] for _ in range(RU.size)]
    for v, x in enumerate(phi):
        pre[x].append(v)
    left_pairing = []
    for u1 in range(RU.size):
        row = []
        for u2 in range(RU.size):
            vals = {V.right_set.pairing[v1][v2] for v1 in pre[u1] for v2 in pre[u2]}
            ensure(len(vals) == 1, "left pairing depends on the choice of preimages", (u1, u2))
            s = vals.pop()
            ensure(theta_inv.get(RU.omega(u1, u2)) == s, "theta(<v1|v2>) != omega", (u1, u2))
            row.append(s)
        left_pairing.append(row)
    M = PartialMoritaEquivalence(S, RU.semigroup, U.left_action, RU.action, left_pairing, RU.pairing, U.labels)
    rep = check_partial_morita(M)
    ensure(rep.ok, "certificate structure fails the partial Morita axioms", tuple(rep.failed()))
    ensure(check_morita(M).verdict == "MORITA", "certificate structure is not Morita")
    return M
