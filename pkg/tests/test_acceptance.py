"""Acceptance gate: ten end-to-end criteria, each with a time limit.

Each test records one PASS/FAIL line, echoed again in the terminal summary.
"""

import random
import time
from itertools import product

from invcorr import fixtures as fx
from invcorr.adjointable import K_semigroup, L_semigroup, adjointable_biset
from invcorr.bicategory import (
    certificate_to_morita,
    check_morita,
    morita_to_certificate,
    pentagon_commutes,
    triangle_commutes,
    verify_certificate,
)
from invcorr.correspondence import (
    check_correspondence,
    hom_tensor_iso,
    identity_correspondence,
    is_non_degenerate,
    tensor,
)
from invcorr.errors import InvCorrError, SizeLimit
from invcorr.generate import left_inverse_group_sets, mutable_entries, random_mutation, random_regular_set
from invcorr.inverse_set import (
    check_partial_morita,
    check_right_inverse,
    check_right_regular,
    find_set_isomorphism,
    inverse_conditions,
    semigroup_as_left_set,
)
from invcorr.multiplier import all_extensions, double_centralizers, extend_hom, multiplier, verify_kasparov
from invcorr.rees import inverse_rees, inverse_set_from_p, roundtrip_checks
from invcorr.semigroup import (
    find_homomorphisms,
    find_isomorphism,
    is_essential_ideal,
    is_ideal,
)
from invcorr.theorems import builtin_pool, chains, mutation_pool, verify


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_01_four_forms_of_separation_agree(acceptance_line):
    F = fx.semigroups()
    rng = random.Random(2024)
    bases = [F[n] for n in ("E2", "Z2", "E3", "I2", "B2")]

    def run():
        verdicts = []
        disagreements = []
        for k in range(240):
            U = random_regular_set(rng, bases[k % len(bases)], max_size=8)
            assert U.size <= 8 and check_right_regular(U).ok
            forms = [not w for w in inverse_conditions(U)]
            if len(set(forms)) != 1:
                disagreements.append((k, forms))
            verdicts.append(forms[0])
        return verdicts, disagreements

    (verdicts, bad), dt = _timed(run)
    ok = not bad and len(verdicts) >= 200 and any(verdicts) and not all(verdicts)
    acceptance_line(1, "four (R-iv) forms agree on random regular sets", ok, dt, 10,
                    f"[{len(verdicts)} sets, {sum(verdicts)} inverse]")
    assert ok and dt < 10, bad[:3]


def test_02_K_and_L(acceptance_line):
    def run():
        checked, skipped, bad = 0, 0, []
        for name, U in fx.sets().items():
            try:
                K = K_semigroup(U, check_ideal=True)
                L = L_semigroup(U)
            except SizeLimit:
                skipped += 1
                continue
            for M in (K, L):
                S = M.semigroup
                for i, phi in enumerate(M.maps):
                    # the generalized inverse is the adjoint, read off independently
                    if M.maps[S.inv[i]].fwd != phi.adj:
                        bad.append((name, "inverse != adjoint", i))
            if not is_ideal(L.semigroup, K.embedding):
                bad.append((name, "K not an ideal"))
            idem = {K.maps[e].fwd for e in K.semigroup.idempotents}
            if idem != {U.omega(u, u) for u in range(U.size)}:
                bad.append((name, "E(K) != omega_uu"))
            checked += 1
        return checked, skipped, bad

    (checked, skipped, bad), dt = _timed(run)
    ok = not bad and checked > 0
    acceptance_line(2, "K(U), L(U) inverse; inverse = adjoint; K ideal; E(K) = omega_uu", ok, dt, 60,
                    f"[{checked} sets, {skipped} over budget]")
    assert ok and dt < 60, bad[:3]


def test_03_adjointable_bisets(acceptance_line):
    sets = fx.sets()
    pairs = [(a, b) for a, b in product(sets, repeat=2)
             if sets[a].semigroup.same_table(sets[b].semigroup) and sets[a].size and sets[b].size]

    def run():
        done, bad = 0, []
        for a, b in pairs:
            if done >= 40:
                break
            for kind in ("L", "K"):
                rep = check_partial_morita(adjointable_biset(sets[a], sets[b], kind))
                if not rep.ok:
                    bad.append((a, b, kind, sorted(rep.failed())))
            done += 1
        return done, bad

    (done, bad), dt = _timed(run)
    ok = not bad and done >= 20
    acceptance_line(3, "L(U,V) and K(U,V) are partial Morita equivalences", ok, dt, 60, f"[{done} pairs]")
    assert ok and dt < 60, bad[:3]


def test_04_tensor_soundness(acceptance_line):
    corrs = fx.correspondences()
    names = sorted(corrs)
    pairs = [(a, b) for a, b in product(names, repeat=2) if fx.composable(corrs[a], corrs[b])]
    rng = random.Random(4)
    sample = rng.sample(pairs, 80)
    homs = list(fx.homomorphisms().values())
    hom_pairs = [(h1, h2) for h1, h2 in product(homs, repeat=2) if h1.target.same_table(h2.source)]
    hom_sample = rng.sample(hom_pairs, 20)

    def run():
        bad = []
        for a, b in sample:
            W = tensor(corrs[a], corrs[b])  # asserts well-definedness on classes
            if not (check_right_regular(W.right_set).ok and check_right_inverse(W.right_set).ok):
                bad.append((a, b, "inverse set"))
            if not check_correspondence(W).ok:
                bad.append((a, b, "correspondence"))
            if is_non_degenerate(corrs[a]) and not is_non_degenerate(W):
                bad.append((a, b, "non-degeneracy"))
        for h1, h2 in hom_sample:
            hom_tensor_iso(h1, h2)
        return bad

    bad, dt = _timed(run)
    ok = not bad
    acceptance_line(4, "tensor products sound; U_t1 (x) U_t2 = U_{t2 t1}", ok, dt, 30,
                    f"[{len(sample)} pairs, {len(hom_sample)} hom pairs]")
    assert ok and dt < 30, bad[:3]


def _family(name: str) -> str:
    if name.startswith("id("):
        return "identity"
    if name.startswith("hom("):
        return "hom"
    if name.startswith("opp("):
        return "opposite"
    if "enlarge" in name or "corner" in name or "-self" in name:
        return "enlargement"
    return "other"


def test_05_coherence(acceptance_line):
    corrs = fx.correspondences()
    twos = chains(corrs, 15, 2, seed=5)
    fours = chains(corrs, 15, 4, seed=6)
    # make sure every family appears in the pentagon chains
    fours += [("id(B2)", "opp(B2-enlarge)", "B2-enlarge", "id(B2)"),
              ("hom(E2->B2#1)", "opp(B2-enlarge)", "B2-enlarge", "hom(B2->E3#0)")]

    def run():
        bad = [("triangle", ch) for ch in twos if not triangle_commutes(*(corrs[x] for x in ch))]
        bad += [("pentagon", ch) for ch in fours if not pentagon_commutes(*(corrs[x] for x in ch))]
        return bad

    bad, dt = _timed(run)
    families = {_family(x) for ch in twos + fours for x in ch}
    ok = not bad and len(twos) >= 10 and len(fours) >= 10 and \
        {"identity", "hom", "opposite", "enlargement"} <= families
    acceptance_line(5, "triangle and pentagon commute", ok, dt, 30, f"[{len(twos)} + {len(fours)} chains]")
    assert ok and dt < 30, bad[:3]


def test_06_morita_iff_certificate(acceptance_line):
    def run():
        bad, morita = [], 0
        for name, M in fx.morita_fixtures().items():
            verdict = check_morita(M).verdict
            try:
                cert = morita_to_certificate(M, require=False)
            except InvCorrError:
                cert = None
            if (verdict == "MORITA") != (cert is not None):
                bad.append((name, verdict))
                continue
            if cert is None:
                continue
            morita += 1
            if not verify_certificate(cert).ok:
                bad.append((name, "certificate"))
                continue
            back = certificate_to_morita(cert)
            if find_set_isomorphism(back.right_set(), M.right_set()) is None or \
                    back.left_pairing != M.left_pairing:
                bad.append((name, "round trip"))
        return bad, morita

    (bad, morita), dt = _timed(run)
    total = len(fx.morita_fixtures())
    ok = not bad and 0 < morita < total
    acceptance_line(6, "Morita iff certificate, with round trip", ok, dt, 60, f"[{morita}/{total} Morita]")
    assert ok and dt < 60, bad[:3]


def test_07_multiplier(acceptance_line):
    F = fx.semigroups()

    def run():
        bad, counts = [], {"monoids": 0, "kasparov": 0, "over budget": 0, "extensions": 0}
        for name, S in F.items():
            if S.identity is not None:
                counts["monoids"] += 1
                if find_isomorphism(multiplier(S).semigroup, S) is None:
                    bad.append((name, "M(S) != S"))
            if S.order <= 4:
                # brute-force double centralizers as an independent count of M(S)
                if len(double_centralizers(S)) != multiplier(S).semigroup.order:
                    bad.append((name, "|D(S)| != |M(S)|"))
        for name, U in fx.sets().items():
            try:
                verify_kasparov(U)
                counts["kasparov"] += 1
            except SizeLimit:
                counts["over budget"] += 1
        for big_name, big in F.items():
            for small_name, small in F.items():
                for h in find_homomorphisms(small, big, injective=True):
                    if not is_ideal(big, h.image()):
                        continue
                    c = identity_correspondence(small)
                    ext = extend_hom(c, big, h.map)
                    if len(all_extensions(c, big, h.map)) != 1:
                        bad.append((small_name, big_name, "uniqueness"))
                    if (len(set(ext)) == big.order) != is_essential_ideal(big, h.image()):
                        bad.append((small_name, big_name, "essential iff injective"))
                    counts["extensions"] += 1
        return bad, counts

    (bad, counts), dt = _timed(run)
    ok = not bad and counts["kasparov"] > 0 and counts["extensions"] > 0
    acceptance_line(7, "M(S) = S, M(K(U)) = L(U), unique extensions, essential iff injective", ok, dt, 60,
                    str(counts).replace("'", ""))
    assert ok and dt < 60, bad[:3]


def test_08_rees_round_trips(acceptance_line):
    def run():
        bad = []
        for name, U in fx.sets().items():
            rep = roundtrip_checks(U)
            if not rep.ok:
                bad.append((name, sorted(rep.failed())))
        for name, pm in fx.mcalister_functions().items():
            rs = inverse_set_from_p(pm)
            K = K_semigroup(rs.right_set, check_ideal=False)
            if find_isomorphism(inverse_rees(pm).semigroup, K.semigroup) is None:
                bad.append((name, "IM != K(U_p)"))
        collapsed = inverse_rees(fx.mcalister_functions()["T1-pair"]).semigroup.order
        return bad, collapsed

    (bad, collapsed), dt = _timed(run)
    ok = not bad and collapsed == 1
    acceptance_line(8, "Rees round trips; trivial group collapses to order 1", ok, dt, 30,
                    f"[|IM(T1-pair)| = {collapsed}]")
    assert ok and dt < 30, bad[:3]


def test_09_group_sets(acceptance_line):
    def run():
        counts, bad = {}, []
        for gname in ("Z2", "Z3"):
            G = fx.semigroups()[gname]
            target = semigroup_as_left_set(G)
            n = 0
            for U in left_inverse_group_sets(G, 6):
                n += 1
                if find_set_isomorphism(U, target) is None:
                    bad.append((gname, U.size, U.action))
            counts[gname] = n
        return counts, bad

    (counts, bad), dt = _timed(run)
    ok = not bad and all(counts.values())
    acceptance_line(9, "nonempty left inverse Z2/Z3-sets up to 6 points are isomorphic to G", ok, dt, 30,
                    str(counts).replace("'", ""))
    assert ok and dt < 30, bad[:3]


def test_10_mutation_sensitivity(acceptance_line):
    base = builtin_pool()
    subjects = {(kind, name): obj for kind in ("semigroups", "sets", "morita", "mcalister")
                for name, obj in getattr(base, kind).items()}
    entries = mutable_entries(subjects)
    rng = random.Random(10)

    def run():
        caught, missed = 0, []
        for _ in range(500):
            mut, obj = random_mutation(rng, subjects, entries)
            kind, name = mut.subject
            outcomes = verify(pool=mutation_pool(base, kind, name, obj))
            if any(o.status == "fail" for o in outcomes):
                caught += 1
            else:
                missed.append(mut)
        return caught, missed

    (caught, missed), dt = _timed(run)
    rate = caught / 500
    ok = rate >= 0.95
    acceptance_line(10, "single-entry mutations are caught by verify", ok, dt, 120,
                    f"[{caught}/500 = {rate:.1%}]")
    assert ok and dt < 120, missed[:5]
