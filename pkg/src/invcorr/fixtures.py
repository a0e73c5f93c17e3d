"""Built-in fixture families: semigroups, sets, bisets, correspondences, McAlister functions.

Every builder is cached, so repeated calls hand back the same objects.
"""

from __future__ import annotations

from functools import cache
from itertools import islice

from .bicategory import opposite
from .correspondence import InverseCorrespondence, from_hom, identity_correspondence
from .inverse_set import (
    PartialMoritaEquivalence,
    RightSet,
    direct_sum,
    enlargement_set,
    partial_bijection_biset,
    presheaf_set,
    right_ideal_set,
    semigroup_as_right_set,
    zero_set,
)
from .adjointable import morita_from_set
from .rees import PartialMcAlisterFunction, check_mcalister, inverse_set_from_p, mcalister_from_set
from .semigroup import InverseSemigroup, SemigroupHom, find_homomorphisms, semigroup_fixtures


@cache
def semigroups() -> dict[str, InverseSemigroup]:
    return semigroup_fixtures()


def semigroup(name: str) -> InverseSemigroup:
    try:
        return semigroups()[name]
    except KeyError:
        raise KeyError(f"unknown semigroup fixture {name!r}") from None


def empty_set(S: InverseSemigroup) -> RightSet:
    return RightSet(S, [], [], ())


def _label_index(S: InverseSemigroup, label) -> int:
    return S.labels.index(label)


@cache
def mcalister_functions() -> dict[str, PartialMcAlisterFunction]:
    F = semigroups()
    out = {
        "E2-unit": check_mcalister(F["E2"], [[1]]),
        "E2-zero": check_mcalister(F["E2"], [[0]]),
        "T1-pair": check_mcalister(F["T1"], [[0, 0], [0, 0]]),
        "Z2-pair": check_mcalister(F["Z2"], [[0, 1], [1, 0]]),
        "E3-steps": check_mcalister(F["E3"], [[1, 1], [1, 2]]),
    }
    for name in ("E2", "Z2", "E3", "B2"):
        out[f"{name}-pU"] = mcalister_from_set(semigroup_as_right_set(F[name]))
    return out


@cache
def sets() -> dict[str, RightSet]:
    F = semigroups()
    E2, E3, I2, B2 = F["E2"], F["E3"], F["I2"], F["B2"]
    out: dict[str, RightSet] = {}
    for name, S in F.items():
        out[f"{name}-as-set"] = semigroup_as_right_set(S)
    e11, e21 = _label_index(B2, "e11"), _label_index(B2, "e21")
    out["B2-row"] = right_ideal_set(B2, [e11])
    out["B2-col"] = right_ideal_set(B2, [e21])
    out["E3-lower"] = right_ideal_set(E3, [1])
    rank1 = [i for i, f in enumerate(I2.labels) if sum(x >= 0 for x in f) == 1]
    out["I2-rank1"] = right_ideal_set(I2, rank1)
    out["E2-sum"] = direct_sum(out["E2-as-set"], out["E2-as-set"])
    out["B2-row-sum"] = direct_sum(out["B2-row"], out["B2-row"])
    out["E2-zero"] = zero_set(E2)
    out["E2-empty"] = empty_set(E2)
    out["E2-presheaf"] = presheaf_set(E2, [1, 2], {(0, 1): [0, 0]}).mirror()
    out["E3-presheaf"] = presheaf_set(E3, [1, 2, 2], {(0, 1): [0, 0], (0, 2): [0, 0], (1, 2): [0, 1]}).mirror()
    out["T1-Up"] = inverse_set_from_p(mcalister_functions()["T1-pair"]).right_set
    out["E3-Up"] = inverse_set_from_p(mcalister_functions()["E3-steps"]).right_set
    return out


@cache
def morita_fixtures() -> dict[str, PartialMoritaEquivalence]:
    F = semigroups()
    out: dict[str, PartialMoritaEquivalence] = {}
    for name, U in sets().items():
        out[f"K({name})"] = morita_from_set(U)
    B2, I2 = F["B2"], F["I2"]
    out["B2-enlarge"] = enlargement_set(B2, [0, _label_index(B2, "e11")])
    corner = [i for i in range(I2.order) if I2.prod(1, i, 1) == i]
    out["I2-corner"] = enlargement_set(I2, corner)
    for name in ("E2", "Z2", "E3"):
        S = F[name]
        out[f"{name}-self"] = enlargement_set(S, range(S.order))
    for nx, ny in ((1, 1), (2, 1), (1, 2), (2, 2)):
        out[f"I({nx},{ny})"] = partial_bijection_biset(nx, ny)
    for name, pm in mcalister_functions().items():
        out[f"U_p({name})"] = inverse_set_from_p(pm).morita
    for name in ("B2-enlarge", "I2-corner", "I(2,1)"):
        out[f"opp({name})"] = opposite(out[name])
    return out


@cache
def homomorphisms(limit: int = 6) -> dict[str, SemigroupHom]:
    """A deterministic sample of homomorphisms between small fixtures."""
    F = semigroups()
    names = ("T1", "E2", "Z2", "E3", "B2")
    out = {}
    for a in names:
        for b in names:
            for k, h in enumerate(islice(find_homomorphisms(F[a], F[b]), limit)):
                out[f"{a}->{b}#{k}"] = h
    return out


def hom_pairs() -> list[tuple[SemigroupHom, SemigroupHom]]:
    """Composable pairs (theta1 : R -> S, theta2 : S -> T)."""
    hs = list(homomorphisms().values())
    return [(h1, h2) for h1 in hs for h2 in hs if h1.target.same_table(h2.source)
            and h1.target.name == h2.source.name]


@cache
def correspondences() -> dict[str, InverseCorrespondence]:
    F = semigroups()
    out: dict[str, InverseCorrespondence] = {}
    for name, S in F.items():
        out[f"id({name})"] = identity_correspondence(S)
    for name, h in homomorphisms().items():
        out[f"hom({name})"] = from_hom(h)
    for name, M in morita_fixtures().items():
        out[name] = M.correspondence()
    return out


def composable(c1: InverseCorrespondence, c2: InverseCorrespondence) -> bool:
    return c1.right_semigroup.same_table(c2.left_semigroup)
