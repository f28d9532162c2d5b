"""Build structures whose choice function reproduces a given one."""
from __future__ import annotations

from ..conditions.booth import BoothPair
from ..conditions.engine import check
from ..errors import InputError, RepresentationRejected
from ..logic import Language
from ..structures import check_structure
from .booth import BoothBuildState, booth_structure, oracle_agreement, oracle_edges, preorder_violation
from .ranked import choice_preorder, layer, ranked_structure, transitive_closure
from .smooth import AdmissibleSeq, GammaIndex, admissible_sequence, general_structure, minimal_hitting_sets, \
    selection_structure, smooth_structure
from .transitive import RepTree, build_tree, transitive_structure
from .verify import VerificationReport, verify_booth, verify_representation

FLAVORS = ("general", "smooth", "smooth_transitive", "ranked")

GATES = {
    "general": ("MU_SUBSET", "MU_PR"),
    "smooth": ("MU_SUBSET", "HUX"),
    "smooth_transitive": ("MU_SUBSET", "MU_PR", "MU_CUM", "MU_TAU"),
    "ranked": ("MU_SUBSET", "MU_EMPTY_FIN", "MU_EQ", "MU_IN"),
}

NONDP_GATES = {
    "general": (0, ("MU_SUBSET", "MU_PR_I:0")),
    "smooth": (2, ("MU_SUBSET", "MU_PR_I:2", "MU_CUM")),
    "ranked": (3, ("MU_EQ", "MU_IN", "MU_PR_I:3", "MU_EMPTY_FIN")),
}

BOOTH_PLUS_GATE = ("MU_SUBSET", "MU_EMPTY", "MU_EQ")


class ConstructionFailed(AssertionError):
    """A construction passed its gate but the result does not check out."""


def gate(cf, conditions, family=None):
    for c in conditions:
        v = check(c, cf, family)
        if not v.holds:
            raise RepresentationRejected(v)


def _builder(flavor):
    return {
        "general": general_structure,
        "smooth": smooth_structure,
        "smooth_transitive": transitive_structure,
        "ranked": ranked_structure,
    }[flavor]


def _post_check(structure, cf, flavor, mu_target=None):
    fam = cf.family
    rep = check_structure(structure, fam)
    need = {"smooth": ("smooth",), "smooth_transitive": ("smooth", "transitive"),
            "general": ("irreflexive",), "ranked": ("smooth", "ranked")}[flavor]
    for prop in need:
        if not getattr(rep, prop):
            raise ConstructionFailed(f"{flavor} construction is not {prop}: {rep.witnesses.get(prop)}")
    v = verify_representation(structure, mu_target or cf, "exact")
    if not v.ok:
        raise ConstructionFailed(f"{flavor} construction misses {v.mismatch}")


def represent(cf, flavor: str):
    """Gate on the flavor's conditions, build, then re-check the result."""
    if flavor not in FLAVORS:
        raise InputError(f"unknown flavor {flavor!r}; expected one of {', '.join(FLAVORS)}")
    fam = cf.family
    if flavor == "ranked" and not (fam.contains_singletons and fam.closed_finite_union):
        raise InputError("ranked representation needs singletons and finite unions in the family")
    gate(cf, GATES[flavor])
    structure = _builder(flavor)(cf)
    _post_check(structure, cf, flavor)
    return structure


def represent_nondp(cf, flavor: str):
    """Represent mu up to hat: build a structure for mu_i, i by flavor.

    Returns (structure, hat verification report)."""
    if flavor not in NONDP_GATES:
        raise InputError(f"unknown flavor {flavor!r} for the hat pipeline")
    from ..conditions.derived import derive_mu_i
    fam = cf.family
    if not fam.supports_hat:
        raise InputError("the hat pipeline needs a family closed under intersections that contains the universe")
    if not (fam.closed_finite_union and fam.contains_empty):
        raise InputError("the hat pipeline needs finite unions and the empty set in the family")
    if not cf.codomain_in_family:
        raise InputError("the hat pipeline needs every value of mu to be a family member")
    i, conds = NONDP_GATES[flavor]
    if i == 3 and not (fam.contains_singletons and fam.contains_pairs):
        raise InputError("the ranked hat pipeline needs singletons and pair sets in the family")
    gate(cf, conds)
    derived = derive_mu_i(cf, i)
    structure = _builder(flavor)(derived)
    _post_check(structure, derived, flavor)
    return structure, verify_representation(structure, cf, "hat")


def represent_booth(bp: BoothPair, language: Language):
    """Returns (BoothStructure, BoothBuildState, round-trip report)."""
    if bp.family.universe.as_set != language.universe.as_set:
        raise InputError("Booth data must live on the models of the language")
    if len(bp.family) != 2 ** len(language.universe):
        raise InputError("Booth data must be given on every formula-definable set")
    gate(bp.plus, BOOTH_PLUS_GATE)
    for j in range(1, 6):
        v = check(f"MU_MINUS:{j}", bp)
        if not v.holds:
            raise RepresentationRejected(v)
    structure, state = booth_structure(bp, language)
    return structure, state, verify_booth(structure, bp)


__all__ = [
    "AdmissibleSeq", "BoothBuildState", "ConstructionFailed", "FLAVORS", "GATES", "GammaIndex", "RepTree",
    "VerificationReport", "admissible_sequence", "booth_structure", "build_tree", "choice_preorder",
    "general_structure", "layer", "minimal_hitting_sets", "oracle_agreement", "oracle_edges",
    "preorder_violation", "ranked_structure", "represent", "represent_booth",
    "represent_nondp", "selection_structure", "smooth_structure", "transitive_closure", "transitive_structure",
    "verify_booth", "verify_representation",
]
