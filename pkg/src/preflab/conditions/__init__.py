"""Condition checking: choice-function postulates, hulls, the cumulativity
hierarchy, the tree condition, derived functions, limit laws and logical rules."""
from .booth import BoothPair
from .choice import ChoiceFunction, ConditionId, Verdict
from .derived import derive_mu_i
from .engine import as_choice, check, holds_at
from .hull import HSet, cum_alpha_violation, h_set
from .limit import LambdaOracle
from .logical import LogicSubject, RevisionOperator
from .tau import TauSolver, TauTree, mu_tau


def check_cum_alpha(cf, k, transitive_variant=False):
    return check(f"{'MU_CUMT_ALPHA' if transitive_variant else 'MU_CUM_ALPHA'}:{k}", cf)


def cum_infinity_holds(cf, bound=None, transitive_variant=False):
    """All (mu Cum k) up to the bound; the default bound |family| is exhaustive."""
    k = len(cf.family) if bound is None else bound
    return cum_alpha_violation(cf, k, transitive_variant) is None


__all__ = [
    "BoothPair", "ChoiceFunction", "ConditionId", "Verdict", "derive_mu_i", "as_choice", "check",
    "holds_at", "HSet", "h_set", "cum_alpha_violation", "check_cum_alpha", "cum_infinity_holds",
    "LambdaOracle", "LogicSubject", "RevisionOperator", "TauSolver", "TauTree", "mu_tau",
]
