"""Closed-form optimal and worst-case strategies for all eight regimes.

Every regime fixes the free coefficients (lam) either by maximizing the
average success probability (A regimes, prior known) or by maximizing the
worst case over whatever is unknown (B regimes, and the unknown overlap
in A2).  The resulting success-probability surfaces are piecewise in the
prior, with branch thresholds that depend on the overlap where known.

Branch convention: at a threshold the lower branch is evaluated; all
surfaces are continuous across thresholds, so this only fixes reporting.

Correction for the qutrit unknown/unknown family: the per-index
positivity inequalities inherited from the qubit case are insufficient
there.  The totally antisymmetric three-register state w satisfies
<w|pi0|w> = 1 - (sum_i lam1_i + sum_i lam2_i)/3, so with equal
per-index coefficients the true constraint is lam1 + lam2 <= 1.  The
strategies below for dim-3 A1/B1 optimize over that corrected region;
the uncorrected coefficients would not form a measurement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cases import Family, KnowledgeCase, Regime
from .povm import LambdaParams, build_unknown_unknown, success_probabilities, validate
from .states import pair_with_overlap

FEASIBILITY_SLACK = 1e-12
SQRT5 = math.sqrt(5.0)
SQRT_HALF = math.sqrt(0.5)

# seed for the internal pair used to evaluate dim-3 surfaces operationally
_QUTRIT_EVAL_SEED = 20260809


@dataclass(frozen=True)
class StrategyResult:
    """Chosen coefficients plus the success probability at one (beta, eta1) point."""

    case: KnowledgeCase
    lam: LambdaParams
    branch: str
    p_analytic: float
    worst_case_value: float | None = None


# ---------------------------------------------------------------------------
# feasibility predicates
# ---------------------------------------------------------------------------

def _pair_program_ok(l1: float, l2: float, slack: float = FEASIBILITY_SLACK) -> bool:
    # unknown/unknown, per antisymmetric index
    return (2.0 - l1 - l2 >= -slack) and (1.0 - l1 - l2 + 0.75 * l1 * l2 >= -slack)


def _single_program_ok(l1: float, l2: float, slack: float = FEASIBILITY_SLACK) -> bool:
    # known/unknown, per antisymmetric index
    return 1.0 - l1 - l2 + 0.5 * l1 * l2 >= -slack


def _direct_ok(l1: float, l2: float, beta: float, slack: float = FEASIBILITY_SLACK) -> bool:
    # known/known; requires the overlap
    b2 = beta * beta
    return (1.0 - l1 - l2 * b2 >= -slack) and (1.0 - l1 - l2 + (1.0 - b2) * l1 * l2 >= -slack)


def _in_box(values, slack: float = FEASIBILITY_SLACK) -> bool:
    return all(-slack <= v <= 1.0 + slack for v in values)


def feasible(case: KnowledgeCase, lam: LambdaParams, *, beta: float | None = None) -> bool:
    """True iff the coefficients yield PSD measurement elements for this case.

    The known/known constraints involve the overlap, so ``beta`` is
    required there and rejected elsewhere.
    """
    fam = case.family
    if fam is Family.KNOWN_KNOWN:
        if beta is None:
            raise ValueError("known/known feasibility requires beta")
        if len(lam.lam1) != 1 or len(lam.lam2) != 1 or lam.lam3 is not None:
            return False
        return _in_box(lam.flat) and _direct_ok(lam.lam1[0], lam.lam2[0], beta)
    if beta is not None:
        raise ValueError(f"feasibility for {case} does not depend on beta")
    if fam is Family.KNOWN_UNKNOWN:
        n = case.dim - 1
        if len(lam.lam1) != n or len(lam.lam2) != n or lam.lam3 is None or len(lam.lam3) != n * n:
            return False
        if not _in_box(lam.flat):
            return False
        return all(_single_program_ok(a, b) for a, b in zip(lam.lam1, lam.lam2))
    # unknown/unknown
    n = 1 if case.dim == 2 else 3
    if len(lam.lam1) != n or len(lam.lam2) != n or lam.lam3 is not None:
        return False
    if any(v < -FEASIBILITY_SLACK for v in lam.flat):
        return False
    per_index = all(_pair_program_ok(a, b) for a, b in zip(lam.lam1, lam.lam2))
    if case.dim == 2:
        return per_index
    if not per_index:
        return False
    # corrected qutrit region: equal per-index coefficients reduce to a
    # simplex; anything else needs the eigenvalue check
    if len(set(lam.lam1)) == 1 and len(set(lam.lam2)) == 1:
        return lam.lam1[0] + lam.lam2[0] <= 1.0 + FEASIBILITY_SLACK
    report = validate(build_unknown_unknown(3, lam))
    return all(report.psd_ok)


def per_index_pair_program_constraints(lam: LambdaParams, slack: float = FEASIBILITY_SLACK) -> bool:
    """The naive per-index generalization of the qubit inequalities to qutrits.

    Kept for reference: necessary but not sufficient (see module
    docstring); ``feasible`` applies the corrected region instead.
    """
    return all(v >= -slack for v in lam.flat) and all(
        _pair_program_ok(a, b, slack) for a, b in zip(lam.lam1, lam.lam2)
    )


# ---------------------------------------------------------------------------
# closed-form decision tables (qubits; shared by qutrits where valid)
# ---------------------------------------------------------------------------

def _clamp01(x: float) -> float:
    # branch formulas are exact on [0, 1]; rounding can stray by ~1e-15
    return min(1.0, max(0.0, x))


def _a1_decision(eta1: float) -> tuple[float, float, str]:
    if eta1 <= 0.2:
        return 0.0, 1.0, "eta1<=1/5"
    if eta1 <= 0.8:
        l1 = _clamp01((2.0 / 3.0) * (2.0 - math.sqrt((1.0 - eta1) / eta1)))
        l2 = _clamp01((2.0 / 3.0) * (2.0 - math.sqrt(eta1 / (1.0 - eta1))))
        return l1, l2, "1/5<eta1<=4/5"
    return 1.0, 0.0, "eta1>4/5"


def _a2_decision(eta1: float) -> tuple[float, float, float, str]:
    if eta1 <= 0.5:
        return 0.0, 1.0, 1.0, "eta1<=1/2"
    if eta1 <= 0.8:
        l1 = _clamp01(2.0 * (1.0 - math.sqrt((1.0 - eta1) / eta1)))
        l2 = _clamp01(2.0 - math.sqrt(eta1 / (1.0 - eta1)))
        return l1, l2, 1.0, "1/2<eta1<=4/5"
    return 1.0, 0.0, 1.0, "eta1>4/5"


def _a3_decision(beta: float, eta1: float) -> tuple[float, float, float, str]:
    b2 = beta * beta
    t1, t2 = b2 / (1.0 + b2), 4.0 * b2 / (1.0 + 4.0 * b2)
    if eta1 <= t1:
        return 0.0, 1.0, 1.0, "eta1<=beta^2/(1+beta^2)"
    if eta1 <= t2:
        l1 = _clamp01(2.0 * (1.0 - beta * math.sqrt((1.0 - eta1) / eta1)))
        l2 = _clamp01(2.0 - math.sqrt(eta1 / (1.0 - eta1)) / beta)
        return l1, l2, 1.0, "between"
    return 1.0, 0.0, 1.0, "eta1>4beta^2/(1+4beta^2)"


def _a4_decision(beta: float, eta1: float) -> tuple[float, float, str]:
    b2 = beta * beta
    t1, t2 = b2 / (1.0 + b2), 1.0 / (1.0 + b2)
    if eta1 <= t1:
        return 0.0, 1.0, "eta1<=beta^2/(1+beta^2)"
    if eta1 <= t2:
        s1 = beta * math.sqrt((1.0 - eta1) / eta1) if beta > 0.0 else 0.0
        s2 = beta * math.sqrt(eta1 / (1.0 - eta1)) if beta > 0.0 and eta1 < 1.0 else 0.0
        l1 = _clamp01((1.0 - s1) / (1.0 - b2))
        l2 = _clamp01((1.0 - s2) / (1.0 - b2))
        return l1, l2, "between"
    return 1.0, 0.0, "eta1>1/(1+beta^2)"


def _b3_decision(beta: float) -> tuple[float, float, float, str]:
    if beta <= SQRT_HALF:
        return 1.0, 0.0, 1.0, "beta<=sqrt(1/2)"
    b2 = beta * beta
    l1 = _clamp01(b2 + 2.0 - math.sqrt(b2 * b2 + 4.0 * b2))
    l2 = _clamp01(1.5 - math.sqrt(0.25 + 1.0 / b2))
    return l1, l2, 1.0, "beta>sqrt(1/2)"


B2_LAM = (3.0 - SQRT5, 0.5 * (3.0 - SQRT5), 1.0)


def _a1_qutrit_decision(eta1: float) -> tuple[float, float, str]:
    # corrected region lam1 + lam2 <= 1: linear objective, corner optimum
    if eta1 <= 0.5:
        return 0.0, 1.0, "eta1<=1/2"
    return 1.0, 0.0, "eta1>1/2"


# ---------------------------------------------------------------------------
# success-probability surfaces (dim 2 closed forms)
# ---------------------------------------------------------------------------

def p0_opt(beta: float, eta1: float) -> float:
    f = 1.0 - beta * beta
    if eta1 <= 0.2:
        return 0.5 * (1.0 - eta1) * f
    if eta1 <= 0.8:
        return (2.0 / 3.0) * (1.0 - math.sqrt(eta1 * (1.0 - eta1))) * f
    return 0.5 * eta1 * f


def p1_wbeta(beta: float, eta1: float) -> float:
    b2 = beta * beta
    f = 1.0 - b2
    if eta1 <= 0.5:
        return (1.0 - eta1) * f
    if eta1 <= 0.8:
        return (1.0 + b2 * (1.0 - eta1) - (1.0 + b2) * math.sqrt(eta1 * (1.0 - eta1))) * f
    return (1.0 - 0.5 * eta1 - b2 * (1.0 - eta1)) * f


def p1plus_opt(beta: float, eta1: float) -> float:
    b2 = beta * beta
    f = 1.0 - b2
    t1, t2 = b2 / (1.0 + b2), 4.0 * b2 / (1.0 + 4.0 * b2)
    if eta1 <= t1:
        return (1.0 - eta1) * f
    if eta1 <= t2:
        return (1.0 + b2 * (1.0 - eta1) - 2.0 * beta * math.sqrt(eta1 * (1.0 - eta1))) * f
    return (1.0 - 0.5 * eta1 - b2 * (1.0 - eta1)) * f


def p2_opt(beta: float, eta1: float) -> float:
    b2 = beta * beta
    t1, t2 = b2 / (1.0 + b2), 1.0 / (1.0 + b2)
    if eta1 <= t1:
        return (1.0 - eta1) * (1.0 - b2)
    if eta1 <= t2:
        return 1.0 - 2.0 * math.sqrt(eta1 * (1.0 - eta1)) * beta
    return eta1 * (1.0 - b2)


def p0_weta(beta: float, eta1: float = 0.0) -> float:
    return (1.0 - beta * beta) / 3.0


def p1_wbetaeta(beta: float, eta1: float) -> float:
    f = 1.0 - beta * beta
    return (0.5 * (3.0 - SQRT5) + 0.5 * (SQRT5 - 1.0) * f * (1.0 - eta1)) * f


def p1plus_actual(beta: float, eta1: float) -> float:
    b2 = beta * beta
    f = 1.0 - b2
    if beta <= SQRT_HALF:
        return (0.5 + (0.5 - b2) * (1.0 - eta1)) * f
    return (1.0 + 0.5 * b2 - 0.5 * math.sqrt(b2 * b2 + 4.0 * b2)) * f


def p1plus_weta(beta: float, eta1: float = 0.0) -> float:
    b2 = beta * beta
    if beta <= SQRT_HALF:
        return 0.5 * (1.0 - b2)
    return (1.0 + 0.5 * b2 - 0.5 * math.sqrt(b2 * b2 + 4.0 * b2)) * (1.0 - b2)


def p2_weta(beta: float, eta1: float = 0.0) -> float:
    return 1.0 - beta


def p0_opt_qutrit(beta: float, eta1: float) -> float:
    return 0.5 * max(eta1, 1.0 - eta1) * (1.0 - beta * beta)


def p0_weta_qutrit(beta: float, eta1: float = 0.0) -> float:
    return 0.25 * (1.0 - beta * beta)


# surfaces by name; difference surfaces are (minuend, subtrahend) pairs
SURFACES = {
    "p0_opt": p0_opt,
    "p1_wbeta": p1_wbeta,
    "p1plus_opt": p1plus_opt,
    "p2_opt": p2_opt,
    "p0_weta": p0_weta,
    "p1_wbetaeta": p1_wbetaeta,
    "p1plus_actual": p1plus_actual,
    "p1plus_weta": p1plus_weta,
    "p2_weta": p2_weta,
}

DIFFERENCE_SURFACES = {
    "p0_prior_gain": ("p0_opt", "p0_weta"),
    "p1_prior_gain": ("p1_wbeta", "p1_wbetaeta"),
    "p1plus_prior_gain": ("p1plus_opt", "p1plus_actual"),
    "p2_prior_gain": ("p2_opt", "p2_weta"),
    "p_0_to_1": ("p1_wbeta", "p0_opt"),
    "p_1_to_1plus": ("p1plus_opt", "p1_wbeta"),
    "p_1plus_to_2": ("p2_opt", "p1plus_opt"),
}

CASE_SURFACE = {
    Regime.A1: "p0_opt",
    Regime.A2: "p1_wbeta",
    Regime.A3: "p1plus_opt",
    Regime.A4: "p2_opt",
    Regime.B1: "p0_weta",
    Regime.B2: "p1_wbetaeta",
    Regime.B3: "p1plus_weta",
    Regime.B4: "p2_weta",
}


# ---------------------------------------------------------------------------
# decisions and evaluation
# ---------------------------------------------------------------------------

def _decide(case: KnowledgeCase, beta: float | None, eta1: float | None) -> tuple[LambdaParams, str]:
    r, d = case.regime, case.dim
    if r is Regime.A1:
        if d == 2:
            l1, l2, br = _a1_decision(eta1)
        else:
            l1, l2, br = _a1_qutrit_decision(eta1)
        n = 1 if d == 2 else 3
        return LambdaParams.of((l1,) * n, (l2,) * n), br
    if r is Regime.B1:
        if d == 2:
            l1 = l2 = 2.0 / 3.0
        else:
            l1 = l2 = 0.5
        n = 1 if d == 2 else 3
        return LambdaParams.of((l1,) * n, (l2,) * n), "equalizer"
    if r in (Regime.A2, Regime.A3, Regime.B2, Regime.B3):
        if r is Regime.A2:
            l1, l2, l3, br = _a2_decision(eta1)
        elif r is Regime.A3:
            l1, l2, l3, br = _a3_decision(beta, eta1)
        elif r is Regime.B2:
            (l1, l2, l3), br = B2_LAM, "equalizer"
        else:
            l1, l2, l3, br = _b3_decision(beta)
        n = d - 1
        return LambdaParams.of((l1,) * n, (l2,) * n, (l3,) * (n * n)), br
    if r is Regime.A4:
        l1, l2, br = _a4_decision(beta, eta1)
        return LambdaParams.of(l1, l2), br
    # B4
    l = 1.0 / (1.0 + beta)
    return LambdaParams.of(l, l), "equalizer"


def optimal_lambda(case: KnowledgeCase, beta: float | None = None, eta1: float | None = None) -> LambdaParams:
    """Case-optimal coefficients from exactly the inputs the case may use.

    Supplying a parameter the regime does not know (or omitting one it
    does) is an error: the information structure is part of the contract.
    """
    needs = case.decision_inputs
    given = {name for name, value in (("beta", beta), ("eta1", eta1)) if value is not None}
    if given != needs:
        missing = sorted(needs - given)
        forbidden = sorted(given - needs)
        parts = []
        if missing:
            parts.append(f"missing required input(s): {', '.join(missing)}")
        if forbidden:
            parts.append(f"case must not receive: {', '.join(forbidden)}")
        raise ValueError(f"{case}: " + "; ".join(parts))
    if beta is not None and not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    if eta1 is not None and not 0.0 <= eta1 <= 1.0:
        raise ValueError(f"eta1 must lie in [0, 1], got {eta1}")
    return _decide(case, beta, eta1)[0]


def _closed_form_p(case: KnowledgeCase, beta: float, eta1: float) -> float:
    r = case.regime
    if case.dim == 3 and r in (Regime.A1, Regime.B1):
        return p0_opt_qutrit(beta, eta1) if r is Regime.A1 else p0_weta_qutrit(beta)
    if r is Regime.B3:
        return p1plus_actual(beta, eta1)
    return SURFACES[CASE_SURFACE[r]](beta, eta1)


def _operational_p(case: KnowledgeCase, lam: LambdaParams, beta: float, eta1: float) -> float:
    pair = pair_with_overlap(case.dim, beta, eta1, seed=_QUTRIT_EVAL_SEED)
    p1, p2 = success_probabilities(case, pair, lam)
    return eta1 * p1 + (1.0 - eta1) * p2


def success_probability(case: KnowledgeCase, beta: float, eta1: float) -> StrategyResult:
    """Success probability of the case's optimal strategy at a (beta, eta1) point.

    Both parameters are always accepted: surfaces depend on the true pair
    even when the decision cannot.  For dim-3 regimes without a
    closed form the value is computed operationally from POVM expectations
    on an internally generated pair with the requested overlap (the result
    depends on the pair only through beta).
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    if not 0.0 <= eta1 <= 1.0:
        raise ValueError(f"eta1 must lie in [0, 1], got {eta1}")
    kwargs = {}
    if case.regime.knows_beta:
        kwargs["beta"] = beta
    if case.regime.knows_eta1:
        kwargs["eta1"] = eta1
    lam, branch = _decide(case, kwargs.get("beta"), kwargs.get("eta1"))

    if case.dim == 3 and case.family is not Family.KNOWN_KNOWN and beta < 1.0 - 1e-12:
        p = _operational_p(case, lam, beta, eta1)
    else:
        p = _closed_form_p(case, beta, eta1)

    r = case.regime
    worst: float | None = None
    if r is Regime.A2:
        worst = 0.5 * lam.lam1[0] * eta1 + lam.lam2[0] * (1.0 - eta1)
    elif r is Regime.B1:
        worst = p0_weta(beta) if case.dim == 2 else p0_weta_qutrit(beta)
    elif r is Regime.B2:
        worst = 0.5 * B2_LAM[0]
    elif r is Regime.B3:
        worst = p1plus_weta(beta)
    elif r is Regime.B4:
        worst = p2_weta(beta)
    return StrategyResult(case=case, lam=lam, branch=branch, p_analytic=float(p), worst_case_value=worst)
