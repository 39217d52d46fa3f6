import math

import numpy as np
import pytest

from unambig.cases import KnowledgeCase, Regime
from unambig import optimizer as opt
from unambig import strategies as st
from unambig.states import pair_with_overlap

SQRT5 = math.sqrt(5.0)


def test_b1_equalizer_recovered():
    res = opt.solve_maximin(opt.case_problem(KnowledgeCase(Regime.B1, 2), beta=0.0))
    assert res.lambda_star == pytest.approx((2 / 3, 2 / 3), abs=2e-3)
    assert res.value == pytest.approx(1 / 3, abs=2e-3)
    assert res.certificate is not None and res.certificate.shape == (101,)
    # the equalizer makes every prior equally bad
    assert np.ptp(res.certificate) <= 2e-3


def test_b2_equalizer_and_free_third_coefficient():
    # the third coefficient is left free by the worst case; the oracle must
    # still recover 1 (it dominates at every non-worst adversary point)
    res = opt.solve_maximin(opt.case_problem(KnowledgeCase(Regime.B2, 2)))
    assert res.value == pytest.approx((3 - SQRT5) / 2, abs=2e-3)
    assert res.lambda_star[2] == pytest.approx(1.0, abs=1e-6)
    assert res.lambda_star == pytest.approx((3 - SQRT5, (3 - SQRT5) / 2, 1.0), abs=5e-3)


def test_a4_point_problem():
    res = opt.solve_maximin(opt.case_problem(KnowledgeCase(Regime.A4, 2), beta=0.5, eta1=0.5))
    assert res.value == pytest.approx(0.5, abs=2e-3)


def test_a2_recovers_closed_form_actions():
    case = KnowledgeCase(Regime.A2, 2)
    for eta1 in (0.3, 0.65, 0.9):
        res = opt.solve_maximin(opt.case_problem(case, eta1=eta1))
        closed = st.optimal_lambda(case, eta1=eta1)
        assert res.lambda_star == pytest.approx(closed.flat, abs=5e-3)


def test_verify_a1_row_at_fixed_overlap():
    rep = opt.verify_case(KnowledgeCase(Regime.A1, 2), betas=[0.4], etas=np.arange(0, 1.0001, 0.05))
    assert rep.max_deviation <= 2e-3


def test_verify_b4_over_overlap():
    rep = opt.verify_case(KnowledgeCase(Regime.B4, 2), betas=np.arange(0, 1.0001, 0.05), etas=[0.0])
    assert rep.max_deviation <= 2e-3
    for beta, _, closed, _ in rep.rows:
        assert closed == pytest.approx(1.0 - beta, abs=1e-12)


def test_a3_branch_thresholds_located():
    # the solved first coefficient turns on within one grid step of the
    # closed-form lower threshold and saturates near the upper one
    case = KnowledgeCase(Regime.A3, 2)
    beta = 0.6
    t1 = beta**2 / (1 + beta**2)
    t2 = 4 * beta**2 / (1 + 4 * beta**2)
    etas = np.arange(0.05, 1.0, 0.05)
    lam1 = []
    for eta1 in etas:
        res = opt.solve_maximin(opt.case_problem(case, beta=beta, eta1=float(eta1)))
        lam1.append(res.lambda_star[0])
    lam1 = np.array(lam1)
    switched_on = etas[np.flatnonzero(lam1 > 5e-3)[0]]
    saturated = etas[np.flatnonzero(lam1 > 1 - 5e-3)[0]]
    assert abs(switched_on - t1) <= 0.05 + 1e-9
    assert abs(saturated - t2) <= 0.05 + 1e-9


def test_oracle_brackets_closed_form_both_ways():
    # the closed form is feasible (oracle can't fall below it) and optimal
    # (oracle can't exceed it), up to search resolution
    case = KnowledgeCase(Regime.A3, 2)
    for beta, eta1 in ((0.3, 0.2), (0.6, 0.5), (0.9, 0.8)):
        res = opt.solve_maximin(opt.case_problem(case, beta=beta, eta1=eta1))
        closed = st.p1plus_opt(beta, eta1)
        assert res.value <= closed + 1e-6
        assert res.value >= closed - 2e-3


def test_empty_feasible_set():
    problem = opt.MaximinProblem(
        n_params=1,
        objective=lambda l, adv: l[:, 0],
        feasible=lambda l: np.zeros(l.shape[0], dtype=bool),
    )
    with pytest.raises(ValueError, match="empty feasible set"):
        opt.solve_maximin(problem)


def test_resolution_validation():
    with pytest.raises(ValueError, match="resolution"):
        opt.solve_maximin(opt.case_problem(KnowledgeCase(Regime.B4, 2), beta=0.5), resolution=0.5)


def test_qutrit_pair_program_oracle_uses_corrected_region():
    res = opt.solve_maximin(opt.case_problem(KnowledgeCase(Regime.B1, 3), beta=0.0))
    assert res.lambda_star == pytest.approx((0.5, 0.5), abs=2e-3)
    assert res.value == pytest.approx(0.25, abs=2e-3)
    res = opt.solve_maximin(opt.case_problem(KnowledgeCase(Regime.A1, 3), beta=0.0, eta1=0.8))
    assert res.value == pytest.approx(0.4, abs=2e-3)


def test_full_dimension_known_unknown_matches_symmetric():
    # releasing the per-index symmetry does not beat the symmetric optimum
    pair = pair_with_overlap(3, 0.55, 0.5, seed=31)
    for eta1 in (0.2, 0.5, 0.8):
        full = opt.full_dimension_value_known_unknown(pair, eta1)
        sym = st.p1plus_opt(pair.beta, eta1)
        assert full <= sym + 1e-9
        assert full >= sym - 2e-3


def test_full_dimension_pair_program_gap_reported():
    # with the orientation known, unequal per-index coefficients may win;
    # the symmetric value is never beaten by less than -tol from above
    pair = pair_with_overlap(3, 0.4, 0.5, seed=32)
    full = opt.full_dimension_value_unknown_unknown(pair, 0.5, step=0.25)
    sym = st.success_probability(KnowledgeCase(Regime.A1, 3), 0.4, 0.5).p_analytic
    assert full >= sym - 2e-3
    print(f"unknown/unknown symmetric {sym:.4f} vs orientation-aware {full:.4f} (gap {full - sym:+.4f})")
