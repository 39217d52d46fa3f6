import numpy as np
import pytest

from unambig.cases import Family, KnowledgeCase, Regime
from unambig.linalg import expectation, kron, min_eigenvalue, orthonormal_completion
from unambig.povm import (
    LambdaParams,
    build_for_case,
    build_known_known,
    build_known_unknown,
    build_unknown_unknown,
    input_states,
    success_probabilities,
    validate,
)
from unambig.states import basis_state, pair_with_overlap
from unambig.strategies import feasible, per_index_pair_program_constraints


def sample_feasible(case, rng, beta=None):
    """Rejection-sample coefficients accepted by the case's feasibility predicate."""
    while True:
        if case.family is Family.UNKNOWN_UNKNOWN:
            n = 1 if case.dim == 2 else 3
            lam = LambdaParams.of(rng.uniform(0, 1, n), rng.uniform(0, 1, n))
        elif case.family is Family.KNOWN_UNKNOWN:
            n = case.dim - 1
            lam = LambdaParams.of(rng.uniform(0, 1, n), rng.uniform(0, 1, n), rng.uniform(0, 1, n * n))
        else:
            lam = LambdaParams.of(rng.uniform(0, 1), rng.uniform(0, 1))
        kwargs = {"beta": beta} if case.family is Family.KNOWN_KNOWN else {}
        if feasible(case, lam, **kwargs):
            return lam


def test_lambda_params_validation():
    with pytest.raises(ValueError, match="nonnegative"):
        LambdaParams.of(-0.1, 0.5)
    assert LambdaParams.of(0.2, 0.3, 0.4).flat == (0.2, 0.3, 0.4)


def test_zero_coefficients_give_identity_inconclusive():
    for dim, n in ((2, 1), (3, 3)):
        povm = build_unknown_unknown(dim, LambdaParams.of((0.0,) * n, (0.0,) * n))
        assert np.allclose(povm.pi1, 0) and np.allclose(povm.pi2, 0)
        assert np.allclose(povm.pi0, np.eye(dim**3))
        assert validate(povm).all_ok


def test_qubit_pair_program_boundary_and_violation():
    boundary = build_unknown_unknown(2, LambdaParams.of(2 / 3, 2 / 3))
    assert abs(min_eigenvalue(boundary.pi0)) <= 1e-9
    broken = build_unknown_unknown(2, LambdaParams.of(1.0, 1.0))
    assert min_eigenvalue(broken.pi0) < -1e-6


def test_builders_reject_bad_coefficients():
    with pytest.raises(ValueError, match="nonnegative"):
        build_unknown_unknown(2, LambdaParams((-0.5,), (0.5,)))
    with pytest.raises(ValueError, match="component"):
        build_unknown_unknown(3, LambdaParams.of((0.1, 0.2), (0.1, 0.2)))
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        build_known_unknown(basis_state(2, 0), LambdaParams.of(1.5, 0.0, 0.0))
    with pytest.raises(ValueError, match="parallel"):
        pair = pair_with_overlap(2, 1.0, 0.5, seed=0)
        build_known_known(pair.psi1, pair.psi2, LambdaParams.of(0.5, 0.5))


@pytest.mark.parametrize("regime", [Regime.A1, Regime.A2, Regime.A4])
@pytest.mark.parametrize("dim", [2, 3])
def test_no_error_condition(regime, dim):
    # wrong-identification amplitudes vanish structurally, for any coefficients
    rng = np.random.default_rng(hash((regime, dim)) % 2**32)
    case = KnowledgeCase(regime, dim)
    for _ in range(100):
        beta = rng.uniform(0, 0.99)
        pair = pair_with_overlap(dim, beta, 0.5, rng)
        lam = sample_feasible(case, rng, beta=beta)
        povm = build_for_case(case, pair, lam)
        in1, in2 = input_states(case, pair)
        assert expectation(in2, povm.pi1) <= 1e-12
        assert expectation(in1, povm.pi2) <= 1e-12
        assert validate(povm).completeness_residual <= 1e-10


def test_pair_program_expectations_match_analytic():
    # p_i = lam_i (1 - beta^2) / 2 for the two-unknown-states discriminator
    rng = np.random.default_rng(21)
    case = KnowledgeCase(Regime.A1, 2)
    for _ in range(200):
        beta = rng.uniform(0, 1)
        pair = pair_with_overlap(2, beta, 0.5, rng)
        l1, l2 = rng.uniform(0, 2 / 3, 2)
        p1, p2 = success_probabilities(case, pair, LambdaParams.of(l1, l2))
        f = 0.5 * (1 - beta**2)
        assert p1 == pytest.approx(l1 * f, abs=1e-10)
        assert p2 == pytest.approx(l2 * f, abs=1e-10)


def test_single_program_expectations_match_analytic():
    # p1 = lam1 (1-beta^2)/2;  p2 = lam2 beta^2 (1-beta^2) + lam3 (1-beta^2)^2
    rng = np.random.default_rng(22)
    case = KnowledgeCase(Regime.A2, 2)
    for _ in range(200):
        beta = rng.uniform(0, 1)
        pair = pair_with_overlap(2, beta, 0.5, rng)
        l1, l2, l3 = rng.uniform(0, 1, 3)
        p1, p2 = success_probabilities(case, pair, LambdaParams.of(l1, l2, l3))
        b2 = beta**2
        assert p1 == pytest.approx(0.5 * l1 * (1 - b2), abs=1e-10)
        assert p2 == pytest.approx(l2 * b2 * (1 - b2) + l3 * (1 - b2) ** 2, abs=1e-10)


def test_single_program_pure_components():
    pair = pair_with_overlap(2, 0.6, 0.5, seed=23)
    case = KnowledgeCase(Regime.A2, 2)
    p1, _ = success_probabilities(case, pair, LambdaParams.of(1.0, 0.0, 0.0))
    assert p1 == pytest.approx(0.5 * (1 - 0.36), abs=1e-12)
    _, p2 = success_probabilities(case, pair, LambdaParams.of(0.0, 1.0, 1.0))
    assert p2 == pytest.approx(1 - 0.36, abs=1e-12)


def test_direct_expectations_match_analytic():
    # p_i = lam_i (1 - beta^2) when both states are known
    rng = np.random.default_rng(24)
    for dim in (2, 3):
        case = KnowledgeCase(Regime.A4, dim)
        for _ in range(100):
            beta = rng.uniform(0, 0.99)
            pair = pair_with_overlap(dim, beta, 0.5, rng)
            l1, l2 = rng.uniform(0, 0.5, 2)
            p1, p2 = success_probabilities(case, pair, LambdaParams.of(l1, l2))
            assert p1 == pytest.approx(l1 * (1 - beta**2), abs=1e-10)
            assert p2 == pytest.approx(l2 * (1 - beta**2), abs=1e-10)


def test_direct_orthogonal_pair_is_perfect():
    pair = pair_with_overlap(3, 0.0, 0.5, seed=25)
    case = KnowledgeCase(Regime.A4, 3)
    p1, p2 = success_probabilities(case, pair, LambdaParams.of(1.0, 1.0))
    assert p1 == pytest.approx(1.0, abs=1e-12)
    assert p2 == pytest.approx(1.0, abs=1e-12)


def test_qutrit_single_program_half_weight():
    # p1 carries the 1/2 from the antisymmetric overlap, per component
    rng = np.random.default_rng(26)
    case = KnowledgeCase(Regime.A2, 3)
    for _ in range(100):
        pair = pair_with_overlap(3, rng.uniform(0, 0.99), 0.5, rng)
        lam = LambdaParams.of(rng.uniform(0, 1, 2), rng.uniform(0, 1, 2), rng.uniform(0, 1, 4))
        p1, p2 = success_probabilities(case, pair, lam)
        basis = orthonormal_completion(pair.psi1.vec)
        c = np.array([abs(np.vdot(basis[:, i], pair.psi2.vec)) ** 2 for i in (1, 2)])
        beta2 = pair.beta**2
        expected_p1 = 0.5 * (lam.lam1[0] * c[0] + lam.lam1[1] * c[1])
        expected_p2 = beta2 * (lam.lam2[0] * c[0] + lam.lam2[1] * c[1]) + (
            lam.lam3[0] * c[0] * c[0]
            + lam.lam3[1] * c[0] * c[1]
            + lam.lam3[2] * c[1] * c[0]
            + lam.lam3[3] * c[1] * c[1]
        )
        assert p1 == pytest.approx(expected_p1, abs=1e-10)
        assert p2 == pytest.approx(expected_p2, abs=1e-10)


def test_validate_reports():
    case = KnowledgeCase(Regime.A2, 2)
    pair = pair_with_overlap(2, 0.5, 0.5, seed=27)
    bad = build_for_case(case, pair, LambdaParams.of(1.0, 1.0, 1.0))
    report = validate(bad)
    assert not report.psd_ok[2] and report.psd_ok[0] and report.psd_ok[1]
    good = build_for_case(case, pair, LambdaParams.of(3 - np.sqrt(5), (3 - np.sqrt(5)) / 2, 1.0))
    assert validate(good).all_ok


@pytest.mark.parametrize(
    "regime,dim", [(Regime.A1, 2), (Regime.A2, 2), (Regime.A4, 2), (Regime.A1, 3), (Regime.A2, 3), (Regime.A4, 3)]
)
def test_feasible_iff_psd(regime, dim):
    """The analytic predicate and the eigenvalue check agree on random samples."""
    rng = np.random.default_rng(hash((regime, dim, "agree")) % 2**32)
    case = KnowledgeCase(regime, dim)
    beta = 0.6
    pair = pair_with_overlap(dim, beta, 0.5, seed=28)
    for _ in range(200):
        if case.family is Family.UNKNOWN_UNKNOWN:
            n = 1 if dim == 2 else 3
            lam = LambdaParams.of(rng.uniform(0, 1.1, n), rng.uniform(0, 1.1, n))
        elif case.family is Family.KNOWN_UNKNOWN:
            n = dim - 1
            lam = LambdaParams.of(rng.uniform(0, 1, n), rng.uniform(0, 1, n), rng.uniform(0, 1, n * n))
        else:
            lam = LambdaParams.of(rng.uniform(0, 1), rng.uniform(0, 1))
        kwargs = {"beta": beta} if case.family is Family.KNOWN_KNOWN else {}
        ok = feasible(case, lam, **kwargs)
        try:
            povm = build_for_case(case, pair, lam)
        except ValueError:
            assert not ok
            continue
        min_eig = min(validate(povm).min_eigenvalues)
        if ok:
            assert min_eig >= -1e-9
        else:
            assert min_eig < 1e-12  # at worst marginal; never comfortably PSD


def test_per_index_qutrit_constraints_are_insufficient():
    """Frozen counterexample: the per-index inequalities admit coefficient
    choices that are not measurements.  At equal coefficients 2/3 the
    totally antisymmetric three-register direction gives the inconclusive
    element expectation 1 - 4/3 = -1/3 exactly."""
    lam = LambdaParams.of((2 / 3,) * 3, (2 / 3,) * 3)
    assert per_index_pair_program_constraints(lam)
    assert not feasible(KnowledgeCase(Regime.A1, 3), lam)
    povm = build_unknown_unknown(3, lam)
    omega = np.zeros(27, dtype=complex)
    from itertools import permutations

    for perm in permutations(range(3)):
        sign = 1 if perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        v = kron(kron(np.eye(3)[perm[0]], np.eye(3)[perm[1]]), np.eye(3)[perm[2]])
        omega += sign * v
    omega /= np.linalg.norm(omega)
    assert expectation(omega, povm.pi0) == pytest.approx(-1 / 3, abs=1e-12)
    assert min_eigenvalue(povm.pi0) <= -1 / 3 + 1e-12


def test_qutrit_pair_program_corrected_region():
    # equal per-index coefficients: PSD exactly on the simplex lam1 + lam2 <= 1
    rng = np.random.default_rng(29)
    case = KnowledgeCase(Regime.B1, 3)
    for _ in range(60):
        l1, l2 = rng.uniform(0, 1.1, 2)
        lam = LambdaParams.of((l1,) * 3, (l2,) * 3)
        povm = build_unknown_unknown(3, lam)
        psd = min_eigenvalue(povm.pi0) >= -1e-9
        assert feasible(case, lam) == psd == (l1 + l2 <= 1.0 + 1e-9)


def test_infeasible_coefficients_have_negative_eigenvalue():
    # pushing past the boundary by >= 1e-3 leaves a clearly negative eigenvalue
    offsets = 1e-3 / np.sqrt(2)
    cases = [
        (build_unknown_unknown, (2, LambdaParams.of(2 / 3 + offsets, 2 / 3 + offsets))),
        (build_unknown_unknown, (3, LambdaParams.of((0.5 + offsets,) * 3, (0.5 + offsets,) * 3))),
    ]
    for builder, args in cases:
        assert min_eigenvalue(builder(*args).pi0) <= -1e-6
    pair = pair_with_overlap(2, 0.5, 0.5, seed=30)
    lam = LambdaParams.of(2 / 3 + offsets, 2 / 3 + offsets)  # boundary of the direct case at beta=0.5
    povm = build_known_known(pair.psi1, pair.psi2, lam)
    assert min_eigenvalue(povm.pi0) <= -1e-6
