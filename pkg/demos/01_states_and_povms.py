"""Build state pairs and the three discriminator families, then validate them.

The measurement family depends only on what is classically known about
the states; the free coefficients are bounded by positivity of the
inconclusive element.
"""

import numpy as np

from unambig import (
    KnowledgeCase,
    LambdaParams,
    Regime,
    build_for_case,
    input_states,
    pair_with_overlap,
    validate,
)
from unambig.linalg import expectation

pair = pair_with_overlap(dim=2, beta=0.5, eta1=0.4, seed=7)
print(f"psi1 = {np.round(pair.psi1.vec, 4)}")
print(f"psi2 = {np.round(pair.psi2.vec, 4)}  overlap = {pair.beta}")

for regime in (Regime.A1, Regime.A2, Regime.A4):
    case = KnowledgeCase(regime, dim=2)
    if case.family.value == "unknown_unknown":
        lam = LambdaParams.of(2 / 3, 2 / 3)
    elif case.family.value == "known_unknown":
        lam = LambdaParams.of(0.5, 0.5, 1.0)
    else:
        lam = LambdaParams.of(0.6, 0.6)
    povm = build_for_case(case, pair, lam)
    report = validate(povm)
    in1, in2 = input_states(case, pair)
    print(f"\n{case.family.value} (register dim {case.register_dim})")
    print(f"  min eigenvalues   : {np.round(report.min_eigenvalues, 6)}")
    print(f"  completeness      : {report.completeness_residual:.2e}")
    print(f"  p(correct | 1)    : {expectation(in1, povm.pi1):.6f}")
    print(f"  p(correct | 2)    : {expectation(in2, povm.pi2):.6f}")
    print(f"  p(wrong)          : {expectation(in2, povm.pi1):.2e}, {expectation(in1, povm.pi2):.2e}")

# the coefficients are bounded: push past the boundary and positivity breaks
bad = LambdaParams.of(1.0, 1.0)
report = validate(build_for_case(KnowledgeCase(Regime.A1, 2), pair, bad))
print(f"\ncoefficients (1, 1) for two unknown states: min eig = {min(report.min_eigenvalues):.4f} (not a POVM)")
