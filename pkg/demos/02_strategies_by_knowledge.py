"""Optimal success probability as a function of what is known in advance.

Rows fix the true (overlap, prior) point; columns add knowledge: nothing
about the states (0), one state (1), one state plus the overlap (1+),
both states (2).  A regimes know the prior, B regimes do not.
"""

from unambig import KnowledgeCase, Regime, success_probability

POINTS = [(0.2, 0.5), (0.5, 0.3), (0.7, 0.8)]
ORDER = [Regime.A1, Regime.A2, Regime.A3, Regime.A4, Regime.B1, Regime.B2, Regime.B3, Regime.B4]

header = "beta  eta1 | " + " | ".join(f"{r.value:>6}" for r in ORDER)
print(header)
print("-" * len(header))
for beta, eta1 in POINTS:
    cells = []
    for regime in ORDER:
        res = success_probability(KnowledgeCase(regime, 2), beta, eta1)
        cells.append(f"{res.p_analytic:6.4f}")
    print(f"{beta:4.2f}  {eta1:4.2f} | " + " | ".join(cells))

print()
res = success_probability(KnowledgeCase(Regime.A3, 2), 0.5, 0.3)
print(f"a3 at (0.5, 0.3): lam = {tuple(round(x, 4) for x in res.lam.flat)}, branch '{res.branch}'")
res = success_probability(KnowledgeCase(Regime.B3, 2), 0.9, 0.3)
print(f"b3 at (0.9, .): actual = {res.p_analytic:.4f}, worst case over the prior = {res.worst_case_value:.4f}")
print("\nknowing more never hurts along a1 -> a2 -> a3 -> a4 at fixed (beta, eta1);")
print("the a2-vs-b2 comparison is subtler: see demo 05.")
