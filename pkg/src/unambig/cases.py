"""Knowledge regimes for discriminating two pure states.

Eight regimes arise from two independent axes of prior knowledge:

* classical knowledge of the states themselves (none, one state, one
  state plus the overlap modulus, or both states), and
* whether the preparation prior ``eta1`` is known (A regimes) or not
  (B regimes).

The measurement *family* is fixed by the state knowledge alone; the
prior only affects how the free measurement coefficients are chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Family(str, Enum):
    """Which discriminator is built, decided by state knowledge only."""

    UNKNOWN_UNKNOWN = "unknown_unknown"  # single copies of both states in program registers
    KNOWN_UNKNOWN = "known_unknown"      # one state known, a copy of the other in a program register
    KNOWN_KNOWN = "known_known"          # both states known, direct measurement


class Regime(str, Enum):
    A1 = "a1"
    A2 = "a2"
    A3 = "a3"
    A4 = "a4"
    B1 = "b1"
    B2 = "b2"
    B3 = "b3"
    B4 = "b4"

    @property
    def knows_eta1(self) -> bool:
        return self.value[0] == "a"

    @property
    def knows_psi1(self) -> bool:
        return self.value[1] in "234"

    @property
    def knows_psi2(self) -> bool:
        return self.value[1] == "4"

    @property
    def knows_beta(self) -> bool:
        return self.value[1] in "34"

    @property
    def family(self) -> Family:
        if self.knows_psi2:
            return Family.KNOWN_KNOWN
        if self.knows_psi1:
            return Family.KNOWN_UNKNOWN
        return Family.UNKNOWN_UNKNOWN


@dataclass(frozen=True)
class KnowledgeCase:
    """One of the eight regimes applied to qubits (dim 2) or qutrits (dim 3)."""

    regime: Regime
    dim: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.regime, Regime):
            object.__setattr__(self, "regime", Regime(str(self.regime).lower()))
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")

    @property
    def family(self) -> Family:
        return self.regime.family

    @property
    def decision_inputs(self) -> frozenset[str]:
        """Names of the parameters the decision is allowed to depend on."""
        inputs = set()
        if self.regime.knows_beta:
            inputs.add("beta")
        if self.regime.knows_eta1:
            inputs.add("eta1")
        return frozenset(inputs)

    @property
    def register_dim(self) -> int:
        """Dimension of the space the POVM acts on."""
        if self.family is Family.UNKNOWN_UNKNOWN:
            return self.dim**3
        if self.family is Family.KNOWN_UNKNOWN:
            return self.dim**2
        return self.dim

    def __str__(self) -> str:
        return f"{self.regime.value}/dim{self.dim}"


ALL_REGIMES = tuple(Regime)
