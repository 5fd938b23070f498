"""Optimizer models."""
import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

TWO_PI = 2.0 * math.pi


class Scheme(StrEnum):
    """Noise-injection scheme."""

    PS = "PS"  # coherent forward suppression with pseudo-decoding
    AN = "AN"  # conventional independent artificial noise


class PhaseMode(StrEnum):
    """How the controller phase φ_A is chosen."""

    CONTINUOUS = "continuous"
    DISCRETE = "discrete"
    NONE = "none"
    FIXED = "fixed"


class CaseLabel(StrEnum):
    """Shape of the secrecy objective over the feasible interval."""

    CASE1 = "Case1"  # printed quadratic has no real root and stays positive
    CASE2 = "Case2"  # printed quadratic has no real root and stays negative
    CASE3 = "Case3"  # printed quadratic a > 0 with real roots
    CASE4 = "Case4"  # printed quadratic a <= 0 with real roots
    BOUNDARY_ONLY = "boundary-only"  # printed roots miss a verified extremum
    INFEASIBLE = "infeasible"
    GRID_SEARCH = "grid-search"


class Strategy(BaseModel):
    """
    Transmission strategy.

    Attributes:
        scheme: PS (forward suppression) or AN (conventional baseline)
        phase_mode: continuous, discrete (grid step ``delta_phi``), none
            (φ_A held at 0) or fixed (φ_A held at ``fixed_phase``)
        delta_phi: Discrete grid step in (0, 2π]
        fixed_phase: Held controller phase for the fixed mode
    """

    scheme: Scheme = Scheme.PS
    phase_mode: PhaseMode = PhaseMode.CONTINUOUS
    delta_phi: float | None = None
    fixed_phase: float | None = None

    model_config = ConfigDict(frozen=True, from_attributes=True)

    @field_validator("delta_phi")
    @classmethod
    def validate_delta_phi(cls, v: float | None) -> float | None:
        """Validate that the grid step lies in (0, 2π]."""
        if v is None:
            return None
        if not 0.0 < v <= TWO_PI:
            raise ValueError("delta_phi must lie in (0, 2π]")
        return v

    @model_validator(mode="after")
    def validate_mode(self) -> "Strategy":
        """Validate scheme and phase-mode combinations."""
        if self.scheme == Scheme.AN and self.phase_mode != PhaseMode.NONE:
            raise ValueError("AN scheme requires phase_mode 'none'")
        if self.phase_mode == PhaseMode.DISCRETE and self.delta_phi is None:
            raise ValueError("Discrete phase mode requires delta_phi")
        if self.phase_mode == PhaseMode.FIXED:
            if self.fixed_phase is None or not math.isfinite(self.fixed_phase):
                raise ValueError("Fixed phase mode requires a finite fixed_phase")
        return self

    @classmethod
    def continuous(cls) -> "Strategy":
        return cls(scheme=Scheme.PS, phase_mode=PhaseMode.CONTINUOUS)

    @classmethod
    def discrete(cls, delta_phi: float) -> "Strategy":
        return cls(scheme=Scheme.PS, phase_mode=PhaseMode.DISCRETE, delta_phi=delta_phi)

    @classmethod
    def fixed(cls, phase: float) -> "Strategy":
        return cls(scheme=Scheme.PS, phase_mode=PhaseMode.FIXED, fixed_phase=phase)

    @classmethod
    def baseline(cls) -> "Strategy":
        return cls(scheme=Scheme.AN, phase_mode=PhaseMode.NONE)

    @property
    def label(self) -> str:
        """Short name, e.g. ``PS``, ``PS/discrete(0.3927)``, ``AN``."""
        if self.scheme == Scheme.AN or self.phase_mode == PhaseMode.CONTINUOUS:
            return self.scheme.value
        if self.phase_mode == PhaseMode.DISCRETE:
            return f"PS/discrete({self.delta_phi:.4f})"
        if self.phase_mode == PhaseMode.FIXED:
            return f"PS/fixed({self.fixed_phase:.4f})"
        return "PS/none"


class Interval(BaseModel):
    """Closed interval [lo, hi] of data amplitudes m."""

    lo: float
    hi: float

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_bounds(self) -> "Interval":
        """Validate 0 <= lo <= hi."""
        if not 0.0 <= self.lo <= self.hi:
            raise ValueError(f"Invalid interval [{self.lo}, {self.hi}]")
        return self

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi


class StationaryCandidates(BaseModel):
    """
    Finite-difference-verified stationary amplitudes of the secrecy objective.

    Attributes:
        values: Verified amplitudes, ascending
        printed_values: Verified amplitudes found from the printed quadratic alone
        degenerate: The objective is constant (all derivative coefficients vanish)
        printed: (a, b, c) coefficients in their published form
        derived: (k2, k1, k0) of the exact derivative numerator in u = m²
    """

    values: list[float] = Field(default_factory=list)
    printed_values: list[float] = Field(default_factory=list)
    degenerate: bool = False
    printed: tuple[float, float, float]
    derived: tuple[float, float, float]


class PowerAllocation(BaseModel):
    """Outcome of optimising the data amplitude at a fixed phase alignment."""

    feasible: bool
    m_star: float = 0.0
    objective: float = 0.0
    case_label: CaseLabel
    interval: Interval | None = None
    candidates_evaluated: list[float] = Field(default_factory=list)


class Solution(BaseModel):
    """
    Optimised operating point of one scenario.

    Attributes:
        feasible: Whether the primary SNR constraint can be met
        m_star, n_star: Data and AN amplitudes
        phi_a_star: Controller phase φ_A in [0, 2π)
        gamma_p, gamma_a, gamma_e: Resulting SNRs (γ_E is ``inf`` when the
            eavesdropper denominator vanishes)
        r_s: Secrecy rate in bits/s/Hz
        iterations: Alternating rounds used
        case_label: Objective shape at the optimum
        candidates_evaluated: Amplitudes compared in the final round
        objective_trace: Secrecy rate after each round
        phi1: Attack-forwarding phase offset φ₁
    """

    feasible: bool
    m_star: float = 0.0
    n_star: float = 0.0
    phi_a_star: float = 0.0
    gamma_p: float = 0.0
    gamma_a: float = 0.0
    gamma_e: float = 0.0
    r_s: float = 0.0
    iterations: int = 1
    case_label: CaseLabel
    candidates_evaluated: list[float] = Field(default_factory=list)
    objective_trace: list[float] = Field(default_factory=list)
    phi1: float = 0.0

    model_config = ConfigDict(from_attributes=True)

    @model_validator(mode="after")
    def validate_infeasible(self) -> "Solution":
        """Validate that an infeasible solution carries zero secrecy."""
        if not self.feasible and self.r_s != 0.0:
            raise ValueError("Infeasible solution must have r_s = 0")
        if self.r_s < 0.0:
            raise ValueError("Secrecy rate must be nonnegative")
        return self

    @classmethod
    def infeasible(cls, phi1: float = 0.0, iterations: int = 1) -> "Solution":
        return cls(
            feasible=False,
            case_label=CaseLabel.INFEASIBLE,
            iterations=iterations,
            phi1=phi1,
        )
