"""Sweep models."""
import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.channel.models import ChannelParams
from src.optimizer.models import Strategy
from src.snr_terms.models import SystemParams


class SweepParameter(StrEnum):
    """Axis a sweep varies."""

    P_A = "P_A"
    P_E = "P_E"
    GAMMA_TH_P = "gamma_th_p"
    LAMBDA = "lambda"
    GAMMA = "Gamma"
    BETA = "beta"
    TAU = "tau"
    THETA = "theta"
    DELTA_PHI = "delta_phi"
    PHI_A_FIXED = "phi_a_fixed"


# SystemParams field set by each scalar axis.
PARAMETER_FIELDS: dict[SweepParameter, str] = {
    SweepParameter.P_A: "p_a",
    SweepParameter.P_E: "p_e",
    SweepParameter.GAMMA_TH_P: "gamma_th_p",
    SweepParameter.LAMBDA: "lambda_",
    SweepParameter.GAMMA: "gamma_refl",
    SweepParameter.BETA: "beta",
    SweepParameter.TAU: "tau",
    SweepParameter.THETA: "theta",
}


class PowerRatio(StrEnum):
    """Which power the optimum data power is normalised by."""

    DAR = "DAR"  # m*² / P_A
    DER = "DER"  # m*² / P_E


class StrategySpec(BaseModel):
    """A strategy paired with the eavesdropper antenna mode it runs against."""

    strategy: Strategy
    alpha: int = 1

    model_config = ConfigDict(frozen=True)

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: int) -> int:
        """Validate that the antenna mode is 0 or 1."""
        if v not in (0, 1):
            raise ValueError("Antenna mode alpha must be 0 or 1")
        return v

    @property
    def label(self) -> str:
        """Curve name such as ``PS+OA`` or ``AN+DA``."""
        return f"{self.strategy.label}+{'OA' if self.alpha == 1 else 'DA'}"

    @classmethod
    def parse(cls, label: str) -> "StrategySpec":
        """
        Parse ``PS+OA``, ``PS+DA``, ``AN+OA`` or ``AN+DA``.

        Raises:
            ValueError: If the label is not one of the four curves
        """
        scheme, _, mode = label.strip().upper().partition("+")
        if scheme not in ("PS", "AN") or mode not in ("OA", "DA"):
            raise ValueError(f"Unknown strategy label '{label}' (expected e.g. PS+OA)")
        strategy = Strategy.continuous() if scheme == "PS" else Strategy.baseline()
        return cls(strategy=strategy, alpha=1 if mode == "OA" else 0)


class SweepSpec(BaseModel):
    """
    One Monte Carlo sweep.

    Every trial draws one channel block from (master_seed, trial index) and
    reuses it for all parameter values and strategies (paired comparison).

    Attributes:
        name: File stem for the CSV and metadata outputs
        swept_parameter: Axis being varied
        values: Axis values, ascending (for delta_phi, 0 means continuous)
        strategies: Curves to compute
        trials: Channel blocks per point
        master_seed: 64-bit seed
        base_params: Parameters held fixed apart from the swept axis
        channel_params: Fading and geometry parameters
        power_ratio: DAR or DER normalisation of the optimum data power
        delta, max_iter: Alternating solver settings
    """

    name: str = "sweep"
    swept_parameter: SweepParameter
    values: list[float]
    strategies: list[StrategySpec]
    trials: int = 10_000
    master_seed: int = 1
    base_params: SystemParams = Field(default_factory=SystemParams)
    channel_params: ChannelParams = Field(default_factory=ChannelParams)
    power_ratio: PowerRatio = PowerRatio.DAR
    delta: float = 1e-6
    max_iter: int = 20

    model_config = ConfigDict(frozen=True)

    @field_validator("name")
    @classmethod
    def validate_name(cls, v: str) -> str:
        """Validate that the name is a usable file stem."""
        v = v.strip()
        if not v or "/" in v or "\\" in v:
            raise ValueError("Sweep name must be a non-empty file stem")
        return v

    @field_validator("values")
    @classmethod
    def validate_values(cls, v: list[float]) -> list[float]:
        """Validate that values are nonempty and sorted ascending."""
        if not v:
            raise ValueError("Sweep values cannot be empty")
        if any(b < a for a, b in zip(v, v[1:])):
            raise ValueError("Sweep values must be sorted ascending")
        return v

    @field_validator("strategies")
    @classmethod
    def validate_strategies(cls, v: list[StrategySpec]) -> list[StrategySpec]:
        """Validate that at least one strategy is swept."""
        if not v:
            raise ValueError("Sweep needs at least one strategy")
        return v

    @field_validator("trials", "max_iter")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Validate that counts are positive."""
        if v < 1:
            raise ValueError("trials and max_iter must be at least 1")
        return v

    @field_validator("master_seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        """Validate that the seed fits in 64 bits."""
        if not 0 <= v < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        return v

    @model_validator(mode="after")
    def validate_axis_values(self) -> "SweepSpec":
        """Validate axis-specific ranges before any trial runs."""
        if self.swept_parameter == SweepParameter.DELTA_PHI:
            if any(not 0.0 <= x <= 2.0 * math.pi for x in self.values):
                raise ValueError("delta_phi values must lie in [0, 2π] (0 = continuous)")
        return self


class SweepRow(BaseModel):
    """
    One averaged point of a sweep.

    ``mean_signal_power`` and ``mean_power_ratio`` average over feasible
    trials only; ``mean_r_s`` counts infeasible trials as zero.
    """

    parameter_value: float
    strategy_label: str
    mean_r_s: float
    mean_signal_power: float
    mean_power_ratio: float
    infeasible_fraction: float
    trials: int
    stderr_r_s: float = 0.0

    @field_validator("infeasible_fraction")
    @classmethod
    def validate_fraction(cls, v: float) -> float:
        """Validate that the fraction lies in [0, 1]."""
        if not 0.0 <= v <= 1.0:
            raise ValueError("infeasible_fraction must lie in [0, 1]")
        return v

    @field_validator("mean_r_s")
    @classmethod
    def validate_rate(cls, v: float) -> float:
        """Validate that the mean secrecy rate is nonnegative."""
        if v < 0.0:
            raise ValueError("mean_r_s must be nonnegative")
        return v
