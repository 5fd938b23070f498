"""Oracle models."""
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator


class GridSpec(BaseModel):
    """
    Resolution of the brute-force search.

    Attributes:
        m_points: Data-amplitude grid points over [0, √P_A]
        phase_points: Phase grid points over [0, 2π) for continuous phase control
        clamp_to_feasible: Add the primary-SNR feasibility boundaries, located
            by bisection on the phasor SNR, to the evaluated amplitudes
    """

    m_points: int = 10_000
    phase_points: int = 720
    clamp_to_feasible: bool = True

    model_config = ConfigDict(frozen=True)

    @field_validator("m_points")
    @classmethod
    def validate_m_points(cls, v: int) -> int:
        """Validate that the amplitude grid has at least two points."""
        if v < 2:
            raise ValueError("m_points must be at least 2")
        return v

    @field_validator("phase_points")
    @classmethod
    def validate_phase_points(cls, v: int) -> int:
        """Validate that the phase grid has at least one point."""
        if v < 1:
            raise ValueError("phase_points must be at least 1")
        return v

    def refined(self, factor: int = 2) -> "GridSpec":
        """Same grid with both resolutions multiplied by ``factor``."""
        return self.model_copy(
            update={"m_points": self.m_points * factor, "phase_points": self.phase_points * factor}
        )


class AuditRecord(BaseModel):
    """Analytic vs brute-force comparison for one scenario."""

    trial: int
    analytic_r_s: float
    reference_r_s: float
    abs_diff: float
    analytic_feasible: bool
    reference_feasible: bool


class OracleAuditReport(BaseModel):
    """
    Summary of a paired analytic vs brute-force audit.

    Attributes:
        master_seed: Seed the scenarios were derived from
        scenarios: Number of scenarios compared
        tolerance: Disagreement threshold in bits/s/Hz
        max_abs_diff, mean_abs_diff: |Δr_s| statistics
        disagreements: Scenarios with |Δr_s| above the tolerance
        offending_seeds: ``<master_seed>:<trial>`` for each disagreement
        feasibility_disagreements: Scenarios where only one side found a feasible point
        records: Per-scenario comparison
    """

    master_seed: int
    scenarios: int
    tolerance: float
    max_abs_diff: float
    mean_abs_diff: float
    disagreements: int
    offending_seeds: list[str] = Field(default_factory=list)
    feasibility_disagreements: int = 0
    records: list[AuditRecord] = Field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        """Per-scenario records as a DataFrame."""
        return pd.DataFrame([record.model_dump() for record in self.records])
