"""System parameters and closed-form SNR term models."""
import math

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator


class SystemParams(BaseModel):
    """
    Link-budget and receiver parameters of one scenario.

    All powers are linear watts; dB/dBm conversion happens at the config
    boundary (see config/run_config.py).

    Attributes:
        p_a: Transmit budget P_A of the access point
        p_e: Attack power P_E of the eavesdropper
        sigma2_a, sigma2_p, sigma2_e: Antenna-noise variances at A, P, E
        gamma_refl: Backscatter amplitude coefficient Γ
        phi_s: Circuit phase φ_S of the backscatter device
        theta: Pseudo-information approximation level θ
        beta: Residual coefficient of the pseudo-noise at A
        tau: Residual coefficient of the attack signal at A
        alpha: Eavesdropper antenna mode (1 = omnidirectional, 0 = directional)
        lambda_: Eavesdropper decode/cancel factor λ (config key ``lambda``)
        kappa1, kappa2, kappa3: Equivalent antenna gains
        gamma_th_p: Primary SNR threshold γ^th_P
    """

    p_a: float = 2.0
    p_e: float = 2.0
    sigma2_a: float = 1e-11
    sigma2_p: float = 1e-11
    sigma2_e: float = 1e-11
    gamma_refl: float = 0.7
    phi_s: float = 0.0
    theta: float = 0.5
    beta: float = 0.01
    tau: float = 0.01
    alpha: int = 1
    lambda_: float = Field(default=1.0, alias="lambda")
    kappa1: float = 1.0
    kappa2: float = 1.0
    kappa3: float = 1.0
    gamma_th_p: float = 10.0

    model_config = ConfigDict(frozen=True, populate_by_name=True, from_attributes=True)

    @field_validator(
        "p_a", "p_e", "sigma2_a", "sigma2_p", "sigma2_e",
        "kappa1", "kappa2", "kappa3", "gamma_th_p",
    )
    @classmethod
    def validate_nonnegative(cls, v: float) -> float:
        """Validate that powers, gains and the threshold are finite and nonnegative."""
        if not math.isfinite(v) or v < 0.0:
            raise ValueError("Powers, antenna gains and thresholds must be finite and nonnegative")
        return v

    @field_validator("gamma_refl", "theta", "beta", "tau", "lambda_")
    @classmethod
    def validate_unit_interval(cls, v: float) -> float:
        """Validate that coefficients lie in [0, 1]."""
        if not 0.0 <= v <= 1.0:
            raise ValueError("Coefficient must lie in [0, 1]")
        return v

    @field_validator("phi_s")
    @classmethod
    def validate_phase(cls, v: float) -> float:
        """Validate that the circuit phase is finite."""
        if not math.isfinite(v):
            raise ValueError("Circuit phase must be finite")
        return v

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: int) -> int:
        """Validate that the antenna mode is 0 or 1."""
        if v not in (0, 1):
            raise ValueError("Antenna mode alpha must be 0 or 1")
        return v


class SnrTerms(BaseModel):
    """
    Closed-form terms of the three SNR expressions.

    Primary receiver:
        γ_P = m²T² / [(U² + G²) + n²(V² + J²) − 2nUV·cos(φ_A + φ₁)]
    Access point:
        γ_A = (M̂ + Q̂m²) / (L + Rm²)
    Eavesdropper:
        γ_E = (Â + B̂m²) / (C + Dm²)

    ``c_den`` is the constant C of the eavesdropper denominator (not the
    backscatter symbol, which is unit power and folded into Γ).
    """

    t2: float
    u2: float
    v2: float
    j2: float
    g2: float
    phi1: float
    m_hat: float
    q_hat: float
    l_term: float
    r_term: float
    a_hat: float
    b_hat: float
    c_den: float
    d_den: float
    sigma2_n: float

    model_config = ConfigDict(frozen=True, from_attributes=True)

    @field_validator("t2", "u2", "v2", "j2", "g2", "sigma2_n", "m_hat", "q_hat", "a_hat", "b_hat")
    @classmethod
    def validate_nonnegative(cls, v: float) -> float:
        """Validate that power terms are nonnegative."""
        if not v >= 0.0:
            raise ValueError("Power terms must be nonnegative")
        return v

    @field_validator("r_term", "d_den")
    @classmethod
    def validate_cancellation(cls, v: float) -> float:
        """Validate that cancellation terms are nonpositive."""
        if not v <= 0.0:
            raise ValueError("Cancellation terms R and D must be nonpositive")
        return v

    @computed_field
    @property
    def m_agg(self) -> float:
        """M = M̂ + L."""
        return self.m_hat + self.l_term

    @computed_field
    @property
    def q_agg(self) -> float:
        """Q = Q̂ + R."""
        return self.q_hat + self.r_term

    @computed_field
    @property
    def a_agg(self) -> float:
        """A = Â + C."""
        return self.a_hat + self.c_den

    @computed_field
    @property
    def b_agg(self) -> float:
        """B = B̂ + D."""
        return self.b_hat + self.d_den

    @property
    def u(self) -> float:
        return math.sqrt(self.u2)

    @property
    def v(self) -> float:
        return math.sqrt(self.v2)
