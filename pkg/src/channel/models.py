"""Channel models."""
import cmath
import math

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

TWO_PI = 2.0 * math.pi


class Link(BaseModel):
    """
    One directed wireless link.

    The amplitude gain and the aggregate propagation phase of the link.
    Every per-link delay term and phase symbol of the signal model is folded
    into the single ``phase`` value.

    Attributes:
        magnitude: Amplitude gain h_XY (dimensionless, >= 0)
        phase: Aggregate phase φ_XY in radians, normalised to [0, 2π)
    """

    magnitude: float
    phase: float

    model_config = ConfigDict(frozen=True, from_attributes=True)

    @field_validator("magnitude")
    @classmethod
    def validate_magnitude(cls, v: float) -> float:
        """Validate that magnitude is finite and nonnegative."""
        if not math.isfinite(v) or v < 0.0:
            raise ValueError("Link magnitude must be finite and nonnegative")
        return v

    @field_validator("phase")
    @classmethod
    def validate_phase(cls, v: float) -> float:
        """Validate that phase lies in [0, 2π)."""
        if not math.isfinite(v) or v < 0.0 or v >= TWO_PI:
            raise ValueError("Link phase must lie in [0, 2π)")
        return v

    @property
    def complex_value(self) -> complex:
        """Complex baseband coefficient magnitude·e^{jφ}."""
        return cmath.rect(self.magnitude, self.phase)

    @classmethod
    def from_complex(cls, value: complex) -> "Link":
        """Build a Link from a complex coefficient."""
        return cls(magnitude=abs(value), phase=wrap_phase(cmath.phase(value)))


class ChannelSet(BaseModel):
    """
    All nine directed links of one channel block.

    Device letters: A = access point (full-duplex), P = primary receiver,
    S = backscatter device, E = eavesdropper / attacker.
    """

    h_ap: Link
    h_as: Link
    h_sa: Link
    h_sp: Link
    h_ep: Link
    h_es: Link
    h_se: Link
    h_ea: Link
    h_ae: Link

    model_config = ConfigDict(frozen=True, from_attributes=True)


class ChannelParams(BaseModel):
    """
    Large-scale and small-scale fading parameters.

    Attributes:
        eta: Rician factor η (LoS to scattered power ratio); ``inf`` is pure LoS
        c0: Linear power gain at the reference distance
        d0: Reference distance in metres
        v: Path-loss exponent
        dmin: Lower bound of the uniform device distance, metres
        dmax: Upper bound of the uniform device distance, metres
        reciprocal: When true the A->S and S->A links share one draw
    """

    eta: float = 3.0
    c0: float = 0.01
    d0: float = 1.0
    v: float = 3.0
    dmin: float = 1.0
    dmax: float = 8.0
    reciprocal: bool = False

    model_config = ConfigDict(frozen=True, from_attributes=True)

    @field_validator("eta")
    @classmethod
    def validate_eta(cls, v: float) -> float:
        """Validate that eta is nonnegative (infinity allowed)."""
        if math.isnan(v) or v < 0.0:
            raise ValueError("Rician factor eta must be nonnegative")
        return v

    @field_validator("c0", "d0")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Validate that reference gain and distance are positive."""
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError("Reference gain c0 and distance d0 must be positive")
        return v

    @field_validator("v")
    @classmethod
    def validate_exponent(cls, v: float) -> float:
        """Validate that the path-loss exponent is nonnegative."""
        if not math.isfinite(v) or v < 0.0:
            raise ValueError("Path-loss exponent must be nonnegative")
        return v

    @field_validator("dmin", "dmax")
    @classmethod
    def validate_distance(cls, v: float) -> float:
        """Validate that distance bounds are positive."""
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError("Distance bounds must be positive")
        return v

    @model_validator(mode="after")
    def validate_distance_range(self) -> "ChannelParams":
        """Validate that dmin does not exceed dmax."""
        if self.dmin > self.dmax:
            raise ValueError("dmin must not exceed dmax")
        return self


def wrap_phase(phase: float) -> float:
    """Normalise an angle to [0, 2π)."""
    wrapped = math.fmod(phase, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # fmod of a tiny negative angle can round up to exactly 2π
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped
