"""Run configuration for the fdsr-secrecy CLI.

Config files are flat ``key=value`` text (``#`` comments allowed), read with
python-dotenv. Keys are case-insensitive. Units are converted to linear
watts / linear gains / radians at load time:

    p_a=33dBm            powers: W (default), mW or dBm suffix
    c0=-20dB             dimensionless gains: optional dB suffix
    delta_phi=pi/4       phases: radians, or a multiple of pi
    sweep_values=0.2,0.4,0.6

Precedence is CLI flags > config file > defaults.
"""
import math
import re
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.channel.models import ChannelParams
from src.channel.sampler import db_to_linear
from src.experiments.models import PowerRatio, StrategySpec, SweepParameter, SweepSpec
from src.experiments.presets import FOUR_CURVES
from src.optimizer.models import PhaseMode, Scheme, Strategy
from src.oracle.models import GridSpec
from src.snr_terms.models import SystemParams

POWER_KEYS = frozenset({"p_a", "p_e", "sigma2_a", "sigma2_p", "sigma2_e"})
GAIN_KEYS = frozenset({"c0", "gamma_refl"})
PHASE_KEYS = frozenset({"phi_s", "delta_phi", "fixed_phase"})
LIST_KEYS = frozenset({"sweep_values", "sweep_strategies"})

SYSTEM_KEYS = tuple(SystemParams.model_fields)
CHANNEL_KEYS = tuple(ChannelParams.model_fields)

_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_POWER_RE = re.compile(rf"^\s*({_NUMBER})\s*(w|mw|dbm)?\s*$", re.IGNORECASE)
_GAIN_RE = re.compile(rf"^\s*({_NUMBER})\s*(db)?\s*$", re.IGNORECASE)
_PI_RE = re.compile(rf"^\s*({_NUMBER})?\s*\*?\s*(?:pi|π)\s*(?:/\s*({_NUMBER}))?\s*$", re.IGNORECASE)


def parse_power(text: str) -> float:
    """
    Parse a power in watts, ``mW`` or ``dBm``.

    Raises:
        ValueError: If the text is not a number with an optional power suffix
    """
    match = _POWER_RE.match(text)
    if not match:
        raise ValueError(f"Invalid power '{text}' (expected e.g. 2, 2W, 500mW, -80dBm)")
    value, unit = float(match.group(1)), (match.group(2) or "w").lower()
    if unit == "dbm":
        return db_to_linear(value, is_dbm=True)
    return value / 1000.0 if unit == "mw" else value


def parse_gain(text: str) -> float:
    """Parse a linear gain, or a gain in ``dB``."""
    match = _GAIN_RE.match(text)
    if not match:
        raise ValueError(f"Invalid gain '{text}' (expected e.g. 0.01 or -20dB)")
    value = float(match.group(1))
    return db_to_linear(value) if match.group(2) else value


def parse_phase(text: str) -> float:
    """Parse a phase in radians, or a multiple of pi such as ``pi/8`` or ``2pi``."""
    match = _PI_RE.match(text)
    if match:
        scale = float(match.group(1)) if match.group(1) else 1.0
        divisor = float(match.group(2)) if match.group(2) else 1.0
        if divisor == 0.0:
            raise ValueError(f"Invalid phase '{text}' (division by zero)")
        return scale * math.pi / divisor
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"Invalid phase '{text}' (expected radians or e.g. pi/4)") from None


def _axis_parser(parameter: str):
    if parameter in (SweepParameter.P_A, SweepParameter.P_E):
        return parse_power
    if parameter in (SweepParameter.DELTA_PHI, SweepParameter.PHI_A_FIXED):
        return parse_phase
    if parameter == SweepParameter.GAMMA:
        return parse_gain
    return float


class RunConfig(BaseModel):
    """
    Fully resolved configuration of one CLI run.

    Holds every SystemParams and ChannelParams key under its own name
    (``lambda`` for λ), the strategy, solver, sweep and oracle settings.
    Unknown keys are rejected.
    """

    # SystemParams
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

    # ChannelParams
    eta: float = 3.0
    c0: float = 0.01
    d0: float = 1.0
    v: float = 3.0
    dmin: float = 1.0
    dmax: float = 8.0
    reciprocal: bool = False

    # Strategy
    scheme: Scheme = Scheme.PS
    phase_mode: PhaseMode = PhaseMode.CONTINUOUS
    delta_phi: float | None = None
    fixed_phase: float | None = None

    # Run
    seed: int = 1
    out: Path | None = None
    trials: int = 10_000
    threads: int = 1
    delta: float = 1e-6
    max_iter: int = 20

    # Sweep
    sweep_name: str | None = None
    sweep_parameter: SweepParameter = SweepParameter.P_A
    sweep_values: list[float] = Field(default_factory=lambda: [0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0])
    sweep_strategies: list[str] = Field(default_factory=lambda: list(FOUR_CURVES))

    # Oracle
    oracle_scenarios: int = 100
    grid_m_points: int = 10_000
    grid_phase_points: int = 720
    grid_clamp_to_feasible: bool = True

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        """Validate that the seed fits in 64 bits."""
        if not 0 <= v < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return v

    @field_validator("trials", "threads", "max_iter", "oracle_scenarios")
    @classmethod
    def validate_count(cls, v: int) -> int:
        """Validate that counts are positive."""
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("delta")
    @classmethod
    def validate_delta(cls, v: float) -> float:
        """Validate that the convergence threshold is nonnegative."""
        if not math.isfinite(v) or v < 0.0:
            raise ValueError("delta must be finite and nonnegative")
        return v

    @model_validator(mode="after")
    def validate_sections(self) -> "RunConfig":
        """Build every derived model once so errors surface at load time."""
        self.system_params()
        self.channel_params()
        self.strategy()
        self.grid_spec()
        self.strategy_specs()
        return self

    def system_params(self) -> SystemParams:
        return SystemParams.model_validate({key: getattr(self, key) for key in SYSTEM_KEYS})

    def channel_params(self) -> ChannelParams:
        return ChannelParams.model_validate({key: getattr(self, key) for key in CHANNEL_KEYS})

    def strategy(self) -> Strategy:
        return Strategy(
            scheme=self.scheme,
            phase_mode=self.phase_mode,
            delta_phi=self.delta_phi,
            fixed_phase=self.fixed_phase,
        )

    def grid_spec(self) -> GridSpec:
        return GridSpec(
            m_points=self.grid_m_points,
            phase_points=self.grid_phase_points,
            clamp_to_feasible=self.grid_clamp_to_feasible,
        )

    def strategy_specs(self) -> list[StrategySpec]:
        return [StrategySpec.parse(label) for label in self.sweep_strategies]

    def sweep_spec(self) -> SweepSpec:
        """Custom sweep described by the ``sweep_*`` keys."""
        return SweepSpec(
            name=self.sweep_name or f"sweep_{self.sweep_parameter.value}",
            swept_parameter=self.sweep_parameter,
            values=self.sweep_values,
            strategies=self.strategy_specs(),
            trials=self.trials,
            master_seed=self.seed,
            base_params=self.system_params(),
            channel_params=self.channel_params(),
            power_ratio=PowerRatio.DER if self.sweep_parameter == SweepParameter.P_E else PowerRatio.DAR,
            delta=self.delta,
            max_iter=self.max_iter,
        )

    def echo(self) -> dict[str, Any]:
        """JSON-ready resolved config for output metadata."""
        return self.model_dump(mode="json", by_alias=True)


def _convert(key: str, text: str, raw: dict[str, str]) -> Any:
    if key in POWER_KEYS:
        return parse_power(text)
    if key in GAIN_KEYS:
        return parse_gain(text)
    if key in PHASE_KEYS:
        return parse_phase(text)
    if key == "sweep_values":
        parser = _axis_parser(raw.get("sweep_parameter", SweepParameter.P_A.value).strip())
        return [parser(item) for item in text.split(",") if item.strip()]
    if key == "sweep_strategies":
        return [item.strip() for item in text.split(",") if item.strip()]
    return text.strip()


def parse_config_text(raw: dict[str, str | None]) -> dict[str, Any]:
    """
    Convert raw ``key=value`` strings into RunConfig input.

    Raises:
        ValueError: On a key without a value or a malformed quantity,
            naming the key
    """
    normalized = {key.strip().lower(): value for key, value in raw.items()}
    strings: dict[str, str] = {}
    for key, value in normalized.items():
        if value is None or not value.strip():
            raise ValueError(f"Config key '{key}' has no value")
        strings[key] = value

    parsed: dict[str, Any] = {}
    for key, text in strings.items():
        try:
            parsed[key] = _convert(key, text, strings)
        except ValueError as e:
            raise ValueError(f"Config key '{key}': {e}") from e
    return parsed


def load_run_config(path: Path | None = None, overrides: dict[str, Any] | None = None) -> RunConfig:
    """
    Load a RunConfig from an optional file plus CLI overrides.

    Args:
        path: Flat key=value config file (None uses defaults only)
        overrides: Already-typed values from CLI flags; None entries are ignored

    Returns:
        Validated RunConfig

    Raises:
        ValueError: If the file is missing, a value is malformed, a key is
            unknown or a value is out of range (pydantic ValidationError)
    """
    values: dict[str, Any] = {}
    if path is not None:
        if not path.is_file():
            raise ValueError(f"Config file not found: {path}")
        values = parse_config_text(dotenv_values(path))

    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return RunConfig.model_validate(values)
