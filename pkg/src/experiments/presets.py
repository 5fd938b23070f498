"""Figure-reproduction sweep presets."""
import math

import numpy as np

from src.channel.models import ChannelParams
from src.channel.sampler import db_to_linear
from src.experiments.models import PowerRatio, StrategySpec, SweepParameter, SweepSpec
from src.optimizer.models import Strategy
from src.snr_terms.models import SystemParams

FOUR_CURVES: tuple[str, ...] = ("PS+OA", "PS+DA", "AN+OA", "AN+DA")

PRESET_NAMES: tuple[str, ...] = (
    "fig3", "fig4", "fig5", "fig6", "fig7", "fig8a", "fig8b", "reflection",
)


def _grid(start: float, stop: float, count: int) -> list[float]:
    return [round(float(x), 12) for x in np.linspace(start, stop, count)]


def _dbm_grid(start: float, stop: float, step: float) -> list[float]:
    """Watts for start, start + step, ... stop dBm."""
    count = int(round((stop - start) / step)) + 1
    return [round(db_to_linear(start + k * step, is_dbm=True), 12) for k in range(count)]


def _curves(labels: tuple[str, ...]) -> list[StrategySpec]:
    return [StrategySpec.parse(label) for label in labels]


def figure_preset(
    name: str,
    trials: int = 10_000,
    master_seed: int = 1,
    base_params: SystemParams | None = None,
    channel_params: ChannelParams | None = None,
) -> list[SweepSpec]:
    """
    Sweeps reproducing one figure with the default link budget.

    Defaults: Γ = 0.7, P_A = P_E = 2 W, λ = 1, γ_th = 10, κ = 1, noise
    −80 dBm, d ~ U(1, 8) m, v = 3, η = 3, c0 = −20 dB. Most figures are a
    single sweep; ``fig7`` returns one sweep each for β, τ and θ.

    Args:
        name: One of fig3, fig4, fig5, fig6, fig7, fig8a, fig8b, reflection
        trials: Channel blocks per point
        master_seed: Seed shared by every returned sweep
        base_params: Override of the default SystemParams
        channel_params: Override of the default ChannelParams

    Returns:
        List of SweepSpec

    Raises:
        ValueError: If the name is unknown
    """
    base = base_params or SystemParams()
    channel = channel_params or ChannelParams()

    def spec(
        sweep_name: str,
        parameter: SweepParameter,
        values: list[float],
        labels: tuple[str, ...] = FOUR_CURVES,
        power_ratio: PowerRatio = PowerRatio.DAR,
        params: SystemParams = base,
    ) -> SweepSpec:
        return SweepSpec(
            name=sweep_name,
            swept_parameter=parameter,
            values=values,
            strategies=_curves(labels),
            trials=trials,
            master_seed=master_seed,
            base_params=params,
            channel_params=channel,
            power_ratio=power_ratio,
        )

    match name:
        case "fig3":
            return [spec("fig3", SweepParameter.P_A, _grid(0.2, 2.0, 10))]
        case "fig4":
            # 20 to 70 dBm, wide enough for the AN curves to reach zero
            return [spec("fig4", SweepParameter.P_E, _dbm_grid(20.0, 70.0, 5.0), power_ratio=PowerRatio.DER)]
        case "fig5":
            return [spec("fig5", SweepParameter.GAMMA_TH_P, [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0])]
        case "fig6":
            return [spec("fig6", SweepParameter.LAMBDA, _grid(0.0, 1.0, 11))]
        case "fig7":
            return [
                spec(f"fig7_{parameter.value}", parameter, _grid(0.0, 1.0, 11), labels=("PS+OA",))
                for parameter in (SweepParameter.BETA, SweepParameter.TAU, SweepParameter.THETA)
            ]
        case "fig8a":
            steps = [0.0, math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6, math.pi, 2 * math.pi]
            return [spec("fig8a", SweepParameter.DELTA_PHI, steps, labels=("PS+OA",))]
        case "fig8b":
            phases = [k * 2.0 * math.pi / 72 for k in range(72)]
            return [
                spec(
                    "fig8b",
                    SweepParameter.PHI_A_FIXED,
                    phases,
                    labels=("PS+OA",),
                    params=base.model_copy(update={"p_a": 2.0}),
                )
            ]
        case "reflection":
            return [spec("reflection", SweepParameter.GAMMA, _grid(0.1, 1.0, 10))]
        case _:
            raise ValueError(f"Unknown figure preset '{name}' (expected one of {', '.join(PRESET_NAMES)})")


def continuous_or_discrete(delta_phi: float) -> Strategy:
    """PS strategy for a delta_phi axis value; 0 selects continuous phase control."""
    return Strategy.continuous() if delta_phi == 0.0 else Strategy.discrete(delta_phi)
