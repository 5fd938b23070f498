"""Seeded Rician fading and geometry sampling."""
import math

import numpy as np

from src.channel.models import TWO_PI, ChannelParams, ChannelSet, Link, wrap_phase

# One distance per device pair, drawn in this order.
DEVICE_PAIRS: tuple[str, ...] = ("ap", "as", "sp", "ep", "es", "ea")

# Directed links in draw order, with the device pair that sets their distance.
DIRECTED_LINKS: tuple[tuple[str, str], ...] = (
    ("h_ap", "ap"),
    ("h_as", "as"),
    ("h_sa", "as"),
    ("h_sp", "sp"),
    ("h_ep", "ep"),
    ("h_es", "es"),
    ("h_se", "es"),
    ("h_ea", "ea"),
    ("h_ae", "ea"),
)


def db_to_linear(x_db: float, is_dbm: bool = False) -> float:
    """
    Convert a dB gain (or a dBm power) to linear units.

    Args:
        x_db: Value in dB, or in dBm when ``is_dbm`` is true
        is_dbm: Interpret the value as dBm and return watts

    Returns:
        Linear gain, or power in watts

    Raises:
        ValueError: If x_db is not finite or too large to convert
    """
    if not math.isfinite(x_db):
        raise ValueError(f"dB value must be finite, got {x_db}")
    try:
        linear = 10.0 ** (x_db / 10.0)
    except OverflowError as e:
        raise ValueError(f"dB value {x_db} overflows a linear float") from e
    return linear / 1000.0 if is_dbm else linear


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Generator for one Monte Carlo trial, derived from (master seed, trial index)."""
    return np.random.default_rng([master_seed, trial_index])


def path_loss_amplitude(d: float, params: ChannelParams) -> float:
    """Large-scale amplitude √(c0·(d/d0)^−v)."""
    return math.sqrt(params.c0 * (d / params.d0) ** (-params.v))


def _fading_weights(eta: float) -> tuple[float, float]:
    if math.isinf(eta):
        return 1.0, 0.0
    return math.sqrt(eta / (eta + 1.0)), math.sqrt(1.0 / (eta + 1.0))


def rician_coefficients(
    d: float,
    params: ChannelParams,
    rng: np.random.Generator,
    size: int,
) -> np.ndarray:
    """
    Draw ``size`` independent complex link coefficients at distance d.

    Vectorised form of sample_link, used for statistics over many draws.

    Raises:
        ValueError: If d is not positive
    """
    if not d > 0.0:
        raise ValueError(f"Distance must be positive, got {d}")
    los_weight, nlos_weight = _fading_weights(params.eta)
    los_phase = rng.uniform(0.0, TWO_PI, size)
    nlos = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
    small_scale = los_weight * np.exp(1j * los_phase) + nlos_weight * nlos
    return path_loss_amplitude(d, params) * small_scale


def sample_link(d: float, params: ChannelParams, rng: np.random.Generator) -> Link:
    """
    Draw one Rician-faded link at distance d.

    The LoS component has unit magnitude and a uniform phase; the NLoS
    component is circularly-symmetric complex Gaussian with unit variance.

    Args:
        d: Link distance in metres
        params: Fading parameters
        rng: Seeded generator (consumed: 1 uniform, 2 normals)

    Returns:
        Link with magnitude and aggregate phase of the drawn coefficient

    Raises:
        ValueError: If d is not positive
    """
    if not d > 0.0:
        raise ValueError(f"Distance must be positive, got {d}")
    los_weight, nlos_weight = _fading_weights(params.eta)
    los_phase = float(rng.uniform(0.0, TWO_PI))
    real, imag = rng.standard_normal(2)
    scale = path_loss_amplitude(d, params)

    if nlos_weight == 0.0:
        # pure LoS keeps the magnitude exact
        return Link(magnitude=scale * los_weight, phase=wrap_phase(los_phase))

    nlos = complex(real, imag) / math.sqrt(2.0)
    value = scale * (los_weight * complex(math.cos(los_phase), math.sin(los_phase)) + nlos_weight * nlos)
    return Link.from_complex(value)


def sample_channel_set(params: ChannelParams, rng: np.random.Generator) -> ChannelSet:
    """
    Draw one channel block: pair distances first, then the nine links.

    Args:
        params: Fading and geometry parameters
        rng: Seeded generator

    Returns:
        ChannelSet for one block-fading trial
    """
    distances = dict(
        zip(DEVICE_PAIRS, rng.uniform(params.dmin, params.dmax, len(DEVICE_PAIRS)).tolist())
    )
    links: dict[str, Link] = {}
    for name, pair in DIRECTED_LINKS:
        if name == "h_sa" and params.reciprocal:
            links[name] = links["h_as"]
            continue
        links[name] = sample_link(distances[pair], params, rng)
    return ChannelSet(**links)
