"""Test helpers shared across packages."""
import numpy as np

from src.channel.models import ChannelSet, Link
from src.snr_terms.models import SnrTerms, SystemParams

LINK_NAMES: tuple[str, ...] = tuple(ChannelSet.model_fields)


def aligned(ch: ChannelSet) -> ChannelSet:
    """Same magnitudes with every phase set to zero."""
    return ChannelSet(
        **{name: Link(magnitude=getattr(ch, name).magnitude, phase=0.0) for name in LINK_NAMES}
    )


def random_params(rng: np.random.Generator) -> SystemParams:
    """System parameters drawn across their whole valid ranges."""
    return SystemParams(
        p_a=float(rng.uniform(0.1, 4.0)),
        p_e=float(rng.uniform(0.0, 4.0)),
        sigma2_a=float(10.0 ** rng.uniform(-12.0, -9.0)),
        sigma2_p=float(10.0 ** rng.uniform(-12.0, -9.0)),
        sigma2_e=float(10.0 ** rng.uniform(-12.0, -9.0)),
        gamma_refl=float(rng.uniform(0.05, 1.0)),
        phi_s=float(rng.uniform(0.0, 2.0 * np.pi)),
        theta=float(rng.uniform(0.0, 1.0)),
        beta=float(rng.uniform(0.0, 1.0)),
        tau=float(rng.uniform(0.0, 1.0)),
        alpha=int(rng.integers(0, 2)),
        lambda_=float(rng.uniform(0.0, 1.0)),
        kappa1=float(rng.uniform(0.5, 2.0)),
        kappa2=float(rng.uniform(0.5, 2.0)),
        kappa3=float(rng.uniform(0.5, 2.0)),
        gamma_th_p=float(rng.uniform(0.0, 20.0)),
    )


def snr_envelopes(
    t: SnrTerms,
    envelope: SnrTerms,
    m: float,
    n: float,
    alignment: float,
) -> dict[str, tuple[float, float, float]]:
    """
    (numerator envelope, denominator, denominator envelope) of each SNR.

    ``envelope`` holds the terms of the same magnitudes with every phase
    aligned, which bounds each coherent sum; rounding in either SNR
    implementation is relative to these bounds.
    """
    return {
        "p": (
            m * m * envelope.t2,
            (t.u2 + t.g2) + n * n * (t.v2 + t.j2) - 2.0 * n * t.u * t.v * alignment,
            (envelope.u2 + envelope.g2) + n * n * (envelope.v2 + envelope.j2) + 2.0 * n * envelope.u * envelope.v,
        ),
        "a": (
            envelope.m_hat + envelope.q_hat * m * m,
            t.l_term + t.r_term * m * m,
            envelope.l_term - envelope.r_term * m * m,
        ),
        "e": (
            envelope.a_hat + envelope.b_hat * m * m,
            t.c_den + t.d_den * m * m,
            envelope.c_den - envelope.d_den * m * m,
        ),
    }


def within_roundoff(closed: float, reference: float, bounds: tuple[float, float, float], rel: float = 1e-12) -> bool:
    """|closed − reference| <= rel·(N_env + |γ|·D_env)/D."""
    numerator_env, denominator, denominator_env = bounds
    tolerance = rel * (numerator_env + abs(closed) * denominator_env) / abs(denominator)
    return abs(closed - reference) <= tolerance
