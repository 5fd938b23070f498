"""
Received-signal SNRs built from explicit complex path sums.

Independent of the closed-form terms: every component is formed as a sum of
complex path gains and its power taken as a squared magnitude. Inputs m, n
and phi_a broadcast as numpy arrays.

Conventions shared with the closed forms:
    - a link X->Y contributes h_XY·e^{jφ_XY}; the tag reflection contributes
      Γ·e^{−jφ_S}; the direct E->A leakage seen at A enters conjugated
    - the controller applies −e^{−jφ_A} to the forwarded attack copy
    - antenna noise forwarded along the direct and tag paths adds in power
"""
import numpy as np

from src.channel.models import ChannelSet, Link
from src.snr_terms.models import SystemParams


def _z(link: Link) -> complex:
    return link.magnitude * np.exp(1j * link.phase)


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(denominator > 0.0, numerator / np.where(denominator > 0.0, denominator, 1.0), np.inf)


def _out(value: np.ndarray) -> np.ndarray | float:
    return float(value) if np.ndim(value) == 0 else value


def phasor_snr(
    ch: ChannelSet,
    p: SystemParams,
    m,
    n,
    phi_a,
    *,
    coherent_suppression: bool = True,
):
    """
    SNRs at P, A and E for amplitudes (m, n) and controller phase φ_A.

    Args:
        ch: Channel block
        p: System parameters
        m: Data amplitude(s)
        n: AN amplitude(s)
        phi_a: Controller phase(s)
        coherent_suppression: False models independent AN (no coherent
            cancellation of the forwarded attack at P)

    Returns:
        (gamma_p, gamma_a, gamma_e); ``inf`` where interference power is zero
    """
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    phi_a = np.asarray(phi_a, dtype=float)
    tag = p.gamma_refl * np.exp(-1j * p.phi_s)

    z_ap, z_as, z_sa = _z(ch.h_ap), _z(ch.h_as), _z(ch.h_sa)
    z_sp, z_ep, z_es = _z(ch.h_sp), _z(ch.h_ep), _z(ch.h_es)
    z_se, z_ea, z_ae = _z(ch.h_se), _z(ch.h_ea), _z(ch.h_ae)

    # primary receiver
    via_tag = p.kappa2 * z_sp * tag * z_as
    direct = p.kappa3 * z_ap
    data_gain = via_tag + direct
    attack_gain = p.kappa1 * z_ep + p.kappa2 * z_sp * tag * z_es
    forwarded_gain = z_ea * data_gain

    signal_p = m**2 * np.abs(data_gain) ** 2
    if coherent_suppression:
        rotator = -np.exp(-1j * phi_a)
        attack_p = p.p_e * np.abs(attack_gain + n * rotator * forwarded_gain) ** 2
    else:
        attack_p = p.p_e * (np.abs(attack_gain) ** 2 + n**2 * np.abs(forwarded_gain) ** 2)
    antenna_noise_p = n**2 * p.sigma2_a * (np.abs(direct) ** 2 + np.abs(via_tag) ** 2)
    gamma_p = _ratio(signal_p, attack_p + antenna_noise_p + p.sigma2_p)

    # access point
    an_power = n**2 * (np.abs(z_ea) ** 2 * p.p_e + p.sigma2_a)
    loop = np.abs(z_as * tag * z_sa) ** 2
    useful_a = loop * (m**2 + p.theta * an_power)
    residual_a = p.beta * (1.0 - p.theta) * loop * an_power
    attack_a = p.tau * p.p_e * np.abs(z_sa * tag * z_es + np.conj(z_ea)) ** 2
    gamma_a = _ratio(useful_a, attack_a + residual_a + p.sigma2_a)

    # eavesdropper
    leak = np.abs(z_se * tag * z_as + p.alpha * z_ae) ** 2
    echo = p.p_e * np.abs(z_se * tag * z_es) ** 2
    decoded = (p.alpha * p.lambda_) ** 2 * m**2 * np.abs(z_as * tag * z_se) ** 2
    interference_e = an_power * leak + (1.0 - p.lambda_**2) * m**2 * leak + p.sigma2_e
    gamma_e = _ratio(echo + decoded, interference_e)

    return _out(gamma_p), _out(gamma_a), _out(gamma_e)


def phasor_phi1(ch: ChannelSet, p: SystemParams) -> float:
    """Angle between the direct attack at P and its forwarded copy (before the controller)."""
    tag = p.gamma_refl * np.exp(-1j * p.phi_s)
    data_gain = p.kappa2 * _z(ch.h_sp) * tag * _z(ch.h_as) + p.kappa3 * _z(ch.h_ap)
    attack_gain = p.kappa1 * _z(ch.h_ep) + p.kappa2 * _z(ch.h_sp) * tag * _z(ch.h_es)
    return float(np.angle(attack_gain) - np.angle(_z(ch.h_ea) * data_gain))
