"""Closed-form SNR evaluation."""
import math

from src.channel.models import ChannelSet
from src.snr_terms.errors import ModelViolationError
from src.snr_terms.models import SnrTerms, SystemParams


def _coherent_power(x: float, y: float, delta: float) -> float:
    """|x + y·e^{jδ}|² in its cosine form, clamped at zero against rounding."""
    return max(x * x + y * y + 2.0 * x * y * math.cos(delta), 0.0)


def compute_terms(ch: ChannelSet, p: SystemParams) -> SnrTerms:
    """
    Evaluate every closed-form term for one channel block.

    Each formula is evaluated literally with the aggregate link phases; the
    unit-power backscatter symbol contributes amplitude Γ and G² = σ²_P.

    Args:
        ch: Channel block
        p: System parameters

    Returns:
        SnrTerms with T², U², V², J², G², φ₁, M̂, Q̂, L, R, Â, B̂, C, D and σ²_N
    """
    gamma = p.gamma_refl
    phi_s = p.phi_s

    h_ap, ph_ap = ch.h_ap.magnitude, ch.h_ap.phase
    h_as, ph_as = ch.h_as.magnitude, ch.h_as.phase
    h_sa, ph_sa = ch.h_sa.magnitude, ch.h_sa.phase
    h_sp, ph_sp = ch.h_sp.magnitude, ch.h_sp.phase
    h_ep, ph_ep = ch.h_ep.magnitude, ch.h_ep.phase
    h_es, ph_es = ch.h_es.magnitude, ch.h_es.phase
    h_se, ph_se = ch.h_se.magnitude, ch.h_se.phase
    h_ea, ph_ea = ch.h_ea.magnitude, ch.h_ea.phase
    h_ae, ph_ae = ch.h_ae.magnitude, ch.h_ae.phase

    # primary receiver: data via A->S->P and A->P, attack via E->P and E->S->P
    via_tag = p.kappa2 * h_sp * gamma * h_as
    direct = p.kappa3 * h_ap
    attack_direct = p.kappa1 * h_ep
    attack_via_tag = p.kappa2 * h_sp * gamma * h_es

    t2 = _coherent_power(via_tag, direct, ph_sp - phi_s + ph_as - ph_ap)
    u2 = p.p_e * _coherent_power(attack_direct, attack_via_tag, ph_ep - ph_sp - ph_es + phi_s)
    v2 = h_ea * h_ea * p.p_e * t2
    j2 = p.sigma2_a * (direct * direct + via_tag * via_tag)

    attack_angle = math.atan2(
        attack_direct * math.sin(ph_ep) + attack_via_tag * math.sin(ph_sp + ph_es - phi_s),
        attack_direct * math.cos(ph_ep) + attack_via_tag * math.cos(ph_sp + ph_es - phi_s),
    )
    forwarded_angle = math.atan2(
        via_tag * math.sin(ph_sp - phi_s + ph_as + ph_ea) + direct * math.sin(ph_ap + ph_ea),
        via_tag * math.cos(ph_sp - phi_s + ph_as + ph_ea) + direct * math.cos(ph_ap + ph_ea),
    )
    phi1 = attack_angle - forwarded_angle

    # access point: own carrier reflected through S
    loop_power = (h_sa * h_as * gamma) ** 2
    m_hat = p.p_a * p.theta * loop_power
    q_hat = (1.0 - p.theta) * loop_power
    attack_at_a = _coherent_power(h_sa * gamma * h_es, h_ea, ph_sa + ph_es - phi_s + ph_ea)
    l_term = (
        p.tau * p.p_e * attack_at_a
        + p.beta * p.p_a * (1.0 - p.theta) * loop_power
        + p.sigma2_a
    )
    r_term = -p.beta * (1.0 - p.theta) * loop_power

    # eavesdropper: own attack reflected by S carries the tag data
    a_hat = (h_se * gamma * h_es) ** 2 * p.p_e
    b_hat = (p.alpha * p.lambda_ * h_as * gamma * h_se) ** 2
    leakage = _coherent_power(h_se * gamma * h_as, p.alpha * h_ae, ph_se - phi_s + ph_as - ph_ae)
    c_den = p.p_a * leakage + p.sigma2_e
    d_den = -(p.lambda_ ** 2) * leakage

    return SnrTerms(
        t2=t2,
        u2=u2,
        v2=v2,
        j2=j2,
        g2=p.sigma2_p,
        phi1=phi1,
        m_hat=m_hat,
        q_hat=q_hat,
        l_term=l_term,
        r_term=r_term,
        a_hat=a_hat,
        b_hat=b_hat,
        c_den=c_den,
        d_den=d_den,
        sigma2_n=h_ea * h_ea * p.p_e + p.sigma2_a,
    )


def gamma_p_aligned(t: SnrTerms, m: float, n: float, phi: float) -> float:
    """
    Primary SNR with the phase alignment given directly as phi = cos(φ_A + φ₁).

    Raises:
        ModelViolationError: If the denominator is not positive
    """
    denominator = (t.u2 + t.g2) + n * n * (t.v2 + t.j2) - 2.0 * n * t.u * t.v * phi
    if not denominator > 0.0:
        raise ModelViolationError(f"Primary SNR denominator is {denominator}")
    return m * m * t.t2 / denominator


def gamma_p(
    t: SnrTerms,
    m: float,
    n: float,
    phi_a: float,
    *,
    suppression: bool = True,
) -> float:
    """
    SNR at the primary receiver.

    Args:
        t: Closed-form terms
        m: Data amplitude
        n: AN amplitude
        phi_a: Controller phase φ_A
        suppression: When false the coherent cross term is dropped, as for
            conventional independent artificial noise

    Returns:
        γ_P

    Raises:
        ModelViolationError: If the denominator is not positive
    """
    phi = math.cos(phi_a + t.phi1) if suppression else 0.0
    return gamma_p_aligned(t, m, n, phi)


def gamma_a(t: SnrTerms, m: float) -> float:
    """SNR at the access point, (M̂ + Q̂m²)/(L + Rm²)."""
    denominator = t.l_term + t.r_term * m * m
    if not denominator > 0.0:
        raise ModelViolationError(f"Access-point SNR denominator is {denominator}")
    return (t.m_hat + t.q_hat * m * m) / denominator


def gamma_e(t: SnrTerms, m: float) -> float:
    """SNR at the eavesdropper, (Â + B̂m²)/(C + Dm²)."""
    denominator = t.c_den + t.d_den * m * m
    if not denominator > 0.0:
        raise ModelViolationError(f"Eavesdropper SNR denominator is {denominator}")
    return (t.a_hat + t.b_hat * m * m) / denominator


def security_rate(g_a: float, g_e: float) -> float:
    """
    Secrecy rate max{0, log2(1 + γ_A) − log2(1 + γ_E)} in bits/s/Hz.

    Raises:
        ValueError: If either SNR is negative or NaN
    """
    if not (g_a >= 0.0 and g_e >= 0.0):
        raise ValueError(f"SNRs must be nonnegative, got {g_a} and {g_e}")
    if math.isinf(g_e):
        return 0.0
    return max(0.0, math.log2(1.0 + g_a) - math.log2(1.0 + g_e))
