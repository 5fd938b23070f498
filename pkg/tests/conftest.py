"""Shared fixtures: default link budget and seeded channel blocks."""
from collections.abc import Callable

import pytest

from src.channel.models import ChannelParams, ChannelSet
from src.channel.sampler import sample_channel_set, trial_rng
from src.snr_terms.models import SystemParams


@pytest.fixture
def system_params() -> SystemParams:
    """Default link budget (Γ = 0.7, P_A = P_E = 2 W, γ_th = 10, −80 dBm noise)."""
    return SystemParams()


@pytest.fixture
def channel_params() -> ChannelParams:
    """Default fading: η = 3, c0 = −20 dB, v = 3, d ~ U(1, 8) m."""
    return ChannelParams()


@pytest.fixture
def scenario(channel_params: ChannelParams) -> Callable[..., ChannelSet]:
    """Factory for the channel block of (trial, master seed)."""

    def make(trial: int, seed: int = 1) -> ChannelSet:
        return sample_channel_set(channel_params, trial_rng(seed, trial))

    return make
