"""Rayleigh multipath channel: tap profiles, random realizations, AWGN.

The tap gains are circular-symmetric complex Gaussians whose variances
follow a delay/power profile normalized to unit total power, so the
per-subcarrier frequency response has E|H_k|^2 = 1 and plain Rayleigh
statistics on every bin. A flat i.i.d. per-subcarrier mode is also
provided as the statistical reference case for the closed-form curves.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .transforms import fft_unitary


@dataclass(frozen=True, eq=False)
class ChannelProfile:
    """Power-delay profile. powers holds the normalized linear tap powers."""

    delays: np.ndarray = field(repr=False)
    powers_db: np.ndarray = field(repr=False)
    powers: np.ndarray = field(repr=False)

    @property
    def max_delay(self) -> int:
        return int(self.delays[-1])


def make_profile(delays, powers_db) -> ChannelProfile:
    """Validate a delay/power table and normalize powers to unit sum.

    Delays are integer sample offsets, strictly increasing from a first
    tap at 0. Powers are relative dB values; the absolute scale is
    irrelevant because the linear powers are renormalized to sum(p_k) = 1.
    """
    d = np.asarray(delays)
    p_db = np.asarray(powers_db, dtype=np.float64)
    if d.ndim != 1 or p_db.ndim != 1 or d.size != p_db.size:
        raise ValueError("delays and powers_db must be 1-D and equally long")
    if d.size == 0:
        raise ValueError("profile needs at least one tap")
    if not np.issubdtype(d.dtype, np.integer):
        if not np.all(d == np.round(d)):
            raise ValueError("delays must be integer sample offsets")
        d = d.astype(np.int64)
    if d[0] != 0:
        raise ValueError(f"first delay must be 0, got {d[0]}")
    if np.any(np.diff(d) <= 0):
        raise ValueError("delays must be strictly increasing")
    lin = 10.0 ** (p_db / 10.0)
    return ChannelProfile(
        delays=d.astype(np.intp), powers_db=p_db, powers=lin / lin.sum()
    )


def default_profile() -> ChannelProfile:
    """Five-tap decaying profile used by the reference multipath sweeps."""
    return make_profile((0, 3, 5, 6, 8), (0.0, -8.0, -17.0, -21.0, -25.0))


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One block-fading draw: time-domain taps plus their DFT."""

    taps: np.ndarray = field(repr=False)
    freq_response: np.ndarray = field(repr=False)


def draw_taps(profile: ChannelProfile, count: int, rng) -> np.ndarray:
    """Draw `count` independent tap vectors, shape (count, max_delay + 1).

    Tap k is CN(0, p_k); positions between the profile delays stay zero.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    taps = np.zeros((count, profile.max_delay + 1), dtype=np.complex128)
    g = rng.standard_normal((count, profile.delays.size, 2))
    taps[:, profile.delays] = np.sqrt(profile.powers / 2.0) * (
        g[..., 0] + 1j * g[..., 1]
    )
    return taps


def channel_frequency_response(taps, fft_size: int) -> np.ndarray:
    """Unnormalized DFT of the zero-padded taps, H_k = sum_m h_m e^{-j2pi km/N}.

    This is the per-subcarrier response seen after a cyclic prefix at least
    as long as the delay spread, and the quantity the equalizer divides by.
    Works on a single tap vector or a batch (last axis = delay).
    """
    taps = np.asarray(taps)
    depth = taps.shape[-1]
    if depth > fft_size:
        raise ValueError(
            f"delay spread {depth - 1} does not fit an FFT of size {fft_size}"
        )
    padded = np.zeros(taps.shape[:-1] + (fft_size,), dtype=np.complex128)
    padded[..., :depth] = taps
    return np.sqrt(fft_size) * fft_unitary(padded)


def draw_channel(profile: ChannelProfile, rng, fft_size: int = 64) -> ChannelRealization:
    """One block-fading realization with its frequency response."""
    taps = draw_taps(profile, 1, rng)[0]
    return ChannelRealization(
        taps=taps, freq_response=channel_frequency_response(taps, fft_size)
    )


def apply_channel(samples, channel) -> np.ndarray:
    """Linear convolution with the channel taps, truncated to the input length.

    `channel` may be a ChannelRealization or a raw tap array; a batch of tap
    vectors convolves row-wise with a batch of sample rows. With a cyclic
    prefix covering the delay spread the truncation loses nothing.
    """
    taps = channel.taps if isinstance(channel, ChannelRealization) else np.asarray(channel)
    x = np.asarray(samples)
    length = x.shape[-1]
    if taps.shape[-1] > length:
        raise ValueError("channel is longer than the input block")
    out = np.zeros(np.broadcast_shapes(x.shape[:-1], taps.shape[:-1]) + (length,),
                   dtype=np.complex128)
    for d in range(taps.shape[-1]):
        tap = taps[..., d : d + 1]
        if not tap.any():
            continue
        out[..., d:] += tap * x[..., : length - d]
    return out


def add_awgn(samples, n0: float, rng) -> np.ndarray:
    """Add complex white Gaussian noise of variance n0 per sample."""
    if n0 < 0:
        raise ValueError(f"noise density must be nonnegative, got {n0!r}")
    x = np.asarray(samples)
    g = rng.standard_normal(x.shape + (2,))
    return x + np.sqrt(n0 / 2.0) * (g[..., 0] + 1j * g[..., 1])


def draw_flat_rayleigh(count: int, rng) -> np.ndarray:
    """i.i.d. CN(0, 1) per-subcarrier gains (E|g|^2 = 1), shape (count,)."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    g = rng.standard_normal((count, 2))
    return (g[:, 0] + 1j * g[:, 1]) / np.sqrt(2.0)
