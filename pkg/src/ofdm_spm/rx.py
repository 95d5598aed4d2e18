"""Receive side: CP removal, FFT, zero-forcing equalization, bit decisions.

Power and BPSK detection are deliberately independent per subcarrier: the
power bit looks only at the energy of the in-phase component against the
threshold T, the BPSK bit only at the sign of the in-phase component.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import PowerPair, SpmFrameBits, SubcarrierLayout, detection_threshold
from .transforms import fft_unitary
from .tx import FreqGrid, TimeSymbol

# gains below this magnitude are treated as unusable (erased subcarrier)
GAIN_FLOOR = 1e-12


@dataclass(eq=False)
class EqualizedGrid:
    """Per-data-subcarrier symbol estimates after zero-forcing."""

    symbols: np.ndarray = field(repr=False)
    erased: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.symbols = np.asarray(self.symbols, dtype=np.complex128)
        self.erased = np.asarray(self.erased, dtype=bool)
        if self.symbols.shape != self.erased.shape:
            raise ValueError("symbols and erased mask must have equal shape")


def ofdm_demodulate(sym: TimeSymbol, layout: SubcarrierLayout) -> FreqGrid:
    """Strip the cyclic prefix and return to the frequency grid."""
    expected = layout.fft_size + sym.cp_len
    if sym.samples.size != expected:
        raise ValueError(
            f"expected {expected} samples (N={layout.fft_size} + "
            f"cp={sym.cp_len}), got {sym.samples.size}"
        )
    return FreqGrid(bins=fft_unitary(sym.samples[sym.cp_len :]), layout=layout)


def equalize_symbols(received, gains):
    """Array-level zero-forcing: S_hat = Y / H with an erasure guard.

    Subcarriers whose gain magnitude is below GAIN_FLOOR are flagged erased
    and their estimate forced to 0, which the detectors decode as (0, 0).
    Returns (symbols, erased); broadcasting over leading axes is fine.
    """
    y = np.asarray(received, dtype=np.complex128)
    h = np.asarray(gains, dtype=np.complex128)
    erased = np.abs(h) < GAIN_FLOOR
    symbols = np.divide(y, np.where(erased, 1.0, h))
    return np.where(erased, 0.0, symbols), erased


def equalize(received: FreqGrid, gains) -> EqualizedGrid:
    """Zero-forcing equalization of the data bins with perfect CSI.

    `gains` is the complex channel response, either over all FFT bins
    (length fft_size, e.g. ChannelRealization.freq_response) or already
    restricted to the data bins (length n).
    """
    gains = np.asarray(gains)
    layout = received.layout
    if gains.shape == (layout.fft_size,):
        gains = gains[layout.data_bins]
    elif gains.shape != (layout.n,):
        raise ValueError(
            f"gains must cover all {layout.fft_size} bins or the "
            f"{layout.n} data bins, got shape {gains.shape}"
        )
    symbols, erased = equalize_symbols(received.data, gains)
    return EqualizedGrid(symbols=symbols, erased=erased)


def detect_power_bit(s, t: float):
    """Power-bit decision: 1 when the in-phase energy exceeds t, else 0.

    After equalization the constellation is real, so the quadrature part
    of s is noise only and stays out of the decision statistic; checking
    Re(s)^2 against the midpoint threshold is the matched 1-D rule.
    Exact ties resolve to 0. Vectorized over arrays.
    """
    s = np.asarray(s)
    return (np.square(s.real) > t).astype(np.int8)


def detect_bpsk_bit(s):
    """BPSK decision on the sign of the in-phase part: 1 if Re(s) > 0."""
    s = np.asarray(s)
    return (s.real > 0).astype(np.int8)


def receive_frame(sym: TimeSymbol, gains, pair: PowerPair, layout: SubcarrierLayout) -> SpmFrameBits:
    """Full receiver for one symbol: demodulate, equalize, detect both streams."""
    eq = equalize(ofdm_demodulate(sym, layout), gains)
    t = detection_threshold(pair)
    return SpmFrameBits(
        power_bits=detect_power_bit(eq.symbols, t),
        bpsk_bits=detect_bpsk_bit(eq.symbols),
    )
