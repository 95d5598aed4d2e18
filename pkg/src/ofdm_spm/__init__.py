"""OFDM with subcarrier power modulation: modem, channel, analysis, harness."""

from .analysis import (
    BerBreakdown,
    ErrorCounts,
    PowerErrorTerms,
    ber_bpsk_avg,
    ber_breakdown,
    ber_level,
    ber_power,
    ber_total,
    count_errors,
    power_error_terms,
    rayleigh_bpsk_ber,
    throughput,
)
from .channel import (
    ChannelProfile,
    ChannelRealization,
    add_awgn,
    apply_channel,
    channel_frequency_response,
    default_profile,
    draw_channel,
    draw_flat_rayleigh,
    draw_taps,
    make_profile,
)
from .core import (
    DEFAULT_HIGH_FACTOR,
    Policy,
    PowerPair,
    SpmFrameBits,
    SubcarrierLayout,
    constellation_point,
    default_layout,
    detection_threshold,
    map_bpsk,
    merge_bitstream,
    power_pair_for,
    split_bitstream,
)
from .harness import (
    CSV_COLUMNS,
    SimConfig,
    SweepRecord,
    monte_carlo_objective,
    run_baseline_ofdm_bpsk,
    run_baseline_point,
    run_point,
    run_sweep,
    write_csv,
)
from .optimize import ScanResult, mean_ber_objective, reference_pair, scan_levels
from .rx import (
    EqualizedGrid,
    detect_bpsk_bit,
    detect_power_bit,
    equalize,
    equalize_symbols,
    ofdm_demodulate,
    receive_frame,
)
from .transforms import fft_unitary, ifft_unitary
from .tx import FreqGrid, TimeSymbol, assemble_grid, ofdm_modulate

__version__ = "0.1.0"
