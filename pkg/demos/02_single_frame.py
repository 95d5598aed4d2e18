"""One OFDM symbol, end to end, with every intermediate stage printed.

104 random bits become 52 subcarrier values (sign = BPSK bit, amplitude
= power bit) and ride through a multipath channel before the
zero-forcing receiver takes them apart again. With no noise the loopback
is exact; with noise you can watch individual decisions wobble.
"""

import numpy as np

from ofdm_spm import (
    Policy,
    count_errors,
    default_layout,
    assemble_grid,
    ofdm_modulate,
    power_pair_for,
    receive_frame,
    split_bitstream,
)
from ofdm_spm.channel import add_awgn, apply_channel, default_profile, draw_channel
from ofdm_spm.tx import TimeSymbol

CP = 16


def run_once(n0: float, rng) -> None:
    layout = default_layout()
    pair = power_pair_for(Policy.POWER_SAVING, 1.35)

    bits = rng.integers(0, 2, size=104)
    frame = split_bitstream(bits, 52)
    grid = assemble_grid(frame, pair, layout)
    print(f"  first data bins: {np.round(grid.data[:6].real, 4)}")

    sym = ofdm_modulate(grid, cp_len=CP)
    chan = draw_channel(default_profile(), rng, fft_size=64)
    received = add_awgn(apply_channel(sym.samples, chan), n0, rng)

    out = receive_frame(
        TimeSymbol(samples=received, cp_len=CP), chan.freq_response, pair, layout
    )
    counts = count_errors(frame, out)
    print(f"  power-bit errors: {counts.power_errors} / 52")
    print(f"  bpsk-bit errors:  {counts.bpsk_errors} / 52")


def main():
    rng = np.random.default_rng(42)
    print("noiseless (n0 = 0): equalization undoes the channel exactly")
    run_once(0.0, rng)
    print()
    print("10 dB per-subcarrier SNR (n0 = 0.1): a few decisions flip")
    run_once(0.1, rng)
    print()
    print("0 dB (n0 = 1): the power bit suffers first, its margins are smaller")
    run_once(1.0, rng)


if __name__ == "__main__":
    main()
