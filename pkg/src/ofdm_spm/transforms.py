"""Unitary radix-2 FFT used by the modulator and demodulator.

Self-contained so the signal path does not depend on an external FFT.
Both directions carry the symmetric 1/sqrt(N) scaling, which keeps symbol
energy identical in both domains (Parseval) and makes the forward and
inverse transforms exact inverses of each other. Transforms act on the
last axis, so batches of symbols go through in one call.
"""
from __future__ import annotations

import numpy as np

MAX_SIZE = 4096

# per-size plans: (bit-reversal permutation, per-stage twiddle tables)
_PLANS: dict[int, tuple[np.ndarray, list[np.ndarray]]] = {}


def _plan(n: int):
    plan = _PLANS.get(n)
    if plan is None:
        stages = n.bit_length() - 1
        idx = np.arange(n)
        rev = np.zeros(n, dtype=np.intp)
        for _ in range(stages):
            rev = (rev << 1) | (idx & 1)
            idx >>= 1
        twiddles = [
            np.exp(-2j * np.pi * np.arange(2**s) / 2 ** (s + 1))
            for s in range(stages)
        ]
        plan = (rev, twiddles)
        _PLANS[n] = plan
    return plan


def _transform(x, inverse: bool) -> np.ndarray:
    x = np.asarray(x)
    n = x.shape[-1]
    if n == 0 or n & (n - 1):
        raise ValueError(f"transform length must be a power of two, got {n}")
    if n > MAX_SIZE:
        raise ValueError(f"transform length {n} exceeds the maximum {MAX_SIZE}")
    rev, twiddles = _plan(n)
    y = np.ascontiguousarray(x[..., rev], dtype=np.complex128)
    lead = y.shape[:-1]
    for w in twiddles:
        if inverse:
            w = w.conj()
        half = w.size
        view = y.reshape(lead + (n // (2 * half), 2 * half))
        a = view[..., :half].copy()
        b = view[..., half:] * w
        view[..., :half] = a + b
        view[..., half:] = a - b
    y *= 1.0 / np.sqrt(n)
    return y


def fft_unitary(x) -> np.ndarray:
    """Forward DFT with 1/sqrt(N) scaling, along the last axis."""
    return _transform(x, inverse=False)


def ifft_unitary(x) -> np.ndarray:
    """Inverse DFT with 1/sqrt(N) scaling, along the last axis."""
    return _transform(x, inverse=True)


if __name__ == "__main__":
    # quick self-check against the O(N^2) definition
    rng = np.random.default_rng(0)
    for size in (2, 8, 64, 256):
        v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        k = np.arange(size)
        dft = np.exp(-2j * np.pi * np.outer(k, k) / size) @ v / np.sqrt(size)
        err = np.max(np.abs(fft_unitary(v) - dft))
        rt = np.max(np.abs(ifft_unitary(fft_unitary(v)) - v))
        print(f"N={size:4d}  vs direct DFT {err:.3e}  round trip {rt:.3e}")
