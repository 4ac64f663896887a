"""BPSK over AWGN and channel LLR computation.

Sign conventions: bit 0 maps to +1, bit 1 to -1, and LLRs are
L_i = ln p(y_i | c_i = 0) / p(y_i | c_i = 1), so positive LLR favours
bit 0 and the ML metric sum L_i * (1 - 2c_i) is maximised by the
transmitted word.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidRate, InvalidSigma


def ebn0_to_sigma(ebn0_db: float, rate: float) -> float:
    """Noise standard deviation for unit-energy BPSK at a given Eb/N0."""
    if not 0.0 < rate <= 1.0:
        raise InvalidRate(f"rate must be in (0, 1], got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def modulate(bits) -> np.ndarray:
    """Map bits to BPSK symbols: 0 -> +1, 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def transmit(bits, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """BPSK-modulate and add white Gaussian noise of std deviation sigma.

    Accepts a single word or a (batch, n) array of words.
    """
    x = modulate(bits)
    if sigma == 0.0:
        return x
    return x + rng.normal(0.0, sigma, size=x.shape)


def channel_llr(y, sigma: float) -> np.ndarray:
    """Channel LLRs for AWGN/BPSK observations: L = 2 y / sigma^2."""
    if sigma <= 0.0:
        raise InvalidSigma(f"sigma must be positive, got {sigma}")
    return 2.0 * np.asarray(y, dtype=np.float64) / (sigma * sigma)
