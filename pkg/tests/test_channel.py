import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ensldpc.channel import channel_llr, ebn0_to_sigma, modulate, transmit
from ensldpc.errors import InvalidRate, InvalidSigma


def test_sigma_formula():
    # sigma^2 = 1 / (2 R 10^(EbN0/10))
    assert ebn0_to_sigma(0.0, 0.5) == pytest.approx(1.0)
    assert ebn0_to_sigma(10.0, 0.5) == pytest.approx(np.sqrt(0.1))


def test_sigma_monotone_in_snr():
    s = [ebn0_to_sigma(db, 0.5) for db in np.linspace(-2, 8, 11)]
    assert all(a > b for a, b in zip(s, s[1:]))


def test_invalid_rate():
    with pytest.raises(InvalidRate):
        ebn0_to_sigma(1.0, 0.0)


def test_modulation_map():
    assert np.array_equal(modulate([0, 1, 0]), [1.0, -1.0, 1.0])


def test_llr_sign_matches_bits():
    # noiseless: positive LLR for bit 0, negative for bit 1
    y = modulate([0, 1])
    l = channel_llr(y, 0.8)
    assert l[0] > 0 > l[1]
    assert l[0] == pytest.approx(2.0 / 0.8**2)


def test_invalid_sigma():
    with pytest.raises(InvalidSigma):
        channel_llr([1.0], 0.0)


def test_transmit_statistics():
    rng = np.random.default_rng(0)
    y = transmit(np.zeros((2000, 16), dtype=np.uint8), 0.7, rng)
    assert y.mean() == pytest.approx(1.0, abs=0.01)
    assert y.std() == pytest.approx(0.7, abs=0.01)


@given(st.floats(-2.0, 8.0), st.floats(0.05, 0.95))
@settings(max_examples=50, deadline=None)
def test_llr_is_sufficient_statistic_scale(ebn0, rate):
    sigma = ebn0_to_sigma(ebn0, rate)
    y = np.array([0.3, -1.2])
    l = channel_llr(y, sigma)
    assert np.allclose(l, 2.0 * y / sigma**2)
