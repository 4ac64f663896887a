"""Ensemble decoding of short LDPC codes.

A library and CLI for comparing five ensemble decoding schemes -- MBBP
(multiple parity-check bases), AED (automorphisms), SED (layer-order
scrambling), NED (LLR noise injection) and SBP (sign saturation) --
over a shared belief-propagation core, with a seeded Monte-Carlo
harness reporting BLER, UER and the ensemble recovery probability.
"""

from .bp import (CLAMP, DecodeOutcome, Schedule, TannerGraph,
                 decode_flooding, decode_layered, top_to_bottom_schedule,
                 shuffled_schedule)
from .channel import channel_llr, ebn0_to_sigma, modulate, transmit
from .codes import CODE_NAMES, Code, CheckPool, encode, get_code
from .ensemble import (DecoderConfig, EnsembleResult, run_aed, run_mbbp,
                       run_ned, run_sbp, run_sed, select_ml)
from .errors import EnsLdpcError
from .sim import (ExperimentConfig, StopRule, SweepResult, measure_uer,
                  ml_oracle_decode, run_point, run_sweep)

__all__ = [
    "CLAMP", "DecodeOutcome", "Schedule", "TannerGraph", "decode_flooding",
    "decode_layered", "top_to_bottom_schedule", "shuffled_schedule",
    "channel_llr", "ebn0_to_sigma", "modulate", "transmit",
    "CODE_NAMES", "Code", "CheckPool", "encode", "get_code",
    "DecoderConfig", "EnsembleResult", "run_aed", "run_mbbp", "run_ned",
    "run_sbp", "run_sed", "select_ml",
    "EnsLdpcError",
    "ExperimentConfig", "StopRule", "SweepResult", "measure_uer",
    "ml_oracle_decode", "run_point", "run_sweep",
]

__version__ = "0.1.0"
