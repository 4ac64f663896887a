"""Ensemble decoders over a common belief-propagation core.

Five ensemble constructions share the same shape: M constituent
decoders each produce a hard candidate, candidates are gated by the
syndrome of a canonical parity-check matrix, and the winner is the
valid candidate with the largest correlation to the channel LLRs
(ML-in-the-list).  Branch indices are 0-based throughout; branch 0 is
the "plain" decoder (identity transform / top-to-bottom schedule /
unperturbed LLRs / all-positive saturation).

The ``run_*`` functions operate on a single LLR vector and return an
:class:`EnsembleResult` with per-branch outcomes.  The ``*_batch``
functions are the vectorised cores used by the Monte-Carlo engine and
return compact arrays.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .automorphisms import Permutation, apply_perm, inverse, require_automorphism
from .bp import (CLAMP, DecodeOutcome, Schedule, TannerGraph,
                 decode_flooding, decode_flooding_batch, decode_layered,
                 decode_layered_batch, top_to_bottom_schedule)
from .errors import (DimensionMismatch, EmptyList, NotPowerOfTwo)
from .gf2 import as_binary, syndrome_bits

__all__ = [
    "DecoderConfig", "EnsembleResult", "select_ml",
    "run_mbbp", "run_aed", "run_sed", "run_ned", "run_sbp",
    "select_ml_batch", "mbbp_batch", "aed_batch", "sed_batch",
    "ned_batch", "sbp_batch", "BatchResult", "sbp_saturations",
]


@dataclass(frozen=True)
class DecoderConfig:
    """Shared constituent-decoder settings.

    ``variant`` is ``"flooding"`` or ``"layered"``; layered runs need a
    ``schedule``.  ``early_stop`` terminates a constituent decoder at
    the first iteration whose hard decision satisfies its own matrix.
    """

    max_iter: int = 8
    variant: str = "flooding"
    schedule: Schedule | None = None
    early_stop: bool = True

    def __post_init__(self):
        if self.variant not in ("flooding", "layered"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "layered" and self.schedule is None:
            raise ValueError("layered variant requires a schedule")


@dataclass(frozen=True)
class EnsembleResult:
    """Outcome of one ensemble decoding attempt.

    ``per_branch`` holds each branch's candidate already mapped back to
    the code domain, with validity re-gated against the canonical
    matrix.  ``winner_index`` is None when no branch produced a valid
    candidate, in which case ``selected`` falls back to branch 0.
    """

    selected: np.ndarray
    selected_valid: bool
    per_branch: tuple
    winner_index: int | None


@dataclass(frozen=True)
class BatchResult:
    """Vectorised ensemble outcome for a batch of trials.

    ``winner`` is -1 where no branch was valid.  ``branch0`` is the
    first branch's (gated) candidate, kept for recovery statistics.
    """

    selected: np.ndarray        # (batch, n) uint8
    selected_valid: np.ndarray  # (batch,) bool
    winner: np.ndarray          # (batch,) int64
    branch0: np.ndarray         # (batch, n) uint8
    branch0_valid: np.ndarray   # (batch,) bool


# ---------------------------------------------------------------------------
# ML-in-the-list selection.
# ---------------------------------------------------------------------------

def select_ml_batch(l_ch: np.ndarray, candidates: np.ndarray,
                    valid: np.ndarray):
    """Pick the valid candidate with the largest correlation metric.

    l_ch: (batch, n); candidates: (batch, m, n); valid: (batch, m).
    Returns (selected (batch, n), selected_valid (batch,), winner
    (batch,) with -1 where nothing was valid).  Ties break toward the
    lowest branch index; trials with no valid candidate fall back to
    branch 0.
    """
    metric = np.einsum("bn,bmn->bm", l_ch,
                       1.0 - 2.0 * candidates.astype(np.float64))
    metric = np.where(valid, metric, -np.inf)
    winner = metric.argmax(axis=1)
    any_valid = valid.any(axis=1)
    winner = np.where(any_valid, winner, 0)
    selected = candidates[np.arange(len(winner)), winner]
    return selected, any_valid, np.where(any_valid, winner, -1)


def select_ml(l_ch, candidates):
    """Single-trial ML-in-the-list selection.

    ``candidates`` is a sequence of (bits, valid) pairs.  Returns
    (choice, winner_index) where winner_index is None when no candidate
    is valid (the fallback choice is then branch 0's candidate).
    """
    if len(candidates) == 0:
        raise EmptyList("select_ml needs at least one candidate")
    l_ch = np.asarray(l_ch, dtype=np.float64)
    bits = np.stack([as_binary(np.asarray(c)).ravel() for c, _ in candidates])
    if bits.shape[1] != l_ch.shape[0]:
        raise DimensionMismatch(
            f"candidate length {bits.shape[1]} != LLR length {l_ch.shape[0]}")
    flags = np.array([bool(v) for _, v in candidates])
    sel, ok, win = select_ml_batch(l_ch[None, :], bits[None, :, :],
                                   flags[None, :])
    return sel[0], (int(win[0]) if ok[0] else None)


# ---------------------------------------------------------------------------
# Shared plumbing.
# ---------------------------------------------------------------------------

def _decode_batch(graph, l_ch, cfg: DecoderConfig):
    if cfg.variant == "flooding":
        return decode_flooding_batch(graph, l_ch, cfg.max_iter,
                                     early_stop=cfg.early_stop)
    return decode_layered_batch(graph, l_ch, cfg.schedule, cfg.max_iter,
                                early_stop=cfg.early_stop)


def _gate(h_gate_int, bits):
    """Validity against the canonical matrix: zero syndrome."""
    return ~syndrome_bits(h_gate_int, bits).any(axis=1)


def _finish_batch(l_ch, cand_list, valid_list) -> BatchResult:
    cands = np.stack(cand_list, axis=1)
    valids = np.stack(valid_list, axis=1)
    sel, ok, win = select_ml_batch(l_ch, cands, valids)
    return BatchResult(sel, ok, win, cand_list[0], valid_list[0])


def _scalar_result(l_ch, outcomes) -> EnsembleResult:
    pairs = [(o.candidate, o.valid) for o in outcomes]
    sel, win = select_ml(l_ch, pairs)
    return EnsembleResult(sel, win is not None, tuple(outcomes), win)


# ---------------------------------------------------------------------------
# MBBP: one parity-check basis per branch.
# ---------------------------------------------------------------------------

def mbbp_batch(l_ch, graphs, cfg: DecoderConfig, h_gate) -> BatchResult:
    l_ch = np.atleast_2d(np.asarray(l_ch, dtype=np.float64))
    h_gate_int = as_binary(h_gate).astype(np.int64)
    cands, valids = [], []
    for g in graphs:
        bits, _, _, _ = _decode_batch(g, l_ch, cfg)
        cands.append(bits)
        valids.append(_gate(h_gate_int, bits))
    return _finish_batch(l_ch, cands, valids)


def run_mbbp(l_ch, bases, cfg: DecoderConfig, h_gate=None) -> EnsembleResult:
    """Decode with one parity-check basis per branch.

    Candidate validity is judged against ``h_gate`` (defaults to the
    first basis) so every branch targets the same code regardless of
    which basis it iterated on.
    """
    bases = [as_binary(b) for b in bases]
    if len(bases) == 0:
        raise EmptyList("run_mbbp needs at least one basis")
    n = bases[0].shape[1]
    if any(b.shape[1] != n for b in bases):
        raise DimensionMismatch("bases must share the column count")
    h_gate_int = as_binary(bases[0] if h_gate is None else h_gate).astype(np.int64)
    l_ch = np.asarray(l_ch, dtype=np.float64)
    outcomes = []
    for b in bases:
        out = _decode_one(TannerGraph(b), l_ch, cfg)
        ok = bool(_gate(h_gate_int, out.candidate[None, :])[0])
        outcomes.append(dataclasses.replace(out, valid=ok))
    return _scalar_result(l_ch, outcomes)


def _decode_one(graph, l_ch, cfg: DecoderConfig) -> DecodeOutcome:
    if cfg.variant == "flooding":
        return decode_flooding(graph, l_ch, cfg.max_iter,
                               early_stop=cfg.early_stop)
    return decode_layered(graph, l_ch, cfg.schedule, cfg.max_iter,
                          early_stop=cfg.early_stop)


# ---------------------------------------------------------------------------
# AED: one automorphism per branch.
# ---------------------------------------------------------------------------

def aed_batch(l_ch, graph, perms, cfg: DecoderConfig, h_gate) -> BatchResult:
    l_ch = np.atleast_2d(np.asarray(l_ch, dtype=np.float64))
    h_gate_int = as_binary(h_gate).astype(np.int64)
    cands, valids = [], []
    for p in perms:
        bits, _, _, _ = _decode_batch(graph, apply_perm(p, l_ch), cfg)
        back = apply_perm(inverse(p), bits)
        cands.append(back)
        valids.append(_gate(h_gate_int, back))
    return _finish_batch(l_ch, cands, valids)


def run_aed(l_ch, perms, h, cfg: DecoderConfig, h_gate=None,
            code=None) -> EnsembleResult:
    """Decode permuted LLRs, map candidates back, select against l_ch.

    When ``code`` is given every permutation is checked to be an
    automorphism of it.  ``h`` is the decoding matrix (possibly
    row-deleted); ``h_gate`` (default ``h``) gates validity.
    """
    if len(perms) == 0:
        raise EmptyList("run_aed needs at least one permutation")
    if code is not None:
        for p in perms:
            require_automorphism(p, code)
    h = as_binary(h)
    h_gate_int = as_binary(h if h_gate is None else h_gate).astype(np.int64)
    graph = TannerGraph(h)
    l_ch = np.asarray(l_ch, dtype=np.float64)
    outcomes = []
    for p in perms:
        out = _decode_one(graph, apply_perm(p, l_ch), cfg)
        back = apply_perm(inverse(p), out.candidate)
        post_back = apply_perm(inverse(p), out.posterior)
        ok = bool(_gate(h_gate_int, back[None, :])[0])
        outcomes.append(dataclasses.replace(out, candidate=back, valid=ok,
                                            posterior=post_back))
    return _scalar_result(l_ch, outcomes)


# ---------------------------------------------------------------------------
# SED: one layer ordering per branch.
# ---------------------------------------------------------------------------

def sed_batch(l_ch, graph, schedules, max_iter, h_gate,
              early_stop=True) -> BatchResult:
    l_ch = np.atleast_2d(np.asarray(l_ch, dtype=np.float64))
    h_gate_int = as_binary(h_gate).astype(np.int64)
    cands, valids = [], []
    for s in schedules:
        bits, _, _, _ = decode_layered_batch(graph, l_ch, s, max_iter,
                                             early_stop=early_stop)
        cands.append(bits)
        valids.append(_gate(h_gate_int, bits))
    return _finish_batch(l_ch, cands, valids)


def run_sed(l_ch, schedules, h, max_iter, h_gate=None,
            early_stop=True) -> EnsembleResult:
    """Decode with one layered schedule per branch."""
    if len(schedules) == 0:
        raise EmptyList("run_sed needs at least one schedule")
    h = as_binary(h)
    for s in schedules:
        s.validate(h.shape[0])
    h_gate_int = as_binary(h if h_gate is None else h_gate).astype(np.int64)
    graph = TannerGraph(h)
    l_ch = np.asarray(l_ch, dtype=np.float64)
    outcomes = []
    for s in schedules:
        out = decode_layered(graph, l_ch, s, max_iter, early_stop=early_stop)
        ok = bool(_gate(h_gate_int, out.candidate[None, :])[0])
        outcomes.append(dataclasses.replace(out, valid=ok))
    return _scalar_result(l_ch, outcomes)


# ---------------------------------------------------------------------------
# NED: Gaussian LLR perturbations, branch 0 unperturbed.
# ---------------------------------------------------------------------------

def ned_batch(l_ch, graph, m, sigma2, cfg: DecoderConfig, h_gate,
              rng: np.random.Generator) -> BatchResult:
    l_ch = np.atleast_2d(np.asarray(l_ch, dtype=np.float64))
    h_gate_int = as_binary(h_gate).astype(np.int64)
    sd = float(np.sqrt(sigma2))
    cands, valids = [], []
    for j in range(m):
        lj = l_ch if j == 0 else l_ch + rng.normal(0.0, sd, size=l_ch.shape)
        bits, _, _, _ = _decode_batch(graph, lj, cfg)
        cands.append(bits)
        valids.append(_gate(h_gate_int, bits))
    return _finish_batch(l_ch, cands, valids)


def run_ned(l_ch, m, sigma2, h, cfg: DecoderConfig,
            rng: np.random.Generator, h_gate=None) -> EnsembleResult:
    """Decode m copies of l_ch, all but the first Gaussian-perturbed.

    Selection always correlates against the original l_ch.
    """
    if m < 1:
        raise EmptyList("run_ned needs m >= 1")
    if sigma2 < 0:
        raise ValueError("sigma2_ned must be >= 0")
    h = as_binary(h)
    h_gate_int = as_binary(h if h_gate is None else h_gate).astype(np.int64)
    graph = TannerGraph(h)
    l_ch = np.asarray(l_ch, dtype=np.float64)
    sd = float(np.sqrt(sigma2))
    outcomes = []
    for j in range(m):
        lj = l_ch if j == 0 else l_ch + rng.normal(0.0, sd, size=l_ch.shape)
        out = _decode_one(graph, lj, cfg)
        ok = bool(_gate(h_gate_int, out.candidate[None, :])[0])
        outcomes.append(dataclasses.replace(out, valid=ok))
    return _scalar_result(l_ch, outcomes)


# ---------------------------------------------------------------------------
# SBP: sign-saturation of the least reliable positions.
# ---------------------------------------------------------------------------

def sbp_saturations(l_ch, m):
    """Indices to saturate and the M sign patterns.

    Returns (idx, signs): ``idx`` are the log2(m) positions with the
    smallest |L| in increasing-reliability order (ties toward the lower
    index), and ``signs`` is an (m, log2(m)) array of +/-1 where
    pattern 0 is all +1 and bit r of the pattern index flips position
    idx[r].
    """
    k = int(np.log2(m))
    if 2 ** k != m or m < 1:
        raise NotPowerOfTwo(f"ensemble size {m} is not a power of two")
    l_ch = np.asarray(l_ch, dtype=np.float64)
    order = np.argsort(np.abs(l_ch), kind="stable")
    idx = order[:k]
    patterns = np.arange(m)
    signs = 1 - 2 * ((patterns[:, None] >> np.arange(k)[None, :]) & 1)
    return idx, signs.astype(np.float64)


def sbp_batch(l_ch, graph, m, cfg: DecoderConfig, h_gate) -> BatchResult:
    l_ch = np.atleast_2d(np.asarray(l_ch, dtype=np.float64))
    k = int(np.log2(m))
    if 2 ** k != m or m < 1:
        raise NotPowerOfTwo(f"ensemble size {m} is not a power of two")
    h_gate_int = as_binary(h_gate).astype(np.int64)
    batch = l_ch.shape[0]
    order = np.argsort(np.abs(l_ch), axis=1, kind="stable")
    idx = order[:, :k]                                      # (batch, k)
    rows = np.arange(batch)[:, None]
    cands, valids = [], []
    for pat in range(m):
        signs = 1.0 - 2.0 * ((pat >> np.arange(k)) & 1)
        lj = l_ch.copy()
        lj[rows, idx] = signs[None, :] * CLAMP
        bits, _, _, _ = _decode_batch(graph, lj, cfg)
        cands.append(bits)
        valids.append(_gate(h_gate_int, bits))
    return _finish_batch(l_ch, cands, valids)


def run_sbp(l_ch, m, h, cfg: DecoderConfig, h_gate=None) -> EnsembleResult:
    """Saturate the log2(m) least reliable LLRs in all m sign patterns."""
    l_ch = np.asarray(l_ch, dtype=np.float64)
    idx, signs = sbp_saturations(l_ch, m)
    h = as_binary(h)
    h_gate_int = as_binary(h if h_gate is None else h_gate).astype(np.int64)
    graph = TannerGraph(h)
    outcomes = []
    for pat in range(m):
        lj = l_ch.copy()
        lj[idx] = signs[pat] * CLAMP
        out = _decode_one(graph, lj, cfg)
        ok = bool(_gate(h_gate_int, out.candidate[None, :])[0])
        outcomes.append(dataclasses.replace(out, valid=ok))
    return _scalar_result(l_ch, outcomes)
