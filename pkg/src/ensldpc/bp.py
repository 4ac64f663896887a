"""Sum-product belief propagation: flooding and layered schedules.

The decoders are vectorised over a batch of received words.  Message
arrays are laid out (n_edges, batch) / (n_vars, batch) so per-variable
aggregation is a single sparse matmul and the per-check exclusion
products are padded cumulative products (forward/backward partials,
no division).

Numerics: all messages and posteriors are clamped to +-CLAMP and the
arctanh argument to +-(1 - 1e-12); Eq-style tanh products are singular
at +-1 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatch, InvalidSchedule
from .gf2 import as_binary

CLAMP = 30.0
ATANH_LIM = 1.0 - 1e-12


class TannerGraph:
    """Edge-indexed bipartite adjacency of a parity-check matrix.

    Edges are enumerated check-major with ascending variable index
    inside each check.
    """

    def __init__(self, h):
        h = as_binary(h)
        self.h = h
        self.n_checks, self.n_vars = h.shape
        chk, var = np.nonzero(h)
        self.edge_check = chk.astype(np.int64)
        self.edge_var = var.astype(np.int64)
        self.n_edges = len(chk)
        deg = np.bincount(self.edge_check, minlength=self.n_checks)
        self.check_deg = deg
        self.check_ptr = np.concatenate(([0], np.cumsum(deg)))
        self.max_check_deg = int(deg.max()) if self.n_edges else 0

        # Padded (n_checks, max_deg) edge-index table; sentinel = n_edges.
        pad = np.full((self.n_checks, self.max_check_deg), self.n_edges,
                      dtype=np.int64)
        slot = np.concatenate([np.arange(d) for d in deg]) if self.n_edges else \
            np.empty(0, dtype=np.int64)
        pad[self.edge_check, slot] = np.arange(self.n_edges)
        self.pad_idx = pad
        # Flat position of edge e inside the padded table.
        self.edge_flat = self.edge_check * self.max_check_deg + slot

        # (n_vars, n_edges) incidence for per-variable sums.
        self.var_incidence = sp.csr_matrix(
            (np.ones(self.n_edges), (self.edge_var, np.arange(self.n_edges))),
            shape=(self.n_vars, self.n_edges),
        )
        self.var_deg = np.bincount(self.edge_var, minlength=self.n_vars)

    def edges_of_checks(self, checks) -> np.ndarray:
        """Edge indices of the given checks, check-major order."""
        return np.concatenate(
            [np.arange(self.check_ptr[c], self.check_ptr[c + 1]) for c in checks]
        ) if len(checks) else np.empty(0, dtype=np.int64)


@dataclass(frozen=True)
class Schedule:
    """Ordered partition of the check set into layers of size n_l."""

    layers: tuple[tuple[int, ...], ...]
    n_l: int

    def validate(self, n_checks: int) -> None:
        flat = [c for layer in self.layers for c in layer]
        if sorted(flat) != list(range(n_checks)):
            raise InvalidSchedule("layers do not partition the check set")
        for layer in self.layers[:-1]:
            if len(layer) != self.n_l:
                raise InvalidSchedule("non-final layer has wrong size")
        if self.layers and len(self.layers[-1]) > self.n_l:
            raise InvalidSchedule("final layer larger than n_l")


def top_to_bottom_schedule(n_checks: int, n_l: int) -> Schedule:
    """Contiguous layers [0..n_l), [n_l..2n_l), ... in natural order."""
    layers = tuple(
        tuple(range(s, min(s + n_l, n_checks))) for s in range(0, n_checks, n_l)
    )
    return Schedule(layers, n_l)


def shuffled_schedule(n_checks: int, n_l: int, rng: np.random.Generator) -> Schedule:
    """Top-to-bottom layers processed in a random order."""
    base = top_to_bottom_schedule(n_checks, n_l)
    order = rng.permutation(len(base.layers))
    return Schedule(tuple(base.layers[i] for i in order), n_l)


@dataclass
class DecodeOutcome:
    candidate: np.ndarray
    valid: bool
    iterations_used: int
    posterior: np.ndarray


# ---------------------------------------------------------------------------
# Scalar update rules (the unit-testable primitives).
# ---------------------------------------------------------------------------

def vn_update(l_ch: float, incoming, exclude_index: int | None = None) -> float:
    """Variable-to-check message: channel LLR plus all other check inputs."""
    total = l_ch + sum(
        v for i, v in enumerate(incoming) if i != exclude_index
    )
    return float(np.clip(total, -CLAMP, CLAMP))


def cn_update(incoming, exclude_index: int | None = None) -> float:
    """Check-to-variable message via the tanh product rule.

    The exclusion product is formed from forward/backward partial
    products rather than a total-product division.
    """
    t = np.tanh(np.clip(np.asarray(incoming, dtype=np.float64), -CLAMP, CLAMP) / 2.0)
    if exclude_index is None:
        prod = float(np.prod(t))
    else:
        prod = float(np.prod(t[:exclude_index]) * np.prod(t[exclude_index + 1:]))
    prod = min(max(prod, -ATANH_LIM), ATANH_LIM)
    return float(np.clip(2.0 * np.arctanh(prod), -CLAMP, CLAMP))


def output_llr(l_ch: float, incoming) -> float:
    """Posterior LLR: channel LLR plus every incoming check message."""
    return float(np.clip(l_ch + sum(incoming), -CLAMP, CLAMP))


def hard_decision(l) -> np.ndarray:
    """Bit = 1 where LLR < 0; ties (exactly 0) decode to 0."""
    return (np.asarray(l) < 0).astype(np.uint8)


# ---------------------------------------------------------------------------
# Batched kernels.
# ---------------------------------------------------------------------------

def _check_pass_padded(graph: TannerGraph, m_vc: np.ndarray) -> np.ndarray:
    """All check-to-variable messages from variable-to-check messages.

    m_vc has shape (n_edges, batch); returns the same shape.
    """
    batch = m_vc.shape[1]
    t = np.tanh(m_vc * 0.5)
    t_ext = np.concatenate([t, np.ones((1, batch))], axis=0)
    tt = t_ext[graph.pad_idx]                     # (n_checks, max_deg, batch)
    fwd = np.ones_like(tt)
    np.cumprod(tt[:, :-1, :], axis=1, out=fwd[:, 1:, :])
    bwd = np.ones_like(tt)
    np.cumprod(tt[:, :0:-1, :], axis=1, out=bwd[:, -2::-1, :])
    excl = (fwd * bwd).reshape(-1, batch)[graph.edge_flat]
    np.clip(excl, -ATANH_LIM, ATANH_LIM, out=excl)
    m_cv = 2.0 * np.arctanh(excl)
    np.clip(m_cv, -CLAMP, CLAMP, out=m_cv)
    return m_cv


def _syndrome_ok(h_int: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """True per batch column when every check is satisfied."""
    s = (h_int @ bits) & 1
    return ~s.any(axis=0)


def decode_flooding_batch(graph: TannerGraph, l_ch: np.ndarray, max_iter: int,
                          early_stop: bool = True):
    """Flooding BP over a batch.

    l_ch: (batch, n_vars) channel LLRs.

    Returns (bits, valid, iters, posterior) with bits/posterior shaped
    (batch, n_vars).
    """
    l_ch = np.atleast_2d(np.asarray(l_ch, dtype=np.float64))
    if l_ch.shape[1] != graph.n_vars:
        raise DimensionMismatch(
            f"LLR length {l_ch.shape[1]} != n_vars {graph.n_vars}")
    batch = l_ch.shape[0]
    h_int = graph.h.astype(np.int64)

    lc = np.clip(l_ch.T, -CLAMP, CLAMP)           # (n_vars, batch)
    out_bits = np.zeros((graph.n_vars, batch), dtype=np.uint8)
    out_valid = np.zeros(batch, dtype=bool)
    out_iters = np.zeros(batch, dtype=np.int64)
    out_post = np.zeros((graph.n_vars, batch))

    active = np.arange(batch)
    lc_a = lc
    m_vc = lc_a[graph.edge_var]

    for it in range(1, max_iter + 1):
        m_cv = _check_pass_padded(graph, m_vc)
        sums = graph.var_incidence @ m_cv
        post = np.clip(lc_a + sums, -CLAMP, CLAMP)
        m_vc = np.clip(post[graph.edge_var] - m_cv, -CLAMP, CLAMP)
        bits = (post < 0).view(np.uint8)
        ok = _syndrome_ok(h_int, bits)

        if it == max_iter:
            done = np.ones_like(ok)
        elif early_stop:
            done = ok
        else:
            done = np.zeros_like(ok)
        if done.any():
            idx = active[done]
            out_bits[:, idx] = bits[:, done]
            out_valid[idx] = ok[done]
            out_iters[idx] = it
            out_post[:, idx] = post[:, done]
            keep = ~done
            if not keep.any():
                break
            active = active[keep]
            lc_a = lc_a[:, keep]
            m_vc = m_vc[:, keep]

    return out_bits.T, out_valid, out_iters, out_post.T


def decode_layered_batch(graph: TannerGraph, l_ch: np.ndarray,
                         schedule: Schedule, max_iter: int,
                         early_stop: bool = True):
    """Layered BP over a batch.

    Each layer recomputes its checks' outgoing messages from the
    current posteriors minus the checks' previous outgoing messages,
    then refreshes the touched posteriors.  Early termination is
    evaluated at iteration boundaries.
    """
    l_ch = np.atleast_2d(np.asarray(l_ch, dtype=np.float64))
    if l_ch.shape[1] != graph.n_vars:
        raise DimensionMismatch(
            f"LLR length {l_ch.shape[1]} != n_vars {graph.n_vars}")
    schedule.validate(graph.n_checks)
    batch = l_ch.shape[0]
    h_int = graph.h.astype(np.int64)

    # Per-layer precomputation: edge ids, their variables, padded local
    # index table, and whether the layer's variables repeat (needs
    # scatter-add rather than sliced add).
    layer_info = []
    for layer in schedule.layers:
        eidx = graph.edges_of_checks(layer)
        evar = graph.edge_var[eidx]
        degs = graph.check_deg[list(layer)]
        mdeg = int(degs.max()) if len(degs) else 0
        pad = np.full((len(layer), mdeg), len(eidx), dtype=np.int64)
        slot = np.concatenate([np.arange(d) for d in degs])
        rows = np.repeat(np.arange(len(layer)), degs)
        pad[rows, slot] = np.arange(len(eidx))
        flat = rows * mdeg + slot
        dup = len(np.unique(evar)) != len(evar)
        layer_info.append((eidx, evar, pad, flat, dup))

    post = np.clip(l_ch.T, -CLAMP, CLAMP)
    r = np.zeros((graph.n_edges, batch))

    out_bits = np.zeros((graph.n_vars, batch), dtype=np.uint8)
    out_valid = np.zeros(batch, dtype=bool)
    out_iters = np.zeros(batch, dtype=np.int64)
    out_post = np.zeros((graph.n_vars, batch))
    active = np.arange(batch)

    for it in range(1, max_iter + 1):
        for eidx, evar, pad, flat, dup in layer_info:
            cur = post.shape[1]
            m_vc = np.clip(post[evar] - r[eidx], -CLAMP, CLAMP)
            t = np.tanh(m_vc * 0.5)
            t_ext = np.concatenate([t, np.ones((1, cur))], axis=0)
            tt = t_ext[pad]
            fwd = np.ones_like(tt)
            np.cumprod(tt[:, :-1, :], axis=1, out=fwd[:, 1:, :])
            bwd = np.ones_like(tt)
            np.cumprod(tt[:, :0:-1, :], axis=1, out=bwd[:, -2::-1, :])
            excl = (fwd * bwd).reshape(-1, cur)[flat]
            np.clip(excl, -ATANH_LIM, ATANH_LIM, out=excl)
            new_r = np.clip(2.0 * np.arctanh(excl), -CLAMP, CLAMP)
            delta = new_r - r[eidx]
            r[eidx] = new_r
            if dup:
                np.add.at(post, evar, delta)
            else:
                post[evar] += delta
            np.clip(post, -CLAMP, CLAMP, out=post)

        bits = (post < 0).view(np.uint8)
        ok = _syndrome_ok(h_int, bits)
        if it == max_iter:
            done = np.ones_like(ok)
        elif early_stop:
            done = ok
        else:
            done = np.zeros_like(ok)
        if done.any():
            idx = active[done]
            out_bits[:, idx] = bits[:, done]
            out_valid[idx] = ok[done]
            out_iters[idx] = it
            out_post[:, idx] = post[:, done]
            keep = ~done
            if not keep.any():
                break
            active = active[keep]
            post = post[:, keep]
            r = r[:, keep]

    return out_bits.T, out_valid, out_iters, out_post.T


# ---------------------------------------------------------------------------
# Single-word front ends.
# ---------------------------------------------------------------------------

def decode_flooding(graph: TannerGraph, l_ch, max_iter: int,
                    early_stop: bool = True) -> DecodeOutcome:
    bits, valid, iters, post = decode_flooding_batch(
        graph, np.asarray(l_ch, dtype=np.float64)[None, :], max_iter,
        early_stop=early_stop)
    return DecodeOutcome(bits[0], bool(valid[0]), int(iters[0]), post[0])


def decode_layered(graph: TannerGraph, l_ch, schedule: Schedule, max_iter: int,
                   early_stop: bool = True) -> DecodeOutcome:
    bits, valid, iters, post = decode_layered_batch(
        graph, np.asarray(l_ch, dtype=np.float64)[None, :], schedule, max_iter,
        early_stop=early_stop)
    return DecodeOutcome(bits[0], bool(valid[0]), int(iters[0]), post[0])
