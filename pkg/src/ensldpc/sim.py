"""Seeded Monte-Carlo engine: BLER, UER and ensemble recovery probability.

Trials are processed in fixed-size chunks.  Chunk ``c`` of point ``p``
draws all of its randomness from substreams keyed by (master seed, p,
c), so results are bit-identical regardless of how many worker threads
execute the chunks.  The stop rule is applied over cumulative counts in
chunk-index order: the set of chunks contributing to a point is the
smallest prefix that reaches the error target (or the trial budget),
which is likewise thread-count independent.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import io
import os
from dataclasses import dataclass

import numpy as np

from . import gf2
from .automorphisms import qc_perm, s0_perm
from .bp import (Schedule, TannerGraph, decode_flooding_batch,
                 decode_layered_batch, shuffled_schedule,
                 top_to_bottom_schedule)
from .channel import channel_llr, ebn0_to_sigma, modulate
from .codes import (Code, CheckPool, break_qc_symmetry, encode, get_code,
                    mbbp_bases, random_minweight_matrix)
from .ensemble import (BatchResult, DecoderConfig, aed_batch, mbbp_batch,
                       ned_batch, sbp_batch, sed_batch)
from .errors import ConfigError, DimensionTooLarge
from .gf2 import rank, rref

__all__ = [
    "StopRule", "ExperimentConfig", "PointResult", "SweepResult",
    "run_point", "run_sweep", "ml_oracle_decode", "measure_uer",
    "CSV_HEADER", "worker_count", "MBBP_BASES_SEED", "SED_SCHEDULE_SEED",
]

CHUNK_TRIALS = 2048
METHODS = ("bp", "lbp", "mbbp", "aed", "sed", "ned", "sbp", "ml-oracle")
H_VARIANTS = ("default", "systematic", "random-minweight")

# Branch constructions are per-sweep constants drawn from dedicated
# seeded streams, independent of the trial noise.
MBBP_BASES_SEED = 20240717
SED_SCHEDULE_SEED = 20240718

CSV_HEADER = ("code,method,M,decoder,iters,ebn0_db,trials,block_errors,"
              "undetected_errors,dec1_errors,recoveries,bler,uer,"
              "rho_direct,rho_ratio,ci_bler")


@dataclass(frozen=True)
class StopRule:
    """Stop a point at `target_errors` block errors or `max_trials`."""

    target_errors: int = 100
    max_trials: int = 10_000_000

    def __post_init__(self):
        if self.target_errors < 1 or self.max_trials < 1:
            raise ConfigError("stop rule fields must be positive")


@dataclass(frozen=True)
class ExperimentConfig:
    """One reproducible experiment: a method on a code over an SNR grid."""

    code: str
    method: str
    m: int = 8
    iters: int = 8
    n_l: int | None = None
    sigma2_ned: float | None = None
    ebn0_db: tuple = ()
    stop: StopRule = StopRule()
    seed: int = 0
    early_stop: bool = True
    random_messages: bool = False
    h_variant: str = "default"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"method: unknown method {self.method!r}")
        if self.h_variant not in H_VARIANTS:
            raise ConfigError(f"h_variant: unknown variant {self.h_variant!r}")
        if self.sigma2_ned is not None and self.method != "ned":
            raise ConfigError("sigma2_ned: only valid for method 'ned'")
        if self.sigma2_ned is not None and self.sigma2_ned < 0:
            raise ConfigError("sigma2_ned: must be >= 0")
        if self.n_l is not None and self.method not in ("lbp", "sed"):
            raise ConfigError("n_l: only valid for layered methods")
        if self.method in ("mbbp", "aed", "sed", "ned", "sbp") and self.m < 1:
            raise ConfigError("m: ensemble size must be >= 1")
        if self.method == "sbp" and (self.m & (self.m - 1)) != 0:
            raise ConfigError("m: sbp needs a power-of-two ensemble size")
        if self.iters < 1:
            raise ConfigError("iters: must be >= 1")

    @property
    def effective_sigma2_ned(self) -> float:
        if self.sigma2_ned is not None:
            return self.sigma2_ned
        return 0.64 if self.m == 4 else 0.25

    @property
    def effective_m(self) -> int:
        return 1 if self.method in ("bp", "lbp", "ml-oracle") else self.m

    @property
    def decoder_name(self) -> str:
        return "lbp" if self.method in ("lbp", "sed") else (
            "ml" if self.method == "ml-oracle" else "bp")


@dataclass(frozen=True)
class PointResult:
    ebn0_db: float
    trials: int
    block_errors: int
    undetected_errors: int
    dec1_errors: int
    recoveries: int

    @property
    def bler(self) -> float:
        return self.block_errors / self.trials

    @property
    def uer(self) -> float:
        return self.undetected_errors / self.trials

    @property
    def rho_direct(self) -> float | None:
        if self.dec1_errors == 0:
            return None
        return self.recoveries / self.dec1_errors

    @property
    def rho_ratio(self) -> float | None:
        if self.dec1_errors == 0:
            return None
        bler1 = self.dec1_errors / self.trials
        return 1.0 - self.bler / bler1

    @property
    def ci_bler(self) -> float:
        p = self.bler
        return 1.96 * np.sqrt(p * (1.0 - p) / self.trials)


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    points: tuple

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(CSV_HEADER + "\n")
        c = self.config
        for p in self.points:
            fields = [
                c.code, c.method, str(c.effective_m), c.decoder_name,
                str(c.iters), _fmt(p.ebn0_db), str(p.trials),
                str(p.block_errors), str(p.undetected_errors),
                str(p.dec1_errors), str(p.recoveries), _fmt(p.bler),
                _fmt(p.uer), _fmt(p.rho_direct), _fmt(p.rho_ratio),
                _fmt(p.ci_bler),
            ]
            out.write(",".join(fields) + "\n")
        return out.getvalue()


def _fmt(x) -> str:
    """Scientific notation, 4 significant digits; None -> empty field."""
    if x is None:
        return ""
    return f"{x:.3e}"


def worker_count() -> int:
    env = os.environ.get("ENSLDPC_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"ENSLDPC_THREADS: not an integer: {env!r}")
        if n < 1:
            raise ConfigError("ENSLDPC_THREADS: must be >= 1")
        return n
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# ML oracle.
# ---------------------------------------------------------------------------

def ml_oracle_decode(generator, l_ch) -> np.ndarray:
    """Exact ML decision by enumerating all 2^K codewords.

    Ties break toward the lexicographically smallest message.
    """
    book = _codebook(gf2.as_binary(generator))
    l_ch = np.asarray(l_ch, dtype=np.float64)
    metric = l_ch @ (1.0 - 2.0 * book.T)
    return book[int(np.argmax(metric))]


def _codebook(g: np.ndarray) -> np.ndarray:
    k = g.shape[0]
    if k > 24:
        raise DimensionTooLarge(f"oracle enumeration infeasible for K={k}")
    msgs = ((np.arange(2 ** k)[:, None] >> np.arange(k - 1, -1, -1)) & 1)
    return ((msgs @ g.astype(np.int64)) % 2).astype(np.uint8)


def _ml_oracle_batch(book_pm1: np.ndarray, book: np.ndarray,
                     l_ch: np.ndarray) -> np.ndarray:
    metric = l_ch @ book_pm1.T
    return book[np.argmax(metric, axis=1)]


# ---------------------------------------------------------------------------
# Point runner construction.
# ---------------------------------------------------------------------------

def _resolve_h(code: Code, pool: CheckPool | None, variant: str) -> np.ndarray:
    if variant == "default":
        return code.h_default
    if variant == "systematic":
        r, _ = rref(code.h_default)
        return r[r.any(axis=1)]
    if pool is None:
        raise ConfigError(
            f"h_variant: no minimum-weight check pool for code {code.name!r}")
    return random_minweight_matrix(pool, code.h_default.shape[0])


def _aed_perms(code: Code, m: int):
    """Evenly spaced shifts over the code's automorphism group."""
    if code.structure == "cyclic":
        return [s0_perm(code.n, (j * code.n) // m) for j in range(m)]
    if code.structure == "quasi-cyclic":
        z = code.z
        return [qc_perm(code.n, z, (j * z) // m) for j in range(m)]
    raise ConfigError(f"code: no automorphism group for {code.name!r}")


class _PointRunner:
    """Per-point decoding closure; built once, applied per chunk."""

    def __init__(self, code: Code, pool, cfg: ExperimentConfig):
        self.code = code
        self.cfg = cfg
        self.h_gate = code.h_default
        h = _resolve_h(code, pool, cfg.h_variant)
        method = cfg.method
        dcfg = DecoderConfig(max_iter=cfg.iters, early_stop=cfg.early_stop)

        if method == "ml-oracle":
            book = _codebook(code.generator)
            self._book = book
            self._book_pm1 = 1.0 - 2.0 * book.astype(np.float64)
        elif method == "bp":
            self._graph = TannerGraph(h)
            self._dcfg = dcfg
        elif method == "lbp":
            n_l = cfg.n_l or 1
            sched = top_to_bottom_schedule(h.shape[0], n_l)
            self._graph = TannerGraph(h)
            self._dcfg = dataclasses.replace(dcfg, variant="layered",
                                             schedule=sched)
        elif method == "mbbp":
            if pool is None:
                raise ConfigError(
                    f"method: no check pool for mbbp on {code.name!r}")
            rng = np.random.default_rng((MBBP_BASES_SEED, cfg.seed))
            bases = mbbp_bases(pool, code.h_default.shape[0], cfg.m, rng)
            self._graphs = [TannerGraph(b) for b in bases]
            self._dcfg = dcfg
        elif method == "aed":
            if code.structure == "quasi-cyclic":
                h = break_qc_symmetry(h, [0, 1, 2])
            self._graph = TannerGraph(h)
            self._perms = _aed_perms(code, cfg.m)
            self._dcfg = dcfg
        elif method == "sed":
            n_l = cfg.n_l or 1
            rng = np.random.default_rng((SED_SCHEDULE_SEED, cfg.seed))
            scheds = [top_to_bottom_schedule(h.shape[0], n_l)]
            scheds += [shuffled_schedule(h.shape[0], n_l, rng)
                       for _ in range(cfg.m - 1)]
            self._graph = TannerGraph(h)
            self._schedules = scheds
        elif method in ("ned", "sbp"):
            self._graph = TannerGraph(h)
            self._dcfg = dcfg

    def decode(self, l_ch: np.ndarray,
               ned_rng: np.random.Generator) -> BatchResult:
        cfg = self.cfg
        method = cfg.method
        if method == "ml-oracle":
            bits = _ml_oracle_batch(self._book_pm1, self._book, l_ch)
            valid = np.ones(len(bits), dtype=bool)
            winner = np.zeros(len(bits), dtype=np.int64)
            return BatchResult(bits, valid, winner, bits, valid)
        if method in ("bp", "lbp"):
            if self._dcfg.variant == "flooding":
                bits, _, _, _ = decode_flooding_batch(
                    self._graph, l_ch, self._dcfg.max_iter,
                    early_stop=self._dcfg.early_stop)
            else:
                bits, _, _, _ = decode_layered_batch(
                    self._graph, l_ch, self._dcfg.schedule,
                    self._dcfg.max_iter, early_stop=self._dcfg.early_stop)
            valid = ~gf2.syndrome_bits(self.h_gate, bits).any(axis=1)
            winner = np.where(valid, 0, -1).astype(np.int64)
            return BatchResult(bits, valid, winner, bits, valid)
        if method == "mbbp":
            return mbbp_batch(l_ch, self._graphs, self._dcfg, self.h_gate)
        if method == "aed":
            return aed_batch(l_ch, self._graph, self._perms, self._dcfg,
                             self.h_gate)
        if method == "sed":
            return sed_batch(l_ch, self._graph, self._schedules, cfg.iters,
                             self.h_gate, early_stop=cfg.early_stop)
        if method == "ned":
            return ned_batch(l_ch, self._graph, cfg.m,
                             cfg.effective_sigma2_ned, self._dcfg,
                             self.h_gate, ned_rng)
        return sbp_batch(l_ch, self._graph, cfg.m, self._dcfg, self.h_gate)


# ---------------------------------------------------------------------------
# Monte-Carlo loop.
# ---------------------------------------------------------------------------

def _chunk_stats(runner: _PointRunner, cfg: ExperimentConfig, sigma: float,
                 seed: int, point_index: int, chunk_index: int,
                 n_trials: int):
    """Run one chunk of trials; returns raw error counts."""
    ss = np.random.SeedSequence((seed, point_index, chunk_index))
    noise_ss, ned_ss, msg_ss = ss.spawn(3)
    noise_rng = np.random.Generator(np.random.Philox(noise_ss))
    ned_rng = np.random.Generator(np.random.Philox(ned_ss))
    code = runner.code

    if cfg.random_messages:
        msg_rng = np.random.Generator(np.random.Philox(msg_ss))
        msgs = msg_rng.integers(0, 2, size=(n_trials, code.k))
        tx = encode(code, msgs)
    else:
        tx = np.zeros((n_trials, code.n), dtype=np.uint8)
    x = modulate(tx)
    y = x + noise_rng.normal(0.0, sigma, size=x.shape)
    l_ch = channel_llr(y, sigma)

    res = runner.decode(l_ch, ned_rng)
    wrong = (res.selected != tx).any(axis=1)
    dec1_wrong = (res.branch0 != tx).any(axis=1)
    undetected = res.selected_valid & wrong
    recovered = dec1_wrong & ~wrong
    return (n_trials, int(wrong.sum()), int(undetected.sum()),
            int(dec1_wrong.sum()), int(recovered.sum()))


def run_point(code: Code, pool, cfg: ExperimentConfig, ebn0_db: float,
              stop: StopRule, seed: int, point_index: int = 0,
              threads: int | None = None) -> PointResult:
    """Monte-Carlo estimate of one (config, Eb/N0) point.

    Deterministic in (seed, point_index, cfg) regardless of `threads`:
    chunk randomness is keyed by chunk index and the stop rule is
    evaluated over cumulative counts in chunk-index order.
    """
    runner = _PointRunner(code, pool, cfg)
    sigma = ebn0_to_sigma(ebn0_db, code.rate)
    threads = threads if threads is not None else worker_count()

    n_chunks = -(-stop.max_trials // CHUNK_TRIALS)

    def chunk_size(c):
        return min(CHUNK_TRIALS, stop.max_trials - c * CHUNK_TRIALS)

    def run_chunk(c):
        return _chunk_stats(runner, cfg, sigma, seed, point_index, c,
                            chunk_size(c))

    totals = [0, 0, 0, 0, 0]
    next_chunk = 0
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool_:
        while next_chunk < n_chunks:
            wave = range(next_chunk,
                         min(next_chunk + max(threads, 1), n_chunks))
            results = list(pool_.map(run_chunk, wave))
            stopped = False
            for stats in results:          # chunk-index order within the wave
                for i in range(5):
                    totals[i] += stats[i]
                if totals[1] >= stop.target_errors:
                    stopped = True
                    break
            next_chunk = wave.stop
            if stopped:
                break
    return PointResult(ebn0_db, *totals)


def run_point_named(code_name: str, cfg: ExperimentConfig, ebn0_db: float,
                    point_index: int = 0,
                    threads: int | None = None) -> PointResult:
    code, pool = get_code(code_name)
    return run_point(code, pool, cfg, ebn0_db, cfg.stop, cfg.seed,
                     point_index=point_index, threads=threads)


def run_sweep(cfg: ExperimentConfig, threads: int | None = None) -> SweepResult:
    """Map run_point over the config's Eb/N0 grid."""
    code, pool = get_code(cfg.code)
    points = []
    for idx, db in enumerate(cfg.ebn0_db):
        points.append(run_point(code, pool, cfg, float(db), cfg.stop,
                                cfg.seed, point_index=idx, threads=threads))
    return SweepResult(cfg, tuple(points))


def measure_uer(code_name: str, ebn0_db_list, iteration_counts, seed: int,
                stop: StopRule = StopRule(),
                threads: int | None = None) -> dict:
    """BLER/UER of plain flooding BP per iteration count.

    Early termination is always on: an undetected error is a trial whose
    final decision satisfies the parity checks but differs from the
    transmitted word.  Returns {iters: SweepResult}.
    """
    out = {}
    for iters in iteration_counts:
        cfg = ExperimentConfig(code=code_name, method="bp", iters=iters,
                               ebn0_db=tuple(ebn0_db_list), stop=stop,
                               seed=seed, early_stop=True)
        out[iters] = run_sweep(cfg, threads=threads)
    return out
