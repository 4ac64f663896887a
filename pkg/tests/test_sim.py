import numpy as np
import pytest

from ensldpc.codes import get_code
from ensldpc.errors import ConfigError, DimensionTooLarge
from ensldpc.sim import (ExperimentConfig, StopRule, measure_uer,
                         ml_oracle_decode, run_point_named, run_sweep)


FAST = StopRule(target_errors=25, max_trials=6000)


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(code="simplex63", method="nope")
    with pytest.raises(ConfigError):
        ExperimentConfig(code="simplex63", method="bp", sigma2_ned=0.1)
    with pytest.raises(ConfigError):
        ExperimentConfig(code="simplex63", method="aed", n_l=2)
    with pytest.raises(ConfigError):
        ExperimentConfig(code="simplex63", method="sbp", m=6)
    with pytest.raises(ConfigError):
        ExperimentConfig(code="simplex63", method="bp", iters=0)


def test_ned_sigma_defaults():
    c8 = ExperimentConfig(code="simplex63", method="ned", m=8)
    c4 = ExperimentConfig(code="simplex63", method="ned", m=4)
    assert c8.effective_sigma2_ned == 0.25
    assert c4.effective_sigma2_ned == 0.64


def test_ml_oracle_noiseless_roundtrip():
    code, _ = get_code("simplex63")
    msg = np.array([1, 0, 1, 1, 0, 1])
    cw = (msg @ code.generator) % 2
    l = 8.0 * (1.0 - 2.0 * cw)
    assert np.array_equal(ml_oracle_decode(code.generator, l), cw)


def test_ml_oracle_k1():
    g = np.array([[1, 1, 1]], dtype=np.uint8)
    assert np.array_equal(ml_oracle_decode(g, [-1.0, -2.0, 0.5]), [1, 1, 1])


def test_ml_oracle_dimension_guard():
    g = np.eye(30, dtype=np.uint8)
    with pytest.raises(DimensionTooLarge):
        ml_oracle_decode(g, np.zeros(30))


def test_determinism_across_thread_counts():
    cfg = ExperimentConfig(code="simplex63", method="sbp", m=4, iters=4,
                           ebn0_db=(2.0, 4.0), stop=FAST, seed=101)
    csvs = {t: run_sweep(cfg, threads=t).to_csv() for t in (1, 4, 8)}
    assert csvs[1] == csvs[4] == csvs[8]


def test_csv_schema():
    cfg = ExperimentConfig(code="simplex63", method="bp", iters=4,
                           ebn0_db=(3.0,), stop=FAST, seed=1)
    csv = run_sweep(cfg, threads=1).to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == ("code,method,M,decoder,iters,ebn0_db,trials,"
                        "block_errors,undetected_errors,dec1_errors,"
                        "recoveries,bler,uer,rho_direct,rho_ratio,ci_bler")
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[0] == "simplex63" and fields[1] == "bp"
    assert fields[2] == "1" and fields[3] == "bp"


def test_rho_absent_when_dec1_never_fails():
    # essentially noiseless point: no dec1 failures, rho fields empty
    cfg = ExperimentConfig(code="simplex63", method="aed", m=2, iters=4,
                           ebn0_db=(20.0,), stop=StopRule(5, 2048), seed=0)
    res = run_sweep(cfg, threads=1)
    p = res.points[0]
    assert p.block_errors == 0
    assert p.rho_direct is None
    line = res.to_csv().strip().split("\n")[1]
    assert ",,," in line or line.split(",")[13] == ""


def test_bler_monotone_in_snr():
    cfg = ExperimentConfig(code="simplex63", method="ml-oracle",
                           ebn0_db=(0.0, 2.0, 4.0),
                           stop=StopRule(200, 50000), seed=3)
    pts = run_sweep(cfg, threads=1).points
    blers = [p.bler for p in pts]
    assert blers[0] > blers[1] > blers[2]


def test_all_zero_vs_random_messages_agree():
    common = dict(code="simplex63", method="bp", iters=8,
                  ebn0_db=(2.0,), stop=StopRule(10**9, 20480))
    a = run_sweep(ExperimentConfig(seed=7, **common), threads=1).points[0]
    b = run_sweep(ExperimentConfig(seed=7, random_messages=True, **common),
                  threads=1).points[0]
    ci = a.ci_bler + b.ci_bler
    assert abs(a.bler - b.bler) <= 1.2 * ci + 0.01


def test_uer_bounded_by_bler_and_noiseless_zero():
    res = measure_uer("simplex63", [2.0], [4], seed=5,
                      stop=StopRule(50, 4096), threads=1)
    p = res[4].points[0]
    assert p.uer <= p.bler
    quiet = measure_uer("simplex63", [20.0], [4], seed=5,
                        stop=StopRule(5, 1024), threads=1)
    assert quiet[4].points[0].uer == 0.0


def test_run_point_named_matches_sweep():
    cfg = ExperimentConfig(code="simplex63", method="bp", iters=4,
                           ebn0_db=(3.0,), stop=FAST, seed=2)
    a = run_point_named("simplex63", cfg, 3.0, threads=1)
    b = run_sweep(cfg, threads=1).points[0]
    assert a == b


def test_empty_grid():
    cfg = ExperimentConfig(code="simplex63", method="bp", ebn0_db=(),
                           stop=FAST, seed=0)
    res = run_sweep(cfg, threads=1)
    assert res.points == ()
    assert res.to_csv().strip().split("\n") == [res.to_csv().strip()]


def test_mbbp_requires_pool():
    cfg = ExperimentConfig(code="5g132", method="mbbp", m=2, iters=2,
                           ebn0_db=(2.0,), stop=FAST, seed=0)
    with pytest.raises(ConfigError):
        run_sweep(cfg, threads=1)
