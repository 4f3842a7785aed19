"""Acceptance gate. Each test records one PASS/FAIL/SKIP line, echoed at the end of the run."""

import os
import time
from pathlib import Path

import numpy as np
import pytest

from reference_data import ANOMALOUS, ROWS, TABLE6, UTC_ROWS
from tsgauss.cli import main
from tsgauss.marginal import epps, lobato_velasco
from tsgauss.multiplicity import by_adjust, fdr_verdict
from tsgauss.pipeline import RunConfig, analyze_batch
from tsgauss.projection import RpConfig, rp_test
from tsgauss.series import TimeSeries
from tsgauss.stationarity import adf, kpss, ljung_box, phillips_perron, stationarity_panel
from tsgauss.synth import (
    GeneratorSpec,
    binomial_band,
    calibration,
    copula_markov_gaussian_marginal,
    gaussian_arma,
    replicate_rng,
)
from tsgauss.timefmt import format_utc

SNAPSHOT_ENV = "TSGAUSS_SNAPSHOT_DIR"


def record(log, number, title, passed, detail):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} {title} ({detail})"
    log.append(line)
    print(line)
    assert passed, line


def test_c1_fdr_regression(acceptance_log):
    t0 = time.perf_counter()
    matched, rejected = 0, set()
    for buoy, e, lv, printed, _ in ROWS:
        res = by_adjust([e, lv])
        if buoy not in ANOMALOUS and abs(res.combined - printed) <= 0.001 + 1e-12:
            matched += 1
        if buoy not in ANOMALOUS and fdr_verdict(res, 0.05):
            rejected.add(buoy)
    elapsed = time.perf_counter() - t0
    bold = {b for b, *_, flag in ROWS if flag}
    # the two source anomalies are documented, not imitated: 238 computes to 0 and would reject
    anomalous = {b: fdr_verdict(by_adjust([e, lv])) for b, e, lv, *_ in ROWS if b in ANOMALOUS}
    ok = matched == 60 and rejected == bold and len(bold) == 31 and elapsed < 1.0
    record(acceptance_log, 1, "FDR regression", ok,
           f"{matched}/60 rows within .001, {len(rejected)} rejections vs {len(bold)} bold, "
           f"verdicts match bold: {rejected == bold}, anomalous rows reject: {anomalous}, {elapsed:.3f}s")


def test_c2_closed_form(acceptance_log):
    t0 = time.perf_counter()
    p = np.random.default_rng(2).uniform(size=(10_000, 2))
    worst = 0.0
    for a, b in p:
        closed = min(3 * min(a, b), 1.5 * max(a, b))
        worst = max(worst, abs(by_adjust([a, b]).combined - closed))
    elapsed = time.perf_counter() - t0
    record(acceptance_log, 2, "closed-form FDR equivalence", worst <= 1e-12 and elapsed < 1.0,
           f"max abs diff {worst:.1e}, {elapsed:.3f}s")


def test_c3_ljung_box(acceptance_log, alternating):
    q = ljung_box(alternating, h=1).statistic
    record(acceptance_log, 3, "Ljung-Box hand oracle", q == 4.5, f"Q = {q!r}")


def test_c4_utc(acceptance_log):
    got = [format_utc(s) for s, _ in UTC_ROWS]
    want = [t for _, t in UTC_ROWS]
    record(acceptance_log, 4, "UTC formatting", got == want, f"{sum(g == w for g, w in zip(got, want))}/4 rows")


def _lb(series, rng):
    return ljung_box(series, h=10)


def _epps(series, rng):
    return epps(series)


def _lv(series, rng):
    return lobato_velasco(series)


def _rp_100_1(series, rng):
    return rp_test(series, RpConfig((100, 1), "LobatoVelasco"), rng)


def _rp_2_7(series, rng):
    return rp_test(series, RpConfig((2, 7), "Epps"), rng)


@pytest.mark.slow
def test_c5_size_calibration(acceptance_log):
    gen = GeneratorSpec("IidGaussian", 2000)
    lo, hi = binomial_band(0.05, 500)
    t0 = time.perf_counter()
    rates = {}
    for name, test, seed in [("LjungBox", _lb, 501), ("Epps", _epps, 502), ("LobatoVelasco", _lv, 503),
                             ("rp(100,1)", _rp_100_1, 504), ("rp(2,7)", _rp_2_7, 505)]:
        rates[name] = calibration(test, gen, 500, 0.05, seed=seed).rate
    elapsed = time.perf_counter() - t0
    ok = all(lo <= r <= hi for r in rates.values()) and elapsed < 600
    detail = ", ".join(f"{k} {v:.3f}" for k, v in rates.items())
    record(acceptance_log, 5, "size calibration", ok, f"band [{lo:.3f}, {hi:.3f}]; {detail}; {elapsed:.0f}s")


def test_c6_panel_pattern(acceptance_log):
    s = gaussian_arma(30_000, (0.5,), (), np.random.default_rng(30_000))
    a, p, lb, k = adf(s), phillips_perron(s), ljung_box(s), kpss(s)
    ok = a.p_value <= 0.01 and a.p_bound == "below" and p.p_value <= 0.01 and p.p_bound == "below"
    ok = ok and lb.p_value < 1e-6 and k.p_value >= 0.10 and k.p_bound == "above"
    ok = ok and stationarity_panel(s).verdict
    # context only: how often other seeds show KPSS p > .1
    share = np.mean([kpss(gaussian_arma(30_000, (0.5,), (), np.random.default_rng(i))).p_bound == "above"
                     for i in range(50)])
    record(acceptance_log, 6, "stationarity panel pattern", ok,
           f"ADF {a.format_p()}, PP {p.format_p()}, LB {lb.p_value:.1e}, KPSS {k.format_p()}; "
           f"KPSS p>.1 on {share:.0%} of seeds 0-49")


def _power_replicate(i):
    rng = replicate_rng(7, i)
    s = copula_markov_gaussian_marginal(2000, 2.0, rng)
    return (epps(s).p_value, lobato_velasco(s).p_value,
            rp_test(s, RpConfig((2, 7), "LobatoVelasco"), rng).p_value)


@pytest.mark.slow
def test_c7_power_separation(acceptance_log):
    reps = 200
    p = np.array([_power_replicate(i) for i in range(reps)])
    rate = (p < 0.05).mean(axis=0)
    best_direct = rate[:2].max()
    pooled = (best_direct + rate[2]) / 2
    se = np.sqrt(pooled * (1 - pooled) * 2 / reps)
    gap = rate[2] - best_direct
    ok = rate[2] > rate[0] and rate[2] > rate[1] and gap > 2 * se
    record(acceptance_log, 7, "power separation", ok,
           f"Epps {rate[0]:.3f}, LV {rate[1]:.3f}, rp(2,7) {rate[2]:.3f}, gap {gap:.3f} vs 2SE {2 * se:.3f}")


@pytest.mark.slow
def test_c8_gaussian_soundness(acceptance_log):
    cfg = RunConfig(seed=8)
    verdicts = []
    for seed in range(100):
        s = gaussian_arma(5000, (0.5,), (), np.random.default_rng(seed), station_id=str(seed))
        verdicts.extend(r.verdict for r in analyze_batch([s], cfg))
    counts = {v: verdicts.count(v) for v in sorted(set(verdicts))}
    share = counts.get("NotRejected", 0) / len(verdicts)
    record(acceptance_log, 8, "Gaussian-process soundness", share >= 0.90,
           f"NotRejected {share:.2f} of 100; {counts}")


def test_c9_snapshot(acceptance_log):
    root = os.environ.get(SNAPSHOT_ENV)
    if not root:
        line = f"criterion 9: SKIP snapshot reproduction (set {SNAPSHOT_ENV} to a directory of station CSVs)"
        acceptance_log.append(line)
        pytest.skip(line)
    paths = sorted(str(p) for p in Path(root).glob("*.csv"))
    agreements, summaries = [], []
    for master in range(5):
        reports = analyze_batch(paths, RunConfig(seed=master))
        marginal = sum(r.verdict == "NonGaussian_Marginal" for r in reports)
        rp_rej = sum(r.verdict == "NonGaussian_RP" for r in reports)
        studied = sum(r.verdict not in ("Excluded_AllMissing", "Error") for r in reports)
        agree = sum(
            1 for r in reports
            if r.station_id in TABLE6 and r.rp is not None and r.rp.rejects(0.05) == TABLE6[r.station_id][4]
        )
        agreements.append(agree)
        summaries.append((marginal, rp_rej, studied))
    counts_ok = all(s == (31, 19, 62) for s in summaries)
    ok = counts_ok and min(agreements) >= 28
    record(acceptance_log, 9, "snapshot reproduction", ok,
           f"(marginal, rp, studied) per seed {summaries}; reference RP agreement {agreements}")


def _write_station(path, series):
    path.write_text("utc_seconds,displacement_m\n"
                    + "".join(f"{float(t)!r},{float(v)!r}\n" for t, v in zip(series.timestamps, series.values)))


def test_c10_determinism(acceptance_log, tmp_path):
    d = tmp_path / "stations"
    d.mkdir()
    for i in range(12):
        rng = np.random.default_rng(1000 + i)
        if i % 3 == 0:
            s = copula_markov_gaussian_marginal(2000, 2.0, rng)
        else:
            s = gaussian_arma(2000, (0.5,), (0.2,) if i % 3 == 2 else (), rng)
        _write_station(d / f"{100 + 7 * i:03d}.csv", s)
    (d / "244.csv").write_text("0,\n1,\n")
    outputs = {}
    for fmt in ("csv", "json"):
        for workers in (1, 8):
            out = tmp_path / f"r{workers}.{fmt}"
            main(["analyze", "--input", str(d), "--seed", "11", "--format", fmt,
                  "--workers", str(workers), "--output", str(out)])
            outputs[fmt, workers] = out.read_bytes()
    same = all(outputs[f, 1] == outputs[f, 8] for f in ("csv", "json"))
    record(acceptance_log, 10, "determinism across worker counts", same,
           f"csv identical: {outputs['csv', 1] == outputs['csv', 8]}, json identical: {outputs['json', 1] == outputs['json', 8]}")
