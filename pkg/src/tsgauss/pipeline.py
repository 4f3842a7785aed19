"""End-to-end decision flow for a batch of stations.

stationarity panel -> Epps and Lobato-Velasco -> dependent-case FDR ->
random projection test for stations the marginal stage did not reject.
"""

import hashlib
from pathlib import Path
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import AllMissing, TsGaussError
from .ingest import ingest_file
from .marginal import epps, lobato_velasco
from .multiplicity import FdrResult, by_adjust, fdr_verdict
from .outcome import TestOutcome
from .projection import RpConfig, rp_test, select_rp_config
from .stationarity import stationarity_panel

VERDICTS = (
    "NonGaussian_Marginal",
    "NonGaussian_RP",
    "NotRejected",
    "Excluded_AllMissing",
    "Excluded_NonStationary",
    "Error",
)


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple = ()
    n_max: int = 30000
    alpha: float = 0.05
    lb_h: int = 10
    seed: int = 0
    rp_projections: int = 1
    rp_epsilon: float = 1e-10
    cap_fdr: bool = False
    independent_fdr: bool = False
    fill_value: float | None = None
    workers: int = 1
    fmt: str = "csv"
    rp_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.n_max < 2:
            raise ValueError("n_max must be >= 2")

    def header(self):
        """Settings that affect results, for report headers."""
        return {
            "n_max": self.n_max,
            "alpha": self.alpha,
            "lb_h": self.lb_h,
            "seed": self.seed,
            "rp_projections": self.rp_projections,
            "rp_epsilon": self.rp_epsilon,
            "cap_fdr": self.cap_fdr,
            "independent_fdr": self.independent_fdr,
        }


def station_seed(master, station_id):
    """Stable 63-bit seed for one station, independent of processing order."""
    digest = hashlib.sha256(f"{int(master)}:{station_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


@dataclass(frozen=True)
class StationReport:
    station_id: str
    verdict: str
    raw_length: int = 0
    studied_n: int = 0
    start_utc: float | None = None
    end_utc: float | None = None
    seed: int = 0
    stationarity: tuple = ()
    stationary: bool | None = None
    epps: TestOutcome | None = None
    lobato_velasco: TestOutcome | None = None
    fdr: FdrResult | None = None
    rp: TestOutcome | None = None
    rp_config: RpConfig | None = None
    error: str | None = None

    @property
    def epps_p(self):
        return None if self.epps is None else self.epps.p_value

    @property
    def lv_p(self):
        return None if self.lobato_velasco is None else self.lobato_velasco.p_value

    @property
    def fdr_value(self):
        return None if self.fdr is None else self.fdr.combined

    def to_dict(self):
        d = asdict(self)
        d["stationarity"] = [o.to_dict() for o in self.stationarity]
        if self.rp_config is not None:
            d["rp_config"]["lambda_pair"] = list(self.rp_config.lambda_pair)
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["stationarity"] = tuple(TestOutcome.from_dict(o) for o in d.get("stationarity", ()))
        for key in ("epps", "lobato_velasco", "rp"):
            if d.get(key) is not None:
                d[key] = TestOutcome.from_dict(d[key])
        if d.get("fdr") is not None:
            f = dict(d["fdr"])
            f["raw"], f["adjusted"] = tuple(f["raw"]), tuple(f["adjusted"])
            d["fdr"] = FdrResult(**f)
        if d.get("rp_config") is not None:
            c = dict(d["rp_config"])
            c["lambda_pair"] = tuple(c["lambda_pair"])
            d["rp_config"] = RpConfig(**c)
        return cls(**d)


def _rp_config_for(station_id, epps_p, lv_p, cfg):
    override = cfg.rp_overrides.get(station_id)
    base = dict(epsilon=cfg.rp_epsilon, num_projections=cfg.rp_projections)
    if override is not None:
        pair, test = override
        return RpConfig(lambda_pair=tuple(pair), marginal_test=test, **base)
    return select_rp_config(epps_p, lv_p, cfg.alpha, **base)


def analyze_station(series, cfg=None, rng=None):
    """Run the full decision flow on one cleaned series.

    Stage failures are caught and recorded in the report (verdict ``"Error"``)
    so that a batch never stops on one station.
    """
    cfg = cfg or RunConfig()
    seed = station_seed(cfg.seed, series.station_id)
    if rng is None:
        rng = np.random.default_rng(seed)
    report = StationReport(
        station_id=series.station_id,
        verdict="Error",
        raw_length=series.raw_length,
        studied_n=series.n,
        start_utc=float(series.timestamps[0]) if series.n else None,
        end_utc=float(series.timestamps[-1]) if series.n else None,
        seed=seed,
    )
    stage = "stationarity"
    try:
        panel = stationarity_panel(series, cfg.alpha, cfg.lb_h)
        report = replace(report, stationarity=tuple(panel.outcomes), stationary=panel.verdict)
        if not panel.verdict:
            return replace(report, verdict="Excluded_NonStationary")
        stage = "marginal"
        e, lv = epps(series), lobato_velasco(series)
        fdr = by_adjust([e.p_value, lv.p_value], dependent=not cfg.independent_fdr, cap=cfg.cap_fdr)
        report = replace(report, epps=e, lobato_velasco=lv, fdr=fdr)
        if fdr_verdict(fdr, cfg.alpha):
            return replace(report, verdict="NonGaussian_Marginal")
        stage = "random projection"
        rcfg = _rp_config_for(series.station_id, e.p_value, lv.p_value, cfg)
        rp = rp_test(series, rcfg, rng)
        verdict = "NonGaussian_RP" if rp.rejects(cfg.alpha) else "NotRejected"
        return replace(report, rp=rp, rp_config=rcfg, verdict=verdict)
    except TsGaussError as exc:
        return replace(report, error=f"{stage}: {type(exc).__name__}: {exc}")


def excluded_report(station_id, raw_length, cfg, message):
    return StationReport(
        station_id=station_id,
        verdict="Excluded_AllMissing",
        raw_length=raw_length,
        seed=station_seed(cfg.seed, station_id),
        error=message,
    )


def analyze_path(path, cfg):
    sid = Path(path).stem
    try:
        series = ingest_file(path, cfg.n_max, cfg.fill_value)
    except AllMissing as exc:
        return excluded_report(sid, 0, cfg, str(exc))
    except (TsGaussError, OSError) as exc:
        return StationReport(
            station_id=sid, verdict="Error", seed=station_seed(cfg.seed, sid),
            error=f"ingest: {type(exc).__name__}: {exc}",
        )
    return analyze_station(series, cfg)


def _analyze_job(job):
    item, cfg = job
    if isinstance(item, str):
        return analyze_path(item, cfg)
    return analyze_station(item, cfg)


def station_sort_key(station_id):
    return (1, int(station_id), "") if station_id.isdigit() else (0, 0, station_id)


def analyze_batch(items, cfg):
    """Analyse paths (str) or series; returns reports in descending station order."""
    jobs = [(str(i) if not hasattr(i, "values") else i, cfg) for i in items]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            reports = list(pool.map(_analyze_job, jobs))
    else:
        reports = [_analyze_job(j) for j in jobs]
    return sorted(reports, key=lambda r: station_sort_key(r.station_id), reverse=True)
