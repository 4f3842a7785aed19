"""Time-series container, the cleaning protocol and the basic estimators.

All estimators treat the samples as equally spaced in index, whatever the
timestamps say; timestamps are carried only for reporting.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .errors import AllMissing, DegenerateSeries, LagTooLarge, TsGaussError


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Displacement samples with UTC-second timestamps.

    ``values`` may contain NaN (missing) until :func:`clean` has been applied.
    ``raw_length`` is the length of the stored record the series came from.
    """

    station_id: str
    timestamps: np.ndarray
    values: np.ndarray
    raw_length: int = field(default=-1)

    def __post_init__(self):
        ts = _frozen(self.timestamps)
        vals = _frozen(self.values)
        if ts.ndim != 1 or vals.ndim != 1 or ts.shape != vals.shape:
            raise TsGaussError("timestamps and values must be 1-d and of equal length")
        if ts.size > 1 and not np.all(np.diff(ts) > 0):
            raise TsGaussError("timestamps must be strictly increasing")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", vals)
        if self.raw_length < 0:
            object.__setattr__(self, "raw_length", int(vals.size))

    @classmethod
    def from_values(cls, values, station_id="series", timestamps=None):
        values = np.asarray(values, dtype=float)
        if timestamps is None:
            timestamps = np.arange(values.size, dtype=float)
        return cls(station_id, timestamps, values)

    @property
    def n(self):
        return int(self.values.size)

    @property
    def has_missing(self):
        return bool(np.isnan(self.values).any())

    def with_values(self, values):
        """Same station and timestamps, new values (used for trimmed/derived series)."""
        values = np.asarray(values, dtype=float)
        return replace(self, timestamps=self.timestamps[self.n - values.size:], values=values)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.station_id == other.station_id
            and self.raw_length == other.raw_length
            and np.array_equal(self.timestamps, other.timestamps)
            and np.array_equal(self.values, other.values, equal_nan=True)
        )

    __hash__ = None


@dataclass(frozen=True)
class MomentSet:
    mean: float
    variance: float
    central_moment_3: float
    central_moment_4: float


def clean(series, fill_value=None):
    """Drop missing samples (NaN, or ``fill_value`` when the source uses one).

    Raises
    ------
    AllMissing
        If nothing is left.
    """
    vals = series.values
    keep = ~np.isnan(vals)
    if fill_value is not None and not np.isnan(fill_value):
        keep &= vals != fill_value
    if not keep.any():
        raise AllMissing(f"station {series.station_id}: every sample is missing")
    if keep.all():
        return series
    return replace(series, timestamps=series.timestamps[keep], values=vals[keep])


def truncate_to_first(series, n_max=30000):
    """Keep the first ``n_max`` stored samples, missing markers included."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if series.n <= n_max:
        return series
    return replace(series, timestamps=series.timestamps[:n_max], values=series.values[:n_max])


def _values(series):
    if isinstance(series, TimeSeries):
        x = series.values
    else:
        x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise TsGaussError("at least two samples are required")
    if np.isnan(x).any():
        raise TsGaussError("series contains missing values; clean() it first")
    return x


def moments(series):
    x = _values(series)
    d = x - x.mean()
    d2 = d * d
    return MomentSet(
        mean=float(x.mean()),
        variance=float(d2.mean()),
        central_moment_3=float((d2 * d).mean()),
        central_moment_4=float((d2 * d2).mean()),
    )


def autocovariance(series, lag):
    """Sample autocovariance at ``lag``, denominator n."""
    x = _values(series)
    if lag < 0 or lag >= x.size:
        raise LagTooLarge(f"lag {lag} outside [0, {x.size - 1}]")
    return float(kernels.acov(x, lag)[lag])


def autocovariances(series, max_lag):
    """Vector of sample autocovariances for lags ``0..max_lag``."""
    x = _values(series)
    if max_lag < 0 or max_lag >= x.size:
        raise LagTooLarge(f"lag {max_lag} outside [0, {x.size - 1}]")
    return kernels.acov(x, max_lag)


def all_autocovariances(x):
    """Autocovariances at every lag ``0..n-1`` via FFT."""
    x = np.asarray(x, dtype=float)
    n = x.size
    d = x - x.mean()
    nfft = 1 << int(np.ceil(np.log2(2 * n)))
    f = np.fft.rfft(d, nfft)
    return np.fft.irfft(f * np.conj(f), nfft)[:n] / n


def autocorrelation(series, lag):
    x = _values(series)
    if lag == 0:
        if np.ptp(x) == 0:
            raise DegenerateSeries("zero variance")
        return 1.0
    g = autocovariances(x, lag)
    if g[0] <= 0 or np.ptp(x) == 0:
        raise DegenerateSeries("zero variance")
    return float(g[lag] / g[0])


def autocorrelations(series, max_lag):
    """``rho(1..max_lag)``."""
    x = _values(series)
    if np.ptp(x) == 0:
        raise DegenerateSeries("zero variance")
    g = autocovariances(x, max_lag)
    return g[1:] / g[0]
