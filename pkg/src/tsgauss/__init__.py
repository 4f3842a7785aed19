"""Testing whether a time series is drawn from a stationary Gaussian process."""

from .errors import TsGaussError
from .kernels import BACKEND
from .marginal import epps, lobato_velasco
from .multiplicity import FdrResult, by_adjust, fdr_verdict
from .outcome import TestOutcome
from .pipeline import RunConfig, StationReport, analyze_batch, analyze_station
from .projection import RpConfig, StickWeights, project, rp_test, select_rp_config, stick_breaking_weights
from .series import MomentSet, TimeSeries, autocorrelation, autocovariance, clean, moments, truncate_to_first
from .stationarity import adf, kpss, ljung_box, phillips_perron, stationarity_panel
from .timefmt import format_utc

__version__ = "0.1.0"
