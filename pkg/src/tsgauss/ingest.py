"""Reading station records: local CSV files and the THREDDS/OPeNDAP buoy archive.

CSV layout is two columns ``utc_seconds,displacement_m`` with an optional
header; a missing displacement is an empty field or ``NaN``.
"""

import csv
import io
import math
import re
import urllib.error
import urllib.request
from pathlib import Path

import numpy as np

from .errors import HttpError, MissingVariable, ParseError, TsGaussError, UnknownStation
from .series import TimeSeries, clean, truncate_to_first

DISPLACEMENT_VARIABLE = "xyzZDisplacement"
_MISSING = {"", "nan"}


def _parse_value(text, line, what):
    text = text.strip()
    if text.lower() in _MISSING:
        return math.nan
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"{what} {text!r} is not a number", line) from None


def _looks_like_header(row):
    try:
        float(row[0])
    except (ValueError, IndexError):
        return True
    return False


def read_csv_record(lines, station_id, n_max=None):
    """Parse CSV text lines into a raw (uncleaned) series.

    Only the first ``n_max`` data rows are parsed; the rest are only counted
    so that ``raw_length`` reflects the stored record.
    """
    reader = csv.reader(lines)
    times, values = [], []
    total = 0
    value_col = 1
    for lineno, row in enumerate(reader, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if total == 0 and not times and _looks_like_header(row):
            names = [c.strip() for c in row]
            for cand in ("displacement_m", DISPLACEMENT_VARIABLE):
                if cand in names:
                    value_col = names.index(cand)
                    break
            else:
                if len(names) < 2:
                    raise MissingVariable(f"no displacement column in header {names}")
            continue
        total += 1
        if n_max is not None and total > n_max:
            continue
        if len(row) <= value_col:
            raise ParseError(f"expected at least {value_col + 1} columns", lineno)
        t = _parse_value(row[0], lineno, "timestamp")
        if math.isnan(t):
            raise ParseError("missing timestamp", lineno)
        times.append(t)
        values.append(_parse_value(row[value_col], lineno, "value"))
    try:
        return TimeSeries(station_id, np.array(times), np.array(values), raw_length=total)
    except TsGaussError as exc:
        raise ParseError(str(exc)) from None


def ingest_file(path, n_max=30000, fill_value=None, station_id=None):
    """Read a CSV record, keep its first ``n_max`` samples, drop missing ones."""
    path = Path(path)
    sid = station_id or path.stem
    with open(path, newline="", encoding="utf-8") as fh:
        raw = read_csv_record(fh, sid, n_max)
    return clean(truncate_to_first(raw, n_max), fill_value)


class UrllibClient:
    """Minimal HTTP client; any object with ``get(url) -> (status, body)`` can replace it."""

    def __init__(self, timeout=60):
        self.timeout = timeout

    def get(self, url):
        try:
            with urllib.request.urlopen(url, timeout=self.timeout) as resp:
                return resp.status, resp.read()
        except urllib.error.HTTPError as exc:
            return exc.code, exc.read() if exc.fp else b""


def _dataset_url(base_url, station_id):
    return f"{base_url.rstrip('/')}/{station_id}p1_rt.nc"


def _checked_get(client, url):
    status, body = client.get(url)
    if status == 404:
        raise UnknownStation(f"no dataset at {url}")
    if status != 200:
        raise HttpError(status, url)
    return body.decode("utf-8") if isinstance(body, bytes) else body


_DDS_ARRAY = re.compile(r"(\w+)\s+(\w+)\[(?:\w+\s*=\s*)?(\d+)\]")


def parse_dds_lengths(text):
    """Map variable name to its declared length in an OPeNDAP DDS document."""
    return {m.group(2): int(m.group(3)) for m in _DDS_ARRAY.finditer(text)}


def parse_opendap_ascii(text):
    """Parse the data section of an OPeNDAP ``.ascii`` response into arrays by name."""
    parts = re.split(r"^-{10,}\s*$", text, maxsplit=1, flags=re.M)
    body = parts[1] if len(parts) == 2 else parts[0]
    out = {}
    current = None
    chunks = []
    for line in body.splitlines():
        line = line.strip()
        if not line:
            continue
        head = re.match(r"^([A-Za-z_]\w*)(?:\[\d+\])?\s*(?:,\s*(.*))?$", line)
        if head and not _is_number(head.group(1)):
            if current is not None:
                out[current] = _to_array(chunks)
            current, chunks = head.group(1), []
            if head.group(2):
                chunks.append(head.group(2))
            continue
        chunks.append(re.sub(r"^\[\d+\]\s*,", "", line))
    if current is not None:
        out[current] = _to_array(chunks)
    return out


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def _to_array(chunks):
    fields = [f for c in chunks for f in c.split(",") if f.strip()]
    return np.array([_parse_value(f, None, "value") for f in fields], dtype=float)


def fetch_station(station_id, base_url, http_client=None, n_max=30000):
    """Download the first ``n_max`` displacement samples of a station.

    Two requests are made against ``{base_url}/{station}p1_rt.nc``: the DDS
    (to learn the stored length and check the variable exists) and an ASCII
    slice of the start time, sample rate and displacement arrays. Returns an
    uncleaned :class:`TimeSeries` with timestamps ``start + i / rate``.
    """
    client = http_client or UrllibClient()
    url = _dataset_url(base_url, station_id)
    lengths = parse_dds_lengths(_checked_get(client, url + ".dds"))
    if DISPLACEMENT_VARIABLE not in lengths:
        raise MissingVariable(f"{DISPLACEMENT_VARIABLE} not in dataset {url}")
    stored = lengths[DISPLACEMENT_VARIABLE]
    take = min(stored, n_max)
    query = f"xyzStartTime,xyzSampleRate,{DISPLACEMENT_VARIABLE}[0:1:{take - 1}]"
    data = parse_opendap_ascii(_checked_get(client, f"{url}.ascii?{query}"))
    if DISPLACEMENT_VARIABLE not in data:
        raise MissingVariable(f"{DISPLACEMENT_VARIABLE} missing from response")
    z = data[DISPLACEMENT_VARIABLE]
    try:
        start = float(data["xyzStartTime"][0])
        rate = float(data["xyzSampleRate"][0])
    except (KeyError, IndexError):
        raise MissingVariable("xyzStartTime/xyzSampleRate missing from response") from None
    t = start + np.arange(z.size) / rate
    return TimeSeries(str(station_id), t, z, raw_length=stored)


def write_csv(series, fh):
    fh.write("utc_seconds,displacement_m\n")
    for t, v in zip(series.timestamps, series.values):
        fh.write(f"{float(t)!r},{'' if math.isnan(v) else repr(float(v))}\n")


def to_csv_text(series):
    buf = io.StringIO()
    write_csv(series, buf)
    return buf.getvalue()
