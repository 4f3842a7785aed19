"""Report rendering: CSV (plot-ready), JSON (lossless) and Markdown tables."""

import csv
import io
import json

from .pipeline import StationReport

CSV_COLUMNS = (
    "station", "verdict", "p", "raw_length", "studied_n", "start_utc", "end_utc",
    "stationary", "adf_p", "pp_p", "lb_p", "kpss_p", "epps_p", "lv_p", "fdr",
    "rp_p", "rp_lambda1", "rp_lambda2", "rp_test", "seed", "threshold", "rejected", "error",
)


def fmt_p(p, digits=3):
    """Three-decimal style of the printed tables: ``.050``, ``1.231``."""
    if p is None:
        return ""
    text = f"{p:.{digits}f}"
    return text[1:] if text.startswith("0.") else text


def _num(p):
    return "" if p is None else f"{p:.3f}"


def _rejected(r):
    return r.verdict in ("NonGaussian_Marginal", "NonGaussian_RP")


def _plot_p(r):
    """The p-value that decided the station: RP if it ran, else the FDR value."""
    if r.rp is not None:
        return r.rp.p_value
    return r.fdr_value


def _csv(reports, header, alpha):
    buf = io.StringIO()
    for k, v in header.items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        st = {o.test_name: o.p_value for o in r.stationarity}
        cfg = r.rp_config
        w.writerow([
            r.station_id, r.verdict, _num(_plot_p(r)), r.raw_length, r.studied_n,
            "" if r.start_utc is None else repr(r.start_utc),
            "" if r.end_utc is None else repr(r.end_utc),
            "" if r.stationary is None else int(r.stationary),
            _num(st.get("ADF")), _num(st.get("PhillipsPerron")), _num(st.get("LjungBox")), _num(st.get("KPSS")),
            _num(r.epps_p), _num(r.lv_p), _num(r.fdr_value),
            _num(r.rp.p_value if r.rp else None),
            "" if cfg is None else f"{cfg.lambda_pair[0]:g}",
            "" if cfg is None else f"{cfg.lambda_pair[1]:g}",
            "" if cfg is None else cfg.marginal_test,
            r.seed, f"{alpha:g}", int(_rejected(r)), r.error or "",
        ])
    return buf.getvalue()


def _json(reports, header):
    doc = {"config": header, "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_json_report(data):
    """Inverse of the JSON emitter: ``(config, reports)``."""
    doc = json.loads(data)
    return doc["config"], [StationReport.from_dict(d) for d in doc["reports"]]


def _bold(text, on):
    return f"**{text}**" if on else text


def _markdown(reports, header, alpha):
    out = ["<!-- " + " ".join(f"{k}={v}" for k, v in header.items()) + " -->", ""]
    out += ["### Stationarity", "", "| station | ADF | PP | Ljung-Box | KPSS | stationary |", "|---:|---:|---:|---:|---:|:--:|"]
    for r in reports:
        if not r.stationarity:
            continue
        st = {o.test_name: o for o in r.stationarity}
        cells = [st[n].format_p().replace("0.", ".", 1) for n in ("ADF", "PhillipsPerron", "LjungBox", "KPSS")]
        out.append(f"| {r.station_id} | " + " | ".join(cells) + f" | {'yes' if r.stationary else 'no'} |")
    out += ["", "### Marginal Gaussianity", "", "| station | Epps | L.-V. | FDR |", "|---:|---:|---:|---:|"]
    for r in reports:
        if r.fdr is None:
            continue
        rej = r.fdr_value < alpha
        out.append(f"| {r.station_id} | {fmt_p(r.epps_p)} | {fmt_p(r.lv_p)} | {_bold(fmt_p(r.fdr_value), rej)} |")
    out += ["", "### Random projection", "", "| station | p-value | param1 | param2 | test |", "|---:|---:|---:|---:|---|"]
    for r in reports:
        if r.rp is None:
            continue
        l1, l2 = r.rp_config.lambda_pair
        test = "L.-V." if r.rp_config.marginal_test == "LobatoVelasco" else "Epps"
        out.append(f"| {r.station_id} | {_bold(fmt_p(r.rp.p_value), r.rp.rejects(alpha))} | {l1:g} | {l2:g} | {test} |")
    other = [r for r in reports if r.verdict in ("Excluded_AllMissing", "Excluded_NonStationary", "Error")]
    if other:
        out += ["", "### Not analysed", "", "| station | verdict | detail |", "|---:|---|---|"]
        for r in other:
            out.append(f"| {r.station_id} | {r.verdict} | {r.error or ''} |")
    n_rej = sum(_rejected(r) for r in reports)
    n_studied = sum(r.verdict not in ("Excluded_AllMissing", "Error") for r in reports)
    out += ["", f"Rejected {n_rej} of {n_studied} studied series."]
    return "\n".join(out) + "\n"


def emit_report(reports, fmt="csv", header=None, alpha=0.05):
    """Render reports as bytes. Rounding here is presentation only."""
    header = dict(header or {})
    if fmt == "csv":
        text = _csv(reports, header, alpha)
    elif fmt == "json":
        text = _json(reports, header)
    elif fmt in ("md", "markdown"):
        text = _markdown(reports, header, alpha)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return text.encode("utf-8")
