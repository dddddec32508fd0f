"""Text emitters: spectrum CSV, Markdown run report, SVG plot.

Every emitter is a pure function of its inputs and returns bytes, so identical
analyses always produce byte-identical files.
"""

from __future__ import annotations


def fmt_real(x: float) -> str:
    """Six significant digits, no trailing zeros, never ``-0``."""
    s = f"{float(x) + 0.0:.6g}"
    return "0" if s == "-0" else s


def emit_spectrum_csv(spectrum) -> bytes:
    lines = ["year,count,median,deviation"]
    for i, year in enumerate(spectrum.years):
        lines.append(f"{year},{int(spectrum.counts[i])},"
                     f"{fmt_real(spectrum.medians[i])},{fmt_real(spectrum.deviations[i])}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _share(peak) -> str:
    return f"{peak.top_count}/{peak.count} ({peak.top_share:.3f})"


def emit_report_md(report) -> bytes:
    cfg = report.config
    stats = report.corpus
    out = [
        "# RPYS report",
        "",
        "## Configuration",
        "",
        f"- year range: {cfg.min_year}-{cfg.max_year}",
        f"- median window: {2 * cfg.window_halfwidth + 1} years (halfwidth {cfg.window_halfwidth})",
        f"- minimum peak count: {cfg.min_peak_count}",
        f"- deviation: {cfg.deviation_mode.value}",
        f"- counting: {'citation occurrences' if cfg.count_multiplicity else 'citing records per work'}",
        f"- fuzzy threshold: {cfg.fuzzy_threshold}",
        f"- top works per peak: {cfg.top_k}",
        "",
        "## Corpus",
        "",
        f"- citing records: {stats.n_records}",
        f"- raw cited references: {stats.n_references}",
    ]
    out += [f"- {status}: {n}" for status, n in stats.tallies.items()]
    out += [
        f"- counted in range: {report.total} ({report.min_year}-{report.max_year})",
        "",
        "## Peaks",
        "",
    ]
    if not report.peaks:
        out.append("No peaks detected.")
    else:
        out.append("| Year | Count | Deviation | Top work | Top share |")
        out.append("|---:|---:|---:|---|---|")
        for p in report.peaks:
            top = p.top_clusters[0][0].canonical_key.label()
            out.append(f"| {p.year} | {p.count} | {fmt_real(p.deviation)} | {top} | {_share(p)} |")
        for p in report.peaks:
            out += ["", f"### {p.year}", ""]
            for rank, (cluster, n) in enumerate(p.top_clusters, start=1):
                out.append(f"{rank}. {cluster.canonical_key.label()}: {n}/{p.count}")
    return ("\n".join(out) + "\n").encode("utf-8")


_W, _PANEL_H, _ML, _MR, _MT, _GAP = 900, 220, 60, 20, 30, 50


def _f(x: float) -> str:
    return f"{x:.2f}"


def emit_plot_svg(spectrum, peaks=()) -> bytes:
    """Two stacked panels: counts per year on top, deviation below."""
    n = len(spectrum)
    plot_w = _W - _ML - _MR
    bar_w = plot_w / n
    height = _MT + 2 * _PANEL_H + _GAP + 40
    peak_years = {p.year for p in peaks}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{height}" '
        f'viewBox="0 0 {_W} {height}" font-family="sans-serif" font-size="10">',
        f'<rect x="0" y="0" width="{_W}" height="{height}" fill="white"/>',
    ]

    def x_of(i):
        return _ML + i * bar_w

    # counts panel
    top = _MT
    cmax = max(int(spectrum.counts.max()), 1)
    parts.append(f'<text x="{_ML}" y="{top - 10}" font-size="12">Cited references per year</text>')
    parts.append(f'<line x1="{_ML}" y1="{top + _PANEL_H}" x2="{_W - _MR}" '
                 f'y2="{top + _PANEL_H}" stroke="black"/>')
    parts.append(f'<text x="{_ML - 5}" y="{top + 4}" text-anchor="end">{cmax}</text>')
    for i, c in enumerate(spectrum.counts):
        h = _PANEL_H * int(c) / cmax
        fill = "#c0392b" if spectrum.min_year + i in peak_years else "#34495e"
        parts.append(f'<rect x="{_f(x_of(i))}" y="{_f(top + _PANEL_H - h)}" '
                     f'width="{_f(bar_w)}" height="{_f(h)}" fill="{fill}"/>')
    for p in peaks:
        i = spectrum.index(p.year)
        h = _PANEL_H * p.count / cmax
        parts.append(f'<text x="{_f(x_of(i) + bar_w / 2)}" y="{_f(top + _PANEL_H - h - 3)}" '
                     f'text-anchor="middle">{p.year}</text>')

    # deviation panel
    top = _MT + _PANEL_H + _GAP
    dev = spectrum.deviations
    dmax = max(float(dev.max()), 0.0)
    dmin = min(float(dev.min()), 0.0)
    span = (dmax - dmin) or 1.0
    zero_y = top + _PANEL_H * dmax / span
    parts.append(f'<text x="{_ML}" y="{top - 10}" font-size="12">'
                 'Deviation from windowed median</text>')
    parts.append(f'<line x1="{_ML}" y1="{_f(zero_y)}" x2="{_W - _MR}" y2="{_f(zero_y)}" '
                 f'stroke="black"/>')
    for i, d in enumerate(dev):
        h = _PANEL_H * abs(float(d)) / span
        y = zero_y - h if d >= 0 else zero_y
        fill = "#c0392b" if spectrum.min_year + i in peak_years else "#7f8c8d"
        parts.append(f'<rect x="{_f(x_of(i))}" y="{_f(y)}" width="{_f(bar_w)}" '
                     f'height="{_f(h)}" fill="{fill}"/>')
    for p in peaks:
        i = spectrum.index(p.year)
        h = _PANEL_H * max(p.deviation, 0.0) / span
        parts.append(f'<text x="{_f(x_of(i) + bar_w / 2)}" y="{_f(zero_y - h - 3)}" '
                     f'text-anchor="middle">{p.year}</text>')

    # year axis
    axis_y = top + _PANEL_H + 15
    step = 20 if n > 40 else (5 if n > 10 else 1)
    for i, year in enumerate(spectrum.years):
        if year % step == 0 or n == 1:
            parts.append(f'<text x="{_f(x_of(i) + bar_w / 2)}" y="{axis_y}" '
                         f'text-anchor="middle" fill="#555">{year}</text>')
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
