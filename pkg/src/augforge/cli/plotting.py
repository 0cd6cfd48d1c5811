"""Dependency-free SVG line charts for score-vs-iteration traces.

One ``<polyline>`` per series (axes and grid use ``<line>``), legend
entries from series labels, y axis fixed to 0..100 (scores in percent).
"""

from xml.sax.saxutils import escape

from ..errors import ConfigError

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]

WIDTH, HEIGHT = 760, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 24, 28, 48


def render_line_chart(series, out_path=None, baseline=None, x_max=None,
                      title="F-score vs reconstructions", y_label="F-score (%)",
                      x_label="reconstruction"):
    """``series`` is a list of (label, xs, ys) with ys in percent [0, 100]."""
    if not series:
        raise ConfigError("no series to plot")
    for label, xs, ys in series:
        if len(xs) != len(ys):
            raise ConfigError(f"series {label!r}: x/y length mismatch")
        if any(not 0.0 <= y <= 100.0 for y in ys):
            raise ConfigError(f"series {label!r}: y values must be within [0, 100]")
    if baseline is not None and not 0.0 <= baseline <= 100.0:
        raise ConfigError(f"baseline {baseline} must be within [0, 100]")

    hi_x = x_max or max((max(xs) for _, xs, _ in series if xs), default=1)
    hi_x = max(hi_x, 1)
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + plot_w * (x - 1) / max(hi_x - 1, 1)

    def py(y):
        return MARGIN_T + plot_h * (1.0 - y / 100.0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<text x="{WIDTH / 2:.0f}" y="18" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
    ]
    # grid and y ticks every 10 points
    for tick in range(0, 101, 10):
        y = py(tick)
        parts.append(
            f'<line class="grid" x1="{MARGIN_L}" y1="{y:.1f}" x2="{WIDTH - MARGIN_R}" '
            f'y2="{y:.1f}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick}</text>'
        )
    # x ticks: at most ~12 labels
    step = max(1, (hi_x + 11) // 12)
    for tick in range(1, hi_x + 1, step):
        x = px(tick)
        parts.append(
            f'<line class="tick" x1="{x:.1f}" y1="{HEIGHT - MARGIN_B}" x2="{x:.1f}" '
            f'y2="{HEIGHT - MARGIN_B + 5}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{HEIGHT - MARGIN_B + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{tick}</text>'
        )
    # axes
    parts.append(
        f'<line class="axis" x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="#333333" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line class="axis" x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" '
        f'x2="{WIDTH - MARGIN_R}" y2="{HEIGHT - MARGIN_B}" stroke="#333333" stroke-width="1.5"/>'
    )
    parts.append(
        f'<text x="{MARGIN_L + plot_w / 2:.0f}" y="{HEIGHT - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="16" y="{MARGIN_T + plot_h / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {MARGIN_T + plot_h / 2:.0f})">{escape(y_label)}</text>'
    )
    if baseline is not None:
        y = py(baseline)
        parts.append(
            f'<line class="baseline" x1="{MARGIN_L}" y1="{y:.1f}" x2="{WIDTH - MARGIN_R}" '
            f'y2="{y:.1f}" stroke="#555555" stroke-width="1" stroke-dasharray="6,4"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN_R - 4}" y="{y - 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10" fill="#555555">baseline {baseline:.1f}</text>'
        )
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        if xs:
            points = " ".join(f"{px(x):.1f},{py(y):.1f}" for x, y in zip(xs, ys))
            parts.append(
                f'<polyline class="series" fill="none" stroke="{color}" '
                f'stroke-width="2" points="{points}"/>'
            )
        ly = MARGIN_T + 14 + 16 * i
        lx = WIDTH - MARGIN_R - 150
        parts.append(
            f'<line class="legend-swatch" x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text class="legend" x="{lx + 24}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{escape(label)}</text>'
        )
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if out_path is not None:
        with open(out_path, "w") as fh:
            fh.write(svg)
    return svg
