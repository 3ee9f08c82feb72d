"""Dependency-free SVG rendering of the five summary charts.

Output is a pure function of the :class:`ChartSpec`: no timestamps, no
randomness, fixed number formatting, so rendered files can be compared
byte-for-byte.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple
from xml.sax.saxutils import escape, quoteattr

from .dataset import HIST_EDGES, CorpusSummary

CHART_KINDS = ("emotion_bar", "sentiment_hist", "character_bar", "absurdity_line", "dialogue_pie")
TITLES = {
    "emotion_bar": "Frequency of emotion labels",
    "sentiment_hist": "Distribution of sentiment (compound score)",
    "character_bar": "Interactions per character (paragraphs mentioning)",
    "absurdity_line": "Absurdity tags over narrative position",
    "dialogue_pie": "Dialogue vs. narrative",
}

MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 56, 16, 40, 64
BAR_FILL = "#4c72b0"
LINE_STROKE = "#c44e52"
PIE_FILLS = ("#dd8452", "#4c72b0")
FONT = 'font-family="sans-serif"'


class ChartSpecError(ValueError):
    pass


@dataclass(frozen=True)
class ChartSpec:
    """What to draw.

    ``data`` per kind: bar kinds take ``(label, count)`` pairs;
    ``sentiment_hist`` takes 20 bin counts over [-1, 1]; ``absurdity_line``
    takes ``(paragraph index, value in [0, 1])`` pairs; ``dialogue_pie``
    takes ``(dialogue_share, narrative_share)``.
    """

    kind: str
    title: str
    data: tuple
    width: int = 640
    height: int = 400


def chart_filename(kind: str) -> str:
    return f"{kind}.svg"


def spec_from_summary(summary: CorpusSummary, kind: str, width: int = 640, height: int = 400) -> ChartSpec:
    if kind == "emotion_bar":
        items = sorted(summary.emotion_freq.items(), key=lambda kv: (-kv[1], kv[0]))
        data = tuple(items)
    elif kind == "sentiment_hist":
        data = tuple(summary.sentiment_hist)
    elif kind == "character_bar":
        data = tuple(summary.interaction_counts.items())
    elif kind == "absurdity_line":
        data = tuple(summary.absurdity_series)
    elif kind == "dialogue_pie":
        data = (summary.dialogue_share, summary.narrative_share)
    else:
        raise ChartSpecError(f"unknown chart kind {kind!r}; expected one of {', '.join(CHART_KINDS)}")
    return ChartSpec(kind, TITLES[kind], data, width, height)


def validate(spec: ChartSpec) -> None:
    if spec.kind not in CHART_KINDS:
        raise ChartSpecError(f"unknown chart kind {spec.kind!r}; expected one of {', '.join(CHART_KINDS)}")
    if spec.width <= 0 or spec.height <= 0:
        raise ChartSpecError("width and height must be positive")
    if spec.width <= MARGIN_LEFT + MARGIN_RIGHT or spec.height <= MARGIN_TOP + MARGIN_BOTTOM:
        raise ChartSpecError("chart is too small for its margins")
    d = spec.data
    if spec.kind in ("emotion_bar", "character_bar"):
        if not all(isinstance(p, tuple) and len(p) == 2 and isinstance(p[0], str)
                   and _real(p[1]) and p[1] >= 0 for p in d):
            raise ChartSpecError(f"{spec.kind} needs (label, non-negative count) pairs")
    elif spec.kind == "sentiment_hist":
        if len(d) != len(HIST_EDGES) - 1 or not all(_real(x) and x >= 0 for x in d):
            raise ChartSpecError(f"sentiment_hist needs {len(HIST_EDGES) - 1} non-negative bin counts")
    elif spec.kind == "absurdity_line":
        if not all(isinstance(p, tuple) and len(p) == 2 and _real(p[0]) and _real(p[1])
                   and 0 <= p[1] <= 1 for p in d):
            raise ChartSpecError("absurdity_line needs (index, value in [0, 1]) pairs")
    elif spec.kind == "dialogue_pie":
        if len(d) != 2 or not all(_real(x) and 0 <= x <= 1 for x in d) or abs(sum(d) - 1) > 1e-6:
            raise ChartSpecError("dialogue_pie needs two shares in [0, 1] summing to 1")


def _real(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _n(x: float) -> str:
    text = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _label(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else f"{v:.2f}".rstrip("0")


def render_chart(spec: ChartSpec) -> str:
    validate(spec)
    body = {
        "emotion_bar": _bars,
        "character_bar": _bars,
        "sentiment_hist": _hist,
        "absurdity_line": _line,
        "dialogue_pie": _pie,
    }[spec.kind](spec)
    w, h = spec.width, spec.height
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" data-kind="{spec.kind}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
        f'<text x="{_n(w / 2)}" y="24" text-anchor="middle" font-size="16" {FONT}>{escape(spec.title)}</text>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _plot_box(spec) -> Tuple[float, float, float, float]:
    pw = spec.width - MARGIN_LEFT - MARGIN_RIGHT
    ph = spec.height - MARGIN_TOP - MARGIN_BOTTOM
    return MARGIN_LEFT, MARGIN_TOP, pw, ph


def _axes(x0, y0, pw, ph, vmax, ticks=4) -> List[str]:
    out = [
        f'<line x1="{_n(x0)}" y1="{_n(y0 + ph)}" x2="{_n(x0 + pw)}" y2="{_n(y0 + ph)}" stroke="#333333"/>',
        f'<line x1="{_n(x0)}" y1="{_n(y0)}" x2="{_n(x0)}" y2="{_n(y0 + ph)}" stroke="#333333"/>',
    ]
    for k in range(ticks + 1):
        v = vmax * k / ticks
        y = y0 + ph - ph * k / ticks
        out.append(f'<line x1="{_n(x0 - 4)}" y1="{_n(y)}" x2="{_n(x0)}" y2="{_n(y)}" stroke="#333333"/>')
        out.append(f'<text x="{_n(x0 - 6)}" y="{_n(y + 4)}" text-anchor="end" font-size="10" {FONT}>'
                   f'{_label(v)}</text>')
    return out


def _no_data(spec) -> List[str]:
    return [f'<text x="{_n(spec.width / 2)}" y="{_n(spec.height / 2)}" text-anchor="middle" '
            f'font-size="12" {FONT}>no data</text>']


def _bars(spec: ChartSpec) -> List[str]:
    if not spec.data:
        return _no_data(spec)
    x0, y0, pw, ph = _plot_box(spec)
    vmax = max(v for _, v in spec.data) or 1
    out = _axes(x0, y0, pw, ph, vmax)
    slot = pw / len(spec.data)
    bw = slot * 0.7
    for k, (label, v) in enumerate(spec.data):
        bh = v / vmax * ph
        x = x0 + k * slot + (slot - bw) / 2
        out.append(f'<rect class="bar" x="{_n(x)}" y="{_n(y0 + ph - bh)}" width="{_n(bw)}" height="{_n(bh)}" '
                   f'fill="{BAR_FILL}" data-label={quoteattr(label)} data-value="{_label(v)}"/>')
        cx = x + bw / 2
        ly = y0 + ph + 14
        out.append(f'<text x="{_n(cx)}" y="{_n(ly)}" text-anchor="end" font-size="10" {FONT} '
                   f'transform="rotate(-35 {_n(cx)} {_n(ly)})">{escape(label)}</text>')
    return out


def _hist(spec: ChartSpec) -> List[str]:
    x0, y0, pw, ph = _plot_box(spec)
    vmax = max(spec.data) or 1
    out = _axes(x0, y0, pw, ph, vmax)
    bw = pw / len(spec.data)
    for k, v in enumerate(spec.data):
        bh = v / vmax * ph
        lo, hi = HIST_EDGES[k], HIST_EDGES[k + 1]
        close = "]" if k == len(spec.data) - 1 else ")"
        out.append(f'<rect class="bar" x="{_n(x0 + k * bw)}" y="{_n(y0 + ph - bh)}" width="{_n(bw)}" '
                   f'height="{_n(bh)}" fill="{BAR_FILL}" stroke="#ffffff" '
                   f'data-label="[{lo:.1f}, {hi:.1f}{close}" data-value="{_label(v)}"/>')
    for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
        x = x0 + (t + 1) / 2 * pw
        out.append(f'<text x="{_n(x)}" y="{_n(y0 + ph + 16)}" text-anchor="middle" font-size="10" {FONT}>'
                   f'{t:g}</text>')
    out.append(f'<text x="{_n(x0 + pw / 2)}" y="{_n(y0 + ph + 36)}" text-anchor="middle" font-size="11" '
               f'{FONT}>compound score</text>')
    return out


def _line(spec: ChartSpec) -> List[str]:
    if not spec.data:
        return _no_data(spec)
    x0, y0, pw, ph = _plot_box(spec)
    out = _axes(x0, y0, pw, ph, 1.0)
    first, last = spec.data[0][0], spec.data[-1][0]
    span = (last - first) or 1
    pts = [(x0 + (i - first) / span * pw, y0 + ph * (1 - v)) for i, v in spec.data]
    out.append(f'<polyline class="series" fill="none" stroke="{LINE_STROKE}" stroke-width="1.5" points="'
               + " ".join(f"{_n(x)},{_n(y)}" for x, y in pts) + '"/>')
    if len(pts) == 1:
        out.append(f'<circle cx="{_n(pts[0][0])}" cy="{_n(pts[0][1])}" r="2" fill="{LINE_STROKE}"/>')
    for i in (first, last) if last != first else (first,):
        x = x0 + (i - first) / span * pw
        out.append(f'<text x="{_n(x)}" y="{_n(y0 + ph + 16)}" text-anchor="middle" font-size="10" {FONT}>'
                   f'{i}</text>')
    out.append(f'<text x="{_n(x0 + pw / 2)}" y="{_n(y0 + ph + 36)}" text-anchor="middle" font-size="11" '
               f'{FONT}>paragraph index</text>')
    return out


def _pie(spec: ChartSpec) -> List[str]:
    x0, y0, pw, ph = _plot_box(spec)
    r = min(pw, ph) / 2
    cx, cy = x0 + r, y0 + ph / 2
    out = []
    angle = -90.0
    for (name, share), fill in zip((("dialogue", spec.data[0]), ("narrative", spec.data[1])), PIE_FILLS):
        sweep = share * 360.0
        if share >= 1.0:
            out.append(f'<circle class="slice" cx="{_n(cx)}" cy="{_n(cy)}" r="{_n(r)}" fill="{fill}" '
                       f'data-label="{name}" data-share="{share:.6f}"/>')
        elif share > 0:
            a0, a1 = math.radians(angle), math.radians(angle + sweep)
            x1, y1 = cx + r * math.cos(a0), cy + r * math.sin(a0)
            x2, y2 = cx + r * math.cos(a1), cy + r * math.sin(a1)
            large = 1 if sweep > 180 else 0
            out.append(f'<path class="slice" d="M {_n(cx)} {_n(cy)} L {_n(x1)} {_n(y1)} '
                       f'A {_n(r)} {_n(r)} 0 {large} 1 {_n(x2)} {_n(y2)} Z" fill="{fill}" stroke="#ffffff" '
                       f'data-label="{name}" data-share="{share:.6f}"/>')
        angle += sweep
    lx = cx + r + 24
    for k, ((name, share), fill) in enumerate(zip((("dialogue", spec.data[0]), ("narrative", spec.data[1])),
                                                   PIE_FILLS)):
        ly = cy - 12 + k * 24
        out.append(f'<rect x="{_n(lx)}" y="{_n(ly - 10)}" width="12" height="12" fill="{fill}"/>')
        out.append(f'<text x="{_n(lx + 18)}" y="{_n(ly)}" font-size="12" {FONT}>{name} {share * 100:.1f}%</text>')
    return out
