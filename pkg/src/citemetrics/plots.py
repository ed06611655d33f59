"""Minimal static SVG charts for CLI --plot output.

Hand-rolled emitter so outputs are deterministic byte-for-byte: no
timestamps, no generator metadata, fixed float formatting.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

WIDTH = 640
HEIGHT = 400
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 40, 50

_PALETTE = ("#3b6fb6", "#c0504d", "#6aa84f", "#8064a2", "#e69138", "#45818e")


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{_escape(title)}</text>',
    ]


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _axes(x_label: str, y_label: str) -> list[str]:
    x0, y0 = MARGIN_L, HEIGHT - MARGIN_B
    x1, y1 = WIDTH - MARGIN_R, MARGIN_T
    return [
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{_escape(x_label)}</text>',
        f'<text x="16" y="{(y0 + y1) / 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2})">{_escape(y_label)}</text>',
    ]


def bar_chart(
    pairs: Sequence[tuple[str, float]], title: str, x_label: str, y_label: str
) -> str:
    """Vertical bars; labels drawn when they fit."""
    parts = _header(title) + _axes(x_label, y_label)
    if pairs:
        top = max(v for _, v in pairs) or 1.0
        plot_w = WIDTH - MARGIN_L - MARGIN_R
        plot_h = HEIGHT - MARGIN_T - MARGIN_B
        slot = plot_w / len(pairs)
        bar_w = max(1.0, slot * 0.8)
        show_labels = slot >= 28
        for i, (label, value) in enumerate(pairs):
            h = plot_h * value / top
            x = MARGIN_L + i * slot + (slot - bar_w) / 2
            y = HEIGHT - MARGIN_B - h
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_w)}" '
                f'height="{_fmt(h)}" fill="{_PALETTE[0]}"/>'
            )
            if show_labels:
                parts.append(
                    f'<text x="{_fmt(x + bar_w / 2)}" y="{HEIGHT - MARGIN_B + 14}" '
                    f'text-anchor="middle" font-family="sans-serif" font-size="10">'
                    f"{_escape(label)}</text>"
                )
        parts.append(
            f'<text x="{MARGIN_L - 6}" y="{MARGIN_T + 4}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{_fmt(top)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def line_chart(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """One polyline per (name, xs, ys) series, with a small legend."""
    parts = _header(title) + _axes(x_label, y_label)
    points = [
        (x, y) for _, xs, ys in series for x, y in zip(xs, ys)
    ]
    if points:
        xs_all = [p[0] for p in points]
        ys_all = [p[1] for p in points]
        x_min, x_max = min(xs_all), max(xs_all)
        y_min, y_max = min(ys_all), max(ys_all)
        if x_max == x_min:
            x_max = x_min + 1
        if y_max == y_min:
            y_max = y_min + 1
        plot_w = WIDTH - MARGIN_L - MARGIN_R
        plot_h = HEIGHT - MARGIN_T - MARGIN_B

        def px(x: float) -> float:
            return MARGIN_L + plot_w * (x - x_min) / (x_max - x_min)

        def py(y: float) -> float:
            return HEIGHT - MARGIN_B - plot_h * (y - y_min) / (y_max - y_min)

        for s, (name, xs, ys) in enumerate(series):
            color = _PALETTE[s % len(_PALETTE)]
            pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
            parts.append(
                f'<text x="{WIDTH - MARGIN_R - 4}" y="{MARGIN_T + 14 * (s + 1)}" '
                f'text-anchor="end" font-family="sans-serif" font-size="11" '
                f'fill="{color}">{_escape(name)}</text>'
            )
        for frac in (0.0, 0.5, 1.0):
            y_val = y_min + frac * (y_max - y_min)
            x_val = x_min + frac * (x_max - x_min)
            parts.append(
                f'<text x="{MARGIN_L - 6}" y="{_fmt(py(y_val) + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10">{_fmt(y_val)}</text>'
            )
            parts.append(
                f'<text x="{_fmt(px(x_val))}" y="{HEIGHT - MARGIN_B + 14}" '
                f'text-anchor="middle" font-family="sans-serif" font-size="10">{_fmt(x_val)}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(svg: str, path: str | Path) -> None:
    Path(path).write_text(svg, encoding="utf-8")
