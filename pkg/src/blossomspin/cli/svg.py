"""Minimal self-contained SVG charts.

Each trace carries its raw data in a ``data-values`` attribute (17 digits),
so the numbers in a figure can be checked against the library without
inverting the plot transform.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .fmt import machine

WIDTH, HEIGHT, MARGIN = 480, 320, 40
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


class Figure:
    def __init__(self, title: str, xlim, ylim):
        self.title = title
        self.xlim = (float(xlim[0]), float(xlim[1]))
        self.ylim = (float(ylim[0]), float(ylim[1]))
        if self.xlim[1] == self.xlim[0]:
            self.xlim = (self.xlim[0] - 1, self.xlim[1] + 1)
        if self.ylim[1] == self.ylim[0]:
            self.ylim = (self.ylim[0] - 1, self.ylim[1] + 1)
        self.items: list[str] = []

    def _x(self, x):
        lo, hi = self.xlim
        return MARGIN + (x - lo) / (hi - lo) * (WIDTH - 2 * MARGIN)

    def _y(self, y):
        lo, hi = self.ylim
        return HEIGHT - MARGIN - (y - lo) / (hi - lo) * (HEIGHT - 2 * MARGIN)

    @staticmethod
    def _values(xs, ys):
        return " ".join(f"{machine(x)},{machine(y)}" for x, y in zip(xs, ys))

    def line(self, xs, ys, label: str, index: int = 0, dashed: bool = False):
        pts = " ".join(f"{self._x(x):.2f},{self._y(y):.2f}" for x, y in zip(xs, ys))
        dash = ' stroke-dasharray="4 3"' if dashed else ""
        self.items.append(
            f'<polyline class="trace" fill="none" stroke="{COLORS[index % len(COLORS)]}" stroke-width="1.5"{dash} '
            f"points={quoteattr(pts)} data-label={quoteattr(label)} data-values={quoteattr(self._values(xs, ys))}/>"
        )

    def bars(self, xs, heights, label: str):
        width = 0.8 * (WIDTH - 2 * MARGIN) / max(len(xs), 1)
        for x, h in zip(xs, heights):
            top, base = self._y(h), self._y(0.0)
            self.items.append(
                f'<rect class="bar" x="{self._x(x) - width / 2:.2f}" y="{min(top, base):.2f}" width="{width:.2f}" '
                f'height="{abs(base - top):.2f}" fill="{COLORS[0]}" data-label={quoteattr(label)} '
                f'data-values="{machine(x)},{machine(h)}"/>'
            )

    def marks(self, xs, ys, labels, cls: str = "mark"):
        for x, y, lab in zip(xs, ys, labels):
            self.items.append(
                f'<circle class="{cls}" cx="{self._x(x):.2f}" cy="{self._y(y):.2f}" r="4" fill="#000" '
                f'data-values="{machine(x)},{machine(y)}"/>'
            )
            if lab:
                self.items.append(
                    f'<text x="{self._x(x) + 6:.2f}" y="{self._y(y) - 6:.2f}" font-size="10">{escape(lab)}</text>'
                )

    def render(self) -> str:
        x0, x1 = self.xlim
        y0, y1 = self.ylim
        axes = (
            f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}" '
            f'fill="none" stroke="#888"/>'
            f'<text x="{MARGIN}" y="{HEIGHT - MARGIN + 14}" font-size="10">{x0:.6g}</text>'
            f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - MARGIN + 14}" font-size="10" text-anchor="end">{x1:.6g}</text>'
            f'<text x="{MARGIN - 4}" y="{HEIGHT - MARGIN}" font-size="10" text-anchor="end">{y0:.6g}</text>'
            f'<text x="{MARGIN - 4}" y="{MARGIN + 8}" font-size="10" text-anchor="end">{y1:.6g}</text>'
        )
        body = "\n".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f'<text x="{WIDTH / 2}" y="20" font-size="13" text-anchor="middle">{escape(self.title)}</text>\n'
            f"{axes}\n{body}\n</svg>\n"
        )
