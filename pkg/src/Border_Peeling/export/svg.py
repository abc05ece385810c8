"""Dependency-free SVG plots: cluster scatter, peel snapshots and line charts."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections.abc import Mapping, Sequence
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..dataset.points import NOISE, PointSet
from ..errors import ArtifactIOError
from ..logging_utils import get_logger

LOGGER = get_logger("bp.export.svg")

SVG_NS = "http://www.w3.org/2000/svg"
WIDTH = 640
HEIGHT = 480
MARGIN = 48
NOISE_COLOR = "#000000"
ACTIVE_COLOR = "#9e9e9e"
BORDER_COLOR = "#d62728"
PALETTE = (
    "#1f77b4",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#17becf",
    "#8c564b",
    "#e377c2",
    "#bcbd22",
    "#7f7f7f",
    "#aec7e8",
)

ET.register_namespace("", SVG_NS)


def cluster_color(label: int) -> str:
    if label == NOISE:
        return NOISE_COLOR
    return PALETTE[label % len(PALETTE)]


def _fmt(value: float) -> str:
    return f"{value:.2f}"


class _Frame:
    """Maps data coordinates into the drawable area."""

    def __init__(self, xs: NDArray[np.float64], ys: NDArray[np.float64]) -> None:
        self.x_min, self.x_max = self._span(xs)
        self.y_min, self.y_max = self._span(ys)

    @staticmethod
    def _span(values: NDArray[np.float64]) -> tuple[float, float]:
        finite = values[np.isfinite(values)]
        if finite.size == 0:
            return 0.0, 1.0
        low, high = float(finite.min()), float(finite.max())
        if high == low:
            return low - 0.5, high + 0.5
        pad = 0.02 * (high - low)
        return low - pad, high + pad

    def x(self, value: float) -> float:
        return MARGIN + (value - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2 * MARGIN)

    def y(self, value: float) -> float:
        return HEIGHT - MARGIN - (value - self.y_min) / (self.y_max - self.y_min) * (
            HEIGHT - 2 * MARGIN
        )


def _canvas(title: str) -> ET.Element:
    root = ET.Element(
        f"{{{SVG_NS}}}svg",
        {"width": str(WIDTH), "height": str(HEIGHT), "viewBox": f"0 0 {WIDTH} {HEIGHT}"},
    )
    ET.SubElement(
        root, f"{{{SVG_NS}}}rect", {"width": str(WIDTH), "height": str(HEIGHT), "fill": "#ffffff"}
    )
    heading = ET.SubElement(
        root,
        f"{{{SVG_NS}}}text",
        {"x": str(WIDTH // 2), "y": "24", "text-anchor": "middle", "font-size": "14"},
    )
    heading.text = title
    return root


def _planar(points: PointSet) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    coords = points.points
    if coords.shape[1] > 2:
        LOGGER.warning("plot_projected", dim=points.d, shown="first two coordinates")
    xs = coords[:, 0]
    ys = coords[:, 1] if coords.shape[1] > 1 else np.zeros(coords.shape[0])
    return xs, ys


def scatter_svg(
    xs: ArrayLike,
    ys: ArrayLike,
    colors: Sequence[str],
    *,
    title: str,
    radius: float = 3.0,
    extent: tuple[ArrayLike, ArrayLike] | None = None,
) -> ET.Element:
    """Scatter plot; ``extent`` fixes the axes to other data than the drawn points."""

    x_values = np.asarray(xs, dtype=float)
    y_values = np.asarray(ys, dtype=float)
    if extent is None:
        frame = _Frame(x_values, y_values)
    else:
        frame = _Frame(np.asarray(extent[0], dtype=float), np.asarray(extent[1], dtype=float))
    root = _canvas(title)
    group = ET.SubElement(root, f"{{{SVG_NS}}}g", {"class": "points"})
    for x, y, color in zip(x_values, y_values, colors, strict=True):
        ET.SubElement(
            group,
            f"{{{SVG_NS}}}circle",
            {
                "class": "point",
                "cx": _fmt(frame.x(float(x))),
                "cy": _fmt(frame.y(float(y))),
                "r": _fmt(radius),
                "fill": color,
            },
        )
    return root


def cluster_svg(points: PointSet, labels: ArrayLike, *, title: str = "clusters") -> ET.Element:
    """One colour per cluster, noise in black."""

    xs, ys = _planar(points)
    colors = [cluster_color(int(label)) for label in np.asarray(labels)]
    return scatter_svg(xs, ys, colors, title=title)


def snapshot_masks(
    peeled_at: ArrayLike, iteration: int
) -> tuple[NDArray[np.bool_], NDArray[np.bool_]]:
    """Active and border masks of ``iteration`` rebuilt from peel iterations."""

    stamps = np.asarray(peeled_at, dtype=np.int64)
    active = (stamps < 0) | (stamps >= iteration)
    return active, stamps == iteration


def snapshot_svg(
    points: PointSet, active: ArrayLike, border: ArrayLike, *, iteration: int
) -> ET.Element:
    """Active points of one iteration, the current border highlighted in red."""

    xs, ys = _planar(points)
    mask = np.asarray(active, dtype=bool)
    flags = np.asarray(border, dtype=bool)
    ids = np.flatnonzero(mask)
    colors = [BORDER_COLOR if flags[i] else ACTIVE_COLOR for i in ids]
    return scatter_svg(
        xs[ids], ys[ids], colors, title=f"iteration {iteration}", extent=(xs, ys)
    )


def line_svg(
    series: Mapping[str, tuple[ArrayLike, ArrayLike]],
    *,
    title: str,
    x_label: str,
    y_label: str,
) -> ET.Element:
    """Polyline per named series with a small legend."""

    all_x = np.concatenate([np.asarray(xs, dtype=float) for xs, _ in series.values()])
    all_y = np.concatenate([np.asarray(ys, dtype=float) for _, ys in series.values()])
    frame = _Frame(all_x, all_y)
    root = _canvas(title)
    for label, anchor, attrs in (
        (x_label, "middle", {"x": str(WIDTH // 2), "y": str(HEIGHT - 10)}),
        (y_label, "start", {"x": "6", "y": str(MARGIN - 8)}),
    ):
        text = ET.SubElement(
            root, f"{{{SVG_NS}}}text", {**attrs, "text-anchor": anchor, "font-size": "12"}
        )
        text.text = label
    for slot, (name, (xs, ys)) in enumerate(series.items()):
        color = PALETTE[slot % len(PALETTE)]
        x_values = np.asarray(xs, dtype=float)
        y_values = np.asarray(ys, dtype=float)
        keep = np.isfinite(x_values) & np.isfinite(y_values)
        coords = " ".join(
            f"{_fmt(frame.x(x))},{_fmt(frame.y(y))}"
            for x, y in zip(x_values[keep], y_values[keep], strict=True)
        )
        ET.SubElement(
            root,
            f"{{{SVG_NS}}}polyline",
            {"class": "series", "points": coords, "fill": "none", "stroke": color},
        )
        legend = ET.SubElement(
            root,
            f"{{{SVG_NS}}}text",
            {"x": str(WIDTH - MARGIN - 120), "y": str(MARGIN + 14 * slot), "fill": color,
             "font-size": "11"},
        )
        legend.text = name
    return root


def write_svg(root: ET.Element, path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)
    except OSError as exc:
        raise ArtifactIOError(f"cannot write {path}", path=str(path), reason=str(exc)) from exc
    LOGGER.info("svg_written", path=str(path))


__all__ = [
    "PALETTE",
    "cluster_color",
    "cluster_svg",
    "line_svg",
    "scatter_svg",
    "snapshot_masks",
    "snapshot_svg",
    "write_svg",
]
