from .results import (
    LABELS_FILE,
    RESULT_FILE,
    TRACE_FILE,
    build_result_document,
    read_labels,
    read_result,
    read_trace,
    write_labels,
    write_result,
    write_table,
    write_trace,
)
from .svg import cluster_svg, line_svg, snapshot_masks, snapshot_svg, write_svg

__all__ = [
    "LABELS_FILE",
    "RESULT_FILE",
    "TRACE_FILE",
    "build_result_document",
    "cluster_svg",
    "line_svg",
    "read_labels",
    "read_result",
    "read_trace",
    "snapshot_masks",
    "snapshot_svg",
    "write_labels",
    "write_result",
    "write_svg",
    "write_table",
    "write_trace",
]
