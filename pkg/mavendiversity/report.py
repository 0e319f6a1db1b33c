# -*- coding: utf-8 -*-
#
# mavendiversity -- Diversity metrics for versioned dependency graphs
# Copyright (C) 2020 the mavendiversity contributors.
#
# This file is part of mavendiversity.
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
# For information on the complete list of contributors to the
# mavendiversity library, see: <http://mavendiversity.readthedocs.io/>
#

"""Tabular reports in CSV and JSON.

Every report is a fixed list of columns and a list of rows.  Both formats are
rendered byte-for-byte deterministically: numbers have six fractional digits
with ``.`` as separator and dates are ISO 8601, independently of the locale.
"""

import csv
import enum
import io
import json
import logging
from collections import namedtuple
from datetime import date
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Sequence, Union

from .exceptions import DataError
from .utils import format_number, path_resolver
from .versioning import format_date

log = logging.getLogger(__name__)


class ReportFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


VERSION_COLUMNS = [
    "coordinate",
    "released",
    "status",
    "lifespan_start",
    "lifespan_end",
    "pop_v",
    "timeliness",
    "timeliness_class",
    "positional_index",
    "flags",
]

LIBRARY_COLUMNS = [
    "library",
    "category",
    "n_versions",
    "n_active",
    "n_passive_nondormant",
    "n_dormant",
    "pct_active",
    "pop_l",
    "n_signif_popular",
    "pattern",
    "pct_under",
    "pct_timely",
    "pct_over",
    "status",
]

PATTERN_COLUMNS = ["pattern", "frequency", "example"]
PATTERN_ENDING_COLUMNS = ["counted_over", "total", "ending_active", "pct_ending_active"]
HISTOGRAM_COLUMNS = ["bin", "lower", "upper", "count"]
CORRELATION_COLUMNS = ["library", "pct_active", "pop_l"]
SPEARMAN_COLUMNS = ["test", "n", "rho", "p_value"]
SUMMARY_COLUMNS = ["level", "item", "count", "percentage"]
LIFESPAN_COLUMNS = ["group", "n", "min", "q1", "median", "q3", "max", "mean"]
TERNARY_COLUMNS = ["library", "pct_under", "pct_timely", "pct_over"]
TIMELINESS_STATUS_COLUMNS = ["group", "pct_under", "pct_timely", "pct_over"]


class Report(namedtuple("Report", ["name", "columns", "rows"])):
    """A named table.

    Attributes
    ----------
    name : str
        File stem of the report.
    columns : List[str]
    rows : List[List[Any]]
        Raw cell values, one list per row, in column order.
    """

    __slots__ = ()

    def file_name(self, fmt: Union[str, ReportFormat]) -> str:
        return f"{self.name}.{ReportFormat(fmt).value}"


def render_cell(x: Any) -> str:
    """Text of a cell value, shared by both formats."""
    if x is None:
        return ""
    if isinstance(x, enum.Enum):
        return str(x.value)
    if isinstance(x, date):
        return format_date(x)
    if isinstance(x, Fraction):
        return format_number(float(x))
    if isinstance(x, (bool, int, float)):
        return format_number(x)
    return str(x)


def _json_cell(x: Any) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float, Fraction)) and not isinstance(x, enum.Enum):
        text = render_cell(x)
        return text if text else "null"
    return json.dumps(render_cell(x), ensure_ascii=False)


def to_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([render_cell(x) for x in row])
    return buffer.getvalue()


def to_json(report: Report) -> str:
    """JSON array of objects, one per row, keys in column order."""
    keys = [json.dumps(c) for c in report.columns]
    lines = []
    for row in report.rows:
        fields = ", ".join(f"{k}: {_json_cell(x)}" for k, x in zip(keys, row))
        lines.append("  {" + fields + "}")
    if not lines:
        return "[]\n"
    return "[\n" + ",\n".join(lines) + "\n]\n"


def write_report(
    report: Report, fmt: Union[str, ReportFormat], where: Union[str, Path]
) -> Path:
    """Write a report in the given format under the output directory.

    Parameters
    ----------
    report : Report
    fmt : Union[str, ReportFormat]
    where : Union[str, Path]
        Output directory, created if missing.

    Returns
    -------
    path : Path
        The file written.

    Raises
    ------
    :exc:`DataError`
        If the file cannot be written.
    """
    fmt = ReportFormat(fmt)
    text = to_csv(report) if fmt is ReportFormat.CSV else to_json(report)
    path = path_resolver(where) / report.file_name(fmt)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise DataError(f"Cannot write report '{path}': {e.strerror}")
    log.info("Wrote %d rows to %s", len(report.rows), path)
    return path


def write_reports(
    reports: Sequence[Report], fmt: Union[str, ReportFormat], where: Union[str, Path]
) -> List[Path]:
    return [write_report(r, fmt, where) for r in reports]
