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

"""Common utilities."""

import math
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

JSONDict = Dict[str, Any]

DECIMALS = 6
"""int: Number of fractional digits in every report."""


def location_in_input(*, address: Tuple) -> str:
    """Convert an error address to its human-readable representation.

    For example, given ``("deps.ndjson", 12)`` returns the string
    ``deps.ndjson, line 12`` and given ``("popularity", "damping")`` returns
    ``config['popularity']['damping']``.

    Parameters
    ----------
    address : Tuple

    Returns
    -------
    where : str
    """
    if len(address) == 2 and isinstance(address[1], int):
        return f"{address[0]}, line {address[1]:d}"
    return "config" + "".join(f"['{k}']" for k in address)


def path_resolver(f: Union[str, Path]) -> Path:
    """Resolve a path.

    Parameters
    ----------
    f : Union[str, Path]
        File whose path needs to be resolved.

    Returns
    -------
    path : Path
        File as a ``Path`` object.
    """
    return Path(f).resolve()


def format_number(x: Optional[float], *, decimals: int = DECIMALS) -> str:
    """Locale-independent fixed-point rendering of a number.

    ``None`` and NaN render as the empty string, integers are left alone.

    Parameters
    ----------
    x : Optional[float]
    decimals : int

    Returns
    -------
    text : str
    """
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return f"{x:d}"
    if math.isnan(x):
        return ""
    text = f"{x:.{decimals}f}"
    # no negative zero in reports
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text


def percentage(part: int, whole: int) -> float:
    """Percentage of ``part`` over ``whole``, 0 when ``whole`` is 0."""
    return 100.0 * part / whole if whole else 0.0
