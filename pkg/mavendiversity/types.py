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

"""Field types of the input records."""

from typing import Any, Callable, Dict, List, Optional, Tuple

from .exceptions import DataError
from .graph import Coordinate
from .utils import JSONDict
from .versioning import parse_date, parse_version

RECORD_KINDS = ["artifact", "dep"]

RECORD_FIELDS = {
    "artifact": {"g": "str", "a": "str", "v": "version", "released": "date"},
    "dep": {"from": "coordinate", "to": "coordinate", "scope": "Optional[str]"},
}  # type: Dict[str, Dict[str, str]]
"""Dict[str, Dict[str, str]]: declared type of every field, per record kind."""

CSV_COLUMNS = ["kind", "g", "a", "v", "released", "from", "to", "scope"]
"""List[str]: Columns of the CSV alternative to NDJSON input."""


def _version(x: str) -> str:
    parse_version(x)
    return x.strip()


def _optional_str(x: Optional[str]) -> Optional[str]:
    if x is None:
        return None
    x = x.strip()
    return x if x else None


type_fixers = {
    "str": lambda x: x.strip(),
    "version": _version,
    "date": parse_date,
    "coordinate": Coordinate.parse,
    "Optional[str]": _optional_str,
}  # type: Dict[str, Callable[[Any], Any]]
"""Dict[str, Callable[[Any], Any]]: functions converting raw field values."""


def type_matches(value: Any, expected_type: str) -> bool:
    """Checks whether a raw field value has the expected type.

    Parameters
    ----------
    value : Any
        Value as read from NDJSON or CSV.
    expected_type : str
        One of the keys of :data:`type_fixers`.

    Returns
    -------
    True if the value can be handed to the matching type fixer.

    Raises
    ------
    ValueError
        If expected_type is unknown.
    """
    if expected_type not in type_fixers:
        raise ValueError(f"could not recognize expected_type: {expected_type}")

    if expected_type == "Optional[str]":
        return value is None or isinstance(value, str)
    return isinstance(value, str) and value.strip() != ""


def fix_record(record: JSONDict) -> Tuple[Optional[JSONDict], List[str]]:
    """Type-check and convert the fields of one record.

    Parameters
    ----------
    record : JSONDict
        A raw record, with a ``kind`` field.

    Returns
    -------
    fixed : Optional[JSONDict]
        The record with converted fields, ``None`` if anything was wrong.
    messages : List[str]
        What was wrong.
    """
    kind = record.get("kind")
    if kind not in RECORD_FIELDS:
        return None, [f"Unknown record kind {kind!r}, expected one of {RECORD_KINDS}."]

    messages = []
    fixed = {"kind": kind}  # type: JSONDict
    for name, t in RECORD_FIELDS[kind].items():
        value = record.get(name)
        if value is None and t != "Optional[str]":
            messages.append(f"Missing field '{name}' in {kind} record.")
            continue
        if not type_matches(value, t):
            actual = type(value).__name__
            messages.append(f"Field '{name}' ({actual}) does not match type {t}.")
            continue
        try:
            fixed[name] = type_fixers[t](value)
        except DataError as e:
            messages.append(str(e))

    return (None if messages else fixed), messages
