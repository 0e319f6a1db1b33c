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

"""Run configuration.

A run is configured by built-in defaults, overridden by an optional YAML file,
overridden in turn by command-line flags.  The YAML file is laid out in
sections::

    input:
      paths: [artifacts.ndjson, deps.ndjson]
      snapshot: 2020-01-09
      on_missing: stub
      exclude_scopes: [test]
    popularity:
      damping: 0.85
      mode: literal
      tolerance: 1.0e-9
      max_iterations: 200
    timeliness:
      numerator: all
    study:
      subjects: false
      min_versions: 5
      max_versions: 200
    report:
      out: reports
      format: csv
      bins: 30
    threads: 1
"""

import logging
from dataclasses import asdict, dataclass
from datetime import date
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

import yaml

from .exceptions import ConfigError, DataError, Error, collate_errors
from .ingest import MissingPolicy
from .metrics import TimelinessNumerator
from .popularity import PopularityConfig, PopularityMode
from .report import ReportFormat
from .utils import JSONDict, path_resolver
from .versioning import parse_date

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """All the knobs of a run, validated.

    Attributes
    ----------
    inputs : Tuple[str, ...]
        NDJSON or CSV record files.
    snapshot : Optional[date]
        Capture date, derived from the data when ``None``.
    on_missing : MissingPolicy
    exclude_scopes : Tuple[str, ...]
    damping : float
    mode : PopularityMode
    tolerance : float
    max_iterations : int
    timeliness_numerator : TimelinessNumerator
    study_subjects : bool
        Whether to restrict the analyses to the study subjects.
    min_versions : int
    max_versions : int
    out : str
        Output directory.
    format : ReportFormat
    bins : int
    threads : int
    """

    inputs: Tuple[str, ...] = ()
    snapshot: Optional[date] = None
    on_missing: MissingPolicy = MissingPolicy.STUB
    exclude_scopes: Tuple[str, ...] = ()
    damping: float = 0.85
    mode: PopularityMode = PopularityMode.LITERAL
    tolerance: float = 1e-9
    max_iterations: int = 200
    timeliness_numerator: TimelinessNumerator = TimelinessNumerator.ALL
    study_subjects: bool = False
    min_versions: int = 5
    max_versions: int = 200
    out: str = "."
    format: ReportFormat = ReportFormat.CSV
    bins: int = 30
    threads: int = 1

    @property
    def popularity(self) -> PopularityConfig:
        return PopularityConfig(
            damping=self.damping,
            mode=self.mode,
            max_iterations=self.max_iterations,
            tolerance=self.tolerance,
        )


LAYOUT = {
    "input": {
        "paths": "inputs",
        "snapshot": "snapshot",
        "on_missing": "on_missing",
        "exclude_scopes": "exclude_scopes",
    },
    "popularity": {
        "damping": "damping",
        "mode": "mode",
        "tolerance": "tolerance",
        "max_iterations": "max_iterations",
    },
    "timeliness": {"numerator": "timeliness_numerator"},
    "study": {
        "subjects": "study_subjects",
        "min_versions": "min_versions",
        "max_versions": "max_versions",
    },
    "report": {"out": "out", "format": "format", "bins": "bins"},
    "threads": "threads",
}  # type: JSONDict
"""JSONDict: configuration file sections, leaves are :class:`RunConfig` fields."""


def _addresses(layout: JSONDict, address: Tuple = ()) -> Dict[str, Tuple]:
    out = {}  # type: Dict[str, Tuple]
    for k, v in layout.items():
        if isinstance(v, dict):
            out.update(_addresses(v, address + (k,)))
        else:
            out[v] = address + (k,)
    return out


ADDRESSES = _addresses(LAYOUT)
"""Dict[str, Tuple]: address in the configuration file of every field."""


# Field converters, raising ValueError or TypeError on bad input


def _integer(x: Any) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise TypeError
    return int(x)


def _real(x: Any) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise TypeError
    return float(x)


def _boolean(x: Any) -> bool:
    if isinstance(x, bool):
        return x
    if isinstance(x, str) and x.strip().lower() in ("true", "yes", "on", "1"):
        return True
    if isinstance(x, str) and x.strip().lower() in ("false", "no", "off", "0"):
        return False
    raise ValueError


def _strings(x: Any) -> Tuple[str, ...]:
    if isinstance(x, str):
        x = x.split(",")
    if not isinstance(x, (list, tuple)):
        raise TypeError
    return tuple(str(s).strip() for s in x if str(s).strip())


def _snapshot(x: Any) -> Optional[date]:
    if x is None or isinstance(x, date):
        return x
    try:
        return parse_date(str(x))
    except DataError:
        raise ValueError


def _text(x: Any) -> str:
    if not isinstance(x, (str, Path)):
        raise TypeError
    return str(x)


Check = Tuple[Callable[[Any], Any], Optional[Callable[[Any], bool]], str]

CHECKS = {
    "inputs": (_strings, None, "a list of file paths"),
    "snapshot": (_snapshot, None, "an ISO 8601 date"),
    "on_missing": (MissingPolicy, None, "one of stub, skip, strict"),
    "exclude_scopes": (_strings, None, "a list of scopes"),
    "damping": (_real, lambda x: 0.0 < x < 1.0, "a number strictly between 0 and 1"),
    "mode": (PopularityMode, None, "one of literal, normalized"),
    "tolerance": (_real, lambda x: x > 0.0, "a positive number"),
    "max_iterations": (_integer, lambda x: x >= 1, "an integer of at least 1"),
    "timeliness_numerator": (TimelinessNumerator, None, "one of all, lifespan, period"),
    "study_subjects": (_boolean, None, "a boolean"),
    "min_versions": (_integer, lambda x: x >= 1, "an integer of at least 1"),
    "max_versions": (_integer, lambda x: x >= 1, "an integer of at least 1"),
    "out": (_text, None, "a directory path"),
    "format": (ReportFormat, None, "one of csv, json"),
    "bins": (_integer, lambda x: x >= 1, "an integer of at least 1"),
    "threads": (_integer, lambda x: x >= 1, "an integer of at least 1"),
}  # type: Dict[str, Check]


def read_config_file(path: Union[str, Path]) -> JSONDict:
    """Read a YAML configuration file.

    Raises
    ------
    :exc:`ConfigError`
        If the file cannot be read, is not valid YAML or is not a mapping.
    """
    path = path_resolver(path)
    try:
        with path.open("r", encoding="utf-8") as f:
            d = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read configuration file '{path}': {e.strerror}")
    except yaml.YAMLError as e:
        raise ConfigError(f"Configuration file '{path}' is not valid YAML:\n{e}")
    if d is None:
        return {}
    if not isinstance(d, dict):
        raise ConfigError(f"Configuration file '{path}' must hold a mapping.")
    return d


def merge_ours(
    *, theirs: JSONDict, ours: JSONDict, address: Tuple = ()
) -> Tuple[JSONDict, List[Error]]:
    """Recursively merge two ``dict``-s with "ours" strategy.

    Parameters
    ----------
    theirs : JSONDict
        The defaults, laid out as :data:`LAYOUT`.
    ours : JSONDict
        The user's configuration.
    address : Tuple

    Returns
    -------
    outgoing : JSONDict
    errors : List[Error]
        Unknown keys and sections.
    """
    outgoing = {}
    errors = []

    for k in sorted(set(ours).difference(theirs), key=str):
        what = "section" if isinstance(ours[k], dict) else "keyword"
        errors.append(Error(address + (k,), f"Found unexpected {what}: '{k}'."))

    for k, v in theirs.items():
        if k not in ours:
            outgoing[k] = v
        elif isinstance(v, dict):
            if not isinstance(ours[k], dict):
                errors.append(Error(address + (k,), f"'{k}' must be a section."))
                outgoing[k] = v
                continue
            outgoing[k], errs = merge_ours(
                theirs=v, ours=ours[k], address=address + (k,)
            )
            errors.extend(errs)
        else:
            outgoing[k] = ours[k]

    return outgoing, errors


def nest(flat: Mapping[str, Any]) -> JSONDict:
    """Lay out flat field values as configuration file sections."""
    nested = {}  # type: JSONDict
    for name, value in flat.items():
        *sections, key = ADDRESSES[name]
        d = nested
        for s in sections:
            d = d.setdefault(s, {})
        d[key] = value
    return nested


def flatten(nested: JSONDict) -> Dict[str, Any]:
    """Inverse of :func:`nest` for a dictionary laid out as :data:`LAYOUT`."""
    flat = {}
    for name, address in ADDRESSES.items():
        d = nested
        for k in address:
            d = d[k]
        flat[name] = d
    return flat


def defaults() -> JSONDict:
    """The built-in defaults, laid out as configuration file sections."""
    return nest(asdict(RunConfig()))


def check_config(flat: Mapping[str, Any]) -> Tuple[Dict[str, Any], List[Error]]:
    """Convert and range-check every field.

    Parameters
    ----------
    flat : Mapping[str, Any]
        Raw field values, keyed by :class:`RunConfig` field name.

    Returns
    -------
    fixed : Dict[str, Any]
        Converted field values.
    errors : List[Error]
        Every violation, addressed by its location in the configuration file.
    """
    fixed = {}
    errors = []
    for name, value in flat.items():
        convert, predicate, expected = CHECKS[name]
        where = ADDRESSES[name]
        try:
            x = convert(value)
        except (TypeError, ValueError):
            errors.append(Error(where, f"{value!r} is not {expected}."))
            continue
        if predicate is not None and not predicate(x):
            errors.append(Error(where, f"{value!r} is not {expected}."))
            continue
        fixed[name] = x

    lo, hi = fixed.get("min_versions"), fixed.get("max_versions")
    if lo is not None and hi is not None and lo > hi:
        errors.append(
            Error(
                ADDRESSES["min_versions"],
                f"Study filter bounds are inverted: {lo} > {hi}.",
            )
        )
    return fixed, errors


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """Assemble the run configuration.

    Parameters
    ----------
    path : Optional[Union[str, Path]]
        YAML configuration file.
    overrides : Optional[Mapping[str, Any]]
        Field values with the highest precedence, keyed by field name.  ``None``
        values are ignored.

    Returns
    -------
    config : RunConfig

    Raises
    ------
    :exc:`ConfigError`
        With all the problems found.

    Notes
    -----
    This is porcelain over :func:`merge_ours` and :func:`check_config`.
    """
    nested = defaults()
    errors = []  # type: List[Error]
    if path is not None:
        log.info("Reading configuration from %s", path)
        nested, errors = merge_ours(theirs=nested, ours=read_config_file(path))

    flat = flatten(nested)
    for name, value in (overrides or {}).items():
        if name not in flat:
            raise ConfigError(f"Unknown configuration field '{name}'.")
        if value is not None:
            flat[name] = value

    fixed, errs = check_config(flat)
    errors.extend(errs)
    if errors:
        raise ConfigError(
            collate_errors(when="checking the configuration", errors=errors)
        )
    return RunConfig(**fixed)
