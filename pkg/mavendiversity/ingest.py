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

"""Reading artifact and dependency records into a dependency graph."""

import csv
import enum
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .exceptions import DataError, Error, collate_errors
from .graph import Coordinate, DependencyGraph
from .types import CSV_COLUMNS, fix_record
from .utils import JSONDict, path_resolver
from .versioning import ReleaseDate

log = logging.getLogger(__name__)

Address = Tuple[str, int]
AddressedRecord = Tuple[Address, JSONDict]


class MissingPolicy(str, enum.Enum):
    """What to do with a dependency whose endpoint has no artifact record."""

    STUB = "stub"
    SKIP = "skip"
    STRICT = "strict"


def read_records(path: Union[str, Path]) -> Iterator[AddressedRecord]:
    """Read raw records from an NDJSON or CSV file.

    The format is chosen by the suffix: ``.csv`` is read as CSV with the columns
    in :data:`~mavendiversity.types.CSV_COLUMNS`, anything else as NDJSON.

    Yields
    ------
    ((path, line), record)

    Raises
    ------
    :exc:`DataError`
        If the file cannot be read, a line is not valid UTF-8 or not a JSON
        object.
    """
    path = path_resolver(path)
    try:
        with path.open("rb") as f:
            if path.suffix.lower() == ".csv":
                yield from _read_csv(f, path.name)
            else:
                yield from _read_ndjson(f, path.name)
    except OSError as e:
        raise DataError(f"Cannot read '{path}': {e.strerror}")


def _utf8_error(name: str, lineno: int, e: UnicodeDecodeError) -> Error:
    return Error((name, lineno), f"Invalid UTF-8 at byte {e.start}.")


def _decoded_lines(f, name: str) -> Iterator[str]:
    for lineno, raw in enumerate(f, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            error = _utf8_error(name, lineno, e)
            raise DataError(collate_errors(when="reading records", errors=[error]))
        yield line


def _read_ndjson(f, name: str) -> Iterator[AddressedRecord]:
    errors = []
    for lineno, raw in enumerate(f, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            errors.append(_utf8_error(name, lineno, e))
            continue
        if line.strip() == "":
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            errors.append(Error((name, lineno), f"Invalid JSON: {e.msg}."))
            continue
        if not isinstance(record, dict):
            errors.append(Error((name, lineno), "A record must be a JSON object."))
            continue
        yield (name, lineno), record
    if errors:
        raise DataError(collate_errors(when="reading records", errors=errors))


def _read_csv(f, name: str) -> Iterator[AddressedRecord]:
    reader = csv.DictReader(_decoded_lines(f, name))
    missing = set(["kind"]) - set(reader.fieldnames or [])
    unknown = set(reader.fieldnames or []) - set(CSV_COLUMNS)
    if missing or unknown:
        raise DataError(
            f"CSV header of '{name}' must be drawn from {CSV_COLUMNS} "
            f"and contain 'kind'."
        )
    for row in reader:
        # header is line 1
        record = {k: (v if v != "" else None) for k, v in row.items() if k is not None}
        yield (name, reader.line_num), record


def ingest(
    records: Iterable[AddressedRecord],
    *,
    policy: Union[str, MissingPolicy] = MissingPolicy.STUB,
    snapshot: Optional[ReleaseDate] = None,
    exclude_scopes: Sequence[str] = (),
) -> DependencyGraph:
    """Build a frozen dependency graph from records.

    Records are consumed in two passes, so their order does not matter.

    Parameters
    ----------
    records : Iterable[AddressedRecord]
        Raw records paired with their ``(file, line)`` address.
    policy : Union[str, MissingPolicy]
        Handling of dependency endpoints without an artifact record: ``stub``
        adds an external vertex, ``skip`` drops the edge with a warning,
        ``strict`` fails.
    snapshot : Optional[ReleaseDate]
        Capture date. Defaults to the latest release date.
    exclude_scopes : Sequence[str]
        Dependency scopes to leave out, *e.g.* ``test``.

    Returns
    -------
    g : DependencyGraph

    Raises
    ------
    :exc:`DataError`
    """
    policy = MissingPolicy(policy)
    excluded = {s.strip().lower() for s in exclude_scopes}

    errors = []  # type: List[Error]
    artifacts = {}  # type: Dict[Coordinate, Tuple[Address, ReleaseDate]]
    deps = []  # type: List[Tuple[Address, Coordinate, Coordinate, Optional[str]]]

    for address, raw in records:
        record, messages = fix_record(raw)
        errors.extend(Error(address, m) for m in messages)
        if record is None:
            continue
        if record["kind"] == "artifact":
            c = Coordinate(record["g"], record["a"], record["v"])
            if c in artifacts:
                first, _ = artifacts[c]
                msg = f"Duplicate coordinate '{c}', first seen at line {first[1]:d}."
                errors.append(Error(address, msg))
                continue
            artifacts[c] = (address, record["released"])
        else:
            scope = record["scope"]
            if scope is not None and scope.lower() in excluded:
                log.debug(
                    "Dropping %s -> %s with scope %s",
                    record["from"],
                    record["to"],
                    scope,
                )
                continue
            deps.append((address, record["from"], record["to"], scope))

    if errors:
        raise DataError(collate_errors(when="reading records", errors=errors))

    g = DependencyGraph()
    for c in sorted(artifacts):
        g.add_vertex(c, artifacts[c][1])

    skipped = 0
    for address, source, target, scope in deps:
        unresolved = [c for c in (source, target) if c not in artifacts]
        if unresolved and policy is MissingPolicy.STRICT:
            for c in unresolved:
                errors.append(Error(address, f"No artifact record for '{c}'."))
            continue
        if unresolved and policy is MissingPolicy.SKIP:
            log.warning(
                "Skipping dependency %s -> %s at %s line %d: no artifact record for %s",
                source,
                target,
                address[0],
                address[1],
                ", ".join(f"'{c}'" for c in unresolved),
            )
            skipped += 1
            continue
        for c in unresolved:
            if c not in g:
                g.add_vertex(c, external=True)
        g.add_dependency(source, target, scope)

    if errors:
        raise DataError(collate_errors(when="resolving dependencies", errors=errors))
    if skipped:
        log.warning("%d dependencies skipped for missing endpoints", skipped)

    return g.freeze(snapshot)


def ingest_files(
    paths: Sequence[Union[str, Path]],
    *,
    policy: Union[str, MissingPolicy] = MissingPolicy.STUB,
    snapshot: Optional[ReleaseDate] = None,
    exclude_scopes: Sequence[str] = (),
) -> DependencyGraph:
    """Porcelain over :func:`ingest` for a list of NDJSON/CSV files."""

    def chained() -> Iterator[AddressedRecord]:
        for p in paths:
            log.info("Reading records from %s", p)
            yield from read_records(p)

    return ingest(
        chained(), policy=policy, snapshot=snapshot, exclude_scopes=exclude_scopes
    )
