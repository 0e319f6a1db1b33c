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

"""Tests for reading records into a dependency graph."""

import json
import logging

import pytest

from toy import coordinate as c
from toy import day
from mavendiversity.exceptions import DataError
from mavendiversity.graph import Coordinate
from mavendiversity.ingest import MissingPolicy, ingest, ingest_files, read_records
from mavendiversity.types import fix_record, type_matches


def artifact(g, a, v, released):
    return {"kind": "artifact", "g": g, "a": a, "v": v, "released": released}


def dep(source, target, scope=None):
    record = {"kind": "dep", "from": source, "to": target}
    if scope is not None:
        record["scope"] = scope
    return record


def addressed(records):
    return [(("records.ndjson", i), r) for i, r in enumerate(records, start=1)]


def test_csv_and_ndjson_agree(data_dir):
    from_json = ingest_files([data_dir / "toy.ndjson"])
    from_csv = ingest_files([data_dir / "toy.csv"])
    assert sorted(from_json.dep_edges()) == sorted(from_csv.dep_edges())
    assert sorted(from_json.vertices()) == sorted(from_csv.vertices())
    assert from_json.snapshot == from_csv.snapshot


def test_read_records_addresses(toy_path):
    records = list(read_records(toy_path))
    assert len(records) == 14
    assert records[0][0] == ("toy.ndjson", 1)
    assert records[-1][1]["scope"] == "runtime"


def test_records_in_any_order():
    records = [
        dep("g:a:1", "g:b:1"),
        artifact("g", "b", "1", "2020-01-01"),
        artifact("g", "a", "1", "2020-01-02"),
    ]
    g = ingest(addressed(records))
    assert g.dependencies(Coordinate("g", "a", "1")) == {Coordinate("g", "b", "1")}
    assert g.snapshot == day(2)


def test_explicit_snapshot():
    g = ingest(addressed([artifact("g", "a", "1", "2020-01-02")]), snapshot=day(30))
    assert g.snapshot == day(30)


def test_empty_input_needs_a_snapshot():
    with pytest.raises(DataError, match="Cannot derive a snapshot"):
        ingest([])
    assert len(ingest([], snapshot=day(1))) == 0


def test_all_errors_are_collated():
    records = [
        artifact("g", "a", "1", "2020-01-01"),
        artifact("g", "a", "1", "2020-01-02"),
        artifact("g", "a", "", "2020-01-02"),
        {"kind": "artifact", "g": "g", "a": "b", "v": "1"},
        {"kind": "plugin"},
        dep("g:a", "g:b:1"),
    ]
    with pytest.raises(DataError) as e:
        ingest(addressed(records))
    msg = str(e.value)
    assert "Errors occurred when reading records" in msg
    assert "At records.ndjson, line 2:" in msg
    assert "Duplicate coordinate 'g:a:1', first seen at line 1." in msg
    assert "At records.ndjson, line 3:" in msg
    assert "Missing field 'released' in artifact record." in msg
    assert "Unknown record kind 'plugin'" in msg
    assert "is not a 'group:artifact:version' coordinate" in msg


@pytest.mark.parametrize(
    "policy,externals,edges",
    [(MissingPolicy.STUB, 2, 2), (MissingPolicy.SKIP, 0, 0)],
    ids=["stub", "skip"],
)
def test_missing_endpoints(policy, externals, edges):
    records = [
        artifact("g", "a", "1", "2020-01-01"),
        dep("g:a:1", "x:y:1"),
        dep("x:z:1", "g:a:1"),
    ]
    g = ingest(addressed(records), policy=policy)
    assert sum(1 for _ in g.vertices(external=True)) == externals
    assert len(list(g.dep_edges())) == edges


def test_missing_endpoints_strict():
    records = [
        artifact("g", "a", "1", "2020-01-01"),
        dep("g:a:1", "x:y:1"),
        dep("x:z:1", "g:a:1"),
    ]
    with pytest.raises(DataError) as e:
        ingest(addressed(records), policy="strict")
    msg = str(e.value)
    assert "resolving dependencies" in msg
    assert "No artifact record for 'x:y:1'." in msg
    assert "No artifact record for 'x:z:1'." in msg


def test_skip_policy_warns(caplog):
    caplog.set_level(logging.WARNING, logger="mavendiversity")
    records = [artifact("g", "a", "1", "2020-01-01"), dep("g:a:1", "x:y:1")]
    ingest(addressed(records), policy=MissingPolicy.SKIP)
    assert "Skipping dependency g:a:1 -> x:y:1" in caplog.text


def test_excluded_scopes():
    records = [
        artifact("g", "a", "1", "2020-01-01"),
        artifact("g", "b", "1", "2020-01-01"),
        artifact("g", "c", "1", "2020-01-01"),
        dep("g:a:1", "g:b:1", "Test"),
        dep("g:a:1", "g:c:1", "compile"),
    ]
    g = ingest(addressed(records), exclude_scopes=["test"])
    assert g.dependencies(Coordinate("g", "a", "1")) == {Coordinate("g", "c", "1")}


def test_unreadable_file(tmp_path):
    with pytest.raises(DataError, match="Cannot read"):
        list(read_records(tmp_path / "missing.ndjson"))


def test_invalid_json_lines(tmp_path):
    path = tmp_path / "bad.ndjson"
    path.write_text(
        json.dumps(artifact("g", "a", "1", "2020-01-01")) + "\n\n{not json\n[1, 2]\n"
    )
    with pytest.raises(DataError) as e:
        list(read_records(path))
    msg = str(e.value)
    assert "At bad.ndjson, line 3:" in msg
    assert "Invalid JSON" in msg
    assert "At bad.ndjson, line 4:" in msg
    assert "A record must be a JSON object." in msg


def test_invalid_utf8_lines(tmp_path):
    path = tmp_path / "latin.ndjson"
    good = json.dumps(artifact("g", "a", "1", "2020-01-01")).encode()
    path.write_bytes(good + b"\n" + b'{"kind": "\xff\xfe"}\n' + good + b"\n")
    with pytest.raises(DataError) as e:
        list(read_records(path))
    msg = str(e.value)
    assert "At latin.ndjson, line 2:" in msg
    assert "Invalid UTF-8 at byte 10." in msg


def test_invalid_utf8_csv(tmp_path):
    path = tmp_path / "latin.csv"
    path.write_bytes(b"kind,g,a,v,released\nartifact,g,\xe9,1,2020-01-01\n")
    with pytest.raises(DataError, match="At latin.csv, line 2:"):
        list(read_records(path))


def test_csv_header_is_checked(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("kind,g,a,version\n")
    with pytest.raises(DataError, match="CSV header"):
        list(read_records(path))


@pytest.mark.parametrize(
    "value,expected_type,matches",
    [
        ("2020-01-01", "date", True),
        (20200101, "date", False),
        ("", "str", False),
        (None, "Optional[str]", True),
        ("compile", "Optional[str]", True),
        ("g:a:1", "coordinate", True),
    ],
    ids=["date", "int-date", "empty-str", "none-scope", "scope", "coordinate"],
)
def test_type_matches(value, expected_type, matches):
    assert type_matches(value, expected_type) is matches


def test_type_matches_unknown_type():
    with pytest.raises(ValueError, match="could not recognize expected_type"):
        type_matches("x", "complex")


def test_fix_record():
    fixed, messages = fix_record(dep(" g:a:1 ", "g:b:1", "  "))
    assert messages == []
    assert fixed == {
        "kind": "dep",
        "from": Coordinate("g", "a", "1"),
        "to": Coordinate("g", "b", "1"),
        "scope": None,
    }

    fixed, messages = fix_record(artifact("g", "a", "1.0", "2020-02-30"))
    assert fixed is None
    assert messages == ["Release date '2020-02-30' is not an ISO date (YYYY-MM-DD)."]


def test_toy_vertex_dates(toy):
    assert toy.released(c("a3")) == day(8)
    assert toy.released(c("b1")) == day(1)
