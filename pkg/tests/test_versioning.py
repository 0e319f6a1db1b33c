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

"""Tests for version parsing and ordering."""

from datetime import date

import pytest
from hypothesis import given
from hypothesis import strategies as st

from custom_strategies import version_strings
from mavendiversity.exceptions import DataError, VersionParseError
from mavendiversity.grammars.atoms import NUMERIC, QUALIFIER, Token
from mavendiversity.versioning import (
    PARSE_CACHE_SIZE,
    Ordering,
    compare_versions,
    format_date,
    parse_date,
    parse_version,
)

LT, EQ, GT = Ordering.LESS, Ordering.EQUAL, Ordering.GREATER

comparisons = [
    ("1.2.0", "2.0.0", LT),
    ("1", "1.0", EQ),
    ("1.0", "1.0.0", EQ),
    ("1.0-alpha", "1.0", LT),
    ("1.0-alpha", "1.0-beta", LT),
    ("1.0-beta", "1.0-milestone", LT),
    ("1.0-milestone", "1.0-rc", LT),
    ("1.0-rc", "1.0-SNAPSHOT", LT),
    ("1.0-SNAPSHOT", "1.0", LT),
    ("1.0", "1.0-sp", LT),
    ("1.0-sp", "1.0-foo", LT),
    ("1.0-foo", "1.0.1", LT),
    ("1.0-cr1", "1.0-rc1", EQ),
    ("1.0-final", "1.0", EQ),
    ("1.0-ga", "1.0", EQ),
    ("1.0.RELEASE", "1.0", EQ),
    ("1.0-a1", "1.0-alpha-1", EQ),
    ("1.0-b2", "1.0-beta-2", EQ),
    ("1.0-m3", "1.0-milestone-3", EQ),
    ("1.0-alpha", "1.0-a", LT),
    ("1.0-alpha1", "1.0-alpha2", LT),
    ("1.0-alpha2", "1.0-alpha10", LT),
    ("1.0-rc1", "1.0-rc2", LT),
    ("1.9", "1.10", LT),
    ("1.10", "1.9", GT),
    ("2.0", "1.999", GT),
    ("1.0.0.0", "1", EQ),
    ("1-SNAPSHOT", "1", LT),
    ("1-SNAPSHOT", "1-rc", GT),
    ("1.0-abc", "1.0-abd", LT),
    ("1.0-abc", "1.0-ABC", EQ),
    ("1.0-sp1", "1.0-sp2", LT),
    ("1.0-sp", "1.0.1", LT),
    ("2.0-alpha", "1.9", GT),
    ("1.0alpha", "1.0-alpha", EQ),
    ("1alpha1", "1-alpha-1", EQ),
    ("1.0.0-rc.1", "1.0-rc-1", EQ),
    ("0.9", "1.0", LT),
    ("0.0.1", "0.1", LT),
    ("1.0-20200101", "1.0", GT),
    ("1.1-alpha", "1.0.9", GT),
    ("3.0.0", "3", EQ),
    ("1.0-rc-1", "1.0", LT),
    ("1.0-M1", "1.0-RC1", LT),
    ("1.0.0-beta", "1.0.0-beta.2", LT),
    ("1.0-beta-final", "1.0-beta", EQ),
    ("5", "4.99.99", GT),
    ("1.2.3", "1.2.3", EQ),
    ("1.0-xyz", "1.0-sp", GT),
    ("10.0", "9.0", GT),
]


@pytest.mark.parametrize(
    "a,b,expected", comparisons, ids=[f"{a}-vs-{b}" for a, b, _ in comparisons]
)
def test_compare_versions(a, b, expected):
    assert compare_versions(parse_version(a), parse_version(b)) is expected
    assert compare_versions(parse_version(b), parse_version(a)) is Ordering(-expected)


def test_tokens_keep_everything():
    key = parse_version("1.0-alpha")
    assert key.tokens == (
        Token(NUMERIC, 1),
        Token(NUMERIC, 0),
        Token(QUALIFIER, "alpha"),
    )
    assert str(key) == "1.0-alpha"


@pytest.mark.parametrize(
    "text,tokens",
    [
        ("1.0.0", [1, 0, 0]),
        ("2.1-SNAPSHOT", [2, 1, "snapshot"]),
        ("1rc2", [1, "rc", 2]),
        ("3.0.Final", [3, 0, "final"]),
    ],
    ids=["numbers", "snapshot", "transitions", "final"],
)
def test_tokenization(text, tokens):
    assert [t.value for t in parse_version(text).tokens] == tokens


@pytest.mark.parametrize(
    "text,major",
    [("1.2.3", 1), ("10-rc1", 10), ("rc-1", None)],
    ids=["plain", "qualified", "no-number"],
)
def test_major(text, major):
    assert parse_version(text).major == major


@pytest.mark.parametrize("text", ["", "   ", "...", "-.-"], ids=lambda t: repr(t))
def test_unparsable_versions(text):
    with pytest.raises(VersionParseError):
        parse_version(text)


def test_version_parse_error_is_a_data_error():
    with pytest.raises(DataError):
        parse_version("")


def test_keys_sort():
    texts = ["1.10", "1.0-SNAPSHOT", "1.0-sp", "1.2", "1.0", "1.0-alpha", "1.9"]
    ordered = [str(k) for k in sorted(parse_version(t) for t in texts)]
    assert ordered == [
        "1.0-alpha", "1.0-SNAPSHOT", "1.0", "1.0-sp", "1.2", "1.9", "1.10"
    ]


@given(a=version_strings(), b=version_strings())
def test_antisymmetry(a, b):
    ka, kb = parse_version(a), parse_version(b)
    assert compare_versions(ka, kb) == -compare_versions(kb, ka)
    assert (compare_versions(ka, kb) is Ordering.EQUAL) == (ka == kb)


@given(a=version_strings(), b=version_strings(), c=version_strings())
def test_transitivity(a, b, c):
    ka, kb, kc = sorted([parse_version(a), parse_version(b), parse_version(c)])
    assert compare_versions(ka, kb) <= 0
    assert compare_versions(kb, kc) <= 0
    assert compare_versions(ka, kc) <= 0


@given(v=version_strings())
def test_reflexivity(v):
    assert compare_versions(parse_version(v), parse_version(v)) is Ordering.EQUAL


def test_parse_date():
    assert parse_date("2020-01-09") == date(2020, 1, 9)
    assert format_date(date(2020, 1, 9)) == "2020-01-09"
    assert format_date(None) == ""


@pytest.mark.parametrize("text", ["2020-13-01", "09/01/2020", ""], ids=repr)
def test_parse_date_fails(text):
    with pytest.raises(DataError, match="is not an ISO date"):
        parse_date(text)


@given(st.dates())
def test_dates_roundtrip(d):
    assert parse_date(format_date(d)) == d


def test_parse_cache_is_bounded():
    assert parse_version.cache_info().maxsize == PARSE_CACHE_SIZE
