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

"""Version and release-date ordering.

Versions are compared the way Maven's build tooling does it: the string is split
into numeric and qualifier tokens, well-known qualifiers are ranked, anything
else compares lexically.  Qualifier precedence::

    alpha < beta < milestone < rc = cr < snapshot < "" = final = ga = release < sp

Unknown qualifiers come after ``sp``, ordered lexically among themselves, and
any number beats any qualifier.
"""

import datetime
import enum
from dataclasses import dataclass, field
from functools import lru_cache, total_ordering
from typing import Optional, Tuple

import pyparsing as pp

from .exceptions import DataError, VersionParseError
from .grammars.atoms import NUMERIC, QUALIFIER, Token, version_t

ReleaseDate = datetime.date

QUALIFIER_RANKS = {
    "alpha": 0,
    "beta": 1,
    "milestone": 2,
    "rc": 3,
    "snapshot": 4,
    "": 5,
    "sp": 6,
}
"""Dict[str, int]: Precedence of the well-known qualifiers."""

OTHER_RANK = 7

ALIASES = {"cr": "rc", "final": "", "ga": "", "release": ""}
"""Dict[str, str]: Qualifiers spelled differently but meaning the same."""

SHORT_ALIASES = {"a": "alpha", "b": "beta", "m": "milestone"}
"""Dict[str, str]: Single-letter qualifiers, honoured only before a number."""

ItemKey = Tuple[int, int, str]

PADDING = (0, QUALIFIER_RANKS[""], "")  # type: ItemKey
"""ItemKey: What a shorter version is compared with once it runs out of tokens."""

# distinct version strings kept parsed
PARSE_CACHE_SIZE = 1 << 16


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@total_ordering
@dataclass(frozen=True, eq=False)
class VersionKey:
    """A parsed version string.

    Attributes
    ----------
    tokens : Tuple[Token, ...]
        The full tokenization, nothing trimmed.
    raw : str
        The original string.
    canonical : Tuple[ItemKey, ...]
        Comparison key: release-equivalent qualifiers and zeros before a
        qualifier or at the end are gone, a padding item closes the tuple.
    """

    tokens: Tuple[Token, ...]
    raw: str
    canonical: Tuple[ItemKey, ...] = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, VersionKey):
            return NotImplemented
        return self.canonical == other.canonical

    def __lt__(self, other):
        if not isinstance(other, VersionKey):
            return NotImplemented
        return self.canonical < other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self):
        return self.raw

    @property
    def major(self) -> Optional[int]:
        """The first numeric token, if any."""
        first = self.tokens[0]
        return first.value if first.kind == NUMERIC else None


@lru_cache(maxsize=PARSE_CACHE_SIZE)
def parse_version(text: str) -> VersionKey:
    """Parse a version string.

    Parameters
    ----------
    text : str
        A concrete version, *e.g.* ``1.0-alpha``. Ranges are not supported.

    Returns
    -------
    key : VersionKey

    Raises
    ------
    :exc:`VersionParseError`
        If the string is empty or consists of separators only.
    """
    if text is None or text.strip() == "":
        raise VersionParseError("Cannot parse an empty version string.")

    try:
        tokens = tuple(version_t.parse_string(text.strip(), parse_all=True))
    except pp.ParseBaseException as e:
        raise VersionParseError(f"Cannot parse version '{text}': {e}")

    if not tokens:
        raise VersionParseError(f"Version '{text}' has no tokens.")

    return VersionKey(tokens=tokens, raw=text, canonical=_canonical(tokens))


def _canonical(tokens: Tuple[Token, ...]) -> Tuple[ItemKey, ...]:
    items = []
    for i, t in enumerate(tokens):
        if t.kind == NUMERIC:
            items.append(t)
            continue
        value = t.value
        followed_by_number = i + 1 < len(tokens) and tokens[i + 1].kind == NUMERIC
        if value in SHORT_ALIASES and followed_by_number:
            value = SHORT_ALIASES[value]
        value = ALIASES.get(value, value)
        if value != "":
            items.append(Token(QUALIFIER, value))

    trimmed = []  # type: list
    for t in items + [None]:
        if t is None or t.kind == QUALIFIER:
            while trimmed and trimmed[-1].kind == NUMERIC and trimmed[-1].value == 0:
                trimmed.pop()
        if t is not None:
            trimmed.append(t)

    return tuple(_item_key(t) for t in trimmed) + (PADDING,)


def _item_key(t: Token) -> ItemKey:
    if t.kind == NUMERIC:
        return (1, t.value, "")
    if t.value in QUALIFIER_RANKS:
        return (0, QUALIFIER_RANKS[t.value], "")
    return (0, OTHER_RANK, t.value)


def compare_versions(a: VersionKey, b: VersionKey) -> Ordering:
    """Three-way comparison of two parsed versions.

    Parameters
    ----------
    a : VersionKey
    b : VersionKey

    Returns
    -------
    ordering : Ordering
    """
    if a.canonical < b.canonical:
        return Ordering.LESS
    if a.canonical > b.canonical:
        return Ordering.GREATER
    return Ordering.EQUAL


def parse_date(text: str) -> ReleaseDate:
    """Parse an ISO ``YYYY-MM-DD`` release date.

    Raises
    ------
    :exc:`DataError`
    """
    try:
        return datetime.date.fromisoformat(text.strip())
    except (AttributeError, ValueError):
        raise DataError(f"Release date '{text}' is not an ISO date (YYYY-MM-DD).")


def format_date(day: Optional[ReleaseDate]) -> str:
    return "" if day is None else day.isoformat()
