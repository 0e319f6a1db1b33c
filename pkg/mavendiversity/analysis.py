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

"""Study procedures built on top of the metrics.

Status patterns along the version history, outlier detection of significantly
popular versions, positional distributions, library categories and the
correlation between the share of active versions and library popularity.
"""

import enum
import itertools
from collections import Counter, OrderedDict, namedtuple
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set

import numpy as np
from scipy import stats

from .exceptions import ConfigError, DomainError
from .graph import Coordinate, DependencyGraph, Library
from .metrics import (
    ActivityStatus,
    TimelinessClass,
    TimelinessResult,
    active_versions,
    activity_status,
    first_use_delay,
    library_status,
    lifespan_days,
)
from .popularity import PopularityScores
from .utils import percentage

ACTIVE_SYMBOL = "A"
PASSIVE_SYMBOL = "P"

TUKEY_MULTIPLIER = 1.5

HISTOGRAM_BINS = 30


class StatusPattern(namedtuple("StatusPattern", ["symbols"])):
    """Sequence of ``A``/``P`` symbols along a library's version order."""

    __slots__ = ()

    def __str__(self):
        return "[" + ",".join(self.symbols) + "]"

    def compressed(self) -> "StatusPattern":
        """Runs of equal symbols collapsed to one symbol."""
        return StatusPattern(tuple(k for k, _ in itertools.groupby(self.symbols)))

    @property
    def ends_active(self) -> bool:
        return bool(self.symbols) and self.symbols[-1] == ACTIVE_SYMBOL


class LibraryCategory(str, enum.Enum):
    SINGLE_VERSION = "SingleVersion"
    ONE_SHOT = "OneShot"
    MULTI_VERSION = "MultiVersion"


class PopularityClass(str, enum.Enum):
    """Libraries by number of significantly popular versions: none, one, more."""

    EVEN = "i"
    ONE = "ii"
    SEVERAL = "iii"

    @classmethod
    def of(cls, n_outliers: int) -> "PopularityClass":
        if n_outliers == 0:
            return cls.EVEN
        return cls.ONE if n_outliers == 1 else cls.SEVERAL


Histogram = namedtuple("Histogram", ["bin_count", "edges", "counts"])

SpearmanResult = namedtuple("SpearmanResult", ["rho", "p_value", "n"])

Quartiles = namedtuple(
    "Quartiles", ["n", "minimum", "q1", "median", "q3", "maximum", "mean"]
)

LibrarySummary = namedtuple(
    "LibrarySummary",
    [
        "library",
        "category",
        "status",
        "n_versions",
        "n_active",
        "n_passive_nondormant",
        "n_dormant",
        "pct_active",
        "pop_l",
        "n_signif_popular",
        "popularity_class",
        "pattern",
        "pct_under",
        "pct_timely",
        "pct_over",
    ],
)


# Status patterns


def status_pattern(
    g: DependencyGraph, library: Library, compressed: bool = True
) -> StatusPattern:
    """Activity symbols of a library's versions in version order.

    Dormant versions are passive, hence ``P``.
    """
    symbols = tuple(
        PASSIVE_SYMBOL if activity_status(g, v).is_passive else ACTIVE_SYMBOL
        for v in g.chain(library)
    )
    pattern = StatusPattern(symbols)
    return pattern.compressed() if compressed else pattern


def _sorted_counts(counts: Mapping[StatusPattern, int]) -> Dict[StatusPattern, int]:
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0].symbols))
    return OrderedDict(ordered)


def pattern_frequencies(
    g: DependencyGraph, libraries: Iterable[Library]
) -> Dict[StatusPattern, int]:
    """Compressed pattern counts, most frequent first, ties lexicographic."""
    return _sorted_counts(Counter(status_pattern(g, lib) for lib in libraries))


def pattern_examples(
    g: DependencyGraph, libraries: Iterable[Library]
) -> Dict[StatusPattern, Library]:
    """The first library, in sorted order, showing each compressed pattern."""
    examples = {}  # type: Dict[StatusPattern, Library]
    for lib in sorted(libraries):
        examples.setdefault(status_pattern(g, lib), lib)
    return examples


def pattern_endings(
    g: DependencyGraph, libraries: Iterable[Library]
) -> Dict[str, Dict[str, float]]:
    """How many patterns finish with an active version.

    Counted both over distinct patterns and over libraries. The number of
    libraries whose earliest version is active is reported alongside.
    """
    libraries = list(libraries)
    frequencies = pattern_frequencies(g, libraries)
    distinct_ending = sum(1 for p in frequencies if p.ends_active)
    library_ending = sum(n for p, n in frequencies.items() if p.ends_active)
    earliest_active = sum(
        1 for lib in libraries if g.chain(lib)[0] in active_versions(g)
    )
    return OrderedDict(
        [
            (
                "patterns",
                {
                    "total": len(frequencies),
                    "ending_active": distinct_ending,
                    "pct_ending_active": percentage(distinct_ending, len(frequencies)),
                },
            ),
            (
                "libraries",
                {
                    "total": len(libraries),
                    "ending_active": library_ending,
                    "pct_ending_active": percentage(library_ending, len(libraries)),
                },
            ),
            (
                "earliest_active",
                {
                    "total": len(libraries),
                    "ending_active": earliest_active,
                    "pct_ending_active": percentage(earliest_active, len(libraries)),
                },
            ),
        ]
    )


# Outliers and positions


def tukey_upper_fence(values: Sequence[float]) -> float:
    """``Q3 + 1.5 * IQR`` with linearly interpolated (type 7) quartiles."""
    q1, q3 = np.percentile(np.asarray(values, dtype=float), [25, 75])
    return float(q3 + TUKEY_MULTIPLIER * (q3 - q1))


def significantly_popular(
    g: DependencyGraph, library: Library, scores: PopularityScores
) -> Set[Coordinate]:
    """Versions whose popularity lies strictly above the library's upper fence."""
    versions = [v for v in g.chain(library) if v in scores]
    if not versions:
        return set()
    fence = tukey_upper_fence([scores[v] for v in versions])
    return {v for v in versions if scores[v] > fence}


def popularity_class(
    g: DependencyGraph, library: Library, scores: PopularityScores
) -> PopularityClass:
    return PopularityClass.of(len(significantly_popular(g, library, scores)))


def positional_index(g: DependencyGraph, v: Coordinate) -> float:
    """Relative position of ``v`` in its library, 0 for the first, 1 for the latest.

    Raises
    ------
    :exc:`DomainError`
        If the library has a single version.
    """
    n = len(g.chain(v.library)) if not g.is_external(v) else 0
    if n < 2:
        raise DomainError(f"Library of '{v}' has a single version, no position.")
    return (g.rank(v) - 1) / (n - 1)


def most_popular_position(
    g: DependencyGraph, library: Library, scores: PopularityScores
) -> float:
    """Position of the top-scored version, the earliest one among ties."""
    chain = g.chain(library)
    top = max(chain, key=lambda v: (scores[v], -g.rank(v)))
    return positional_index(g, top)


def histogram(values: Iterable[float], bins: int = HISTOGRAM_BINS) -> Histogram:
    """Equal-width histogram over [0, 1].

    Bins are half-open except the last one, which includes 1.

    Raises
    ------
    :exc:`DomainError`
        If a value lies outside [0, 1] or ``bins`` is not positive.
    """
    if bins < 1:
        raise DomainError(f"Number of bins must be positive, got {bins}.")
    data = np.asarray(list(values), dtype=float)
    outside = data[~((data >= 0.0) & (data <= 1.0))]
    if outside.size:
        raise DomainError(f"Histogram values must lie in [0, 1], got {outside[0]}.")
    counts, edges = np.histogram(data, bins=bins, range=(0.0, 1.0))
    return Histogram(bins, [float(e) for e in edges], [int(c) for c in counts])


# Categories and study subjects


def categorize_library(g: DependencyGraph, library: Library) -> LibraryCategory:
    chain = g.chain(library)
    if len(chain) == 1:
        return LibraryCategory.SINGLE_VERSION
    if len({g.released(v) for v in chain}) == 1:
        return LibraryCategory.ONE_SHOT
    return LibraryCategory.MULTI_VERSION


def study_filter(
    g: DependencyGraph, min_versions: int = 5, max_versions: int = 200
) -> List[Library]:
    """Multi-version libraries with a number of versions within the bounds.

    Raises
    ------
    :exc:`ConfigError`
        If the lower bound exceeds the upper one.
    """
    if min_versions > max_versions:
        raise ConfigError(
            f"Study filter bounds are inverted: {min_versions} > {max_versions}."
        )
    return [
        lib
        for lib in g.libraries
        if categorize_library(g, lib) is LibraryCategory.MULTI_VERSION
        and min_versions <= len(g.chain(lib)) <= max_versions
    ]


# Correlation


def spearman(x: Sequence[float], y: Sequence[float]) -> SpearmanResult:
    """Spearman's rank correlation with a t-approximated two-sided p-value.

    Tied values get their average rank.

    Raises
    ------
    :exc:`DomainError`
        If the lengths differ, fewer than 3 pairs are given or either sequence
        is constant.
    """
    if len(x) != len(y):
        raise DomainError(f"Sequences differ in length: {len(x)} != {len(y)}.")
    n = len(x)
    if n < 3:
        raise DomainError(f"Spearman's test needs at least 3 pairs, got {n}.")

    rx = stats.rankdata(np.asarray(x, dtype=float))
    ry = stats.rankdata(np.asarray(y, dtype=float))
    if np.ptp(rx) == 0 or np.ptp(ry) == 0:
        raise DomainError("Correlation is undefined for a constant sequence.")

    rho = float(np.clip(np.corrcoef(rx, ry)[0, 1], -1.0, 1.0))
    if np.isclose(abs(rho), 1.0, rtol=0.0, atol=1e-12):
        return SpearmanResult(float(np.sign(rho)), 0.0, n)
    t = rho * np.sqrt((n - 2) / (1.0 - rho ** 2))
    p_value = float(2.0 * stats.t.sf(abs(t), n - 2))
    return SpearmanResult(rho, p_value, n)


# Per-library summaries


def _timeliness_shares(
    versions: Sequence[Coordinate], timeliness: Mapping[Coordinate, TimelinessResult]
) -> List[float]:
    counts = Counter(timeliness[v].cls for v in versions)
    n = len(versions)
    return [
        percentage(counts[TimelinessClass.UNDER_TIMELY], n),
        percentage(counts[TimelinessClass.TIMELY], n),
        percentage(counts[TimelinessClass.OVER_TIMELY], n),
    ]


def library_summary(
    g: DependencyGraph,
    library: Library,
    *,
    version_scores: PopularityScores,
    library_scores: PopularityScores,
    timeliness: Mapping[Coordinate, TimelinessResult],
) -> LibrarySummary:
    """Status counts, popularity and timeliness proportions of a library."""
    chain = g.chain(library)
    statuses = Counter(activity_status(g, v) for v in chain)
    outliers = significantly_popular(g, library, version_scores)
    under, timely, over = _timeliness_shares(chain, timeliness)
    return LibrarySummary(
        library=library,
        category=categorize_library(g, library),
        status=library_status(g, library),
        n_versions=len(chain),
        n_active=statuses[ActivityStatus.ACTIVE],
        n_passive_nondormant=statuses[ActivityStatus.PASSIVE_NON_DORMANT],
        n_dormant=statuses[ActivityStatus.DORMANT],
        pct_active=percentage(statuses[ActivityStatus.ACTIVE], len(chain)),
        pop_l=library_scores.get(library),
        n_signif_popular=len(outliers),
        popularity_class=PopularityClass.of(len(outliers)),
        pattern=status_pattern(g, library),
        pct_under=under,
        pct_timely=timely,
        pct_over=over,
    )


# Further distributions


def active_version_distribution(
    g: DependencyGraph, libraries: Iterable[Library]
) -> Dict[int, int]:
    """Number of active libraries per count of active versions."""
    active = active_versions(g)
    counts = Counter(
        sum(1 for v in g.chain(lib) if v in active) for lib in libraries
    )
    counts.pop(0, None)
    return OrderedDict(sorted(counts.items()))


def active_majors(g: DependencyGraph, library: Library) -> int:
    """Distinct major versions among the active versions of a library."""
    active = active_versions(g)
    return len(
        {
            v.key.major
            for v in g.chain(library)
            if v in active and v.key.major is not None
        }
    )


def quartiles(values: Iterable[float]) -> Quartiles:
    data = np.asarray(list(values), dtype=float)
    if data.size == 0:
        return Quartiles(0, None, None, None, None, None, None)
    q = np.percentile(data, [0, 25, 50, 75, 100])
    return Quartiles(int(data.size), *(float(x) for x in q), float(data.mean()))


def lifespan_distribution(
    g: DependencyGraph, libraries: Iterable[Library]
) -> Dict[str, Quartiles]:
    """Lifespan quartiles, in days, of non-latest active and of passive versions.

    Latest versions are left out of the active group since their lifespan is
    cut by the snapshot.
    """
    latests = g.latests()
    active, passive = [], []
    for lib in libraries:
        for v in g.chain(lib):
            status = activity_status(g, v)
            if status is ActivityStatus.ACTIVE and v not in latests:
                active.append(lifespan_days(g, v))
            elif status is ActivityStatus.PASSIVE_NON_DORMANT:
                passive.append(lifespan_days(g, v))
    return OrderedDict([("active", quartiles(active)), ("passive", quartiles(passive))])


def first_use_distribution(
    g: DependencyGraph, libraries: Iterable[Library]
) -> Quartiles:
    """Days from release to first use, over all versions that were ever used."""
    delays = (first_use_delay(g, v) for lib in libraries for v in g.chain(lib))
    return quartiles(d for d in delays if d is not None)


def timeliness_by_status(
    g: DependencyGraph,
    libraries: Iterable[Library],
    timeliness: Mapping[Coordinate, TimelinessResult],
) -> Dict[str, List[float]]:
    """Under/timely/over percentages for active and for passive versions."""
    groups = OrderedDict([("active", []), ("passive", [])])  # type: Dict[str, list]
    for lib in libraries:
        for v in g.chain(lib):
            key = "passive" if activity_status(g, v).is_passive else "active"
            groups[key].append(v)
    return OrderedDict(
        (k, _timeliness_shares(vs, timeliness)) for k, vs in groups.items()
    )


def timeliness_popularity_correlations(
    summaries: Sequence[LibrarySummary],
) -> Dict[str, Optional[SpearmanResult]]:
    """Spearman's test of each timeliness share against library popularity.

    A test is ``None`` when it is undefined for the data at hand.
    """
    pops = [s.pop_l for s in summaries]
    tests = OrderedDict()  # type: Dict[str, Optional[SpearmanResult]]
    for name in ("pct_under", "pct_timely", "pct_over"):
        try:
            tests[name] = spearman([getattr(s, name) for s in summaries], pops)
        except DomainError:
            tests[name] = None
    return tests


def passive_significantly_popular(
    g: DependencyGraph, libraries: Iterable[Library], scores: PopularityScores
) -> int:
    """Significantly popular versions that are nevertheless passive."""
    active = active_versions(g)
    return sum(
        1
        for lib in libraries
        for v in significantly_popular(g, lib, scores)
        if v not in active
    )
