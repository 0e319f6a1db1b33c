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

"""Activity status, lifespan and timeliness of library versions."""

import bisect
import enum
import logging
from collections import defaultdict, namedtuple
from fractions import Fraction
import weakref
from functools import wraps
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple, TypeVar

from .exceptions import DomainError
from .graph import Coordinate, DependencyGraph, Library
from .versioning import ReleaseDate

log = logging.getLogger(__name__)

T = TypeVar("T")


def per_graph(f: Callable[[DependencyGraph], T]) -> Callable[[DependencyGraph], T]:
    """Memoize a function of a frozen graph for as long as the graph lives."""
    memo = weakref.WeakKeyDictionary()  # type: weakref.WeakKeyDictionary

    @wraps(f)
    def wrapper(g: DependencyGraph) -> T:
        try:
            return memo[g]
        except KeyError:
            value = memo[g] = f(g)
            return value

    return wrapper


class ActivityStatus(str, enum.Enum):
    """Activity status of a version.

    Dormant versions are passive as well: they have no users at all.
    """

    ACTIVE = "Active"
    PASSIVE_NON_DORMANT = "PassiveNonDormant"
    DORMANT = "Dormant"

    @property
    def is_passive(self) -> bool:
        return self is not ActivityStatus.ACTIVE


class LibraryStatus(str, enum.Enum):
    ACTIVE = "ActiveLib"
    PASSIVE = "PassiveLib"
    DORMANT = "DormantLib"


class TimelinessClass(str, enum.Enum):
    UNDER_TIMELY = "UnderTimely"
    TIMELY = "Timely"
    OVER_TIMELY = "OverTimely"

    @classmethod
    def of(cls, value: Fraction) -> "TimelinessClass":
        if value == 1:
            return cls.TIMELY
        return cls.OVER_TIMELY if value > 1 else cls.UNDER_TIMELY


class TimelinessNumerator(str, enum.Enum):
    """Which direct users count in the timeliness numerator.

    ``all`` counts every direct user. ``lifespan`` only counts those released
    within the lifespan of the version, ``period`` those released within its
    timeliness period.
    """

    ALL = "all"
    LIFESPAN = "lifespan"
    PERIOD = "period"


class Lifespan(namedtuple("Lifespan", ["start", "end", "clamped"])):
    """Time range during which a version was, or still is, used.

    Attributes
    ----------
    start : ReleaseDate
    end : ReleaseDate
    clamped : bool
        Whether the computed end preceded the start and was moved onto it.
    """

    __slots__ = ()

    @property
    def days(self) -> int:
        return (self.end - self.start).days


class TimelinessResult(namedtuple("TimelinessResult", ["value", "period", "cls"])):
    """Timeliness of a version.

    Attributes
    ----------
    value : Fraction
    period : Optional[Tuple[ReleaseDate, ReleaseDate]]
        Inclusive timeliness period. ``None`` when a special rule applied.
    cls : TimelinessClass
    """

    __slots__ = ()


def _check_versioned(g: DependencyGraph, v: Coordinate) -> None:
    if v not in g:
        raise DomainError(f"'{v}' is not a vertex of the graph.")
    if g.is_external(v):
        raise DomainError(f"'{v}' is an external vertex and has no metrics.")


@per_graph
def active_versions(g: DependencyGraph) -> FrozenSet[Coordinate]:
    """Union of the dependency trees of all latest versions.

    External stubs are left out.
    """
    reached = set()  # type: set
    for latest in g.latests():
        # a tree never holds its own root, even on a cycle
        reached |= g.dependencies(latest, transitive=True)
    return frozenset(c for c in reached if not g.is_external(c))


def activity_status(g: DependencyGraph, v: Coordinate) -> ActivityStatus:
    """Activity status of a version.

    A version is active when it belongs to the dependency tree of some latest
    version, dormant when it is not active and has no direct users, passive
    (non dormant) otherwise. A latest version nobody depends on is dormant.

    Raises
    ------
    :exc:`DomainError`
        If ``v`` is an external vertex.
    """
    _check_versioned(g, v)
    if v in active_versions(g):
        return ActivityStatus.ACTIVE
    if not g.users(v):
        return ActivityStatus.DORMANT
    return ActivityStatus.PASSIVE_NON_DORMANT


def library_status(g: DependencyGraph, library: Library) -> LibraryStatus:
    """Active if any version is active, dormant if all are, passive otherwise.

    Raises
    ------
    :exc:`UnknownLibraryError`
    """
    statuses = {activity_status(g, v) for v in g.chain(library)}
    if ActivityStatus.ACTIVE in statuses:
        return LibraryStatus.ACTIVE
    if statuses == {ActivityStatus.DORMANT}:
        return LibraryStatus.DORMANT
    return LibraryStatus.PASSIVE


def lifespan(g: DependencyGraph, v: Coordinate) -> Optional[Lifespan]:
    """Lifespan of a version, ``None`` for dormant versions.

    Active versions live until the snapshot. A passive version stops being used
    when the last of its transitive users gets its next release.
    """
    status = activity_status(g, v)
    start = g.released(v)  # type: ReleaseDate
    if status is ActivityStatus.DORMANT:
        return None
    if status is ActivityStatus.ACTIVE:
        return Lifespan(start, g.snapshot, False)

    ends = []
    for i in g.users(v, transitive=True):
        if g.is_external(i):
            continue
        successor = g.next(i)
        # a latest transitive user would make v active
        if successor is not None:
            ends.append(g.released(successor))

    if not ends or max(ends) < start:
        log.debug("Lifespan of %s clamped to its release date", v)
        return Lifespan(start, start, True)
    return Lifespan(start, max(ends), False)


def lifespan_days(g: DependencyGraph, v: Coordinate) -> Optional[int]:
    span = lifespan(g, v)
    return None if span is None else span.days


def first_use_delay(g: DependencyGraph, v: Coordinate) -> Optional[int]:
    """Days between the release of ``v`` and the release of its first user."""
    _check_versioned(g, v)
    dates = [g.released(i) for i in g.users(v) if not g.is_external(i)]
    if not dates:
        return None
    return (min(dates) - g.released(v)).days


@per_graph
def _usage_dates(g: DependencyGraph) -> Dict[Library, List[ReleaseDate]]:
    """Per library, sorted release dates of the versions depending on it."""
    usages = defaultdict(list)  # type: Dict[Library, List[ReleaseDate]]
    for record in g.vertices(external=False):
        for library in g.dependency_libraries(record.coordinate):
            usages[library].append(record.released)
    for dates in usages.values():
        dates.sort()
    return dict(usages)


def timeliness_period(
    g: DependencyGraph, v: Coordinate
) -> Tuple[ReleaseDate, ReleaseDate]:
    """Inclusive period during which ``v`` was the latest release.

    It ends with the earliest release, among the later versions, that came out
    strictly after ``v``. Without such a release it ends at the snapshot.
    """
    _check_versioned(g, v)
    start = g.released(v)
    later = [g.released(w) for w in g.next_all(v) if g.released(w) > start]
    return start, (min(later) if later else g.snapshot)


def timeliness(
    g: DependencyGraph,
    v: Coordinate,
    *,
    numerator: TimelinessNumerator = TimelinessNumerator.ALL,
) -> TimelinessResult:
    """Timeliness of a version.

    Dormant versions get 0 and first releases of a library get 1, dormant wins
    when both apply. Otherwise the direct users of ``v`` are divided by the
    number of versions, released within the timeliness period, that depend on
    the library of ``v``. An empty denominator gives 0.

    Parameters
    ----------
    g : DependencyGraph
    v : Coordinate
    numerator : TimelinessNumerator
        ``all`` (default) counts every direct user of ``v``, ``lifespan`` only
        those released within its lifespan, ``period`` only those released
        within the timeliness period.

    Returns
    -------
    result : TimelinessResult
    """
    numerator = TimelinessNumerator(numerator)
    if activity_status(g, v) is ActivityStatus.DORMANT:
        return TimelinessResult(Fraction(0), None, TimelinessClass.UNDER_TIMELY)
    if g.previous(v) is None:
        return TimelinessResult(Fraction(1), None, TimelinessClass.TIMELY)

    start, end = timeliness_period(g, v)
    dates = _usage_dates(g).get(v.library, [])
    denominator = bisect.bisect_right(dates, end) - bisect.bisect_left(dates, start)

    users = {i for i in g.users(v) if not g.is_external(i)}
    if numerator is TimelinessNumerator.PERIOD:
        users = {i for i in users if start <= g.released(i) <= end}
    elif numerator is TimelinessNumerator.LIFESPAN:
        span = lifespan(g, v)
        if span is not None:
            users = {i for i in users if span.start <= g.released(i) <= span.end}

    value = Fraction(len(users), denominator) if denominator else Fraction(0)
    return TimelinessResult(value, (start, end), TimelinessClass.of(value))
