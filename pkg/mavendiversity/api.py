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

"""Top-level functions for mavendiversity.

The pipeline reads records into a frozen dependency graph, evaluates every
metric once into a :class:`MetricsTable` and shapes the table into reports.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

from .analysis import (
    HISTOGRAM_BINS,
    LibraryCategory,
    LibrarySummary,
    PopularityClass,
    active_majors,
    active_version_distribution,
    first_use_distribution,
    histogram,
    library_summary,
    lifespan_distribution,
    most_popular_position,
    passive_significantly_popular,
    pattern_endings,
    pattern_examples,
    pattern_frequencies,
    positional_index,
    significantly_popular,
    spearman,
    study_filter,
    timeliness_by_status,
    timeliness_popularity_correlations,
)
from .config import RunConfig
from .exceptions import DomainError
from .graph import Coordinate, DependencyGraph, Library, LibraryGraph, elevate
from .ingest import ingest_files
from .metrics import (
    ActivityStatus,
    Lifespan,
    LibraryStatus,
    TimelinessResult,
    active_versions,
    activity_status,
    lifespan,
    timeliness,
)
from .popularity import PopularityScores, library_popularity, version_popularity
from .report import (
    CORRELATION_COLUMNS,
    HISTOGRAM_COLUMNS,
    LIBRARY_COLUMNS,
    LIFESPAN_COLUMNS,
    PATTERN_COLUMNS,
    PATTERN_ENDING_COLUMNS,
    SPEARMAN_COLUMNS,
    SUMMARY_COLUMNS,
    TERNARY_COLUMNS,
    TIMELINESS_STATUS_COLUMNS,
    VERSION_COLUMNS,
    Report,
)
from .utils import percentage

log = logging.getLogger(__name__)

HISTOGRAM_METRICS = [
    "positional-active",
    "positional-popular",
    "positional-most-popular",
]


def load_graph(config: RunConfig) -> DependencyGraph:
    """Ingest the input files named in the configuration."""
    return ingest_files(
        config.inputs,
        policy=config.on_missing,
        snapshot=config.snapshot,
        exclude_scopes=config.exclude_scopes,
    )


@dataclass
class MetricsTable:
    """Every metric of a run, evaluated once.

    Attributes
    ----------
    graph : DependencyGraph
    libraries : List[Library]
        The libraries under analysis, sorted.
    statuses : Dict[Coordinate, ActivityStatus]
    lifespans : Dict[Coordinate, Optional[Lifespan]]
    timeliness : Dict[Coordinate, TimelinessResult]
    version_scores : PopularityScores
    library_graph : LibraryGraph
    library_scores : PopularityScores
    summaries : Dict[Library, LibrarySummary]
    """

    graph: DependencyGraph
    libraries: List[Library]
    statuses: Dict[Coordinate, ActivityStatus]
    lifespans: Dict[Coordinate, Optional[Lifespan]]
    timeliness: Dict[Coordinate, TimelinessResult]
    version_scores: PopularityScores
    library_graph: LibraryGraph
    library_scores: PopularityScores
    summaries: Dict[Library, LibrarySummary]

    def versions(self) -> List[Coordinate]:
        return [v for lib in self.libraries for v in self.graph.chain(lib)]


def select_libraries(g: DependencyGraph, config: RunConfig) -> List[Library]:
    if config.study_subjects:
        selected = study_filter(g, config.min_versions, config.max_versions)
        log.info(
            "%d of %d libraries are study subjects", len(selected), len(g.libraries)
        )
        return selected
    return g.libraries


def compute_metrics(
    g: DependencyGraph, config: RunConfig = RunConfig()
) -> MetricsTable:
    """Evaluate every metric on a frozen graph.

    Per-library metrics are evaluated by a pool of ``config.threads`` workers.

    Raises
    ------
    :exc:`ConvergenceError`
        If a popularity iteration does not converge.
    """
    libraries = select_libraries(g, config)
    version_scores = version_popularity(g, config.popularity)
    gl = elevate(g)
    library_scores = library_popularity(gl, config.popularity)
    # fill the cache once, workers only read it
    active_versions(g)

    def per_library(lib: Library):
        statuses, spans, tl = {}, {}, {}
        for v in g.chain(lib):
            statuses[v] = activity_status(g, v)
            spans[v] = lifespan(g, v)
            tl[v] = timeliness(g, v, numerator=config.timeliness_numerator)
        summary = library_summary(
            g,
            lib,
            version_scores=version_scores,
            library_scores=library_scores,
            timeliness=tl,
        )
        return statuses, spans, tl, summary

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(per_library, libraries))
    else:
        results = [per_library(lib) for lib in libraries]

    table = MetricsTable(
        graph=g,
        libraries=list(libraries),
        statuses={},
        lifespans={},
        timeliness={},
        version_scores=version_scores,
        library_graph=gl,
        library_scores=library_scores,
        summaries={},
    )
    for lib, (statuses, spans, tl, summary) in zip(libraries, results):
        table.statuses.update(statuses)
        table.lifespans.update(spans)
        table.timeliness.update(tl)
        table.summaries[lib] = summary
    log.info("Metrics evaluated on %d versions", len(table.statuses))
    return table


# Reports


def _position(g: DependencyGraph, v: Coordinate) -> Optional[float]:
    return positional_index(g, v) if len(g.chain(v.library)) > 1 else None


def versions_report(table: MetricsTable) -> Report:
    """One row per version, sorted by coordinate."""
    g = table.graph
    rows = []
    for v in sorted(table.versions()):
        span = table.lifespans[v]
        tl = table.timeliness[v]
        rows.append(
            [
                v,
                g.released(v),
                table.statuses[v],
                None if span is None else span.start,
                None if span is None else span.end,
                table.version_scores[v],
                tl.value,
                tl.cls,
                _position(g, v),
                "lifespan_clamped" if span is not None and span.clamped else "",
            ]
        )
    return Report("versions", VERSION_COLUMNS, rows)


def libraries_report(table: MetricsTable) -> Report:
    rows = [
        [
            s.library,
            s.category,
            s.n_versions,
            s.n_active,
            s.n_passive_nondormant,
            s.n_dormant,
            s.pct_active,
            s.pop_l,
            s.n_signif_popular,
            s.pattern,
            s.pct_under,
            s.pct_timely,
            s.pct_over,
            s.status,
        ]
        for _, s in sorted(table.summaries.items())
    ]
    return Report("libraries", LIBRARY_COLUMNS, rows)


def patterns_report(table: MetricsTable) -> Report:
    """Compressed patterns by decreasing frequency, with an example library."""
    g = table.graph
    examples = pattern_examples(g, table.libraries)
    rows = [
        [p, n, examples[p]]
        for p, n in pattern_frequencies(g, table.libraries).items()
    ]
    return Report("patterns", PATTERN_COLUMNS, rows)


def pattern_endings_report(table: MetricsTable) -> Report:
    endings = pattern_endings(table.graph, table.libraries)
    rows = [
        [k, d["total"], d["ending_active"], d["pct_ending_active"]]
        for k, d in endings.items()
    ]
    return Report("pattern_endings", PATTERN_ENDING_COLUMNS, rows)


def histogram_values(table: MetricsTable, metric: str) -> List[float]:
    """Positional indices feeding a histogram.

    ``positional-active`` takes the active versions, ``positional-popular`` the
    significantly popular ones, ``positional-most-popular`` the top-scored
    version of each library.  Single-version libraries have no positions.

    Raises
    ------
    :exc:`DomainError`
        If the metric is unknown.
    """
    g = table.graph
    libraries = [lib for lib in table.libraries if len(g.chain(lib)) > 1]
    if metric == "positional-active":
        return [
            positional_index(g, v)
            for lib in libraries
            for v in g.chain(lib)
            if table.statuses[v] is ActivityStatus.ACTIVE
        ]
    if metric == "positional-popular":
        return [
            positional_index(g, v)
            for lib in libraries
            for v in sorted(significantly_popular(g, lib, table.version_scores))
        ]
    if metric == "positional-most-popular":
        return [
            most_popular_position(g, lib, table.version_scores) for lib in libraries
        ]
    raise DomainError(
        f"Unknown histogram metric '{metric}', expected one of {HISTOGRAM_METRICS}."
    )


def histogram_report(
    table: MetricsTable, metric: str, bins: int = HISTOGRAM_BINS
) -> Report:
    h = histogram(histogram_values(table, metric), bins)
    rows = [
        [i, lo, hi, n]
        for i, (lo, hi, n) in enumerate(zip(h.edges, h.edges[1:], h.counts), start=1)
    ]
    name = "hist_" + metric.replace("-", "_")
    return Report(name, HISTOGRAM_COLUMNS, rows)


def correlation_report(table: MetricsTable) -> Report:
    """Share of active versions against library popularity."""
    rows = [
        [s.library, s.pct_active, s.pop_l] for _, s in sorted(table.summaries.items())
    ]
    return Report("correlation", CORRELATION_COLUMNS, rows)


def _spearman_row(name: str, x: List[float], y: List[float]) -> list:
    try:
        result = spearman(x, y)
    except DomainError as e:
        log.warning("Spearman's test '%s' is undefined: %s", name, e)
        return [name, len(x), None, None]
    return [name, result.n, result.rho, result.p_value]


def spearman_report(table: MetricsTable) -> Report:
    summaries = [s for _, s in sorted(table.summaries.items())]
    row = _spearman_row(
        "pct_active~pop_l",
        [s.pct_active for s in summaries],
        [s.pop_l for s in summaries],
    )
    return Report("spearman", SPEARMAN_COLUMNS, [row])


def summary_report(table: MetricsTable) -> Report:
    """Status counts of versions and libraries, plus the popularity findings."""
    g = table.graph
    n_versions = len(table.statuses)
    n_libraries = len(table.libraries)
    rows = []  # type: List[list]

    version_counts = {s: 0 for s in ActivityStatus}
    for status in table.statuses.values():
        version_counts[status] += 1
    for status, n in version_counts.items():
        rows.append(["versions", status.value, n, percentage(n, n_versions)])

    library_counts = {s: 0 for s in LibraryStatus}
    for s in table.summaries.values():
        library_counts[s.status] += 1
    for lib_status, n in library_counts.items():
        rows.append(["libraries", lib_status.value, n, percentage(n, n_libraries)])

    category_counts = {c: 0 for c in LibraryCategory}
    for s in table.summaries.values():
        category_counts[s.category] += 1
    for category, n in category_counts.items():
        rows.append(["categories", category.value, n, percentage(n, n_libraries)])

    active_libraries = [
        lib
        for lib in table.libraries
        if table.summaries[lib].status is LibraryStatus.ACTIVE
    ]
    distribution = active_version_distribution(g, active_libraries)
    several_active = sum(n for k, n in distribution.items() if k > 1)
    several_majors = sum(1 for lib in active_libraries if active_majors(g, lib) > 1)
    n_active_libraries = len(active_libraries)
    rows.append(
        [
            "active_libraries",
            "multiple_active_versions",
            several_active,
            percentage(several_active, n_active_libraries),
        ]
    )
    rows.append(
        [
            "active_libraries",
            "multiple_active_majors",
            several_majors,
            percentage(several_majors, n_active_libraries),
        ]
    )

    class_counts = {c: 0 for c in PopularityClass}
    for s in table.summaries.values():
        class_counts[s.popularity_class] += 1
    for cls, n in class_counts.items():
        rows.append(["popularity_classes", cls.value, n, percentage(n, n_libraries)])

    multi = [lib for lib in table.libraries if len(g.chain(lib)) > 1]
    not_latest = sum(
        1 for lib in multi if most_popular_position(g, lib, table.version_scores) < 1.0
    )
    rows.append(
        [
            "popularity",
            "most_popular_not_latest",
            not_latest,
            percentage(not_latest, len(multi)),
        ]
    )
    n_outliers = sum(s.n_signif_popular for s in table.summaries.values())
    passive = passive_significantly_popular(g, table.libraries, table.version_scores)
    rows.append(
        [
            "popularity",
            "passive_significantly_popular",
            passive,
            percentage(passive, n_outliers),
        ]
    )
    return Report("summary", SUMMARY_COLUMNS, rows)


def lifespans_report(table: MetricsTable) -> Report:
    """Lifespan quartiles per status and first-use delays, in days."""
    g = table.graph
    groups = lifespan_distribution(g, table.libraries)
    groups["first_use"] = first_use_distribution(g, table.libraries)
    rows = [[name, *q] for name, q in groups.items()]
    return Report("lifespans", LIFESPAN_COLUMNS, rows)


def ternary_report(table: MetricsTable) -> Report:
    rows = [
        [s.library, s.pct_under, s.pct_timely, s.pct_over]
        for _, s in sorted(table.summaries.items())
    ]
    return Report("ternary", TERNARY_COLUMNS, rows)


def timeliness_by_status_report(table: MetricsTable) -> Report:
    shares = timeliness_by_status(table.graph, table.libraries, table.timeliness)
    rows = [[group, *triple] for group, triple in shares.items()]
    return Report("timeliness_by_status", TIMELINESS_STATUS_COLUMNS, rows)


def timeliness_correlations_report(table: MetricsTable) -> Report:
    summaries = [s for _, s in sorted(table.summaries.items())]
    tests = timeliness_popularity_correlations(summaries)
    rows = []
    for name, result in tests.items():
        test = f"{name}~pop_l"
        if result is None:
            log.warning("Spearman's test '%s' is undefined", test)
            rows.append([test, len(summaries), None, None])
        else:
            rows.append([test, result.n, result.rho, result.p_value])
    return Report("timeliness_correlations", SPEARMAN_COLUMNS, rows)


def graph_stats(g: DependencyGraph) -> Dict[str, object]:
    """Counts describing a frozen dependency graph."""
    externals = sum(1 for _ in g.vertices(external=True))
    return {
        "vertices": len(g),
        "artifacts": len(g) - externals,
        "external_stubs": externals,
        "dependency_edges": g.digraph.number_of_edges(),
        "precedence_edges": sum(1 for _ in g.precedence_edges()),
        "libraries": len(g.libraries),
        "external_libraries": len(g.external_libraries()),
        "snapshot": g.snapshot.isoformat(),
    }
