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

"""Version-level dependency graph and its library-level elevation.

The version-level graph holds one vertex per artifact (a library version), the
declared dependency edges between them and, per library, the chain of versions
sorted by version order.  The library-level graph collapses versions onto their
libraries and weighs each edge by the number of distinct source versions.
"""

import logging
from collections import defaultdict, namedtuple
from typing import Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from .exceptions import DataError, DomainError, UnknownLibraryError
from .versioning import ReleaseDate, VersionKey, parse_version

log = logging.getLogger(__name__)


class Library(namedtuple("Library", ["group", "artifact"])):
    """A library: all the artifacts sharing one ``groupId:artifactId`` pair."""

    __slots__ = ()

    def __str__(self):
        return f"{self.group}:{self.artifact}"


class Coordinate(namedtuple("Coordinate", ["group", "artifact", "version"])):
    """The ``groupId:artifactId:version`` triplet identifying an artifact."""

    __slots__ = ()

    def __str__(self):
        return f"{self.group}:{self.artifact}:{self.version}"

    @property
    def library(self) -> Library:
        return Library(self.group, self.artifact)

    @property
    def key(self) -> VersionKey:
        return parse_version(self.version)

    @classmethod
    def parse(cls, text: str) -> "Coordinate":
        """Parse ``group:artifact:version``.

        Raises
        ------
        :exc:`DataError`
        """
        parts = text.strip().split(":") if isinstance(text, str) else []
        if len(parts) != 3 or not all(p.strip() for p in parts):
            raise DataError(f"'{text}' is not a 'group:artifact:version' coordinate.")
        return cls(*(p.strip() for p in parts))


class VertexRecord(namedtuple("VertexRecord", ["coordinate", "released", "external"])):
    """A vertex of the dependency graph.

    Attributes
    ----------
    coordinate : Coordinate
    released : Optional[ReleaseDate]
        ``None`` for external stubs.
    external : bool
        Whether the vertex was only ever seen as an endpoint of a dependency.
    """

    __slots__ = ()


DepEdge = Tuple[Coordinate, Coordinate, Optional[str]]


class DependencyGraph:
    """The version-level dependency graph.

    The graph is built by adding vertices and edges, then frozen.  All queries
    require a frozen graph and never mutate it, so a frozen graph may be shared
    between threads.
    """

    def __init__(self) -> None:
        self._g = nx.DiGraph()
        self._chains = {}  # type: Dict[Library, List[Coordinate]]
        self._position = {}  # type: Dict[Coordinate, int]
        self._snapshot = None  # type: Optional[ReleaseDate]
        self._frozen = False

    # Building

    def add_vertex(
        self,
        coordinate: Coordinate,
        released: Optional[ReleaseDate] = None,
        *,
        external: bool = False,
    ) -> None:
        self._check_mutable()
        if coordinate in self._g:
            raise DataError(f"Duplicate coordinate '{coordinate}'.")
        if not external and released is None:
            raise DataError(f"Artifact '{coordinate}' has no release date.")
        self._g.add_node(
            coordinate, released=None if external else released, external=external
        )

    def add_dependency(
        self, source: Coordinate, target: Coordinate, scope: Optional[str] = None
    ) -> None:
        self._check_mutable()
        for c in (source, target):
            if c not in self._g:
                raise DataError(f"Dependency endpoint '{c}' is not a vertex.")
        if self._g.has_edge(source, target):
            log.debug("Repeated dependency %s -> %s ignored", source, target)
            return
        self._g.add_edge(source, target, scope=scope)

    def freeze(self, snapshot: Optional[ReleaseDate] = None) -> "DependencyGraph":
        """Build the precedence chains and make the graph read-only.

        Parameters
        ----------
        snapshot : Optional[ReleaseDate]
            Capture date. Defaults to the latest release date in the graph.

        Raises
        ------
        :exc:`DataError`
            If no snapshot can be derived or the snapshot precedes a release.
        """
        self._check_mutable()
        dates = [
            d["released"]
            for _, d in self._g.nodes(data=True)
            if not d["external"] and d["released"] is not None
        ]
        latest_release = max(dates) if dates else None
        if snapshot is None:
            if latest_release is None:
                raise DataError(
                    "Cannot derive a snapshot date from an empty graph, "
                    "please set one explicitly."
                )
            snapshot = latest_release
        elif latest_release is not None and snapshot < latest_release:
            raise DataError(
                f"Snapshot {snapshot.isoformat()} precedes the latest release "
                f"date {latest_release.isoformat()}."
            )
        self._snapshot = snapshot

        members = defaultdict(list)  # type: Dict[Library, List[Coordinate]]
        for c, d in self._g.nodes(data=True):
            if not d["external"]:
                members[c.library].append(c)
        for library in sorted(members):
            # equal version keys are ordered by release date, then spelling
            chain = sorted(
                members[library],
                key=lambda c: (
                    c.key.canonical,
                    self._g.nodes[c]["released"],
                    c.version,
                ),
            )
            self._chains[library] = chain
            for i, c in enumerate(chain):
                self._position[c] = i

        self._g = nx.freeze(self._g)
        self._frozen = True
        log.info(
            "Dependency graph: %d vertices, %d dependency edges, %d libraries, "
            "snapshot %s",
            self._g.number_of_nodes(),
            self._g.number_of_edges(),
            len(self._chains),
            snapshot.isoformat(),
        )
        return self

    def _check_mutable(self) -> None:
        if self._frozen:
            raise DomainError("The dependency graph is frozen.")

    def _check_frozen(self) -> None:
        if not self._frozen:
            raise DomainError("The dependency graph must be frozen before querying.")

    # Whole-graph views

    @property
    def snapshot(self) -> ReleaseDate:
        self._check_frozen()
        return self._snapshot  # type: ignore

    @property
    def digraph(self) -> nx.DiGraph:
        """The underlying (frozen) ``networkx`` graph of dependency edges."""
        return self._g

    def __contains__(self, c: Coordinate) -> bool:
        return c in self._g

    def __len__(self) -> int:
        return self._g.number_of_nodes()

    def vertices(self, *, external: Optional[bool] = None) -> Iterator[VertexRecord]:
        """Iterate over vertices, optionally only (non-)external ones."""
        for c, d in self._g.nodes(data=True):
            if external is None or d["external"] == external:
                yield VertexRecord(c, d["released"], d["external"])

    def versions(self) -> List[Coordinate]:
        """All non-external vertices, grouped by library in version order."""
        self._check_frozen()
        return [c for chain in self._chains.values() for c in chain]

    def dep_edges(self) -> Iterator[DepEdge]:
        for u, v, d in self._g.edges(data=True):
            yield u, v, d["scope"]

    def precedence_edges(self) -> Iterator[Tuple[Coordinate, Coordinate]]:
        """Each version paired with its successor in version order."""
        self._check_frozen()
        for chain in self._chains.values():
            yield from zip(chain, chain[1:])

    @property
    def libraries(self) -> List[Library]:
        """Libraries with at least one non-external version, sorted."""
        self._check_frozen()
        return list(self._chains)

    def external_libraries(self) -> Set[Library]:
        """Libraries only known through external stubs."""
        return {
            c.library for c, d in self._g.nodes(data=True) if d["external"]
        } - set(self._chains)

    # Single-vertex views

    def vertex(self, c: Coordinate) -> VertexRecord:
        d = self._g.nodes[c]
        return VertexRecord(c, d["released"], d["external"])

    def released(self, c: Coordinate) -> Optional[ReleaseDate]:
        return self._g.nodes[c]["released"]

    def is_external(self, c: Coordinate) -> bool:
        return self._g.nodes[c]["external"]

    # Notations on versions and libraries

    def chain(self, library: Library) -> List[Coordinate]:
        """The versions of a library sorted by version order.

        Raises
        ------
        :exc:`UnknownLibraryError`
        """
        self._check_frozen()
        try:
            return self._chains[library]
        except KeyError:
            raise UnknownLibraryError(f"Unknown library '{library}'.")

    def _located(self, v: Coordinate) -> Tuple[List[Coordinate], int]:
        self._check_frozen()
        if v not in self._position:
            if v in self._g:
                raise DomainError(
                    f"'{v}' is an external vertex without a library chain."
                )
            raise DomainError(f"'{v}' is not a vertex of the graph.")
        return self._chains[v.library], self._position[v]

    def rank(self, v: Coordinate) -> int:
        """One-based position of ``v`` in its library's version order."""
        _, i = self._located(v)
        return i + 1

    def next(self, v: Coordinate) -> Optional[Coordinate]:
        """The next release of ``v`` in version order, ``None`` if ``v`` is latest.

        Raises
        ------
        :exc:`DomainError`
            If ``v`` is an external vertex.
        """
        chain, i = self._located(v)
        return chain[i + 1] if i + 1 < len(chain) else None

    def previous(self, v: Coordinate) -> Optional[Coordinate]:
        chain, i = self._located(v)
        return chain[i - 1] if i > 0 else None

    def next_all(self, v: Coordinate) -> List[Coordinate]:
        """All the later releases of ``v`` in version order."""
        chain, i = self._located(v)
        return chain[i + 1 :]

    def is_latest(self, v: Coordinate) -> bool:
        return self.next(v) is None

    def latest(self, library: Library) -> Coordinate:
        """The latest version of a library.

        Raises
        ------
        :exc:`UnknownLibraryError`
        """
        return self.chain(library)[-1]

    def latests(self) -> Set[Coordinate]:
        """The latest version of every library."""
        self._check_frozen()
        return {chain[-1] for chain in self._chains.values()}

    def dependencies(self, v: Coordinate, transitive: bool = False) -> Set[Coordinate]:
        """Direct dependencies of ``v`` or its whole dependency tree.

        The tree never contains ``v`` itself, even when ``v`` sits on a cycle.
        """
        if transitive:
            return nx.descendants(self._g, v)
        return set(self._g.successors(v))

    def users(self, v: Coordinate, transitive: bool = False) -> Set[Coordinate]:
        """Direct users of ``v`` or all of its transitive users, ``v`` excluded."""
        if transitive:
            return nx.ancestors(self._g, v)
        return set(self._g.predecessors(v))

    def dependency_libraries(self, v: Coordinate) -> Set[Library]:
        """Libraries of the direct dependencies of ``v``."""
        return {w.library for w in self._g.successors(v)}


class LibraryGraph:
    """The library-level elevation of a :class:`DependencyGraph`.

    An edge ``l1 -> l2`` has as weight the number of distinct versions of ``l1``
    that depend on at least one version of ``l2``.
    """

    def __init__(self, g: nx.DiGraph) -> None:
        self._g = nx.freeze(g)

    @property
    def digraph(self) -> nx.DiGraph:
        return self._g

    @property
    def nodes(self) -> List[Library]:
        return sorted(self._g.nodes)

    def __contains__(self, library: Library) -> bool:
        return library in self._g

    def edges(self) -> Iterator[Tuple[Library, Library, int]]:
        for u, v, w in sorted(self._g.edges(data="weight")):
            yield u, v, w

    def _node(self, library: Library) -> dict:
        try:
            return self._g.nodes[library]
        except KeyError:
            raise UnknownLibraryError(f"Unknown library '{library}'.")

    def weight(self, source: Library, target: Library) -> int:
        """Edge weight, 0 when there is no edge."""
        data = self._g.get_edge_data(source, target)
        return 0 if data is None else data["weight"]

    def in_weight_sum(self, library: Library) -> int:
        return self._node(library)["in_weight"]

    def out_weight_sum(self, library: Library) -> int:
        return self._node(library)["out_weight"]

    def is_external(self, library: Library) -> bool:
        return self._node(library)["external"]

    def dependencies(self, library: Library) -> Set[Library]:
        """The libraries that ``library`` depends on."""
        self._node(library)
        return set(self._g.successors(library))

    def users(self, library: Library) -> Set[Library]:
        """The libraries depending on ``library``."""
        self._node(library)
        return set(self._g.predecessors(library))


def elevate(g: DependencyGraph) -> LibraryGraph:
    """Collapse a frozen dependency graph onto its libraries.

    Parameters
    ----------
    g : DependencyGraph

    Returns
    -------
    gl : LibraryGraph
        Libraries only known through external stubs are flagged ``external``.
        A version depending on another version of its own library yields a
        self-edge.
    """
    weights = defaultdict(int)  # type: Dict[Tuple[Library, Library], int]
    for record in g.vertices():
        source = record.coordinate.library
        for target in g.dependency_libraries(record.coordinate):
            weights[(source, target)] += 1

    studied = set(g.libraries)
    lg = nx.DiGraph()
    for record in g.vertices():
        lib = record.coordinate.library
        if lib not in lg:
            lg.add_node(lib, external=lib not in studied, in_weight=0, out_weight=0)
    for (source, target), w in weights.items():
        lg.add_edge(source, target, weight=w)
        lg.nodes[source]["out_weight"] += w
        lg.nodes[target]["in_weight"] += w

    log.info(
        "Library graph: %d libraries, %d weighted edges",
        lg.number_of_nodes(),
        lg.number_of_edges(),
    )
    return LibraryGraph(lg)
