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

"""Tests for the dependency graph and its library-level elevation."""

from collections import deque

import pytest
from hypothesis import given, settings

from custom_strategies import dependency_graphs
from toy import coordinate as c
from toy import day
from toy import library as lib
from mavendiversity.exceptions import DataError, DomainError, UnknownLibraryError
from mavendiversity.graph import Coordinate, DependencyGraph, Library, elevate


def test_toy_counts(toy):
    assert len(toy) == 9
    assert len(list(toy.dep_edges())) == 5
    assert toy.libraries == [lib("a"), lib("b"), lib("c"), lib("d")]
    assert toy.snapshot == day(9)


def test_toy_chains(toy):
    assert toy.chain(lib("a")) == [c("a1"), c("a3"), c("a2")]
    assert toy.next(c("a1")) == c("a3")
    assert toy.next(c("a2")) is None
    assert toy.previous(c("a2")) == c("a3")
    assert toy.previous(c("a1")) is None
    assert toy.next_all(c("a1")) == [c("a3"), c("a2")]
    assert toy.rank(c("a3")) == 2
    assert toy.latest(lib("c")) == c("c3")
    assert toy.latests() == {c("a2"), c("b2"), c("c3"), c("d1")}
    assert toy.is_latest(c("d1"))


def test_toy_neighbourhoods(toy):
    assert toy.dependencies(c("a2")) == {c("b2"), c("c2")}
    assert toy.dependencies(c("a2"), transitive=True) == {c("b2"), c("c2"), c("d1")}
    assert toy.users(c("d1")) == {c("c2"), c("c3")}
    assert toy.users(c("d1"), transitive=True) == {c("c2"), c("c3"), c("a2")}
    assert toy.dependency_libraries(c("a2")) == {lib("b"), lib("c")}


def test_precedence_edges(toy):
    edges = set(toy.precedence_edges())
    assert (c("a1"), c("a3")) in edges
    assert (c("a3"), c("a2")) in edges
    assert len(edges) == 5


def test_unknown_library(toy):
    with pytest.raises(UnknownLibraryError, match="Unknown library 'org.example:z'"):
        toy.chain(lib("z"))


def test_duplicate_vertex():
    g = DependencyGraph()
    g.add_vertex(c("a1"), day(1))
    with pytest.raises(DataError, match="Duplicate coordinate"):
        g.add_vertex(c("a1"), day(2))


def test_repeated_dependency_is_ignored():
    g = DependencyGraph()
    g.add_vertex(c("a1"), day(1))
    g.add_vertex(c("b1"), day(1))
    g.add_dependency(c("a1"), c("b1"), "compile")
    g.add_dependency(c("a1"), c("b1"), "test")
    g.freeze()
    assert list(g.dep_edges()) == [(c("a1"), c("b1"), "compile")]


def test_frozen_graph_is_read_only(toy):
    with pytest.raises(DomainError, match="frozen"):
        toy.add_vertex(c("a4"), day(10))


def test_queries_need_a_frozen_graph():
    g = DependencyGraph()
    g.add_vertex(c("a1"), day(1))
    with pytest.raises(DomainError, match="must be frozen"):
        g.chain(lib("a"))


def test_snapshot():
    g = DependencyGraph()
    g.add_vertex(c("a1"), day(3))
    assert g.freeze(day(5)).snapshot == day(5)

    g = DependencyGraph()
    g.add_vertex(c("a1"), day(3))
    with pytest.raises(DataError, match="precedes the latest release"):
        g.freeze(day(2))

    with pytest.raises(DataError, match="Cannot derive a snapshot"):
        DependencyGraph().freeze()

    empty = DependencyGraph().freeze(day(1))
    assert len(empty) == 0
    assert empty.libraries == []


def test_external_vertices():
    g = DependencyGraph()
    g.add_vertex(c("a1"), day(1))
    ext = Coordinate("org.other", "x", "1.0")
    g.add_vertex(ext, external=True)
    g.add_dependency(c("a1"), ext)
    g.freeze()

    assert g.is_external(ext)
    assert g.released(ext) is None
    assert g.libraries == [lib("a")]
    assert g.external_libraries() == {Library("org.other", "x")}
    assert [r.coordinate for r in g.vertices(external=True)] == [ext]
    with pytest.raises(DomainError, match="external vertex"):
        g.next(ext)


def test_equal_keys_ordered_by_release_date():
    g = DependencyGraph()
    g.add_vertex(Coordinate("g", "a", "1.0.0"), day(2))
    g.add_vertex(Coordinate("g", "a", "1.0"), day(1))
    g.add_vertex(Coordinate("g", "a", "1"), day(2))
    g.freeze()
    assert [v.version for v in g.chain(Library("g", "a"))] == ["1.0", "1", "1.0.0"]


@pytest.mark.parametrize(
    "text,expected",
    [
        ("g:a:1.0", Coordinate("g", "a", "1.0")),
        (" g : a : 1.0 ", Coordinate("g", "a", "1.0")),
    ],
    ids=["plain", "padded"],
)
def test_coordinate_parse(text, expected):
    assert Coordinate.parse(text) == expected
    assert str(expected) == "g:a:1.0"


@pytest.mark.parametrize("text", ["g:a", "g:a:1.0:jar", "g::1.0", ""], ids=repr)
def test_coordinate_parse_fails(text):
    with pytest.raises(DataError, match="is not a 'group:artifact:version'"):
        Coordinate.parse(text)


def test_elevate_toy(toy):
    gl = elevate(toy)
    assert gl.nodes == [lib("a"), lib("b"), lib("c"), lib("d")]
    assert gl.dependencies(lib("a")) == {lib("b"), lib("c")}
    assert gl.users(lib("d")) == {lib("c")}
    assert gl.weight(lib("a"), lib("b")) == 2
    assert gl.weight(lib("a"), lib("c")) == 1
    assert gl.weight(lib("c"), lib("d")) == 2
    assert gl.weight(lib("b"), lib("a")) == 0
    assert gl.out_weight_sum(lib("a")) == 3
    assert gl.in_weight_sum(lib("d")) == 2
    assert not gl.is_external(lib("a"))
    assert list(gl.edges()) == [
        (lib("a"), lib("b"), 2),
        (lib("a"), lib("c"), 1),
        (lib("c"), lib("d"), 2),
    ]


def test_elevate_counts_distinct_source_versions():
    g = DependencyGraph()
    for v in ["1", "2"]:
        g.add_vertex(Coordinate("g", "a", v), day(1))
        g.add_vertex(Coordinate("g", "b", v), day(1))
    # a:1 uses both versions of b, that is one source version
    g.add_dependency(Coordinate("g", "a", "1"), Coordinate("g", "b", "1"))
    g.add_dependency(Coordinate("g", "a", "1"), Coordinate("g", "b", "2"))
    g.freeze()
    assert elevate(g).weight(Library("g", "a"), Library("g", "b")) == 1


def _reachable(g, v):
    seen, queue = set(), deque(g.digraph.successors(v))
    while queue:
        w = queue.popleft()
        if w not in seen:
            seen.add(w)
            queue.extend(g.digraph.successors(w))
    seen.discard(v)
    return seen


@settings(settings.get_profile("oracles"))
@given(g=dependency_graphs())
def test_reachability_against_breadth_first_search(g):
    for v in g.versions():
        assert g.dependencies(v, transitive=True) == _reachable(g, v)
        for w in g.dependencies(v, transitive=True):
            assert v in g.users(w, transitive=True)


@given(g=dependency_graphs())
def test_chains_are_sorted(g):
    for library in g.libraries:
        chain = g.chain(library)
        assert [g.rank(v) for v in chain] == list(range(1, len(chain) + 1))
        keys = [v.key for v in chain]
        assert keys == sorted(keys)


@given(g=dependency_graphs())
def test_direct_users_mirror_direct_dependencies(g):
    for v in g.versions():
        for w in g.dependencies(v):
            assert v in g.users(w)
        for u in g.users(v):
            assert v in g.dependencies(u)


@given(g=dependency_graphs())
def test_elevated_weights(g):
    gl = elevate(g)
    total = 0
    for source, target, w in gl.edges():
        assert 1 <= w <= len(g.chain(source))
        total += w
    assert total == sum(gl.out_weight_sum(library) for library in gl.nodes)
    assert total == sum(gl.in_weight_sum(library) for library in gl.nodes)
