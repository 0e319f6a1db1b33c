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

"""PageRank-style popularity of versions and libraries.

Version popularity follows the recurrence

    pop(v) = (1 - d) + d * sum(pop(i) for i in users(v))

either literally or with each contribution divided by the number of direct
dependencies of the user (``normalized``, the classic PageRank).  Library
popularity is a weighted PageRank on the library graph, where the share a user
library ``u`` passes to ``l`` is weighed by the in- and out-weights of ``l``
relative to all the libraries ``u`` depends on.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterator, List, Tuple

import networkx as nx
import numpy as np
import scipy.sparse as sp

from .exceptions import ConvergenceError, DivergenceError
from .graph import DependencyGraph, LibraryGraph

log = logging.getLogger(__name__)


class PopularityMode(str, enum.Enum):
    LITERAL = "literal"
    NORMALIZED = "normalized"


@dataclass(frozen=True)
class PopularityConfig:
    """Parameters of the popularity iterations.

    Attributes
    ----------
    damping : float
        Attenuation constant, strictly between 0 and 1.
    mode : PopularityMode
        Version-level recurrence, ``literal`` or ``normalized``.
    max_iterations : int
    tolerance : float
        Largest absolute change between two sweeps at convergence.
    """

    damping: float = 0.85
    mode: PopularityMode = PopularityMode.LITERAL
    max_iterations: int = 200
    tolerance: float = 1e-9


@dataclass
class PopularityScores:
    """Popularity score of every vertex of a graph.

    Attributes
    ----------
    scores : Dict[Hashable, float]
    config : PopularityConfig
    iterations : int
        Sweeps performed, 0 for the exact topological evaluation.
    residual : float
    """

    scores: Dict[Hashable, float]
    config: PopularityConfig = field(default_factory=PopularityConfig)
    iterations: int = 0
    residual: float = 0.0

    def __getitem__(self, key: Hashable) -> float:
        return self.scores[key]

    def __contains__(self, key: Hashable) -> bool:
        return key in self.scores

    def __len__(self) -> int:
        return len(self.scores)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.scores)

    def get(self, key: Hashable, default: Any = None) -> Any:
        return self.scores.get(key, default)

    def items(self) -> Iterator[Tuple[Hashable, float]]:
        return iter(self.scores.items())


def version_popularity(
    g: DependencyGraph, config: PopularityConfig = PopularityConfig()
) -> PopularityScores:
    """Popularity of every version.

    In ``literal`` mode acyclic graphs are evaluated exactly in topological
    order, cyclic ones by fixed-point iteration.  ``normalized`` mode always
    iterates.

    Raises
    ------
    :exc:`DivergenceError`
        If the literal recurrence keeps growing on a cyclic graph.
    :exc:`ConvergenceError`
        If the iteration does not reach the tolerance.
    """
    G = g.digraph
    mode = PopularityMode(config.mode)
    d = config.damping

    if mode is PopularityMode.LITERAL and nx.is_directed_acyclic_graph(G):
        scores = {}  # type: Dict[Hashable, float]
        # users come before their dependencies
        for v in nx.topological_sort(G):
            scores[v] = (1.0 - d) + d * sum(scores[i] for i in G.predecessors(v))
        log.info("Literal popularity evaluated exactly on %d versions", len(scores))
        return PopularityScores(scores, config)

    nodes = sorted(G.nodes)
    A = _adjacency(G, nodes)
    if mode is PopularityMode.NORMALIZED:
        A = _row_normalized(A)
    return _sweep(nodes, A, config, literal=mode is PopularityMode.LITERAL)


def library_popularity(
    gl: LibraryGraph, config: PopularityConfig = PopularityConfig()
) -> PopularityScores:
    """Weighted PageRank of every library.

    A user library ``u`` passes ``pop(u) * c_in * c_out`` to each library ``l``
    it depends on, where ``c_in = W_in(l) / sum(W_in(p) for p in D(u))`` and
    ``c_out = W_out(l) / sum(W_out(p) for p in D(u))``. A zero denominator
    falls back to an even share ``1 / |D(u)|``.

    Raises
    ------
    :exc:`ConvergenceError`
    """
    nodes = gl.nodes
    index = {n: i for i, n in enumerate(nodes)}
    rows, cols, vals = [], [], []  # type: Tuple[List[int], List[int], List[float]]
    for u in nodes:
        targets = sorted(gl.dependencies(u))
        if not targets:
            continue
        in_total = sum(gl.in_weight_sum(p) for p in targets)
        out_total = sum(gl.out_weight_sum(p) for p in targets)
        even = 1.0 / len(targets)
        for lib in targets:
            c_in = gl.in_weight_sum(lib) / in_total if in_total else even
            c_out = gl.out_weight_sum(lib) / out_total if out_total else even
            rows.append(index[u])
            cols.append(index[lib])
            vals.append(c_in * c_out)
    n = len(nodes)
    M = sp.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=float)
    return _sweep(nodes, M, config, literal=False)


def _adjacency(G: nx.DiGraph, nodes: List[Hashable]) -> sp.csr_matrix:
    if not nodes:
        return sp.csr_matrix((0, 0), dtype=float)
    return sp.csr_matrix(nx.to_scipy_sparse_array(G, nodelist=nodes, weight=None))


def _row_normalized(A: sp.csr_matrix) -> sp.csr_matrix:
    degree = np.asarray(A.sum(axis=1), dtype=float).ravel()
    inverse = np.divide(1.0, degree, out=np.zeros_like(degree), where=degree > 0)
    return sp.csr_matrix(sp.diags(inverse) @ A)


def _sweep(
    nodes: List[Hashable], A: sp.csr_matrix, config: PopularityConfig, *, literal: bool
) -> PopularityScores:
    """Jacobi iteration of ``x = (1 - d) + d * A^T x``.

    ``A[i, j]`` is the share of the score of ``i`` that flows to ``j``.
    """
    d = config.damping
    AT = A.transpose().tocsr()
    x = np.full(len(nodes), 1.0 - d)
    residual = 0.0
    first = None
    for k in range(1, config.max_iterations + 1):
        x_new = (1.0 - d) + d * (AT @ x)
        residual = float(np.max(np.abs(x_new - x))) if len(nodes) else 0.0
        x = x_new
        log.debug("Sweep %d: residual %.3e", k, residual)
        if not np.isfinite(residual):
            raise DivergenceError(
                "Literal popularity diverged, use the normalized mode instead.",
                residual=residual,
                iterations=k,
            )
        if residual <= config.tolerance:
            log.info("Popularity converged in %d sweeps (residual %.3e)", k, residual)
            return PopularityScores(
                {n: float(s) for n, s in zip(nodes, x)}, config, k, residual
            )
        if first is None:
            first = residual

    if literal and first is not None and residual > first:
        raise DivergenceError(
            f"Literal popularity diverged after {config.max_iterations} sweeps "
            f"(residual {residual:.3e}), use the normalized mode instead.",
            residual=residual,
            iterations=config.max_iterations,
        )
    raise ConvergenceError(
        f"Popularity did not converge within {config.max_iterations} sweeps "
        f"(last residual {residual:.3e}).",
        residual=residual,
        iterations=config.max_iterations,
    )
