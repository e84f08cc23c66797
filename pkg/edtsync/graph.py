#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
.. currentmodule:: edtsync.graph

Task graphs
***********

:class:`TaskGraph` is the immutable DAG every synchronization model
executes. Graphs come from the synthetic generators (:func:`gen_diamond`,
:func:`gen_chain`, :func:`gen_random_dag`, :func:`gen_wide`,
:func:`gen_dense_redundant`), from tiled polyhedral programs
(:class:`TiledProgram`, :func:`gen_wavefront`) or from graph JSON files::

    {"n": 4, "edges": [[0, 1], [0, 2], [1, 3], [2, 3]]}

"""

import os
import json
import random
import logging
from collections import namedtuple, deque

from edtsync import poly
from edtsync.exc import *

log = logging.getLogger(__name__)

GENERATORS = ['diamond', 'chain', 'wide', 'random', 'dense-redundant', 'wavefront']


class GraphStats(namedtuple('GraphStats', 'n edge_count max_out_degree r_approx source_count')):
    """Size figures of a task graph; ``r_approx`` is the widest level
    under longest-path leveling."""

    __slots__ = ()

    def as_dict(self):
        return dict(self._asdict())


class TaskGraph(object):
    """Directed acyclic graph over dense task ids ``0 .. n-1``.

    :param n: task count
    :param edges: iterable of ``(src, dst)``; duplicates are merged
    :param work_units: per-task synthetic work, zeros by default
    :param program: the :class:`TiledProgram` the graph was instantiated
        from, if any
    :raises: :exc:`edtsync.exc.EdtCycleError` if the edges form a cycle,
        :exc:`edtsync.exc.EdtContractError` on out of range ids or self loops

    Example::

        >>> g = TaskGraph(3, [(0, 2), (1, 2), (0, 2)])
        >>> g.succ, g.pred_count, g.sources()
        ([[2], [2], []], [0, 0, 2], [0, 1])

    """

    def __init__(self, n, edges=(), work_units=None, program=None):
        if n < 0:
            raise EdtContractError("negative task count %d" % n)
        self.n = n
        succ = [set() for _ in range(n)]
        for src, dst in edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise EdtContractError("edge %d->%d outside 0..%d" % (src, dst, n - 1))
            if src == dst:
                raise EdtContractError("self loop on task %d" % src)
            succ[src].add(dst)
        self.succ = [sorted(s) for s in succ]
        pred = [[] for _ in range(n)]
        for src in range(n):
            for dst in self.succ[src]:
                pred[dst].append(src)
        self.pred = pred
        self.pred_count = [len(p) for p in pred]
        if work_units is None:
            work_units = [0] * n
        if len(work_units) != n:
            raise EdtContractError("%d work units for %d tasks" % (len(work_units), n))
        self.work_units = [int(w) for w in work_units]
        self.program = program
        self.order = self._topological_order()

    def __repr__(self):
        return '<TaskGraph n=%d edges=%d>' % (self.n, self.edge_count)

    def __eq__(self, other):
        return (isinstance(other, TaskGraph) and self.n == other.n
                and self.succ == other.succ and self.work_units == other.work_units)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    @property
    def edge_count(self):
        return sum(self.pred_count)

    def edges(self):
        """Sorted list of ``(src, dst)`` pairs."""
        return [(src, dst) for src in range(self.n) for dst in self.succ[src]]

    def sources(self):
        return [t for t in range(self.n) if not self.pred_count[t]]

    def _topological_order(self):
        indegree = list(self.pred_count)
        ready = deque(t for t in range(self.n) if not indegree[t])
        order = []
        while ready:
            t = ready.popleft()
            order.append(t)
            for s in self.succ[t]:
                indegree[s] -= 1
                if not indegree[s]:
                    ready.append(s)
        if len(order) != self.n:
            raise EdtCycleError("graph has a cycle through tasks %s"
                                % sorted(t for t in range(self.n) if indegree[t])[:10])
        return order

    def levels(self):
        """Longest-path level of every task (sources are level 0)."""
        level = [0] * self.n
        for t in self.order:
            for s in self.succ[t]:
                level[s] = max(level[s], level[t] + 1)
        return level

    def reachable(self, src):
        """Set of tasks reachable from ``src`` through at least one edge."""
        seen = set()
        stack = list(self.succ[src])
        while stack:
            t = stack.pop()
            if t not in seen:
                seen.add(t)
                stack.extend(self.succ[t])
        return seen

    ## JSON

    def to_json(self):
        """Graph JSON document; ``work_units`` only when not all zero."""
        doc = {'n': self.n, 'edges': [list(e) for e in self.edges()]}
        if any(self.work_units):
            doc['work_units'] = list(self.work_units)
        return doc

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, doc):
        """Build a graph from a decoded graph JSON document.

        :raises: :exc:`edtsync.exc.EdtParseError` on a malformed document

        """
        try:
            n = doc['n']
            edges = [(int(s), int(d)) for s, d in doc.get('edges', [])]
            work_units = doc.get('work_units')
        except (KeyError, TypeError, ValueError) as e:
            raise EdtParseError("malformed graph document: %s" % e)
        if not isinstance(n, int) or isinstance(n, bool):
            raise EdtParseError("'n' must be an integer, got %r" % (n,))
        return cls(n, edges, work_units)

    @classmethod
    def loads(cls, text):
        try:
            doc = json.loads(text)
        except ValueError as e:
            raise EdtParseError("invalid JSON: %s" % e, getattr(e, 'lineno', None))
        return cls.from_json(doc)

    @classmethod
    def load(cls, path):
        with open(path) as f:
            return cls.loads(f.read())

    def save(self, path):
        with open(path, 'w') as f:
            f.write(self.dumps())
            f.write('\n')


## synthetic generators

def gen_diamond(work_units=0):
    """Four tasks, the join task 3 having two predecessors.

    Example::

        >>> gen_diamond().pred_count
        [0, 1, 1, 2]

    """
    return TaskGraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)], [work_units] * 4)


def gen_chain(n, work_units=0):
    """Path ``0 -> 1 -> .. -> n-1``."""
    _check_size(n)
    return TaskGraph(n, [(i, i + 1) for i in range(n - 1)], [work_units] * n)


def gen_random_dag(n, edge_prob, seed, work_units=0):
    """Edges ``i -> j`` (``i < j``) each kept with probability
    ``edge_prob``, drawn from :class:`random.Random` seeded by ``seed``."""
    _check_size(n)
    if not 0.0 <= edge_prob <= 1.0:
        raise EdtContractError("edge probability %r outside [0, 1]" % edge_prob)
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_prob]
    return TaskGraph(n, edges, [work_units] * n)


def gen_wide(n, work_units=0):
    """One source fanning out to ``n - 2`` parallel tasks joining into one
    sink. Below three tasks this degenerates to a chain."""
    _check_size(n)
    if n < 3:
        return gen_chain(n, work_units)
    sink = n - 1
    edges = [(0, i) for i in range(1, sink)] + [(i, sink) for i in range(1, sink)]
    return TaskGraph(n, edges, [work_units] * n)


def gen_dense_redundant(n, work_units=0):
    """Total order carrying every transitively redundant forward edge."""
    _check_size(n)
    return TaskGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)], [work_units] * n)


def _check_size(n):
    if n < 1:
        raise EdtContractError("task count must be >= 1, got %d" % n)


## polyhedral graphs

class TiledProgram(object):
    """Tiled statements and the tile dependences between them.

    Tasks are the tiles of every statement. A task id is the statement
    offset (statements taken in ``domains`` order) plus the lexicographic
    rank of its tile coordinates.

    :param domains: ordered mapping statement name -> tile points
    :param deps: list of ``(deltaT, source_stmt, target_stmt)`` where
        ``deltaT`` is a tile dependence over ``(T_s | T_t | params)``
    :param param_values: values substituted for the parameters
    :param cap: enumeration cap passed to :mod:`edtsync.poly`

    """

    def __init__(self, domains, deps, param_values=(), cap=None):
        self.param_values = tuple(param_values)
        self.cap = cap
        self.statements = list(domains)
        self.domains = {}
        self.offsets = {}
        self.coords = []
        offset = 0
        for stmt in self.statements:
            points = sorted(set(tuple(p) for p in domains[stmt]))
            self.domains[stmt] = poly.TileDomain(points)
            self.offsets[stmt] = offset
            self.coords.extend((stmt, p) for p in points)
            offset += len(points)
        self._rank = dict((c, i) for i, c in enumerate(self.coords))
        self.deps = []
        for deltaT, src, dst in deps:
            if src not in self.domains or dst not in self.domains:
                raise EdtContractError("dependence %s->%s names an unknown statement" % (src, dst))
            self.deps.append((deltaT, src, dst))

    def __repr__(self):
        return '<TiledProgram statements=%s tasks=%d deps=%d>' % (
            self.statements, len(self.coords), len(self.deps))

    @property
    def n(self):
        return len(self.coords)

    def rank(self, stmt, tile):
        """Task id of a tile (f_rank)."""
        return self._rank[(stmt, tuple(tile))]

    def predecessors(self, task):
        """Sorted in-domain predecessor task ids of ``task`` and the number
        of candidate source tiles scanned to find them."""
        stmt, tile = self.coords[task]
        found = set()
        scanned = 0
        for deltaT, src, dst in self.deps:
            if dst != stmt:
                continue
            exclude = tile if src == dst else None
            points, cost = poly.predecessor_points(deltaT, tile, self.param_values,
                                                   self.domains[src], exclude, self.cap)
            scanned += cost
            found.update(self.rank(src, p) for p in points)
        return sorted(found), scanned

    def count_predecessors(self, task):
        """Number of distinct predecessors of ``task`` (f_count)."""
        return len(self.predecessors(task)[0])

    def to_graph(self, work_units=0):
        """Instantiate the task graph; self pairs are dropped and pairs
        found through several dependences become one edge."""
        edges = []
        for task in range(self.n):
            edges.extend((p, task) for p in self.predecessors(task)[0])
        log.debug("%r instantiated with %d edges", self, len(edges))
        return TaskGraph(self.n, edges, [work_units] * self.n, program=self)


def from_tile_dependences(domains, deps, param_values=(), cap=None, work_units=0):
    """Task graph of tiled statements, see :class:`TiledProgram`.

    Example::

        >>> D = poly.RationalPolyhedron.box([(0, 7)])
        >>> delta = poly.RationalPolyhedron(2, 0, [[-1, 1, -1], [1, -1, 1], [1, 0, 0], [0, -1, 7]])
        >>> G = poly.TilingSpec([4])
        >>> g = from_tile_dependences({'S': poly.tile_domain_points(D, G)},
        ...                           [(poly.tile_dependence(
        ...                               poly.DependenceRelation('S', 'S', delta, 1, 1), G, G), 'S', 'S')])
        >>> g.n, g.edges()
        (2, [(0, 1)])

    """
    return TiledProgram(domains, deps, param_values, cap).to_graph(work_units)


def wavefront_program(tiles, tile_size=2, cap=None):
    """Two-dimensional wavefront: iterations ``(i, j)`` of an
    ``M x M`` square (``M = tiles * tile_size`` is the parameter) depend on
    ``(i-1, j)`` and ``(i, j-1)``; tiled by ``tile_size`` in both
    dimensions."""
    if tiles < 1 or tile_size < 1:
        raise EdtContractError("wavefront needs tiles >= 1 and tile_size >= 1")
    extent = tiles * tile_size
    # columns: i_s, j_s, i_t, j_t, M, b
    domain_rows = [
        [1, 0, 0, 0, 0, 0], [-1, 0, 0, 0, 1, -1],
        [0, 1, 0, 0, 0, 0], [0, -1, 0, 0, 1, -1],
        [0, 0, 1, 0, 0, 0], [0, 0, -1, 0, 1, -1],
        [0, 0, 0, 1, 0, 0], [0, 0, 0, -1, 1, -1],
    ]
    G = poly.TilingSpec([tile_size, tile_size])
    deps = []
    for di, dj in [(1, 0), (0, 1)]:
        rows = domain_rows + [
            [-1, 0, 1, 0, 0, -di], [1, 0, -1, 0, 0, di],
            [0, -1, 0, 1, 0, -dj], [0, 1, 0, -1, 0, dj],
        ]
        rel = poly.DependenceRelation('S', 'S', poly.RationalPolyhedron(4, 1, rows), 2, 2)
        deps.append((poly.tile_dependence(rel, G, G), 'S', 'S'))
    D = poly.RationalPolyhedron(2, 1, [[1, 0, 0, 0], [-1, 0, 1, -1], [0, 1, 0, 0], [0, -1, 1, -1]])
    tiles_of_D = poly.tile_domain_points(D, G, (extent,), [(0, extent - 1)] * 2, cap)
    return TiledProgram({'S': tiles_of_D}, deps, (extent,), cap)


def gen_wavefront(tiles, work_units=0, tile_size=2, cap=None):
    """``tiles x tiles`` wavefront task graph with ``task = i * tiles + j``.

    Example::

        >>> g = gen_wavefront(2)
        >>> g.n, g.edges(), g.sources()
        (4, [(0, 1), (0, 2), (1, 3), (2, 3)], [0])

    """
    return wavefront_program(tiles, tile_size, cap).to_graph(work_units)


## transformations

def prescriber_expand(g, rounds):
    """Add prescriber tasks round by round: every task with more than one
    predecessor and no prescriber yet gets a new task with edges to each
    of its direct predecessors.

    :param rounds: maximum number of rounds; stops early at a fixpoint
    :returns: ``(TaskGraph, per-round prescriber counts)``

    Example::

        >>> g, counts = prescriber_expand(gen_diamond(), 2)
        >>> counts, g.succ[4]
        ([1, 2], [1, 2])

    """
    if rounds < 1:
        raise EdtContractError("rounds must be >= 1, got %d" % rounds)
    succ = [list(s) for s in g.succ]
    pred = [list(p) for p in g.pred]
    prescribed = set()
    counts = []
    for _ in range(rounds):
        targets = [t for t in range(len(succ)) if len(pred[t]) > 1 and t not in prescribed]
        if not targets:
            break
        snapshot = dict((t, list(pred[t])) for t in targets)
        for t in targets:
            p = len(succ)
            succ.append(sorted(snapshot[t]))
            pred.append([])
            for q in snapshot[t]:
                pred[q].append(p)
            prescribed.add(t)
        counts.append(len(targets))
        log.debug("prescriber round %d: %d new tasks", len(counts), len(targets))
    n = len(succ)
    edges = [(s, d) for s in range(n) for d in succ[s]]
    return TaskGraph(n, edges, g.work_units + [0] * (n - g.n)), counts


def stats(g):
    """:class:`GraphStats` of a graph.

    Example::

        >>> stats(gen_wide(10))
        GraphStats(n=10, edge_count=16, max_out_degree=8, r_approx=8, source_count=1)

    """
    widths = {}
    for level in g.levels():
        widths[level] = widths.get(level, 0) + 1
    return GraphStats(
        n=g.n,
        edge_count=g.edge_count,
        max_out_degree=max([len(s) for s in g.succ] or [0]),
        r_approx=max(widths.values()) if widths else 0,
        source_count=len(g.sources()),
    )


def build_graph(name, n=1000, tiles=8, edge_prob=0.1, seed=0, work_units=0, cap=None):
    """Resolve a graph spec: a generator name from :data:`GENERATORS`
    or the path of a graph JSON file.

    :raises: :exc:`edtsync.exc.EdtValidationError` when ``name`` is neither

    """
    if name == 'diamond':
        return gen_diamond(work_units)
    elif name == 'chain':
        return gen_chain(n, work_units)
    elif name == 'wide':
        return gen_wide(n, work_units)
    elif name == 'random':
        return gen_random_dag(n, edge_prob, seed, work_units)
    elif name == 'dense-redundant':
        return gen_dense_redundant(n, work_units)
    elif name == 'wavefront':
        return gen_wavefront(tiles, work_units, cap=cap)
    elif os.path.isfile(name):
        g = TaskGraph.load(name)
        if work_units and not any(g.work_units):
            g.work_units = [work_units] * g.n
        return g
    raise EdtValidationError("Unknown graph %r, choose from %s or give a graph JSON path"
                             % (name, ', '.join(GENERATORS)))
