#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
.. currentmodule:: edtsync.poly

Polyhedral kernel
*****************

Exact rational H-representation polyhedra and the operations needed to
derive inter-tile (task) dependences from pre-tiling dependences:

    * compression of a polyhedron by an orthogonal tiling
      (:func:`image_inverse_tiling`),
    * the intra-tile offset box (:func:`u_box`) and the constraint-shifting
      over-approximation of the direct sum with it (:func:`inflate`),
    * tile dependence derivation (:func:`tile_dependence`),
    * Fourier-Motzkin projection (:func:`fm_project`), the classical
      baseline, and the tiled product system it is applied to
      (:func:`tiled_system`),
    * bounded integer enumeration used as the exact oracle.

A constraint row ``(a_1 .. a_d, p_1 .. p_m, b)`` means
``a.x + p.params + b >= 0``. All arithmetic uses :class:`fractions.Fraction`.

Text format::

    dims 1 params 0
    4 0
    -4 7

"""

import math
import time
import random
import logging
import itertools
from fractions import Fraction
from functools import reduce

from edtsync.exc import *

log = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 10 ** 7


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def integer_row(row):
    """Scale a rational row to integers (positive factor).

    Example::

        >>> integer_row((Fraction(1, 2), Fraction(-3, 4), 1))
        [2, -3, 4]

    """
    den = reduce(_lcm, (Fraction(v).denominator for v in row), 1)
    return [int(Fraction(v) * den) for v in row]


class TilingSpec(object):
    """Orthogonal tiling: a positive integer diagonal matrix G given by
    its diagonal.

    :param diag: tile sizes per dimension
    :type diag: sequence of int
    :raises: :exc:`edtsync.exc.EdtContractError` on a size below 1

    Example::

        >>> TilingSpec([4, 2]).tile_of((7, -1))
        (1, -1)

    """

    __slots__ = ('diag',)

    def __init__(self, diag):
        diag = tuple(int(g) for g in diag)
        if any(g < 1 for g in diag):
            raise EdtContractError("tile sizes must be >= 1, got %r" % (diag,))
        self.diag = diag

    def __repr__(self):
        return '<TilingSpec %s>' % list(self.diag)

    def __eq__(self, other):
        return isinstance(other, TilingSpec) and self.diag == other.diag

    def __hash__(self):
        return hash(self.diag)

    def __len__(self):
        return len(self.diag)

    @classmethod
    def identity(cls, dim):
        return cls([1] * dim)

    def combine(self, other):
        """Block-diagonal tiling applying ``self`` then ``other`` to the
        concatenated spaces."""
        return TilingSpec(self.diag + other.diag)

    def tile_of(self, point):
        """Tile coordinates of an integer point, floors toward -inf so
        that ``I = G.T + X`` with ``0 <= X <= g - 1`` for every integer."""
        return tuple(i // g for i, g in zip(point, self.diag))

    def offsets(self):
        """All integer intra-tile offsets X, ``0 <= X <= diag(G) - 1``."""
        return itertools.product(*[range(g) for g in self.diag])


class RationalPolyhedron(object):
    """Polyhedron ``{x : A.x + P.params + b >= 0}`` over ``dim`` set
    dimensions and ``n_params`` parameters.

    Rows are normalized on construction: coefficients become
    :class:`fractions.Fraction`, trivially true rows are dropped,
    duplicates removed and rows sorted, so ``==`` is structural equality.
    A trivially false row makes the polyhedron explicitly empty, stored as
    the single row ``(0, .., 0, -1)``.

    Example::

        >>> P = RationalPolyhedron(1, 0, [[-1, 7], [1, 0], [0, 3]])
        >>> P.rows
        ((Fraction(-1, 1), Fraction(7, 1)), (Fraction(1, 1), Fraction(0, 1)))
        >>> P.contains((7,)), P.contains((8,))
        (True, False)

    """

    def __init__(self, dim, n_params=0, rows=()):
        if dim < 0 or n_params < 0:
            raise EdtContractError("negative dimension count")
        self.dim = dim
        self.n_params = n_params
        width = dim + n_params + 1
        kept = set()
        self.empty = False
        for row in rows:
            row = tuple(Fraction(v) for v in row)
            if len(row) != width:
                raise EdtContractError("row %r has %d entries, expected %d"
                                       % (row, len(row), width))
            if not any(row[:-1]):
                if row[-1] < 0:
                    self.empty = True
                continue
            kept.add(row)
        if self.empty:
            self.rows = ((Fraction(0),) * (width - 1) + (Fraction(-1),),)
        else:
            self.rows = tuple(sorted(kept))

    def __repr__(self):
        return '<RationalPolyhedron dims=%d params=%d rows=%d%s>' % (
            self.dim, self.n_params, len(self.rows), ' empty' if self.empty else '')

    def __eq__(self, other):
        return (isinstance(other, RationalPolyhedron) and self.dim == other.dim
                and self.n_params == other.n_params and self.rows == other.rows)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.dim, self.n_params, self.rows))

    def __len__(self):
        return len(self.rows)

    @property
    def width(self):
        return self.dim + self.n_params + 1

    @classmethod
    def box(cls, bounds, n_params=0):
        """Hyper-rectangle ``lo_i <= x_i <= hi_i``."""
        dim = len(bounds)
        rows = []
        for i, (lo, hi) in enumerate(bounds):
            low = [0] * (dim + n_params + 1)
            low[i], low[-1] = 1, -Fraction(lo)
            high = [0] * (dim + n_params + 1)
            high[i], high[-1] = -1, Fraction(hi)
            rows.extend([low, high])
        return cls(dim, n_params, rows)

    @classmethod
    def empty_set(cls, dim, n_params=0):
        return cls(dim, n_params, [[0] * (dim + n_params) + [-1]])

    def set_coeffs(self, row):
        return row[:self.dim]

    def param_coeffs(self, row):
        return row[self.dim:self.dim + self.n_params]

    def intersect(self, other):
        """Conjunction of the constraints of both polyhedra."""
        if (self.dim, self.n_params) != (other.dim, other.n_params):
            raise EdtContractError("intersecting %r with %r" % (self, other))
        return RationalPolyhedron(self.dim, self.n_params, self.rows + other.rows)

    def substitute_params(self, param_values):
        """Fix the parameters to concrete values.

        :returns: polyhedron with ``n_params == 0``

        """
        param_values = tuple(param_values)
        if len(param_values) != self.n_params:
            raise EdtContractError("expected %d parameter values, got %d"
                                   % (self.n_params, len(param_values)))
        rows = []
        for row in self.rows:
            b = row[-1] + sum(p * v for p, v in zip(self.param_coeffs(row), param_values))
            rows.append(row[:self.dim] + (b,))
        return RationalPolyhedron(self.dim, 0, rows)

    def contains(self, point, param_values=()):
        """Whether a (rational) point satisfies every constraint."""
        if len(point) != self.dim or len(param_values) != self.n_params:
            raise EdtContractError("point %r / params %r do not match %r"
                                   % (point, param_values, self))
        values = tuple(point) + tuple(param_values)
        for row in self.rows:
            if sum(c * v for c, v in zip(row, values)) + row[-1] < 0:
                return False
        return True

    ## text format

    def to_text(self):
        """Serialize to the polyhedron text format."""
        lines = ['dims %d params %d' % (self.dim, self.n_params)]
        for row in self.rows:
            lines.append(' '.join(str(v) for v in row))
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text):
        """Parse the polyhedron text format. Blank lines and ``#``
        comments are ignored.

        :raises: :exc:`edtsync.exc.EdtParseError` with the line number

        """
        header = None
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if header is None:
                if len(tokens) != 4 or tokens[0] != 'dims' or tokens[2] != 'params':
                    raise EdtParseError("expected 'dims <d> params <p>', got %r" % line, lineno)
                try:
                    header = (int(tokens[1]), int(tokens[3]))
                except ValueError:
                    raise EdtParseError("dimension counts must be integers", lineno)
                if min(header) < 0:
                    raise EdtParseError("dimension counts must be >= 0", lineno)
                continue
            if len(tokens) != header[0] + header[1] + 1:
                raise EdtParseError("expected %d coefficients, got %d"
                                    % (header[0] + header[1] + 1, len(tokens)), lineno)
            try:
                rows.append([Fraction(t) for t in tokens])
            except (ValueError, ZeroDivisionError):
                raise EdtParseError("not a rational in %r" % line, lineno)
        if header is None:
            raise EdtParseError("missing 'dims <d> params <p>' header", 1)
        return cls(header[0], header[1], rows)


class DependenceRelation(object):
    """Dependence between iterations of a source and a target statement,
    as a polyhedron over ``(I_s | I_t | params)``.

    :raises: :exc:`edtsync.exc.EdtContractError` when the split does not
        match ``delta.dim``

    """

    def __init__(self, source_stmt, target_stmt, delta, source_dim, target_dim):
        if source_dim + target_dim != delta.dim:
            raise EdtContractError("split %d+%d does not match %r"
                                   % (source_dim, target_dim, delta))
        self.source_stmt = source_stmt
        self.target_stmt = target_stmt
        self.delta = delta
        self.source_dim = source_dim
        self.target_dim = target_dim

    def __repr__(self):
        return '<DependenceRelation %s->%s %r>' % (self.source_stmt, self.target_stmt, self.delta)


## compression and inflation

def image_inverse_tiling(D, G):
    """Image of ``D`` by ``G^-1``: substitutes ``I = G.T`` in every
    constraint, i.e. scales set column ``i`` by ``g_i``.

    Example::

        >>> P = image_inverse_tiling(RationalPolyhedron(1, 0, [[1, 0], [-1, 7]]), TilingSpec([4]))
        >>> [[int(v) for v in row] for row in P.rows]
        [[-4, 7], [4, 0]]

    :raises: :exc:`edtsync.exc.EdtContractError` on a dimension mismatch

    """
    if len(G) != D.dim:
        raise EdtContractError("tiling %r does not match %r" % (G, D))
    if D.empty:
        return D
    rows = []
    for row in D.rows:
        rows.append(tuple(a * g for a, g in zip(row[:D.dim], G.diag)) + row[D.dim:])
    return RationalPolyhedron(D.dim, D.n_params, rows)


def u_box(G):
    """Box of fractional intra-tile offsets ``-(g_i - 1)/g_i <= Y_i <= 0``."""
    dim = len(G)
    rows = []
    for i, g in enumerate(G.diag):
        low = [0] * (dim + 1)
        low[i], low[-1] = 1, Fraction(g - 1, g)
        high = [0] * (dim + 1)
        high[i] = -1
        rows.extend([low, high])
    return RationalPolyhedron(dim, 0, rows)


def c_max(a, G):
    """Outward shift making ``a.T + b + c_max >= 0`` contain ``P (+) U``."""
    return sum((ai * Fraction(g - 1, g) for ai, g in zip(a, G.diag) if ai > 0), Fraction(0))


def inflate(P, G):
    """Shift every constraint of ``P`` outwards by :func:`c_max` so that
    the result contains ``P (+) u_box(G)``. Row count and coefficient
    vectors are unchanged.

    Example::

        >>> inflate(RationalPolyhedron(1, 0, [[2, -1]]), TilingSpec([4])).rows[0][-1]
        Fraction(1, 2)

    """
    if len(G) != P.dim:
        raise EdtContractError("tiling %r does not match %r" % (G, P))
    if P.empty:
        return P
    rows = [row[:-1] + (row[-1] + c_max(row[:P.dim], G),) for row in P.rows]
    return RationalPolyhedron(P.dim, P.n_params, rows)


def tile_dependence(rel, Gs, Gt):
    """Inter-tile dependence polyhedron over ``(T_s | T_t | params)``:
    the inflation of ``image(delta, G_st^-1)`` by the block-diagonal tiling
    ``G_st``. Contains every tile pair holding a dependent iteration pair.
    """
    if len(Gs) != rel.source_dim or len(Gt) != rel.target_dim:
        raise EdtContractError("tilings %r, %r do not match %r" % (Gs, Gt, rel))
    G = Gs.combine(Gt)
    return inflate(image_inverse_tiling(rel.delta, G), G)


## projection baseline

def _primitive(row, n_coeffs):
    """Integer row scaled so its coefficient part has gcd 1."""
    row = integer_row(row)
    g = reduce(math.gcd, (abs(v) for v in row[:n_coeffs]), 0)
    if g > 1:
        return tuple(v // g for v in row[:n_coeffs]) + (Fraction(row[-1], g),)
    return tuple(row[:n_coeffs]) + (Fraction(row[-1]),)


def _prune(rows, n_coeffs):
    """Drop duplicates and dominated rows; ``None`` if infeasible."""
    tightest = {}
    for row in rows:
        row = _primitive(row, n_coeffs)
        key = row[:n_coeffs]
        if not any(key):
            if row[-1] < 0:
                return None
            continue
        if key not in tightest or row[-1] < tightest[key]:
            tightest[key] = row[-1]
    return [key + (b,) for key, b in tightest.items()]


def fm_project(P, eliminate):
    """Fourier-Motzkin elimination of the set dimensions in
    ``eliminate``. Only syntactic redundancy (duplicate rows and rows
    dominated by a parallel tighter row) is pruned.

    :returns: polyhedron over the kept dimensions, in their original order

    Example::

        >>> fm_project(RationalPolyhedron(2, 0, [[1, -1, 0], [0, 1, -2]]), [1]).rows
        ((Fraction(1, 1), Fraction(-2, 1)),)

    """
    eliminate = set(eliminate)
    if any(not 0 <= k < P.dim for k in eliminate):
        raise EdtContractError("invalid dimensions %r for %r" % (sorted(eliminate), P))
    keep = [i for i in range(P.dim) if i not in eliminate]
    if P.empty:
        return RationalPolyhedron.empty_set(len(keep), P.n_params)
    n_coeffs = P.dim + P.n_params
    rows = _prune(P.rows, n_coeffs)
    pending = set(eliminate)
    while pending and rows is not None:
        def cost(k):
            pos = sum(1 for r in rows if r[k] > 0)
            neg = sum(1 for r in rows if r[k] < 0)
            return pos * neg - pos - neg, k
        k = min(pending, key=cost)
        pending.discard(k)
        pos = [r for r in rows if r[k] > 0]
        neg = [r for r in rows if r[k] < 0]
        combined = [r for r in rows if r[k] == 0]
        for p in pos:
            for q in neg:
                combined.append(tuple(-q[k] * u + p[k] * v for u, v in zip(p, q)))
        rows = _prune(combined, n_coeffs)
    if rows is None:
        return RationalPolyhedron.empty_set(len(keep), P.n_params)
    params = range(P.dim, P.dim + P.n_params + 1)
    return RationalPolyhedron(len(keep), P.n_params,
                              [[r[i] for i in keep] + [r[j] for j in params] for r in rows])


def tiled_system(rel, Gs, Gt):
    """Pre-tiling dependence rewritten in ``(T_s, T_t, X_s, X_t | params)``
    with ``I = G.T + X`` and ``0 <= X <= g - 1``; projecting the X
    dimensions out of it yields the tile dependence exactly."""
    if len(Gs) != rel.source_dim or len(Gt) != rel.target_dim:
        raise EdtContractError("tilings %r, %r do not match %r" % (Gs, Gt, rel))
    G = Gs.combine(Gt)
    d, m = rel.delta.dim, rel.delta.n_params
    if rel.delta.empty:
        return RationalPolyhedron.empty_set(2 * d, m)
    rows = []
    for row in rel.delta.rows:
        a = row[:d]
        rows.append(tuple(ai * g for ai, g in zip(a, G.diag)) + a + row[d:])
    for i, g in enumerate(G.diag):
        low = [0] * (2 * d + m + 1)
        low[d + i] = 1
        high = [0] * (2 * d + m + 1)
        high[d + i], high[-1] = -1, g - 1
        rows.extend([low, high])
    return RationalPolyhedron(2 * d, m, rows)


def projection_tile_dependence(rel, Gs, Gt):
    """Tile dependence by the projection method (the baseline)."""
    d = rel.delta.dim
    return fm_project(tiled_system(rel, Gs, Gt), range(d, 2 * d))


## enumeration

def _int_rows(P):
    """Group integer rows by the last set dimension they involve."""
    levels = [[] for _ in range(P.dim)]
    for row in P.rows:
        row = integer_row(row)
        nonzero = [i for i in range(P.dim) if row[i]]
        if nonzero:
            levels[nonzero[-1]].append(row)
        elif row[-1] < 0:
            return None
    return levels


def _ceil_div(a, b):
    return -((-a) // b)


def integer_points(P, param_values=(), bounds=None, cap=None):
    """All integer points of ``P`` (parameters fixed) inside ``bounds``,
    in lexicographic order.

    :param bounds: per-dimension inclusive integer intervals; derived by
        :func:`bounding_box` when omitted
    :param cap: maximum bounding-box volume, :data:`DEFAULT_ENUM_CAP` by
        default
    :raises: :exc:`edtsync.exc.EdtEnumerationCapError` when the box volume
        exceeds ``cap``

    Example::

        >>> integer_points(RationalPolyhedron(1, 0, [[4, 0], [-4, 7]]), (), [(-2, 3)])
        [(0,), (1,)]

    """
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    Q = P.substitute_params(param_values) if P.n_params or param_values else P
    if Q.empty:
        return []
    if bounds is None:
        bounds = bounding_box(Q)
        if bounds is None:
            return []
    bounds = [(int(lo), int(hi)) for lo, hi in bounds]
    if len(bounds) != Q.dim:
        raise EdtContractError("expected %d bounds, got %d" % (Q.dim, len(bounds)))
    volume = 1
    for lo, hi in bounds:
        volume *= max(hi - lo + 1, 0)
    if volume > cap:
        raise EdtEnumerationCapError("box volume %d exceeds enumeration cap %d" % (volume, cap))
    if volume == 0:
        return []
    if Q.dim == 0:
        return [()] if Q.contains(()) else []
    levels = _int_rows(Q)
    if levels is None:
        return []
    points = []
    prefix = [0] * Q.dim

    def scan(k):
        lo, hi = bounds[k]
        for row in levels[k]:
            s = row[-1] + sum(row[i] * prefix[i] for i in range(k))
            if row[k] > 0:
                lo = max(lo, _ceil_div(-s, row[k]))
            else:
                hi = min(hi, s // -row[k])
        for v in range(lo, hi + 1):
            prefix[k] = v
            if k + 1 == Q.dim:
                points.append(tuple(prefix))
            else:
                scan(k + 1)

    scan(0)
    return points


def bounding_box(P, param_values=(), clip=None):
    """Integer bounding box of ``P`` by projection onto each dimension.

    :param clip: optional box intersected with ``P`` first
    :returns: list of ``(lo, hi)`` or None when ``P`` is empty
    :raises: :exc:`edtsync.exc.EdtUnboundedError` if a dimension is unbounded

    """
    Q = P.substitute_params(param_values) if P.n_params or param_values else P
    if clip is not None:
        Q = Q.intersect(RationalPolyhedron.box(clip))
    if Q.empty:
        return None
    bounds = []
    for i in range(Q.dim):
        proj = fm_project(Q, [j for j in range(Q.dim) if j != i])
        if proj.empty:
            return None
        lo = hi = None
        for c, b in proj.rows:
            if c > 0:
                v = math.ceil(-b / c)
                lo = v if lo is None else max(lo, v)
            else:
                v = math.floor(b / -c)
                hi = v if hi is None else min(hi, v)
        if lo is None or hi is None:
            raise EdtUnboundedError("dimension %d of %r is unbounded" % (i, P))
        if lo > hi:
            return None
        bounds.append((lo, hi))
    return bounds


def tile_domain_points(D, G, param_values=(), bounds=None, cap=None):
    """Exact set of tiles holding at least one integer point of ``D``,
    computed by floor division of the enumerated points.

    Example::

        >>> tile_domain_points(RationalPolyhedron.box([(0, 7)]), TilingSpec([4]))
        [(0,), (1,)]

    """
    if len(G) != D.dim:
        raise EdtContractError("tiling %r does not match %r" % (G, D))
    points = integer_points(D, param_values, bounds, cap)
    return sorted(set(G.tile_of(p) for p in points))


def minkowski_member(P, G, T, param_values=()):
    """Whether tile ``T`` lies in ``P (+) U``, i.e. some intra-tile offset
    ``0 <= X <= g - 1`` gives ``T + X/g`` in ``P``."""
    for X in G.offsets():
        point = tuple(t + Fraction(x, g) for t, x, g in zip(T, X, G.diag))
        if P.contains(point, param_values):
            return True
    return False


## predecessors

class TileDomain(object):
    """Set of tile coordinates with its bounding box, the source side of
    predecessor counting."""

    def __init__(self, points):
        self.points = frozenset(tuple(p) for p in points)
        if self.points:
            dim = len(next(iter(self.points)))
            self.bounds = [(min(p[i] for p in self.points), max(p[i] for p in self.points))
                           for i in range(dim)]
        else:
            self.bounds = None

    def __contains__(self, point):
        return tuple(point) in self.points

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points))

    @classmethod
    def wrap(cls, domain):
        return domain if isinstance(domain, cls) else cls(domain)


def predecessors_of(deltaT, t_coords, param_values=None):
    """Substitute the destination tile coordinates into a tile dependence.

    :returns: polyhedron over the source tile dimensions; parameters are
        substituted too when ``param_values`` is given

    """
    t_coords = tuple(t_coords)
    source_dim = deltaT.dim - len(t_coords)
    if source_dim < 0:
        raise EdtContractError("%d target coordinates for %r" % (len(t_coords), deltaT))
    if deltaT.empty:
        return RationalPolyhedron.empty_set(source_dim, 0 if param_values is not None else deltaT.n_params)
    rows = []
    for row in deltaT.rows:
        b = row[-1] + sum(a * t for a, t in zip(row[source_dim:deltaT.dim], t_coords))
        rows.append(row[:source_dim] + row[deltaT.dim:-1] + (b,))
    P = RationalPolyhedron(source_dim, deltaT.n_params, rows)
    if param_values is not None:
        P = P.substitute_params(param_values)
    return P


def predecessor_points(deltaT, t_coords, param_values, source_tiles, exclude=None, cap=None):
    """In-domain source tiles of ``t_coords`` and the number of candidate
    points scanned to find them.

    :param exclude: a source tile to leave out (the task itself, for
        dependences within one statement)
    :returns: ``(points, scanned)``

    """
    source_tiles = TileDomain.wrap(source_tiles)
    if not source_tiles.points:
        return [], 0
    Q = predecessors_of(deltaT, t_coords, param_values)
    box = bounding_box(Q, clip=source_tiles.bounds)
    if box is None:
        return [], 0
    scanned = 1
    for lo, hi in box:
        scanned *= hi - lo + 1
    points = [p for p in integer_points(Q, (), box, cap)
              if p in source_tiles and p != exclude]
    return points, scanned


def count_predecessors(deltaT, t_coords, param_values, source_tiles, exclude=None, cap=None):
    """Number of in-domain integer source tiles depending into ``t_coords``
    (loop-counting predecessor function).

    Example::

        >>> delta = RationalPolyhedron(2, 0, [[-1, 1, -1], [1, -1, 1]])
        >>> count_predecessors(delta, (1,), (), [(0,), (1,)])
        1

    """
    return len(predecessor_points(deltaT, t_coords, param_values, source_tiles, exclude, cap)[0])


def source_tasks(tile_domain, deltas, param_values=(), source_domain=None, cap=None):
    """Tiles of ``tile_domain`` without any in-domain predecessor through
    the dependence polyhedra ``deltas`` (exact zero-predecessor set).

    :param source_domain: source tiles, ``tile_domain`` itself by default
        (dependences within one statement, self pairs ignored)

    """
    same = source_domain is None
    source_domain = TileDomain.wrap(tile_domain if same else source_domain)
    sources = []
    for t in sorted(set(tuple(p) for p in tile_domain)):
        exclude = t if same else None
        if all(count_predecessors(dT, t, param_values, source_domain, exclude, cap) == 0
               for dT in deltas):
            sources.append(t)
    return sources


## benchmark instances

def gen_bench_relation(k, rng, extent=64):
    """Random k+k dimensional uniform dependence between two tiled loop
    nests: boxed source and target domains, triangular couplings between
    consecutive source loops, and a 0/1 distance vector.

    :param rng: random generator
    :type rng: :class:`random.Random`
    :returns: ``(DependenceRelation, TilingSpec)`` (same tiling both sides)

    """
    d = 2 * k
    rows = []

    def row(coeffs, b):
        r = [0] * (d + 1)
        for i, c in coeffs:
            r[i] = c
        r[-1] = b
        rows.append(r)

    distance = [rng.randint(0, 1) for _ in range(k)]
    if not any(distance):
        distance[rng.randrange(k)] = 1
    for j in range(k):
        row([(j, 1)], 0)
        row([(j, -1)], extent - 1)
        row([(k + j, 1)], 0)
        row([(k + j, -1)], extent - 1)
        row([(k + j, 1), (j, -1)], -distance[j])
        row([(k + j, -1), (j, 1)], distance[j])
        if j + 1 < k and rng.random() < 0.7:
            row([(j + 1, 1), (j, -1)], rng.randint(0, 2))
    G = TilingSpec([rng.randint(2, 8) for _ in range(k)])
    rel = DependenceRelation('S', 'S', RationalPolyhedron(d, 0, rows), k, k)
    return rel, G


def bench(dims_list, instances=10, seed=0):
    """Time the compression path against the projection path.

    :param dims_list: total dependence dimensions (``2k``) to generate
    :returns: list of dict rows ``dims, instance, compression_s,
        projection_s, rows_compression, rows_projection``

    """
    rng = random.Random(seed)
    results = []
    for dims in dims_list:
        if dims < 2 or dims % 2:
            raise EdtContractError("benchmark dimensions must be even and >= 2, got %r" % dims)
        for instance in range(instances):
            rel, G = gen_bench_relation(dims // 2, rng)
            t0 = time.perf_counter()
            compressed = tile_dependence(rel, G, G)
            t1 = time.perf_counter()
            projected = projection_tile_dependence(rel, G, G)
            t2 = time.perf_counter()
            results.append({
                'dims': dims,
                'instance': instance,
                'compression_s': t1 - t0,
                'projection_s': t2 - t1,
                'rows_compression': len(compressed),
                'rows_projection': len(projected),
            })
            log.debug('bench dims=%d #%d: compression %.6fs, projection %.6fs',
                      dims, instance, t1 - t0, t2 - t1)
    return results
