#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
.. currentmodule:: edtsync.metrics

Overhead meters
***************

:class:`OverheadCounters` holds the five overhead classes of a run
(sequential start-up, spatial, in-flight tasks, in-flight dependences and
garbage collection lag) as object counts. :func:`sweep` runs one model
over growing graphs and :func:`fit_growth_exponent` fits the growth
exponent of every meter on a log-log scale.

CSV schema::

    model,graph,n,workers,seed,startup_ops,peak_objects,peak_inflight_tasks,peak_inflight_deps,gc_lag_peak,wall_ms

"""

import csv
import logging
import threading
from collections import namedtuple

import numpy

from edtsync.exc import *

log = logging.getLogger(__name__)

CSV_FIELDS = ['model', 'graph', 'n', 'workers', 'seed', 'startup_ops', 'peak_objects',
              'peak_inflight_tasks', 'peak_inflight_deps', 'gc_lag_peak', 'wall_ms']
METRICS = ['startup_ops', 'peak_objects', 'peak_inflight_tasks', 'peak_inflight_deps', 'gc_lag_peak']

#: bytes charged per live synchronization object (slot, tag, registration)
OBJECT_BYTES = 64
#: bytes charged per in-flight task (descriptor plus payload reference)
TASK_BYTES = 128


class Gauge(object):
    """Up/down counter remembering its peak.

    Example::

        >>> g = Gauge()
        >>> g.add(3), g.add(-2), g.peak
        (3, 1, 3)

    """

    __slots__ = ('value', 'peak', '_lock')

    def __init__(self, lock=None):
        self.value = 0
        self.peak = 0
        self._lock = lock or threading.Lock()

    def __repr__(self):
        return '<Gauge %d peak=%d>' % (self.value, self.peak)

    def add(self, d=1):
        with self._lock:
            self.value += d
            if self.value > self.peak:
                self.peak = self.value
            return self.value


class OverheadCounters(object):
    """Meters of one run, updated concurrently by every lane.

    Updates happen under one lock, so peaks are exact. Objects are
    counted, not sized; :meth:`estimated_bytes` applies
    :data:`OBJECT_BYTES` and :data:`TASK_BYTES`.

    """

    def __init__(self):
        self._lock = threading.Lock()
        self.startup_ops = 0
        self.live_objects = Gauge(self._lock)
        self.inflight_tasks = Gauge(self._lock)
        self.inflight_deps = Gauge(self._lock)
        self.gc_lag = Gauge(self._lock)
        self.created = 0
        self.destroyed = 0
        self.live_at_end = 0
        self.disposed = 0

    def __repr__(self):
        return '<OverheadCounters %r>' % self.as_dict()

    def object_created(self, k=1):
        with self._lock:
            self.created += k
        self.live_objects.add(k)

    def object_destroyed(self, k=1):
        with self._lock:
            self.destroyed += k
        self.live_objects.add(-k)

    def close(self, disposed):
        """Record the objects still live when the graph completed; they
        are then disposed by the runtime."""
        self.live_at_end = self.live_objects.value
        self.disposed = disposed

    @property
    def peak_live_sync_objects(self):
        return self.live_objects.peak

    @property
    def peak_inflight_tasks(self):
        return self.inflight_tasks.peak

    @property
    def peak_inflight_deps(self):
        return self.inflight_deps.peak

    @property
    def gc_lag_peak(self):
        return self.gc_lag.peak

    def estimated_bytes(self):
        return self.peak_live_sync_objects * OBJECT_BYTES + self.peak_inflight_tasks * TASK_BYTES

    def metric(self, name):
        """Value of one of :data:`METRICS`."""
        return self.as_dict()[name]

    def as_dict(self):
        return {
            'startup_ops': self.startup_ops,
            'peak_objects': self.peak_live_sync_objects,
            'peak_inflight_tasks': self.peak_inflight_tasks,
            'peak_inflight_deps': self.peak_inflight_deps,
            'gc_lag_peak': self.gc_lag_peak,
            'created': self.created,
            'destroyed': self.destroyed,
            'live_at_end': self.live_at_end,
            'disposed': self.disposed,
            'estimated_bytes': self.estimated_bytes(),
        }


def fit_growth_exponent(points):
    """Least-squares slope of ``log(value)`` against ``log(n)``.

    Zero values are mapped to 1 before taking logarithms (a warning is
    logged).

    :param points: ``(n, value)`` pairs, ``n`` strictly increasing
    :returns: ``(exponent, r_squared)``
    :raises: :exc:`edtsync.exc.EdtFitError` with fewer than two points,
        non-increasing ``n`` or a negative value

    Example::

        >>> e, r2 = fit_growth_exponent([(2, 4), (4, 16), (8, 64)])
        >>> round(e, 9), round(r2, 9)
        (2.0, 1.0)

    """
    points = list(points)
    if len(points) < 2:
        raise EdtFitError("need at least 2 points, got %d" % len(points))
    ns = [n for n, _ in points]
    if any(b <= a for a, b in zip(ns, ns[1:])) or ns[0] <= 0:
        raise EdtFitError("sizes must be positive and strictly increasing: %r" % ns)
    if any(v < 0 for _, v in points):
        raise EdtFitError("negative value in %r" % points)
    if any(v == 0 for _, v in points):
        log.warning("zero values mapped to 1 before fitting %r", points)
    x = numpy.log(numpy.array(ns, dtype=float))
    y = numpy.log(numpy.array([max(v, 1) for _, v in points], dtype=float))
    slope, intercept = numpy.polyfit(x, y, 1)
    ss_tot = float(numpy.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return 0.0, 1.0
    ss_res = float(numpy.sum((y - (slope * x + intercept)) ** 2))
    return float(slope), 1.0 - ss_res / ss_tot


class SweepResult(namedtuple('SweepResult', 'model metric points fitted_exponent r_squared flagged')):
    """Growth of one meter over a sweep; ``flagged`` when zero values had
    to be mapped before fitting."""

    __slots__ = ()


def csv_row(report, graph_name):
    """CSV row dict of an :class:`edtsync.runtime.ExecutionReport`."""
    row = {
        'model': report.model,
        'graph': graph_name,
        'n': report.n,
        'workers': report.workers,
        'seed': report.seed,
        'wall_ms': '%.3f' % (report.wall_time * 1000.0),
    }
    counters = report.counters.as_dict()
    for name in METRICS:
        row[name] = counters[name]
    return row


def write_csv(rows, stream):
    writer = csv.DictWriter(stream, CSV_FIELDS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def sweep(model, family, sizes, workers=4, seed=0, metrics=METRICS, rows=None, **options):
    """Run ``model`` once per size of the ``family`` generator and fit
    every metric.

    :param sizes: at least four strictly increasing sizes (tiles per
        dimension for ``wavefront``)
    :param rows: when given, a list the per-run CSV rows are appended to
    :param options: passed on to :func:`edtsync.runtime.run`
    :returns: list of :class:`SweepResult`, one per metric

    """
    from edtsync import graph, runtime

    sizes = list(sizes)
    if len(sizes) < 4:
        raise EdtFitError("a sweep needs at least 4 sizes, got %r" % sizes)
    if sizes != sorted(set(sizes)):
        raise EdtFitError("sweep sizes must be strictly increasing: %r" % sizes)
    series = dict((m, []) for m in metrics)
    for size in sizes:
        g = graph.build_graph(family, n=size, tiles=size, seed=seed)
        options.setdefault('record_events', False)
        report = runtime.run(g, model, workers=workers, seed=seed, **options)
        log.info("%s on %s(%d): %s", model, family, size, report.counters.as_dict())
        if rows is not None:
            rows.append(csv_row(report, family))
        for m in metrics:
            series[m].append((size, report.counters.metric(m)))
    results = []
    for m in metrics:
        exponent, r2 = fit_growth_exponent(series[m])
        results.append(SweepResult(str(model), m, series[m], exponent, r2,
                                   any(v == 0 for _, v in series[m])))
    return results
