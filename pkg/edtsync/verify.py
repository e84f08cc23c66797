#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
.. currentmodule:: edtsync.verify

Checks the event log and counters of an execution against the runtime
invariants: exactly-once execution, order safety, unique slot creation,
one-use and retained tags, and object conservation.
"""

import re
import logging
from collections import Counter, namedtuple

from edtsync import runtime
from edtsync.runtime import SyncModel
from edtsync.exc import *

log = logging.getLogger(__name__)

COUNTED_MODELS = [SyncModel.COUNTED, SyncModel.AUTODEC_NOSRC, SyncModel.AUTODEC_SRC]


def check_report(graph, report):
    """Violations found in one execution report.

    :param graph: the executed graph
    :type graph: :class:`edtsync.graph.TaskGraph`
    :param report: report of a run with the event log recorded
    :type report: :class:`edtsync.runtime.ExecutionReport`
    :returns: list of violation strings, empty when the run is correct

    """
    model = SyncModel.parse(report.model)
    violations = []
    if graph.n and not report.events:
        return ["no events recorded for %d tasks" % graph.n]

    start, end = {}, {}
    starts, ends = Counter(), Counter()
    for e in report.events:
        if e.kind == 'TaskStart':
            starts[e.task] += 1
            start[e.task] = e.seq
        elif e.kind == 'TaskEnd':
            ends[e.task] += 1
            end[e.task] = e.seq
    for t in range(graph.n):
        if starts[t] != 1 or ends[t] != 1:
            violations.append("task %d started %d and ended %d times" % (t, starts[t], ends[t]))
        elif end[t] < start[t]:
            violations.append("task %d ended before it started" % t)
    for src, dst in graph.edges():
        if src in end and dst in start and start[dst] < end[src]:
            violations.append("task %d started before its predecessor %d ended" % (dst, src))

    if model in COUNTED_MODELS or model is SyncModel.PRESCRIBED:
        decrements = Counter(e.task for e in report.events if e.kind == 'Decrement')
        for t in range(graph.n):
            if decrements[t] != graph.pred_count[t]:
                violations.append("task %d received %d decrements for %d predecessors"
                                  % (t, decrements[t], graph.pred_count[t]))
        final = {}
        for e in report.events:
            if e.kind == 'Decrement':
                final[e.task] = min(final.get(e.task, e.other), e.other)
        for t, left in sorted(final.items()):
            if left != 0:
                violations.append("counter of task %d ended at %d" % (t, left))
    if model in COUNTED_MODELS:
        inits = Counter(e.task for e in report.events if e.kind == 'SlotInit')
        for t in range(graph.n):
            if inits[t] != 1:
                violations.append("slot of task %d initialized %d times" % (t, inits[t]))

    counters = report.counters
    if model is SyncModel.TAGS1:
        puts = Counter(tuple(e.other) for e in report.events if e.kind == 'Put')
        gets = Counter(tuple(e.other) for e in report.events if e.kind == 'Get')
        for edge in graph.edges():
            if puts[edge] != 1 or gets[edge] != 1:
                violations.append("tag %r put %d and matched %d times" % (edge, puts[edge], gets[edge]))
        if counters.live_at_end != 0:
            violations.append("%d one-use tags live at the end" % counters.live_at_end)
    elif model is SyncModel.TAGS2:
        puts = Counter(e.other for e in report.events if e.kind == 'Put')
        gets = Counter(e.other for e in report.events if e.kind == 'Get')
        for t in range(graph.n):
            if puts[t] != 1 or gets[t] != len(graph.succ[t]):
                violations.append("tag %d put %d and matched %d times for %d successors"
                                  % (t, puts[t], gets[t], len(graph.succ[t])))
        if counters.live_at_end != graph.n:
            violations.append("%d tags live at the end, expected %d" % (counters.live_at_end, graph.n))

    if counters.created != counters.destroyed + counters.live_at_end:
        violations.append("created %d != destroyed %d + live at end %d"
                          % (counters.created, counters.destroyed, counters.live_at_end))
    return violations


def excerpt(report, violation, limit=20):
    """Events of the tasks named in a violation string, for diagnostics."""
    tasks = set(int(w) for w in re.findall(r"\d+", violation))
    lines = [e.as_dict() for e in report.events if e.task in tasks]
    return lines[:limit]


class MatrixResult(namedtuple('MatrixResult', 'model workers seed violations excerpt')):
    __slots__ = ()

    @property
    def ok(self):
        return not self.violations


def verify_matrix(graph, models=None, workers=(1, 2, 8), seeds=range(5), **options):
    """Run every model × workers × seed cell and check each report; the
    task sets of all runs must also be identical.

    :returns: list of :class:`MatrixResult`

    """
    models = [SyncModel.parse(m) for m in (models or list(SyncModel))]
    options['record_events'] = True
    results = []
    expected = set(range(graph.n))
    for model in models:
        for w in workers:
            for seed in seeds:
                try:
                    report = runtime.run(graph, model, workers=w, seed=seed, **options)
                except EdtException as e:
                    results.append(MatrixResult(str(model), w, seed,
                                                ["%s: %s" % (e.__class__.__name__, e)], []))
                    continue
                violations = check_report(graph, report)
                executed = set(e.task for e in report.events_of('TaskStart'))
                if executed != expected:
                    violations.append("executed task set differs in %d tasks"
                                      % len(executed ^ expected))
                results.append(MatrixResult(str(model), w, seed, violations,
                                            excerpt(report, violations[0]) if violations else []))
                if violations:
                    log.warning("%s workers=%d seed=%d: %d violations", model, w, seed, len(violations))
    return results


def assert_correct(graph, report):
    """Raise :exc:`edtsync.exc.EdtVerificationError` on any violation."""
    violations = check_report(graph, report)
    if violations:
        raise EdtVerificationError("%d invariant violations in %s run" % (len(violations), report.model),
                                   violations)
