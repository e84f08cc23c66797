#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
.. currentmodule:: edtsync.runtime

Runtime
*******

Multi-worker execution of a :class:`edtsync.graph.TaskGraph` under one of
six synchronization models (:class:`SyncModel`):

========================  =================================================
``prescribed``            master creates every task and edge slot first
``tags1``                 one-use tag per edge, freed at its get match
``tags2``                 one tag per task, kept until the run ends
``counted``               master counts predecessors of every task first
``autodec-nosrc``         dense slot array, master preschedules all tasks
``autodec-src``           slot map, master preschedules the source tasks
========================  =================================================

Workers are threads pulling runnable tasks from one shared queue. Models
whose master overlaps execution run it on a separate master lane. Every
atomic operation goes through :mod:`edtsync.atomic`.

"""

import json
import time
import queue
import random
import logging
import threading
from enum import Enum
from collections import namedtuple

from edtsync.atomic import AtomicCounter, AtomicCells, StripedLocks
from edtsync.metrics import OverheadCounters
from edtsync.exc import *

log = logging.getLogger(__name__)

MASTER_LANE = -1
PRESCHEDULE_POLICIES = ['sources', 'all']
_STOP = object()


class SyncModel(str, Enum):
    """Task synchronization models."""

    PRESCRIBED = 'prescribed'
    TAGS1 = 'tags1'
    TAGS2 = 'tags2'
    COUNTED = 'counted'
    AUTODEC_NOSRC = 'autodec-nosrc'
    AUTODEC_SRC = 'autodec-src'

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, value):
        """
        Example::

            >>> SyncModel.parse('tags1') is SyncModel.TAGS1
            True

        """
        try:
            return cls(value)
        except ValueError:
            raise EdtValidationError("Unknown model %r, choose from: %s"
                                     % (value, ', '.join(m.value for m in cls)))


class Event(namedtuple('Event', 'seq time lane kind task other')):
    """One event log record. ``seq`` is a global sequence number taken
    when the event happened; it orders events across lanes."""

    __slots__ = ()

    def as_dict(self):
        other = self.other
        if isinstance(other, tuple):
            other = list(other)
        return {'seq': self.seq, 'time': round(self.time, 9), 'lane': self.lane,
                'kind': self.kind, 'task': self.task, 'other': other}


class EventRecorder(object):
    """Per-lane event lists merged by sequence number at the end.

    :param enabled: when false, :meth:`record` does nothing

    """

    def __init__(self, enabled=True):
        self.enabled = enabled
        self._seq = AtomicCounter()
        self._lanes = {}
        self._t0 = time.perf_counter()

    def open(self, lanes):
        for lane in lanes:
            self._lanes.setdefault(lane, [])

    def record(self, lane, kind, task, other=None):
        if not self.enabled:
            return
        seq = self._seq.get_and_inc()
        self._lanes[lane].append(Event(seq, time.perf_counter() - self._t0, lane, kind, task, other))

    def events(self):
        merged = [e for events in self._lanes.values() for e in events]
        merged.sort(key=lambda e: e.seq)
        return merged


## task functions

class GraphTaskFunctions(object):
    """f_count / f_pack / f_rank realized from the graph structure.

    :meth:`count` returns the predecessor count and the number of
    operations spent computing it (one per in-edge scanned).

    """

    def __init__(self, graph):
        self.graph = graph

    def count(self, rank):
        count = self.graph.pred_count[rank]
        return count, max(1, count)

    def pack(self, rank):
        return (rank, self.graph.work_units[rank])

    def rank(self, task):
        return task

    def sources(self):
        return self.graph.sources()


class PolyTaskFunctions(object):
    """f_count / f_pack / f_rank realized from a tiled polyhedral program:
    predecessors are counted by enumerating each tile dependence
    polyhedron at the task's tile coordinates.

    :param program: :class:`edtsync.graph.TiledProgram`
    :param work_units: per-task work units

    """

    def __init__(self, program, work_units):
        self.program = program
        self.work_units = work_units

    def count(self, rank):
        preds, scanned = self.program.predecessors(rank)
        return len(preds), max(1, scanned)

    def pack(self, rank):
        return (rank, self.work_units[rank])

    def rank(self, stmt, tile):
        return self.program.rank(stmt, tile)

    def sources(self):
        return [t for t in range(self.program.n) if self.count(t)[0] == 0]


def task_functions(graph):
    """Task functions matching how ``graph`` was built."""
    if graph.program is not None:
        return PolyTaskFunctions(graph.program, graph.work_units)
    return GraphTaskFunctions(graph)


## counted dependences

class DepSlot(object):
    """Initialized counted dependence: unsatisfied input count and the
    task payload."""

    __slots__ = ('counter', 'payload')

    def __init__(self, count, payload):
        self.counter = AtomicCounter(count)
        self.payload = payload

    def __repr__(self):
        return '<DepSlot %d %r>' % (self.counter.value, self.payload)


class _Retired(object):
    def __repr__(self):
        return 'RETIRED'


#: Marks the slot of a task that already started.
RETIRED = _Retired()


class CountedDependences(object):
    """Counted dependence slots with automatic creation.

    :param cells: slot storage
    :type cells: :class:`edtsync.atomic.AtomicCells`
    :param functions: task functions providing ``count`` and ``pack``
    :param on_fire: called as ``on_fire(rank, payload, lane)`` once per
        task, when its counter reaches zero
    :param dense: cells are a dense array; started tasks keep a
        :data:`RETIRED` cell until the run ends
    :param retire_before_cursor: started tasks the master has not
        prescheduled yet leave a :data:`RETIRED` marker, removed when the
        master reaches them

    """

    def __init__(self, cells, functions, on_fire, meters, recorder,
                 dense=False, retire_before_cursor=False):
        self.cells = cells
        self.functions = functions
        self.on_fire = on_fire
        self.meters = meters
        self.recorder = recorder
        self.dense = dense
        self.retire_before_cursor = retire_before_cursor
        self.cursor = -1

    def _initialized(self, rank, count, lane):
        self.recorder.record(lane, 'SlotInit', rank, count)
        if not self.dense:
            self.meters.object_created()
        self.meters.inflight_deps.add(count)

    def autodec(self, rank, lane=MASTER_LANE):
        """Decrement the counted dependence of ``rank``, creating it first
        if no slot exists. The first caller to install the slot is the
        unique creator of the task.

        :returns: whether this call made the task runnable
        :raises: :exc:`edtsync.exc.EdtInvariantError` when the task has no
            predecessor or already started

        """
        slot = self.cells.get(rank)
        if slot is None:
            count, _ = self.functions.count(rank)
            if count == 0:
                raise EdtInvariantError("autodec of task %d which has no predecessor" % rank)
            fresh = DepSlot(count, self.functions.pack(rank))
            slot = self.cells.install(rank, fresh)
            if slot is fresh:
                self._initialized(rank, count, lane)
        if slot is RETIRED:
            raise EdtInvariantError("autodec of task %d after it started" % rank)
        left = slot.counter.dec()
        self.meters.inflight_deps.add(-1)
        self.recorder.record(lane, 'Decrement', rank, left)
        if left < 0:
            raise EdtInvariantError("counter of task %d went negative" % rank)
        if left == 0:
            self.on_fire(rank, slot.payload, lane)
            return True
        return False

    def preschedule(self, rank, lane=MASTER_LANE):
        """Initialize the counted dependence of ``rank`` without
        decrementing it. A task without predecessors becomes runnable; an
        existing slot makes this a no-op.

        :returns: whether this call made the task runnable

        """
        self.recorder.record(lane, 'Preschedule', rank)
        with self.cells.lock_for(rank):
            if rank > self.cursor:
                self.cursor = rank
            slot = self.cells.get(rank)
            if slot is RETIRED:
                if not self.dense:
                    self.cells.replace(rank, None)
                    self.meters.object_destroyed()
                    self.meters.gc_lag.add(-1)
                return False
            if slot is not None:
                return False
            count, _ = self.functions.count(rank)
            slot = DepSlot(count, self.functions.pack(rank))
            self.cells.replace(rank, slot)
            self._initialized(rank, count, lane)
        if count == 0:
            self.on_fire(rank, slot.payload, lane)
            return True
        return False

    def retire(self, rank):
        """Release the slot of a task that started."""
        with self.cells.lock_for(rank):
            if self.dense:
                self.cells.replace(rank, RETIRED)
                self.meters.gc_lag.add(1)
            elif self.retire_before_cursor and self.cursor < rank:
                self.cells.replace(rank, RETIRED)
                self.meters.object_destroyed()
                self.meters.object_created()
                self.meters.gc_lag.add(1)
            else:
                self.cells.replace(rank, None)
                self.meters.object_destroyed()


## tags

class TagState(object):
    __slots__ = ('put', 'waiters', 'matches', 'counted')

    def __init__(self):
        self.put = False
        self.waiters = []
        self.matches = 0
        self.counted = False


class GetRecord(object):
    """Asynchronous get of one task; ``pending`` starts one above the key
    count so the task can not fire before every key is registered."""

    __slots__ = ('task', 'pending')

    def __init__(self, task, keys):
        self.task = task
        self.pending = AtomicCounter(keys + 1)


class TagTable(object):
    """Associative table of tags. Operations on one key are serialized by
    a striped lock; the dict itself only sees single item updates.

    A one-use tag is a live object from its first get or put on; a
    persistent tag only from its put, its early gets wait uncounted.

    :param one_use: dispose a tag at its get match
    :param on_ready: called as ``on_ready(record, lane)`` when a get
        record has matched all its keys
    :param out_degree: ``key -> number of gets the tag will see``; a tag
        becomes garbage once it matched that many (persistent tags only)
    :param track_consumed: remember disposed keys to reject later puts
        and gets on them

    """

    def __init__(self, one_use, meters, recorder, on_ready, out_degree=None,
                 track_consumed=False, stripes=64):
        self.one_use = one_use
        self.meters = meters
        self.recorder = recorder
        self.on_ready = on_ready
        self.out_degree = out_degree
        self.consumed = set() if track_consumed else None
        self.entries = {}
        self.lock_for = StripedLocks(stripes)

    def __len__(self):
        return len(self.entries)

    def live_tags(self):
        """Number of tags currently counted as live sync objects."""
        return sum(1 for state in list(self.entries.values()) if state.counted)

    def _count(self, state):
        state.counted = True
        self.meters.object_created()

    def _entry(self, key):
        state = self.entries.get(key)
        if state is None:
            state = self.entries[key] = TagState()
            if self.one_use:
                self._count(state)
        return state

    def _dispose(self, key):
        if self.entries.pop(key).counted:
            self.meters.object_destroyed()
        if self.consumed is not None:
            self.consumed.add(key)

    def _check_consumed(self, key, op):
        if self.consumed is not None and key in self.consumed:
            raise EdtTagProtocolError("%s on consumed one-use tag %r" % (op, key))

    def _garbage(self, key, state):
        return (not self.one_use and self.out_degree is not None
                and state.put and state.matches == self.out_degree(key))

    def put(self, key, task, lane):
        """Put tag ``key``; every queued get on it is matched.

        :raises: :exc:`edtsync.exc.EdtTagProtocolError` on a second put
        """
        with self.lock_for(key):
            self._check_consumed(key, 'put')
            state = self._entry(key)
            if state.put:
                raise EdtTagProtocolError("double put of tag %r by task %d" % (key, task))
            state.put = True
            if not state.counted:
                self._count(state)
            waiters, state.waiters = state.waiters, []
            state.matches += len(waiters)
            if self.one_use and waiters:
                self._dispose(key)
            garbage = self._garbage(key, state)
        self.recorder.record(lane, 'Put', task, key)
        for record in waiters:
            self._matched(record, key, lane)
        if garbage:
            self.meters.gc_lag.add(1)

    def get(self, record, key, lane):
        """Register an asynchronous get of ``key`` for ``record``; matches
        at once when the tag was already put."""
        with self.lock_for(key):
            self._check_consumed(key, 'get')
            state = self._entry(key)
            matched = state.put
            if matched:
                state.matches += 1
                if self.one_use:
                    self._dispose(key)
            else:
                state.waiters.append(record)
            garbage = matched and self._garbage(key, state)
        if matched:
            self._matched(record, key, lane)
        if garbage:
            self.meters.gc_lag.add(1)

    def _matched(self, record, key, lane):
        self.recorder.record(lane, 'Get', record.task, key)
        self.meters.inflight_deps.add(-1)
        if record.pending.dec() == 0:
            self.on_ready(record, lane)

    def dispose_all(self):
        """Drop every remaining tag; returns how many were live."""
        count = self.live_tags()
        self.entries.clear()
        return count


## strategies

class SyncStrategy(object):
    """Abstract synchronization model.

    :param runtime: the runtime executing the graph
    :type runtime: :class:`Runtime`

    """

    concurrent_master = False

    def __init__(self, runtime):
        self.runtime = runtime
        self.graph = runtime.graph
        self.meters = runtime.meters
        self.recorder = runtime.recorder
        self.functions = runtime.functions

    def setup(self, lane):
        """Master phase run before any worker starts."""

    def master(self, lane):
        """Master lane running concurrently with the workers."""

    def on_start(self, rank, lane):
        """Called on the worker lane right after TaskStart."""

    def on_complete(self, rank, lane):
        """Called after TaskEnd to notify the successors."""
        raise NotImplementedError

    def finish(self):
        """Dispose what is left after completion; returns the count."""
        return 0


class Prescribed(SyncStrategy):
    """Master creates every task and one input slot per edge before any
    task starts; a task's slots are freed when it starts."""

    def setup(self, lane):
        g = self.graph
        self.unsatisfied = []
        ops = 0
        for t in range(g.n):
            preds = g.pred_count[t]
            self.unsatisfied.append(AtomicCounter(preds))
            self.meters.object_created(1 + preds)
            self.meters.inflight_tasks.add(1)
            self.meters.inflight_deps.add(preds)
            self.recorder.record(lane, 'MasterOp', t, 1 + preds)
            ops += 1 + preds
        self.meters.startup_ops = ops
        for t in g.sources():
            self.runtime.fire(t, self.functions.pack(t), lane)

    def on_start(self, rank, lane):
        self.meters.object_destroyed(1 + self.graph.pred_count[rank])

    def on_complete(self, rank, lane):
        for s in self.graph.succ[rank]:
            left = self.unsatisfied[s].dec()
            self.meters.inflight_deps.add(-1)
            self.recorder.record(lane, 'Decrement', s, left)
            if left == 0:
                self.runtime.fire(s, self.functions.pack(s), lane)


class Counted(SyncStrategy):
    """Master computes f_count of every task and creates all slots; the
    counting work is the sequential start-up."""

    def setup(self, lane):
        g = self.graph
        self.slots = [None] * g.n
        ops = 0
        ready = []
        for t in range(g.n):
            count, cost = self.functions.count(t)
            self.slots[t] = DepSlot(count, self.functions.pack(t))
            self.meters.object_created()
            self.meters.inflight_tasks.add(1)
            self.meters.inflight_deps.add(count)
            self.recorder.record(lane, 'SlotInit', t, count)
            ops += 1 + cost
            if count == 0:
                ready.append(t)
        self.meters.startup_ops = ops
        for t in ready:
            self.runtime.fire(t, self.slots[t].payload, lane)

    def on_start(self, rank, lane):
        self.slots[rank] = None
        self.meters.object_destroyed()

    def on_complete(self, rank, lane):
        for s in self.graph.succ[rank]:
            slot = self.slots[s]
            left = slot.counter.dec()
            self.meters.inflight_deps.add(-1)
            self.recorder.record(lane, 'Decrement', s, left)
            if left == 0:
                self.runtime.fire(s, slot.payload, lane)


class TagsStrategy(SyncStrategy):
    """Master starts every task upfront; each task gets its input keys
    asynchronously and waits descheduled until all are put."""

    concurrent_master = True
    one_use = True

    def __init__(self, runtime):
        SyncStrategy.__init__(self, runtime)
        self.table = TagTable(self.one_use, self.meters, self.recorder, self._ready,
                              out_degree=self.out_degree,
                              track_consumed=runtime.track_consumed)

    def out_degree(self, key):
        return None

    def get_keys(self, t):
        raise NotImplementedError

    def put_keys(self, t):
        raise NotImplementedError

    def master(self, lane):
        ready = []
        for t in range(self.graph.n):
            self.meters.inflight_tasks.add(1)
            keys = self.get_keys(t)
            record = GetRecord(t, len(keys))
            self.meters.object_created()
            self.meters.inflight_deps.add(len(keys))
            for key in keys:
                self.table.get(record, key, lane)
            if record.pending.dec() == 0:
                ready.append(record)
        # every get is registered before the first task runs
        for record in ready:
            self._ready(record, lane)

    def _ready(self, record, lane):
        self.meters.object_destroyed()
        self.runtime.fire(record.task, self.functions.pack(record.task), lane)

    def on_complete(self, rank, lane):
        for key in self.put_keys(rank):
            self.table.put(key, rank, lane)

    def finish(self):
        return self.table.dispose_all()


class Tags1(TagsStrategy):
    """One-use tag per edge ``(pred, succ)``."""

    one_use = True

    def get_keys(self, t):
        return [(p, t) for p in self.graph.pred[t]]

    def put_keys(self, t):
        return [(t, s) for s in self.graph.succ[t]]


class Tags2(TagsStrategy):
    """One tag per task signalling its completion, kept until the end."""

    one_use = False

    def out_degree(self, key):
        return len(self.graph.succ[key])

    def get_keys(self, t):
        return list(self.graph.pred[t])

    def put_keys(self, t):
        return [t]


class AutodecStrategy(SyncStrategy):
    """Completing tasks autodec their successors; the master lane
    preschedules concurrently."""

    concurrent_master = True
    dense = False

    def __init__(self, runtime):
        SyncStrategy.__init__(self, runtime)
        n = self.graph.n
        self.cells = AtomicCells(size=n if self.dense else None)
        self.deps = CountedDependences(self.cells, self.functions, self._fire,
                                       self.meters, self.recorder, dense=self.dense,
                                       retire_before_cursor=self.retire_before_cursor)

    @property
    def retire_before_cursor(self):
        return False

    def prescheduled(self):
        raise NotImplementedError

    def master(self, lane):
        for rank in self.prescheduled():
            self.deps.preschedule(rank, lane)

    def _fire(self, rank, payload, lane):
        self.meters.inflight_tasks.add(1)
        self.runtime.fire(rank, payload, lane)

    def on_start(self, rank, lane):
        self.deps.retire(rank)

    def on_complete(self, rank, lane):
        for s in self.graph.succ[rank]:
            self.deps.autodec(s, lane)


class AutodecNoSrc(AutodecStrategy):
    """Dense slot array of size n, every task prescheduled."""

    dense = True

    def __init__(self, runtime):
        AutodecStrategy.__init__(self, runtime)
        self.meters.object_created(self.graph.n)

    def prescheduled(self):
        return range(self.graph.n)

    def finish(self):
        return len(self.cells)


class AutodecWithSrc(AutodecStrategy):
    """Slot map keyed by rank, only source tasks prescheduled (or all of
    them with the ``all`` policy)."""

    @property
    def retire_before_cursor(self):
        return self.runtime.preschedule == 'all'

    def prescheduled(self):
        if self.runtime.preschedule == 'all':
            return range(self.graph.n)
        return sorted(self.functions.sources())

    def finish(self):
        return self.cells.occupied()


STRATEGIES = {
    SyncModel.PRESCRIBED: Prescribed,
    SyncModel.TAGS1: Tags1,
    SyncModel.TAGS2: Tags2,
    SyncModel.COUNTED: Counted,
    SyncModel.AUTODEC_NOSRC: AutodecNoSrc,
    SyncModel.AUTODEC_SRC: AutodecWithSrc,
}


## engine

class ExecutionReport(object):
    """Outcome of one run: merged event log, overhead counters and wall
    time in seconds."""

    def __init__(self, model, n, workers, seed, events, counters, wall_time):
        self.model = str(model)
        self.n = n
        self.workers = workers
        self.seed = seed
        self.events = events
        self.counters = counters
        self.wall_time = wall_time

    def __repr__(self):
        return '<ExecutionReport %s n=%d workers=%d %.3fs>' % (
            self.model, self.n, self.workers, self.wall_time)

    def events_of(self, kind):
        return [e for e in self.events if e.kind == kind]

    def as_dict(self, events=False):
        doc = {
            'model': self.model,
            'n': self.n,
            'workers': self.workers,
            'seed': self.seed,
            'wall_time': self.wall_time,
            'counters': self.counters.as_dict(),
        }
        if events:
            doc['events'] = [e.as_dict() for e in self.events]
        return doc

    def dumps(self, events=False):
        return json.dumps(self.as_dict(events), sort_keys=True, indent=2)


def _spin(units):
    x = 0
    for i in range(units * 64):
        x += i
    return x


class Runtime(object):
    """Executes a task graph with a pool of worker lanes.

    :param graph: graph to execute
    :type graph: :class:`edtsync.graph.TaskGraph`
    :param model: synchronization model
    :type model: :class:`SyncModel` or its string value
    :param workers: number of worker lanes
    :param seed: seeds the scheduling jitter
    :param jitter: maximum per-task delay in seconds inserted before
        successors are notified
    :param grace_period: idle seconds after which an incomplete run is
        declared deadlocked
    :param record_events: keep the event log
    :param preschedule: ``sources`` or ``all`` (``autodec-src`` only)
    :param functions: task functions, derived from the graph by default
    :param track_consumed: reject puts and gets on disposed one-use tags

    """

    def __init__(self, graph, model, workers=4, seed=0, jitter=0.0, grace_period=2.0,
                 record_events=True, preschedule='sources', functions=None,
                 track_consumed=False):
        if workers < 1:
            raise EdtContractError("workers must be >= 1, got %d" % workers)
        if preschedule not in PRESCHEDULE_POLICIES:
            raise EdtValidationError("Unknown preschedule policy %r" % preschedule)
        self.graph = graph
        self.model = SyncModel.parse(model) if not isinstance(model, SyncModel) else model
        self.workers = workers
        self.seed = seed
        self.jitter = jitter
        self.grace_period = grace_period
        self.preschedule = preschedule
        self.track_consumed = track_consumed
        self.functions = functions or task_functions(graph)
        self.meters = OverheadCounters()
        self.recorder = EventRecorder(record_events)
        self.recorder.open([MASTER_LANE] + list(range(workers)))
        self.ready = queue.Queue()
        self.started = bytearray(graph.n)
        self._started_lock = threading.Lock()
        self.completed = AtomicCounter()
        self.busy = AtomicCounter()
        self.done = threading.Event()
        self.master_done = threading.Event()
        self.errors = []
        self.strategy = STRATEGIES[self.model](self)

    def __repr__(self):
        return '<Runtime %s %r workers=%d>' % (self.model, self.graph, self.workers)

    def fire(self, rank, payload, lane):
        """Make a task runnable."""
        self.ready.put((rank, payload))

    def run(self):
        """Execute the graph.

        :returns: :class:`ExecutionReport`
        :raises: :exc:`edtsync.exc.EdtDeadlockError`, or the first
            exception raised on a worker or the master lane

        """
        n = self.graph.n
        t0 = time.perf_counter()
        self.strategy.setup(MASTER_LANE)
        if not self.strategy.concurrent_master:
            log.info("%s master phase finished after %d operations",
                      self.model, self.meters.startup_ops)
        threads = [threading.Thread(target=self._worker, args=(lane,),
                                    name='edtsync-worker-%d' % lane, daemon=True)
                   for lane in range(self.workers)]
        master = None
        if self.strategy.concurrent_master:
            master = threading.Thread(target=self._master, name='edtsync-master', daemon=True)
        else:
            self.master_done.set()
        if n == 0:
            self.done.set()
        for thread in threads:
            thread.start()
        if master is not None:
            master.start()
        try:
            self._wait()
        finally:
            for _ in threads:
                self.ready.put(_STOP)
            for thread in threads:
                thread.join()
            if master is not None:
                master.join()
        if self.errors:
            raise self.errors[0]
        wall_time = time.perf_counter() - t0
        self.meters.close(self.strategy.finish())
        log.debug("%s finished %d tasks in %.3fs: %r", self.model, n, wall_time, self.meters)
        return ExecutionReport(self.model, n, self.workers, self.seed,
                               self.recorder.events(), self.meters, wall_time)

    def _wait(self):
        last = None
        quiet_since = time.monotonic()
        while not self.done.wait(0.01):
            if self.errors:
                return
            state = (self.completed.value, self.master_done.is_set())
            idle = self.master_done.is_set() and self.busy.value == 0 and self.ready.empty()
            now = time.monotonic()
            if not idle or state != last:
                last = state
                quiet_since = now
            elif now - quiet_since > self.grace_period:
                stuck = [t for t in range(self.graph.n) if not self.started[t]]
                log.warning("%s: no runnable task for %.1fs, %d tasks never started",
                            self.model, self.grace_period, len(stuck))
                raise EdtDeadlockError("deadlock: %d of %d tasks never started, first %s"
                                       % (len(stuck), self.graph.n, stuck[:10]), stuck)

    def _master(self):
        try:
            self.strategy.master(MASTER_LANE)
        except Exception as e:
            log.debug("master lane failed: %s", e)
            self.errors.append(e)
            self.done.set()
        finally:
            self.master_done.set()

    def _worker(self, lane):
        while True:
            item = self.ready.get()
            if item is _STOP:
                return
            self.busy.inc()
            try:
                self._execute(item[0], item[1], lane)
            except Exception as e:
                log.debug("worker %d failed: %s", lane, e)
                self.errors.append(e)
                self.done.set()
                return
            finally:
                self.busy.dec()

    def _execute(self, rank, payload, lane):
        with self._started_lock:
            if self.started[rank]:
                raise EdtInvariantError("task %d executed twice" % rank)
            self.started[rank] = 1
        self.recorder.record(lane, 'TaskStart', rank)
        self.strategy.on_start(rank, lane)
        _spin(payload[1])
        self.recorder.record(lane, 'TaskEnd', rank)
        self.meters.inflight_tasks.add(-1)
        if self.jitter:
            time.sleep(random.Random(self.seed * 1000003 + rank).uniform(0, self.jitter))
        self.strategy.on_complete(rank, lane)
        if self.completed.inc() == self.graph.n:
            self.done.set()


def run(g, model, workers=4, seed=0, **options):
    """Execute ``g`` under ``model``; see :class:`Runtime` for options.

    Example::

        >>> from edtsync.graph import gen_diamond
        >>> report = run(gen_diamond(), 'autodec-src', workers=2)
        >>> sorted(e.task for e in report.events_of('TaskStart'))
        [0, 1, 2, 3]

    """
    return Runtime(g, model, workers, seed, **options).run()
