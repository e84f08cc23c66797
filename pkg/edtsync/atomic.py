#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
.. currentmodule:: edtsync.atomic

Atomic primitives
*****************

CPython offers no user-level compare-and-swap, so every atomic operation
here is a short critical section on a :class:`threading.Lock`. Operations
are linearizable, which is all the synchronization strategies rely on.

"""

import threading


class AtomicCounter(object):
    """Integer counter with atomic read-modify-write operations.

    Example::

        >>> c = AtomicCounter(2)
        >>> c.dec()
        1
        >>> c.inc(5)
        6

    """

    __slots__ = ('_value', '_lock')

    def __init__(self, value=0):
        self._value = value
        self._lock = threading.Lock()

    def __repr__(self):
        return '<AtomicCounter %d>' % self._value

    @property
    def value(self):
        with self._lock:
            return self._value

    def inc(self, d=1):
        """Add ``d`` and return the new value."""
        with self._lock:
            self._value += d
            return self._value

    def dec(self, d=1):
        """Subtract ``d`` and return the new value."""
        return self.inc(-d)

    def get_and_inc(self, d=1):
        """Add ``d`` and return the value before the addition."""
        with self._lock:
            old = self._value
            self._value += d
            return old


class StripedLocks(object):
    """Fixed pool of locks selected by key hash.

    Operations on one key are serialized; operations on keys mapping to
    different stripes proceed independently.

    :param stripes: Number of locks in the pool
    :type stripes: int

    """

    def __init__(self, stripes=64):
        self._locks = [threading.Lock() for _ in range(stripes)]

    def __call__(self, key):
        return self._locks[hash(key) % len(self._locks)]


class AtomicCells(object):
    """Array-like or map-like table whose cells support atomic
    conditional installation (compare-and-swap against ``None``).

    :param size: When given, cells live in a dense list of that size,
        otherwise in a dict holding only occupied cells
    :type size: int or None

    Example::

        >>> cells = AtomicCells()
        >>> a, b = object(), object()
        >>> cells.install(3, a) is a
        True
        >>> cells.install(3, b) is a
        True

    """

    def __init__(self, size=None, stripes=64):
        self.dense = size is not None
        self._cells = [None] * size if self.dense else {}
        self.lock_for = StripedLocks(stripes)

    def __len__(self):
        """Capacity for dense tables, occupancy for maps."""
        return len(self._cells)

    def get(self, key):
        """Unsynchronized read; a stale ``None`` is resolved by
        :meth:`install`."""
        if self.dense:
            return self._cells[key]
        return self._cells.get(key)

    def install(self, key, value):
        """Install ``value`` if the cell is empty.

        :returns: the value occupying the cell afterwards; it is ``value``
            exactly when this call won the installation

        """
        with self.lock_for(key):
            current = self.get(key)
            if current is None:
                self._cells[key] = value
                return value
            return current

    def replace(self, key, value):
        """Unconditionally store ``value``; ``None`` empties the cell.
        Callers hold ``lock_for(key)``."""
        if self.dense:
            self._cells[key] = value
        elif value is None:
            self._cells.pop(key, None)
        else:
            self._cells[key] = value

    def occupied(self):
        """Number of non-empty cells."""
        if self.dense:
            return sum(1 for cell in self._cells if cell is not None)
        return len(self._cells)
