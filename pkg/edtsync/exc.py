#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exceptions module
=============================
"""


class EdtException(Exception):
    """Core exception class, all exception inherit from this class."""


class EdtContractError(EdtException):
    """Raised when an operation is called with arguments violating its
    preconditions (mostly dimension mismatches)."""


class EdtEnumerationCapError(EdtException):
    """Raised when an integer enumeration would scan more candidate
    points than the configured cap."""


class EdtUnboundedError(EdtException):
    """Raised when enumeration is requested over an unbounded polyhedron."""


class EdtParseError(EdtException):
    """Raised when a polyhedron or graph file can not be parsed.

    :attr:`lineno` -- 1-based line number of the offending line, or None

    """

    def __init__(self, msg, lineno=None):
        if lineno is not None:
            msg = "line %d: %s" % (lineno, msg)
        super(EdtParseError, self).__init__(msg)
        self.lineno = lineno


class EdtCycleError(EdtException):
    """Raised when a task graph is not acyclic."""


class EdtInvariantError(EdtException):
    """Raised when the runtime detects a broken synchronization invariant."""


class EdtTagProtocolError(EdtException):
    """Raised on a double put, or on a put/get of a consumed one-use tag."""


class EdtDeadlockError(EdtException):
    """Raised when no task is runnable but the graph is incomplete.

    :attr:`stuck` -- sorted list of task ids that never ran

    """

    def __init__(self, msg, stuck=()):
        super(EdtDeadlockError, self).__init__(msg)
        self.stuck = list(stuck)


class EdtFitError(EdtException):
    """Raised when a growth exponent can not be fitted."""


class EdtConfigurationError(EdtException):
    """"""


class EdtValidationError(EdtException):
    """"""


class EdtVerificationError(EdtException):
    """Raised when a run violates one of the runtime invariants.

    :attr:`violations` -- list of human readable violation strings

    """

    def __init__(self, msg, violations=()):
        super(EdtVerificationError, self).__init__(msg)
        self.violations = list(violations)
