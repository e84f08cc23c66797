#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
.. currentmodule:: edtsync.config

Configuration module
********************

Implements :class:`Config` and :class:`ConfigManager` to be used as
"configuration holders" and validators, and :class:`RunConfig`, the
validated view consumed by the commands.

"""

import os
import logging

from edtsync.utils import asbool, parse_int_list
from edtsync.graph import GENERATORS
from edtsync.runtime import PRESCHEDULE_POLICIES, SyncModel
from edtsync.exc import *

log = logging.getLogger(__name__)

ENV_PREFIX = 'EDTSYNC_'

MODEL_CHOICES = [str(m) for m in SyncModel]
PRESCHEDULE_CHOICES = PRESCHEDULE_POLICIES


class Config(dict):
    """Holds config values retrieved from various sources. To load
    configuration from a source use one of :meth:`from_*` method
    Class also defines specification for supported options in :attr:`allowed_options`.

    Values are retrieved with help of :meth:`Config.validate` method.

    Example::

        >>> Config.from_env({'EDTSYNC_ENUM_CAP': '1000'})
        <Config {'enum_cap': 1000}>

    :attr:`allowed_options` format::

        'name': ('Question ..', obj_type, default_value)

    """

    allowed_options = {
        # 'config_name': ("doc", "type", "default_value"),
        'command': ("Name of command that was invoked on CLI", str, ""),
        'model': ("Synchronization model (%s)" % ', '.join(MODEL_CHOICES), str, "autodec-src"),
        'graph': ("Graph generator name (%s) or path to a graph JSON file" % ', '.join(GENERATORS), str, "diamond"),
        'n': ("Task count for sized generators", int, 1000),
        'tiles': ("Tiles per dimension for the wavefront generator", int, 8),
        'edge_prob': ("Edge probability for the random generator", float, 0.1),
        'work_units': ("Synthetic spin work per task", int, 0),
        'workers': ("Number of worker lanes", int, 4),
        'seed': ("Seed for generators and scheduling jitter", int, 0),
        'jitter': ("Maximum seeded per-task delay in seconds", float, 0.0),
        'grace_period': ("Idle seconds before the deadlock detector fires", float, 2.0),
        'events': ("Record and write the event log", bool, False),
        'enum_cap': ("Maximum number of candidate points scanned by one enumeration", int, 10 ** 7),
        'preschedule': ("Tasks prescheduled by the autodec-src master (sources, all)", str, "sources"),
        'output': ("Output file, stdout when empty", str, ""),
        'csv': ("CSV output file (counters or benchmark rows), stdout when empty", str, ""),
        'event_log': ("Event log JSON output file", str, ""),
        'sizes': ("Comma separated sweep sizes", str, "256,512,1024,2048,4096"),
        'family': ("Graph family swept by bench", str, "chain"),
        'seeds': ("Number of seeds per verification cell", int, 5),
        'format': ("Format when printing JSON to stdout (use pygments identifier)", str, "none"),
        'nocolors': ("Disable colorful output", bool, False),
        'prescribers': ("Rounds of prescriber expansion to report (0 disables)", int, 0),
        'workers_list': ("Comma separated worker counts verified", str, "1,2,8"),
        'all_models': ("Verify every synchronization model", bool, False),
        'poly_command': ("Name of the poly sub-command", str, ""),
        'domain': ("Iteration domain polyhedron file", str, ""),
        'relation': ("Dependence relation polyhedron file", str, ""),
        'tiling': ("Source tile sizes, comma separated or a file", str, ""),
        'target_tiling': ("Target tile sizes, the source tiling when empty", str, ""),
        'params': ("Comma separated parameter values", str, ""),
        'dims': ("Comma separated dependence dimensions benchmarked", str, "4,6,8,10"),
        'instances': ("Generated instances per benchmarked dimension", int, 10),
    }

    def __repr__(self):
        return "<Config %s>" % dict.__repr__(self)

    ##  from_config

    @classmethod
    def from_argparse(cls, options):
        """Load config from argparse options.

        :param options: Arguments retrieved from `parser.parse_args()`
        :type options: `argparse.Namespace` instance
        :returns: :class:`Config` instance

        """
        return cls([i for i in iter(options.__dict__.items())
                    if i[1] is not None and i[0] in cls.allowed_options])

    @classmethod
    def from_env(cls, environ=None):
        """Load config from ``EDTSYNC_*`` environment variables.

        :param environ: Mapping to read, defaults to :data:`os.environ`
        :type environ: dict
        :returns: :class:`Config` instance

        """
        environ = os.environ if environ is None else environ
        d = []
        for key, value in environ.items():
            if not key.startswith(ENV_PREFIX):
                continue
            name = key[len(ENV_PREFIX):].lower()
            if name in cls.allowed_options:
                d.append((name, cls.validate(name, value)))
            else:
                log.debug("Ignoring unknown environment option %s", key)
        return cls(d)

    ## validate types
    @classmethod
    def validate(cls, name, value):
        """Validates and parses config value. Will dispatch calls to
        subvalidators based on type of the config option.

        :param name: key from :attr:`Config.allowed_options`
        :type name: string
        :param value: Value to be validated and parsed
        :type value: everything

        """
        validator = cls.allowed_options[name][1]
        if isinstance(validator, type):
            f = getattr(cls, 'validate_%s' % validator.__name__)
        else:
            f = getattr(cls, 'validate_%s' % validator)
        return f(value)

    @classmethod
    def validate_bool(cls, value):
        """Subvalidator which handles string values into bool

        :raises: :exc:`EdtValidationError` if not a bool

        """
        try:
            return asbool(value)
        except ValueError:
            raise EdtValidationError("Not a boolean (write y/n): %r" % value)

    @classmethod
    def validate_int(cls, value):
        """Subvalidator for integers

        :raises: :exc:`EdtValidationError` if not an integer

        """
        if isinstance(value, bool):
            raise EdtValidationError("Not an integer: %r" % value)
        try:
            return int(value)
        except (TypeError, ValueError):
            raise EdtValidationError("Not an integer: %r" % value)

    @classmethod
    def validate_float(cls, value):
        """Subvalidator for reals

        :raises: :exc:`EdtValidationError` if not a number

        """
        try:
            return float(value)
        except (TypeError, ValueError):
            raise EdtValidationError("Not a number: %r" % value)

    @classmethod
    def validate_str(cls, value):
        """Subvalidator for string.

        :raises: :exc:`EdtValidationError` if not a string

        """
        if isinstance(value, str):
            return value
        else:
            raise EdtValidationError("Not a string: %r" % value)


class ConfigManager(object):
    """Holds multiple :class:`Config` instances and retrieves
    values from them.

    :param use: Order of configuration taken in account
    :type use: list of strings
    :raises: :exc:`edtsync.exc.EdtConfigurationError` when:

        * no config is set
        * when option is retrieved that does not exist in :attr:`Config.allowed_options`
        * `use` does not have unique elements

    Example::

        >>> mgr = ConfigManager(['argparse', 'env'])
        >>> mgr.configs['argparse'] = Config({'workers': 8})
        >>> mgr.configs['env'] = Config({'workers': 2, 'seed': 3})
        >>> (mgr.workers, mgr.seed)
        (8, 3)

    """

    def __init__(self, use=None):
        use = ['argparse', 'env'] if use is None else use
        for config in use:
            if use.count(config) != 1:
                raise EdtConfigurationError("ConfigManager could not be setup"
                    ", config order has non-unique member: %s" % config)
        self.use = list(use)
        self.configs = {}

    def __repr__(self):
        return "<ConfigManager configs(%s) use(%s)>" % (list(self.configs.keys()), self.use)

    def __getattr__(self, name):
        if name.startswith('__'):
            raise AttributeError(name)
        if not self.configs:
            raise EdtConfigurationError("At least one config source must be used.")

        if name not in Config.allowed_options:
            raise EdtConfigurationError("No such option in Config.allowed_options: %s" % name)

        for config_name in self.use:
            value = self.configs.get(config_name, {}).get(name, None)
            if value is not None:
                log.debug("Got %r for %s from %s", value, name, config_name)
                return value

        return Config.allowed_options[name][2]

    @classmethod
    def from_sources(cls, args=None, environ=None):
        """Build the manager the command line uses: argparse values
        first, ``EDTSYNC_*`` environment variables second, defaults last.

        :param args: Parsed command line
        :type args: `argparse.Namespace` instance
        :param environ: Environment mapping, defaults to :data:`os.environ`

        """
        mgr = cls(['argparse', 'env'])
        mgr.configs['argparse'] = Config.from_argparse(args) if args is not None else Config()
        mgr.configs['env'] = Config.from_env(environ)
        return mgr


class RunConfig(object):
    """Validated, typed settings for one command invocation.

    :param mgr: Source of option values
    :type mgr: :class:`ConfigManager`
    :raises: :exc:`edtsync.exc.EdtValidationError` on an invalid value

    """

    FIELDS = ['model', 'graph', 'n', 'tiles', 'edge_prob', 'work_units', 'workers',
              'seed', 'jitter', 'grace_period', 'events', 'enum_cap', 'preschedule',
              'output', 'csv', 'event_log', 'family', 'seeds', 'format', 'nocolors',
              'prescribers', 'all_models', 'domain', 'relation', 'tiling', 'target_tiling',
              'instances']
    INT_LISTS = ['sizes', 'workers_list', 'params', 'dims']

    def __init__(self, mgr):
        for name in self.FIELDS:
            setattr(self, name, Config.validate(name, getattr(mgr, name)))
        for name in self.INT_LISTS:
            value = getattr(mgr, name)
            try:
                setattr(self, name, parse_int_list(value))
            except ValueError:
                raise EdtValidationError("%s: not a list of integers: %r" % (name, value))
        self.check()

    def __repr__(self):
        return "<RunConfig model=%s graph=%s workers=%d seed=%d>" % (
            self.model, self.graph, self.workers, self.seed)

    def check(self):
        """Validate value ranges and choices."""
        if self.model not in MODEL_CHOICES:
            raise EdtValidationError("Unknown model %r, choose from: %s"
                                     % (self.model, ', '.join(MODEL_CHOICES)))
        if self.preschedule not in PRESCHEDULE_CHOICES:
            raise EdtValidationError("Unknown preschedule policy %r" % self.preschedule)
        if self.workers < 1:
            raise EdtValidationError("workers must be >= 1, got %d" % self.workers)
        if self.n < 1 or self.tiles < 1:
            raise EdtValidationError("graph sizes must be >= 1")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise EdtValidationError("edge_prob must be within [0, 1], got %r" % self.edge_prob)
        if self.jitter < 0 or self.grace_period <= 0:
            raise EdtValidationError("jitter must be >= 0 and grace_period > 0")
        if self.enum_cap < 1 or self.work_units < 0 or self.seeds < 1:
            raise EdtValidationError("enum_cap and seeds must be >= 1, work_units >= 0")
        if self.sizes != sorted(set(self.sizes)) or any(s < 1 for s in self.sizes):
            raise EdtValidationError("sizes must be positive and strictly increasing: %r" % self.sizes)
        if not self.workers_list or any(w < 1 for w in self.workers_list):
            raise EdtValidationError("worker counts must be >= 1: %r" % self.workers_list)
        if self.prescribers < 0 or self.instances < 1:
            raise EdtValidationError("prescribers must be >= 0 and instances >= 1")
