#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
import logging
import unittest

#: heavy sweeps and 1000-trial race harnesses only run with EDTSYNC_ACCEPTANCE=1
ACCEPTANCE = bool(os.environ.get('EDTSYNC_ACCEPTANCE'))

acceptance = unittest.skipIf(not ACCEPTANCE, 'set EDTSYNC_ACCEPTANCE=1 to run')


class BaseTestCase(unittest.TestCase):
    """Common unittesting utility helpers"""
    SAMPLES_DIR = os.path.join(
        os.path.dirname(os.path.abspath(__file__)), 'samples')

    def sample(self, name):
        return os.path.join(self.SAMPLES_DIR, name)

    def capture_logs(self, name=None, level=logging.DEBUG):
        """Attach a :class:`ListHandler` to a logger for the test."""
        handler = ListHandler()
        logger = logging.getLogger(name)
        old_level = logger.level
        logger.addHandler(handler)
        logger.setLevel(level)
        self.addCleanup(logger.removeHandler, handler)
        self.addCleanup(logger.setLevel, old_level)
        return handler


class ListHandler(logging.Handler):
    """Mocking handler that stores logging messages in the class itself"""

    def __init__(self, *a, **kw):
        self.debug = []
        self.warning = []
        self.info = []
        self.error = []
        self.critical = []
        logging.Handler.__init__(self, *a, **kw)

    def emit(self, record):
        getattr(self, record.levelname.lower()).append(record.getMessage())

    def reset(self):
        for attr in dir(self):
            if isinstance(getattr(self, attr), list):
                setattr(self, attr, [])
