#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Helpers shared by the command line and the library: boolean parsing,
terminal logging, output highlighting and template rendering.
"""

import sys
import logging

from jinja2 import Environment, PackageLoader
from pygments import highlight
from pygments.lexers import get_lexer_by_name
from pygments.formatters import get_formatter_by_name
from pygments.util import ClassNotFound

TEMPLATE_PACKAGE = 'edtsync'
_env = None


def asbool(obj):
    """Do everything to consider ``obj`` as  boolean.

    Example::

        >>> asbool('y')
        True

    :raises: :exc:`ValueError` -- If object could not be booleanized.

    """
    if isinstance(obj, str):
        obj = obj.strip().lower()
        if obj in ['true', 'yes', 'on', 'y', 't', '1']:
            return True
        elif obj in ['false', 'no', 'off', 'n', 'f', '0']:
            return False
        else:
            raise ValueError("String is not true/false: %r" % obj)
    return bool(obj)


def parse_int_list(value):
    """Parse a comma separated list of integers.

    Example::

        >>> parse_int_list('256, 512,1024')
        [256, 512, 1024]

    :raises: :exc:`ValueError` -- on a non-integer item

    """
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    return [int(v) for v in str(value).split(',') if v.strip()]


def template_env():
    """Jinja2 environment loading from ``edtsync/templates``."""
    global _env
    if _env is None:
        _env = Environment(loader=PackageLoader(TEMPLATE_PACKAGE, 'templates'),
                           trim_blocks=True, lstrip_blocks=True)
    return _env


def render(template_name, **context):
    """Render a template shipped with the package.

    :param template_name: File name under ``edtsync/templates``
    :type template_name: string
    :returns: rendered text
    :rtype: string

    """
    return template_env().get_template(template_name).render(**context)


def highlight_output(text, lexer='json', fmt='none', background='dark'):
    """Highlight ``text`` for terminal output with pygments.

    :param lexer: pygments lexer alias
    :param fmt: pygments formatter alias; ``none`` returns text unchanged
    :returns: text, highlighted when a formatter was requested

    """
    if not fmt or fmt == 'none':
        return text
    try:
        formatter = get_formatter_by_name(fmt, bg=background)
    except ClassNotFound:
        logging.getLogger(__name__).warning('Unknown output format %r, printing plain text', fmt)
        return text
    return highlight(text, get_lexer_by_name(lexer), formatter)


class EdtStreamHandler(logging.StreamHandler):
    """StreamHandler writing to stderr so stdout stays machine readable"""

    def __init__(self, stream=None):
        logging.StreamHandler.__init__(self, stream or sys.stderr)


class EdtFormatter(logging.Formatter):
    """Logging formatter prefixing messages with a coloured level marker,
    Gentoo style: `` * `` for info, `` * WARNING:`` and `` !! ``.
    """

    COLORS = {
        logging.DEBUG: '\x1b[36;01m',
        logging.INFO: '\x1b[32;01m',
        logging.WARNING: '\x1b[33;01m',
        logging.ERROR: '\x1b[31;01m',
    }
    MARKERS = {
        logging.DEBUG: ' - ',
        logging.INFO: ' * ',
        logging.WARNING: ' * WARNING: ',
        logging.ERROR: ' !! ',
    }
    RESET = '\x1b[39;49;00m'

    def __init__(self, fmt='%(message)s', colors=True):
        logging.Formatter.__init__(self, fmt)
        self.colors = colors

    def format(self, record):
        """format according to logging level"""
        output = logging.Formatter.format(self, record)
        level = min(max(record.levelno, logging.DEBUG), logging.ERROR)
        level = max(l for l in self.MARKERS if l <= level)
        marker = self.MARKERS[level]
        if self.colors:
            marker = self.COLORS[level] + marker + self.RESET
        return marker + output
