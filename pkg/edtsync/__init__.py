#!/usr/bin/env python
# -*- coding: utf-8 -*-

try:
    from importlib.metadata import version, PackageNotFoundError
    __version__ = version('edtsync')
except (ImportError, PackageNotFoundError):
    __version__ = '0.1'
