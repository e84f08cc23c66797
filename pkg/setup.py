#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages


setup(name='edtsync',
    version='0.1',
    description="Event-driven task runtime comparing task graph synchronization models",
    long_description="""Runs task graphs under prescribed, tag based, counted and
autodec synchronization, meters their overheads and derives tile
dependences of polyhedral programs by compression.""",
    keywords='task graph runtime synchronization autodec polyhedral tiling',
    include_package_data=True,
    zip_safe=False,
    packages=find_packages(),
    package_data={'edtsync': ['templates/*.jinja', 'tests/samples/*']},
    classifiers=[
        'Topic :: Software Development :: Compilers',
        'Topic :: System :: Distributed Computing',
        'License :: OSI Approved :: BSD License',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'Development Status :: 4 - Beta',
        'Programming Language :: Python :: 3',
        'Operating System :: OS Independent',
        'Environment :: Console',
    ],
    python_requires='>=3.8',
    install_requires=[
        'jinja2',
        'pygments',
        'numpy',
    ],
    tests_require=[
        'pytest',
        'mock',
        'hypothesis',
    ],
    extras_require={
        'test': ['pytest', 'mock', 'hypothesis'],
        'docs': ['sphinx'],
    },
    entry_points={
        'console_scripts': ['edtsync = edtsync.cli:main']
    },
)
