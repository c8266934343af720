#!/usr/bin/env python

from setuptools import setup

setup(
    name='hlat',
    version='0.1.0',
    description='Exact lattice invariants and certified bounds on the instanton h-invariant',
    packages=['hlat'],
    package_dir={
        'hlat': 'src'
    },
    entry_points={
        'console_scripts': [
            'hlat = hlat.hlat:go'
        ]
    },
    python_requires='>=3.8',
    install_requires=[
        'numpy',
        'GitPython'
    ],
    extras_require={
        'test': [
            'hypothesis'
        ]
    }
)
