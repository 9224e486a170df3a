#!/usr/bin/env python

from setuptools import setup, find_packages


def readfile(file):
    with open(file, 'r') as f:
        return f.read()


setup(
    name='segredecomp',
    version='0.1.0',
    description='Decomposition of linear mappings of product spaces through the Segre embedding',
    license='MIT',
    python_requires='>= 3.8',
    keywords='projective geometry segre finite fields',
    packages=find_packages(include=['segredecomp']),
    include_package_data=True,
    entry_points={
        'console_scripts': [
            'segredecomp=segredecomp.cli:run',
        ],
    },
    long_description=readfile('README.md'),
    long_description_content_type='text/markdown',
    classifiers=[
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Development Status :: 4 - Beta",
    ],
    install_requires=[
        'galois',
        'numpy',
        'pyyaml',
    ],
    extras_require={
        'tests': [
            'pytest',
            'hypothesis',
        ],
    },
)
