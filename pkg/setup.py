from __future__ import print_function
import os
import re
import sys
from setuptools import setup


try:
    import numpy  # NOQA
except ImportError:
    print('numpy is required during installation')
    sys.exit(1)

try:
    import scipy  # NOQA
except ImportError:
    print('scipy is required during installation')
    sys.exit(1)


with open(os.path.join('thirring_automaton', '_version.py')) as f:
    VERSION = re.search(r'__version__ = "(.+)"', f.read()).group(1)

with open('requirements.txt') as f:
    INSTALL_REQUIRES = [l.strip() for l in f.readlines() if l.strip()]


setup(
    name='thirring-ca',
    version=VERSION,
    description='Fermionic cellular automaton for the two-colour Thirring model.',
    license='MIT',
    packages=[
        'thirring_automaton',
        'thirring_automaton.profiling',
        'thirring_automaton.scenarios'],
    package_data={'thirring_automaton': ['tests/data/*.csv']},
    install_requires=INSTALL_REQUIRES,
    entry_points={
        'console_scripts': ['thirring-ca=thirring_automaton.cli:main'],
    },
)
