#!/usr/bin/env python3

import sys
from importlib.metadata import version, PackageNotFoundError

from setuptools import setup, find_packages, Command

VERSION = __import__('sdcd').__version__

MODS = [
    'numpy >= 1.17', 'python-dateutil >= 2.0', 'geojson >= 2.5',
    'PyYAML >= 5.1',
]
MODS_TEST = ['scipy >= 1.4']

def _py_inst(mods, py_miss):
    """
    Print Python module installation suggestion.
    """
    for m in mods:
        if m not in py_miss:
            continue

        print('''\
  Install {} Python module with command

      pip install --user '{}'
'''.format(m.split()[0], m))

class CheckDeps(Command):
    description = 'Check core and test SDCD dependencies'
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        python_ok = sys.version_info >= (3, 8)
        mods = MODS + MODS_TEST
        ic = len(MODS)
        py_miss = set()

        print('Checking SDCD dependencies')

        print('Checking Python version >= 3.8... {}' \
                .format('ok' if python_ok else 'no'))

        # check Python modules
        for i, m in enumerate(mods):
            t = 'core' if i < ic else 'test'
            name = m.split()[0]
            print('Checking {} Python module {}... '.format(t, m), end='')
            try:
                print('ok ({})'.format(version(name)))
            except PackageNotFoundError:
                print('not found')
                py_miss.add(m)

        # print installation suggestions
        if py_miss and py_miss.intersection(mods[:ic]) or not python_ok:
            print('\nMissing core dependencies:\n')
        if not python_ok:
            print('  Use Python 3.8 at least!!!\n')
        _py_inst(mods[:ic], py_miss)

        if py_miss and py_miss.intersection(mods[ic:]):
            print('\nMissing test dependencies:\n')
        _py_inst(mods[ic:], py_miss)



setup(
    name='sdcd',
    version=VERSION,
    description='SDCD is streaming delay change detection for public'
        ' transport',
    author='SDCD team',
    packages=find_packages('.'),
    scripts=('bin/sdcd',),
    include_package_data=True,
    long_description=\
"""\
SDCD detects statistically significant changes of public transport
vehicle delays in a stream of vehicle location records. Each edge of
public transport network (or each edge and hour of day) has its own change
detector (ADWIN, KSWIN or HDDM_A).
""",
    classifiers=[
        'License :: OSI Approved :: GNU General Public License (GPL)',
        'Programming Language :: Python :: 3',
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
    ],
    keywords='public transport delay change detection stream adwin kswin'
        ' hddm geojson',
    license='GPL',
    python_requires='>=3.8',
    install_requires=MODS,
    tests_require=MODS_TEST,
    extras_require={'test': MODS_TEST},
    test_suite='sdcd.tests',
    cmdclass={
        'deps': CheckDeps,
    },
)

# vim: sw=4:et:ai
