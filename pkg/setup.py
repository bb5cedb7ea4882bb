import os, os.path, sys, re
from fnmatch import fnmatch
from setuptools import setup

MODULE_NAME = 'thermoplate'

IGNORE_PATTERNS = [
    '.*',
    '__pycache__',
    '*.pyc',
    '.vscode',
    '.DS_Store',
]
def is_ignore(fn):
    for pat in IGNORE_PATTERNS:
        if fnmatch(fn, pat):
            return True
    return False

# I can't import the version file the normal way because it loads
# __init__.py, which then imports numpy, scipy and django.
with open('thermoplate/version.py') as f:
    match = re.search(r"__version__\s=\s'(\d+\.\d+\.\d+)'", f.read())
    if not match:
        print('Cannot determine the thermoplate version. Aborting setup.py.')
        sys.exit(1)
    VERSION = match.group(1)


CLASSIFIERS = [
    'Development Status :: 4 - Beta',
    'Programming Language :: Python :: 3 :: Only',
    'Framework :: Django',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: Apache Software License',
    'Operating System :: OS Independent',
    'Topic :: Scientific/Engineering :: Physics',
    'Topic :: Scientific/Engineering :: Mathematics',
]
install_requires = [
    'django >= 3.2',
    'mako >= 1.0.0',
    'numpy >= 1.22',
    'scipy >= 1.8',
    'pyyaml >= 5.4',
    'pydantic >= 2.0',
]
extras_require = {
    'plot': [ 'matplotlib >= 3.5' ],
}


# Compile the list of packages available
packages = []
def walk(parent):
    for fname in os.listdir(parent):
        fpath = os.path.join(parent, fname)
        # skip hidden/cache files
        if is_ignore(fname):
            continue
        # if a directory, walk it
        elif os.path.isdir(fpath):
            walk(fpath)
        # if an __init__.py file, add the directory to the packages
        elif fname == '__init__.py':
            packages.append(os.path.dirname(fpath))
walk(MODULE_NAME)

data_files = []
# add the readme/license
data_files.extend([
    ('', [ 'readme.md' ]),
    ('', [ 'license.txt' ]),
])

# read the long description if sdist
description = 'Spectral simulator for quasilinear thermoelastic plates with Cattaneo heat flux'
long_description = description
if len(sys.argv) > 1 and sys.argv[1] == 'sdist':
    long_description = open('readme.md').read()

# run the setup
setup(
  name='thermoplate',
  description=description,
  long_description=long_description,
  long_description_content_type='text/markdown',
  version=VERSION,
  packages=packages,
  entry_points={
    'console_scripts': [
      'thermoplate = thermoplate.__main__:main'
    ]
  },
  python_requires='>=3.8',
  install_requires=install_requires,
  extras_require=extras_require,
  classifiers=CLASSIFIERS,
  license='Apache 2.0',
)
