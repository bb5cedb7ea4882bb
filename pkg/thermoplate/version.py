# This file should have NO imports and be entirely standalone.
# This allows it to import into the runtime package as well as
# setup.py during installation.

__version__ = '1.0.0'
