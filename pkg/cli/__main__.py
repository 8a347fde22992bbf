"""
Entry point for running the command line as a module.

Usage:
    python -m smoothphi.cli rho --u 2
"""

import sys

from . import main

if __name__ == "__main__":
    sys.exit(main())
