#!/usr/bin/env python3

"""
CLI entry point wrapper for eofp.

This module serves as the entry point when eofp is installed via pip.
"""

import sys

from main import main


def run() -> None:
    """Console-script entry point: exit with the command's status."""
    sys.exit(main())


if __name__ == "__main__":
    run()
