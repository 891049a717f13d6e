#!/usr/bin/env python3
"""
totalreal launcher
Runs the command-line interface from a source checkout
"""

import os
import sys

# Add project root to path
sys.path.append(os.path.dirname(__file__))

from services.cli import main

if __name__ == "__main__":
    sys.exit(main())
