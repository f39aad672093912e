#!/usr/bin/env python3
"""Regenerate the committed fixture instances from their manifest seeds.

Output is byte-identical to the files under fixtures/; run after changing
the generator only if you intend to re-pin the fixtures.
"""

import sys
from pathlib import Path

from gridsched.cli import main as gridsched_main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).resolve().parent.parent / "fixtures")
    sys.exit(gridsched_main(["gen", "--fixtures", "--out", out]))
