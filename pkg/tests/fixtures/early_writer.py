#!/usr/bin/env python3
"""Emits its reply before consuming the turn input (deadlock probe)."""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from protocol_io import read_block

while True:
    print("PASS", flush=True)
    if read_block() is None:
        break
