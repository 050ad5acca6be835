#!/usr/bin/env python3
"""Plays PASS forever while chattering on stderr."""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from protocol_io import read_block

turn = 0
while read_block() is not None:
    turn += 1
    print(f"diagnostic line for turn {turn}", file=sys.stderr, flush=True)
    print("PASS", flush=True)
