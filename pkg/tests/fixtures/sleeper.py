#!/usr/bin/env python3
"""Reads each turn, then sleeps far past any reasonable budget."""
import os
import sys
import time

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from protocol_io import read_block

delay = float(sys.argv[1]) if len(sys.argv) > 1 else 30.0
while read_block() is not None:
    time.sleep(delay)
    print("PASS", flush=True)
