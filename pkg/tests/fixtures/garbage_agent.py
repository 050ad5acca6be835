#!/usr/bin/env python3
"""Replies with text that is not part of the command grammar."""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from protocol_io import read_block

while read_block() is not None:
    print("FROBNICATE 1 2 3 !!!", flush=True)
