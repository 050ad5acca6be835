"""Minimal stdin block reader shared by the fixture agents."""

import sys


def read_block():
    first = sys.stdin.readline()
    if not first:
        return None
    lines = [first, sys.stdin.readline()]
    counts = sys.stdin.readline()
    lines.append(counts)
    _, opp_actions = (int(x) for x in counts.split())
    for _ in range(opp_actions):
        lines.append(sys.stdin.readline())
    card_count_line = sys.stdin.readline()
    lines.append(card_count_line)
    for _ in range(int(card_count_line)):
        lines.append(sys.stdin.readline())
    return "".join(lines)
