"""Transcript verification by re-simulation.

A transcript records everything an agent contributed (its raw output lines)
plus everything the engine derived (views, events, outcome). Verification
replays the match through the real loop with playback drivers that feed the
recorded outputs back in, then compares the regenerated transcript field by
field. Any edit to a recorded event, input, or result shows up as a
divergence at its first point of disagreement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cards import GeneratorParams
from .match import MatchSpec, run_match
from .model import RulesetConfig
from .runtime import (MOVE_CRASH, MOVE_DISQUALIFIED, MOVE_OK, MOVE_TIMEOUT,
                      SpawnError)


@dataclass
class ReplayReport:
    ok: bool
    divergence: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class _PlaybackDriver:
    """Feeds recorded output lines back to the match loop; reproduces a
    recorded forfeit when its lines run out (or at startup, for a match
    that never reached a move request)."""

    external = False

    def __init__(self, lines: list[str], final_status: str | None,
                 fail_at_start: bool = False):
        self.lines = list(lines)
        self.final_status = final_status
        self.fail_at_start = fail_at_start
        self.cursor = 0

    def start(self, config, seat, seed, log_dir):
        if self.fail_at_start:
            raise SpawnError("recorded startup failure")

    def move(self, text: str, budget_ms: int):
        if self.cursor >= len(self.lines):
            return None, self.final_status or MOVE_CRASH
        line = self.lines[self.cursor]
        self.cursor += 1
        return line, MOVE_OK

    def close(self):
        pass


_FORFEIT_TO_STATUS = {
    "Timeout": MOVE_TIMEOUT,
    "Crash": MOVE_CRASH,
    "Disqualified": MOVE_DISQUALIFIED,
}


def spec_from_transcript(t: dict) -> MatchSpec:
    config = RulesetConfig.for_version(t["version"], policy=t.get("policy", "lenient"))
    params = None
    if "generator_params" in t:
        raw = dict(t["generator_params"])
        for key in ("type_weights", "cost_weights", "area_weights"):
            if key in raw:
                raw[key] = tuple(raw[key])
        params = GeneratorParams(**raw)
    return MatchSpec(
        agent_a=t["agent_a"], agent_b=t["agent_b"], seed=t["seed"],
        repeat=t.get("repeat", 0), orientation=t.get("orientation", "AFirst"),
        config=config, card_set_path=t.get("card_set_path"),
        generator_params=params)


def resimulate(t: dict) -> dict:
    """Re-run the recorded match; returns the regenerated transcript."""
    spec = spec_from_transcript(t)
    lines: list[list[str]] = [[], []]
    for entry in t["turns"]:
        lines[entry["seat"]].append(entry["output"])
    result = t.get("result", {})
    reason = result.get("reason")
    offender = None
    if reason in _FORFEIT_TO_STATUS and result.get("winner_seat") in (0, 1):
        offender = 1 - result["winner_seat"]
    drivers = []
    no_turns = not t["turns"]
    for seat in (0, 1):
        is_offender = offender is not None and seat == offender
        final = _FORFEIT_TO_STATUS.get(reason) if is_offender else None
        drivers.append(_PlaybackDriver(
            lines[seat], final,
            fail_at_start=is_offender and no_turns and reason == "Crash"))
    regenerated = run_match(spec, record=True, drivers_override=drivers)
    return regenerated.transcript


def _diff(path: str, a, b) -> str | None:
    if isinstance(a, dict) and isinstance(b, dict):
        for key in sorted(set(a) | set(b)):
            if key not in a:
                return f"{path}.{key}: missing from recorded transcript"
            if key not in b:
                return f"{path}.{key}: missing from re-simulation"
            d = _diff(f"{path}.{key}", a[key], b[key])
            if d:
                return d
        return None
    if isinstance(a, list) and isinstance(b, list):
        for i, (x, y) in enumerate(zip(a, b)):
            d = _diff(f"{path}[{i}]", x, y)
            if d:
                return d
        if len(a) != len(b):
            return (f"{path}: recorded {len(a)} entries, "
                    f"re-simulation produced {len(b)}")
        return None
    if a != b:
        return f"{path}: recorded {a!r}, re-simulation produced {b!r}"
    return None


def verify_transcript(t: dict) -> ReplayReport:
    """Re-simulate and compare: setup, per-turn views/actions/events, and
    the final result must all match the recording exactly."""
    try:
        regen = resimulate(t)
    except Exception as exc:
        return ReplayReport(False, f"re-simulation failed: {exc}")
    for section in ("setup", "turns", "result", "cards"):
        d = _diff(section, t.get(section), regen.get(section))
        if d:
            return ReplayReport(False, d)
    return ReplayReport(True)


def load_transcript(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_protocol(t: dict) -> str:
    """The exact per-turn agent inputs, in order."""
    blocks = []
    for entry in t["turns"]:
        blocks.append(f"--- {entry['phase']} turn {entry['turn']} "
                      f"seat {entry['seat']} ---")
        blocks.append(entry["input"].rstrip("\n"))
        blocks.append(f">>> {entry['output']}")
    return "\n".join(blocks) + "\n"
