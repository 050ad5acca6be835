"""Single-match orchestration: agents in, transcript and result out.

``run_match`` drives the full game (draft or construction, deck
finalization, then the battle loop) between two agents named by spec
strings. A name found in the built-in registry runs in process; anything
else is treated as an external command speaking the wire protocol.

Every random stream derives from the match seed via tagged subseeds:

    subseed(seed, "draft")          draft option stream
    subseed(seed, "pool")           1.5 card pool
    subseed(seed, "pad", seat)      construction padding picks
    subseed(seed, "shuffle", seat)  deck order
    subseed(seed, repeat, seat, "agent")   stochastic agents' internal seed

Only the last one involves the repeat index, so repeats of one seed replay
the identical cards, and a mirrored pair shares its setup exactly.
"""

from __future__ import annotations

import os
import re
import time
from dataclasses import asdict, dataclass, field

from . import engine
from .agents import BUILTIN_AGENTS, make_agent
from .cards import (CardSet, GeneratorParams, default_card_set,
                    format_card_line, generate_pool, load_card_set)
from .deck import (ConstructionState, DeckPhaseError, DraftState,
                   finalize_deck)
from .engine import (APPLIED, OVER, REJECTED, REASON_CRASH,
                     REASON_DISQUALIFIED, REASON_INVALID, REASON_TIMEOUT)
from .model import (A_CHOOSE, A_PASS, A_PICK, GameState, PH_BATTLE,
                    RulesetConfig, Version)
from .protocol import parse_agent_output, render_action, render_turn_input
from .rng import Rng, subseed
from .runtime import (Budget, MOVE_CRASH, MOVE_DISQUALIFIED, MOVE_OK,
                      MOVE_TIMEOUT, SpawnError, spawn_agent)


class MatchInfraError(Exception):
    """Environment failure (spawn, IO): retriable, not an agent forfeit."""


@dataclass(frozen=True)
class MatchSpec:
    agent_a: str
    agent_b: str
    seed: int
    repeat: int = 0
    orientation: str = "AFirst"           # AFirst | BFirst
    config: RulesetConfig = field(default_factory=RulesetConfig)
    card_set_path: str | None = None      # 1.0/1.2 set; packaged default if None
    generator_params: GeneratorParams | None = None
    schedule_id: str = ""

    def seat_agents(self) -> tuple[str, str]:
        if self.orientation == "BFirst":
            return self.agent_b, self.agent_a
        return self.agent_a, self.agent_b

    def match_id(self) -> str:
        return (f"{_slug(self.agent_a)}-vs-{_slug(self.agent_b)}"
                f"-s{self.seed & 0xFFFFFFFFFFFFFFFF:016x}"
                f"-r{self.repeat}-{self.orientation}")


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", text)[:48] or "agent"


@dataclass
class MatchResult:
    spec: MatchSpec
    winner: str                  # "A" | "B" | "draw"
    winner_seat: int | None
    reason: str
    turns: int
    ignored: tuple[int, int]     # per seat
    parse_errors: tuple[int, int]
    duration_ms: int
    move_times_ms: list[float]
    transcript: dict | None
    notes: list[str] = field(default_factory=list)


_FORFEIT_REASONS = {
    MOVE_TIMEOUT: REASON_TIMEOUT,
    MOVE_CRASH: REASON_CRASH,
    MOVE_DISQUALIFIED: REASON_DISQUALIFIED,
}


class _InProcessDriver:
    external = False

    def __init__(self, name: str):
        self.name = name
        self.agent = make_agent(name)

    def start(self, config, seat, seed, log_dir):
        self.agent.reset(config, seat, seed)

    def move(self, text: str, budget_ms: int):
        return self.agent.act(text), MOVE_OK

    def close(self):
        pass


class _ExternalDriver:
    external = True

    def __init__(self, command: str):
        self.name = command
        self.command = command
        self.handle = None

    def start(self, config, seat, seed, log_dir):
        stderr_path = None
        if log_dir is not None:
            try:
                os.makedirs(log_dir, exist_ok=True)
            except OSError as exc:
                raise MatchInfraError(
                    f"cannot create log directory {log_dir}: {exc}") from exc
            stderr_path = os.path.join(log_dir, f"seat{seat}.stderr.txt")
        budget = Budget(
            per_turn_ms=config.battle_turn_ms,
            first_turn_ms=max(config.battle_turn_ms, config.construction_ms),
            mem_soft_bytes=config.mem_soft_bytes,
            mem_hard_bytes=config.mem_hard_bytes,
        )
        self.handle = spawn_agent(self.command, stderr_path, budget)

    def move(self, text: str, budget_ms: int):
        line, status = self.handle.request_move(text, budget_ms)
        return line, status

    def close(self):
        if self.handle is not None:
            self.handle.close()
            self.handle = None


def _make_driver(agent_spec: str):
    if agent_spec in BUILTIN_AGENTS:
        return _InProcessDriver(agent_spec)
    return _ExternalDriver(agent_spec)


class _Forfeit(Exception):
    def __init__(self, seat: int, reason: str):
        super().__init__(reason)
        self.seat = seat
        self.reason = reason


def _load_card_set(spec: MatchSpec) -> CardSet:
    if spec.card_set_path is not None:
        return load_card_set(spec.card_set_path)
    return default_card_set()


def run_match(spec: MatchSpec, record: bool = True,
              log_root: str | None = None,
              drivers_override: list | None = None) -> MatchResult:
    """Play one match to completion. Infrastructure failures raise
    MatchInfraError; every agent failure becomes a forfeit result."""
    config = spec.config
    seat_names = spec.seat_agents()
    if drivers_override is not None:
        drivers = list(drivers_override)
    else:
        drivers = [_make_driver(seat_names[0]), _make_driver(seat_names[1])]
    if log_root is None:
        log_root = os.environ.get("LOCM_LOG_DIR", "logs")
    match_log_dir = (os.path.join(log_root, spec.match_id())
                     if any(d.external for d in drivers) else None)

    state = GameState(config)
    events: list | None = [] if record else None
    turns_record: list[dict] = []
    move_times: list[float] = []
    ignored = [0, 0]
    parse_errors = [0, 0]
    setup_info: dict = {}
    card_universe: dict[int, object] = {}
    started = time.perf_counter()
    first_move_done = [False, False]

    ctx = _MatchCtx(spec, config, state, events, turns_record, move_times,
                    ignored, parse_errors, drivers, first_move_done)
    notes: list[str] = []
    try:
        try:
            for seat in (0, 1):
                try:
                    drivers[seat].start(
                        config, seat,
                        subseed(spec.seed, spec.repeat, seat, "agent"),
                        match_log_dir)
                except SpawnError as exc:
                    notes.append(f"seat {seat} ({seat_names[seat]}): {exc}")
                    raise _Forfeit(seat, REASON_CRASH) from exc
            if config.has_draft():
                _run_draft(ctx, setup_info, card_universe)
            else:
                _run_construction(ctx, setup_info, card_universe)
            _run_battle(ctx)
        except _Forfeit as f:
            engine.forfeit(state, f.seat, f.reason, events)
    finally:
        for d in drivers:
            d.close()

    duration_ms = int((time.perf_counter() - started) * 1000)
    winner_seat = state.winner if state.winner in (0, 1) else None
    if winner_seat is None:
        winner = "draw"
    else:
        first_is_a = spec.orientation != "BFirst"
        winner = ("A" if (winner_seat == 0) == first_is_a else "B")
    transcript = None
    if record:
        transcript = _build_transcript(
            spec, seat_names, state, setup_info, card_universe,
            turns_record, winner, winner_seat, ignored, parse_errors)
    return MatchResult(
        spec=spec, winner=winner, winner_seat=winner_seat,
        reason=state.win_reason or "HealthZero", turns=state.turn,
        ignored=(ignored[0], ignored[1]),
        parse_errors=(parse_errors[0], parse_errors[1]),
        duration_ms=duration_ms, move_times_ms=move_times,
        transcript=transcript, notes=notes)


class _MatchCtx:
    def __init__(self, spec, config, state, events, turns_record, move_times,
                 ignored, parse_errors, drivers, first_move_done):
        self.spec = spec
        self.config = config
        self.state = state
        self.events = events
        self.turns_record = turns_record
        self.move_times = move_times
        self.ignored = ignored
        self.parse_errors = parse_errors
        self.drivers = drivers
        self.first_move_done = first_move_done

    def request(self, seat: int, view: str, budget_ms: int) -> str:
        if not self.first_move_done[seat]:
            budget_ms += self.config.first_move_grace_ms
            self.first_move_done[seat] = True
        t0 = time.perf_counter()
        line, status = self.drivers[seat].move(view, budget_ms)
        self.move_times.append((time.perf_counter() - t0) * 1000.0)
        if status != MOVE_OK:
            raise _Forfeit(seat, _FORFEIT_REASONS.get(status, REASON_CRASH))
        return line

    def parse(self, line: str, phase: int, seat: int):
        actions, err = parse_agent_output(line, phase, self.config)
        if err is not None:
            self.parse_errors[seat] += 1
            if self.config.policy == "strict":
                raise _Forfeit(seat, REASON_INVALID)
            if self.events is not None:
                self.events.append(("ignored", line[:120], f"parse: {err}"))
        return actions

    def note_ignored(self, seat: int, text: str, reason: str):
        self.ignored[seat] += 1
        if self.events is not None:
            self.events.append(("ignored", text, reason))


def _record_turn(ctx: _MatchCtx, phase: str, seat: int, view: str,
                 output: str, applied: list[str], ev_start: int,
                 turn: int | None = None) -> None:
    entry = {
        "phase": phase,
        "seat": seat,
        "turn": ctx.state.turn if turn is None else turn,
        "input": view,
        "output": output,
        "actions": applied,
    }
    if ctx.events is not None:
        entry["events"] = [list(e) for e in ctx.events[ev_start:]]
    ctx.turns_record.append(entry)


def _run_draft(ctx: _MatchCtx, setup_info: dict, card_universe: dict) -> None:
    spec, config, state = ctx.spec, ctx.config, ctx.state
    card_set = _load_card_set(spec)
    draft = DraftState(card_set, subseed(spec.seed, "draft"),
                       config.draft_turns)
    state.setup = draft
    option_numbers = []
    while not draft.complete:
        options = draft.options()
        option_numbers.append([c.number for c in options])
        for c in options:
            card_universe[c.number] = c
        for seat in (0, 1):
            ev_start = len(ctx.events) if ctx.events is not None else 0
            view = render_turn_input(state, seat)
            line = ctx.request(seat, view, config.battle_turn_ms)
            actions = ctx.parse(line, state.phase, seat)
            index = None
            for a in actions:
                if a[0] == A_PICK:
                    index = a[1]
                    break
            if index is None:
                ctx.note_ignored(seat, line[:120], "no PICK in reply")
                index = 0
            try:
                _, used = draft.apply_pick(seat, index, config.policy)
            except DeckPhaseError as exc:
                raise _Forfeit(seat, REASON_INVALID) from exc
            if used != index:
                ctx.note_ignored(seat, f"PICK {index}",
                                 "pick index out of range")
            _record_turn(ctx, "draft", seat, view, line,
                         [f"PICK {used}"], ev_start)
    setup_info["draft_options"] = option_numbers
    setup_info["picks"] = [[c.number for c in draft.picks[s]] for s in (0, 1)]
    _finalize_decks(ctx, [draft.picks[0], draft.picks[1]], setup_info)


def _run_construction(ctx: _MatchCtx, setup_info: dict,
                      card_universe: dict) -> None:
    spec, config, state = ctx.spec, ctx.config, ctx.state
    params = spec.generator_params or GeneratorParams()
    pool = generate_pool(params, subseed(spec.seed, "pool"))
    for c in pool.cards:
        card_universe[c.number] = c
    construction = ConstructionState(pool, config.deck_size, config.max_copies)
    state.setup = construction
    decks = []
    setup_info["pool"] = [c.number for c in pool.cards]
    for seat in (0, 1):
        ev_start = len(ctx.events) if ctx.events is not None else 0
        view = render_turn_input(state, seat)
        line = ctx.request(seat, view, config.construction_ms)
        actions = ctx.parse(line, state.phase, seat)
        numbers = ()
        for a in actions:
            if a[0] == A_CHOOSE:
                numbers = a[1]
                break
        pad_rng = Rng(subseed(spec.seed, "pad", seat))
        try:
            deck = construction.apply_choice(seat, numbers, pad_rng,
                                             config.policy)
        except DeckPhaseError as exc:
            raise _Forfeit(seat, REASON_INVALID) from exc
        decks.append(deck)
        _record_turn(ctx, "construction", seat, view, line,
                     [f"CHOOSE {n}" for n in construction.picks[seat]],
                     ev_start)
    setup_info["picks"] = [list(construction.picks[0]),
                           list(construction.picks[1])]
    _finalize_decks(ctx, decks, setup_info)


def _finalize_decks(ctx: _MatchCtx, picks, setup_info: dict) -> None:
    state, spec = ctx.state, ctx.spec
    decks = []
    for seat in (0, 1):
        deck = finalize_deck(picks[seat], subseed(spec.seed, "shuffle", seat))
        state.players[seat].deck = deck
        decks.append([c.number for c in deck])
    setup_info["decks"] = decks
    state.setup = None
    engine.start_battle(state, ctx.events)


def _run_battle(ctx: _MatchCtx) -> None:
    state, config = ctx.state, ctx.config
    version = config.version
    while state.phase == PH_BATTLE:
        ev_start = len(ctx.events) if ctx.events is not None else 0
        engine.begin_turn(state, ctx.events)
        turn_no = state.turn
        seat = state.active
        view = render_turn_input(state, seat)
        line = ctx.request(seat, view, config.battle_turn_ms)
        actions = ctx.parse(line, PH_BATTLE, seat)
        applied: list[str] = []
        for a in actions:
            if a[0] == A_PASS:
                break
            code, reason = engine.apply_action(state, a, config.policy,
                                               ctx.events)
            if code == REJECTED:
                raise _Forfeit(seat, REASON_INVALID)
            if code == OVER:
                break
            if code == APPLIED:
                applied.append(render_action(a, version))
            else:
                ctx.ignored[seat] += 1
            if state.phase != PH_BATTLE:
                break
        state.last_actions[seat] = applied
        if state.phase == PH_BATTLE:
            engine.end_turn(state, ctx.events)
        _record_turn(ctx, "battle", seat, view, line, applied, ev_start,
                     turn=turn_no)


def _build_transcript(spec, seat_names, state, setup_info, card_universe,
                      turns_record, winner, winner_seat, ignored,
                      parse_errors) -> dict:
    with_area = spec.config.version is Version.V15
    cards = {
        str(n): format_card_line(card, with_area)
        for n, card in sorted(card_universe.items())
    }
    out = {
        "format": 1,
        "version": spec.config.version.value,
        "agent_a": spec.agent_a,
        "agent_b": spec.agent_b,
        "orientation": spec.orientation,
        "agents_by_seat": list(seat_names),
        "seed": spec.seed,
        "repeat": spec.repeat,
        "policy": spec.config.policy,
        "cards": cards,
        "setup": setup_info,
        "turns": turns_record,
        "result": {
            "winner": winner,
            "winner_seat": winner_seat,
            "reason": state.win_reason or "HealthZero",
            "turns": state.turn,
            "final_health": [state.players[0].health,
                             state.players[1].health],
            "ignored": list(ignored),
            "parse_errors": list(parse_errors),
        },
    }
    if spec.card_set_path is not None:
        out["card_set_path"] = spec.card_set_path
    if spec.generator_params is not None:
        out["generator_params"] = asdict(spec.generator_params)
    return out
