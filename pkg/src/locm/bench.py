"""Forward-model throughput measurement: full random-vs-random games played
directly through the engine (no protocol text, no transcripts)."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import engine
from .agents import random_deck_numbers
from .cards import CardSet, GeneratorParams, default_card_set, generate_pool
from .deck import DraftState, finalize_deck
from .model import A_PASS, GameState, PH_BATTLE, RulesetConfig
from .rng import Rng, subseed


@dataclass
class BenchResult:
    games: int
    actions: int
    turns: int
    elapsed_s: float

    @property
    def games_per_sec(self) -> float:
        return self.games / self.elapsed_s if self.elapsed_s else 0.0

    @property
    def actions_per_sec(self) -> float:
        return self.actions / self.elapsed_s if self.elapsed_s else 0.0


def play_random_game(config: RulesetConfig, card_set: CardSet | None,
                     params: GeneratorParams | None, seed: int) -> tuple[int, int]:
    """One full game with both sides sampling uniformly from the legal
    actions. Returns (turns, actions applied)."""
    state = GameState(config)
    rngs = [Rng(subseed(seed, 0, "bench-agent")),
            Rng(subseed(seed, 1, "bench-agent"))]
    if config.has_draft():
        draft = DraftState(card_set, subseed(seed, "draft"), config.draft_turns)
        while not draft.complete:
            draft.options()
            draft.apply_pick(0, rngs[0].below(3))
            draft.apply_pick(1, rngs[1].below(3))
        picks = draft.picks
    else:
        pool = generate_pool(params, subseed(seed, "pool"))
        numbers = [c.number for c in pool.cards]
        by_number = pool.by_number()
        picks = []
        for seat in (0, 1):
            chosen = random_deck_numbers(numbers, rngs[seat],
                                         config.deck_size, config.max_copies)
            picks.append([by_number[n] for n in chosen])
    for seat in (0, 1):
        state.players[seat].deck = finalize_deck(
            picks[seat], subseed(seed, "shuffle", seat))
    engine.start_battle(state)
    actions = 0
    legal_actions = engine.legal_actions
    apply_action = engine.apply_action
    begin_turn = engine.begin_turn
    end_turn = engine.end_turn
    while state.phase == PH_BATTLE:
        begin_turn(state)
        rng = rngs[state.active]
        while True:
            acts = legal_actions(state)
            act = acts[rng.below(len(acts))]
            if act[0] == A_PASS:
                break
            apply_action(state, act)
            actions += 1
            if state.phase != PH_BATTLE:
                break
        if state.phase == PH_BATTLE:
            end_turn(state)
    return state.turn, actions


def run_bench(version: str = "1.2", seconds: float = 3.0,
              seed: int = 0) -> BenchResult:
    """Play random games for at least ``seconds`` of wall clock."""
    config = RulesetConfig.for_version(version)
    card_set = default_card_set() if config.has_draft() else None
    params = GeneratorParams() if not config.has_draft() else None
    games = 0
    actions = 0
    turns = 0
    start = time.perf_counter()
    deadline = start + seconds
    while time.perf_counter() < deadline:
        t, a = play_random_game(config, card_set, params,
                                subseed(seed, "bench-game", games))
        games += 1
        actions += a
        turns += t
    elapsed = time.perf_counter() - start
    return BenchResult(games=games, actions=actions, turns=turns,
                       elapsed_s=elapsed)
