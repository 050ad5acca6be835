"""Shared builders for the test suite."""

from __future__ import annotations

from locm import engine
from locm.model import (BoardCreature, Card, GameState, PH_BATTLE,
                        RulesetConfig)


def make_card(number=1, name="test", type=0, cost=1, attack=1, defense=1,
              keywords=0, my_health=0, opp_health=0, draw=0, area=0) -> Card:
    return Card(number=number, name=name, type=type, cost=cost, attack=attack,
                defense=defense, keywords=keywords, my_health=my_health,
                opp_health=opp_health, draw=draw, area=area)


def battle_state(config: RulesetConfig | None = None,
                 decks: tuple[list, list] | None = None) -> GameState:
    """A battle-phase state with empty boards and hands, turn 1, player 0
    active, both players at full health."""
    state = GameState(config or RulesetConfig.for_version("1.2"))
    if decks is not None:
        state.players[0].deck = list(decks[0])
        state.players[1].deck = list(decks[1])
    state.phase = PH_BATTLE
    state.turn = 1
    state.active = 0
    return state


def put_creature(state: GameState, player: int, card: Card, lane: int = 0,
                 ready: bool = True, iid: int | None = None) -> BoardCreature:
    creature = BoardCreature(
        iid if iid is not None else state.next_iid, card, lane)
    if iid is None:
        state.next_iid += 1
    creature.summoned_this_turn = not ready
    state.boards[player][lane].append(creature)
    return creature


def give_card(state: GameState, player: int, card: Card,
              iid: int | None = None) -> int:
    hand_iid = iid if iid is not None else state.next_iid
    if iid is None:
        state.next_iid += 1
    state.players[player].hand.append((hand_iid, card))
    return hand_iid


def apply_ok(state: GameState, action, log=None) -> None:
    code, reason = engine.apply_action(state, action, log=log)
    assert code == engine.APPLIED, f"action rejected: {reason}"
