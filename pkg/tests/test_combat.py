"""Directed combat resolution checks, one per keyword rule."""

from locm import engine
from locm.model import (FACE, KW_BREAKTHROUGH, KW_CHARGE, KW_DRAIN,
                        KW_LETHAL, KW_WARD, attack)
from support import apply_ok, battle_state, make_card, put_creature


def duel(attacker_card, defender_card, v=None, log=None):
    """Set up a one-on-one attack in lane 0 and resolve it."""
    state = battle_state(v)
    a = put_creature(state, 0, attacker_card, lane=0)
    d = put_creature(state, 1, defender_card, lane=0)
    apply_ok(state, attack(a.iid, d.iid), log=log)
    return state, a, d


def on_board(state, player, creature):
    return creature in state.boards[player][creature.lane]


def test_even_trade_both_die():
    state, a, d = duel(make_card(attack=3, defense=2),
                       make_card(number=2, attack=2, defense=3))
    assert not on_board(state, 0, a)
    assert not on_board(state, 1, d)


def test_simultaneous_damage_is_exchanged():
    state, a, d = duel(make_card(attack=1, defense=5),
                       make_card(number=2, attack=2, defense=4))
    assert a.defense == 3
    assert d.defense == 3
    assert on_board(state, 0, a) and on_board(state, 1, d)


def test_breakthrough_excess_to_face():
    state, a, d = duel(make_card(attack=5, defense=5, keywords=KW_BREAKTHROUGH),
                       make_card(number=2, attack=2, defense=2))
    assert not on_board(state, 1, d)
    assert state.players[1].health == 27


def test_no_breakthrough_no_excess():
    state, a, d = duel(make_card(attack=5, defense=5),
                       make_card(number=2, attack=2, defense=2))
    assert state.players[1].health == 30


def test_lethal_kills_instantly():
    state, a, d = duel(make_card(attack=1, defense=1, keywords=KW_LETHAL),
                       make_card(number=2, attack=0, defense=10))
    assert not on_board(state, 1, d)


def test_defender_lethal_kills_attacker():
    state, a, d = duel(make_card(attack=1, defense=10),
                       make_card(number=2, attack=1, defense=10,
                                 keywords=KW_LETHAL))
    assert not on_board(state, 0, a)
    assert on_board(state, 1, d)


def test_ward_blocks_once_and_is_consumed():
    state, a, d = duel(make_card(attack=4, defense=4),
                       make_card(number=2, attack=1, defense=1,
                                 keywords=KW_WARD))
    assert on_board(state, 1, d)
    assert d.defense == 1
    assert not d.keywords & KW_WARD
    assert a.defense == 3  # retaliation still lands


def test_zero_attack_does_not_consume_ward():
    state, a, d = duel(make_card(attack=0, defense=4),
                       make_card(number=2, attack=1, defense=1,
                                 keywords=KW_WARD))
    assert d.keywords & KW_WARD


def test_ward_stops_lethal():
    state, a, d = duel(make_card(attack=2, defense=2, keywords=KW_LETHAL),
                       make_card(number=2, attack=0, defense=5,
                                 keywords=KW_WARD))
    assert on_board(state, 1, d)
    assert d.defense == 5


def test_ward_stops_breakthrough_excess():
    state, a, d = duel(
        make_card(attack=9, defense=9, keywords=KW_BREAKTHROUGH),
        make_card(number=2, attack=0, defense=1, keywords=KW_WARD))
    assert state.players[1].health == 30
    assert on_board(state, 1, d)


def test_drain_heals_full_attack_value():
    # overkill counts in full
    state = battle_state()
    state.players[0].health = 10
    a = put_creature(state, 0, make_card(attack=5, defense=5,
                                         keywords=KW_DRAIN))
    d = put_creature(state, 1, make_card(number=2, attack=1, defense=2))
    apply_ok(state, attack(a.iid, d.iid))
    assert state.players[0].health == 15


def test_drain_blocked_by_ward():
    state = battle_state()
    state.players[0].health = 10
    a = put_creature(state, 0, make_card(attack=5, defense=5,
                                         keywords=KW_DRAIN))
    d = put_creature(state, 1, make_card(number=2, attack=0, defense=2,
                                         keywords=KW_WARD))
    apply_ok(state, attack(a.iid, d.iid))
    assert state.players[0].health == 10


def test_drain_applies_on_face_attacks():
    state = battle_state()
    state.players[0].health = 20
    a = put_creature(state, 0, make_card(attack=4, defense=4,
                                         keywords=KW_DRAIN))
    apply_ok(state, attack(a.iid, FACE))
    assert state.players[0].health == 24
    assert state.players[1].health == 26


def test_face_damage_breaks_runes_with_bonus_draw():
    state = battle_state()
    state.players[1].health = 26
    a = put_creature(state, 0, make_card(attack=7, defense=7))
    apply_ok(state, attack(a.iid, FACE))
    p1 = state.players[1]
    assert p1.health == 19
    assert p1.runes == [15, 10, 5]          # 25 and 20 both broke
    assert p1.pending_draws == 2


def test_attack_marks_attacker():
    state, a, d = duel(make_card(attack=1, defense=5),
                       make_card(number=2, attack=0, defense=5))
    assert a.attacked_this_turn
    assert not a.can_attack


def test_winning_blow_finishes_game():
    state = battle_state()
    state.players[1].health = 3
    a = put_creature(state, 0, make_card(attack=3, defense=3))
    apply_ok(state, attack(a.iid, FACE))
    assert state.winner == 0
    assert state.win_reason == "HealthZero"


def test_charge_attacks_on_summon_turn():
    state = battle_state()
    c = put_creature(state, 0, make_card(attack=2, defense=2,
                                         keywords=KW_CHARGE), ready=False)
    assert c.can_attack
    code, _ = engine.apply_action(state, attack(c.iid, FACE))
    assert code == engine.APPLIED


def test_summoning_sickness_without_charge():
    state = battle_state()
    c = put_creature(state, 0, make_card(attack=2, defense=2), ready=False)
    code, reason = engine.apply_action(state, attack(c.iid, FACE))
    assert code == engine.IGNORED
    assert "summoning" in reason
