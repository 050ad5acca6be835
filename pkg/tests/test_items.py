"""Item usage: color targeting, ward interaction, area fan-out, global
effects applied once."""

from locm import engine
from locm.model import (AreaMode, CardType, FACE, KW_GUARD, KW_LETHAL,
                        KW_WARD, use)
from support import apply_ok, battle_state, give_card, make_card, put_creature


def green(number=10, **kw):
    return make_card(number=number, type=CardType.GREEN_ITEM, cost=0, **kw)


def red(number=11, **kw):
    return make_card(number=number, type=CardType.RED_ITEM, cost=0, **kw)


def blue(number=12, **kw):
    return make_card(number=number, type=CardType.BLUE_ITEM, cost=0, **kw)


def test_green_buffs_and_adds_keywords():
    state = battle_state()
    c = put_creature(state, 0, make_card(attack=2, defense=2))
    iid = give_card(state, 0, green(attack=1, defense=1, keywords=KW_WARD))
    apply_ok(state, use(iid, c.iid))
    assert (c.attack, c.defense) == (3, 3)
    assert c.keywords & KW_WARD


def test_green_requires_own_creature():
    state = battle_state()
    put_creature(state, 1, make_card(number=2, attack=1, defense=1))
    iid = give_card(state, 0, green(attack=1, defense=0))
    enemy = state.boards[1][0][0]
    code, reason = engine.apply_action(state, use(iid, enemy.iid))
    assert code == engine.IGNORED
    assert "friendly" in reason


def test_red_reduces_stats_and_removes_keywords():
    state = battle_state()
    d = put_creature(state, 1, make_card(attack=4, defense=5,
                                         keywords=KW_GUARD | KW_LETHAL))
    iid = give_card(state, 0, red(attack=-2, defense=-2, keywords=KW_GUARD))
    apply_ok(state, use(iid, d.iid))
    assert (d.attack, d.defense) == (2, 3)
    assert not d.keywords & KW_GUARD
    assert d.keywords & KW_LETHAL


def test_red_damage_can_kill():
    state = battle_state()
    d = put_creature(state, 1, make_card(attack=1, defense=2))
    iid = give_card(state, 0, red(defense=-4))
    apply_ok(state, use(iid, d.iid))
    assert d not in state.boards[1][0]


def test_item_attack_reduction_clamps_at_zero():
    state = battle_state()
    d = put_creature(state, 1, make_card(attack=1, defense=5))
    iid = give_card(state, 0, red(attack=-4))
    apply_ok(state, use(iid, d.iid))
    assert d.attack == 0


def test_ward_absorbs_item_damage_once():
    state = battle_state()
    d = put_creature(state, 1, make_card(attack=2, defense=2,
                                         keywords=KW_WARD))
    iid = give_card(state, 0, red(attack=-1, defense=-3))
    apply_ok(state, use(iid, d.iid))
    assert d.defense == 2          # damage blocked
    assert d.attack == 1           # stat reduction still applies
    assert not d.keywords & KW_WARD


def test_ward_check_happens_before_keyword_removal():
    # an item that both damages and removes Ward: the pre-item ward absorbs
    state = battle_state()
    d = put_creature(state, 1, make_card(attack=2, defense=2,
                                         keywords=KW_WARD))
    iid = give_card(state, 0, red(defense=-2, keywords=KW_WARD))
    apply_ok(state, use(iid, d.iid))
    assert d.defense == 2
    assert not d.keywords & KW_WARD


def test_blue_on_face():
    state = battle_state()
    iid = give_card(state, 0, blue(defense=-4))
    apply_ok(state, use(iid, FACE))
    assert state.players[1].health == 26


def test_blue_on_enemy_creature():
    state = battle_state()
    d = put_creature(state, 1, make_card(attack=1, defense=5))
    iid = give_card(state, 0, blue(defense=-3))
    apply_ok(state, use(iid, d.iid))
    assert d.defense == 2
    assert state.players[1].health == 30


def test_blue_face_damage_breaks_runes():
    state = battle_state()
    state.players[1].health = 26
    iid = give_card(state, 0, blue(defense=-2))
    apply_ok(state, use(iid, FACE))
    assert state.players[1].health == 24
    assert state.players[1].runes == [20, 15, 10, 5]
    assert state.players[1].pending_draws == 1


def test_item_global_effects():
    state = battle_state()
    state.players[0].health = 20
    c = put_creature(state, 0, make_card(attack=1, defense=1))
    iid = give_card(state, 0, green(my_health=3, opp_health=-2, draw=2))
    apply_ok(state, use(iid, c.iid))
    assert state.players[0].health == 23
    assert state.players[1].health == 28
    assert state.players[0].pending_draws == 2


def test_item_costs_mana():
    state = battle_state()
    state.players[0].mana = 3
    d = put_creature(state, 1, make_card(attack=1, defense=5))
    iid = give_card(state, 0, red(defense=-1))
    state.players[0].hand[-1] = (iid, make_card(
        number=11, type=CardType.RED_ITEM, cost=2, defense=-1))
    apply_ok(state, use(iid, d.iid))
    assert state.players[0].mana == 1


def test_mana_gate_on_items():
    state = battle_state()
    state.players[0].mana = 1
    d = put_creature(state, 1, make_card(attack=1, defense=5))
    iid = give_card(state, 0, make_card(number=11, type=CardType.RED_ITEM,
                                        cost=3, defense=-1))
    code, reason = engine.apply_action(state, use(iid, d.iid))
    assert code == engine.IGNORED
    assert "mana" in reason


# ---------------------------------------------------------------------------
# 1.5 area fan-out
# ---------------------------------------------------------------------------

def test_area_lane1_hits_whole_lane(v15):
    state = battle_state(v15)
    d1 = put_creature(state, 1, make_card(number=2, attack=1, defense=3), lane=0)
    d2 = put_creature(state, 1, make_card(number=3, attack=1, defense=3), lane=0)
    other = put_creature(state, 1, make_card(number=4, attack=1, defense=3), lane=1)
    iid = give_card(state, 0, red(defense=-2, area=AreaMode.LANE1))
    apply_ok(state, use(iid, d1.iid))
    assert d1.defense == 1 and d2.defense == 1
    assert other.defense == 3


def test_area_lane2_hits_whole_side(v15):
    state = battle_state(v15)
    d1 = put_creature(state, 1, make_card(number=2, attack=1, defense=3), lane=0)
    d2 = put_creature(state, 1, make_card(number=3, attack=1, defense=3), lane=1)
    mine = put_creature(state, 0, make_card(number=5, attack=1, defense=3), lane=0)
    iid = give_card(state, 0, red(defense=-2, area=AreaMode.LANE2))
    apply_ok(state, use(iid, d1.iid))
    assert d1.defense == 1 and d2.defense == 1
    assert mine.defense == 3


def test_area_green_fans_over_own_side(v15):
    state = battle_state(v15)
    c1 = put_creature(state, 0, make_card(attack=1, defense=1), lane=0)
    c2 = put_creature(state, 0, make_card(number=2, attack=1, defense=1), lane=1)
    iid = give_card(state, 0, green(attack=1, defense=1, area=AreaMode.LANE2))
    apply_ok(state, use(iid, c1.iid))
    assert (c1.attack, c1.defense) == (2, 2)
    assert (c2.attack, c2.defense) == (2, 2)


def test_area_global_effects_apply_once(v15):
    state = battle_state(v15)
    put_creature(state, 1, make_card(number=2, attack=1, defense=5), lane=0)
    put_creature(state, 1, make_card(number=3, attack=1, defense=5), lane=0)
    iid = give_card(state, 0, red(defense=-1, opp_health=-2,
                                  area=AreaMode.LANE1))
    apply_ok(state, use(iid, state.boards[1][0][0].iid))
    assert state.players[1].health == 28  # -2 once, not per creature


def test_area_ignored_outside_v15(v12):
    # cards in 1.2 sets always carry Target; even if one slipped through,
    # the engine must not fan out
    state = battle_state(v12)
    d1 = put_creature(state, 1, make_card(number=2, attack=1, defense=3), lane=0)
    d2 = put_creature(state, 1, make_card(number=3, attack=1, defense=3), lane=0)
    iid = give_card(state, 0, red(defense=-2, area=AreaMode.LANE1))
    apply_ok(state, use(iid, d1.iid))
    assert d1.defense == 1
    assert d2.defense == 3


def test_blue_face_with_area_is_single_target(v15):
    state = battle_state(v15)
    put_creature(state, 1, make_card(number=2, attack=1, defense=3))
    iid = give_card(state, 0, blue(defense=-2, area=AreaMode.LANE1))
    apply_ok(state, use(iid, FACE))
    assert state.players[1].health == 28
    assert state.boards[1][0][0].defense == 3
