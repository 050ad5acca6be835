"""The forward model: turn lifecycle, action legality and application, combat.

All transition functions mutate the given :class:`GameState` in place and
optionally append atomic events to a caller-supplied ``log`` list. The event
stream is complete: :func:`replay_log` can mechanically rebuild the post-state
from the pre-state without re-running any rules, which is what transcripts
and the replay verifier are built on. Passing ``log=None`` skips all event
construction (the benchmark path).

The battle phase consumes no randomness; deck order is the only entropy.

Event tuples (first element is the kind):
    ("turn_start", player, turn)          refresh player's creatures, reset
                                          their round damage counter
    ("max_mana", player, value)           absolute
    ("mana", player, value)               absolute
    ("pending", player, value)            absolute pending bonus draws
    ("draw", player, card_number, iid)    deck head -> hand
    ("burn", player, card_number)         deck head discarded, hand full
    ("rune_draw", player, threshold)      empty-deck penalty: rune lost,
                                          health set to threshold
    ("rune", player, threshold)           damage break: rune lost
    ("face", player, new_health)          absolute player health
    ("summon", player, iid, number, lane, is_copy)
    ("attack", player, iid, target)       marks attacker as having attacked
    ("use", player, iid, number, target)  card leaves hand
    ("ward", iid)                         ward consumed
    ("stats", iid, attack, defense)       absolute creature stats
    ("keywords", iid, mask)               absolute keyword mask
    ("death", iid)                        creature removed
    ("ignored", action_text, reason)      lenient policy skipped an action
    ("bonus_off", player)                 second-player mana bonus ended
    ("turn_end", player, new_turn)        hand-off; turn counter after it
    ("deck_out",)                         both decks cleared
    ("end", winner, reason)               terminal
"""

from __future__ import annotations

from .model import (
    A_ATTACK, A_CHOOSE, A_PASS, A_PICK, A_SUMMON, A_USE, DRAW, FACE,
    KW_BREAKTHROUGH, KW_CHARGE, KW_DRAIN, KW_GUARD, KW_LETHAL, KW_WARD,
    PASS_ACTION, PH_BATTLE, PH_FINISHED, AreaMode, BoardCreature,
    GameState, Version,
)

# apply_action result codes
APPLIED = 0
IGNORED = 1
REJECTED = 2
OVER = 3

LENIENT = "lenient"
STRICT = "strict"

REASON_HEALTH = "HealthZero"
REASON_HARD_CAP = "HardCap"
REASON_TIMEOUT = "Timeout"
REASON_CRASH = "Crash"
REASON_DISQUALIFIED = "Disqualified"
REASON_INVALID = "InvalidStrict"


def format_action(action) -> str:
    """Normalized wire text of a single action."""
    kind = action[0]
    if kind == A_PASS:
        return "PASS"
    if kind == A_SUMMON:
        return f"SUMMON {action[1]} {action[2]}"
    if kind == A_ATTACK:
        return f"ATTACK {action[1]} {action[2]}"
    if kind == A_USE:
        return f"USE {action[1]} {action[2]}"
    if kind == A_PICK:
        return f"PICK {action[1]}"
    if kind == A_CHOOSE:
        return ";".join(f"CHOOSE {n}" for n in action[1]) if action[1] else ""
    raise ValueError(f"unknown action kind {kind}")


# ---------------------------------------------------------------------------
# Health plumbing
# ---------------------------------------------------------------------------

def _face_damage(state: GameState, player: int, amount: int, log) -> None:
    """Deal amount (> 0) to a player's face, breaking runes as thresholds
    are reached."""
    ps = state.players[player]
    ps.health -= amount
    ps.health_lost_this_round += amount
    if log is not None:
        log.append(("face", player, ps.health))
    runes = ps.runes
    while runes and ps.health <= runes[0]:
        t = runes.pop(0)
        ps.pending_draws += 1
        if log is not None:
            log.append(("rune", player, t))
            log.append(("pending", player, ps.pending_draws))


def _heal(state: GameState, player: int, amount: int, log) -> None:
    ps = state.players[player]
    ps.health += amount
    cap = state.config.health_cap
    if cap is not None and ps.health > cap:
        ps.health = cap
    if log is not None:
        log.append(("face", player, ps.health))


def _health_delta(state: GameState, player: int, delta: int, log) -> None:
    if delta > 0:
        _heal(state, player, delta, log)
    elif delta < 0:
        _face_damage(state, player, -delta, log)


def _draw_one(state: GameState, player: int, log) -> None:
    ps = state.players[player]
    if not ps.deck:
        # empty-deck penalty: lose the highest remaining rune instead
        if ps.runes:
            t = ps.runes.pop(0)
            ps.health = t
            if log is not None:
                log.append(("rune_draw", player, t))
        return
    if len(ps.hand) >= state.config.hand_limit:
        card = ps.deck.pop(0)
        if log is not None:
            log.append(("burn", player, card.number))
        return
    card = ps.deck.pop(0)
    iid = state.next_iid
    state.next_iid = iid + 1
    ps.hand.append((iid, card))
    if log is not None:
        log.append(("draw", player, card.number, iid))


# ---------------------------------------------------------------------------
# Turn lifecycle
# ---------------------------------------------------------------------------

def start_battle(state: GameState, log=None) -> None:
    """Enter the battle phase; deals any configured pre-game draws."""
    state.phase = PH_BATTLE
    state.turn = 1
    state.active = 0
    for p in (0, 1):
        for _ in range(state.config.initial_draws):
            _draw_one(state, p, log)


def begin_turn(state: GameState, log=None) -> None:
    cfg = state.config
    p = state.active
    ps = state.players[p]
    if log is not None:
        log.append(("turn_start", p, state.turn))
    if ps.max_mana < cfg.max_mana:
        ps.max_mana += 1
    bonus = (p == 1 and cfg.second_player_mana_bonus and ps.bonus_mana_active)
    ps.mana = ps.max_mana + (1 if bonus else 0)
    if log is not None:
        log.append(("max_mana", p, ps.max_mana))
        log.append(("mana", p, ps.mana))
    draws = 1 + ps.pending_draws
    if cfg.version is Version.V15:
        draws += ps.health_lost_this_round // 5
    ps.health_lost_this_round = 0
    ps.pending_draws = 0
    if log is not None:
        log.append(("pending", p, 0))
    for _ in range(draws):
        _draw_one(state, p, log)
    for lane in state.boards[p]:
        for c in lane:
            c.summoned_this_turn = False
            c.attacked_this_turn = False


def end_turn(state: GameState, log=None) -> None:
    if state.phase != PH_BATTLE:
        return
    cfg = state.config
    p = state.active
    ps = state.players[p]
    if (p == 1 and cfg.second_player_mana_bonus and ps.bonus_mana_active
            and ps.mana == 0):
        ps.bonus_mana_active = False
        if log is not None:
            log.append(("bonus_off", p))
    state.active = 1 - p
    if p == 1:
        state.turn += 1
    if log is not None:
        log.append(("turn_end", p, state.turn))
    if state.turn >= cfg.deck_empty_turn:
        if state.players[0].deck or state.players[1].deck:
            state.players[0].deck.clear()
            state.players[1].deck.clear()
            if log is not None:
                log.append(("deck_out",))
    if state.turn >= cfg.max_turns_hard_cap:
        h0 = state.players[0].health
        h1 = state.players[1].health
        winner = 0 if h0 > h1 else 1 if h1 > h0 else DRAW
        _finish(state, winner, REASON_HARD_CAP, log)


def _finish(state: GameState, winner: int, reason: str, log) -> None:
    state.winner = winner
    state.win_reason = reason
    state.phase = PH_FINISHED
    if log is not None:
        log.append(("end", winner, reason))


def forfeit(state: GameState, offender: int, reason: str, log=None) -> None:
    """Award the match to the offender's opponent (timeout, crash,
    disqualification, or a strict-policy violation)."""
    _finish(state, 1 - offender, reason, log)


def check_end(state: GameState):
    """Terminal test: winner index, DRAW, or None while the game is live."""
    h0 = state.players[0].health
    h1 = state.players[1].health
    if h0 <= 0 or h1 <= 0:
        if h0 <= 0 and h1 <= 0:
            return state.active  # simultaneous KO: the acting player wins
        return 0 if h1 <= 0 else 1
    if state.turn >= state.config.max_turns_hard_cap:
        return 0 if h0 > h1 else 1 if h1 > h0 else DRAW
    return None


# ---------------------------------------------------------------------------
# Legal action enumeration
# ---------------------------------------------------------------------------

def legal_actions(state: GameState) -> list:
    """Every singly-applicable action for the active player; Pass is last."""
    out = []
    if state.phase != PH_BATTLE:
        out.append(PASS_ACTION)
        return out
    cfg = state.config
    p = state.active
    ps = state.players[p]
    my_lanes = state.boards[p]
    enemy_lanes = state.boards[1 - p]
    mana = ps.mana
    lane_size = cfg.lane_size
    own_all = None
    enemy_all = None
    for iid, card in ps.hand:
        if card.cost > mana:
            continue
        t = card.type
        if t == 0:
            for li, lane in enumerate(my_lanes):
                if len(lane) < lane_size:
                    out.append((A_SUMMON, iid, li))
        elif t == 1:
            if own_all is None:
                own_all = [c for lane in my_lanes for c in lane]
            for c in own_all:
                out.append((A_USE, iid, c.iid))
        else:
            if enemy_all is None:
                enemy_all = [c for lane in enemy_lanes for c in lane]
            for c in enemy_all:
                out.append((A_USE, iid, c.iid))
            if t == 3:
                out.append((A_USE, iid, FACE))
    for li, lane in enumerate(my_lanes):
        enemy_lane = enemy_lanes[li]
        targets = [c.iid for c in enemy_lane if c.keywords & KW_GUARD]
        if not targets:
            targets = [c.iid for c in enemy_lane]
            targets.append(FACE)
        for c in lane:
            if not c.attacked_this_turn and (
                    not c.summoned_this_turn or c.keywords & KW_CHARGE):
                for t in targets:
                    out.append((A_ATTACK, c.iid, t))
    out.append(PASS_ACTION)
    return out


# ---------------------------------------------------------------------------
# Action application
# ---------------------------------------------------------------------------

def apply_action(state: GameState, action, policy: str = LENIENT, log=None):
    """Apply one battle action atomically.

    Returns (code, reason): APPLIED on success; IGNORED with the legality
    reason under the lenient policy; REJECTED under strict (the caller is
    expected to forfeit the acting player); OVER if the game has ended.
    """
    if state.phase != PH_BATTLE:
        return OVER, "game is not in the battle phase"
    kind = action[0]
    if kind == A_PASS:
        return APPLIED, None
    if kind == A_SUMMON:
        reason = _try_summon(state, action[1], action[2], log)
    elif kind == A_ATTACK:
        reason = _try_attack(state, action[1], action[2], log)
    elif kind == A_USE:
        reason = _try_use(state, action[1], action[2], log)
    else:
        reason = "action is not valid during battle"
    if reason is not None:
        if policy == STRICT:
            return REJECTED, reason
        if log is not None:
            log.append(("ignored", format_action(action), reason))
        return IGNORED, reason
    if state.players[0].health <= 0 or state.players[1].health <= 0:
        _finish(state, check_end(state), REASON_HEALTH, log)
    return APPLIED, None


def _find_hand(ps, iid: int) -> int:
    for i, (hid, _) in enumerate(ps.hand):
        if hid == iid:
            return i
    return -1


def _card_effects(state: GameState, player: int, card, log) -> None:
    """Draw/health side effects shared by summons and item uses; applied
    once per card regardless of any area fan-out."""
    ps = state.players[player]
    if card.draw:
        ps.pending_draws += card.draw
        if log is not None:
            log.append(("pending", player, ps.pending_draws))
    if card.my_health:
        _health_delta(state, player, card.my_health, log)
    if card.opp_health:
        _health_delta(state, 1 - player, card.opp_health, log)


def _try_summon(state: GameState, iid: int, lane: int, log):
    cfg = state.config
    p = state.active
    ps = state.players[p]
    i = _find_hand(ps, iid)
    if i < 0:
        return f"no card with instance id {iid} in hand"
    card = ps.hand[i][1]
    if card.type != 0:
        return "only creatures can be summoned"
    if card.cost > ps.mana:
        return f"not enough mana ({ps.mana}) for cost {card.cost}"
    if not 0 <= lane < cfg.lanes:
        return f"no lane {lane} in this ruleset"
    my_lane = state.boards[p][lane]
    if len(my_lane) >= cfg.lane_size:
        return f"lane {lane} is full"
    del ps.hand[i]
    ps.mana -= card.cost
    creature = BoardCreature(iid, card, lane)
    my_lane.append(creature)
    if log is not None:
        log.append(("summon", p, iid, card.number, lane, 0))
        log.append(("mana", p, ps.mana))
    if card.area and cfg.version is Version.V15:
        copy_lane = lane if card.area == AreaMode.LANE1 else 1 - lane
        target_lane = state.boards[p][copy_lane]
        if len(target_lane) < cfg.lane_size:
            cid = state.next_iid
            state.next_iid = cid + 1
            copy = BoardCreature(cid, card, copy_lane)
            target_lane.append(copy)
            if log is not None:
                log.append(("summon", p, cid, card.number, copy_lane, 1))
    _card_effects(state, p, card, log)
    return None


def _find_on_board(lanes, iid: int):
    for lane in lanes:
        for c in lane:
            if c.iid == iid:
                return c
    return None


def _remove_creature(state: GameState, owner: int, creature, log) -> None:
    state.boards[owner][creature.lane].remove(creature)
    if log is not None:
        log.append(("death", creature.iid))


def _try_attack(state: GameState, iid: int, target: int, log):
    p = state.active
    opp = 1 - p
    a = _find_on_board(state.boards[p], iid)
    if a is None:
        return f"no friendly creature with instance id {iid}"
    if a.attacked_this_turn:
        return "creature has already attacked this turn"
    if a.summoned_this_turn and not a.keywords & KW_CHARGE:
        return "creature cannot attack on its summoning turn"
    enemy_lane = state.boards[opp][a.lane]
    has_guard = False
    for c in enemy_lane:
        if c.keywords & KW_GUARD:
            has_guard = True
            break
    if target == FACE:
        if has_guard:
            return "a Guard creature must be attacked first"
        a.attacked_this_turn = True
        if log is not None:
            log.append(("attack", p, iid, FACE))
        dmg = a.attack
        if dmg > 0:
            _face_damage(state, opp, dmg, log)
            if a.keywords & KW_DRAIN:
                _heal(state, p, dmg, log)
        return None
    d = None
    for c in enemy_lane:
        if c.iid == target:
            d = c
            break
    if d is None:
        return "target must be an enemy creature in the attacker's lane"
    if has_guard and not d.keywords & KW_GUARD:
        return "a Guard creature must be attacked first"
    a.attacked_this_turn = True
    if log is not None:
        log.append(("attack", p, iid, target))
    # both creatures strike simultaneously with their pre-combat attack values
    a_atk = a.attack
    d_atk = d.attack
    d_died = False
    a_died = False
    excess = 0
    dealt = 0
    if a_atk > 0:
        if d.keywords & KW_WARD:
            d.keywords &= ~KW_WARD
            if log is not None:
                log.append(("ward", d.iid))
        else:
            dealt = a_atk
            d.defense -= a_atk
            if a.keywords & KW_BREAKTHROUGH and d.defense < 0:
                excess = -d.defense
            if log is not None:
                log.append(("stats", d.iid, d.attack, d.defense))
            if d.defense <= 0 or a.keywords & KW_LETHAL:
                d_died = True
    if d_atk > 0:
        if a.keywords & KW_WARD:
            a.keywords &= ~KW_WARD
            if log is not None:
                log.append(("ward", a.iid))
        else:
            a.defense -= d_atk
            if log is not None:
                log.append(("stats", a.iid, a.attack, a.defense))
            if a.defense <= 0 or d.keywords & KW_LETHAL:
                a_died = True
    if d_died:
        _remove_creature(state, opp, d, log)
    if a_died:
        _remove_creature(state, p, a, log)
    if excess:
        _face_damage(state, opp, excess, log)
    if dealt and a.keywords & KW_DRAIN:
        # full attack value: overkill and the breakthrough portion count
        _heal(state, p, a_atk, log)
    return None


def _try_use(state: GameState, iid: int, target: int, log):
    cfg = state.config
    p = state.active
    opp = 1 - p
    ps = state.players[p]
    i = _find_hand(ps, iid)
    if i < 0:
        return f"no card with instance id {iid} in hand"
    card = ps.hand[i][1]
    ctype = card.type
    if ctype == 0:
        return "creatures must be summoned, not used"
    if card.cost > ps.mana:
        return f"not enough mana ({ps.mana}) for cost {card.cost}"
    tgt = None
    if ctype == 1:
        tgt = _find_on_board(state.boards[p], target) if target != FACE else None
        if tgt is None:
            return "green items must target a friendly creature"
    elif ctype == 2:
        tgt = _find_on_board(state.boards[opp], target) if target != FACE else None
        if tgt is None:
            return "red items must target an enemy creature"
    else:
        if target != FACE:
            tgt = _find_on_board(state.boards[opp], target)
            if tgt is None:
                return "blue items target an enemy creature or the opponent"
    del ps.hand[i]
    ps.mana -= card.cost
    if log is not None:
        log.append(("use", p, iid, card.number, target))
        log.append(("mana", p, ps.mana))
    if tgt is not None:
        owner = p if ctype == 1 else opp
        if card.area and cfg.version is Version.V15:
            if card.area == AreaMode.LANE1:
                affected = list(state.boards[owner][tgt.lane])
            else:
                affected = [c for lane in state.boards[owner] for c in lane]
        else:
            affected = [tgt]
        dead = []
        for c in affected:
            if card.attack:
                c.attack = max(0, c.attack + card.attack)
            if card.defense < 0:
                if c.keywords & KW_WARD:
                    c.keywords &= ~KW_WARD
                    if log is not None:
                        log.append(("ward", c.iid))
                else:
                    c.defense += card.defense
            elif card.defense > 0:
                c.defense += card.defense
            if (card.attack or card.defense) and log is not None:
                log.append(("stats", c.iid, c.attack, c.defense))
            if card.keywords:
                kw = (c.keywords | card.keywords if ctype == 1
                      else c.keywords & ~card.keywords)
                if kw != c.keywords:
                    c.keywords = kw
                    if log is not None:
                        log.append(("keywords", c.iid, kw))
            if c.defense <= 0:
                dead.append(c)
        for c in dead:
            _remove_creature(state, owner, c, log)
    elif card.defense < 0:
        _face_damage(state, opp, -card.defense, log)
    _card_effects(state, p, card, log)
    return None


# ---------------------------------------------------------------------------
# Mechanical replay of an event stream
# ---------------------------------------------------------------------------

class ReplayDivergence(Exception):
    def __init__(self, index: int, event, message: str):
        super().__init__(f"event {index} {event!r}: {message}")
        self.index = index
        self.event = event


def replay_log(state: GameState, events) -> GameState:
    """Apply a recorded event stream to its pre-state, reproducing the
    post-state without consulting the rules. Raises ReplayDivergence when
    the stream is inconsistent with the state."""
    cards = {}
    for ps in state.players:
        for card in ps.deck:
            cards[card.number] = card
        for _, card in ps.hand:
            cards[card.number] = card
    for i, ev in enumerate(events):
        kind = ev[0]
        try:
            _replay_one(state, kind, ev, cards)
        except ReplayDivergence:
            raise
        except Exception as exc:  # malformed stream
            raise ReplayDivergence(i, ev, str(exc)) from exc
    return state


def _replay_one(state: GameState, kind: str, ev, cards) -> None:
    players = state.players
    if kind == "turn_start":
        _, p, turn = ev
        if state.active != p or state.turn != turn:
            raise ValueError(
                f"expected player {state.active} turn {state.turn}")
        players[p].health_lost_this_round = 0
        for lane in state.boards[p]:
            for c in lane:
                c.summoned_this_turn = False
                c.attacked_this_turn = False
    elif kind == "max_mana":
        players[ev[1]].max_mana = ev[2]
    elif kind == "mana":
        players[ev[1]].mana = ev[2]
    elif kind == "pending":
        players[ev[1]].pending_draws = ev[2]
    elif kind == "draw":
        _, p, number, iid = ev
        ps = players[p]
        if not ps.deck or ps.deck[0].number != number:
            raise ValueError(f"deck head is not card {number}")
        ps.hand.append((iid, ps.deck.pop(0)))
        if iid >= state.next_iid:
            state.next_iid = iid + 1
    elif kind == "burn":
        _, p, number = ev
        ps = players[p]
        if not ps.deck or ps.deck[0].number != number:
            raise ValueError(f"deck head is not card {number}")
        ps.deck.pop(0)
    elif kind == "rune_draw":
        _, p, threshold = ev
        ps = players[p]
        if not ps.runes or ps.runes[0] != threshold:
            raise ValueError(f"rune {threshold} not next")
        ps.runes.pop(0)
        ps.health = threshold
    elif kind == "rune":
        _, p, threshold = ev
        ps = players[p]
        if not ps.runes or ps.runes[0] != threshold:
            raise ValueError(f"rune {threshold} not next")
        ps.runes.pop(0)
    elif kind == "face":
        _, p, health = ev
        ps = players[p]
        if health < ps.health:
            ps.health_lost_this_round += ps.health - health
        ps.health = health
    elif kind == "summon":
        _, p, iid, number, lane, is_copy = ev
        card = cards.get(number)
        if card is None:
            raise ValueError(f"unknown card number {number}")
        if is_copy:
            if iid >= state.next_iid:
                state.next_iid = iid + 1
        else:
            ps = players[p]
            idx = _find_hand(ps, iid)
            if idx < 0:
                raise ValueError(f"instance {iid} not in hand")
            del ps.hand[idx]
        state.boards[p][lane].append(BoardCreature(iid, card, lane))
    elif kind == "attack":
        _, p, iid, _target = ev
        c = _find_on_board(state.boards[p], iid)
        if c is None:
            raise ValueError(f"attacker {iid} not on board")
        c.attacked_this_turn = True
    elif kind == "use":
        _, p, iid, _number, _target = ev
        ps = players[p]
        idx = _find_hand(ps, iid)
        if idx < 0:
            raise ValueError(f"instance {iid} not in hand")
        del ps.hand[idx]
    elif kind == "ward":
        c = _find_anywhere(state, ev[1])
        c.keywords &= ~KW_WARD
    elif kind == "stats":
        c = _find_anywhere(state, ev[1])
        c.attack = ev[2]
        c.defense = ev[3]
    elif kind == "keywords":
        c = _find_anywhere(state, ev[1])
        c.keywords = ev[2]
    elif kind == "death":
        iid = ev[1]
        for p in (0, 1):
            c = _find_on_board(state.boards[p], iid)
            if c is not None:
                state.boards[p][c.lane].remove(c)
                return
        raise ValueError(f"creature {iid} not on board")
    elif kind == "ignored":
        pass
    elif kind == "bonus_off":
        players[ev[1]].bonus_mana_active = False
    elif kind == "turn_end":
        _, p, new_turn = ev
        if state.active != p:
            raise ValueError(f"expected active player {state.active}")
        state.active = 1 - p
        state.turn = new_turn
    elif kind == "deck_out":
        players[0].deck.clear()
        players[1].deck.clear()
    elif kind == "end":
        state.winner = ev[1]
        state.win_reason = ev[2]
        state.phase = PH_FINISHED
    else:
        raise ValueError(f"unknown event kind {kind}")


def _find_anywhere(state: GameState, iid: int):
    for p in (0, 1):
        c = _find_on_board(state.boards[p], iid)
        if c is not None:
            return c
    raise ValueError(f"creature {iid} not on board")


def fingerprint(state: GameState):
    """Canonical structural summary; two states are equal iff these match."""
    return (
        state.phase, state.turn, state.active, state.winner, state.win_reason,
        state.next_iid,
        tuple(
            (ps.health, ps.mana, ps.max_mana,
             tuple(c.number for c in ps.deck),
             tuple((iid, c.number) for iid, c in ps.hand),
             tuple(ps.runes), ps.pending_draws, ps.bonus_mana_active,
             ps.health_lost_this_round)
            for ps in state.players
        ),
        tuple(
            tuple(
                tuple((c.iid, c.card.number, c.attack, c.defense, c.keywords,
                       c.lane, c.summoned_this_turn, c.attacked_this_turn)
                      for c in lane)
                for lane in board
            )
            for board in state.boards
        ),
    )
