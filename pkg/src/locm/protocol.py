"""Text protocol between referee and agents.

Turn input (one block per move request, every line newline-terminated):

    <myHealth> <myMana> <myDeckCount> <extra>
    <oppHealth> <oppMana> <oppDeckCount> <extra>
    <oppHandCount> <oppActionCount>
    ... oppActionCount lines echoing the opponent's previous turn ...
    <cardCount>
    ... one line per visible card ...

``extra`` is the rune count in 1.0/1.2 and the next-turn draw count in 1.5.
Card lines carry, space separated:

    cardNumber instanceId location type cost attack defense abilities
    myHealthChange opponentHealthChange cardDraw [area] lane

location is 0 for hand/options, 1 for the viewer's board, -1 for the enemy
board; abilities is the fixed-order BCDGLW mask with '-' gaps; the area
column appears only in 1.5; lane is -1 off board. All integers are base-10
ASCII with single-space separators.

Agent output is a single line of ';'-separated commands: SUMMON id lane
(laneless in 1.0), ATTACK id target, USE id target, PASS, PICK k during the
draft, CHOOSE cardNumber tokens during construction; target -1 is the
opponent's face. The parser is total: any byte string yields either actions
or a ParseError, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    A_ATTACK, A_CHOOSE, A_PASS, A_PICK, A_SUMMON, A_USE,
    GameState, PH_BATTLE, PH_CONSTRUCTION, PH_DRAFT, Version, kw_string,
)

LOC_HAND = 0
LOC_MINE = 1
LOC_ENEMY = -1


@dataclass
class AgentView:
    """Everything one player may observe: no hand contents or deck order of
    the opponent ever enters this structure."""

    version: Version
    phase: int
    me: tuple[int, int, int, int]       # health, mana, deck count, extra
    opp: tuple[int, int, int, int]
    opp_hand: int
    opp_actions: list[str]
    cards: list[tuple]                  # card-line field tuples

    def render(self) -> str:
        v15 = self.version is Version.V15
        lines = [
            "%d %d %d %d" % self.me,
            "%d %d %d %d" % self.opp,
            f"{self.opp_hand} {len(self.opp_actions)}",
        ]
        lines.extend(self.opp_actions)
        lines.append(str(len(self.cards)))
        for (number, iid, loc, ctype, cost, atk, deff, kw,
             myh, opph, draw, area, lane) in self.cards:
            base = (f"{number} {iid} {loc} {ctype} {cost} {atk} {deff} "
                    f"{kw_string(kw)} {myh} {opph} {draw}")
            if v15:
                lines.append(f"{base} {area} {lane}")
            else:
                lines.append(f"{base} {lane}")
        return "\n".join(lines) + "\n"


def _card_tuple(card, iid: int, loc: int, lane: int,
                attack=None, defense=None, keywords=None) -> tuple:
    return (
        card.number, iid, loc, card.type, card.cost,
        card.attack if attack is None else attack,
        card.defense if defense is None else defense,
        card.keywords if keywords is None else keywords,
        card.my_health, card.opp_health, card.draw, card.area, lane,
    )


def _player_line(state: GameState, player: int, deck_count: int) -> tuple:
    ps = state.players[player]
    if state.config.uses_runes():
        extra = len(ps.runes)
    else:
        extra = 1 + ps.pending_draws + ps.health_lost_this_round // 5
    return ps.health, ps.mana, deck_count, extra


def view_for(state: GameState, viewpoint: int) -> AgentView:
    """Build the observable state for one player in any phase."""
    cfg = state.config
    opp = 1 - viewpoint
    cards: list[tuple] = []
    if state.phase == PH_DRAFT:
        setup = state.setup
        me_line = _player_line(state, viewpoint, len(setup.picks[viewpoint]))
        opp_line = _player_line(state, opp, len(setup.picks[opp]))
        for card in setup.options():
            cards.append(_card_tuple(card, -1, LOC_HAND, -1))
        return AgentView(cfg.version, state.phase, me_line, opp_line,
                         0, [], cards)
    if state.phase == PH_CONSTRUCTION:
        setup = state.setup
        me_line = _player_line(state, viewpoint, len(setup.picks[viewpoint]))
        opp_line = _player_line(state, opp, len(setup.picks[opp]))
        for card in setup.pool.cards:
            cards.append(_card_tuple(card, -1, LOC_HAND, -1))
        return AgentView(cfg.version, state.phase, me_line, opp_line,
                         0, [], cards)
    me_line = _player_line(state, viewpoint, len(state.players[viewpoint].deck))
    opp_line = _player_line(state, opp, len(state.players[opp].deck))
    for iid, card in state.players[viewpoint].hand:
        cards.append(_card_tuple(card, iid, LOC_HAND, -1))
    for lane_idx, lane in enumerate(state.boards[viewpoint]):
        for c in lane:
            cards.append(_card_tuple(
                c.card, c.iid, LOC_MINE, lane_idx,
                attack=c.attack, defense=c.defense, keywords=c.keywords))
    for lane_idx, lane in enumerate(state.boards[opp]):
        for c in lane:
            cards.append(_card_tuple(
                c.card, c.iid, LOC_ENEMY, lane_idx,
                attack=c.attack, defense=c.defense, keywords=c.keywords))
    return AgentView(
        cfg.version, state.phase, me_line, opp_line,
        len(state.players[opp].hand), list(state.last_actions[opp]), cards)


def render_turn_input(state: GameState, viewpoint: int) -> str:
    return view_for(state, viewpoint).render()


# ---------------------------------------------------------------------------
# Action rendering
# ---------------------------------------------------------------------------

def render_action(action, version: Version) -> str:
    kind = action[0]
    if kind == A_PASS:
        return "PASS"
    if kind == A_SUMMON:
        if version is Version.V10:
            return f"SUMMON {action[1]}"
        return f"SUMMON {action[1]} {action[2]}"
    if kind == A_ATTACK:
        return f"ATTACK {action[1]} {action[2]}"
    if kind == A_USE:
        return f"USE {action[1]} {action[2]}"
    if kind == A_PICK:
        return f"PICK {action[1]}"
    if kind == A_CHOOSE:
        return ";".join(f"CHOOSE {n}" for n in action[1])
    raise ValueError(f"unknown action kind {kind}")


def render_actions(actions, version: Version) -> str:
    return ";".join(render_action(a, version) for a in actions)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

@dataclass
class ParseError:
    offset: int
    message: str
    expected: tuple[str, ...] = ()

    def __str__(self) -> str:
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        return f"offset {self.offset}: {self.message}{exp}"


_WS = " \t\r\n"
_MAX_DIGITS = 10

_BATTLE_WORDS = ("SUMMON", "ATTACK", "USE", "PASS")
_DRAFT_WORDS = ("PICK", "PASS")
_CONSTRUCTION_WORDS = ("CHOOSE", "PASS")


def parse_agent_output(text, phase: int, config) -> tuple[list, ParseError | None]:
    """Parse one output line into actions.

    Returns (actions, error). ``error`` is None for fully valid input;
    otherwise ``actions`` holds the valid prefix (the lenient policy's
    truncation point) and ``error`` describes the first offense for the
    strict policy. Accepts str or raw bytes (decoded latin-1 so offsets stay
    byte offsets).
    """
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("latin-1")
    if phase == PH_BATTLE:
        words = _BATTLE_WORDS
    elif phase == PH_DRAFT:
        words = _DRAFT_WORDS
    else:
        words = _CONSTRUCTION_WORDS
    v10 = config.version is Version.V10
    n = len(text)
    i = 0
    actions: list = []
    chosen: list[int] = []
    picked = False

    def finish(err):
        if phase == PH_CONSTRUCTION and (chosen or err is None):
            actions.append((A_CHOOSE, tuple(chosen), 0))
        return actions, err

    while True:
        while i < n and text[i] in _WS:
            i += 1
        if i >= n:
            return finish(None)
        if text[i] == ";":
            i += 1
            continue
        start = i
        while i < n and "A" <= text[i] <= "Z":
            i += 1
        word = text[start:i]
        if word not in words:
            return finish(ParseError(start, f"unknown command {word!r}"
                                     if word else "expected a command keyword",
                                     expected=words))
        if word == "PASS":
            arg_count = 0
        elif word == "SUMMON":
            arg_count = 1 if v10 else 2
        elif word in ("ATTACK", "USE"):
            arg_count = 2
        else:  # PICK / CHOOSE
            arg_count = 1
        args = []
        for _ in range(arg_count):
            while i < n and text[i] in " \t":
                i += 1
            a_start = i
            if i < n and text[i] == "-":
                i += 1
            d_start = i
            while i < n and "0" <= text[i] <= "9":
                i += 1
            if i == d_start:
                return finish(ParseError(a_start, f"{word} needs {arg_count} "
                                         "integer argument(s)",
                                         expected=("integer",)))
            if i - d_start > _MAX_DIGITS:
                return finish(ParseError(a_start, "number out of range",
                                         expected=("integer",)))
            args.append(int(text[a_start:i]))
        while i < n and text[i] in " \t":
            i += 1
        if i < n and text[i] not in ";\r\n":
            return finish(ParseError(i, "unexpected text after command",
                                     expected=("';'", "end of line")))
        if word == "PASS":
            actions.append((A_PASS, 0, 0))
        elif word == "SUMMON":
            actions.append((A_SUMMON, args[0], args[1] if not v10 else 0))
        elif word == "ATTACK":
            actions.append((A_ATTACK, args[0], args[1]))
        elif word == "USE":
            actions.append((A_USE, args[0], args[1]))
        elif word == "PICK":
            if picked:
                return finish(ParseError(start, "multiple PICK commands",
                                         expected=("end of line",)))
            picked = True
            actions.append((A_PICK, args[0], 0))
        else:  # CHOOSE
            chosen.append(args[0])
