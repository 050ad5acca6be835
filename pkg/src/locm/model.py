"""Domain types shared by every module: cards, players, game state, actions.

Hot-path types (BoardCreature, PlayerState, GameState) are mutable
``__slots__`` classes with hand-written ``clone``; the engine mutates them in
place and agents that need lookahead copy explicitly. Cards and configs are
frozen dataclasses. Actions are plain tuples ``(kind, a, b)`` for speed.

Keywords are stored as a 6-bit mask in the canonical render order BCDGLW:
Breakthrough, Charge, Drain, Guard, Lethal, Ward.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace


class Keyword(enum.IntFlag):
    BREAKTHROUGH = 1
    CHARGE = 2
    DRAIN = 4
    GUARD = 8
    LETHAL = 16
    WARD = 32


KW_BREAKTHROUGH = 1
KW_CHARGE = 2
KW_DRAIN = 4
KW_GUARD = 8
KW_LETHAL = 16
KW_WARD = 32
KW_ALL = 63

_KW_LETTERS = "BCDGLW"


def kw_mask(letters: str) -> int:
    """Parse an abilities string; accepts both 'BW' and the padded 'B----W'."""
    mask = 0
    for ch in letters:
        if ch == "-":
            continue
        i = _KW_LETTERS.find(ch)
        if i < 0:
            raise ValueError(f"unknown keyword letter {ch!r}")
        mask |= 1 << i
    return mask


def kw_string(mask: int) -> str:
    """Render a keyword mask as the fixed-width BCDGLW form with '-' gaps."""
    return "".join(
        _KW_LETTERS[i] if mask & (1 << i) else "-" for i in range(6)
    )


class CardType(enum.IntEnum):
    CREATURE = 0
    GREEN_ITEM = 1
    RED_ITEM = 2
    BLUE_ITEM = 3


class AreaMode(enum.IntEnum):
    TARGET = 0
    LANE1 = 1
    LANE2 = 2


class Version(enum.Enum):
    V10 = "1.0"
    V12 = "1.2"
    V15 = "1.5"


@dataclass(frozen=True, slots=True)
class Card:
    """Immutable card definition. Stats on items are signed deltas."""

    number: int
    name: str
    type: int          # CardType value
    cost: int
    attack: int
    defense: int
    keywords: int      # BCDGLW mask
    my_health: int     # health delta for the owner when played
    opp_health: int    # health delta for the opponent when played (<= 0)
    draw: int          # bonus draws granted to the owner's next turn
    area: int = 0      # AreaMode value; always TARGET outside 1.5

    def is_creature(self) -> bool:
        return self.type == 0


def validate_card(card: Card, config: "RulesetConfig") -> list[str]:
    """Return every violated card invariant; empty list means the card is ok."""
    bad = []
    if card.number <= 0:
        bad.append(f"card number {card.number} must be positive")
    if card.cost < 0:
        bad.append("cost must be >= 0")
    if card.type not in (0, 1, 2, 3):
        bad.append(f"unknown card type {card.type}")
    if card.type == CardType.CREATURE:
        if card.attack < 0:
            bad.append("creature attack must be >= 0")
        if card.defense < 0:
            bad.append("creature defense must be >= 0")
    elif card.type == CardType.GREEN_ITEM:
        if card.attack < 0:
            bad.append("green item attack must be >= 0")
        if card.defense < 0:
            bad.append("green item defense must be >= 0")
    else:
        if card.attack > 0:
            bad.append(
                ("red" if card.type == CardType.RED_ITEM else "blue")
                + " item attack must be <= 0"
            )
        if card.defense > 0:
            bad.append(
                ("red" if card.type == CardType.RED_ITEM else "blue")
                + " item defense must be <= 0"
            )
    if card.opp_health > 0:
        bad.append("opponent health change must be <= 0")
    if card.draw < 0:
        bad.append("bonus draw must be >= 0")
    if not 0 <= card.keywords <= KW_ALL:
        bad.append(f"keyword mask {card.keywords} out of range")
    if card.area not in (0, 1, 2):
        bad.append(f"unknown area mode {card.area}")
    elif card.area != AreaMode.TARGET and config.version is not Version.V15:
        bad.append("area requires version 1.5")
    return bad


@dataclass(frozen=True)
class RulesetConfig:
    """Version selector plus every tunable limit.

    The version determines board shape and phase type; the remaining fields
    default to the published limits and exist so tests can shrink them.
    """

    version: Version = Version.V12
    lanes: int = 2
    lane_size: int = 3
    max_mana: int = 12
    hand_limit: int = 8
    draft_turns: int = 30
    pool_size: int = 120
    deck_size: int = 30
    max_copies: int = 2
    deck_empty_turn: int = 50
    max_turns_hard_cap: int = 100
    battle_turn_ms: int = 200
    construction_ms: int = 4000
    mem_soft_bytes: int = 256 * 1024 * 1024
    mem_hard_bytes: int = 1024 * 1024 * 1024
    second_player_mana_bonus: bool = True
    initial_draws: int = 0        # extra cards dealt to both players pre-battle
    health_cap: int | None = None  # healing is uncapped unless set
    policy: str = "lenient"       # invalid-action policy: lenient | strict
    first_move_grace_ms: int = 0  # startup slack added to each agent's first move

    @staticmethod
    def for_version(version: str | Version, **overrides) -> "RulesetConfig":
        v = Version(version) if not isinstance(version, Version) else version
        base = RulesetConfig(
            version=v,
            lanes=1 if v is Version.V10 else 2,
            lane_size=6 if v is Version.V10 else 3,
        )
        return replace(base, **overrides) if overrides else base

    def uses_runes(self) -> bool:
        return self.version is not Version.V15

    def has_draft(self) -> bool:
        return self.version is not Version.V15


RUNE_THRESHOLDS = (25, 20, 15, 10, 5)

# Phases
PH_DRAFT = 0
PH_CONSTRUCTION = 1
PH_BATTLE = 2
PH_FINISHED = 3

PHASE_NAMES = {0: "draft", 1: "construction", 2: "battle", 3: "finished"}

# Winner sentinel for a drawn game (player indices are 0 and 1)
DRAW = 2

FACE = -1


class BoardCreature:
    """A creature in play. Stats and keywords are current values."""

    __slots__ = (
        "iid", "card", "attack", "defense", "keywords", "lane",
        "summoned_this_turn", "attacked_this_turn",
    )

    def __init__(self, iid: int, card: Card, lane: int):
        self.iid = iid
        self.card = card
        self.attack = card.attack
        self.defense = card.defense
        self.keywords = card.keywords
        self.lane = lane
        self.summoned_this_turn = True
        self.attacked_this_turn = False

    @property
    def can_attack(self) -> bool:
        # summoning sickness unless Charge; one attack per turn
        if self.attacked_this_turn:
            return False
        return not self.summoned_this_turn or bool(self.keywords & KW_CHARGE)

    def clone(self) -> "BoardCreature":
        c = BoardCreature.__new__(BoardCreature)
        c.iid = self.iid
        c.card = self.card
        c.attack = self.attack
        c.defense = self.defense
        c.keywords = self.keywords
        c.lane = self.lane
        c.summoned_this_turn = self.summoned_this_turn
        c.attacked_this_turn = self.attacked_this_turn
        return c

    def __repr__(self):
        return (f"BoardCreature(#{self.iid} {self.attack}/{self.defense} "
                f"{kw_string(self.keywords)} lane={self.lane})")


class PlayerState:
    """One side of the match. ``hand`` holds (instance_id, Card) pairs."""

    __slots__ = (
        "health", "mana", "max_mana", "deck", "hand", "runes",
        "pending_draws", "bonus_mana_active", "health_lost_this_round",
    )

    def __init__(self, use_runes: bool = True):
        self.health = 30
        self.mana = 0
        self.max_mana = 0
        self.deck: list[Card] = []
        self.hand: list[tuple[int, Card]] = []
        self.runes: list[int] = list(RUNE_THRESHOLDS) if use_runes else []
        self.pending_draws = 0
        self.bonus_mana_active = True
        self.health_lost_this_round = 0

    def clone(self) -> "PlayerState":
        p = PlayerState.__new__(PlayerState)
        p.health = self.health
        p.mana = self.mana
        p.max_mana = self.max_mana
        p.deck = self.deck[:]
        p.hand = self.hand[:]
        p.runes = self.runes[:]
        p.pending_draws = self.pending_draws
        p.bonus_mana_active = self.bonus_mana_active
        p.health_lost_this_round = self.health_lost_this_round
        return p


class GameState:
    """Full match state: both players, boards, phase and turn bookkeeping.

    ``boards[p][lane]`` is the ordered list of player p's creatures in that
    lane. ``turn`` counts full rounds (both players acting), 1-based.
    """

    __slots__ = (
        "config", "phase", "players", "boards", "turn", "active",
        "winner", "win_reason", "next_iid", "last_actions", "rng", "setup",
    )

    def __init__(self, config: RulesetConfig):
        self.config = config
        self.phase = PH_DRAFT if config.has_draft() else PH_CONSTRUCTION
        use_runes = config.uses_runes()
        self.players = [PlayerState(use_runes), PlayerState(use_runes)]
        self.boards = [
            [[] for _ in range(config.lanes)] for _ in range(2)
        ]
        self.turn = 0
        self.active = 0
        self.winner: int | None = None
        self.win_reason: str | None = None
        self.next_iid = 1
        # normalized action text of each player's previous turn, for views
        self.last_actions: list[list[str]] = [[], []]
        self.rng: object | None = None
        # DraftState / ConstructionState while the pre-battle phase runs
        self.setup: object | None = None

    def opponent(self, player: int) -> int:
        return 1 - player

    def creatures(self, player: int):
        """All of a player's creatures in lane order."""
        out = []
        for lane in self.boards[player]:
            out.extend(lane)
        return out

    def find_creature(self, iid: int) -> tuple[int, BoardCreature] | None:
        """Locate a creature by instance id; returns (owner, creature)."""
        for p in (0, 1):
            for lane in self.boards[p]:
                for c in lane:
                    if c.iid == iid:
                        return p, c
        return None

    def clone(self) -> "GameState":
        s = GameState.__new__(GameState)
        s.config = self.config
        s.phase = self.phase
        s.players = [self.players[0].clone(), self.players[1].clone()]
        s.boards = [
            [[c.clone() for c in lane] for lane in self.boards[0]],
            [[c.clone() for c in lane] for lane in self.boards[1]],
        ]
        s.turn = self.turn
        s.active = self.active
        s.winner = self.winner
        s.win_reason = self.win_reason
        s.next_iid = self.next_iid
        s.last_actions = [self.last_actions[0][:], self.last_actions[1][:]]
        s.rng = self.rng
        s.setup = self.setup
        return s


# ---------------------------------------------------------------------------
# Actions: plain tuples (kind, a, b). ``b`` is 0 when unused.
#   PASS    -> (A_PASS, 0, 0)
#   SUMMON  -> (A_SUMMON, instance_id, lane)
#   ATTACK  -> (A_ATTACK, instance_id, target_iid | FACE)
#   USE     -> (A_USE, instance_id, target_iid | FACE)
#   PICK    -> (A_PICK, index, 0)
#   CHOOSE  -> (A_CHOOSE, tuple_of_card_numbers, 0)
# ---------------------------------------------------------------------------

A_PASS = 0
A_SUMMON = 1
A_ATTACK = 2
A_USE = 3
A_PICK = 4
A_CHOOSE = 5

PASS_ACTION = (A_PASS, 0, 0)


def summon(iid: int, lane: int = 0):
    return (A_SUMMON, iid, lane)


def attack(iid: int, target: int):
    return (A_ATTACK, iid, target)


def use(iid: int, target: int = FACE):
    return (A_USE, iid, target)


def pick(index: int):
    return (A_PICK, index, 0)


def choose(card_numbers):
    return (A_CHOOSE, tuple(card_numbers), 0)


class InvariantViolation(AssertionError):
    """Raised by the state auditor when a reachable state breaks a type rule."""


def audit_state(state: GameState) -> None:
    """Debug-mode check that every documented state invariant holds."""
    cfg = state.config
    if (state.phase == PH_FINISHED) != (state.winner is not None):
        raise InvariantViolation("finished phase must coincide with a winner")
    seen_iids = set()
    for p in (0, 1):
        ps = state.players[p]
        if len(ps.hand) > cfg.hand_limit:
            raise InvariantViolation(f"player {p} hand over limit: {len(ps.hand)}")
        if ps.max_mana > cfg.max_mana:
            raise InvariantViolation(f"player {p} max mana {ps.max_mana} > cap")
        bonus = 1 if (p == 1 and ps.bonus_mana_active
                      and cfg.second_player_mana_bonus) else 0
        if not 0 <= ps.mana <= ps.max_mana + bonus:
            raise InvariantViolation(
                f"player {p} mana {ps.mana} outside [0, {ps.max_mana + bonus}]")
        for a, b in zip(ps.runes, ps.runes[1:]):
            if b >= a:
                raise InvariantViolation(f"player {p} runes not descending")
        for t in ps.runes:
            if t >= ps.health and state.phase in (PH_BATTLE, PH_FINISHED):
                raise InvariantViolation(
                    f"player {p} rune {t} not below health {ps.health}")
        if ps.pending_draws < 0:
            raise InvariantViolation("pending draws negative")
        for iid, card in ps.hand:
            if iid in seen_iids:
                raise InvariantViolation(f"duplicate instance id {iid}")
            seen_iids.add(iid)
        if len(state.boards[p]) != cfg.lanes:
            raise InvariantViolation("board lane count mismatch")
        for lane_idx, lane in enumerate(state.boards[p]):
            if len(lane) > cfg.lane_size:
                raise InvariantViolation(
                    f"player {p} lane {lane_idx} over capacity")
            for c in lane:
                if c.defense <= 0:
                    raise InvariantViolation(
                        f"creature #{c.iid} on board with defense {c.defense}")
                if c.lane != lane_idx:
                    raise InvariantViolation(f"creature #{c.iid} lane field stale")
                if c.attack < 0:
                    raise InvariantViolation(f"creature #{c.iid} negative attack")
                if c.summoned_this_turn and not c.keywords & KW_CHARGE:
                    if c.can_attack:
                        raise InvariantViolation(
                            f"creature #{c.iid} can attack on summon turn")
                if c.iid in seen_iids:
                    raise InvariantViolation(f"duplicate instance id {c.iid}")
                seen_iids.add(c.iid)
