"""Card supply: fixed card-set files and per-match procedural pools.

Card-set file format (UTF-8, line oriented, ``#`` comments):

    cardNumber;name;type;cost;attack;defense;abilities;myHealthChange;opponentHealthChange;cardDraw[;area]

with type one of creature/itemGreen/itemRed/itemBlue, abilities the BCDGLW
mask, and the trailing area column (0/1/2) present only in 1.5-style sets.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

from .model import (
    AreaMode, Card, CardType, RulesetConfig, kw_mask, kw_string, validate_card,
)
from .rng import Rng

TYPE_WORDS = {
    CardType.CREATURE: "creature",
    CardType.GREEN_ITEM: "itemGreen",
    CardType.RED_ITEM: "itemRed",
    CardType.BLUE_ITEM: "itemBlue",
}
WORD_TYPES = {w: t for t, w in TYPE_WORDS.items()}


class CardSetError(Exception):
    """Raised when a card-set file cannot be loaded; carries all problems."""

    def __init__(self, path: str, errors: list[str]):
        self.path = path
        self.errors = errors
        summary = "; ".join(errors[:5])
        if len(errors) > 5:
            summary += f" (+{len(errors) - 5} more)"
        super().__init__(f"{path}: {summary}")


@dataclass(frozen=True)
class CardSet:
    name: str
    version: str               # "1.2"-style tag; decides the area column
    cards: tuple[Card, ...]

    def __len__(self) -> int:
        return len(self.cards)

    def by_number(self) -> dict[int, Card]:
        return {c.number: c for c in self.cards}

    def has_area_column(self) -> bool:
        return self.version == "1.5"


def format_card_line(card: Card, with_area: bool) -> str:
    base = (
        f"{card.number};{card.name};{TYPE_WORDS[CardType(card.type)]};"
        f"{card.cost};{card.attack};{card.defense};{kw_string(card.keywords)};"
        f"{card.my_health};{card.opp_health};{card.draw}"
    )
    return f"{base};{card.area}" if with_area else base


def parse_card_line(line: str, with_area: bool) -> Card:
    """Parse one card line; raises ValueError naming the bad field."""
    fields = line.split(";")
    expected = 11 if with_area else 10
    if len(fields) != expected:
        raise ValueError(f"expected {expected} fields, got {len(fields)}")

    def intfield(idx: int, label: str) -> int:
        try:
            return int(fields[idx])
        except ValueError:
            raise ValueError(f"{label} is not an integer: {fields[idx]!r}")

    word = fields[2]
    if word not in WORD_TYPES:
        raise ValueError(f"unknown card type {word!r}")
    return Card(
        number=intfield(0, "cardNumber"),
        name=fields[1],
        type=int(WORD_TYPES[word]),
        cost=intfield(3, "cost"),
        attack=intfield(4, "attack"),
        defense=intfield(5, "defense"),
        keywords=kw_mask(fields[6]),
        my_health=intfield(7, "myHealthChange"),
        opp_health=intfield(8, "opponentHealthChange"),
        draw=intfield(9, "cardDraw"),
        area=intfield(10, "area") if with_area else 0,
    )


def load_card_set(path: str, name: str | None = None) -> CardSet:
    """Load and validate a card-set file; the area column is auto-detected."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CardSetError(str(path), [f"cannot read file: {exc}"]) from exc
    return parse_card_set(text, name=name or str(path), origin=str(path))


def parse_card_set(text: str, name: str, origin: str = "<string>") -> CardSet:
    lines = text.splitlines()
    with_area: bool | None = None
    cards: list[Card] = []
    errors: list[str] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if with_area is None:
            with_area = line.count(";") == 10
        try:
            cards.append(parse_card_line(line, with_area))
        except ValueError as exc:
            errors.append(f"line {lineno}: {exc}")
    version = "1.5" if with_area else "1.2"
    config = RulesetConfig.for_version(version)
    seen: dict[int, int] = {}
    for card in cards:
        if card.number in seen:
            errors.append(f"duplicate cardNumber {card.number}")
        seen[card.number] = card.number
        for problem in validate_card(card, config):
            errors.append(f"card {card.number}: {problem}")
    if errors:
        raise CardSetError(origin, errors)
    if not cards:
        raise CardSetError(origin, ["card set is empty"])
    return CardSet(name=name, version=version, cards=tuple(cards))


def save_card_set(card_set: CardSet, path: str) -> None:
    with_area = card_set.has_area_column()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {card_set.name}\n")
        for card in card_set.cards:
            fh.write(format_card_line(card, with_area) + "\n")


_DEFAULT_SET: CardSet | None = None


def default_card_set() -> CardSet:
    """The fixed 160-card set shipped with the package, used by 1.0/1.2."""
    global _DEFAULT_SET
    if _DEFAULT_SET is None:
        text = (importlib.resources.files("locm.data")
                .joinpath("cardset_v12.txt").read_text("utf-8"))
        _DEFAULT_SET = parse_card_set(text, name="default-v12",
                                      origin="locm/data/cardset_v12.txt")
    return _DEFAULT_SET


# ---------------------------------------------------------------------------
# Procedural generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for the pool generator. The distribution is this package's own;
    it deliberately allows degenerate cards (huge zero-cost item swings) via
    the wild tail."""

    pool_size: int = 120
    type_weights: tuple[int, int, int, int] = (60, 13, 13, 14)
    cost_weights: tuple[int, ...] = (6, 10, 12, 12, 11, 9, 7, 5, 4, 3, 2, 1, 1)
    creature_budget_per_cost: int = 2
    creature_budget_noise: int = 3      # additive uniform [0, noise)
    keyword_chance: float = 0.22
    keyword_decay: float = 0.5
    draw_chance: float = 0.12
    draw_max: int = 2
    self_heal_chance: float = 0.10
    self_heal_max: int = 3
    self_hurt_chance: float = 0.03
    self_hurt_max: int = 2
    opp_damage_chance: float = 0.10
    opp_damage_max: int = 3
    wild_chance: float = 0.01
    wild_magnitude: int = 99
    with_area: bool = True
    area_weights: tuple[int, int, int] = (70, 15, 15)

    def validate(self) -> list[str]:
        bad = []
        if self.pool_size < 1:
            bad.append("pool_size must be >= 1")
        for label, p in (
            ("keyword_chance", self.keyword_chance),
            ("keyword_decay", self.keyword_decay),
            ("draw_chance", self.draw_chance),
            ("self_heal_chance", self.self_heal_chance),
            ("self_hurt_chance", self.self_hurt_chance),
            ("opp_damage_chance", self.opp_damage_chance),
            ("wild_chance", self.wild_chance),
        ):
            if not 0.0 <= p <= 1.0:
                bad.append(f"{label} must be in [0, 1]")
        for label, ws in (
            ("type_weights", self.type_weights),
            ("cost_weights", self.cost_weights),
            ("area_weights", self.area_weights),
        ):
            if not ws or sum(ws) <= 0 or min(ws) < 0:
                bad.append(f"{label} must be non-empty and non-negative")
        if self.wild_magnitude < 0:
            bad.append("wild_magnitude must be >= 0")
        return bad


_ADJECTIVES = (
    "Ancient", "Bold", "Cursed", "Dire", "Elder", "Feral", "Gilded",
    "Hollow", "Iron", "Jade", "Keen", "Lone", "Mad", "Noble", "Obsidian",
    "Pale", "Quick", "Rabid", "Silent", "Tidal", "Umbral", "Vile",
    "Wild", "Young",
)
_NOUNS = (
    "Basilisk", "Colossus", "Djinn", "Ember", "Falcon", "Gargoyle",
    "Harpy", "Imp", "Juggernaut", "Kraken", "Lurker", "Mystic",
    "Nomad", "Oracle", "Phantom", "Quetzal", "Revenant", "Sentinel",
    "Titan", "Urchin", "Viper", "Warden", "Wisp", "Zealot",
)


def _weighted(rng: Rng, weights) -> int:
    r = rng.below(sum(weights))
    acc = 0
    for i, w in enumerate(weights):
        acc += w
        if r < acc:
            return i
    return len(weights) - 1


def _keyword_roll(rng: Rng, params: GeneratorParams) -> int:
    mask = 0
    p = params.keyword_chance
    for bit in range(6):
        if rng.chance(p):
            mask |= 1 << bit
            p *= params.keyword_decay
    return mask


def generate_card(rng: Rng, params: GeneratorParams, number: int) -> Card:
    ctype = _weighted(rng, params.type_weights)
    cost = _weighted(rng, params.cost_weights)
    keywords = _keyword_roll(rng, params)
    draw = 1 + rng.below(params.draw_max) if rng.chance(params.draw_chance) else 0
    if rng.chance(params.self_heal_chance):
        my_health = 1 + rng.below(params.self_heal_max)
    elif rng.chance(params.self_hurt_chance):
        my_health = -(1 + rng.below(params.self_hurt_max))
    else:
        my_health = 0
    opp_health = (-(1 + rng.below(params.opp_damage_max))
                  if rng.chance(params.opp_damage_chance) else 0)
    wild = rng.chance(params.wild_chance)
    if ctype == CardType.CREATURE:
        budget = (params.creature_budget_per_cost * cost
                  + rng.below(params.creature_budget_noise))
        if wild:
            budget += rng.below(30)
        attack = rng.below(budget + 1)
        defense = max(1, budget - attack)
    elif ctype == CardType.GREEN_ITEM:
        attack = rng.below(cost + 2)
        defense = rng.below(cost + 2)
        if wild:
            defense += rng.below(params.wild_magnitude + 1)
    else:
        attack = -rng.below(cost // 2 + 2)
        defense = -rng.below(cost + 2)
        if wild:
            defense = -rng.below(params.wild_magnitude + 1)
    area = (_weighted(rng, params.area_weights)
            if params.with_area else int(AreaMode.TARGET))
    name = f"{_ADJECTIVES[rng.below(len(_ADJECTIVES))]} {_NOUNS[rng.below(len(_NOUNS))]}"
    return Card(
        number=number, name=name, type=int(ctype), cost=cost,
        attack=attack, defense=defense, keywords=keywords,
        my_health=my_health, opp_health=opp_health, draw=draw, area=area,
    )


def generate_pool(params: GeneratorParams, seed: int) -> CardSet:
    """Deterministic card pool for one match; same (params, seed) gives the
    same cards."""
    bad = params.validate()
    if bad:
        raise ValueError("invalid generator params: " + "; ".join(bad))
    rng = Rng(seed)
    cards = tuple(
        generate_card(rng, params, n) for n in range(1, params.pool_size + 1)
    )
    version = "1.5" if params.with_area else "1.2"
    return CardSet(name=f"pool-{seed & 0xFFFFFFFFFFFFFFFF:016x}",
                   version=version, cards=cards)
