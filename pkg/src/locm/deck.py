"""Pre-battle phases: the 30-turn shared draft (1.0/1.2), the one-shot
construction from a 120-card pool (1.5), and deck finalization.

All sampling here is a pure function of the match seed, which is what makes
mirrored games present identical options and pools.
"""

from __future__ import annotations

from .model import Card
from .cards import CardSet
from .rng import Rng, subseed

LENIENT = "lenient"
STRICT = "strict"


class DeckPhaseError(Exception):
    """Strict-policy rejection of a draft pick or construction choice."""


def draft_options(card_set: CardSet, seed: int, turn: int) -> tuple[Card, Card, Card]:
    """The three shared options for one draft turn.

    Uniform without replacement within the turn, independent across turns.
    Deterministic in (card_set, seed, turn) and identical for both players.
    """
    cards = card_set.cards
    n = len(cards)
    if n < 3:
        raise ValueError("card set too small for a draft")
    rng = Rng(subseed(seed, "draft-options", turn))
    picked: list[int] = []
    while len(picked) < 3:
        i = rng.below(n)
        if i not in picked:
            picked.append(i)
    return cards[picked[0]], cards[picked[1]], cards[picked[2]]


class DraftState:
    """Tracks both players through the shared 30-turn draft."""

    def __init__(self, card_set: CardSet, seed: int, turns: int = 30):
        self.card_set = card_set
        self.seed = seed
        self.turns = turns
        self.turn = 0
        self.picks: list[list[Card]] = [[], []]
        self._pending: list[int | None] = [None, None]
        self.option_history: list[tuple[Card, Card, Card]] = []

    @property
    def complete(self) -> bool:
        return self.turn >= self.turns

    def options(self) -> tuple[Card, Card, Card]:
        if self.complete:
            raise DeckPhaseError("draft already complete")
        while len(self.option_history) <= self.turn:
            self.option_history.append(
                draft_options(self.card_set, self.seed, len(self.option_history)))
        return self.option_history[self.turn]

    def apply_pick(self, player: int, index: int,
                   policy: str = LENIENT) -> tuple[Card, int]:
        """Record one pick; returns (card, index actually used).

        Out-of-range indices fall back to option 0 under the lenient policy
        and raise under strict. The turn advances once both players picked.
        """
        if self.complete:
            raise DeckPhaseError("draft already complete")
        if self._pending[player] is not None:
            raise DeckPhaseError(f"player {player} already picked this turn")
        if not 0 <= index <= 2:
            if policy == STRICT:
                raise DeckPhaseError(f"pick index {index} out of range")
            index = 0
        card = self.options()[index]
        self.picks[player].append(card)
        self._pending[player] = index
        if self._pending[0] is not None and self._pending[1] is not None:
            self.turn += 1
            self._pending = [None, None]
        return card, index


class ConstructionState:
    """The 1.5 pool plus both players' validated pick multisets."""

    def __init__(self, pool: CardSet, deck_size: int = 30, max_copies: int = 2):
        self.pool = pool
        self.deck_size = deck_size
        self.max_copies = max_copies
        self.picks: list[list[int]] = [[], []]

    def apply_choice(self, player: int, numbers, rng: Rng,
                     policy: str = LENIENT) -> list[Card]:
        """Validate a pick list and pad it to a full deck.

        Lenient: unknown numbers, third copies, and picks beyond the deck
        size are dropped, then the deck is padded with uniformly random
        legal picks from ``rng``. Strict: any offense rejects the choice.
        """
        by_number = self.pool.by_number()
        counts: dict[int, int] = {}
        chosen: list[Card] = []
        problems: list[str] = []
        for number in numbers:
            if len(chosen) >= self.deck_size:
                problems.append(f"more than {self.deck_size} picks")
                break
            card = by_number.get(number)
            if card is None:
                problems.append(f"card {number} is not in the pool")
                continue
            if counts.get(number, 0) >= self.max_copies:
                problems.append(f"more than {self.max_copies} copies of card {number}")
                continue
            counts[number] = counts.get(number, 0) + 1
            chosen.append(card)
        if problems and policy == STRICT:
            raise DeckPhaseError("; ".join(problems))
        while len(chosen) < self.deck_size:
            eligible = [c for c in self.pool.cards
                        if counts.get(c.number, 0) < self.max_copies]
            card = eligible[rng.below(len(eligible))]
            counts[card.number] = counts.get(card.number, 0) + 1
            chosen.append(card)
        self.picks[player] = [c.number for c in chosen]
        return chosen


def finalize_deck(cards, seed: int) -> list[Card]:
    """Deterministic shuffle; the result is the draw order (index 0 on top)."""
    deck = list(cards)
    Rng(seed).shuffle(deck)
    return deck
