"""Draft option streams, pick handling, construction validation, shuffling."""

import pytest

from locm.cards import default_card_set, generate_pool, GeneratorParams
from locm.deck import (ConstructionState, DeckPhaseError, DraftState,
                       draft_options, finalize_deck, STRICT)
from locm.rng import Rng, subseed
from support import make_card


def test_options_deterministic():
    cs = default_card_set()
    a = draft_options(cs, 42, 3)
    b = draft_options(cs, 42, 3)
    assert a == b


def test_options_are_three_distinct_cards():
    cs = default_card_set()
    for turn in range(30):
        opts = draft_options(cs, 7, turn)
        assert len(opts) == 3
        assert len({c.number for c in opts}) == 3


def test_option_streams_shared_between_players():
    cs = default_card_set()
    draft = DraftState(cs, 11)
    while not draft.complete:
        opts_seen = draft.options()
        assert opts_seen == draft.options()
        draft.apply_pick(0, 0)
        draft.apply_pick(1, 2)
    assert len(draft.option_history) == 30


def test_different_seeds_give_different_streams():
    cs = default_card_set()
    identical = 0
    for seed in range(100):
        s1 = [draft_options(cs, seed, t) for t in range(30)]
        s2 = [draft_options(cs, seed + 1000, t) for t in range(30)]
        if s1 == s2:
            identical += 1
    assert identical == 0


def test_pick_appends_chosen_card():
    cs = default_card_set()
    draft = DraftState(cs, 5)
    a, b, c = draft.options()
    draft.apply_pick(0, 1)
    assert draft.picks[0] == [b]


def test_invalid_pick_falls_back_to_first_option():
    cs = default_card_set()
    draft = DraftState(cs, 5)
    first = draft.options()[0]
    card, used = draft.apply_pick(0, 5)
    assert used == 0 and card == first


def test_invalid_pick_strict_rejects():
    cs = default_card_set()
    draft = DraftState(cs, 5)
    with pytest.raises(DeckPhaseError):
        draft.apply_pick(0, 5, policy=STRICT)


def test_thirty_turns_build_thirty_card_decks():
    cs = default_card_set()
    draft = DraftState(cs, 5)
    while not draft.complete:
        draft.apply_pick(0, 0)
        draft.apply_pick(1, 1)
    assert len(draft.picks[0]) == 30
    assert len(draft.picks[1]) == 30
    with pytest.raises(DeckPhaseError):
        draft.apply_pick(0, 0)


def test_double_pick_same_turn_rejected():
    cs = default_card_set()
    draft = DraftState(cs, 5)
    draft.apply_pick(0, 0)
    with pytest.raises(DeckPhaseError):
        draft.apply_pick(0, 0)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _pool():
    return generate_pool(GeneratorParams(), subseed(4, "pool"))


def test_valid_choice_accepted():
    pool = _pool()
    cs = ConstructionState(pool)
    numbers = [c.number for c in pool.cards[:30]]
    deck = cs.apply_choice(0, numbers, Rng(1))
    assert [c.number for c in deck] == numbers


def test_two_copies_allowed_three_rejected():
    pool = _pool()
    cs = ConstructionState(pool)
    ok = [17, 17] + [c.number for c in pool.cards[:28] if c.number != 17][:28]
    deck = cs.apply_choice(0, ok, Rng(1), policy=STRICT)
    assert sum(1 for c in deck if c.number == 17) == 2
    with pytest.raises(DeckPhaseError):
        ConstructionState(pool).apply_choice(0, [17, 17, 17], Rng(1),
                                             policy=STRICT)


def test_unknown_number_strict_rejects_lenient_drops():
    pool = _pool()
    with pytest.raises(DeckPhaseError):
        ConstructionState(pool).apply_choice(0, [9999], Rng(1), policy=STRICT)
    deck = ConstructionState(pool).apply_choice(0, [9999], Rng(1))
    assert len(deck) == 30
    assert all(c.number != 9999 for c in deck)


def test_short_choice_padded_to_thirty():
    pool = _pool()
    cs = ConstructionState(pool)
    numbers = [c.number for c in pool.cards[:20]]
    deck = cs.apply_choice(0, numbers, Rng(subseed(4, "pad", 0)))
    assert len(deck) == 30
    counts = {}
    for c in deck:
        counts[c.number] = counts.get(c.number, 0) + 1
    assert max(counts.values()) <= 2


def test_padding_deterministic_in_seed():
    pool = _pool()
    d1 = ConstructionState(pool).apply_choice(0, [], Rng(99))
    d2 = ConstructionState(pool).apply_choice(0, [], Rng(99))
    assert [c.number for c in d1] == [c.number for c in d2]


def test_over_thirty_picks_truncated():
    pool = _pool()
    numbers = [c.number for c in pool.cards[:40]]
    deck = ConstructionState(pool).apply_choice(0, numbers, Rng(1))
    assert len(deck) == 30
    with pytest.raises(DeckPhaseError):
        ConstructionState(pool).apply_choice(0, numbers, Rng(1), policy=STRICT)


# ---------------------------------------------------------------------------
# finalize
# ---------------------------------------------------------------------------

def test_shuffle_deterministic_and_permutation():
    cards = [make_card(number=i) for i in range(1, 31)]
    a = finalize_deck(cards, 123)
    b = finalize_deck(cards, 123)
    assert a == b
    assert sorted(c.number for c in a) == list(range(1, 31))
    assert a != cards  # 30 cards virtually never shuffle to identity


def test_singleton_deck_unchanged():
    card = make_card(number=9)
    assert finalize_deck([card], 5) == [card]


def test_different_seeds_shuffle_differently():
    cards = [make_card(number=i) for i in range(1, 31)]
    assert finalize_deck(cards, 1) != finalize_deck(cards, 2)
