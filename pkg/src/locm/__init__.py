"""Deterministic Legends of Code and Magic: rules engine for versions 1.0,
1.2 and 1.5, wire protocol, built-in agents, sandboxed external agents, and
a seeded mirrored tournament runner."""

from .model import (
    AreaMode, BoardCreature, Card, CardType, GameState, Keyword,
    PlayerState, RulesetConfig, Version, validate_card,
)
from .engine import (
    apply_action, begin_turn, check_end, end_turn, legal_actions, replay_log,
)
from .cards import (
    CardSet, GeneratorParams, default_card_set, generate_pool, load_card_set,
    save_card_set,
)
from .deck import ConstructionState, DraftState, draft_options, finalize_deck
from .protocol import parse_agent_output, render_turn_input
from .agents import BUILTIN_AGENTS, make_agent
from .match import MatchResult, MatchSpec, run_match
from .tournament import aggregate, build_schedule, export, run_schedule
from .rng import Rng, subseed

__version__ = "0.1.0"
