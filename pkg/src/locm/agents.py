"""Built-in reference agents.

All five speak the wire protocol: ``act(turn_input_text) -> output_line``.
They never read referee internals, so each also runs as an external process
via ``python -m locm.agents <name>``. The rule-based agents plan their turn
against a light client-side tracker that mirrors combat outcomes (ward,
lethal, guard) exactly; the greedy agent rebuilds a state from the view and
scores candidate actions by one-step simulation through the forward model.

Every agent emits only actions that are legal at the moment the engine
applies them, assuming the view it received is truthful.
"""

from __future__ import annotations

import argparse
import sys

from .model import (
    A_ATTACK, A_PASS, A_SUMMON, A_USE, FACE,
    KW_GUARD, KW_LETHAL, KW_WARD, BoardCreature, Card, CardType,
    GameState, PH_BATTLE, PH_CONSTRUCTION, PH_DRAFT,
    RulesetConfig, RUNE_THRESHOLDS, kw_mask,
)
from . import engine
from .protocol import render_action
from .rng import Rng


# ---------------------------------------------------------------------------
# Agent-side view parsing
# ---------------------------------------------------------------------------

class ViewCard:
    __slots__ = ("number", "iid", "loc", "type", "cost", "attack", "defense",
                 "keywords", "my_health", "opp_health", "draw", "area", "lane")

    def __init__(self, fields: list[str]):
        has_area = len(fields) == 13
        self.number = int(fields[0])
        self.iid = int(fields[1])
        self.loc = int(fields[2])
        self.type = int(fields[3])
        self.cost = int(fields[4])
        self.attack = int(fields[5])
        self.defense = int(fields[6])
        self.keywords = kw_mask(fields[7])
        self.my_health = int(fields[8])
        self.opp_health = int(fields[9])
        self.draw = int(fields[10])
        self.area = int(fields[11]) if has_area else 0
        self.lane = int(fields[-1])

    def as_card(self) -> Card:
        return Card(number=self.number, name="", type=self.type,
                    cost=self.cost, attack=self.attack, defense=self.defense,
                    keywords=self.keywords, my_health=self.my_health,
                    opp_health=self.opp_health, draw=self.draw, area=self.area)


class ParsedView:
    """Decoded turn input; the phase is inferred the way competition agents
    do it (mana is zero only before the battle phase)."""

    def __init__(self, me, opp, opp_hand, opp_actions, cards):
        self.me = me
        self.opp = opp
        self.opp_hand = opp_hand
        self.opp_actions = opp_actions
        self.cards = cards
        if me[1] == 0 and cards and all(c.loc == 0 for c in cards):
            self.phase = PH_CONSTRUCTION if len(cards) > 3 else PH_DRAFT
        else:
            self.phase = PH_BATTLE

    @staticmethod
    def parse(text: str) -> "ParsedView":
        lines = text.splitlines()
        me = tuple(int(x) for x in lines[0].split())
        opp = tuple(int(x) for x in lines[1].split())
        opp_hand, opp_action_count = (int(x) for x in lines[2].split())
        idx = 3 + opp_action_count
        opp_actions = lines[3:idx]
        count = int(lines[idx])
        cards = [ViewCard(line.split())
                 for line in lines[idx + 1: idx + 1 + count]]
        return ParsedView(me, opp, opp_hand, opp_actions, cards)

    def my_hand(self):
        return [c for c in self.cards if c.loc == 0]

    def my_board(self):
        return [c for c in self.cards if c.loc == 1]

    def enemy_board(self):
        return [c for c in self.cards if c.loc == -1]


# ---------------------------------------------------------------------------
# Client-side combat bookkeeping for the rule-based agents
# ---------------------------------------------------------------------------

class _Target:
    """Liveness tracker for one enemy creature, mirroring engine combat."""

    __slots__ = ("iid", "lane", "attack", "defense", "ward", "guard", "alive")

    def __init__(self, vc: ViewCard):
        self.iid = vc.iid
        self.lane = vc.lane
        self.attack = vc.attack
        self.defense = vc.defense
        self.ward = bool(vc.keywords & KW_WARD)
        self.guard = bool(vc.keywords & KW_GUARD)
        self.alive = True

    def hit(self, damage: int, lethal: bool) -> None:
        if damage > 0:
            if self.ward:
                self.ward = False
                return
            self.defense -= damage
            if self.defense <= 0 or lethal:
                self.alive = False

    def item(self, card: ViewCard) -> None:
        # damage resolves against the pre-item ward, then keywords are edited
        if card.defense < 0:
            if self.ward:
                self.ward = False
            else:
                self.defense += card.defense
        if card.keywords & KW_WARD:
            self.ward = False
        if card.keywords & KW_GUARD:
            self.guard = False
        if self.defense <= 0:
            self.alive = False


class _Own:
    """Current attack/keywords of a friendly board creature, kept in sync
    with the green items the plan has already queued."""

    __slots__ = ("iid", "lane", "attack", "keywords")

    def __init__(self, vc: ViewCard):
        self.iid = vc.iid
        self.lane = vc.lane
        self.attack = vc.attack
        self.keywords = vc.keywords

    def buff(self, card: ViewCard) -> None:
        self.attack = max(0, self.attack + card.attack)
        self.keywords |= card.keywords


class _TurnPlan:
    """Accumulates one turn's actions while tracking mana, lane space and
    enemy liveness so that every emitted action stays legal."""

    def __init__(self, view: ParsedView, config: RulesetConfig):
        self.config = config
        self.version = config.version
        self.mana = view.me[1]
        self.lane_counts = [0] * config.lanes
        self.own = [_Own(c) for c in view.my_board()]
        for c in self.own:
            self.lane_counts[c.lane] += 1
        self.targets = [_Target(c) for c in view.enemy_board()]
        self.actions: list[str] = []

    def open_lanes(self) -> list[int]:
        return [i for i, n in enumerate(self.lane_counts)
                if n < self.config.lane_size]

    def alive_in_lane(self, lane: int) -> list["_Target"]:
        return [t for t in self.targets if t.alive and t.lane == lane]

    def guards_in_lane(self, lane: int) -> list["_Target"]:
        return [t for t in self.targets
                if t.alive and t.lane == lane and t.guard]

    def alive_targets(self) -> list["_Target"]:
        return [t for t in self.targets if t.alive]

    def summon(self, card: ViewCard, lane: int) -> None:
        self.mana -= card.cost
        self.lane_counts[lane] += 1
        # an area creature brings a copy along when there is room for it
        if card.area == 1 and self.lane_counts[lane] < self.config.lane_size:
            self.lane_counts[lane] += 1
        elif card.area == 2:
            other = 1 - lane
            if self.lane_counts[other] < self.config.lane_size:
                self.lane_counts[other] += 1
        self.actions.append(
            render_action((A_SUMMON, card.iid, lane), self.version))

    def attack(self, attacker: "_Own", target: "_Target | None") -> None:
        if target is None:
            tid = FACE
        else:
            target.hit(attacker.attack, bool(attacker.keywords & KW_LETHAL))
            tid = target.iid
        self.actions.append(
            render_action((A_ATTACK, attacker.iid, tid), self.version))

    def use_green(self, card: ViewCard, target: "_Own") -> None:
        self.mana -= card.cost
        if card.area == 1:
            affected = [o for o in self.own if o.lane == target.lane]
        elif card.area == 2:
            affected = list(self.own)
        else:
            affected = [target]
        for o in affected:
            o.buff(card)
        self.actions.append(
            render_action((A_USE, card.iid, target.iid), self.version))

    def use(self, card: ViewCard, target_iid: int,
            tracker: "_Target | None" = None) -> None:
        self.mana -= card.cost
        if tracker is not None:
            # area items fan out over the target's lane or whole side
            if card.area == 1:
                affected = self.alive_in_lane(tracker.lane)
            elif card.area == 2:
                affected = self.alive_targets()
            else:
                affected = [tracker]
            for t in affected:
                t.item(card)
        self.actions.append(
            render_action((A_USE, card.iid, target_iid), self.version))

    def line(self) -> str:
        return ";".join(self.actions) if self.actions else "PASS"


def _pick_lane(plan: _TurnPlan) -> int | None:
    """Least-filled open lane, ties to the lower index."""
    lanes = plan.open_lanes()
    if not lanes:
        return None
    return min(lanes, key=lambda i: (plan.lane_counts[i], i))


def random_deck_numbers(pool_numbers, rng: Rng, deck_size: int,
                        max_copies: int) -> list[int]:
    """Uniform legal construction picks: deck_size draws, each uniform over
    the cards still below the copy limit."""
    counts: dict[int, int] = {}
    out: list[int] = []
    for _ in range(deck_size):
        eligible = [n for n in pool_numbers if counts.get(n, 0) < max_copies]
        n = eligible[rng.below(len(eligible))]
        counts[n] = counts.get(n, 0) + 1
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Agents
# ---------------------------------------------------------------------------

class Agent:
    name = "agent"
    deterministic = True

    def __init__(self):
        self.config = RulesetConfig.for_version("1.2")
        self.seat = 0
        self.rng = Rng(0)

    def reset(self, config: RulesetConfig, seat: int, seed: int) -> None:
        self.config = config
        self.seat = seat
        self.rng = Rng(seed)

    def act(self, view_text: str) -> str:
        raise NotImplementedError


class BaselineOne(Agent):
    """Drafts Guard creatures (first card otherwise); plays everything it
    can afford; attacks the face unless a Guard forces targeting."""

    name = "baseline1"

    def act(self, view_text: str) -> str:
        view = ParsedView.parse(view_text)
        if view.phase == PH_DRAFT:
            for i, c in enumerate(view.cards):
                if c.type == CardType.CREATURE and c.keywords & KW_GUARD:
                    return f"PICK {i}"
            return "PICK 0"
        if view.phase == PH_CONSTRUCTION:
            guards = [c.number for c in view.cards
                      if c.type == CardType.CREATURE and c.keywords & KW_GUARD]
            rest = [c.number for c in view.cards if c.number not in set(guards)]
            picks = (guards + rest)[: self.config.deck_size]
            return ";".join(f"CHOOSE {n}" for n in picks)
        plan = _TurnPlan(view, self.config)
        for c in view.my_hand():
            if c.type == CardType.CREATURE and c.cost <= plan.mana:
                lane = _pick_lane(plan)
                if lane is not None:
                    plan.summon(c, lane)
        for c in view.my_hand():
            if c.cost > plan.mana:
                continue
            if c.type == CardType.GREEN_ITEM:
                if plan.own:
                    plan.use_green(c, max(plan.own, key=lambda o: o.attack))
            elif c.type == CardType.RED_ITEM:
                targets = plan.alive_targets()
                if targets:
                    best = max(targets, key=lambda t: t.attack)
                    plan.use(c, best.iid, tracker=best)
            elif c.type == CardType.BLUE_ITEM:
                targets = plan.alive_targets()
                if targets:
                    best = max(targets, key=lambda t: t.attack)
                    plan.use(c, best.iid, tracker=best)
                else:
                    plan.use(c, FACE)
        for own in plan.own:
            guards = plan.guards_in_lane(own.lane)
            plan.attack(own, guards[0] if guards else None)
        return plan.line()


class BaselineTwo(Agent):
    """Drafts the highest-attack creature; one pass: attack with the whole
    board, then summon every affordable creature."""

    name = "baseline2"

    def act(self, view_text: str) -> str:
        view = ParsedView.parse(view_text)
        if view.phase == PH_DRAFT:
            best, best_attack = 0, None
            for i, c in enumerate(view.cards):
                if c.type == CardType.CREATURE:
                    if best_attack is None or c.attack > best_attack:
                        best, best_attack = i, c.attack
            return f"PICK {best}"
        if view.phase == PH_CONSTRUCTION:
            creatures = sorted(
                (c for c in view.cards if c.type == CardType.CREATURE),
                key=lambda c: -c.attack)
            picks = [c.number for c in creatures]
            picks += [c.number for c in view.cards
                      if c.type != CardType.CREATURE]
            return ";".join(
                f"CHOOSE {n}" for n in picks[: self.config.deck_size])
        plan = _TurnPlan(view, self.config)
        for own in plan.own:
            guards = plan.guards_in_lane(own.lane)
            plan.attack(own, guards[0] if guards else None)
        for c in view.my_hand():
            if c.type == CardType.CREATURE and c.cost <= plan.mana:
                lane = _pick_lane(plan)
                if lane is not None:
                    plan.summon(c, lane)
        return plan.line()


class RandomWithItems(Agent):
    """Random constructed deck; greens on own creatures, attacks, summons,
    then the remaining items, all randomly targeted (Guards first when
    present)."""

    name = "random2lanes"
    deterministic = False

    def act(self, view_text: str) -> str:
        view = ParsedView.parse(view_text)
        rng = self.rng
        if view.phase == PH_DRAFT:
            return f"PICK {rng.below(3)}"
        if view.phase == PH_CONSTRUCTION:
            numbers = random_deck_numbers(
                [c.number for c in view.cards], rng,
                self.config.deck_size, self.config.max_copies)
            return ";".join(f"CHOOSE {n}" for n in numbers)
        plan = _TurnPlan(view, self.config)
        for c in view.my_hand():
            if c.type == CardType.GREEN_ITEM and c.cost <= plan.mana and plan.own:
                plan.use_green(c, rng.choice(plan.own))
        for own in plan.own:
            guards = plan.guards_in_lane(own.lane)
            if guards:
                plan.attack(own, rng.choice(guards))
            else:
                options = plan.alive_in_lane(own.lane)
                i = rng.below(len(options) + 1)
                plan.attack(own, options[i] if i < len(options) else None)
        for c in view.my_hand():
            if c.type == CardType.CREATURE and c.cost <= plan.mana:
                lanes = plan.open_lanes()
                if lanes:
                    plan.summon(c, rng.choice(lanes))
        for c in view.my_hand():
            if c.cost > plan.mana:
                continue
            if c.type == CardType.RED_ITEM:
                targets = plan.alive_targets()
                if targets:
                    t = rng.choice(targets)
                    plan.use(c, t.iid, tracker=t)
            elif c.type == CardType.BLUE_ITEM:
                targets = plan.alive_targets()
                i = rng.below(len(targets) + 1)
                if i < len(targets):
                    plan.use(c, targets[i].iid, tracker=targets[i])
                else:
                    plan.use(c, FACE)
        return plan.line()


# ---------------------------------------------------------------------------
# Simulation-backed agents
# ---------------------------------------------------------------------------

_DUMMY_CARD = Card(number=0, name="", type=0, cost=0, attack=0, defense=1,
                   keywords=0, my_health=0, opp_health=0, draw=0, area=0)


def state_from_view(view: ParsedView, config: RulesetConfig) -> GameState:
    """Rebuild a playable state from one player's view.

    The viewer becomes player 0 and is active. Hidden information is
    stubbed: the opponent's hand holds placeholder cards and both decks are
    empty, which is sound for simulating the viewer's own actions (their
    legality and effects depend only on visible state)."""
    state = GameState(config)
    state.phase = PH_BATTLE
    state.turn = 1
    state.active = 0
    me, opp = state.players
    me.health, me.mana = view.me[0], view.me[1]
    me.max_mana = min(config.max_mana, max(view.me[1], 1))
    opp.health, opp.mana = view.opp[0], view.opp[1]
    opp.max_mana = min(config.max_mana, max(view.opp[1], 1))
    if config.uses_runes():
        me.runes = list(RUNE_THRESHOLDS[len(RUNE_THRESHOLDS) - min(view.me[3], 5):])
        opp.runes = list(RUNE_THRESHOLDS[len(RUNE_THRESHOLDS) - min(view.opp[3], 5):])
    else:
        me.runes = []
        opp.runes = []
    max_iid = 0
    for vc in view.cards:
        if vc.iid > max_iid:
            max_iid = vc.iid
        if vc.loc == 0:
            me.hand.append((vc.iid, vc.as_card()))
        else:
            owner = 0 if vc.loc == 1 else 1
            creature = BoardCreature(vc.iid, vc.as_card(), vc.lane)
            creature.summoned_this_turn = False
            state.boards[owner][vc.lane].append(creature)
    for k in range(view.opp_hand):
        opp.hand.append((-1 - k, _DUMMY_CARD))
    state.next_iid = max_iid + 1
    return state


def _addressable(actions, base_iid: int):
    """Drop actions that reference creatures first created inside the
    simulation (1.5 area-summon copies): their real instance ids are
    assigned by the referee and cannot be known from the view."""
    out = []
    for a in actions:
        if a[0] == A_ATTACK and a[1] >= base_iid:
            continue
        if a[0] == A_USE and a[2] != FACE and a[2] >= base_iid:
            continue
        out.append(a)
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def card_value(card) -> float:
    """Stat-per-cost heuristic shared by the draft/construction pickers."""
    power = abs(card.attack) + abs(card.defense)
    bonus = (1.5 * _popcount(card.keywords) + 2.0 * card.draw
             + 0.4 * card.my_health - 0.4 * card.opp_health)
    return (power + bonus) / (card.cost + 1)


def evaluate_state(state: GameState, me: int) -> float:
    """Fixed linear evaluation: health difference, board presence and
    stats, and hand-size advantage. The constants are committed, not tuned."""
    opp = 1 - me
    if state.winner is not None:
        if state.winner == me:
            return 1e9
        if state.winner == opp:
            return -1e9
        return 0.0
    mep = state.players[me]
    op = state.players[opp]
    score = float(mep.health - op.health)
    for lane in state.boards[me]:
        for c in lane:
            score += c.attack + c.defense + 2.0
    for lane in state.boards[opp]:
        for c in lane:
            score -= c.attack + c.defense + 2.0
    score += 0.5 * (len(mep.hand) - len(op.hand))
    return score


class Greedy(Agent):
    """One-step lookahead through the forward model, with lethal detection;
    the strength-ordering reference for tests."""

    name = "greedy"

    def act(self, view_text: str) -> str:
        view = ParsedView.parse(view_text)
        if view.phase == PH_DRAFT:
            values = [card_value(c) for c in view.cards]
            return f"PICK {values.index(max(values))}"
        if view.phase == PH_CONSTRUCTION:
            ranked = sorted(view.cards, key=card_value, reverse=True)
            picks = []
            for c in ranked:
                picks.extend([c.number] * self.config.max_copies)
                if len(picks) >= self.config.deck_size:
                    break
            return ";".join(
                f"CHOOSE {n}" for n in picks[: self.config.deck_size])
        state = state_from_view(view, self.config)
        base_iid = state.next_iid
        out = []
        while True:
            action = self._best_action(state, base_iid)
            if action[0] == A_PASS:
                break
            code, _ = engine.apply_action(state, action, engine.LENIENT, None)
            if code != engine.APPLIED:
                break
            out.append(render_action(action, self.config.version))
            if state.phase != PH_BATTLE:
                break
        return ";".join(out) if out else "PASS"

    def _lethal_attack(self, state: GameState, base_iid: int):
        """First face attack of a killing sequence, if the ready unblocked
        attack total already covers the opponent's health."""
        me = state.active
        opp = 1 - me
        total = 0
        first = None
        for li, lane in enumerate(state.boards[me]):
            blocked = any(c.keywords & KW_GUARD for c in state.boards[opp][li])
            if blocked:
                continue
            for c in lane:
                if c.iid < base_iid and c.can_attack and c.attack > 0:
                    total += c.attack
                    if first is None:
                        first = (A_ATTACK, c.iid, FACE)
        if first is not None and total >= state.players[opp].health:
            return first
        return None

    def _best_action(self, state: GameState, base_iid: int):
        lethal = self._lethal_attack(state, base_iid)
        if lethal is not None:
            return lethal
        me = state.active
        candidates = _addressable(engine.legal_actions(state), base_iid)
        best = (A_PASS, 0, 0)
        best_score = evaluate_state(state, me)
        for action in candidates:
            if action[0] == A_PASS:
                continue
            sim = state.clone()
            engine.apply_action(sim, action, engine.LENIENT, None)
            score = evaluate_state(sim, me)
            if score > best_score:
                best_score = score
                best = action
        return best


class PureRandom(Agent):
    """Uniform over the legal actions (including Pass) until Pass comes up."""

    name = "random"
    deterministic = False

    def act(self, view_text: str) -> str:
        view = ParsedView.parse(view_text)
        rng = self.rng
        if view.phase == PH_DRAFT:
            return f"PICK {rng.below(3)}"
        if view.phase == PH_CONSTRUCTION:
            numbers = random_deck_numbers(
                [c.number for c in view.cards], rng,
                self.config.deck_size, self.config.max_copies)
            return ";".join(f"CHOOSE {n}" for n in numbers)
        state = state_from_view(view, self.config)
        base_iid = state.next_iid
        out = []
        while True:
            actions = _addressable(engine.legal_actions(state), base_iid)
            action = actions[rng.below(len(actions))]
            if action[0] == A_PASS:
                break
            code, _ = engine.apply_action(state, action, engine.LENIENT, None)
            if code != engine.APPLIED:
                break
            out.append(render_action(action, self.config.version))
            if state.phase != PH_BATTLE:
                break
        return ";".join(out) if out else "PASS"


BUILTIN_AGENTS = {
    cls.name: cls
    for cls in (BaselineOne, BaselineTwo, RandomWithItems, Greedy, PureRandom)
}


def make_agent(name: str) -> Agent:
    try:
        return BUILTIN_AGENTS[name]()
    except KeyError:
        raise KeyError(
            f"unknown built-in agent {name!r}; have "
            + ", ".join(sorted(BUILTIN_AGENTS)))


# ---------------------------------------------------------------------------
# Standalone executable mode
# ---------------------------------------------------------------------------

def read_turn_block(stream) -> str | None:
    """Read one full turn input from a line stream; None on EOF."""
    first = stream.readline()
    if not first:
        return None
    lines = [first, stream.readline(), stream.readline()]
    _, opp_action_count = (int(x) for x in lines[2].split())
    for _ in range(opp_action_count):
        lines.append(stream.readline())
    count_line = stream.readline()
    lines.append(count_line)
    for _ in range(int(count_line)):
        lines.append(stream.readline())
    return "".join(lines)


def run_stdio(agent: Agent) -> int:
    """Serve one match over stdin/stdout."""
    while True:
        try:
            block = read_turn_block(sys.stdin)
        except (ValueError, OSError):
            print("PASS", flush=True)
            continue
        if block is None:
            return 0
        try:
            line = agent.act(block)
        except Exception as exc:  # never crash mid-match
            print(f"agent error: {exc}", file=sys.stderr, flush=True)
            line = "PASS"
        print(line, flush=True)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="locm.agents",
        description="run a built-in agent over stdin/stdout")
    parser.add_argument("name", choices=sorted(BUILTIN_AGENTS))
    parser.add_argument("--version", default="1.2", choices=["1.0", "1.2", "1.5"])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--seat", type=int, default=0)
    args = parser.parse_args(argv)
    agent = make_agent(args.name)
    agent.reset(RulesetConfig.for_version(args.version), args.seat, args.seed)
    return run_stdio(agent)


if __name__ == "__main__":
    raise SystemExit(main())
