#!/usr/bin/env python3
"""A minimal external agent for the card-game referee's text protocol.

Reads one turn input block from standard input, writes one action line, and
repeats until the stream closes. Pure standard library, single file: it is a
protocol conformance fixture first and an agent second.

Strategy: draft and construction pick by highest stat-per-cost; battle turns
summon every affordable creature and attack the opponent's face unless a
Guard creature blocks the lane. Malformed input never crashes the process;
it answers PASS and complains on standard error.
"""

import sys
from dataclasses import dataclass

CREATURE = 0
LOC_HAND = 0
LOC_MINE = 1
LOC_ENEMY = -1


@dataclass
class CardLine:
    number: int
    instance_id: int
    location: int
    card_type: int
    cost: int
    attack: int
    defense: int
    abilities: str            # BCDGLW mask with '-' gaps
    my_health: int
    opp_health: int
    draw: int
    area: int
    lane: int

    @staticmethod
    def parse(fields):
        has_area = len(fields) == 13
        return CardLine(
            number=int(fields[0]),
            instance_id=int(fields[1]),
            location=int(fields[2]),
            card_type=int(fields[3]),
            cost=int(fields[4]),
            attack=int(fields[5]),
            defense=int(fields[6]),
            abilities=fields[7],
            my_health=int(fields[8]),
            opp_health=int(fields[9]),
            draw=int(fields[10]),
            area=int(fields[11]) if has_area else 0,
            lane=int(fields[-1]),
        )

    def has(self, letter):
        return letter in self.abilities


@dataclass
class ParsedView:
    my_health: int
    my_mana: int
    my_deck: int
    my_extra: int
    opp_health: int
    opp_mana: int
    opp_deck: int
    opp_extra: int
    opp_hand: int
    opp_actions: list
    cards: list

    @property
    def phase(self):
        if self.my_mana == 0 and self.cards and all(
                c.location == LOC_HAND for c in self.cards):
            return "construction" if len(self.cards) > 3 else "draft"
        return "battle"

    def hand(self):
        return [c for c in self.cards if c.location == LOC_HAND]

    def my_board(self):
        return [c for c in self.cards if c.location == LOC_MINE]

    def enemy_board(self):
        return [c for c in self.cards if c.location == LOC_ENEMY]


def read_block(stream):
    """One turn input as a list of lines; None once the stream closes."""
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
    return lines


def parse_view(lines):
    me = [int(x) for x in lines[0].split()]
    opp = [int(x) for x in lines[1].split()]
    opp_hand, opp_action_count = (int(x) for x in lines[2].split())
    body = 3 + opp_action_count
    opp_actions = [line.strip() for line in lines[3:body]]
    count = int(lines[body])
    cards = [CardLine.parse(lines[body + 1 + i].split()) for i in range(count)]
    return ParsedView(me[0], me[1], me[2], me[3],
                      opp[0], opp[1], opp[2], opp[3],
                      opp_hand, opp_actions, cards)


def stat_per_cost(card):
    return (abs(card.attack) + abs(card.defense)) / (card.cost + 1.0)


def draft_reply(view):
    best = max(range(len(view.cards)),
               key=lambda i: (stat_per_cost(view.cards[i]), -i))
    return f"PICK {best}"


def construction_reply(view):
    ranked = sorted(view.cards, key=stat_per_cost, reverse=True)
    picks = [c.number for c in ranked[:30]]
    return ";".join(f"CHOOSE {n}" for n in picks)


class GuardTracker:
    """Just enough combat bookkeeping to keep every attack legal: a ward
    soaks one positive hit, and a lethal attacker kills through any damage."""

    def __init__(self, card):
        self.instance_id = card.instance_id
        self.defense = card.defense
        self.ward = card.has("W")
        self.alive = True

    def hit(self, attack, lethal):
        if attack <= 0:
            return
        if self.ward:
            self.ward = False
            return
        self.defense -= attack
        if self.defense <= 0 or lethal:
            self.alive = False


def battle_reply(view, lanes=2, lane_size=3):
    actions = []
    mana = view.my_mana
    lane_counts = [0] * lanes
    for c in view.my_board():
        if 0 <= c.lane < lanes:
            lane_counts[c.lane] += 1

    for card in view.hand():
        if card.card_type != CREATURE or card.cost > mana:
            continue
        open_lanes = [i for i in range(lanes) if lane_counts[i] < lane_size]
        if not open_lanes:
            continue
        lane = min(open_lanes, key=lambda i: (lane_counts[i], i))
        mana -= card.cost
        lane_counts[lane] += 1
        # area values 1/2 summon a copy beside or across when space remains
        if card.area == 1 and lane_counts[lane] < lane_size:
            lane_counts[lane] += 1
        elif card.area == 2 and lanes == 2 and lane_counts[1 - lane] < lane_size:
            lane_counts[1 - lane] += 1
        actions.append(f"SUMMON {card.instance_id} {lane}")

    guards = {}
    for c in view.enemy_board():
        if c.has("G"):
            guards.setdefault(c.lane, []).append(GuardTracker(c))
    for mine in view.my_board():
        lane_guards = [g for g in guards.get(mine.lane, ()) if g.alive]
        if lane_guards:
            target = lane_guards[0]
            target.hit(mine.attack, mine.has("L"))
            actions.append(f"ATTACK {mine.instance_id} {target.instance_id}")
        else:
            actions.append(f"ATTACK {mine.instance_id} -1")

    return ";".join(actions) if actions else "PASS"


def decide(lines):
    view = parse_view(lines)
    phase = view.phase
    if phase == "draft":
        return draft_reply(view)
    if phase == "construction":
        return construction_reply(view)
    return battle_reply(view)


def main():
    while True:
        try:
            lines = read_block(sys.stdin)
        except (ValueError, OSError) as exc:
            print(f"unreadable turn input: {exc}", file=sys.stderr, flush=True)
            print("PASS", flush=True)
            continue
        if lines is None:
            return 0
        try:
            reply = decide(lines)
        except Exception as exc:
            print(f"turn handling failed: {exc}", file=sys.stderr, flush=True)
            reply = "PASS"
        print(reply, flush=True)


if __name__ == "__main__":
    sys.exit(main())
