#!/usr/bin/env python3
"""Regenerate the packaged 1.0/1.2 card set (src/locm/data/cardset_v12.txt).

The set is a fixed asset: draft determinism across installations depends on
this file, so only regenerate it deliberately.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from locm.cards import GeneratorParams, generate_pool, save_card_set

SEED = 0xC0DE_CA2D
OUT = os.path.join(os.path.dirname(__file__), "..", "src", "locm", "data",
                   "cardset_v12.txt")


def main() -> None:
    params = GeneratorParams(pool_size=160, with_area=False)
    pool = generate_pool(params, SEED)
    pool = type(pool)(name="default-v12", version=pool.version,
                      cards=pool.cards)
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    save_card_set(pool, OUT)
    creatures = sum(1 for c in pool.cards if c.type == 0)
    print(f"wrote {len(pool.cards)} cards ({creatures} creatures) to {OUT}")


if __name__ == "__main__":
    main()
