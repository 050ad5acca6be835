"""Operator command line: single matches, tournaments, card generation,
replay verification, and throughput benchmarks.

Exit codes: 0 success, 1 verified divergence, 2 usage error, 3
infrastructure error. Values from ``--config FILE`` (JSON, keys matching the
long flag names) fill in any flag the user did not pass explicitly. The
``LOCM_LOG_DIR`` environment variable overrides the agent stderr log root.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields as dataclass_fields

from .bench import run_bench
from .cards import (CardSetError, GeneratorParams, generate_pool,
                    save_card_set)
from .match import MatchInfraError, MatchSpec, run_match
from .model import RulesetConfig
from .replay import dump_protocol, load_transcript, verify_transcript
from .rng import subseed
from .tournament import (aggregate, build_schedule, export, format_table,
                         run_schedule)

EXIT_OK = 0
EXIT_DIVERGENCE = 1
EXIT_USAGE = 2
EXIT_INFRA = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE",
                        help="JSON file of default option values")
    parser.add_argument("--version", dest="game_version", default=None,
                        choices=["1.0", "1.2", "1.5"],
                        help="ruleset version (default 1.2)")
    parser.add_argument("--policy", default=None,
                        choices=["lenient", "strict"],
                        help="invalid-action policy (default lenient)")
    parser.add_argument("--battle-ms", type=int, default=None,
                        help="battle turn budget in ms (default 200)")
    parser.add_argument("--construction-ms", type=int, default=None,
                        help="construction turn budget in ms (default 4000)")
    parser.add_argument("--mem-soft-mb", type=int, default=None,
                        help="soft memory limit in MB (default 256)")
    parser.add_argument("--mem-hard-mb", type=int, default=None,
                        help="hard memory limit in MB (default 1024)")
    parser.add_argument("--card-set", default=None, metavar="FILE",
                        help="card set file for 1.0/1.2 (default: packaged)")


def _fill_from_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    with open(args.config, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for key, value in data.items():
        attr = key.replace("-", "_")
        if attr == "version":
            attr = "game_version"
        if hasattr(args, attr) and getattr(args, attr) in (None, []):
            setattr(args, attr, value)


def _build_config(args: argparse.Namespace) -> RulesetConfig:
    overrides = {}
    if args.policy:
        overrides["policy"] = args.policy
    if args.battle_ms is not None:
        overrides["battle_turn_ms"] = args.battle_ms
    if args.construction_ms is not None:
        overrides["construction_ms"] = args.construction_ms
    if args.mem_soft_mb is not None:
        overrides["mem_soft_bytes"] = args.mem_soft_mb * 1024 * 1024
    if args.mem_hard_mb is not None:
        overrides["mem_hard_bytes"] = args.mem_hard_mb * 1024 * 1024
    return RulesetConfig.for_version(args.game_version or "1.2", **overrides)


def _load_params(path: str | None) -> GeneratorParams | None:
    if path is None:
        return None
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    known = {f.name for f in dataclass_fields(GeneratorParams)}
    unknown = set(raw) - known
    if unknown:
        raise SystemExit(f"unknown generator params: {sorted(unknown)}")
    for key in ("type_weights", "cost_weights", "area_weights"):
        if key in raw:
            raw[key] = tuple(raw[key])
    return GeneratorParams(**raw)


def cmd_run_match(args: argparse.Namespace) -> int:
    _fill_from_config(args)
    config = _build_config(args)
    if args.seed is None:
        args.seed = 0
        print("note: no --seed given, using deterministic default 0")
    spec = MatchSpec(
        agent_a=args.p1, agent_b=args.p2, seed=args.seed,
        orientation="AFirst", config=config,
        card_set_path=args.card_set,
        generator_params=_load_params(args.params))
    result = run_match(spec, record=not args.no_transcript)
    for note in result.notes:
        print(f"note: {note}", file=sys.stderr)
    print(f"winner={result.winner} reason={result.reason} "
          f"turns={result.turns} p1={args.p1} p2={args.p2} "
          f"seed={args.seed}")
    if result.transcript is not None:
        out = args.transcript_out or f"{spec.match_id()}.transcript.json"
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(result.transcript, fh, separators=(",", ":"),
                      sort_keys=True)
        print(f"transcript written to {out}")
    return EXIT_OK


def cmd_tournament(args: argparse.Namespace) -> int:
    _fill_from_config(args)
    if len(args.agent) < 2:
        print("error: need at least two --agent entries", file=sys.stderr)
        return EXIT_USAGE
    config = _build_config(args)
    specs = build_schedule(
        args.agent, seeds=args.seeds, repeats=args.repeats, config=config,
        master_seed=args.master_seed, card_set_path=args.card_set,
        generator_params=_load_params(args.params))
    print(f"running {len(specs)} matches with {args.workers} worker(s)")
    results = run_schedule(specs, workers=args.workers,
                           record=not args.no_transcripts)
    spawn_notes = sorted({n for r in results for n in r.notes})
    for note in spawn_notes:
        print(f"agent failure: {note}", file=sys.stderr)
    table = aggregate(results, ordering=args.ordering)
    paths = export(results, table, args.out, compress=args.compress,
                   transcripts=not args.no_transcripts)
    print(format_table(table))
    print(f"raw results: {paths['raw']}")
    print(f"summary: {paths['summary']}")
    return EXIT_OK


def cmd_gen_cards(args: argparse.Namespace) -> int:
    _fill_from_config(args)
    params = _load_params(args.params) or GeneratorParams()
    if args.count != params.pool_size:
        params = GeneratorParams(**{
            **{f.name: getattr(params, f.name)
               for f in dataclass_fields(GeneratorParams)},
            "pool_size": args.count})
    pool = generate_pool(params, subseed(args.seed, "pool"))
    save_card_set(pool, args.output)
    print(f"wrote {len(pool.cards)} cards to {args.output}")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    transcript = load_transcript(args.transcript)
    if args.dump_protocol:
        sys.stdout.write(dump_protocol(transcript))
    report = verify_transcript(transcript)
    if report.ok:
        print("verified: re-simulation matches the transcript")
        return EXIT_OK
    print(f"divergence: {report.divergence}")
    return EXIT_DIVERGENCE


def cmd_bench(args: argparse.Namespace) -> int:
    _fill_from_config(args)
    version = args.game_version or "1.2"
    result = run_bench(version=version, seconds=args.seconds, seed=args.seed)
    print(f"version {version}: {result.games} games in "
          f"{result.elapsed_s:.2f}s = {result.games_per_sec:.1f} games/sec, "
          f"{result.actions_per_sec:.0f} actions/sec "
          f"({result.turns} turns total)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locm",
        description="deterministic card game referee, agents and tournaments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-match", help="play one match")
    _add_common(p)
    p.add_argument("--p1", required=True, help="first agent (built-in name or command)")
    p.add_argument("--p2", required=True, help="second agent")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--params", default=None, metavar="FILE",
                   help="generator params JSON (1.5)")
    p.add_argument("--transcript-out", default=None, metavar="FILE")
    p.add_argument("--no-transcript", action="store_true")
    p.set_defaults(func=cmd_run_match)

    p = sub.add_parser("tournament", help="run a round-robin evaluation")
    _add_common(p)
    p.add_argument("--agent", action="append", default=[],
                   help="agent entry; repeat for each participant")
    p.add_argument("--seeds", type=int, required=True,
                   help="number of shared match seeds")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--ordering", choices=["concatenated", "interleaved"],
                   default="concatenated")
    p.add_argument("--out", default="tournament-out")
    p.add_argument("--compress", action="store_true",
                   help="gzip the raw results")
    p.add_argument("--no-transcripts", action="store_true")
    p.add_argument("--params", default=None, metavar="FILE")
    p.set_defaults(func=cmd_tournament)

    p = sub.add_parser("gen-cards", help="generate a card pool file")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=120)
    p.add_argument("--params", default=None, metavar="FILE")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen_cards)

    p = sub.add_parser("replay", help="verify a transcript by re-simulation")
    p.add_argument("transcript")
    p.add_argument("--dump-protocol", action="store_true",
                   help="print the exact per-turn agent inputs")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("bench", help="measure forward-model throughput")
    _add_common(p)
    p.add_argument("--seconds", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CardSetError as exc:
        print(f"card set error: {exc}", file=sys.stderr)
        return EXIT_INFRA
    except MatchInfraError as exc:
        print(f"infrastructure error: {exc}", file=sys.stderr)
        return EXIT_INFRA
    except FileNotFoundError as exc:
        print(f"missing file: {exc}", file=sys.stderr)
        return EXIT_INFRA


if __name__ == "__main__":
    raise SystemExit(main())
