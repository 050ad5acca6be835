"""Round-robin evaluation the way the competitions ran: shared seeds across
all pairings, repeated games on each seed, and a mirrored game for every
orientation, with deterministic aggregation and persisted raw data.

Running a schedule with one worker or many produces identical results: match
outcomes depend only on their spec, and results are re-sorted into schedule
order before anything downstream sees them.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .cards import GeneratorParams
from .match import MatchResult, MatchSpec, run_match
from .model import RulesetConfig
from .rng import subseed

INTERLEAVED = "interleaved"
CONCATENATED = "concatenated"


def build_schedule(agents: list[str], seeds: int, repeats: int,
                   config: RulesetConfig, master_seed: int = 0,
                   card_set_path: str | None = None,
                   generator_params: GeneratorParams | None = None,
                   ) -> list[MatchSpec]:
    """Every unordered agent pair x seed x repeat x both orientations.

    The actual 64-bit match seeds derive from the master seed and the seed
    index only, so every pairing plays on the same decks.
    """
    if len(agents) < 2:
        raise ValueError("a schedule needs at least two agents")
    if len(set(agents)) != len(agents):
        raise ValueError("agent names must be unique")
    schedule_id = _schedule_id(agents, seeds, repeats, config, master_seed)
    specs: list[MatchSpec] = []
    for a, b in combinations(agents, 2):
        for seed_index in range(seeds):
            seed = subseed(master_seed, "match-seed", seed_index)
            for repeat in range(repeats):
                for orientation in ("AFirst", "BFirst"):
                    specs.append(MatchSpec(
                        agent_a=a, agent_b=b, seed=seed, repeat=repeat,
                        orientation=orientation, config=config,
                        card_set_path=card_set_path,
                        generator_params=generator_params,
                        schedule_id=schedule_id))
    return specs


def _schedule_id(agents, seeds, repeats, config, master_seed) -> str:
    payload = json.dumps(
        [sorted(agents), seeds, repeats, config.version.value, master_seed],
        separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def _run_one(args) -> MatchResult:
    spec, record, log_root = args
    return run_match(spec, record=record, log_root=log_root)


def run_schedule(specs: list[MatchSpec], workers: int = 1,
                 record: bool = True, log_root: str | None = None,
                 ) -> list[MatchResult]:
    """Execute a schedule; the result list is always in schedule order."""
    jobs = [(spec, record, log_root) for spec in specs]
    if workers <= 1:
        return [_run_one(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs, chunksize=1))


@dataclass
class AgentRecord:
    name: str
    wins: int = 0
    losses: int = 0
    draws: int = 0

    @property
    def decided(self) -> int:
        return self.wins + self.losses

    @property
    def win_rate(self) -> float:
        """Percent of decided games won; 0.0 when nothing was decided."""
        if self.decided == 0:
            return 0.0
        return 100.0 * self.wins / self.decided


@dataclass
class WinRateTable:
    agents: dict[str, AgentRecord]
    pairwise: dict[tuple[str, str], int]   # (winner, loser) -> win count
    games: int
    ordered_results: list[MatchResult] = field(default_factory=list)

    def ranking(self) -> list[AgentRecord]:
        return sorted(self.agents.values(),
                      key=lambda r: (-r.win_rate, -r.wins, r.name))

    def rows(self) -> list[tuple[str, int, int, int, str]]:
        return [(r.name, r.wins, r.losses, r.draws, f"{r.win_rate:.2f}")
                for r in self.ranking()]


def interleave_results(results: list[MatchResult]) -> list[MatchResult]:
    """Round-robin across pairings, mimicking interleaved collection from
    parallel runners, so any truncated prefix samples every pairing evenly."""
    groups: dict[tuple[str, str], list[MatchResult]] = {}
    order: list[tuple[str, str]] = []
    for r in results:
        key = (r.spec.agent_a, r.spec.agent_b)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(r)
    out: list[MatchResult] = []
    cursor = 0
    while len(out) < len(results):
        for key in order:
            bucket = groups[key]
            if cursor < len(bucket):
                out.append(bucket[cursor])
        cursor += 1
    return out


def aggregate(results: list[MatchResult],
              ordering: str = CONCATENATED) -> WinRateTable:
    """Fold results into per-agent and pairwise win counts.

    Totals are order-independent; the ordering choice only affects the
    ``ordered_results`` stream attached to the table.
    """
    if not results:
        raise ValueError("no results to aggregate")
    schedule_ids = {r.spec.schedule_id for r in results}
    if len(schedule_ids) > 1:
        raise ValueError(
            f"results from different schedules: {sorted(schedule_ids)}")
    agents: dict[str, AgentRecord] = {}
    pairwise: dict[tuple[str, str], int] = {}
    for r in results:
        a, b = r.spec.agent_a, r.spec.agent_b
        for name in (a, b):
            if name not in agents:
                agents[name] = AgentRecord(name)
        if r.winner == "draw":
            agents[a].draws += 1
            agents[b].draws += 1
            continue
        winner, loser = (a, b) if r.winner == "A" else (b, a)
        agents[winner].wins += 1
        agents[loser].losses += 1
        pairwise[(winner, loser)] = pairwise.get((winner, loser), 0) + 1
    ordered = (interleave_results(results) if ordering == INTERLEAVED
               else list(results))
    return WinRateTable(agents=agents, pairwise=pairwise,
                        games=len(results), ordered_results=ordered)


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def raw_record(result: MatchResult) -> dict:
    return {
        "agent_a": result.spec.agent_a,
        "agent_b": result.spec.agent_b,
        "seed": result.spec.seed,
        "repeat": result.spec.repeat,
        "orientation": result.spec.orientation,
        "winner": result.winner,
        "reason": result.reason,
        "turns": result.turns,
        "duration_ms": result.duration_ms,
    }


def export(results: list[MatchResult], table: WinRateTable, out_dir: str,
           compress: bool = False, transcripts: bool = True) -> dict[str, str]:
    """Write raw per-match records, the summary tables, and transcripts.

    Field order is fixed and no timestamps enter the data files, so the
    same inputs always produce byte-identical output.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths: dict[str, str] = {}

    raw_lines = "".join(
        json.dumps(raw_record(r), separators=(",", ":"), sort_keys=True) + "\n"
        for r in table.ordered_results)
    if compress:
        raw_path = os.path.join(out_dir, "raw_results.jsonl.gz")
        # fixed mtime keeps the gzip container deterministic
        with gzip.GzipFile(raw_path, "wb", mtime=0) as fh:
            fh.write(raw_lines.encode("utf-8"))
    else:
        raw_path = os.path.join(out_dir, "raw_results.jsonl")
        with open(raw_path, "w", encoding="utf-8") as fh:
            fh.write(raw_lines)
    paths["raw"] = raw_path

    summary_path = os.path.join(out_dir, "summary.csv")
    with open(summary_path, "w", encoding="utf-8") as fh:
        fh.write("agent,wins,losses,draws,win_rate\n")
        for name, wins, losses, draws, rate in table.rows():
            fh.write(f"{name},{wins},{losses},{draws},{rate}\n")
    paths["summary"] = summary_path

    pairwise_path = os.path.join(out_dir, "pairwise.csv")
    names = sorted(table.agents)
    with open(pairwise_path, "w", encoding="utf-8") as fh:
        fh.write("winner\\loser," + ",".join(names) + "\n")
        for w in names:
            row = [str(table.pairwise.get((w, l), 0)) if l != w else "-"
                   for l in names]
            fh.write(w + "," + ",".join(row) + "\n")
    paths["pairwise"] = pairwise_path

    if transcripts:
        schedule_id = results[0].spec.schedule_id or "adhoc"
        tdir = os.path.join(out_dir, "transcripts", schedule_id)
        for r in results:
            if r.transcript is None:
                continue
            mdir = os.path.join(tdir, r.spec.match_id())
            os.makedirs(mdir, exist_ok=True)
            path = os.path.join(mdir, "transcript.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(r.transcript, fh, separators=(",", ":"),
                          sort_keys=True)
        paths["transcripts"] = tdir
    return paths


def format_table(table: WinRateTable) -> str:
    lines = [f"{'agent':<28} {'wins':>6} {'losses':>7} {'draws':>6} {'win%':>8}"]
    for name, wins, losses, draws, rate in table.rows():
        lines.append(f"{name:<28} {wins:>6} {losses:>7} {draws:>6} {rate:>8}")
    return "\n".join(lines)
