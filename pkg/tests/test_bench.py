"""Benchmark behavior: honest measurement windows and run-to-run stability."""

from locm.bench import play_random_game, run_bench
from locm.cards import default_card_set
from locm.model import RulesetConfig


def test_bench_measures_at_least_requested_window():
    result = run_bench("1.2", seconds=0.5, seed=1)
    assert result.elapsed_s >= 0.5
    assert result.games > 0
    assert result.actions > 0


def test_bench_reports_all_versions():
    for version in ("1.0", "1.2", "1.5"):
        result = run_bench(version, seconds=0.2, seed=2)
        assert result.games > 0, version


def test_random_game_is_deterministic():
    config = RulesetConfig.for_version("1.2")
    cs = default_card_set()
    assert (play_random_game(config, cs, None, 77)
            == play_random_game(config, cs, None, 77))


def test_consecutive_runs_within_twenty_percent():
    a = run_bench("1.2", seconds=1.0, seed=5)
    b = run_bench("1.2", seconds=1.0, seed=5)
    ratio = b.games_per_sec / a.games_per_sec
    assert 0.8 <= ratio <= 1.25, ratio
