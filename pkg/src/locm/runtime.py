"""External agent processes: spawning, per-move budgets, memory policing.

An :class:`AgentHandle` owns one child process. A reader thread drains the
child's stdout into a queue so writing input and reading output never
deadlock; a watchdog thread samples resident memory every 50 ms and kills
the child at the hard limit. Enforcement is best-effort sampling rather than
kernel limits, which keeps it portable.

Timeouts are wall-clock, measured from the moment the final input byte is
flushed until a full output line arrives.
"""

from __future__ import annotations

import queue
import shlex
import subprocess
import threading
import time
from dataclasses import dataclass

try:
    import psutil
except ImportError:  # pragma: no cover - psutil is a declared dependency
    psutil = None

MEM_SAMPLE_INTERVAL = 0.05

# handle statuses
RUNNING = "Running"
EXITED = "Exited"
CRASHED = "Crashed"
TIMED_OUT = "TimedOut"
DISQUALIFIED = "Disqualified"

# request_move outcomes
MOVE_OK = "ok"
MOVE_TIMEOUT = "timeout"
MOVE_CRASH = "crash"
MOVE_DISQUALIFIED = "disqualified"

_EOF = object()


@dataclass(frozen=True)
class Budget:
    """Per-move time budgets and the memory policy."""

    per_turn_ms: int = 200
    first_turn_ms: int = 200
    mem_soft_bytes: int = 256 * 1024 * 1024
    mem_hard_bytes: int = 1024 * 1024 * 1024

    def __post_init__(self):
        if self.first_turn_ms < self.per_turn_ms:
            raise ValueError("first_turn_ms must be >= per_turn_ms")
        if self.mem_hard_bytes <= self.mem_soft_bytes:
            raise ValueError("mem_hard_bytes must exceed mem_soft_bytes")


class SpawnError(Exception):
    pass


class AgentHandle:
    """One live agent process plus its I/O machinery."""

    def __init__(self, command: str | list[str], proc: subprocess.Popen,
                 stderr_file):
        self.command = command
        self.proc = proc
        self.pid = proc.pid
        self._stderr_file = stderr_file
        self._lines: queue.Queue = queue.Queue()
        self._lock = threading.Lock()
        self.status = RUNNING
        self.mem_peak = 0
        self.soft_exceeded = False
        self.warnings: list[str] = []
        self._watchdog_stop = threading.Event()
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()
        self._watchdog: threading.Thread | None = None

    def _read_loop(self) -> None:
        try:
            for line in self.proc.stdout:
                self._lines.put(line)
        except (ValueError, OSError):
            pass
        self._lines.put(_EOF)

    def start_watchdog(self, budget: Budget) -> None:
        self._watchdog = threading.Thread(
            target=self._watch_memory, args=(budget,), daemon=True)
        self._watchdog.start()

    def _watch_memory(self, budget: Budget) -> None:
        if psutil is None:
            self.warnings.append("psutil unavailable; memory not sampled")
            return
        try:
            proc = psutil.Process(self.pid)
        except Exception:
            return
        while not self._watchdog_stop.wait(MEM_SAMPLE_INTERVAL):
            verdict = self._sample_once(proc, budget)
            if verdict == DISQUALIFIED:
                return

    def _sample_once(self, proc, budget: Budget) -> str | None:
        try:
            rss = proc.memory_info().rss
        except Exception as exc:
            if not self.warnings:
                self.warnings.append(f"memory sampling failed: {exc}")
            return None
        if rss > self.mem_peak:
            self.mem_peak = rss
        if rss >= budget.mem_hard_bytes:
            with self._lock:
                if self.status == RUNNING:
                    self.status = DISQUALIFIED
            self._kill_process()
            return DISQUALIFIED
        if rss >= budget.mem_soft_bytes and not self.soft_exceeded:
            self.soft_exceeded = True
            self.warnings.append(
                f"soft memory limit exceeded: rss {rss} >= {budget.mem_soft_bytes}")
        return None

    def check_memory(self, budget: Budget) -> str:
        """One on-demand sample: 'ok', 'soft' or Disqualified. Sampling
        failures count as ok with a warning recorded."""
        if self.status == DISQUALIFIED:
            return DISQUALIFIED
        if psutil is None:
            if not self.warnings:
                self.warnings.append("psutil unavailable; memory not sampled")
            return "ok"
        try:
            proc = psutil.Process(self.pid)
        except Exception as exc:
            self.warnings.append(f"memory sampling failed: {exc}")
            return "ok"
        verdict = self._sample_once(proc, budget)
        if verdict == DISQUALIFIED:
            return DISQUALIFIED
        return "soft" if self.soft_exceeded else "ok"

    def request_move(self, input_text: str, budget_ms: int) -> tuple[str | None, str]:
        """Send one turn input and wait for one output line.

        Returns (line, MOVE_OK) or (None, MOVE_TIMEOUT / MOVE_CRASH /
        MOVE_DISQUALIFIED). Any non-ok outcome is terminal for the handle.
        """
        with self._lock:
            if self.status == DISQUALIFIED:
                return None, MOVE_DISQUALIFIED
            if self.status != RUNNING:
                return None, MOVE_CRASH
        try:
            self.proc.stdin.write(input_text)
            self.proc.stdin.flush()
        except (BrokenPipeError, OSError, ValueError):
            return None, self._note_dead()
        deadline = time.monotonic() + budget_ms / 1000.0
        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                with self._lock:
                    if self.status == RUNNING:
                        self.status = TIMED_OUT
                self._kill_process()
                return None, MOVE_TIMEOUT
            try:
                line = self._lines.get(timeout=remaining)
            except queue.Empty:
                continue
            if line is _EOF:
                return None, self._note_dead()
            return line.rstrip("\r\n"), MOVE_OK

    def _note_dead(self) -> str:
        with self._lock:
            if self.status == DISQUALIFIED:
                return MOVE_DISQUALIFIED
            if self.status == RUNNING:
                self.status = CRASHED
        return MOVE_CRASH

    def _kill_process(self) -> None:
        try:
            self.proc.kill()
        except OSError:
            pass

    def close(self) -> None:
        """Terminate the child and reap every resource."""
        self._watchdog_stop.set()
        self._kill_process()
        try:
            self.proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            pass
        with self._lock:
            if self.status == RUNNING:
                self.status = EXITED
        for stream in (self.proc.stdin, self.proc.stdout):
            try:
                if stream:
                    stream.close()
            except OSError:
                pass
        if self._stderr_file is not None:
            try:
                self._stderr_file.close()
            except OSError:
                pass
        if self._watchdog is not None:
            self._watchdog.join(timeout=1)
        self._reader.join(timeout=1)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def spawn_agent(command: str | list[str], stderr_path: str | None = None,
                budget: Budget | None = None) -> AgentHandle:
    """Launch an agent with piped stdio; stderr goes to a per-agent log."""
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    if not argv:
        raise SpawnError("empty agent command")
    stderr_file = None
    if stderr_path is not None:
        stderr_file = open(stderr_path, "w", encoding="utf-8", errors="replace")
    try:
        proc = subprocess.Popen(
            argv,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=stderr_file if stderr_file is not None else subprocess.DEVNULL,
            text=True,
            bufsize=1,
        )
    except (OSError, ValueError) as exc:
        if stderr_file is not None:
            stderr_file.close()
        raise SpawnError(f"cannot spawn {argv[0]!r}: {exc}") from exc
    handle = AgentHandle(command, proc, stderr_file)
    if budget is not None:
        handle.start_watchdog(budget)
    return handle
