"""
Skeleton-constrained exact search.

Given a skeleton with ``V`` cells, find signs for ``1..V`` and a placement of
the signed values on the skeleton so that every row and column sums to zero.
Found grids therefore have support exactly ``[1, V]``.

The search assigns cells in a static order that completes lines early.  The
last open cell of a line is forced to the negated partial sum; other cells
branch over the unused signed values.  After every assignment both touched
lines are checked against the largest completion the unused values allow.
Negating a solution gives a solution, so value 1 is only ever placed with a
positive sign.

With ``seed=None`` the search is exhaustive in a fixed order and may prove a
task infeasible.  With a seed, value orders are shuffled and the search
restarts with growing node limits.  A timeout is always reported as
``TIMED_OUT``, never as infeasibility.
"""

from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass
from math import gcd

from . import io as gio
from .core import Grid, HeffterError, HeffterParams, IhsParams, InadmissibleError, verify_heffter, verify_ihs


class Status(enum.Enum):
    FOUND = "found"
    INFEASIBLE = "infeasible"
    TIMED_OUT = "timed-out"


@dataclass(frozen=True)
class SolveTask:
    """One search instance.  ``skeleton`` holds 0-based ``(row, col)`` cells."""

    rows: int
    cols: int
    skeleton: frozenset
    seed: int | None = None
    budget_ms: int | None = 60_000
    row_counts: tuple | None = None
    col_counts: tuple | None = None

    def __post_init__(self):
        skel = frozenset((int(i), int(j)) for i, j in self.skeleton)
        object.__setattr__(self, "skeleton", skel)
        if self.rows < 1 or self.cols < 1:
            raise ValueError("task dimensions must be positive")
        if not skel:
            raise ValueError("empty skeleton")
        for i, j in skel:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"skeleton cell {(i, j)} outside {self.rows}x{self.cols}")
        rc, cc = self.line_counts()
        if self.row_counts is not None and tuple(self.row_counts) != rc:
            raise ValueError(f"skeleton row counts {rc} differ from prescribed {tuple(self.row_counts)}")
        if self.col_counts is not None and tuple(self.col_counts) != cc:
            raise ValueError(f"skeleton column counts {cc} differ from prescribed {tuple(self.col_counts)}")

    @property
    def size(self) -> int:
        return len(self.skeleton)

    def line_counts(self) -> tuple[tuple, tuple]:
        rc = [0] * self.rows
        cc = [0] * self.cols
        for i, j in self.skeleton:
            rc[i] += 1
            cc[j] += 1
        return tuple(rc), tuple(cc)

    @classmethod
    def full(cls, rows: int, cols: int, **kw) -> "SolveTask":
        return cls(rows, cols, frozenset((i, j) for i in range(rows) for j in range(cols)), **kw)

    @classmethod
    def block_diagonal(cls, m: int, n: int, c: int, **kw) -> "SolveTask":
        """``c`` full ``m x n`` blocks down the diagonal: the IHS(m,n;c) model."""
        skel = frozenset((b * m + i, b * n + j) for b in range(c) for i in range(m) for j in range(n))
        return cls(c * m, c * n, skel, **kw)


@dataclass
class SolveOutcome:
    status: Status
    grid: Grid | None = None
    nodes: int = 0
    restarts: int = 0
    seconds: float = 0.0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def __str__(self):
        return f"{self.status.value} after {self.nodes} nodes, {self.restarts} restarts, {self.seconds:.2f}s"


class SolverTimeout(HeffterError):
    def __init__(self, message: str, outcome: SolveOutcome):
        super().__init__(message)
        self.outcome = outcome


class _OutOfTime(Exception):
    pass


class _Restart(Exception):
    pass


def cell_order(task: SolveTask) -> list[tuple[int, int]]:
    """Greedy static order: always extend the line closest to completion."""
    left_r, left_c = (list(x) for x in task.line_counts())
    todo = set(task.skeleton)
    order = []
    while todo:
        cell = min(todo, key=lambda x: (min(left_r[x[0]], left_c[x[1]]), left_r[x[0]] + left_c[x[1]], x))
        order.append(cell)
        todo.remove(cell)
        left_r[cell[0]] -= 1
        left_c[cell[1]] -= 1
    return order


class _Search:
    def __init__(self, task: SolveTask, deadline: float | None):
        self.task = task
        self.V = task.size
        self.order = cell_order(task)
        self.deadline = deadline
        self.rng = random.Random(task.seed) if task.seed is not None else None
        self.row_last = {}
        self.col_last = {}
        for pos, (i, j) in enumerate(self.order):
            self.row_last[i] = pos
            self.col_last[j] = pos
        self.nodes = 0
        self.limit = None
        self.reset()

    def reset(self):
        t = self.task
        self.left_r, self.left_c = (list(x) for x in t.line_counts())
        self.rsum = [0] * t.rows
        self.csum = [0] * t.cols
        self.used = [False] * (self.V + 1)
        self.values = [0] * len(self.order)

    def top_sum(self, r: int) -> int:
        used = self.used
        total, x = 0, self.V
        while r and x > 0:
            if not used[x]:
                total += x
                r -= 1
            x -= 1
        return total

    def line_ok(self, partial: int, left: int) -> bool:
        if left == 0:
            return partial == 0
        if left == 1:
            return partial != 0 and abs(partial) <= self.V and not self.used[abs(partial)]
        return abs(partial) <= self.top_sum(left)

    def candidates(self) -> list[int]:
        signed = []
        for x in range(self.V, 0, -1):
            if not self.used[x]:
                signed.append(x)
                if x != 1:
                    signed.append(-x)
        if self.rng is not None:
            self.rng.shuffle(signed)
        return signed

    def run(self, pos: int = 0) -> bool:
        if pos == len(self.order):
            return True
        self.nodes += 1
        if self.nodes & 1023 == 0 and self.deadline is not None and time.perf_counter() > self.deadline:
            raise _OutOfTime
        if self.limit is not None and self.nodes > self.limit:
            raise _Restart
        i, j = self.order[pos]
        if self.row_last[i] == pos:
            options = [-self.rsum[i]]
        elif self.col_last[j] == pos:
            options = [-self.csum[j]]
        else:
            options = self.candidates()
        used, rsum, csum, left_r, left_c = self.used, self.rsum, self.csum, self.left_r, self.left_c
        for val in options:
            a = abs(val)
            if val == 0 or a > self.V or used[a] or val == -1:
                continue
            used[a] = True
            rsum[i] += val
            csum[j] += val
            left_r[i] -= 1
            left_c[j] -= 1
            if self.line_ok(rsum[i], left_r[i]) and self.line_ok(csum[j], left_c[j]):
                self.values[pos] = val
                if self.run(pos + 1):
                    return True
            used[a] = False
            rsum[i] -= val
            csum[j] -= val
            left_r[i] += 1
            left_c[j] += 1
        return False


def solve(task: SolveTask) -> SolveOutcome:
    """Search for a zero-sum filling of ``task.skeleton`` with support ``[1, V]``."""
    start = time.perf_counter()
    V = task.size
    # a signed sum of 1..V vanishes only if V(V+1)/2 is even
    if V % 4 in (1, 2):
        return SolveOutcome(Status.INFEASIBLE, seconds=time.perf_counter() - start)
    rc, cc = task.line_counts()
    if min(rc) == 1 or min(cc) == 1:
        # a line with one filled cell cannot sum to zero
        return SolveOutcome(Status.INFEASIBLE, seconds=time.perf_counter() - start)

    deadline = None if task.budget_ms is None else start + task.budget_ms / 1000
    search = _Search(task, deadline)
    status = Status.INFEASIBLE
    restarts = 0
    cutoff = 2000
    try:
        while True:
            if search.rng is not None:
                search.limit = search.nodes + cutoff
            try:
                # a False return means the whole tree was explored under this order
                status = Status.FOUND if search.run() else Status.INFEASIBLE
                break
            except _Restart:
                restarts += 1
                cutoff = cutoff * 3 // 2
                search.reset()
    except _OutOfTime:
        status = Status.TIMED_OUT

    grid = None
    if status is Status.FOUND:
        grid = Grid.from_cells(task.rows, task.cols, dict(zip(search.order, search.values)))
    return SolveOutcome(status, grid, search.nodes, restarts, time.perf_counter() - start)


# -- base arrays ----------------------------------------------------------------


def diagonal_offsets(N: int) -> set[int]:
    """Residues ``j - i (mod 4N)`` filled in the base H(4N;5)."""
    return {0, 1, 2, 2 * N, 2 * N + 1}


def base_skeleton(N: int) -> frozenset:
    M = 4 * N
    offs = diagonal_offsets(N)
    return frozenset((i, j) for i in range(M) for j in range(M) if (j - i) % M in offs)


def check_base(g: Grid, N: int) -> None:
    if g.shape != (4 * N, 4 * N) or g.skeleton() != base_skeleton(N):
        raise ValueError(f"array is not on the H({4 * N};5) diagonal skeleton")
    report = verify_heffter(g, HeffterParams(4 * N, 4 * N, 5, 5))
    if not report.valid:
        raise ValueError(f"array is not an integer H({4 * N};5):\n{report}")


def base_h4N5(N: int, fixtures_dir=None, seed: int = 0, budget_ms: int | None = 600_000) -> Grid:
    """An integer H(4N;5) whose skeleton is the five diagonals of :func:`diagonal_offsets`.

    Looks in the fixture catalog first and falls back to :func:`solve`.
    """
    if N < 2:
        raise ValueError(f"need N >= 2, got {N}")
    path = gio.find_fixture(gio.base_fixture_name(N), fixtures_dir)
    if path is not None:
        g = gio.read_grid(path)
        check_base(g, N)
        return g
    outcome = solve(SolveTask(4 * N, 4 * N, base_skeleton(N), seed=seed, budget_ms=budget_ms))
    if not outcome.found:
        raise SolverTimeout(f"no H({4 * N};5) found: {outcome}", outcome)
    check_base(outcome.grid, N)
    return outcome.grid


# -- open problem probes ----------------------------------------------------------


def open_problem_failures(m: int, n: int, c: int) -> list[str]:
    """Why ``(m, n, c)`` is outside the two open IHS families (empty if inside)."""
    out = []
    if n not in (3, 5):
        out.append(f"n = {n} is neither 3 nor 5")
        return out
    if c < 1:
        out.append("c must be positive")
    if m < n or m % 2 == 0:
        out.append(f"m = {m} must be odd and at least {n}")
    if gcd(m, n) != 1:
        out.append(f"gcd(m, {n}) = {gcd(m, n)}")
    allowed = (0, 1) if n == 3 else (0, 3)
    if (m * c) % 4 not in allowed:
        out.append(f"mc = {m * c} is {(m * c) % 4} mod 4, need one of {allowed}")
    return out


def open_problem_tuples(n: int, max_m: int, max_c: int) -> list[tuple[int, int, int]]:
    """All ``(m, n, c)`` of the open family for ``n`` with ``m <= max_m`` and ``c <= max_c``."""
    return [
        (m, n, c)
        for m in range(3, max_m + 1)
        for c in range(1, max_c + 1)
        if not open_problem_failures(m, n, c)
    ]


def split_blocks(g: Grid, m: int, n: int, c: int) -> list[Grid]:
    a = g.array
    return [Grid(a[b * m : (b + 1) * m, b * n : (b + 1) * n]) for b in range(c)]


def probe_open(m: int, n: int, c: int, budget_ms: int = 60_000, seed: int = 0, fixtures_dir=None) -> SolveOutcome:
    """Search for an IHS(m,n;c) in the open families with ``n`` in ``{3, 5}``.

    Found sets are written to the fixture catalog when a writable catalog
    directory is configured.
    """
    problems = open_problem_failures(m, n, c)
    if problems:
        raise InadmissibleError(f"({m},{n},{c}) is not an open-problem tuple: " + "; ".join(problems))
    outcome = solve(SolveTask.block_diagonal(m, n, c, seed=seed, budget_ms=budget_ms))
    if outcome.found:
        blocks = split_blocks(outcome.grid, m, n, c)
        report = verify_ihs(blocks, IhsParams(m, n, c))
        assert report.valid, report
        dirs = gio.fixture_dirs(fixtures_dir)
        if len(dirs) > 1:
            dirs[0].mkdir(parents=True, exist_ok=True)
            gio.write_set(blocks, dirs[0] / f"ihs_{m}_{n}_{c}.json", meta={"params": [m, n, c], "route": "solver", "seed": seed})
    return outcome
