"""
Partially filled integer arrays and the checks that certify them.

A :class:`Grid` stores its entries in an ``int64`` matrix where ``0`` marks an
empty cell; this is unambiguous because Heffter entries are never zero.
Coordinates are 0-based internally; serialized documents use 1-based
coordinates (see :mod:`heffter.io`).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

# every entry must stay exactly representable in int64 after shifting
MAX_ENTRY = 2**62


class HeffterError(Exception):
    """Base class for all errors raised by this package."""


class InadmissibleError(HeffterError, ValueError):
    """The parameters fail the necessary existence conditions."""


class UnsupportedError(HeffterError):
    """The parameters are admissible but no in-house construction covers them.

    ``covered_by`` names the literature result that settles the case.
    """

    def __init__(self, message: str, covered_by: str = ""):
        super().__init__(message)
        self.covered_by = covered_by


class CollisionError(HeffterError):
    """Two filled cells were mapped onto the same position."""


class Grid:
    """An ``rows x cols`` partially filled array of nonzero integers.

    Grids are immutable; every transform returns a new grid.
    """

    __slots__ = ("_a",)

    def __init__(self, data):
        a = np.array(data, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"a grid needs a nonempty 2-d shape, got {a.shape}")
        if a.size and int(np.abs(a).max()) > MAX_ENTRY:
            raise OverflowError("grid entry exceeds the exact integer range")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def empty(cls, rows: int, cols: int) -> "Grid":
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | None]]) -> "Grid":
        """Build a grid from nested lists, with ``None`` marking empty cells."""
        width = {len(r) for r in rows}
        if len(width) != 1:
            raise ValueError("ragged rows")
        for r in rows:
            if any(v == 0 for v in r if v is not None):
                raise ValueError("zero entries are not allowed")
        return cls([[0 if v is None else v for v in r] for r in rows])

    @classmethod
    def from_cells(cls, rows: int, cols: int, cells: Mapping[tuple[int, int], int]) -> "Grid":
        """Build a grid from a ``{(row, col): value}`` map with 0-based keys."""
        a = np.zeros((rows, cols), dtype=np.int64)
        for (i, j), v in cells.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"cell {(i, j)} outside a {rows}x{cols} grid")
            if v == 0:
                raise ValueError(f"zero entry at {(i, j)}")
            a[i, j] = v
        return cls(a)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries (0 = empty)."""
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def filled(self) -> np.ndarray:
        return self._a != 0

    def cells(self) -> dict[tuple[int, int], int]:
        return {(int(i), int(j)): int(self._a[i, j]) for i, j in zip(*np.nonzero(self._a))}

    def skeleton(self) -> set[tuple[int, int]]:
        return {(int(i), int(j)) for i, j in zip(*np.nonzero(self._a))}

    def support(self) -> list[int]:
        """Sorted list (with multiplicity) of the absolute values of the entries."""
        a = np.abs(self._a[self._a != 0])
        return sorted(int(x) for x in a)

    def row_sums(self) -> list[int]:
        return [int(x) for x in self._a.sum(axis=1)]

    def col_sums(self) -> list[int]:
        return [int(x) for x in self._a.sum(axis=0)]

    def row_counts(self) -> list[int]:
        return [int(x) for x in self.filled.sum(axis=1)]

    def col_counts(self) -> list[int]:
        return [int(x) for x in self.filled.sum(axis=0)]

    def is_zero_sum_block(self) -> bool:
        return bool(self.filled.all()) and not self._a.sum(axis=0).any() and not self._a.sum(axis=1).any()

    def is_shiftable(self) -> bool:
        """Every row and column holds as many positive as negative entries."""
        sign = np.sign(self._a)
        return not sign.sum(axis=0).any() and not sign.sum(axis=1).any()

    def tolist(self) -> list[list[int | None]]:
        return [[int(v) if v else None for v in row] for row in self._a]

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"Grid({self.rows}x{self.cols}, filled={int(self.filled.sum())})"

    def __str__(self):
        width = max(3, max(len(str(int(v))) for v in self._a.flat) + 1)
        return "\n".join(
            "".join((str(int(v)) if v else ".").rjust(width) for v in row) for row in self._a
        )


@dataclass(frozen=True)
class HeffterParams:
    """Parameters of an integer H(m,n;s,k).

    ``d = gcd(s, k)``; when ``ms = nk`` the factorization ``m = e*k1``,
    ``n = e*s1``, ``s = d*s1``, ``k = d*k1`` with ``gcd(s1, k1) = 1`` is
    exposed through :attr:`e`, :attr:`s1`, :attr:`k1`.
    """

    m: int
    n: int
    s: int
    k: int

    def __post_init__(self):
        for name in ("m", "n", "s", "k"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v <= 0:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def d(self) -> int:
        return gcd(self.s, self.k)

    @property
    def s1(self) -> int:
        return self.s // self.d

    @property
    def k1(self) -> int:
        return self.k // self.d

    @property
    def e(self) -> int | None:
        """``m / k1`` when the factorization holds, else ``None``."""
        if self.m * self.s != self.n * self.k or self.m % self.k1:
            return None
        return self.m // self.k1

    @property
    def cells(self) -> int:
        return self.n * self.k

    def transposed(self) -> "HeffterParams":
        return HeffterParams(self.n, self.m, self.k, self.s)

    def admissible(self) -> bool:
        return admissible(self)

    def failures(self) -> list[str]:
        m, n, s, k = self.m, self.n, self.s, self.k
        out = []
        if m * s != n * k:
            out.append(f"ms = {m * s} differs from nk = {n * k}")
        if not 3 <= s <= n:
            out.append(f"s = {s} outside [3, n = {n}]")
        if not 3 <= k <= m:
            out.append(f"k = {k} outside [3, m = {m}]")
        if (n * k) % 4 not in (0, 3):
            out.append(f"nk = {n * k} is {(n * k) % 4} mod 4")
        if 2 * n * k > MAX_ENTRY:
            out.append("nk too large for exact 64-bit arithmetic")
        return out

    def __str__(self):
        return f"H({self.m},{self.n};{self.s},{self.k})"


@dataclass(frozen=True)
class IhsParams:
    """Parameters of an integer Heffter array set IHS(m,n;c)."""

    m: int
    n: int
    c: int

    def __post_init__(self):
        for name in ("m", "n", "c"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v <= 0:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def t(self) -> int:
        """``c = 2t + 2`` for even ``c``, ``c = 2t + 1`` for odd ``c``."""
        return (self.c - 2) // 2 if self.c % 2 == 0 else (self.c - 1) // 2

    @property
    def v(self) -> int | None:
        """``m = 6 + 4v`` when ``m = 2 (mod 4)`` and ``m >= 6``."""
        return (self.m - 6) // 4 if self.m % 4 == 2 and self.m >= 6 else None

    @property
    def w(self) -> int | None:
        """``n = 7 + 4w`` or ``n = 9 + 4w`` for odd ``n`` in the matching class."""
        if self.n % 4 == 3 and self.n >= 7:
            return (self.n - 7) // 4
        if self.n % 4 == 1 and self.n >= 9:
            return (self.n - 9) // 4
        return None

    @property
    def cells(self) -> int:
        return self.m * self.n * self.c

    def transposed(self) -> "IhsParams":
        return IhsParams(self.n, self.m, self.c)

    def admissible(self) -> bool:
        return admissible(self)

    def failures(self) -> list[str]:
        out = []
        if self.m < 3 or self.n < 3:
            out.append(f"m = {self.m}, n = {self.n} must both be at least 3")
        if self.cells % 4 not in (0, 3):
            out.append(f"mnc = {self.cells} is {self.cells % 4} mod 4")
        if 2 * self.cells > MAX_ENTRY:
            out.append("mnc too large for exact 64-bit arithmetic")
        return out

    def __str__(self):
        return f"IHS({self.m},{self.n};{self.c})"


def admissible(p: HeffterParams | IhsParams) -> bool:
    """True iff the necessary existence conditions hold for ``p``."""
    return not p.failures()


def require_admissible(p: HeffterParams | IhsParams) -> None:
    problems = p.failures()
    if problems:
        raise InadmissibleError(f"{p} is not admissible: " + "; ".join(problems))


# -- verification -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # row-sum, col-sum, row-count, col-count, support-mismatch, bounds, block-count, unfilled
    location: str
    observed: object
    expected: object

    def __str__(self):
        return f"{self.kind} at {self.location}: observed {self.observed}, expected {self.expected}"


@dataclass
class VerifyReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def add(self, kind, location, observed, expected):
        self.violations.append(Violation(kind, location, observed, expected))

    def __str__(self):
        if self.valid:
            return "valid"
        lines = [f"invalid ({len(self.violations)} violations)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {"kind": v.kind, "location": v.location, "observed": v.observed, "expected": v.expected}
                for v in self.violations
            ],
        }


def _check_lines(report: VerifyReport, g: Grid, prefix: str, row_fill: int | None, col_fill: int | None):
    for i, (total, count) in enumerate(zip(g.row_sums(), g.row_counts()), 1):
        if row_fill is not None and count != row_fill:
            report.add("row-count", f"{prefix}row {i}", count, row_fill)
        if total != 0:
            report.add("row-sum", f"{prefix}row {i}", total, 0)
    for j, (total, count) in enumerate(zip(g.col_sums(), g.col_counts()), 1):
        if col_fill is not None and count != col_fill:
            report.add("col-count", f"{prefix}col {j}", count, col_fill)
        if total != 0:
            report.add("col-sum", f"{prefix}col {j}", total, 0)


def _check_support(report: VerifyReport, values: Iterable[int], top: int, where: str):
    """The absolute values must be exactly ``1..top``, each once."""
    counts = Counter(values)
    for x, mult in sorted(counts.items()):
        if mult > 1:
            report.add("support-mismatch", where, f"{x} appears {mult} times", "once")
        if not 1 <= x <= top:
            report.add("support-mismatch", where, f"{x} out of range", f"[1, {top}]")
    missing = [x for x in range(1, top + 1) if x not in counts]
    if missing:
        shown = missing[:10]
        report.add("support-mismatch", where, f"{len(missing)} values missing, e.g. {shown}", f"[1, {top}]")


def verify_heffter(g: Grid, p: HeffterParams) -> VerifyReport:
    """Check ``g`` against every defining condition of an integer H(m,n;s,k).

    Mathematical failures are collected, never raised.
    """
    report = VerifyReport()
    if g.shape != (p.m, p.n):
        report.add("bounds", "grid", f"{g.rows}x{g.cols}", f"{p.m}x{p.n}")
        return report
    _check_lines(report, g, "", p.s, p.k)
    _check_support(report, g.support(), p.n * p.k, "support")
    return report


def verify_ihs(blocks: Sequence[Grid], p: IhsParams) -> VerifyReport:
    """Check that ``blocks`` form an integer Heffter array set IHS(m,n;c)."""
    report = VerifyReport()
    if len(blocks) != p.c:
        report.add("block-count", "set", len(blocks), p.c)
    values = []
    for b, g in enumerate(blocks, 1):
        if g.shape != (p.m, p.n):
            report.add("bounds", f"array {b}", f"{g.rows}x{g.cols}", f"{p.m}x{p.n}")
            continue
        if not g.filled.all():
            report.add("unfilled", f"array {b}", int((~g.filled).sum()), 0)
        _check_lines(report, g, f"array {b} ", None, None)
        values += g.support()
    _check_support(report, values, p.cells, "support")
    return report


def verify_zero_sum(g: Grid) -> VerifyReport:
    """All line sums vanish; fill counts are not checked."""
    report = VerifyReport()
    _check_lines(report, g, "", None, None)
    return report


# -- transforms ---------------------------------------------------------------


def shift(g: Grid, alpha: int) -> Grid:
    """Add ``alpha`` to positive entries and subtract it from negative ones."""
    if alpha <= 0:
        raise ValueError(f"shift amount must be positive, got {alpha}")
    a = g.array
    return Grid(np.where(a > 0, a + alpha, np.where(a < 0, a - alpha, 0)))


def negate(g: Grid) -> Grid:
    return Grid(-g.array)


def transpose(g: Grid) -> Grid:
    return Grid(g.array.T)


def overlay(a: Grid, b: Grid) -> Grid:
    """Superimpose two grids whose skeletons are disjoint."""
    if a.shape != b.shape:
        raise ValueError(f"cannot overlay {a.shape} with {b.shape}")
    both = a.filled & b.filled
    if both.any():
        i, j = (int(x) for x in np.argwhere(both)[0])
        raise CollisionError(f"skeletons collide at cell ({i + 1}, {j + 1})")
    return Grid(a.array + b.array)


def place(blocks: Iterable[tuple[int, int, Grid]], rows: int, cols: int) -> Grid:
    """Assemble a grid from ``(row, col, block)`` placements (0-based corners).

    Overlapping placements raise :class:`CollisionError`.
    """
    a = np.zeros((rows, cols), dtype=np.int64)
    for r, c, blk in blocks:
        h, w = blk.shape
        window = a[r : r + h, c : c + w]
        if window.shape != (h, w):
            raise IndexError(f"block {h}x{w} at ({r + 1}, {c + 1}) leaves the {rows}x{cols} frame")
        if (window != 0).any():
            raise CollisionError(f"block at ({r + 1}, {c + 1}) overlaps earlier placements")
        window[...] = blk.array
    return Grid(a)


def stack(blocks: Sequence[Grid]) -> Grid:
    """Stack equally wide grids vertically."""
    return Grid(np.vstack([b.array for b in blocks]))
