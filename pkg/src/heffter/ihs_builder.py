"""
Integer Heffter array sets IHS(m,n;c).

Routes:

* ``m, n`` even: one shiftable full array and its shifts by ``mn, 2mn, ...``
  (:func:`build_even_even`);
* ``m = 0 (mod 4)``, ``n = 5``: stacked IHS(4,5) blocks (:func:`build_m0mod4_n5`);
* ``m = 2 (mod 4)``, ``n = 3 (mod 4)``, ``n >= 7``, ``c`` even: :func:`build_n3`;
* ``m = 2 (mod 4)``, ``n = 1 (mod 4)``, ``n >= 9``, ``c`` even: :func:`build_n1`;
* the transposes of all of the above (:func:`build_ihs`).

The two odd-``n`` assemblies share a frame.  Columns 1-3 hold a stack of
``2 x 3`` blocks: ``Y`` (from family B), then ``-X, -X``, then ``(X, -X)``
pairs, all ``X`` from family A.  The remaining ``m x (n - 3)`` region is
tiled with zero-sum template blocks fed by interval pieces carved out of
the values the two families leave unused.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from . import blocks as blk
from .blocks import IntervalSet
from .core import (
    Grid,
    IhsParams,
    UnsupportedError,
    negate,
    place,
    require_admissible,
    shift,
    stack,
    transpose,
    verify_ihs,
)


@dataclass(frozen=True)
class Placement:
    """One block instance in the frame of array ``array`` (0-based corner)."""

    array: int
    row: int
    col: int
    slot: str  # Y, X, -X, Z4, Z6, Z6t, W
    template: str | None = None  # P1..R2 for template slots
    args: tuple = ()
    transposed: bool = False


@dataclass
class PartitionPlan:
    """How the values missed by families A and B are cut into template inputs."""

    variant: str
    params: IhsParams
    M1: range
    M2: range
    M3: range
    F: list = field(default_factory=list)  # 4-sets of type 2
    G: list = field(default_factory=list)  # 4-sets of type 1
    H: list = field(default_factory=list)  # 8-sets of type 1
    J: list = field(default_factory=list)  # 8-sets of type 2
    layout: list = field(default_factory=list)

    def expected_counts(self) -> dict[str, int]:
        v, w, t = self.params.v, self.params.w, self.params.t
        if self.variant == "n3":
            return {
                "F": (4 * v + 4 * w + 3) * (t + 1),
                "G": (8 * v * w + 4 * v + 8 * w + 7) * (t + 1),
                "H": t + 1,
                "J": 0,
            }
        return {
            "F": (2 * v + 3) * (t + 1),
            "G": (8 * v * w + 10 * v + 12 * w + 3) * (t + 1),
            "H": 3 * (t + 1),
            "J": 3 * (t + 1),
        }

    def pieces(self) -> list[IntervalSet]:
        return self.F + self.G + self.H + self.J

    def check(self) -> None:
        """Assert disjointness, shapes, counts and exact coverage of M1 + M2 + M3."""
        counts = {"F": len(self.F), "G": len(self.G), "H": len(self.H), "J": len(self.J)}
        if counts != self.expected_counts():
            raise AssertionError(f"piece counts {counts} differ from {self.expected_counts()}")
        shapes = {"F": (4, 2), "G": (4, 1), "H": (8, 1), "J": (8, 2)}
        for kind, (length, step) in shapes.items():
            for piece in getattr(self, kind):
                if (piece.length, piece.step) != (length, step):
                    raise AssertionError(f"{kind} piece {piece} is not a {length}-set of type {step}")
        covered = Counter(x for piece in self.pieces() for x in piece)
        if any(k > 1 for k in covered.values()):
            raise AssertionError("pieces overlap")
        if set(covered) != set(self.M1) | set(self.M2) | set(self.M3):
            raise AssertionError("pieces do not cover M1 + M2 + M3 exactly")


def _carve(r: range, size: int, step: int) -> list[IntervalSet]:
    """Cut a progression into consecutive ``size``-sets."""
    if len(r) % size:
        raise AssertionError(f"{r} does not split into {size}-sets")
    return [IntervalSet(r[k], size, step) for k in range(0, len(r), size)]


def _variant_of(p: IhsParams) -> str:
    if p.m % 4 == 2 and p.m >= 6 and p.c % 2 == 0:
        if p.n % 4 == 3 and p.n >= 7:
            return "n3"
        if p.n % 4 == 1 and p.n >= 9:
            return "n1"
    raise UnsupportedError(f"{p} is outside the m = 2 (mod 4), odd n >= 7, even c assemblies")


def _layout(p: IhsParams, variant: str) -> list[Placement]:
    """Slots of every array, in consumption order, without template arguments."""
    v, w, t = p.v, p.w, p.t
    c = p.c
    first = []
    for a in range(c):
        first.append(Placement(a, 0, 0, "Y"))
        first.append(Placement(a, 2, 0, "-X"))
        first.append(Placement(a, 4, 0, "-X"))
        for b in range(v):
            first.append(Placement(a, 6 + 4 * b, 0, "X"))
            first.append(Placement(a, 8 + 4 * b, 0, "-X"))

    if variant == "n3":
        z6 = [(a, 0, 3 + 4 * k, False) for a in range(c) for k in range(w + 1)]
        z6_kinds = ["Q1"] * ((2 * w + 1) * (t + 1)) + ["Q2"] * (t + 1)
        z4 = [(a, 6 + 4 * b, 3 + 4 * k) for a in range(c) for b in range(v) for k in range(w + 1)]
        z4_kinds = ["P1"] * (v * (t + 1)) + ["P2"] * (v * (2 * w + 1) * (t + 1))
        wslots = []
    else:
        wslots = [Placement(a, 0, 3, "W", kind) for a, kind in zip(range(c), ["R1"] * (t + 1) + ["R2"] * (t + 1))]
        z6 = []
        for a in range(c):
            z6 += [(a, 0, 9 + 4 * k, False) for k in range(w)]
            z6 += [(a, 6 + 4 * b, 3, True) for b in range(v)]
        z6_kinds = ["Q1"] * (v * (t + 1)) + ["Q3"] * ((v + 2 * w) * (t + 1))
        z4 = [(a, 6 + 4 * b, 9 + 4 * k) for a in range(c) for b in range(v) for k in range(w)]
        z4_kinds = ["P2"] * (2 * v * w * (t + 1))

    assert len(z6) == len(z6_kinds) and len(z4) == len(z4_kinds)
    out = list(wslots)
    out += [Placement(a, r, col, "Z6t" if tr else "Z6", kind, transposed=tr) for (a, r, col, tr), kind in zip(z6, z6_kinds)]
    out += [Placement(a, r, col, "Z4", kind) for (a, r, col), kind in zip(z4, z4_kinds)]
    return first + out


def plan_partition(p: IhsParams, variant: str | None = None) -> PartitionPlan:
    """Split the values left by families A and B into F/G/H/J pieces.

    F and J pieces (type 2) come from ``M1`` and ``M2``; G and H pieces are
    carved from ``M3`` left to right in the order the template slots consume
    them, which reproduces the worked IHS(10,7;2) example exactly.
    """
    if variant is None:
        variant = _variant_of(p)
    elif variant != _variant_of(p):
        raise UnsupportedError(f"{p} does not fit variant {variant}")
    v, w, t = p.v, p.w, p.t
    T = t + 1
    M1 = range(2, 16 * v * T + 24 * t + 24 + 1, 2)
    if variant == "n3":
        M2 = range(32 * v * T + 48 * t + 49, (40 * v + 16 * w) * T + 48 * t + 48 + 1)
        M3 = range(8 * (5 * v + 2 * w) * T + 48 * t + 49, 8 * (4 * v * w + 7 * v + 6 * w) * T + 84 * t + 84 + 1)
        F = _carve(M1, 4, 2)
        for lo in range(M2.start, M2.stop, 8):
            F += [IntervalSet(lo, 4, 2), IntervalSet(lo + 1, 4, 2)]
        J = []
    else:
        M2 = range(32 * v * T + 48 * t + 49, 32 * v * T + 72 * t + 72 + 1)
        M3 = range(32 * v * T + 72 * t + 73, 8 * (4 * v * w + 9 * v + 6 * w) * T + 108 * t + 108 + 1)
        F, J = [], []
        # each run of 24 consecutive values gives, per parity, one 8-set and one 4-set
        for lo in range(M2.start, M2.stop, 24):
            for par in (0, 1):
                J.append(IntervalSet(lo + par, 8, 2))
                F.append(IntervalSet(lo + par + 16, 4, 2))
        # the missing t+1 eight-sets come from the low end of M1
        J += _carve(M1[: 8 * T], 8, 2)
        F += _carve(M1[8 * T :], 4, 2)
    F.sort()
    J.sort()

    layout = _layout(p, variant)
    m3 = iter(M3)
    G, H = [], []
    fq, jq = deque(F), deque(J)
    filled = []
    for slot in layout:
        if slot.template is None:
            filled.append(slot)
            continue
        args = []
        for kind in blk.SIGNATURES[slot.template]:
            if kind == "X":
                args.append(fq.popleft())
            elif kind == "W":
                args.append(jq.popleft())
            else:
                size = 4 if kind == "Y" else 8
                piece = IntervalSet(next(m3), size, 1)
                for _ in range(size - 1):
                    next(m3)
                (G if kind == "Y" else H).append(piece)
                args.append(piece)
        filled.append(Placement(slot.array, slot.row, slot.col, slot.slot, slot.template, tuple(args), slot.transposed))
    if fq or jq or next(m3, None) is not None:
        raise AssertionError(f"partition of {p} not exhausted")
    plan = PartitionPlan(variant, p, M1, M2, M3, F, G, H, J, filled)
    plan.check()
    return plan


def families(p: IhsParams) -> tuple[list[Grid], list[Grid]]:
    """The family A and family B blocks feeding the first three columns."""
    v, t = p.v, p.t
    T = t + 1
    A = blk.family_A(8 * t + 9, 8 * (3 * v + 4) * T, 4 * (v + 1) * T)
    B = blk.family_B(4 * (6 * v + 9) * T, T)
    return A, B


def _assemble(p: IhsParams, plan: PartitionPlan) -> list[Grid]:
    A, B = families(p)
    a_iter, b_iter = iter(A), iter(B)
    per_array = [[] for _ in range(p.c)]
    for slot in plan.layout:
        if slot.slot == "Y":
            g = next(b_iter)
        elif slot.slot == "X":
            g = next(a_iter)
        elif slot.slot == "-X":
            g = negate(next(a_iter))
        else:
            g = blk.TEMPLATES[slot.template](*slot.args)
            if slot.transposed:
                g = transpose(g)
        per_array[slot.array].append((slot.row, slot.col, g))
    assert next(a_iter, None) is None and next(b_iter, None) is None
    return [place(items, p.m, p.n) for items in per_array]


def build_n3(p: IhsParams) -> list[Grid]:
    """IHS(m,n;c) for ``m = 2 (mod 4)``, ``n = 3 (mod 4)``, ``n >= 7``, ``c`` even."""
    require_admissible(p)
    return _assemble(p, plan_partition(p, "n3"))


def build_n1(p: IhsParams) -> list[Grid]:
    """IHS(m,n;c) for ``m = 2 (mod 4)``, ``n = 1 (mod 4)``, ``n >= 9``, ``c`` even."""
    require_admissible(p)
    return _assemble(p, plan_partition(p, "n1"))


def _split(total: int) -> list[int]:
    """Write an even ``total >= 4`` as a sum of 4s and at most one 6."""
    if total % 2 or total < 4:
        raise ValueError(f"cannot tile length {total} with 4s and 6s")
    return [6] + [4] * ((total - 6) // 4) if total % 4 else [4] * (total // 4)


def _shiftable_tile(h: int, w: int) -> Grid:
    """A shiftable zero-sum ``h x w`` block with support ``[1, hw]``, for ``h, w`` in ``{4, 6}``."""
    Y = [IntervalSet(1 + 4 * i, 4) for i in range(6)]
    if (h, w) == (4, 4):
        return blk.P2(*Y[:4])
    if (h, w) == (6, 4):
        return blk.Q3(*Y)
    if (h, w) == (4, 6):
        return transpose(blk.Q3(*Y))
    return blk.R2(*Y[:3], *(IntervalSet(13 + 8 * i, 8) for i in range(3)))


def shiftable_full(m: int, n: int) -> Grid:
    """A totally filled shiftable integer H(m,n) (support ``[1, mn]``) for even ``m, n >= 4``."""
    items = []
    offset = 0
    r = 0
    for h in _split(m):
        col = 0
        for w in _split(n):
            tile = _shiftable_tile(h, w)
            items.append((r, col, shift(tile, offset) if offset else tile))
            offset += h * w
            col += w
        r += h
    return place(items, m, n)


def build_even_even(p: IhsParams) -> list[Grid]:
    """IHS(m,n;c) for even ``m, n``: a shiftable H(m,n) and its shifts by multiples of ``mn``."""
    require_admissible(p)
    if p.m % 2 or p.n % 2:
        raise UnsupportedError(f"{p}: both dimensions must be even")
    base = shiftable_full(p.m, p.n)
    mn = p.m * p.n
    return [base] + [shift(base, i * mn) for i in range(1, p.c)]


def build_m0mod4_n5(m: int, c: int) -> list[Grid]:
    """IHS(m,5;c) for ``m = 0 (mod 4)``: stack ``m/4`` blocks of an IHS(4,5;mc/4)."""
    if m < 4 or m % 4:
        raise ValueError(f"m must be a positive multiple of 4, got {m}")
    require_admissible(IhsParams(m, 5, c))
    q = m // 4
    pieces = blk.ihs_4x5(q * c)
    return [stack(pieces[i * q : (i + 1) * q]) for i in range(c)]


def route_ihs(p: IhsParams) -> str:
    """Name the construction :func:`build_ihs` uses for ``p``.

    Raises :class:`UnsupportedError` (with the covering literature result)
    when no in-house route applies.
    """
    require_admissible(p)
    m, n = p.m, p.n
    if m % 2 == 0 and n % 2 == 0:
        return "even-even"
    for a, b, flip in ((m, n, ""), (n, m, "transpose:")):
        if a % 4 == 0 and b == 5:
            return flip + "m0mod4-n5"
        if a % 4 == 2 and b % 2 == 1 and b >= 7:
            return flip + ("n3" if b % 4 == 3 else "n1")
    for a, b in ((m, n), (n, m)):
        if a % 4 == 0 and b % 2 == 1:
            raise UnsupportedError(f"{p}: m = 0 (mod 4) with odd n != 5", "[MP3]")
    if m % 2 == 1 and n % 2 == 1 and m >= 7 and n >= 7:
        raise UnsupportedError(f"{p}: both dimensions odd and at least 7", "[PT]")
    if (m % 2, n % 2) != (0, 0) and 3 in (m, n):
        raise UnsupportedError(f"{p}: a side of length 3", "open (IHS(m,3;c) family) or not covered")
    raise UnsupportedError(f"{p}: a side of length 5 with the other side odd or 2 (mod 4)", "open (IHS(m,5;c) family) or not covered")


def build_ihs(p: IhsParams) -> list[Grid]:
    """Build an IHS(m,n;c) by the route :func:`route_ihs` selects; the result is verified."""
    route = route_ihs(p)
    flipped = route.startswith("transpose:")
    q = p.transposed() if flipped else p
    name = route.split(":")[-1]
    if name == "even-even":
        out = build_even_even(q)
    elif name == "m0mod4-n5":
        out = build_m0mod4_n5(q.m, q.c)
    elif name == "n3":
        out = build_n3(q)
    else:
        out = build_n1(q)
    if flipped:
        out = [transpose(g) for g in out]
    report = verify_ihs(out, p)
    if not report.valid:
        raise AssertionError(f"route {route} produced an invalid {p}:\n{report}")
    return out
