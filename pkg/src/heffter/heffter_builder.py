"""
Rectangular integer Heffter arrays H(m,n;s,k).

* :func:`build_theorem_A` handles ``d = gcd(s,k) = 1 (mod 4)``, ``d >= 5`` and
  ``nk = 0 (mod 4)``.  Write ``m = e*k1``, ``n = e*s1``, ``s = d*s1``,
  ``k = d*k1`` and ``d = 5 + 4t``.  A square H(4N;5) on five cyclic
  diagonals (``4N = e*s1*k1``) is folded onto the ``m x n`` frame by
  :func:`pi_remap`; the remaining ``4t`` filled cells per row and column come
  from a shiftable companion on ``4t`` further diagonals
  (:func:`shiftable_diagonal`), shifted past the folded array's support.
* :func:`diagonal_compose` places the ``c`` blocks of an IHS(k,s;c) down the
  diagonal of a ``ck x cs`` frame, giving an H(ck,cs;s,k).
* :func:`construct` picks whichever of these applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    CollisionError,
    Grid,
    HeffterParams,
    IhsParams,
    UnsupportedError,
    overlay,
    place,
    require_admissible,
    shift,
    transpose,
    verify_heffter,
    verify_ihs,
)
from .ihs_builder import build_ihs, route_ihs
from .solver import base_h4N5, base_skeleton, check_base


@dataclass(frozen=True)
class TheoremAPlan:
    """Folding data for an H(e*k1, e*s1; d*s1, d*k1) with ``d = 5 + 4t``."""

    e: int
    s1: int
    k1: int
    t: int = 0

    def __post_init__(self):
        if self.e <= 5:
            raise ValueError(f"folding needs e > 5, got e = {self.e}")
        if np.gcd(self.s1, self.k1) != 1:
            raise ValueError(f"s1 = {self.s1} and k1 = {self.k1} must be coprime")
        if self.k1 % 2 == 0:
            raise ValueError("k1 must be odd (transpose the problem first)")
        if (self.e * self.s1 * self.k1) % 4:
            raise ValueError("e*s1*k1 must be divisible by 4")
        if self.t < 0 or (self.t > 0 and self.e <= self.d):
            raise ValueError(f"need e > d = {self.d}")

    @property
    def d(self) -> int:
        return 5 + 4 * self.t

    @property
    def N(self) -> int:
        return self.e * self.s1 * self.k1 // 4

    @property
    def rows(self) -> int:
        return self.e * self.k1

    @property
    def cols(self) -> int:
        return self.e * self.s1

    @property
    def offsets(self) -> set[int]:
        """Column-minus-row differences filled in the square base array."""
        N = self.N
        return {-(4 * N - 1), -(4 * N - 2), -2 * N, -(2 * N - 1), 0, 1, 2, 2 * N, 2 * N + 1}

    @property
    def companion_residues(self) -> list[int]:
        """Residues ``b - a (mod e)`` of the companion's diagonals."""
        t, e = self.t, self.e
        if self.s1 % 2:
            return list(range(3, 3 + 2 * t)) + list(range(e - 2 * t, e))
        return list(range(3, 4 * t + 3))

    def z(self, i: int) -> int:
        """Row offset applied before folding row ``i`` (1-based)."""
        N = self.N
        return 3 if self.s1 % 2 == 0 and 2 * N + 1 <= i <= 4 * N else 0

    def fold(self, i: int, j: int) -> tuple[int, int]:
        """Image of base cell ``(i, j)`` (1-based) in the ``e*k1 x e*s1`` frame."""
        u = (i + self.z(i) - 1) % self.rows + 1
        v = (j - 1) % self.cols + 1
        return u, v

    @classmethod
    def for_params(cls, p: HeffterParams) -> "TheoremAPlan":
        d = p.d
        if d % 4 != 1 or d < 5:
            raise UnsupportedError(f"{p}: gcd(s,k) = {d} is not 1 (mod 4) and at least 5")
        e = p.e
        if e is None:
            raise ValueError(f"{p}: ms != nk")
        return cls(e, p.s1, p.k1, (d - 5) // 4)


def pi_remap(base: Grid, plan: TheoremAPlan) -> Grid:
    """Fold a diagonal H(4N;5) onto the ``e*k1 x e*s1`` frame.

    Every row of the result collects ``s1`` base rows and every column ``k1``
    base columns, so line sums stay zero.  The fold is checked to be
    injective on the skeleton; a clash raises :class:`CollisionError`.
    """
    N = plan.N
    if base.shape != (4 * N, 4 * N):
        raise ValueError(f"base must be {4 * N}x{4 * N}, got {base.rows}x{base.cols}")
    skel = base.skeleton()
    offs = plan.offsets
    if any((j - i) not in offs for i, j in skel) or len(skel) != 20 * N:
        raise ValueError("base skeleton is not the five-diagonal H(4N;5) skeleton")
    out = np.zeros((plan.rows, plan.cols), dtype=np.int64)
    a = base.array
    for i, j in sorted(skel):
        u, v = plan.fold(i + 1, j + 1)
        if out[u - 1, v - 1]:
            raise CollisionError(f"base cells fold onto the same cell ({u}, {v})")
        out[u - 1, v - 1] = a[i, j]
    return Grid(out)


def pi_unfold(folded: Grid, plan: TheoremAPlan) -> Grid:
    """Inverse of :func:`pi_remap`: recover the square base from a folded array."""
    N = plan.N
    preimage = {}
    for i, j in base_skeleton(N):
        cell = plan.fold(i + 1, j + 1)
        if cell in preimage:
            raise CollisionError(f"fold is not injective at {cell}")
        preimage[cell] = (i, j)
    out = np.zeros((4 * N, 4 * N), dtype=np.int64)
    for (u, v), val in folded.cells().items():
        try:
            out[preimage[(u + 1, v + 1)]] = val
        except KeyError:
            raise ValueError(f"cell ({u + 1}, {v + 1}) is not the image of a base cell") from None
    return Grid(out)


def shiftable_diagonal(plan: TheoremAPlan) -> Grid:
    """A shiftable H(e*k1, e*s1; 4t*s1, 4t*k1) on the companion diagonals, support ``[1, 4t*e*s1*k1]``.

    With ``L = e*s1*k1``, cell ``p`` of the diagonal with residue ``l`` is
    ``(p mod e*k1, (p + l) mod e*s1)``; this is a bijection from ``Z_L``
    because ``gcd(s1, k1) = 1``.  Two adjacent diagonals ``l, l+1`` form one
    closed staircase whose horizontal steps share a row and vertical steps a
    column.  Filling a staircase with ``+1, -2, +3, -4, ...`` makes every
    horizontal step sum to ``-1`` and every vertical step to ``+1`` except
    the closing one.  A second staircase, filled with the opposite signs and
    started so that its closing step lands in the same column, cancels all
    of it.
    """
    t = plan.t
    if t == 0:
        return Grid.empty(plan.rows, plan.cols)
    R, C = plan.rows, plan.cols
    L = plan.e * plan.s1 * plan.k1
    res = plan.companion_residues
    pairs = [(res[k], res[k + 1]) for k in range(0, len(res), 2)]
    assert all(b == a + 1 for a, b in pairs)
    out = np.zeros((R, C), dtype=np.int64)
    p = np.arange(L)
    k = np.arange(2 * L)
    alternating = np.where(k % 2 == 0, 1, -1)
    for q in range(t):
        (l1, _), (l2, _) = pairs[2 * q], pairs[2 * q + 1]
        base = 4 * L * q
        start2 = (l1 - l2) % C
        for l, first, sign, offset in ((l1, 0, 1, base), (l2, start2, -1, base + 2 * L)):
            idx = (p + first) % L
            rows = np.repeat(idx % R, 2)
            cols = np.empty(2 * L, dtype=np.int64)
            cols[0::2] = (idx + l) % C
            cols[1::2] = (idx + l + 1) % C
            if out[rows, cols].any():
                raise CollisionError("companion diagonals overlap")
            out[rows, cols] = sign * alternating * (offset + k + 1)
    return Grid(out)


def build_theorem_A(p: HeffterParams, fixtures_dir=None, seed: int = 0, budget_ms: int | None = 600_000) -> Grid:
    """Integer H(m,n;s,k) for ``gcd(s,k) = 1 (mod 4)``, ``gcd >= 5``, ``nk = 0 (mod 4)``, ``e > d``."""
    require_admissible(p)
    if p.k1 % 2 == 0:
        return transpose(build_theorem_A(p.transposed(), fixtures_dir, seed, budget_ms))
    if (p.n * p.k) % 4:
        raise UnsupportedError(f"{p}: nk = 3 (mod 4)", "[MP3] (nk = 3 mod 4 case)")
    d = p.d
    if d % 4 != 1 or d < 5:
        raise UnsupportedError(f"{p}: gcd(s,k) = {d} is not 1 (mod 4) and at least 5")
    if p.e <= d:
        raise UnsupportedError(f"{p}: e = {p.e} is not larger than d = {d} (square case)", "[DW] (square case)")
    plan = TheoremAPlan.for_params(p)
    base = base_h4N5(plan.N, fixtures_dir=fixtures_dir, seed=seed, budget_ms=budget_ms)
    folded = pi_remap(base, plan)
    if plan.t:
        L = plan.e * plan.s1 * plan.k1
        folded = overlay(folded, shift(shiftable_diagonal(plan), 5 * L))
    report = verify_heffter(folded, p)
    if not report.valid:
        raise AssertionError(f"{p} assembly failed verification:\n{report}")
    return folded


def diagonal_compose(blocks: Sequence[Grid]) -> Grid:
    """Place the blocks of an IHS(k,s;c) down the diagonal: an H(ck,cs;s,k)."""
    if not blocks:
        raise ValueError("no blocks to compose")
    k, s = blocks[0].shape
    c = len(blocks)
    report = verify_ihs(blocks, IhsParams(k, s, c))
    if not report.valid:
        raise ValueError(f"blocks are not an IHS({k},{s};{c}):\n{report}")
    return place(((i * k, i * s, b) for i, b in enumerate(blocks)), c * k, c * s)


def route(p: HeffterParams) -> str:
    """Name the construction :func:`construct` uses, or raise Inadmissible/Unsupported."""
    require_admissible(p)
    m, s, k = p.m, p.s, p.k
    if m % k == 0:
        c = m // k
        try:
            return f"diagonal-compose[IHS({k},{s};{c}) via {route_ihs(IhsParams(k, s, c))}]"
        except UnsupportedError:
            pass
    d, e = p.d, p.e
    if d % 4 == 1 and d >= 5 and (p.n * k) % 4 == 0 and e > d:
        return "theorem-A"
    raise _unsupported(p)


def _unsupported(p: HeffterParams) -> UnsupportedError:
    s, k, d = p.s, p.k, p.d
    nk4 = (p.n * p.k) % 4
    if s % 2 == 0 and k % 2 == 0:
        who = "[MP] (s, k both even)"
    elif d % 4 == 0 or d % 4 == 3 or (d % 4 == 2 and nk4 == 0) or (d % 4 == 1 and d >= 5 and nk4 == 3):
        who = "[MP3]"
    elif d % 4 == 1 and d >= 5:
        who = "[ADDY, DW] (square case)"
    elif (s % 4 == 0 and k % 2 == 1 and k != 5) or (k % 4 == 0 and s % 2 == 1 and s != 5):
        who = "[MP3] (s = 0 mod 4 case)"
    elif d == 1 and ((k % 2 == 1 and k >= 7 and s not in (3, 5, 6, 10)) or (s % 2 == 1 and s >= 7 and k not in (3, 5, 6, 10))):
        who = "[PT]"
    elif d == 1 and ({s, k} & {3, 5}):
        who = "open: coprime with k = 3 or 5 and s not 0 (mod 4)"
    else:
        who = "IHS-based composition in the literature [MP3, PT]"
    return UnsupportedError(f"{p}: no in-house construction applies", who)


def construct(m: int, n: int, s: int, k: int, fixtures_dir=None, seed: int = 0, budget_ms: int | None = 600_000) -> Grid:
    """Build and verify an integer H(m,n;s,k).

    Raises :class:`~heffter.core.InadmissibleError` when the necessary
    conditions fail and :class:`~heffter.core.UnsupportedError` when no
    in-house construction covers the admissible tuple.
    """
    return construct_with_route(m, n, s, k, fixtures_dir, seed, budget_ms)[0]


def construct_with_route(m, n, s, k, fixtures_dir=None, seed=0, budget_ms=600_000) -> tuple[Grid, str]:
    p = HeffterParams(m, n, s, k)
    how = route(p)
    if how == "theorem-A":
        g = build_theorem_A(p, fixtures_dir, seed, budget_ms)
    else:
        g = diagonal_compose(build_ihs(IhsParams(k, s, m // k)))
    report = verify_heffter(g, p)
    if not report.valid:
        raise AssertionError(f"route {how} produced an invalid {p}:\n{report}")
    return g, how
