"""
Explicit zero-sum blocks.

* :func:`family_A` and :func:`family_B`: sets of ``2 x 3`` blocks whose rows
  vanish and whose column sums are ``(-2, 1, 1)`` and ``(-4, 2, 2)``.
* The templates ``P1, P2`` (4x4), ``Q1, Q2, Q3`` (6x4) and ``R1, R2`` (6x6),
  each filled from short arithmetic progressions (:class:`IntervalSet`).
* :func:`ihs_4x5`: integer Heffter array sets IHS(4,5;c) for every ``c >= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Grid, transpose


@dataclass(frozen=True, order=True)
class IntervalSet:
    """The progression ``start, start + step, ..., start + (length - 1) * step``."""

    start: int
    length: int
    step: int = 1

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("interval sets are nonempty")
        if self.step not in (1, 2):
            raise ValueError(f"step must be 1 or 2, got {self.step}")

    @property
    def stop(self) -> int:
        """Last element (inclusive)."""
        return self.start + (self.length - 1) * self.step

    def values(self) -> list[int]:
        return list(range(self.start, self.stop + 1, self.step))

    def __iter__(self):
        return iter(self.values())

    def __len__(self):
        return self.length

    def __str__(self):
        if self.step == 1:
            return f"[{self.start},{self.stop}]"
        return f"[{self.start},{self.stop}]_{self.step}"


def four_set(start: int, step: int) -> IntervalSet:
    return IntervalSet(start, 4, step)


def eight_set(start: int, step: int) -> IntervalSet:
    return IntervalSet(start, 8, step)


# -- 2 x 3 families --------------------------------------------------------------


def family_A(alpha: int, beta: int, u: int) -> list[Grid]:
    """``u`` blocks with row sums 0 and column sums ``(-2, 1, 1)``.

    Support: ``[alpha, alpha+4u-2]_2 + [beta-2u+1, beta] + [alpha+beta, alpha+beta+2u-1]``.
    Requires ``beta >= alpha + 6u - 2``.
    """
    if min(alpha, beta, u) < 1:
        raise ValueError("alpha, beta and u must be positive")
    if beta < alpha + 6 * u - 2:
        raise ValueError(f"family A needs beta >= alpha + 6u - 2 = {alpha + 6 * u - 2}, got beta = {beta}")
    a, b = alpha, beta
    return [
        Grid([
            [a + 4 * j, -(a + b + 2 * j), b - 2 * j],
            [-(a + 2 + 4 * j), a + b + 1 + 2 * j, -(b - 1 - 2 * j)],
        ])
        for j in range(u)
    ]


def family_B(beta: int, u: int) -> list[Grid]:
    """``2u`` blocks with row sums 0 and column sums ``(-4, 2, 2)``.

    Support: ``[1, 8u-1]_2 + [beta-4u+1, beta+4u]``.  Requires ``beta >= 12u - 1``.
    """
    if min(beta, u) < 1:
        raise ValueError("beta and u must be positive")
    if beta < 12 * u - 1:
        raise ValueError(f"family B needs beta >= 12u - 1 = {12 * u - 1}, got beta = {beta}")
    b = beta
    out = []
    for j in range(u):
        out.append(Grid([
            [1 + 8 * j, -(b + 1 + 4 * j), b - 4 * j],
            [-(5 + 8 * j), b + 3 + 4 * j, -(b - 2 - 4 * j)],
        ]))
        out.append(Grid([
            [3 + 8 * j, -(b + 2 + 4 * j), b - 1 - 4 * j],
            [-(7 + 8 * j), b + 4 + 4 * j, -(b - 3 - 4 * j)],
        ]))
    return out


# -- templates ---------------------------------------------------------------------

# Each template argument kind: (length, step, offset of the first element).
_KINDS = {"X": (4, 2, 2), "Y": (4, 1, 1), "Z": (8, 1, 1), "W": (8, 2, 2)}


def _bases(names: str, sets) -> list[int]:
    """Check each argument's shape and return the base value (``x``, ``y``, ...)."""
    names = names.split()
    if len(sets) != len(names):
        raise TypeError(f"expected {len(names)} interval sets, got {len(sets)}")
    out = []
    for name, s in zip(names, sets):
        length, step, offset = _KINDS[name[0]]
        if not isinstance(s, IntervalSet):
            s = IntervalSet(*s)
        if s.length != length or s.step != step:
            raise ValueError(f"argument {name} must be a {length}-set of type {step}, got {s}")
        out.append(s.start - offset)
    return out


def P1(*X) -> Grid:
    x1, x2, x3, x4 = _bases("X1 X2 X3 X4", X)
    return Grid([
        [x1 + 2, -(x1 + 6), -(x2 + 2), x2 + 6],
        [-(x1 + 4), x1 + 8, x2 + 4, -(x2 + 8)],
        [-(x3 + 2), x3 + 6, x4 + 2, -(x4 + 6)],
        [x3 + 4, -(x3 + 8), -(x4 + 4), x4 + 8],
    ])


def P2(*Y) -> Grid:
    y1, y2, y3, y4 = _bases("Y1 Y2 Y3 Y4", Y)
    return Grid([
        [y1 + 1, -(y1 + 3), -(y2 + 1), y2 + 3],
        [-(y1 + 2), y1 + 4, y2 + 2, -(y2 + 4)],
        [-(y3 + 1), y3 + 3, y4 + 1, -(y4 + 3)],
        [y3 + 2, -(y3 + 4), -(y4 + 2), y4 + 4],
    ])


def Q1(*sets) -> Grid:
    x1, x2, y1, y2, y3, y4 = _bases("X1 X2 Y1 Y2 Y3 Y4", sets)
    return Grid([
        [x1 + 2, -(x1 + 6), -(x2 + 2), x2 + 6],
        [-(x1 + 4), x1 + 8, x2 + 4, -(x2 + 8)],
        [-(y1 + 1), y1 + 3, y2 + 1, -(y2 + 3)],
        [y1 + 2, -(y1 + 4), -(y2 + 2), y2 + 4],
        [-(y3 + 1), y3 + 3, y4 + 1, -(y4 + 3)],
        [y3 + 2, -(y3 + 4), -(y4 + 2), y4 + 4],
    ])


def Q2(*sets) -> Grid:
    x1, y1, y2, y3, z1 = _bases("X1 Y1 Y2 Y3 Z1", sets)
    return Grid([
        [x1 + 2, -(x1 + 4), -(y1 + 1), y1 + 3],
        [-(x1 + 6), x1 + 8, y1 + 2, -(y1 + 4)],
        [-(y2 + 1), y2 + 2, y3 + 3, -(y3 + 4)],
        [y2 + 3, -(y2 + 4), -(y3 + 1), y3 + 2],
        [z1 + 8, z1 + 1, -(z1 + 5), -(z1 + 4)],
        [-(z1 + 6), -(z1 + 3), z1 + 2, z1 + 7],
    ])


def Q3(*Y) -> Grid:
    y1, y2, y3, y4, y5, y6 = _bases("Y1 Y2 Y3 Y4 Y5 Y6", Y)
    return Grid([
        [y1 + 1, -(y1 + 2), -(y2 + 1), y2 + 2],
        [-(y1 + 3), y1 + 4, y2 + 3, -(y2 + 4)],
        [-(y3 + 1), y3 + 3, y4 + 1, -(y4 + 3)],
        [y3 + 2, -(y3 + 4), -(y4 + 2), y4 + 4],
        [-(y5 + 1), y5 + 3, y6 + 1, -(y6 + 3)],
        [y5 + 2, -(y5 + 4), -(y6 + 2), y6 + 4],
    ])


def R1(*sets) -> Grid:
    x1, x2, x3, w1, w2, w3 = _bases("X1 X2 X3 W1 W2 W3", sets)
    return Grid([
        [w1 + 2, -(w1 + 6), -(w1 + 10), w1 + 12, x1 + 8, -(x1 + 6)],
        [-(w1 + 4), w1 + 14, w1 + 8, -(w1 + 16), -(x1 + 4), x1 + 2],
        [x2 + 8, -(x2 + 6), w2 + 2, -(w2 + 6), -(w2 + 10), w2 + 12],
        [-(x2 + 4), x2 + 2, -(w2 + 4), w2 + 14, w2 + 8, -(w2 + 16)],
        [-(w3 + 10), w3 + 12, x3 + 8, -(x3 + 6), w3 + 2, -(w3 + 6)],
        [w3 + 8, -(w3 + 16), -(x3 + 4), x3 + 2, -(w3 + 4), w3 + 14],
    ])


def R2(*sets) -> Grid:
    y1, y2, y3, z1, z2, z3 = _bases("Y1 Y2 Y3 Z1 Z2 Z3", sets)
    return Grid([
        [z1 + 1, -(z1 + 3), -(z1 + 5), z1 + 6, y1 + 4, -(y1 + 3)],
        [-(z1 + 2), z1 + 7, z1 + 4, -(z1 + 8), -(y1 + 2), y1 + 1],
        [y2 + 4, -(y2 + 3), z2 + 1, -(z2 + 3), -(z2 + 5), z2 + 6],
        [-(y2 + 2), y2 + 1, -(z2 + 2), z2 + 7, z2 + 4, -(z2 + 8)],
        [-(z3 + 5), z3 + 6, y3 + 4, -(y3 + 3), z3 + 1, -(z3 + 3)],
        [z3 + 4, -(z3 + 8), -(y3 + 2), y3 + 1, -(z3 + 2), z3 + 7],
    ])


TEMPLATES = {"P1": P1, "P2": P2, "Q1": Q1, "Q2": Q2, "Q3": Q3, "R1": R1, "R2": R2}

# argument kinds per template, in call order
SIGNATURES = {
    "P1": "XXXX",
    "P2": "YYYY",
    "Q1": "XXYYYY",
    "Q2": "XYYYZ",
    "Q3": "YYYYYY",
    "R1": "XXXWWW",
    "R2": "YYYZZZ",
}


# -- IHS(4,5;c) --------------------------------------------------------------------


def _even_pair(t: int, i: int) -> tuple[Grid, Grid]:
    a = 16 * i
    p, q = 24 * t, 32 * t
    A0 = Grid([
        [1 + a, -(3 + a), -(5 + a), 7 + a],
        [-(2 + a), 4 + a, 10 + a, -(12 + a)],
        [6 + a, -(8 + a), -(14 + a), 16 + a],
        [p + 24 - 8 * i, -(p + 23 - 8 * i), -(p + 22 - 8 * i), p + 21 - 8 * i],
        [-(p + 29 + 8 * i), p + 30 + 8 * i, p + 31 + 8 * i, -(p + 32 + 8 * i)],
    ])
    A1 = Grid([
        [p + 20 - 8 * i, -(p + 19 - 8 * i), -(p + 18 - 8 * i), p + 17 - 8 * i],
        [-(p + 25 + 8 * i), p + 26 + 8 * i, p + 27 + 8 * i, -(p + 28 + 8 * i)],
        [q + 33 + 8 * i, -(q + 34 + 8 * i), -(q + 35 + 8 * i), q + 36 + 8 * i],
        [-(q + 37 + 8 * i), q + 38 + 8 * i, q + 39 + 8 * i, -(q + 40 + 8 * i)],
        [9 + a, -(11 + a), -(13 + a), 15 + a],
    ])
    return A0, A1


def _odd_single(t: int) -> Grid:
    a, f = 16 * t, 40 * t
    return Grid([
        [a + 1, -(a + 3), -(a + 5), a + 7],
        [-(a + 10), a + 9, a + 12, -(a + 11)],
        [-(f + 17), f + 16, -(f + 18), f + 19],
        [f + 20, -(f + 14), -4, -2],
        [6, -8, f + 15, -(f + 13)],
    ])


def _odd_pair(t: int, i: int) -> tuple[Grid, Grid]:
    a = 16 * i
    p, q = 24 * t, 32 * t
    B0 = Grid([
        [1 + a, -(3 + a), -(5 + a), 7 + a],
        [-(10 + a), 12 + a, 18 + a, -(20 + a)],
        [14 + a, -(16 + a), -(22 + a), 24 + a],
        [p + 12 - 8 * i, -(p + 11 - 8 * i), -(p + 10 - 8 * i), p + 9 - 8 * i],
        [-(p + 17 + 8 * i), p + 18 + 8 * i, p + 19 + 8 * i, -(p + 20 + 8 * i)],
    ])
    B1 = Grid([
        [p + 8 - 8 * i, -(p + 7 - 8 * i), -(p + 6 - 8 * i), p + 5 - 8 * i],
        [-(p + 13 + 8 * i), p + 14 + 8 * i, p + 15 + 8 * i, -(p + 16 + 8 * i)],
        [q + 13 + 8 * i, -(q + 14 + 8 * i), -(q + 15 + 8 * i), q + 16 + 8 * i],
        [-(q + 17 + 8 * i), q + 18 + 8 * i, q + 19 + 8 * i, -(q + 20 + 8 * i)],
        [9 + a, -(11 + a), -(13 + a), 15 + a],
    ])
    return B0, B1


def ihs_4x5_displayed(c: int) -> list[Grid]:
    """The ``5 x 4`` blocks exactly as displayed; :func:`ihs_4x5` transposes them."""
    if c < 1:
        raise ValueError(f"c must be positive, got {c}")
    out = []
    if c % 2 == 0:
        t = (c - 2) // 2
        for i in range(t + 1):
            out.extend(_even_pair(t, i))
    else:
        t = (c - 1) // 2
        out.append(_odd_single(t))
        for i in range(t):
            out.extend(_odd_pair(t, i))
    return out


def ihs_4x5(c: int) -> list[Grid]:
    """An IHS(4,5;c): ``c`` zero-sum ``4 x 5`` blocks with joint support ``[1, 20c]``."""
    return [transpose(b) for b in ihs_4x5_displayed(c)]
