"""Naive reference checks, written without numpy or the package's verifier."""


def lines(rows):
    cols = [list(c) for c in zip(*rows)]
    return rows, cols


def naive_is_heffter(rows, m, n, s, k):
    """rows: list of lists with None for empty cells."""
    if len(rows) != m or any(len(r) != n for r in rows):
        return False
    rws, cls = lines(rows)
    for r in rws:
        vals = [x for x in r if x is not None]
        if len(vals) != s or sum(vals) != 0:
            return False
    for c in cls:
        vals = [x for x in c if x is not None]
        if len(vals) != k or sum(vals) != 0:
            return False
    absolute = sorted(abs(x) for r in rows for x in r if x is not None)
    return absolute == list(range(1, n * k + 1))


def naive_is_ihs(arrays, m, n, c):
    if len(arrays) != c:
        return False
    absolute = []
    for a in arrays:
        if len(a) != m or any(len(r) != n for r in a):
            return False
        if any(x is None for r in a for x in r):
            return False
        if any(sum(r) != 0 for r in a) or any(sum(col) != 0 for col in zip(*a)):
            return False
        absolute += [abs(x) for r in a for x in r]
    return sorted(absolute) == list(range(1, m * n * c + 1))


def row_sums(rows):
    return [sum(x for x in r if x is not None) for r in rows]


def col_sums(rows):
    return [sum(x for x in c if x is not None) for c in zip(*rows)]


def progression(a, b, q=1):
    """The set [a, b]_q."""
    return set(range(a, b + 1, q))


def naive_admissible(m, n, s, k):
    """Necessary conditions for an integer H(m,n;s,k), restated from scratch."""
    return (
        m * s == n * k
        and 3 <= s <= n
        and 3 <= k <= m
        and (n * k) % 4 in (0, 3)
    )
