"""Acceptance criteria 1-8, exact (tolerance zero)."""

import itertools
import subprocess
import sys
import time
from math import gcd

import numpy as np
import pytest

from heffter import (
    Grid,
    HeffterParams,
    IhsParams,
    InadmissibleError,
    TheoremAPlan,
    UnsupportedError,
    admissible,
    build_even_even,
    build_m0mod4_n5,
    build_n1,
    build_n3,
    build_theorem_A,
    construct,
    diagonal_compose,
    family_A,
    family_B,
    ihs_4x5,
    pi_remap,
    shiftable_diagonal,
    solve,
    verify_heffter,
    verify_ihs,
)
from heffter.core import overlay, shift
from heffter.io import dumps_grid
from heffter.solver import SolveTask, Status, base_skeleton, split_blocks

from _oracles import naive_admissible, naive_is_heffter, naive_is_ihs, progression


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _abs_support(grids):
    return sorted(abs(int(x)) for g in grids for x in g.array.ravel() if x)


# -- 1 ------------------------------------------------------------------------------


@pytest.mark.criterion(1, "fixture certification")
def test_criterion_1_fixtures(ref_h, example_ihs):
    with Timer() as t:
        p = HeffterParams(20, 10, 9, 18)
        assert verify_heffter(ref_h, p).valid
        sup = _abs_support([ref_h])
        # one representative of each pair {x, -x}, all inside [1, 2nk]
        assert len(sup) == len(set(sup)) == p.n * p.k
        assert set(sup) <= progression(1, 360)
        assert naive_is_heffter(ref_h.tolist(), 20, 10, 9, 18)

        q = IhsParams(10, 7, 2)
        assert verify_ihs(example_ihs, q).valid
        sup = _abs_support(example_ihs)
        assert len(sup) == len(set(sup)) == 140
        assert set(sup) <= progression(1, 280)
        assert naive_is_ihs([g.tolist() for g in example_ihs], 10, 7, 2)
    assert t.elapsed < 1


# -- 2 ------------------------------------------------------------------------------


@pytest.mark.criterion(2, "worked example reproduction")
def test_criterion_2_worked_example(example_ihs):
    with Timer() as t:
        built = build_n3(IhsParams(10, 7, 2))
    assert t.elapsed < 1
    assert len(built) == 2
    for mine, theirs in zip(built, example_ihs):
        assert np.array_equal(mine.array, theirs.array)


# -- 3 ------------------------------------------------------------------------------


def _col_sums(g):
    rows = g.tolist()
    return tuple(sum(r[j] for r in rows) for j in range(3))


def _row_sums(g):
    return tuple(sum(r) for r in g.tolist())


@pytest.mark.criterion(3, "block family exactness")
def test_criterion_3_block_families():
    rng = np.random.default_rng(20240101)
    with Timer() as t:
        for _ in range(200):
            alpha = int(rng.integers(1, 60))
            u = int(rng.integers(1, 12))
            beta = alpha + 6 * u - 2 + int(rng.integers(0, 80))
            blocks = family_A(alpha, beta, u)
            assert len(blocks) == u
            for b in blocks:
                assert b.shape == (2, 3) and len(b.skeleton()) == 6
                assert _row_sums(b) == (0, 0)
                assert _col_sums(b) == (-2, 1, 1)
            want = (
                list(range(alpha, alpha + 4 * u - 1, 2))
                + list(range(beta - 2 * u + 1, beta + 1))
                + list(range(alpha + beta, alpha + beta + 2 * u))
            )
            assert _abs_support(blocks) == sorted(want)

            u = int(rng.integers(1, 12))
            beta = 12 * u - 1 + int(rng.integers(0, 80))
            blocks = family_B(beta, u)
            assert len(blocks) == 2 * u
            for b in blocks:
                assert _row_sums(b) == (0, 0)
                assert _col_sums(b) == (-4, 2, 2)
            want = list(range(1, 8 * u, 2)) + list(range(beta - 4 * u + 1, beta + 4 * u + 1))
            assert _abs_support(blocks) == sorted(want)
    assert t.elapsed < 5


# -- 4 and 5 --------------------------------------------------------------------------


def _sweep():
    """Every IHS the sweep builds, as ((m, n, c), blocks)."""
    out = [((4, 5, c), ihs_4x5(c)) for c in range(1, 51)]
    for m, n, c in itertools.product((6, 10, 14, 18), (7, 9, 11, 13), (2, 4, 6)):
        p = IhsParams(m, n, c)
        if p.admissible():
            out.append(((m, n, c), build_n3(p) if n % 4 == 3 else build_n1(p)))
    for m, n, c in itertools.product((4, 6, 8, 10), (4, 6, 8, 10), range(1, 6)):
        p = IhsParams(m, n, c)
        if p.admissible():
            out.append(((m, n, c), build_even_even(p)))
    for m, c in itertools.product((4, 8, 12, 16), range(1, 7)):
        out.append(((m, 5, c), build_m0mod4_n5(m, c)))
    return out


@pytest.fixture(scope="module")
def sweep():
    with Timer() as t:
        built = _sweep()
    return built, t.elapsed


@pytest.mark.criterion(4, "IHS sweep")
def test_criterion_4_ihs_sweep(sweep):
    built, build_time = sweep
    with Timer() as t:
        for (m, n, c), blocks in built:
            report = verify_ihs(blocks, IhsParams(m, n, c))
            assert report.valid, f"IHS({m},{n};{c}):\n{report}"
    # every odd-n tuple of the grid is admissible, so nothing was skipped there
    assert sum(1 for (m, n, _), _b in built if n in (7, 9, 11, 13)) == 48
    assert build_time + t.elapsed < 30


@pytest.mark.criterion(5, "composition")
def test_criterion_5_composition(sweep):
    built, _ = sweep
    with Timer() as t:
        for (k, s, c), blocks in built:
            g = diagonal_compose(blocks)
            p = HeffterParams(c * k, c * s, s, k)
            assert g.shape == (c * k, c * s)
            report = verify_heffter(g, p)
            assert report.valid, f"{p}:\n{report}"
    assert t.elapsed < 10


# -- 6 ------------------------------------------------------------------------------


def _plans(max_rows_cols=100):
    for e in range(6, max_rows_cols + 1):
        for s1 in range(1, 7):
            for k1 in range(1, 7, 2):
                if gcd(s1, k1) != 1 or (e * s1 * k1) % 4 or e * max(s1, k1) > max_rows_cols:
                    continue
                t = 0
                while 5 + 4 * t < e or t == 0:
                    yield TheoremAPlan(e, s1, k1, t)
                    t += 1


@pytest.mark.criterion(6, "Theorem A pipeline at desk scale")
def test_criterion_6_solver_finds_base():
    out = solve(SolveTask(8, 8, base_skeleton(2), seed=0, budget_ms=600_000))
    assert out.status is Status.FOUND
    assert verify_heffter(out.grid, HeffterParams(8, 8, 5, 5)).valid
    assert out.grid.skeleton() == base_skeleton(2)
    # the fold with e = 8, s1 = k1 = 1 is the identity
    assert pi_remap(out.grid, TheoremAPlan(8, 1, 1)) == out.grid


@pytest.mark.criterion(6, "Theorem A pipeline at desk scale")
def test_criterion_6_h_12_12_9_9():
    g = build_theorem_A(HeffterParams(12, 12, 9, 9))
    assert verify_heffter(g, HeffterParams(12, 12, 9, 9)).valid
    assert naive_is_heffter(g.tolist(), 12, 12, 9, 9)


@pytest.mark.criterion(6, "Theorem A pipeline at desk scale")
def test_criterion_6_fold_and_companion_never_collide():
    # runtime assertions in pi_remap and overlay raise CollisionError on any clash
    count = 0
    for plan in _plans():
        skel = base_skeleton(plan.N)
        dummy = Grid.from_cells(4 * plan.N, 4 * plan.N, {cell: 1 for cell in skel})
        folded = pi_remap(dummy, plan)
        assert len(folded.skeleton()) == len(skel)
        if plan.t:
            comp = shiftable_diagonal(plan)
            both = overlay(folded, shift(comp, 5 * plan.e * plan.s1 * plan.k1))
            assert len(both.skeleton()) == len(folded.skeleton()) + len(comp.skeleton())
        count += 1
    assert count > 300


@pytest.mark.criterion(6, "Theorem A pipeline at desk scale")
def test_criterion_6_full_pipeline_on_catalog_bases():
    built = 0
    for plan in _plans(40):
        if plan.N > 5:
            continue
        p = HeffterParams(plan.rows, plan.cols, plan.d * plan.s1, plan.d * plan.k1)
        for q in (p, p.transposed()):
            g = build_theorem_A(q)
            assert verify_heffter(g, q).valid
            built += 1
    assert built >= 20


# -- 7 ------------------------------------------------------------------------------


@pytest.mark.criterion(7, "solver soundness and exhaustiveness")
def test_criterion_7_two_by_two_infeasible():
    for seed in (None, 0, 1, 7):
        out = solve(SolveTask.full(2, 2, seed=seed, budget_ms=10_000))
        assert out.status is Status.INFEASIBLE


@pytest.mark.criterion(7, "solver soundness and exhaustiveness")
def test_criterion_7_found_outputs_verify():
    def heffter(m, n, s, k):
        return lambda g: verify_heffter(g, HeffterParams(m, n, s, k)).valid

    def ihs(m, n, c):
        return lambda g: verify_ihs(split_blocks(g, m, n, c), IhsParams(m, n, c)).valid

    cases = [
        (SolveTask(8, 8, base_skeleton(2), seed=3), heffter(8, 8, 5, 5)),
        (SolveTask(12, 12, base_skeleton(3), seed=None), heffter(12, 12, 5, 5)),
        (SolveTask.full(4, 5, seed=1), ihs(4, 5, 1)),
        (SolveTask.block_diagonal(7, 5, 1, seed=0), ihs(7, 5, 1)),
        (SolveTask.block_diagonal(4, 4, 2, seed=0), ihs(4, 4, 2)),
    ]
    for task, check in cases:
        out = solve(task)
        assert out.found, task
        assert out.grid.skeleton() == task.skeleton
        assert check(out.grid)


@pytest.mark.criterion(7, "solver soundness and exhaustiveness")
def test_criterion_7_seed_determinism(tmp_path):
    for seed in (0, 5):
        a = solve(SolveTask(12, 12, base_skeleton(3), seed=seed))
        b = solve(SolveTask(12, 12, base_skeleton(3), seed=seed))
        assert dumps_grid(a.grid).encode() == dumps_grid(b.grid).encode()
    cmd = [sys.executable, "-m", "heffter", "search", "--base", "2", "--seed", "4"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


# -- 8 ------------------------------------------------------------------------------


@pytest.mark.criterion(8, "dispatcher honesty")
def test_criterion_8_dispatcher_scan():
    counts = {"inadmissible": 0, "built": 0, "unsupported": 0}
    with Timer() as t:
        for m, n, s, k in itertools.product(range(1, 13), repeat=4):
            p = HeffterParams(m, n, s, k)
            expected = naive_admissible(m, n, s, k)
            assert admissible(p) == expected, p
            try:
                g = construct(m, n, s, k, budget_ms=60_000)
            except InadmissibleError:
                assert not expected, p
                counts["inadmissible"] += 1
                continue
            except UnsupportedError:
                assert expected, p
                counts["unsupported"] += 1
                continue
            assert expected, p
            report = verify_heffter(g, p)
            assert report.valid, f"{p}:\n{report}"
            assert naive_is_heffter(g.tolist(), m, n, s, k)
            counts["built"] += 1
    assert t.elapsed < 60
    assert sum(counts.values()) == 12**4
    assert counts["built"] > 0
