import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heffter import (
    CollisionError,
    Grid,
    HeffterParams,
    IhsParams,
    admissible,
    negate,
    overlay,
    shift,
    transpose,
    verify_heffter,
    verify_ihs,
)
from heffter.core import InadmissibleError, place, require_admissible, stack, verify_zero_sum

from _oracles import naive_admissible, naive_is_heffter


# -- Grid ---------------------------------------------------------------------------


def test_grid_from_rows_uses_none_for_empty():
    g = Grid.from_rows([[1, None, -1], [None, 2, -2]])
    assert g.shape == (2, 3)
    assert g.skeleton() == {(0, 0), (0, 2), (1, 1), (1, 2)}
    assert g.tolist() == [[1, None, -1], [None, 2, -2]]
    assert g.row_counts() == [2, 2] and g.col_counts() == [1, 1, 2]


def test_grid_is_immutable():
    g = Grid([[1, -1]])
    with pytest.raises(ValueError):
        g.array[0, 0] = 5


def test_grid_equality_and_hash():
    a = Grid([[1, -1], [-1, 1]])
    b = Grid.from_cells(2, 2, {(0, 0): 1, (0, 1): -1, (1, 0): -1, (1, 1): 1})
    assert a == b and hash(a) == hash(b)
    assert a != negate(a)


def test_support_is_sorted_absolute_values():
    assert Grid([[3, -1], [-2, 0]]).support() == [1, 2, 3]


# -- parameters -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "m,n,s,k,ok",
    [
        (20, 10, 9, 18, True),
        (8, 8, 5, 5, True),
        (3, 3, 3, 3, False),  # nk = 9 is 1 mod 4
        (4, 4, 3, 3, True),  # nk = 12
        (5, 5, 3, 3, True),  # nk = 15 is 3 mod 4
        (6, 6, 3, 3, False),  # nk = 18 is 2 mod 4
        (4, 6, 3, 2, False),  # k < 3
        (4, 6, 6, 4, True),
        (4, 6, 5, 4, False),  # ms != nk
    ],
)
def test_admissible_examples(m, n, s, k, ok):
    p = HeffterParams(m, n, s, k)
    assert admissible(p) is ok
    assert bool(p.failures()) is not ok


@given(*(st.integers(1, 16) for _ in range(4)))
def test_admissible_agrees_with_naive_oracle(m, n, s, k):
    assert admissible(HeffterParams(m, n, s, k)) == naive_admissible(m, n, s, k)


def test_require_admissible_explains():
    with pytest.raises(InadmissibleError, match="1 mod 4"):
        require_admissible(HeffterParams(3, 3, 3, 3))


def test_params_derived_quantities():
    p = HeffterParams(20, 10, 9, 18)
    assert (p.d, p.s1, p.k1, p.e) == (9, 1, 2, 10)
    assert p.transposed() == HeffterParams(10, 20, 18, 9)
    q = IhsParams(10, 7, 2)
    assert q.admissible() and q.cells == 140
    assert not IhsParams(3, 3, 1).admissible()
    assert IhsParams(3, 4, 1).admissible()


def test_params_reject_nonpositive():
    with pytest.raises(ValueError):
        HeffterParams(0, 3, 3, 3)
    with pytest.raises(ValueError):
        IhsParams(3, 3, 0)


# -- verifier -------------------------------------------------------------------------


def test_ref_h_valid(ref_h):
    assert verify_heffter(ref_h, HeffterParams(20, 10, 9, 18)).valid


def test_perturbed_ref_h_reports_sum_and_support(ref_h):
    a = ref_h.array.copy()
    assert a[0, 0] == 58
    a[0, 0] = 59
    report = verify_heffter(Grid(a), HeffterParams(20, 10, 9, 18))
    assert not report.valid
    assert {"row-sum", "col-sum"} <= report.kinds()
    assert any(k.startswith("support") for k in report.kinds())
    bad_rows = [v.location for v in report.violations if v.kind == "row-sum"]
    assert bad_rows == ["row 1"]


def test_empty_grid_reports_counts():
    report = verify_heffter(Grid.empty(4, 4), HeffterParams(4, 4, 3, 3))
    assert not report.valid
    assert "row-count" in report.kinds() and "col-count" in report.kinds()


def test_shape_mismatch_is_a_finding_not_an_exception(ref_h):
    report = verify_heffter(ref_h, HeffterParams(10, 20, 18, 9))
    assert not report.valid


def test_support_must_be_exactly_one_to_nk():
    # every line vanishes, but 4 is used four times and 1, 2, 3 never
    g = Grid([[4, -4], [-4, 4]])
    assert verify_zero_sum(g).valid
    report = verify_heffter(g, HeffterParams(2, 2, 2, 2))
    assert any(k.startswith("support") for k in report.kinds())


def test_report_to_dict_round_trip():
    report = verify_heffter(Grid.empty(3, 3), HeffterParams(3, 3, 3, 3))
    d = report.to_dict()
    assert d["valid"] is False and len(d["violations"]) == len(report.violations)


def test_ihs_example_valid(example_ihs):
    assert verify_ihs(example_ihs, IhsParams(10, 7, 2)).valid


def test_ihs_single_block():
    block = Grid([[1, 2, -3], [-4, -5, 9]])
    # columns do not vanish
    assert not verify_ihs([block], IhsParams(2, 3, 1)).valid


def test_ihs_duplicated_block_fails_support(example_ihs):
    report = verify_ihs([example_ihs[0], example_ihs[0]], IhsParams(10, 7, 2))
    assert not report.valid
    assert any(k.startswith("support") for k in report.kinds())


def test_ihs_wrong_block_count(example_ihs):
    report = verify_ihs(example_ihs[:1], IhsParams(10, 7, 2))
    assert "block-count" in report.kinds()


def test_ihs_rejects_holes(example_ihs):
    a = example_ihs[0].array.copy()
    a[0, 0] = 0
    report = verify_ihs([Grid(a), example_ihs[1]], IhsParams(10, 7, 2))
    assert "unfilled" in report.kinds()


# -- transforms -----------------------------------------------------------------------


def test_shift_examples():
    g = Grid.from_rows([[1, -3, None], [-2, None, 2]])
    assert shift(g, 10).tolist() == [[11, -13, None], [-12, None, 12]]
    with pytest.raises(ValueError):
        shift(g, 0)


def test_negate_and_transpose_examples():
    g = Grid.from_rows([[1, None], [-2, 3]])
    assert negate(g).tolist() == [[-1, None], [2, -3]]
    assert transpose(g).tolist() == [[1, -2], [None, 3]]


def test_overlay_and_collision():
    a = Grid.from_rows([[1, None], [None, -1]])
    b = Grid.from_rows([[None, 2], [-2, None]])
    assert overlay(a, b).tolist() == [[1, 2], [-2, -1]]
    with pytest.raises(CollisionError, match=r"\(1, 1\)"):
        overlay(a, a)


def test_place_and_stack():
    one = Grid([[1, -1]])
    g = place([(0, 0, one), (1, 2, negate(one))], 2, 4)
    assert g.tolist() == [[1, -1, None, None], [None, None, -1, 1]]
    with pytest.raises(IndexError, match="leaves the 2x4 frame"):
        place([(1, 3, one)], 2, 4)
    with pytest.raises(CollisionError):
        place([(0, 0, one), (0, 1, one)], 2, 4)
    assert stack([one, negate(one)]).tolist() == [[1, -1], [-1, 1]]


# -- properties -----------------------------------------------------------------------


@st.composite
def sparse_grids(draw, max_side=6, max_value=40):
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    cells = draw(st.lists(st.integers(-max_value, max_value), min_size=m * n, max_size=m * n))
    return Grid(np.array(cells, dtype=np.int64).reshape(m, n))


@given(sparse_grids())
def test_transpose_swaps_verification_roles(g):
    m, n = g.shape
    s = max(g.row_counts()[0], 1)
    k = max(g.col_counts()[0], 1)
    p = HeffterParams(m, n, s, k)
    assert verify_heffter(g, p).valid == verify_heffter(transpose(g), p.transposed()).valid


@given(sparse_grids(), st.integers(1, 1000))
def test_shift_preserves_skeleton_and_negate_is_involution(g, alpha):
    assert shift(g, alpha).skeleton() == g.skeleton()
    assert len(g.support()) == len(g.skeleton())
    assert negate(negate(g)) == g
    assert transpose(transpose(g)) == g


@st.composite
def balanced_grids(draw):
    """Grids whose lines each hold as many positive as negative entries."""
    m = draw(st.integers(1, 3))
    n = draw(st.integers(1, 3))
    # a checkerboard of signs on a 2m x 2n full grid is balanced in every line
    mags = draw(st.lists(st.integers(1, 50), min_size=4 * m * n, max_size=4 * m * n))
    a = np.array(mags, dtype=np.int64).reshape(2 * m, 2 * n)
    signs = np.fromfunction(lambda i, j: (-1) ** (i + j), a.shape).astype(np.int64)
    return Grid(a * signs)


@given(balanced_grids(), st.integers(1, 500))
def test_shift_preserves_line_sums_of_balanced_grids(g, alpha):
    assert shift(g, alpha).row_sums() == g.row_sums()
    assert shift(g, alpha).col_sums() == g.col_sums()


@settings(max_examples=50)
@given(st.integers(0, 19), st.integers(0, 9), st.integers(1, 500))
def test_any_single_perturbation_of_ref_h_is_caught(reference_grid, i, j, delta):
    a = reference_grid.array.copy()
    if a[i, j] == 0:
        a[i, j] = delta
    else:
        a[i, j] += delta if a[i, j] > 0 else -delta
    g = Grid(a)
    assert not verify_heffter(g, HeffterParams(20, 10, 9, 18)).valid
    assert not naive_is_heffter(g.tolist(), 20, 10, 9, 18)


@pytest.fixture(scope="module")
def reference_grid():
    from heffter.io import builtin_fixtures_dir, read_grid

    return read_grid(builtin_fixtures_dir() / "reference_H_20_10_9_18.json")


def test_negation_and_transpose_preserve_validity(ref_h):
    p = HeffterParams(20, 10, 9, 18)
    assert verify_heffter(negate(ref_h), p).valid
    assert verify_heffter(transpose(ref_h), p.transposed()).valid


def test_overflow_is_rejected():
    with pytest.raises(OverflowError):
        Grid([[2**63 - 1]])
    p = HeffterParams(2**31, 2**31, 2**31, 2**31)
    assert any("too large" in f for f in p.failures())
    assert any("too large" in f for f in IhsParams(2**21, 2**21, 2**21).failures())
