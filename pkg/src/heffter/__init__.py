"""Integer Heffter arrays H(m,n;s,k) and integer Heffter array sets IHS(m,n;c).

Constructions, an exact verifier and a small exact search engine.
"""

from .core import (
    CollisionError,
    Grid,
    HeffterError,
    HeffterParams,
    IhsParams,
    InadmissibleError,
    UnsupportedError,
    VerifyReport,
    Violation,
    admissible,
    negate,
    overlay,
    shift,
    transpose,
    verify_heffter,
    verify_ihs,
)
from .blocks import IntervalSet, P1, P2, Q1, Q2, Q3, R1, R2, family_A, family_B, ihs_4x5
from .ihs_builder import (
    PartitionPlan,
    build_even_even,
    build_ihs,
    build_m0mod4_n5,
    build_n1,
    build_n3,
    plan_partition,
    shiftable_full,
)
from .heffter_builder import (
    TheoremAPlan,
    build_theorem_A,
    construct,
    diagonal_compose,
    pi_remap,
    pi_unfold,
    shiftable_diagonal,
)
from .solver import SolveOutcome, SolveTask, Status, base_h4N5, probe_open, solve
from .io import read_grid, read_set, write_grid, write_set

__version__ = "0.1.0"
