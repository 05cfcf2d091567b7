"""
Integer Heffter array sets
==========================

Build IHS(10,7;2) from the two block families and the templates, check it
against the transcribed example, then compose sets into Heffter arrays.
"""

import numpy as np

from heffter import HeffterParams, IhsParams, build_ihs, diagonal_compose, plan_partition, verify_heffter, verify_ihs
from heffter.ihs_builder import route_ihs
from heffter.io import builtin_fixtures_dir, read_set

p = IhsParams(10, 7, 2)
plan = plan_partition(p)
# the values the families leave free are cut into progressions
print("F:", ", ".join(map(str, plan.F)))
print("G:", ", ".join(map(str, plan.G)))
print("H:", ", ".join(map(str, plan.H)))

blocks = build_ihs(p)
for g in blocks:
    print(g, "\n")
print(p, "->", verify_ihs(blocks, p))

known = read_set(builtin_fixtures_dir() / "example_IHS_10_7_2.json")
print("matches the transcription:", all(np.array_equal(a.array, b.array) for a, b in zip(blocks, known)))

# other shapes take other routes
for q in (IhsParams(6, 9, 2), IhsParams(8, 5, 3), IhsParams(6, 8, 4), IhsParams(7, 10, 2)):
    print(f"{q}: {route_ihs(q):22s}", verify_ihs(build_ihs(q), q))

# c blocks of an IHS(k,s;c) down the diagonal give an H(ck,cs;s,k)
h = diagonal_compose(blocks)
print("\ncomposed", h, "->", verify_heffter(h, HeffterParams(20, 14, 7, 10)))
