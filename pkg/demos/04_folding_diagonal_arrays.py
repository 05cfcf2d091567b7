"""
Folding a diagonal array onto a rectangle
=========================================

An H(20;5) on five cyclic diagonals is folded onto a 10 x 20 frame; a
shiftable companion on four more diagonals, pushed past the folded
support, brings every row to 18 cells and every column to 9.
"""

from heffter import HeffterParams, TheoremAPlan, build_theorem_A, pi_remap, shiftable_diagonal, verify_heffter
from heffter.core import overlay, shift
from heffter.solver import base_h4N5

plan = TheoremAPlan(e=10, s1=2, k1=1, t=1)
print(plan, " base size 4N =", 4 * plan.N)

base = base_h4N5(plan.N)
print("base H(20;5) from the catalog:", verify_heffter(base, HeffterParams(20, 20, 5, 5)))

folded = pi_remap(base, plan)
print("folded rows hold", set(folded.row_counts()), "cells, columns", set(folded.col_counts()))

comp = shiftable_diagonal(plan)
print("companion on residues", plan.companion_residues, "shiftable:", comp.is_shiftable())

L = plan.e * plan.s1 * plan.k1
h = overlay(folded, shift(comp, 5 * L))
p = HeffterParams(10, 20, 18, 9)
print(h)
print(p, "->", verify_heffter(h, p))

# the same thing in one call, and its transpose
print(build_theorem_A(p.transposed()))
