"""
Checking an integer Heffter array
=================================

Load the shipped H(20,10;9,18), verify it, then break one entry and read
the verifier's findings.
"""

import numpy as np

from heffter import Grid, HeffterParams, verify_heffter
from heffter.io import builtin_fixtures_dir, read_grid

# every row has 9 filled cells, every column 18, and the absolute values
# run through 1..180 exactly once
g = read_grid(builtin_fixtures_dir() / "reference_H_20_10_9_18.json")
p = HeffterParams(20, 10, 9, 18)
print(g)
print(p, "->", verify_heffter(g, p))

# bump the top-left entry: row 1 and column 1 stop cancelling, 59 appears
# twice and 58 goes missing
a = g.array.copy()
a[0, 0] += 1
report = verify_heffter(Grid(a), p)
print("\nafter the edit:", "valid" if report.valid else "invalid")
for v in report.violations:
    print("  ", v)

# the necessary conditions alone already rule some shapes out
for q in (HeffterParams(3, 3, 3, 3), HeffterParams(5, 5, 3, 3)):
    print(q, "admissible" if q.admissible() else "inadmissible: " + "; ".join(q.failures()))

print("\nrow counts:", np.unique(g.row_counts()), "column counts:", np.unique(g.col_counts()))
