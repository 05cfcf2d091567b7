"""
Zero-sum building blocks
========================

Two families of 2 x 3 blocks and the 4 x 4, 6 x 4 and 6 x 6 templates that
every odd-sided IHS construction is stitched from.
"""

from heffter import IntervalSet, P1, Q2, family_A, family_B

# family A: rows vanish, columns sum to (-2, 1, 1)
for b in family_A(1, 11, 2):
    print(b, "\n  column sums", b.col_sums())

# family B comes in pairs; columns sum to (-4, 2, 2)
a, b = family_B(11, 1)
print(a, "\n", b)

# stacking X from A on top of -X cancels columns too: that is how the
# first three columns of every array are filled

# templates take arithmetic progressions: X = 4 evens, Y = 4 consecutive,
# Z = 8 consecutive
X = [IntervalSet(2 + 8 * i, 4, 2) for i in range(4)]
g = P1(*X)
print("\nP1 on", ", ".join(map(str, X)))
print(g)
print("shiftable:", g.is_shiftable(), " support:", g.support())

q = Q2(IntervalSet(2, 4, 2), IntervalSet(11, 4), IntervalSet(15, 4), IntervalSet(19, 4), IntervalSet(23, 8))
print("\nQ2:")
print(q)
print("row sums", q.row_sums(), "column sums", q.col_sums())
