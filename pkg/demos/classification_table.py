"""
A rank and order table
======================

Classify every pair of involutions for a handful of algebras and print the
result as a markdown table.
"""

from lietriad.classify import classify_algebra, to_markdown

algebras = ["su4", "so6", "sp3", "g2", "f4", "e6"]
reports = [classify_algebra(g) for g in algebras]

print(to_markdown(reports))

############################################################
# Non-conjugate pairs only, with their counts

for rep in reports:
    rows = [t for t in rep.triads if t.order > 1]
    print(rep.algebra.name, len(rows), "classes with distinct involutions")
