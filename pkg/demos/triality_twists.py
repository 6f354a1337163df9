"""
Triality-twisted pairs in so(8)
===============================

Two involutions of type so(3)+so(5) can sit on so(8) in two inequivalent
ways: directly, or with one of them moved by the order-three outer
automorphism.  The twist changes the rank and the order.
"""

from lietriad.classify import classify_algebra, triad_system
from lietriad.double import core_data, weyl_max_rank
from lietriad.render import double_to_text

############################################################
# Both classes over the pair

report = classify_algebra("so8", ("so3+so5", "so3+so5"))
for t in report.triads:
    print(t.display_name, "rank", t.rank, "order", t.order)
    print(double_to_text(t.diagram))

############################################################
# The rank agrees with a brute-force search over the Weyl group

ds = triad_system("so8", "so3+so5", "so3+so5", "kappa")
print("max over W:", weyl_max_rank(ds))

############################################################
# A core: a few simple roots whose projections span the joint fixed space

core = core_data(ds)
print("core nodes", [i + 1 for i in core.core])
for i in core.core:
    print(f"pr(alpha_{i + 1}) =", " + ".join(
        f"{c}*alpha_{j + 1}" for j, c in enumerate(core.pr_coords[i]) if c))
