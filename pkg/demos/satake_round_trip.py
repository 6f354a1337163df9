"""
From an involution to its Satake diagram and back
=================================================

Start from diag(1, -1, -1, -1) acting on the D4 root system, read off its
Satake diagram, then rebuild an involution from the diagram alone.
"""

from lietriad import linalg as la
from lietriad.render import satake_to_text
from lietriad.rootsys import OrthoMap, build_root_system
from lietriad.sigma import (
    delta0,
    find_sigma_fundamental,
    make_sigma,
    reconstruct_sigma,
    restricted_roots,
    satake_diagram,
)

############################################################
# The root system and the involution

rs = build_root_system("D4")
sigma = OrthoMap(la.as_matrix([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]))
ss = make_sigma(rs, sigma)
print(len(rs.roots), "roots,", len(delta0(ss)), "of them sent to their negatives")

############################################################
# A fundamental system adapted to sigma gives the diagram

pi = find_sigma_fundamental(ss)
sd = satake_diagram(ss, pi)
print(satake_to_text(sd))

rr = restricted_roots(ss)
print("restricted roots of type", rr.type, "with multiplicities", rr.multiplicities)

############################################################
# Rebuilding from the diagram lands in the same class

back = reconstruct_sigma(sd)
print(satake_diagram(back, find_sigma_fundamental(back)) == sd)
