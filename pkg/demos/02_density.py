"""Maximum average degree, exactly, with a densest subgraph as witness."""
from fractions import Fraction

from edgechroma.density import SparseBuilder, girth_mad_bound, mad, mad_below
from edgechroma.generators import attach_pendants, complete, cube, cycle_join_I2, prism, subdivide_all
from edgechroma.graph import girth

r = mad(cycle_join_I2(7))
print("mad(C7 join I2) =", r.value, "attained on", sorted(r.witness))

# pendant edges never help: the witness is the K4 itself
g = attach_pendants(complete(4), 0, 3)
print("mad(K4 plus leaves) =", mad(g).value, "on", sorted(mad(g).witness))

# the yes/no form is cheaper and explains a "no" with a dense subgraph
chk = mad_below(prism(4), Fraction(8, 3))
print("prism(4) below 8/3?", chk.holds, "witness", sorted(chk.witness))

# planar graphs of girth g have mad < 2g/(g-2), so girth 8 means mad < 8/3
h = subdivide_all(cube(), 1)
print("subdivided cube: girth", girth(h), "bound", girth_mad_bound(girth(h)), "mad", mad(h).value)

# SparseBuilder keeps mad < 8/3 while edges arrive one at a time
sb = SparseBuilder(6, Fraction(8, 3))
kept = [e for e in [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5), (5, 0), (1, 4)] if sb.try_add(*e)]
print("kept", kept)
