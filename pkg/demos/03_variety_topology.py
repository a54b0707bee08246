"""Trace the double cover w^2 = r(z) and read off its topology.

The attached piece of the hull lives on an algebraic curve over the unit
disc.  Tracing it numerically gives branch points, boundary loops on the
torus, and the Euler characteristic / genus via the cover combinatorics,
all of which should be stable when the mesh is refined.
"""

import numpy as np

from hullforge import (
    containment_check,
    default_symbol,
    residual_on_variety,
    trace_variety,
)
from hullforge.variety import RationalFunction

r = RationalFunction((-1.0, 0.0, 4.0), (4.0, 0.0, -1.0))
print("ratio r(z) =", r)

chart = trace_variety(r)
print("\nbranch points inside the disc:", [complex(b) for b in chart.branch_points])
print("boundary loops on the torus:  ", chart.boundary_count)
print("connected components:         ", chart.n_components)
print("euler characteristic:         ", chart.euler_char)
print("genus:                        ", chart.genus)

# Refining the mesh four-fold must not change any topological output.
refined = trace_variety(r, refine=4)
same = (
    refined.boundary_count == chart.boundary_count
    and refined.euler_char == chart.euler_char
    and refined.genus == chart.genus
)
print("\ntopology stable under 4x refinement:", same)

# The default symbol vanishes identically on this curve; that is what
# makes the curve's bidisc part a candidate piece of the hull.
p = default_symbol()
print(f"max |p| over {len(chart.all_points())} curve samples: "
      f"{residual_on_variety(p, chart):.3e}")

# Containment of the curve in the closed bidisc reduces to a scalar
# inequality along the branch data; the checker also reports how close
# the boundary loops come to the torus.
result = containment_check(r)
print("\ncurve stays inside the closed bidisc:", result.contained)
print(f"max boundary modulus: {result.max_modulus:.12f}")

# Interior samples really live on the curve: w^2 - r(z) vanishes.
alg = np.max(np.abs(chart.interior_w**2 - r(chart.interior_z)))
print(f"max |w^2 - r(z)| over interior samples: {alg:.3e}")
