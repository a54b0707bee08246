"""Compare the symplectic geometry of the two torus graphs.

The graph of Re p over the torus pulls the standard symplectic form of
C^3 back to zero (it is isotropic, hence Lagrangian in dimension two);
the graph of conj(p) does not.  A height shear carries the second graph
onto the first while fixing the attached curve pointwise, so hull
questions migrate between the two models.
"""

import numpy as np

from hullforge import (
    GraphSpec,
    SpacePoint,
    default_symbol,
    distance_to_graph,
    isotropy_defect,
    shear,
    shear_inverse,
)

p = default_symbol()
T = GraphSpec("re", p)
T1 = GraphSpec("conj", p)

flat = isotropy_defect(T, n=256)
twisted = isotropy_defect(T1, n=256)
print(f"pullback of the symplectic form on the Re-graph:   {float(flat):.3e}")
print(f"pullback of the symplectic form on the conj-graph: {float(twisted):.4f}")
print(f"(largest value at angles ({twisted.argmax[0]:.3f}, {twisted.argmax[1]:.3f}) "
      f"of a {twisted.grid_n}^2 grid)")

# Cross-check the analytic pullback against central differences.
fd = isotropy_defect(T1, n=64, method="fd")
an = isotropy_defect(T1, n=64, method="analytic")
print(f"analytic vs finite-difference defect at n=64: {abs(float(fd) - float(an)):.3e}")

# The shear halves the gap between the height and p; on the torus that
# sends conj(p) to Re p exactly, and it is invertible.
rng = np.random.default_rng(0)
s, t = rng.uniform(0, 2 * np.pi, (2, 5))
for si, ti in zip(s, t):
    z, w = np.exp(1j * si), np.exp(1j * ti)
    q = SpacePoint(z, w, np.conj(p(z, w)))
    image = shear(q, p)
    back = shear_inverse(image, p)
    print(f"conj-graph height {q.eta:+.3f} -> {image.eta:+.3f} "
          f"(Re p = {np.real(p(z, w)):+.3f}), inverse restores: "
          f"{abs(back.eta - q.eta):.1e}")

# Euclidean distance from a point to the sampled Re-graph; the second
# point is the standard witness that the hull is strictly larger than
# the graph itself.
for label, point in [
    ("graph point      ", SpacePoint(1.0, 1.0, float(np.real(p(1.0, 1.0))))),
    ("hull witness     ", SpacePoint(0.0, 0.5j, 0.0)),
    ("far outside point", SpacePoint(1.0, 1.0, 5.0)),
]:
    print(f"distance from {label} to the graph: {distance_to_graph(point, T):.6f}")
