"""Certify hull membership and try to disprove it by separation.

Membership in the attached piece is certified by four residuals: the
point solves the curve equation, sits at the right height, stays inside
the bidisc, and the piece's boundary really lies on the torus graph.
The complementary tool searches for a polynomial whose modulus at the
point beats its sup over graph samples; success proves the point is NOT
in the hull, so the two tools must never both fire.
"""

from hullforge import (
    GraphSpec,
    SpacePoint,
    certify_membership,
    default_symbol,
    outside_panel,
    separate,
)
from hullforge.variety import RationalFunction

p = default_symbol()
r = RationalFunction((-1.0, 0.0, 4.0), (4.0, 0.0, -1.0))
T = GraphSpec("re", p)

witness = SpacePoint(0.0, 0.5j, 0.0)
cert = certify_membership(witness, p, r)
print("witness point (0, i/2, 0)")
print(f"  curve residual:        {cert.variety_residual:.3e}")
print(f"  height residual:       {cert.height_residual:.3e}")
print(f"  boundary-on-graph gap: {cert.boundary_in_T_residual:.3e}")
print(f"  bidisc excess:         {cert.bidisc_excess:.3e}")
print(f"  certified: {cert.certified}")

# Separation must fail on a certified hull point: every polynomial's
# modulus there is dominated by its sup over the graph.
attempt = separate(witness, T, degree=8, restarts=2, seed=0)
print(f"\nseparation attempt on the witness: separated={attempt.separated}, "
      f"best ratio {attempt.best_ratio:.6f}")

# Nudging the same point off the curve breaks certification, and now a
# degree-8 polynomial separates it with a validated margin.
off = SpacePoint(0.0, 0.9j, 0.0)
off_cert = certify_membership(off, p, r)
outcome = separate(off, T, degree=8, seed=0)
print(f"\nnudged point (0, 0.9i, 0): curve residual {off_cert.variety_residual:.2f}, "
      f"certified={off_cert.certified}")
print(f"separation: separated={outcome.separated}, ratio {outcome.best_ratio:.3e}, "
      f"degree {outcome.certificate.degree}")

# A deterministic panel of off-hull points, all separated the same way.
panel = outside_panel(p, r, count=6, seed=0)
print("\npanel of off-hull points:")
for q in panel:
    out = separate(q, T, degree=8, restarts=2, seed=0)
    print(f"  ({q.z:.2f}, {q.w:.2f}, {q.eta:.2f}) -> "
          f"separated={out.separated}, ratio {out.best_ratio:.3e}")
