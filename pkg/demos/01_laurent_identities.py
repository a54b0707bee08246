"""Walk through the Laurent-polynomial kernel on the default symbol.

The package is organized around one bivariate symbol p and its unit-torus
reflection h.  This script builds both, checks the identities that every
later stage relies on, and shows the exact 2x2 determinant factorization
that drives the hull criterion.
"""

import numpy as np

from hullforge import default_symbol, det2, format_canonical, parse

p = default_symbol()
h = p.reflect()

print("symbol       p =", format_canonical(p))
print("reflection   h =", format_canonical(h))

# On the unit torus, conjugating a point inverts it, so reflecting the
# coefficients and negating the exponents realizes complex conjugation.
rng = np.random.default_rng(0)
s, t = rng.uniform(0, 2 * np.pi, (2, 1000))
z, w = np.exp(1j * s), np.exp(1j * t)
dev = np.max(np.abs(h(z, w) - np.conj(p(z, w))))
print(f"\nmax |h - conj(p)| over 1000 torus points: {dev:.3e}")

# The two symbols are tied by an exact algebraic relation: multiplying h
# by (zw)^2 clears its poles and lands exactly on -p.
zw2 = parse("z^2 * w^2")
print("(zw)^2 h + p  =", format_canonical(zw2 * h + p), " (identically zero)")

# The Jacobian-style determinant det2(p, h) factors over the Gaussian
# integers; the hull criterion works factor by factor on this product.
delta = det2(p, h)
product = parse("-16 * z^-3 * w^-3 * (z - i*w) * (z + i*w)") * p
print("\ndet2(p, h)    =", format_canonical(delta))
print("factored form matches exactly:", delta == product)

# Evaluation guards: negative exponents make the coordinate axes poles.
try:
    h(0.0, 1.0)
except Exception as exc:
    print(f"\nh(0, 1) raises {type(exc).__name__}: {exc}")
