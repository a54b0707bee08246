"""Graphs over the unit torus in C^3 and their symplectic geometry.

A graph is the surface (e^{is}, e^{it}, x(s, t)) where the height x is
built from a Laurent symbol p: its real part, its conjugate, the full
complex value, or zero.  The module measures how far such a graph is
from being isotropic for the standard symplectic form, applies the
height shear that carries the conjugate graph onto the real-part graph,
and computes point-to-graph distances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .laurent import LaurentPoly2
from .sampling import torus_angle_grid

__all__ = [
    "HEIGHT_KINDS",
    "SpacePoint",
    "GraphSpec",
    "IsotropyResult",
    "graph_sample",
    "shear",
    "shear_inverse",
    "shear_points",
    "isotropy_defect",
    "distance_to_graph",
]

HEIGHT_KINDS = ("re", "conj", "full", "zero")


@dataclass(frozen=True)
class SpacePoint:
    """Point of C^3 split as (z, w, eta)."""

    z: complex
    w: complex
    eta: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.z, self.w, self.eta], dtype=complex)

    def __iter__(self):
        yield from (self.z, self.w, self.eta)


@dataclass(frozen=True)
class GraphSpec:
    """Height recipe for a graph over the unit torus.

    height "re" graphs Re p, "conj" graphs conj(p), "full" graphs p,
    and "zero" graphs the torus itself at height 0.
    """

    height: str
    symbol: LaurentPoly2 = None

    def __post_init__(self):
        if self.height not in HEIGHT_KINDS:
            raise ValueError(f"unknown height kind {self.height!r}")
        if self.height != "zero" and self.symbol is None:
            raise ValueError("height kind requires a symbol")
        pz = self.symbol.derive("z") if self.symbol is not None else None
        pw = self.symbol.derive("w") if self.symbol is not None else None
        object.__setattr__(self, "_pz", pz)
        object.__setattr__(self, "_pw", pw)

    def symbol_partial_polys(self):
        """The symbol's (d/dz, d/dw) derivative polynomials."""
        if self.symbol is None:
            raise ValueError("zero-height graph has no symbol derivatives")
        return self._pz, self._pw

    def height_at(self, z, w):
        if self.height == "zero":
            return np.zeros(np.broadcast(z, w).shape)
        vals = self.symbol(z, w)
        if self.height == "re":
            return np.real(vals)
        if self.height == "conj":
            return np.conj(vals)
        return vals

    def angle_partials(self, s, t):
        """(d/ds, d/dt) of the height along the torus point (e^{is}, e^{it})."""
        if self.height == "zero":
            zero = np.zeros(np.broadcast(s, t).shape)
            return zero, zero
        z, w = np.exp(1j * np.asarray(s)), np.exp(1j * np.asarray(t))
        dps = 1j * z * self._pz(z, w)
        dpt = 1j * w * self._pw(z, w)
        if self.height == "re":
            return np.real(dps), np.real(dpt)
        if self.height == "conj":
            return np.conj(dps), np.conj(dpt)
        return dps, dpt

    def embed(self, s, t) -> np.ndarray:
        """Stack (z, w, x) for angle arrays into an (..., 3) complex array."""
        z, w = np.exp(1j * np.asarray(s, dtype=float)), np.exp(1j * np.asarray(t, dtype=float))
        x = self.height_at(z, w)
        return np.stack([z, w, np.asarray(x, dtype=complex)], axis=-1)


def graph_sample(spec: GraphSpec, n: int) -> np.ndarray:
    """(n*n, 3) complex samples of the graph on a uniform angle grid."""
    if n < 1:
        raise ValueError("n must be positive")
    ss, tt = torus_angle_grid(n)
    return spec.embed(ss, tt).reshape(-1, 3)


def shear(point: SpacePoint, p: LaurentPoly2) -> SpacePoint:
    """Height shear (z, w, eta) -> (z, w, (eta + p(z, w)) / 2).

    Carries the graph of conj(p) onto the graph of Re p over the torus
    and fixes the points where both eta and p vanish.
    """
    pv = p(point.z, point.w)
    return SpacePoint(point.z, point.w, (point.eta + pv) / 2)


def shear_inverse(point: SpacePoint, p: LaurentPoly2) -> SpacePoint:
    """Inverse of the height shear: eta -> 2*eta - p(z, w)."""
    pv = p(point.z, point.w)
    return SpacePoint(point.z, point.w, 2 * point.eta - pv)


def shear_points(points: np.ndarray, p: LaurentPoly2, inverse: bool = False) -> np.ndarray:
    """Apply the shear (or its inverse) to an (m, 3) complex array."""
    pts = np.array(points, dtype=complex)
    pv = p(pts[:, 0], pts[:, 1])
    if inverse:
        pts[:, 2] = 2 * pts[:, 2] - pv
    else:
        pts[:, 2] = (pts[:, 2] + pv) / 2
    return pts


@dataclass(frozen=True)
class IsotropyResult:
    """Extremes of the pulled-back symplectic form over the angle grid."""

    max_abs: float
    argmax: tuple
    grid_n: int
    method: str

    def __float__(self) -> float:
        return self.max_abs


def _pullback_coefficient(spec: GraphSpec, ss, tt, method: str, fd_step: float):
    """omega(d/ds, d/dt) on the graph; Im(conj(u_k) v_k) summed over C^3.

    The z and w coordinates depend on s and t only separately, so only
    the height contributes; the analytic path uses that directly, while
    the finite-difference path differentiates all three coordinates of
    the embedding as an independent check.
    """
    if method == "analytic":
        xs, xt = spec.angle_partials(ss, tt)
        return np.imag(np.conj(xs) * xt)
    if method != "fd":
        raise ValueError("method must be 'analytic' or 'fd'")
    h = fd_step
    us = (spec.embed(ss + h, tt) - spec.embed(ss - h, tt)) / (2 * h)
    ut = (spec.embed(ss, tt + h) - spec.embed(ss, tt - h)) / (2 * h)
    return np.sum(np.imag(np.conj(us) * ut), axis=-1)


def isotropy_defect(
    spec: GraphSpec,
    n: int = 128,
    method: str = "analytic",
    fd_step: float = 1e-5,
) -> IsotropyResult:
    """Largest absolute pullback of the standard symplectic form.

    Zero (up to tolerance) means the graph is isotropic.  method "fd"
    replaces the analytic angle derivatives with central differences of
    step fd_step so the two paths can be cross-checked.
    """
    ss, tt = torus_angle_grid(n)
    coeff = _pullback_coefficient(spec, ss, tt, method, fd_step)
    flat = np.argmax(np.abs(coeff))
    i, j = np.unravel_index(flat, coeff.shape)
    return IsotropyResult(
        max_abs=float(np.abs(coeff[i, j])),
        argmax=(float(ss[i, j]), float(tt[i, j])),
        grid_n=n,
        method=method,
    )


def distance_to_graph(q, spec: GraphSpec, grid_n: int = 128, n_starts: int = 4) -> float:
    """Minimum Euclidean distance from q to the sampled graph.

    Scans an angle grid for the closest samples and refines the best few
    with derivative-free local descent over (s, t).
    """
    q = q if isinstance(q, SpacePoint) else SpacePoint(*q)
    target = q.as_array()

    ss, tt = torus_angle_grid(grid_n)
    pts = spec.embed(ss, tt)
    d2 = np.sum(np.abs(pts - target) ** 2, axis=-1)

    def objective(v):
        pt = spec.embed(v[0], v[1])
        return float(np.sum(np.abs(pt - target) ** 2))

    flat_order = np.argsort(d2, axis=None)[:n_starts]
    best = float(np.min(d2))
    for flat in flat_order:
        i, j = np.unravel_index(flat, d2.shape)
        res = optimize.minimize(
            objective,
            x0=[ss[i, j], tt[i, j]],
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-24, "maxiter": 600},
        )
        best = min(best, float(res.fun))
    return float(np.sqrt(max(best, 0.0)))
