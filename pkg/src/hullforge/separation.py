"""Polynomial separation certificates against sampled graph hulls.

A point q is certified outside the polynomial hull of a target surface
by exhibiting a polynomial P on C^3 with |P| <= 1 on a dense sample of
the surface while |P(q)| clears 1 by a margin.  The search maximizes
Re P(q) under the sampled sup-norm constraint with a penalized
quasi-Newton ascent over a per-degree scaled monomial basis, then
validates the winner on an independent, four-times-denser sample.

Certificates are evidence, not proofs: they depend on sampling density
and the margin; reports must flag them as heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import linalg, optimize

from .geometry import GraphSpec, SpacePoint
from .laurent import LaurentPoly2
from .sampling import golden_disc, random_torus
from .variety import RationalFunction, VarietyChart, trace_variety

__all__ = [
    "MAX_DEGREE",
    "SeparationCertificate",
    "SeparationOutcome",
    "MembershipCertificate",
    "separate",
    "certify_membership",
    "outside_panel",
]

MAX_DEGREE = 12


def monomial_exponents(degree: int) -> tuple:
    """All (a, b, c) with a + b + c <= degree, in lexicographic order."""
    return tuple(
        (a, b, c)
        for a in range(degree + 1)
        for b in range(degree + 1 - a)
        for c in range(degree + 1 - a - b)
    )


def _monomial_matrix(points: np.ndarray, exponents) -> np.ndarray:
    """Rows of monomial values z^a w^b eta^c at the given (m, 3) points."""
    deg = max(max(e) for e in exponents)
    pows = []
    for col in range(3):
        v = points[:, col]
        table = np.empty((len(points), deg + 1), dtype=complex)
        table[:, 0] = 1.0
        for d in range(1, deg + 1):
            table[:, d] = table[:, d - 1] * v
        pows.append(table)
    ea = np.array([e[0] for e in exponents])
    eb = np.array([e[1] for e in exponents])
    ec = np.array([e[2] for e in exponents])
    return pows[0][:, ea] * pows[1][:, eb] * pows[2][:, ec]


@dataclass(frozen=True)
class SeparationCertificate:
    """Witness polynomial separating a point from a sampled hull."""

    point: SpacePoint
    degree: int
    exponents: tuple
    coefficients: np.ndarray  # raw monomial coefficients
    train_ratio: float
    validated_ratio: float
    n_train: int
    n_validation: int
    margin: float

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Value of the witness polynomial at (m, 3) complex points."""
        return _monomial_matrix(np.asarray(points, dtype=complex), self.exponents) @ self.coefficients

    def ratio_against(self, sample_points: np.ndarray) -> float:
        """|P(q)| over the sampled sup-norm on an arbitrary point set."""
        sup = float(np.max(np.abs(self.evaluate(sample_points))))
        val = abs(complex(self.evaluate(self.point.as_array()[None, :])[0]))
        return val / max(sup, 1e-300)


@dataclass
class SeparationOutcome:
    """Result of a separation attempt (certificate or best failed ratio)."""

    separated: bool
    point: SpacePoint
    degree: int
    best_ratio: float
    certificate: SeparationCertificate = None
    restarts_used: int = 0
    margin: float = 0.05

    def __bool__(self) -> bool:
        return self.separated


def _penalized(v, phi_q, Phi, mu):
    m = Phi.shape[1]
    c = v[:m] + 1j * v[m:]
    u = Phi @ c
    slack = np.abs(u) ** 2 - 1.0
    g = np.maximum(slack, 0.0)
    target = phi_q @ c
    val = -target.real + 0.25 * mu * float(np.sum(g * g))
    s = Phi.T @ (g * np.conj(u))
    grad = np.concatenate(
        [-phi_q.real + mu * s.real, phi_q.imag - mu * s.imag]
    )
    return val, grad


def _rescaled_ratio(c, phi_q, Phi):
    sup = float(np.max(np.abs(Phi @ c)))
    if sup <= 1e-300:
        return None, 0.0
    c = c / sup
    return c, abs(complex(phi_q @ c))


@lru_cache(maxsize=2)
def _training_bundle(target: GraphSpec, degree: int, n_train: int, seed: int):
    """Sampled target matrices shared by every point queried against it.

    Returns (exponents, column scales, scaled train matrix, scaled
    validation matrix, Cholesky factor of the regularized Gram matrix).
    """
    train_rng, val_rng = [
        np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2)
    ]
    train = target.embed(*random_torus(n_train, train_rng))
    validation = target.embed(*random_torus(4 * n_train, val_rng))
    exponents = monomial_exponents(degree)
    m = len(exponents)
    Phi_raw = _monomial_matrix(train, exponents)
    scales = np.maximum(np.max(np.abs(Phi_raw), axis=0), 1e-300)
    Phi = Phi_raw / scales
    Phi_val = _monomial_matrix(validation, exponents) / scales
    gram = Phi.conj().T @ Phi
    eps = 1e-10 * max(np.trace(gram).real / m, 1e-30)
    cho = linalg.cho_factor(gram + eps * np.eye(m))
    return exponents, scales, Phi, Phi_val, cho


def separate(
    point,
    target: GraphSpec,
    degree: int = 8,
    n_train: int = 10000,
    margin: float = 0.05,
    restarts: int = 8,
    seed: int = 0,
    max_inner: int = 120,
    warm: SeparationCertificate = None,
) -> SeparationOutcome:
    """Search for a polynomial separating ``point`` from the target hull.

    The target surface is sampled at ``n_train`` random points (at least
    10^4) and the witness search maximizes Re P(q) subject to |P| <= 1
    on the sample, via penalty continuation under L-BFGS from a
    least-squares warm start plus random restarts.  A candidate is
    accepted only if its ratio on an independent sample of size
    ``4 * n_train`` still clears ``1 + margin``.  ``warm`` seeds the
    search with a certificate from a lower degree, which makes the best
    achieved ratio nondecreasing as the degree grows.
    """
    if not 1 <= degree <= MAX_DEGREE:
        raise ValueError(f"degree must be between 1 and {MAX_DEGREE}")
    if n_train < 10**4:
        raise ValueError("target must be sampled at >= 10^4 points")
    q = point if isinstance(point, SpacePoint) else SpacePoint(*point)

    exponents, scales, Phi, Phi_val, cho = _training_bundle(target, degree, n_train, seed)
    m = len(exponents)
    phi_q = _monomial_matrix(q.as_array()[None, :], exponents)[0] / scales

    inits = []
    if warm is not None:
        prev = dict(zip(warm.exponents, warm.coefficients))
        c0 = np.array([prev.get(e, 0j) for e in exponents]) * scales
        inits.append(c0)
    # the regularized least-squares direction maximizes the target value
    # against the sampled norm and is usually the decisive start
    inits.append(linalg.cho_solve(cho, np.conj(phi_q)))
    norm = np.linalg.norm(phi_q)
    if norm > 0:
        inits.append(np.conj(phi_q) / norm)
    rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(3)[2])
    while len(inits) < restarts:
        inits.append(
            rng.standard_normal(m) + 1j * rng.standard_normal(m)
        )

    best_ratio = 0.0
    best_cert = None
    used = 0

    def consider(c, train_ratio):
        nonlocal best_ratio, best_cert
        sup_val = float(np.max(np.abs(Phi_val @ c)))
        val_ratio = abs(complex(phi_q @ c)) / max(sup_val, 1e-300)
        ratio = min(train_ratio, val_ratio)
        if ratio > best_ratio:
            best_ratio = ratio
            best_cert = SeparationCertificate(
                point=q,
                degree=degree,
                exponents=exponents,
                coefficients=c / scales,
                train_ratio=train_ratio,
                validated_ratio=val_ratio,
                n_train=n_train,
                n_validation=4 * n_train,
                margin=margin,
            )
        return ratio

    for c0 in inits:
        used += 1
        c, train_ratio = _rescaled_ratio(c0, phi_q, Phi)
        if c is None:
            continue
        # an init that already clears the margin on both samples needs
        # no penalized polish
        if train_ratio >= 1 + margin and consider(c, train_ratio) >= 1 + margin:
            break
        v = np.concatenate([c.real, c.imag])
        for mu in (1e2, 1e4, 1e6):
            res = optimize.minimize(
                _penalized,
                v,
                args=(phi_q, Phi, mu),
                jac=True,
                method="L-BFGS-B",
                options={"maxiter": max_inner, "ftol": 1e-16, "gtol": 1e-12},
            )
            v = res.x
        c = v[:m] + 1j * v[m:]
        c, train_ratio = _rescaled_ratio(c, phi_q, Phi)
        if c is None:
            continue
        consider(c, train_ratio)
        if best_ratio >= 1 + margin:
            break

    separated = best_ratio >= 1 + margin
    return SeparationOutcome(
        separated=separated,
        point=q,
        degree=degree,
        best_ratio=best_ratio,
        certificate=best_cert if separated else None,
        restarts_used=used,
        margin=margin,
    )


@dataclass(frozen=True)
class MembershipCertificate:
    """Residuals showing a point sits on the variety graph inside the bidisc."""

    point: SpacePoint
    variety_residual: float
    height_residual: float
    boundary_in_T_residual: float
    bidisc_excess: float
    tolerance: float = 1e-8

    @property
    def certified(self) -> bool:
        return (
            self.variety_residual <= self.tolerance
            and self.height_residual <= self.tolerance
            and self.boundary_in_T_residual <= self.tolerance
            and self.bidisc_excess <= self.tolerance
        )

    def __bool__(self) -> bool:
        return self.certified


def _lift_residual_from_chart(p: LaurentPoly2, chart: VarietyChart) -> float:
    """Max distance from the lifted variety boundary to the height graph.

    The lift of a boundary point (z, w) is (z, w, p(z, w)); the graph point
    over the torus projection (z/|z|, w/|w|) bounds the distance to the
    graph as a set from above.
    """
    worst = 0.0
    for loop in chart.boundary_loops:
        z, w = loop[:, 0], loop[:, 1]
        zt, wt = z / np.abs(z), w / np.abs(w)
        gap = np.sqrt(
            np.abs(z - zt) ** 2
            + np.abs(w - wt) ** 2
            + np.abs(p(z, w) - np.real(p(zt, wt))) ** 2
        )
        worst = max(worst, float(gap.max()))
    return worst


@lru_cache(maxsize=4)
def _boundary_lift_residual(p: LaurentPoly2, r: RationalFunction) -> float:
    chart = trace_variety(r, n_interior=16, n_boundary=1024)
    return _lift_residual_from_chart(p, chart)


def certify_membership(
    point,
    p: LaurentPoly2,
    r: RationalFunction,
    chart: VarietyChart | None = None,
    tolerance: float = 1e-8,
) -> MembershipCertificate:
    """Residual check that a point lies on the graph of p over w^2 = r(z).

    Large residuals are the verdict; nothing is raised.  The boundary
    residual (how far the lifted edge of the variety sits from the torus
    graph) is a property of the pair (p, r); it is traced once and cached
    unless an explicit chart is supplied.
    """
    q = point if isinstance(point, SpacePoint) else SpacePoint(*point)
    variety_res = abs(q.w**2 - r(q.z))
    height_res = abs(q.eta - p(q.z, q.w))
    if chart is None:
        boundary_res = _boundary_lift_residual(p, r)
    else:
        boundary_res = _lift_residual_from_chart(p, chart)
    excess = max(0.0, abs(q.z) - 1.0, abs(q.w) - 1.0)
    return MembershipCertificate(
        point=q,
        variety_residual=float(variety_res),
        height_residual=float(height_res),
        boundary_in_T_residual=float(boundary_res),
        bidisc_excess=float(excess),
        tolerance=tolerance,
    )


def outside_panel(
    p: LaurentPoly2,
    r: RationalFunction,
    count: int = 50,
    seed: int = 0,
    offset: float = 0.5,
) -> list:
    """Deterministic panel of points straying off the hull of the graph.

    Half the points sit over the torus at the graph height shifted by
    +-offset; the rest sit at height 0 over interior z with w scaled off
    the variety sheet (staying inside the bidisc and away from branch
    points).
    """
    rng = np.random.default_rng(seed)
    n_torus = count // 2
    points = []
    s, t = random_torus(n_torus, rng)
    z, w = np.exp(1j * s), np.exp(1j * t)
    heights = np.real(p(z, w))
    for i in range(n_torus):
        sign = 1 if i % 2 == 0 else -1
        points.append(SpacePoint(complex(z[i]), complex(w[i]), complex(heights[i] + sign * offset)))

    zs = golden_disc(4 * (count - n_torus), r_max=0.9)
    added = 0
    for zv in zs:
        if added >= count - n_torus:
            break
        rv = complex(r(zv))
        if abs(rv) < 1e-3:
            continue
        w_true = np.sqrt(rv)
        scale = 1.8 if 1.8 * abs(w_true) <= 0.95 else 0.55
        points.append(SpacePoint(complex(zv), complex(scale * w_true), 0j))
        added += 1
    return points
