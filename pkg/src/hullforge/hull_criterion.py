"""Determinant test for polynomial hulls of graphs over the unit torus.

Given a Laurent symbol ``p``, the graph of its real part over the unit
torus has a hull controlled by the reflected symbol
``h(z, w) = conj(p)(1/z, 1/w)`` and the Jacobian-style determinant

    delta = det [[dp/dz, dp/dw], [dh/dz, dh/dw]].

Each irreducible factor of ``delta`` cuts a curve on the torus; factors
whose curve bounds an analytic piece inside the bidisc, and whose piece
lies where ``h`` agrees with ``conj(p)``, contribute that piece (graphed
under ``p``) to the hull.  This module traces the factor curves, builds
the candidate pieces, checks the agreement condition, and assembles the
final hull description.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly2, det2
from .sampling import golden_disc
from .variety import RationalFunction

__all__ = [
    "DegenerateSymbolError",
    "UnsupportedFactorError",
    "FactorizationError",
    "TorusCurve",
    "HullCandidate",
    "VConditionResult",
    "FactorVerdict",
    "HullReport",
    "build_criterion_data",
    "infer_unit",
    "verify_factorization",
    "trace_torus_zero_set",
    "hull_candidate_for",
    "check_v_condition",
    "assemble_hull",
]

# roots of a factor on the torus must have |w| within this of 1
CIRCLE_TOL = 1e-8
# agreement condition |conj(p) - h| threshold on candidate interiors
V_TOL = 1e-8
# candidate samples this close to the torus or the axes are excluded
DOMAIN_EPS = 1e-9
# double-cover samples with |w| below this sit too close to the axes
# for the reflected symbol to be evaluated stably
BRANCH_EXCLUSION = 1e-2


class DegenerateSymbolError(ValueError):
    """The determinant of the symbol vanishes identically."""


class UnsupportedFactorError(ValueError):
    """A determinant factor is neither linear nor quadratic in w."""


class FactorizationError(ValueError):
    """The supplied unit and factors do not multiply to the determinant."""


def build_criterion_data(p: LaurentPoly2, seed: int = 0, n_probe: int = 50):
    """Reflected symbol and determinant for the hull test.

    The determinant is probed at ``n_probe`` random points with radii in
    (0.1, 0.9) on both coordinates (staying off the axes); if it is zero
    at all of them the symbol is degenerate and the test does not apply.
    """
    if p.has_negative_exponents():
        raise ValueError("symbol must be a true polynomial (nonnegative exponents)")
    h = p.reflect()
    delta = det2(p, h)
    if delta.is_zero:
        raise DegenerateSymbolError("determinant vanishes identically")
    rng = np.random.default_rng(seed)
    radii = rng.uniform(0.1, 0.9, size=(2, n_probe))
    angles = rng.uniform(0.0, 2 * np.pi, size=(2, n_probe))
    zs = radii[0] * np.exp(1j * angles[0])
    ws = radii[1] * np.exp(1j * angles[1])
    scale = 1.0 + sum(abs(c) for c in delta.terms.values())
    if np.max(np.abs(delta(zs, ws))) <= 1e-10 * scale:
        raise DegenerateSymbolError(
            "determinant vanishes at all probe points; symbol is degenerate"
        )
    return h, delta


def infer_unit(delta: LaurentPoly2, factors) -> LaurentPoly2:
    """Monomial unit making ``unit * prod(factors)`` match ``delta``.

    Determined by dividing the lexicographically smallest terms; the
    result still has to be confirmed by verify_factorization.
    """
    prod = LaurentPoly2.constant(1.0)
    for q in factors:
        prod = prod * q
    if prod.is_zero or delta.is_zero:
        raise FactorizationError("zero polynomial in factorization")
    dj, dk = min(delta.terms)
    pj, pk = min(prod.terms)
    coeff = delta.terms[(dj, dk)] / prod.terms[(pj, pk)]
    return LaurentPoly2.monomial(coeff, dj - pj, dk - pk)


def verify_factorization(delta: LaurentPoly2, unit: LaurentPoly2, factors) -> bool:
    """Exact coefficientwise check that ``delta == unit * prod(factors)``."""
    prod = unit
    for q in factors:
        prod = prod * q
    return prod == delta


@dataclass(frozen=True)
class TorusCurve:
    """Zero set of a factor on the unit torus, sampled on an angle grid.

    Components are (m, 2) arrays of (s, t) angles ordered along the
    curve.  ``filled_slices`` counts grid angles s where the factor
    vanished identically in w (the whole slice is in the zero set).
    """

    grid_n: int
    components: tuple
    filled_slices: int = 0
    closure_tolerance: float = 0.0
    circle_tolerance: float = CIRCLE_TOL

    @property
    def is_empty(self) -> bool:
        return not self.components and self.filled_slices == 0

    @property
    def is_filled(self) -> bool:
        return self.filled_slices == self.grid_n

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_points(self) -> int:
        return sum(len(c) for c in self.components)

    def samples(self) -> np.ndarray:
        """All (s, t) samples stacked into one array."""
        if not self.components:
            return np.zeros((0, 2))
        return np.vstack(self.components)

    def points_zw(self) -> np.ndarray:
        """Curve samples as complex (z, w) pairs."""
        st = self.samples()
        return np.column_stack([np.exp(1j * st[:, 0]), np.exp(1j * st[:, 1])])


def _circ_dist(a, b):
    d = np.abs(a - b) % (2 * np.pi)
    return np.minimum(d, 2 * np.pi - d)


def _match_slices(prev_t, next_t, thresh):
    """Greedy nearest matching between two root slices; None if it breaks."""
    m = len(prev_t)
    pairs = sorted(
        ((float(_circ_dist(prev_t[a], next_t[b])), a, b) for a in range(m) for b in range(m)),
        key=lambda x: x[0],
    )
    match = {}
    used = set()
    for d, a, b in pairs:
        if a in match or b in used:
            continue
        if d > thresh:
            return None
        match[a] = b
        used.add(b)
        if len(match) == m:
            break
    return match if len(match) == m else None


def _walk_components(roots, grid_n, thresh):
    """Stitch per-slice roots into ordered closed components.

    Matches roots of consecutive slices by nearest angle and follows the
    resulting permutation cycles; a curve that winds around the s circle
    multiple times comes out as one long ordered component.
    """
    matches = []
    for idx in range(grid_n):
        nxt = (idx + 1) % grid_n
        match = _match_slices(roots[idx], roots[nxt], thresh)
        if match is None:
            return None
        matches.append(match)
    s_vals = 2 * np.pi * np.arange(grid_n) / grid_n
    visited = set()
    components = []
    m = len(roots[0])
    for a0 in range(m):
        if (0, a0) in visited:
            continue
        pts = []
        idx, a = 0, a0
        while (idx, a) not in visited:
            visited.add((idx, a))
            pts.append((s_vals[idx], roots[idx][a]))
            a = matches[idx][a]
            idx = (idx + 1) % grid_n
        components.append(np.array(pts))
    # cycles through slice 0 cover every root of every slice
    if sum(len(c) for c in components) != m * grid_n:
        return None
    return components


def _union_components(roots, grid_n, thresh):
    """Fallback stitching when root counts vary from slice to slice."""
    ids = []
    for idx in range(grid_n):
        ids.extend((idx, a) for a in range(len(roots[idx])))
    parent = {node: node for node in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for idx in range(grid_n):
        nxt = (idx + 1) % grid_n
        for a, ta in enumerate(roots[idx]):
            if len(roots[nxt]) == 0:
                continue
            dists = _circ_dist(np.array(roots[nxt]), ta)
            b = int(np.argmin(dists))
            if dists[b] <= thresh:
                union((idx, a), (nxt, b))
    groups = {}
    s_vals = 2 * np.pi * np.arange(grid_n) / grid_n
    for node in ids:
        groups.setdefault(find(node), []).append(node)
    comps = []
    for nodes in groups.values():
        nodes.sort()
        comps.append(np.array([(s_vals[i], roots[i][a]) for i, a in nodes]))
    comps.sort(key=lambda c: (c[0, 0], c[0, 1]))
    return comps


def trace_torus_zero_set(q: LaurentPoly2, grid_n: int = 512) -> TorusCurve:
    """Sample the zero set of ``q`` on the unit torus.

    For each of ``grid_n`` angles s the polynomial ``q(e^{is}, w)`` is
    solved for w and roots with ``| |w| - 1 | <= 1e-8`` are kept, then
    stitched into connected components ordered along the curve.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    if q.is_zero:
        return TorusCurve(grid_n=grid_n, components=(), filled_slices=grid_n)

    by_w = q.collect_w()
    ks = sorted(by_w)
    kmin, kmax = ks[0], ks[-1]
    deg = kmax - kmin
    s_vals = 2 * np.pi * np.arange(grid_n) / grid_n
    zs = np.exp(1j * s_vals)
    coeff = np.zeros((grid_n, deg + 1), dtype=complex)
    for k, row in by_w.items():
        for j, a in row.items():
            coeff[:, k - kmin] += a * zs**j

    roots = []
    filled = 0
    scale = np.max(np.abs(coeff))
    for idx in range(grid_n):
        c = coeff[idx]
        mags = np.abs(c)
        if np.max(mags) <= 1e-13 * scale:
            filled += 1
            roots.append(np.array([]))
            continue
        lead = deg
        while lead > 0 and mags[lead] <= 1e-13 * np.max(mags):
            lead -= 1
        rs = np.roots(c[: lead + 1][::-1]) if lead > 0 else np.array([])
        on_circle = rs[np.abs(np.abs(rs) - 1) <= CIRCLE_TOL]
        ts = np.sort(np.angle(on_circle) % (2 * np.pi))
        roots.append(ts)

    counts = {len(r) for r in roots}
    if counts == {0}:
        return TorusCurve(grid_n=grid_n, components=(), filled_slices=filled)

    thresh = min(1.5, 8 * (2 * np.pi / grid_n) + 0.05)
    components = None
    if len(counts) == 1 and filled == 0:
        components = _walk_components(roots, grid_n, thresh)
    if components is None:
        components = _union_components(roots, grid_n, thresh)
    components = [c for c in components if len(c)]
    return TorusCurve(
        grid_n=grid_n,
        components=tuple(components),
        filled_slices=filled,
        closure_tolerance=thresh,
    )


@dataclass(frozen=True)
class HullCandidate:
    """Analytic piece inside the bidisc whose boundary is a factor curve.

    kind is one of "empty", "analytic_disc_graph" (w = slope * z),
    "double_cover_variety" (w**2 = ratio(z)), or "torus_filling".
    """

    kind: str
    slope: complex = None
    ratio: RationalFunction = None

    @property
    def has_interior(self) -> bool:
        return self.kind != "empty"

    def describe(self) -> str:
        if self.kind == "empty":
            return "no interior"
        if self.kind == "analytic_disc_graph":
            return f"analytic disc w = ({self.slope:.6g}) * z"
        if self.kind == "double_cover_variety":
            return f"double cover w^2 = {self.ratio}"
        return "entire bidisc"

    def interior_samples(self, n: int) -> np.ndarray:
        """(m, 2) complex samples of the candidate interior off the torus
        and off the axes."""
        if self.kind == "empty":
            return np.zeros((0, 2), dtype=complex)
        if self.kind == "analytic_disc_graph":
            r_max = min(1.0, 1.0 / abs(self.slope)) if self.slope else 1.0
            lam = golden_disc(n, r_max=r_max)
            pts = np.column_stack([lam, self.slope * lam])
        elif self.kind == "double_cover_variety":
            zs = golden_disc(n)
            ws = np.sqrt(self.ratio(zs))
            pts = np.vstack(
                [np.column_stack([zs, ws]), np.column_stack([zs, -ws])]
            )
            keep = np.abs(pts[:, 1]) >= BRANCH_EXCLUSION
            pts = pts[keep]
        else:  # torus_filling
            zs = golden_disc(n)
            pts = np.column_stack([zs, zs[::-1]])
        mods = np.abs(pts)
        keep = np.all((mods > DOMAIN_EPS) & (mods < 1 - DOMAIN_EPS), axis=1)
        return pts[keep]


def hull_candidate_for(curve: TorusCurve, q: LaurentPoly2) -> HullCandidate:
    """Candidate analytic piece bounded by the factor's torus curve.

    Supports factors linear in w of the form ``b*z^(d+1) + a*z^d*w``
    (disc w = c*z) and factors quadratic in w with no linear term
    (double cover w**2 = r(z)); anything else raises
    UnsupportedFactorError.
    """
    if curve.is_filled:
        return HullCandidate(kind="torus_filling")
    if curve.is_empty:
        return HullCandidate(kind="empty")

    by_w = q.collect_w()
    ks = sorted(by_w)
    if ks == [0, 1]:
        lo, hi = by_w[0], by_w[1]
        if len(lo) == 1 and len(hi) == 1:
            (j0, a), (j1, b) = next(iter(lo.items())), next(iter(hi.items()))
            if j0 == j1 + 1:
                return HullCandidate(kind="analytic_disc_graph", slope=-a / b)
        raise UnsupportedFactorError(
            "linear factor does not define a graph w = c*z"
        )
    if ks == [0, 2]:
        shift = min(min(by_w[0]), min(by_w[2]), 0)
        num = {j - shift: -a for j, a in by_w[0].items()}
        den = {j - shift: a for j, a in by_w[2].items()}
        top = max(max(num), max(den))
        ratio = RationalFunction(
            tuple(num.get(j, 0j) for j in range(top + 1)),
            tuple(den.get(j, 0j) for j in range(top + 1)),
        )
        return HullCandidate(kind="double_cover_variety", ratio=ratio)
    raise UnsupportedFactorError(
        f"factor with w-exponents {ks} is neither w = c*z nor w^2 = r(z)"
    )


@dataclass(frozen=True)
class VConditionResult:
    """Agreement of the reflected symbol with conj(p) on a candidate."""

    holds: bool
    max_deviation: float
    n_checked: int

    def __bool__(self) -> bool:
        return self.holds


def check_v_condition(
    candidate: HullCandidate,
    p: LaurentPoly2,
    h: LaurentPoly2,
    n_samples: int = 500,
) -> VConditionResult:
    """Check ``|conj(p) - h| <= 1e-8`` on the candidate interior.

    Samples avoid the unit torus and the coordinate axes, where the
    criterion does not constrain ``h``.
    """
    if not candidate.has_interior:
        raise ValueError("candidate has no interior to sample")
    pts = candidate.interior_samples(n_samples)
    if len(pts) == 0:
        raise ValueError("no admissible interior samples for this candidate")
    dev = np.abs(np.conj(p(pts[:, 0], pts[:, 1])) - h(pts[:, 0], pts[:, 1]))
    max_dev = float(np.max(dev))
    return VConditionResult(holds=max_dev <= V_TOL, max_deviation=max_dev, n_checked=len(pts))


@dataclass
class FactorVerdict:
    """Per-factor outcome of the hull criterion clauses."""

    index: int
    factor: LaurentPoly2
    curve: TorusCurve
    candidate: HullCandidate
    nonempty: bool
    strict: bool
    v_result: VConditionResult = None
    in_attached_set: bool = False
    constant_value: complex = None
    constant_deviation: float = None

    @property
    def v_condition(self) -> bool:
        return bool(self.v_result) if self.v_result is not None else False


@dataclass
class HullReport:
    """Assembled hull description for a symbol."""

    symbol: LaurentPoly2
    reflected: LaurentPoly2
    delta: LaurentPoly2
    unit: LaurentPoly2
    factors: tuple
    verdicts: list

    @property
    def attached_indices(self) -> list:
        return [v.index for v in self.verdicts if v.in_attached_set]

    def describe(self) -> str:
        pieces = ["graph of the height over the unit torus"]
        for v in self.verdicts:
            if v.in_attached_set:
                pieces.append(
                    f"graph over factor {v.index} piece ({v.candidate.describe()})"
                )
        return " + ".join(pieces)

    def to_report_dict(self) -> dict:
        from .laurent import format_canonical

        return {
            "delta": format_canonical(self.delta),
            "unit": format_canonical(self.unit),
            "factors": [format_canonical(q) for q in self.factors],
            "attached": self.attached_indices,
            "per_factor": [
                {
                    "index": v.index,
                    "kind": v.candidate.kind,
                    "nonempty": v.nonempty,
                    "strict": v.strict,
                    "v_condition": v.v_condition,
                    "v_max_deviation": (
                        v.v_result.max_deviation if v.v_result is not None else None
                    ),
                    "in_attached_set": v.in_attached_set,
                    "constant_value": (
                        [v.constant_value.real, v.constant_value.imag]
                        if v.constant_value is not None
                        else None
                    ),
                    "n_curve_components": v.curve.n_components,
                    "n_curve_points": v.curve.n_points,
                }
                for v in self.verdicts
            ],
            "hull": self.describe(),
            # disc slopes come from solving the factor itself for w, not
            # from any externally supplied labeling of the zero sets
            "disc_orientation": "derived from factors (a*z + b*w = 0 gives w = -(a/b) z)",
        }

    def curve_csv_rows(self):
        """Rows (factor, component, s, t) for all traced factor curves."""
        for v in self.verdicts:
            for ci, comp in enumerate(v.curve.components):
                for s, t in comp:
                    yield (v.index, ci, float(s), float(t))


def assemble_hull(
    p: LaurentPoly2,
    factors,
    unit: LaurentPoly2 = None,
    grid_n: int = 512,
    n_samples: int = 500,
    seed: int = 0,
) -> HullReport:
    """Run the full hull criterion for a symbol and a determinant factorization.

    Every factor is traced on the torus, matched to an analytic
    candidate piece, and admitted to the attached set when its curve is
    nonempty, the candidate has interior, and the reflected symbol agrees
    with conj(p) on that interior.  On the attached pieces the symbol is
    checked to be constant (the graph is flat there), and the constant is
    recorded.
    """
    h, delta = build_criterion_data(p, seed=seed)
    factors = tuple(factors)
    if unit is None:
        unit = infer_unit(delta, factors)
    if not unit.is_monomial:
        raise FactorizationError("unit must be a single Laurent monomial")
    if not verify_factorization(delta, unit, factors):
        raise FactorizationError(
            "unit * product(factors) does not equal the determinant"
        )

    verdicts = []
    for idx, q in enumerate(factors, start=1):
        curve = trace_torus_zero_set(q, grid_n=grid_n)
        try:
            candidate = hull_candidate_for(curve, q)
        except UnsupportedFactorError as exc:
            raise UnsupportedFactorError(f"factor {idx}: {exc}") from exc
        nonempty = not curve.is_empty
        strict = candidate.has_interior
        v_result = None
        if nonempty and strict:
            v_result = check_v_condition(candidate, p, h, n_samples=n_samples)
        verdict = FactorVerdict(
            index=idx,
            factor=q,
            curve=curve,
            candidate=candidate,
            nonempty=nonempty,
            strict=strict,
            v_result=v_result,
            in_attached_set=bool(nonempty and strict and v_result),
        )
        if verdict.in_attached_set:
            pts = candidate.interior_samples(n_samples)
            if curve.n_points:
                pts = np.vstack([pts, curve.points_zw()])
            vals = p(pts[:, 0], pts[:, 1])
            const = complex(np.mean(vals))
            verdict.constant_value = const
            verdict.constant_deviation = float(np.max(np.abs(vals - const)))
        verdicts.append(verdict)

    return HullReport(
        symbol=p,
        reflected=h,
        delta=delta,
        unit=unit,
        factors=factors,
        verdicts=verdicts,
    )
