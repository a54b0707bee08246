"""Branched double covers ``w**2 = r(z)`` over the closed unit disc.

The chart tracer follows both square-root sheets around the boundary
circle, locates branch points as the numerator roots inside the disc,
and derives the surface topology (boundary loop count, Euler
characteristic, genus) from the branch count rather than from any mesh,
so refining the sampling cannot change the reported topology.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .laurent import LaurentPoly2, parse
from .sampling import golden_disc

__all__ = [
    "RationalFunction",
    "VarietyChart",
    "ContainmentResult",
    "BranchPointOnBoundaryError",
    "MultipleBranchPointError",
    "ContinuationError",
    "trace_variety",
    "containment_check",
    "residual_on_variety",
]


class BranchPointOnBoundaryError(ValueError):
    """A numerator root sits on the unit circle; continuation is ill-posed."""


class MultipleBranchPointError(ValueError):
    """The numerator has a repeated root inside the disc."""


class ContinuationError(RuntimeError):
    """Sheet continuation failed to close up around the boundary circle."""


def _poly_from_laurent(P: LaurentPoly2) -> tuple:
    """Ascending z-coefficients of a z-only polynomial, or None."""
    coeffs: dict = {}
    for (j, k), c in P.terms.items():
        if k != 0 or j < 0:
            return None
        coeffs[j] = c
    if not coeffs:
        return (0j,)
    deg = max(coeffs)
    return tuple(coeffs.get(j, 0j) for j in range(deg + 1))


@dataclass(frozen=True)
class RationalFunction:
    """Univariate rational function ``num(z) / den(z)``.

    Coefficients are stored in ascending order; trailing zeros are
    trimmed on construction.
    """

    num: tuple
    den: tuple

    def __post_init__(self):
        object.__setattr__(self, "num", _trim(self.num))
        object.__setattr__(self, "den", _trim(self.den))
        if self.den == (0j,):
            raise ZeroDivisionError("zero denominator")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        val = npoly.polyval(z, np.array(self.num)) / npoly.polyval(z, np.array(self.den))
        if val.ndim == 0:
            return complex(val)
        return val

    def numerator_roots(self) -> np.ndarray:
        if len(self.num) < 2:
            return np.array([], dtype=complex)
        return npoly.polyroots(np.array(self.num))

    def denominator_roots(self) -> np.ndarray:
        if len(self.den) < 2:
            return np.array([], dtype=complex)
        return npoly.polyroots(np.array(self.den))

    @classmethod
    def from_laurent(cls, num: LaurentPoly2, den: LaurentPoly2) -> "RationalFunction":
        nc, dc = _poly_from_laurent(num), _poly_from_laurent(den)
        if nc is None or dc is None:
            raise ValueError("numerator and denominator must be z-only polynomials")
        return cls(nc, dc)

    @classmethod
    def from_text(cls, text: str) -> "RationalFunction":
        """Parse ``"num/den"`` with z-only polynomial expressions on each side."""
        depth = 0
        split = None
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                split = i
                break
        if split is None:
            return cls.from_laurent(parse(text), parse("1"))
        return cls.from_laurent(parse(text[:split]), parse(text[split + 1 :]))

    def __str__(self) -> str:
        def side(coeffs):
            terms = []
            for j, c in enumerate(coeffs):
                if c == 0:
                    continue
                piece = f"({c.real:g}{'+' if c.imag >= 0 else '-'}{abs(c.imag):g}i)"
                terms.append(piece if j == 0 else piece + (f"*z^{j}" if j > 1 else "*z"))
            return " + ".join(terms) or "0"

        return f"({side(self.num)}) / ({side(self.den)})"


def _trim(coeffs) -> tuple:
    cs = [complex(c) for c in coeffs]
    while len(cs) > 1 and abs(cs[-1]) == 0:
        cs.pop()
    return tuple(cs) if cs else (0j,)


@dataclass
class VarietyChart:
    """Traced double cover ``w**2 = r(z)`` intersected with the bidisc."""

    r: RationalFunction
    branch_points: np.ndarray
    boundary_loops: list  # each an (m, 2) complex array of (z, w) samples
    interior_z: np.ndarray
    interior_w: np.ndarray
    interior_sheet: np.ndarray
    euler_char: int
    genus: int
    boundary_count: int
    n_components: int
    boundary_on_torus: bool
    boundary_torus_residual: float
    closure_tolerance: float = 1e-6

    def boundary_points(self) -> np.ndarray:
        """All boundary samples stacked as an (m, 2) complex array."""
        if not self.boundary_loops:
            return np.zeros((0, 2), dtype=complex)
        return np.vstack(self.boundary_loops)

    def all_points(self) -> np.ndarray:
        """Interior, boundary, and branch samples as an (m, 2) array."""
        pieces = [np.column_stack([self.interior_z, self.interior_w])]
        bd = self.boundary_points()
        if len(bd):
            pieces.append(bd)
        if len(self.branch_points):
            pieces.append(
                np.column_stack(
                    [self.branch_points, np.zeros_like(self.branch_points)]
                )
            )
        return np.vstack(pieces)

    def topology_summary(self) -> dict:
        return {
            "branch_points": [[p.real, p.imag] for p in self.branch_points],
            "boundary_count": self.boundary_count,
            "genus": self.genus,
            "euler_char": self.euler_char,
            "n_components": self.n_components,
            "boundary_on_torus": self.boundary_on_torus,
        }

    def csv_rows(self):
        """Rows (kind, sheet, re z, im z, re w, im w) for the chart dump."""
        for z, w, sheet in zip(self.interior_z, self.interior_w, self.interior_sheet):
            yield ("interior", int(sheet), z.real, z.imag, w.real, w.imag)
        for li, loop in enumerate(self.boundary_loops):
            for z, w in loop:
                yield ("boundary", li, z.real, z.imag, w.real, w.imag)
        for b in self.branch_points:
            yield ("branch", 0, b.real, b.imag, 0.0, 0.0)


@dataclass
class ContainmentResult:
    """Outcome of the ``|r| <= 1`` disc containment sweep."""

    contained: bool
    max_modulus: float
    boundary_equality: bool
    boundary_max_deviation: float

    def __bool__(self) -> bool:
        return self.contained


def _branch_points(r: RationalFunction) -> np.ndarray:
    den_roots = r.denominator_roots()
    if len(den_roots) and np.min(np.abs(den_roots)) <= 1.0:
        raise ValueError("denominator has a zero in the closed unit disc")
    roots = r.numerator_roots()
    if len(roots) == 0:
        return np.array([], dtype=complex)
    mods = np.abs(roots)
    if np.any((mods >= 1 - 1e-8) & (mods <= 1 + 1e-8)):
        raise BranchPointOnBoundaryError(
            "numerator root on the unit circle; boundary continuation is ill-posed"
        )
    inside = roots[mods < 1 - 1e-8]
    for i in range(len(inside)):
        for j in range(i + 1, len(inside)):
            if abs(inside[i] - inside[j]) < 1e-6:
                raise MultipleBranchPointError(
                    f"repeated branch point near {inside[i]:.6g}"
                )
    return np.sort_complex(inside)


def _trace_boundary(r, branch_points, n_boundary, closure_tol):
    """Continue w = sqrt(r) around |z| = 1; returns the closed loops."""
    base_step = 2 * np.pi / n_boundary
    theta = 0.0
    z = 1.0 + 0j
    w = np.sqrt(complex(r(z)))
    start_w = w
    pts = [(z, w)]
    max_rounds = 2
    rounds_done = 0
    while rounds_done < max_rounds:
        target = 2 * np.pi * (rounds_done + 1)
        while theta < target:
            if len(branch_points):
                d = float(np.min(np.abs(z - branch_points)))
            else:
                d = 1.0
            step = min(base_step, max(1e-4, 4 * base_step * d))
            theta = min(theta + step, target)
            z = np.exp(1j * theta)
            root = np.sqrt(complex(r(z)))
            w = root if abs(root - w) <= abs(-root - w) else -root
            pts.append((z, w))
        rounds_done += 1
        if abs(w - start_w) < closure_tol:
            break
    else:
        raise ContinuationError(
            "boundary continuation did not close after two revolutions"
        )
    loop = np.array(pts, dtype=complex)
    if rounds_done == 1:
        # trivial monodromy: the two sheets close separately
        return [loop, np.column_stack([loop[:, 0], -loop[:, 1]])]
    return [loop]


def trace_variety(
    r: RationalFunction,
    n_interior: int = 4000,
    n_boundary: int = 2048,
    refine: int = 1,
    closure_tol: float = 1e-6,
) -> VarietyChart:
    """Trace the double cover ``w**2 = r(z)`` over the closed unit disc.

    Branch points are the numerator roots strictly inside the disc
    (simple roots only); the boundary loops come from sheet continuation
    around ``|z| = 1``; Euler characteristic comes from the branched
    double-cover count ``chi = 2 - B``, and the genus from
    ``chi = 2 c - 2 g - b`` with ``c`` the component count (2 for an
    unbranched cover, else 1).  ``refine`` scales both sample densities.

    Raises
    ------
    BranchPointOnBoundaryError
        If a numerator root lies within 1e-8 of the unit circle.
    MultipleBranchPointError
        If the numerator has a repeated root inside the disc.
    """
    branch = _branch_points(r)
    loops = _trace_boundary(r, branch, n_boundary * refine, closure_tol)
    branch = [complex(b) for b in branch]

    n_branch = len(branch)
    euler = 2 - n_branch
    components = 1 if n_branch else 2
    boundary_count = len(loops)
    expected_loops = 1 if n_branch % 2 else 2
    if boundary_count != expected_loops:
        raise ContinuationError(
            f"traced {boundary_count} boundary loops, monodromy predicts {expected_loops}"
        )
    genus = (2 * components - boundary_count - euler) // 2

    zs = golden_disc(n_interior * refine)
    ws = np.sqrt(r(zs))
    z_all = np.concatenate([zs, zs])
    w_all = np.concatenate([ws, -ws])
    sheet = np.concatenate([np.zeros(len(zs), int), np.ones(len(zs), int)])
    keep = np.abs(w_all) <= 1 + 1e-9
    z_all, w_all, sheet = z_all[keep], w_all[keep], sheet[keep]

    bd = np.vstack(loops)
    torus_dev = float(np.max(np.abs(np.abs(bd[:, 1]) - 1))) if len(bd) else 0.0

    return VarietyChart(
        r=r,
        branch_points=branch,
        boundary_loops=loops,
        interior_z=z_all,
        interior_w=w_all,
        interior_sheet=sheet,
        euler_char=euler,
        genus=genus,
        boundary_count=boundary_count,
        n_components=components,
        boundary_on_torus=torus_dev <= 1e-8,
        boundary_torus_residual=torus_dev,
        closure_tolerance=closure_tol,
    )


def containment_check(r: RationalFunction, n: int = 4000) -> ContainmentResult:
    """Check ``|r(z)| <= 1 + 1e-9`` over the closed disc.

    Samples ``n`` interior points plus a boundary ring, and flags
    whether ``|r| = 1`` holds along ``|z| = 1`` (the equality locus of
    the covers whose boundary sits on the unit torus).
    """
    zs = golden_disc(max(n, 16))
    ring = np.exp(2j * np.pi * np.arange(max(n // 4, 64)) / max(n // 4, 64))
    vals_in = np.abs(r(zs))
    vals_ring = np.abs(r(ring))
    max_mod = float(max(vals_in.max(), vals_ring.max()))
    deviation = float(np.max(np.abs(vals_ring - 1)))
    return ContainmentResult(
        contained=max_mod <= 1 + 1e-9,
        max_modulus=max_mod,
        boundary_equality=deviation <= 1e-9,
        boundary_max_deviation=deviation,
    )


def residual_on_variety(p: LaurentPoly2, chart: VarietyChart) -> float:
    """Max ``|p|`` over every chart sample (interior, boundary, branch)."""
    pts = chart.all_points()
    if len(pts) == 0:
        return 0.0
    return float(np.max(np.abs(p(pts[:, 0], pts[:, 1]))))
