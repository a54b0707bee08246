"""Search for holomorphic discs attached to a graph over the unit torus.

A candidate disc boundary is a loop on the graph, parametrized by
winding numbers (m, n) and truncated Fourier corrections of the two
angles.  The holomorphicity defect of the loop is the total
negative-frequency spectral power of its three coordinate functions;
it vanishes exactly when every coordinate extends holomorphically, so
minimizing it over loops searches for attached discs.  A floor that
stays away from zero across winding classes and restarts is numerical
evidence that no disc is attached; it is evidence only, and is flagged
as heuristic in reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .geometry import GraphSpec

__all__ = [
    "BoundaryLoop",
    "DefectResult",
    "WindingScan",
    "defect",
    "minimize_defect",
    "gradient_check",
    "winding_scan",
]

MAX_SAMPLES = 2**16
ALIAS_FRACTION = 0.01
GRAD_TOL = 1e-9


@dataclass(frozen=True)
class BoundaryLoop:
    """Loop theta -> (e^{i(m theta + sigma)}, e^{i(n theta + tau)}).

    sigma and tau are trigonometric polynomials of degree K stored as
    real coefficient vectors [const, cos 1, sin 1, ..., cos K, sin K].
    """

    winding: tuple
    sigma_coeffs: np.ndarray
    tau_coeffs: np.ndarray

    def __post_init__(self):
        sig = np.asarray(self.sigma_coeffs, dtype=float)
        tau = np.asarray(self.tau_coeffs, dtype=float)
        if sig.shape != tau.shape or sig.ndim != 1 or len(sig) % 2 == 0:
            raise ValueError("coefficient vectors must share an odd length 2K+1")
        object.__setattr__(self, "sigma_coeffs", sig)
        object.__setattr__(self, "tau_coeffs", tau)
        object.__setattr__(self, "winding", (int(self.winding[0]), int(self.winding[1])))

    @property
    def K(self) -> int:
        return (len(self.sigma_coeffs) - 1) // 2

    @classmethod
    def zero(cls, winding, K: int) -> "BoundaryLoop":
        return cls(winding, np.zeros(2 * K + 1), np.zeros(2 * K + 1))

    def with_K(self, K: int) -> "BoundaryLoop":
        """Zero-pad (or truncate) the corrections to cutoff K."""
        def resize(v):
            out = np.zeros(2 * K + 1)
            keep = min(len(v), len(out))
            out[:keep] = v[:keep]
            return out

        return BoundaryLoop(self.winding, resize(self.sigma_coeffs), resize(self.tau_coeffs))

    def angles(self, theta: np.ndarray):
        B = _trig_basis(theta, self.K)
        return (
            self.winding[0] * theta + B @ self.sigma_coeffs,
            self.winding[1] * theta + B @ self.tau_coeffs,
        )

    def points(self, theta: np.ndarray):
        s, t = self.angles(theta)
        return np.exp(1j * s), np.exp(1j * t)


def _trig_basis(theta: np.ndarray, K: int) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    B = np.empty((len(theta), 2 * K + 1))
    B[:, 0] = 1.0
    for a in range(1, K + 1):
        B[:, 2 * a - 1] = np.cos(a * theta)
        B[:, 2 * a] = np.sin(a * theta)
    return B


@dataclass
class DefectResult:
    """Outcome of a defect evaluation or minimization."""

    loop: BoundaryLoop
    defect: float
    per_coordinate_defect: tuple
    iterations: int = 0
    converged: bool = True
    n_samples: int = 0

    def sort_key(self):
        return (
            self.defect,
            tuple(self.loop.sigma_coeffs),
            tuple(self.loop.tau_coeffs),
        )


def _neg_mask(N: int) -> np.ndarray:
    # Nyquist bin is counted as negative frequency
    return np.fft.fftfreq(N) < 0


def _coordinate_defects(z, w, x, N):
    mask = _neg_mask(N)
    out = []
    for f in (z, w, x):
        spec = np.abs(np.fft.fft(np.asarray(f, dtype=complex))) ** 2
        out.append(float(np.sum(spec[mask])) / N**2)
    return tuple(out)


def _alias_fraction(f, N):
    spec = np.abs(np.fft.fft(np.asarray(f, dtype=complex))) ** 2
    total = float(np.sum(spec))
    # coordinates that vanish up to rounding noise carry a white spectrum;
    # refining the grid for them would chase noise, not content
    if total <= 1e-20:
        return 0.0
    freqs = np.abs(np.fft.fftfreq(N) * N)
    return float(np.sum(spec[freqs >= N // 4])) / total


def _next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


def defect(loop: BoundaryLoop, height: GraphSpec, N: int = None) -> DefectResult:
    """Negative-frequency power of the loop's coordinates on the graph.

    N must be a power of two at least 4K (a default is chosen when
    omitted); if more than 1% of any coordinate's spectral power sits in
    the top quarter of frequencies, the sample count doubles (up to
    2^16) to guard against aliasing.
    """
    if N is None:
        N = max(64, _next_pow2(4 * max(loop.K, 1)))
    if N < max(4 * loop.K, 2) or N & (N - 1):
        raise ValueError("N must be a power of two >= 4K")
    while True:
        theta = 2 * np.pi * np.arange(N) / N
        z, w = loop.points(theta)
        x = height.height_at(z, w)
        if (
            N < MAX_SAMPLES
            and max(_alias_fraction(f, N) for f in (z, w, x)) > ALIAS_FRACTION
        ):
            N *= 2
            continue
        per = _coordinate_defects(z, w, x, N)
        return DefectResult(
            loop=loop,
            defect=float(sum(per)),
            per_coordinate_defect=per,
            n_samples=N,
        )


class _RunContext:
    """Fixed data shared by every loss evaluation of one minimization run.

    Term tuples of the symbol and its partials are flattened out of the
    polynomial objects so the hot loop evaluates them through one shared
    power cache instead of three generic polynomial calls.
    """

    def __init__(self, winding, K, height, N):
        self.winding = winding
        self.K = K
        self.kind = height.height
        self.N = N
        self.half = N // 2  # bins half..N-1 carry the negative frequencies
        self.theta = 2 * np.pi * np.arange(N) / N
        self.B = _trig_basis(self.theta, K)
        if self.kind == "zero":
            self.term_sets = None
        else:
            pz, pw = height.symbol_partial_polys()
            self.term_sets = [tuple(q.terms.items()) for q in (height.symbol, pz, pw)]

    def symbol_and_partials(self, z, w):
        zc, wc = {}, {}
        return [_eval_terms(ts, z, w, zc, wc) for ts in self.term_sets]


def _cached_pow(base, e, cache):
    val = cache.get(e)
    if val is None:
        val = cache[e] = base**e
    return val


def _eval_terms(term_items, z, w, zcache, wcache):
    out = 0.0
    for (j, k), c in term_items:
        t = c
        if j:
            t = t * _cached_pow(z, j, zcache)
        if k:
            t = t * _cached_pow(w, k, wcache)
        out = out + t
    return np.broadcast_to(out, z.shape) if np.ndim(out) == 0 else out


def _loss_and_grad(v, ctx):
    """Total defect and its gradient in the stacked (sigma, tau) vector."""
    ncoef = 2 * ctx.K + 1
    N, half, B = ctx.N, ctx.half, ctx.B
    s = ctx.winding[0] * ctx.theta + B @ v[:ncoef]
    t = ctx.winding[1] * ctx.theta + B @ v[ncoef:]
    z, w = np.exp(1j * s), np.exp(1j * t)

    kind = ctx.kind
    coords = np.empty((3, N), dtype=complex)
    coords[0] = z
    coords[1] = w
    if kind == "zero":
        coords[2] = 0.0
        pz_val = pw_val = None
    else:
        pvals, pz_val, pw_val = ctx.symbol_and_partials(z, w)
        if kind == "re":
            coords[2] = np.real(pvals)
        elif kind == "conj":
            coords[2] = np.conj(pvals)
        else:
            coords[2] = pvals

    F = np.fft.fft(coords, axis=1)
    total = float(np.sum(np.abs(F[:, half:]) ** 2)) / N**2
    F[:, :half] = 0.0
    Gz, Gw, Gx = (2.0 / N) * np.conj(np.fft.ifft(F, axis=1))

    dz = 1j * z
    dw = 1j * w
    row_s = np.real(Gz * dz)
    row_t = np.real(Gw * dw)
    if kind != "zero":
        xs_chain = pz_val * dz  # d(p)/d(sigma direction), before the height wrap
        xt_chain = pw_val * dw
        if kind == "re":
            row_s = row_s + np.real(Gx) * np.real(xs_chain)
            row_t = row_t + np.real(Gx) * np.real(xt_chain)
        elif kind == "conj":
            row_s = row_s + np.real(Gx * np.conj(xs_chain))
            row_t = row_t + np.real(Gx * np.conj(xt_chain))
        else:
            row_s = row_s + np.real(Gx * xs_chain)
            row_t = row_t + np.real(Gx * xt_chain)
    return total, np.concatenate([row_s @ B, row_t @ B])


def minimize_defect(
    winding,
    height: GraphSpec,
    K: int = 32,
    restarts: int = 8,
    seed: int = 0,
    max_iterations: int = 5000,
    extra_inits=(),
) -> DefectResult:
    """Minimize the holomorphicity defect over loops of a winding class.

    Runs L-BFGS from ``restarts`` random coefficient vectors of
    amplitude <= 0.5 (plus the zero loop and any ``extra_inits``, e.g.
    winners from a smaller K zero-padded up).  Every run of a class
    shares the base sample count for its cutoff, so rough transient
    iterates cannot inflate the grid; results merge by a deterministic
    reduction (smallest defect first, ties broken by lexicographic
    coefficient order) and only the winner is re-evaluated with the
    anti-aliasing escalation.  Convergence means the final gradient
    norm dropped below 1e-9.
    """
    if K < 1:
        raise ValueError("K must be positive")
    winding = (int(winding[0]), int(winding[1]))
    ncoef = 2 * K + 1
    rng = np.random.default_rng(seed)

    inits = [loop.with_K(K) for loop in extra_inits]
    inits.append(BoundaryLoop.zero(winding, K))
    for _ in range(restarts):
        inits.append(
            BoundaryLoop(
                winding,
                rng.uniform(-0.5, 0.5, size=ncoef),
                rng.uniform(-0.5, 0.5, size=ncoef),
            )
        )

    # 16 samples per mode resolves the spectra of mildly rough iterates;
    # the winner's reported defect re-checks aliasing on top of this.
    N = max(64, _next_pow2(16 * max(K, 1)))
    ctx = _RunContext(winding, K, height, N)

    candidates = []
    for loop in inits:
        v0 = np.concatenate([loop.sigma_coeffs, loop.tau_coeffs])
        res = optimize.minimize(
            _loss_and_grad,
            v0,
            args=(ctx,),
            jac=True,
            method="L-BFGS-B",
            options={
                "maxiter": max_iterations,
                "ftol": 1e-18,
                "gtol": GRAD_TOL,
                "maxcor": 20,
            },
        )
        final = BoundaryLoop(winding, res.x[:ncoef], res.x[ncoef:])
        val, grad = _loss_and_grad(res.x, ctx)
        candidates.append(
            DefectResult(
                loop=final,
                defect=float(val),
                per_coordinate_defect=(),
                iterations=int(res.nit),
                converged=bool(np.max(np.abs(grad)) <= GRAD_TOL),
                n_samples=N,
            )
        )
        if val <= 1e-12:
            break
    candidates.sort(key=DefectResult.sort_key)
    best = candidates[0]
    evaluated = defect(best.loop, height, N)
    return DefectResult(
        loop=best.loop,
        defect=evaluated.defect,
        per_coordinate_defect=evaluated.per_coordinate_defect,
        iterations=best.iterations,
        converged=best.converged,
        n_samples=evaluated.n_samples,
    )


def gradient_check(loop: BoundaryLoop, height: GraphSpec, step: float = 1e-6) -> float:
    """Max abs difference between the analytic and central FD gradients."""
    K = loop.K
    N = max(64, _next_pow2(4 * max(K, 1)))
    ctx = _RunContext(loop.winding, K, height, N)
    v0 = np.concatenate([loop.sigma_coeffs, loop.tau_coeffs])
    _, grad = _loss_and_grad(v0, ctx)
    fd = np.empty_like(grad)
    for i in range(len(v0)):
        vp, vm = v0.copy(), v0.copy()
        vp[i] += step
        vm[i] -= step
        fd[i] = (_loss_and_grad(vp, ctx)[0] - _loss_and_grad(vm, ctx)[0]) / (2 * step)
    return float(np.max(np.abs(grad - fd)))


@dataclass
class WindingScan:
    """Per-class best defects over a winding range, plus the overall floor.

    The floor excludes the trivial class (0, 0), whose minimizer is the
    constant loop with defect exactly zero on any height.
    """

    K: int
    restarts: int
    results: dict  # (m, n) -> DefectResult
    floor: float
    floor_class: tuple

    def nontrivial_results(self):
        return {mn: r for mn, r in self.results.items() if mn != (0, 0)}


def winding_scan(
    height: GraphSpec,
    winding_range: int = 3,
    K: int = 32,
    restarts: int = 100,
    seed: int = 0,
    max_iterations: int = 400,
    warm: "WindingScan" = None,
    threads: int = 1,
) -> WindingScan:
    """Minimize the defect for every winding class |m|, |n| <= range.

    The recorded floor is the smallest best defect over the nontrivial
    classes; passing a previous scan as ``warm`` seeds each class with
    its earlier winner (zero-padded), so the floor cannot increase when
    K grows.
    """
    classes = [
        (m, n)
        for m in range(-winding_range, winding_range + 1)
        for n in range(-winding_range, winding_range + 1)
    ]

    def run(mn):
        extras = ()
        if warm is not None and mn in warm.results:
            extras = (warm.results[mn].loop,)
        return mn, minimize_defect(
            mn,
            height,
            K=K,
            restarts=restarts,
            seed=seed + 1000 * (mn[0] + 10) + (mn[1] + 10),
            max_iterations=max_iterations,
            extra_inits=extras,
        )

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = dict(pool.map(run, classes))
    else:
        results = dict(run(mn) for mn in classes)

    floor_class, floor = None, np.inf
    for mn, res in results.items():
        if mn == (0, 0):
            continue
        if res.defect < floor:
            floor, floor_class = res.defect, mn
    return WindingScan(
        K=K,
        restarts=restarts,
        results=results,
        floor=float(floor),
        floor_class=floor_class,
    )
