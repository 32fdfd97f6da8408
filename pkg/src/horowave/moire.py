"""Horocycle superpositions of spherical functions and their wave limits.

The central object is the tapered superposition

    I(lambda) = kappa_H * density(lambda) * int theta(s) phi_lambda(d(y(s), x)) ds

over the zero horocycle y(s) of a boundary direction b0. As the taper
theta widens, I(lambda) does not converge pointwise -- the residual
oscillates with a phase like sigma^{2 i lambda} -- but its average against
any smooth compactly supported lambda-window converges to the same window
average of the Helgason wave e_{lambda,b0}(x). ``moire_integral`` is the
pointwise tapered estimator (oscillation band reported, not asserted);
``moire_weak`` is the lambda-windowed estimator that carries the
acceptance-grade claim.

The superposition includes the Plancherel density as a lambda weight; this
is what makes a single frozen constant kappa_H work across the whole
spectral range (the bare tapered horocycle integral of phi_lambda carries
an extra 1/(lambda tanh(pi lambda)) factor in its weak limit). kappa_H is
fitted once at (lambda, x, b0) = (1.5, 0, 1) and frozen; its agreement at
every other parameter choice is a test, not a fit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import QuadratureUnderResolved
from .geometry import (
    BoundaryPoint,
    DiskPoint,
    Horocycle,
    act,
    busemann,
    busemann_array,
    distance_array,
    horocycle_coordinates,
    horocycle_points_array,
    nilpotent_flow,
)
from .tapers import TaperSpec
from .transform import DEFAULT_GRID, GridSpec, SampledField, horocycle_integral
from .waves import (
    RHO,
    helgason_wave,
    plancherel_density,
    spherical_radial,
    spherical_radial_profile,
)

__all__ = [
    "LambdaWindow",
    "MoireReport",
    "DEFAULT_TAPER",
    "kappa_h",
    "set_kappa_h",
    "moire_integral",
    "moire_weak",
    "convergence_study",
    "moire_sum_discrete",
    "phase_correlation",
    "reduction_paths",
]

DEFAULT_TAPER = TaperSpec("gaussian", 12.0)


@dataclass(frozen=True)
class LambdaWindow:
    """Smooth weight on the spectral axis: truncated Gaussian bump.

    Gaussian of the given center/width multiplied by a raised-cosine
    cutoff vanishing at lo and hi, so the window is compactly supported
    in (lo, hi) with fast-decaying Fourier tails. ``scale`` rescales the
    whole window (scale = 0 gives the zero window).
    """

    center: float
    width: float = 0.45
    lo: float = 0.5
    hi: float = 4.0
    scale: float = 1.0

    def __post_init__(self):
        if not (self.lo < self.center < self.hi):
            raise ValueError("window center must lie inside (lo, hi)")
        if not self.width > 0:
            raise ValueError("window width must be positive")

    def __call__(self, lam: np.ndarray) -> np.ndarray:
        lam = np.asarray(lam, float)
        bump = np.exp(-0.5 * ((lam - self.center) / self.width) ** 2)
        u = (lam - self.lo) / (self.hi - self.lo)
        cut = np.where((u > 0) & (u < 1), np.sin(np.pi * np.clip(u, 0, 1)) ** 2, 0.0)
        return self.scale * bump * cut


@dataclass
class MoireReport:
    """One tapered-superposition run against its Helgason-wave target."""

    lam: float
    b0: BoundaryPoint
    x: DiskPoint
    approx: complex
    target: complex
    abs_error: float
    taper: TaperSpec
    oscillation_amplitude: float = 0.0
    divergent: bool = False


# --- the single fitted measure constant ----------------------------------

_kappa_h: Optional[float] = None


def kappa_h() -> float:
    """The frozen horocycle-measure normalization (empirically ~ pi)."""
    global _kappa_h
    if _kappa_h is None:
        _kappa_h = _fit_kappa_h()
    return _kappa_h


def set_kappa_h(value: float) -> None:
    global _kappa_h
    if _kappa_h is not None:
        raise RuntimeError("kappa_h is already frozen")
    _kappa_h = float(value)


def _fit_kappa_h() -> float:
    # The fit taper is much wider than any acceptance run: the windowed
    # taper residual decays like a Gaussian in log(width), and width 48
    # leaves the constant accurate to ~3e-4 (empirically kappa_h ~ pi).
    window = LambdaWindow(1.5)
    lhs, rhs = _weak_pair(window, BoundaryPoint(0.0), DiskPoint(0j),
                          TaperSpec("gaussian", 48.0), kappa_h_value=1.0)
    return float((rhs / lhs).real)


# --- estimators -----------------------------------------------------------

def _center_under(b0: BoundaryPoint, x: DiskPoint) -> DiskPoint:
    """Slide x along its horocycle onto the geodesic axis toward b0.

    The tapered estimators center the taper at the foot of x on the zero
    horocycle; since the nilpotent flow is an isometry fixing b0 and the
    wave target depends only on the Busemann level, this makes every
    estimator exactly N-invariant instead of invariant only up to a taper
    shift.
    """
    beta, u0 = horocycle_coordinates(x, b0)
    shift = math.exp(beta) * u0
    if shift == 0.0:
        return x
    return act(nilpotent_flow(b0, -shift), x)


def moire_integral(lam: float, b0: BoundaryPoint, x: DiskPoint,
                   taper: TaperSpec = DEFAULT_TAPER) -> MoireReport:
    """Pointwise tapered superposition of spherical functions along ``xi(b0, 0)``.

    The spherical function centered at y evaluated at x equals
    phi_lambda(d(y, x)), so the superposition is a single tapered line
    integral. The target is the Helgason wave at x; agreement is expected
    only up to the taper's oscillation band (see ``convergence_study``).
    """
    xz = np.asarray(_center_under(b0, x).z)

    def fn(y: np.ndarray) -> np.ndarray:
        return spherical_radial(lam, distance_array(y, xz))

    line = horocycle_integral(fn, Horocycle(b0, 0.0), taper, tol=1e-8)
    approx = complex(kappa_h() * plancherel_density(lam) * line)
    target = helgason_wave(lam, b0, x)
    return MoireReport(lam, b0, x, approx, target, abs(approx - target), taper)


def _line_integrals_multi(lams: np.ndarray, b0: BoundaryPoint, x: DiskPoint,
                          taper: TaperSpec, tol: float = 1e-7,
                          n_start: int = 2048, max_halvings: int = 8) -> np.ndarray:
    """Tapered horocycle integrals of phi_lambda for many lambda at once.

    Shared-grid trapezoid refined by interval halving; each refinement
    reuses the previous sum and only evaluates the new midpoints.

    Unlike ``moire_integral``, the taper is deliberately NOT recentered
    under x: runs at different points of the same horocycle then probe
    genuinely different tapered quadratures that must all converge to the
    same windowed target.
    """
    S = taper.support_radius
    xz = np.asarray(x.z)

    def values(s: np.ndarray) -> np.ndarray:
        y = horocycle_points_array(b0.theta, 0.0, s)
        d = distance_array(y, xz)
        return taper(s)[None, :] * spherical_radial_profile(lams, d)

    n = n_start
    h = 2.0 * S / n
    f = values(np.linspace(-S, S, n + 1))
    T = h * (np.sum(f, axis=1) - 0.5 * (f[:, 0] + f[:, -1]))
    for _ in range(max_halvings):
        mids = np.linspace(-S + 0.5 * h, S - 0.5 * h, n)
        T_new = 0.5 * T + 0.5 * h * np.sum(values(mids), axis=1)
        if np.max(np.abs(T_new - T)) < tol:
            return T_new
        T, h, n = T_new, 0.5 * h, 2 * n
    raise QuadratureUnderResolved(
        f"horocycle line integrals did not settle below {tol}"
    )


def _weak_pair(window: LambdaWindow, b0: BoundaryPoint, x: DiskPoint,
               taper: TaperSpec, kappa_h_value: Optional[float] = None,
               n_lambda: int = 81) -> tuple[complex, complex]:
    lams = np.linspace(window.lo, window.hi, n_lambda)
    chi = window(lams)
    if not np.any(chi):
        return 0j, 0j
    if kappa_h_value is None:
        kappa_h_value = kappa_h()
    line = _line_integrals_multi(lams, b0, x, taper)
    lhs = np.trapezoid(chi * kappa_h_value * plancherel_density(lams) * line, lams)
    beta = busemann(x, b0)
    rhs = np.trapezoid(chi * np.exp((1j * lams + RHO) * beta), lams)
    return complex(lhs), complex(rhs)


def moire_weak(window: LambdaWindow, b0: BoundaryPoint, x: DiskPoint,
               taper: TaperSpec = DEFAULT_TAPER) -> tuple[complex, complex]:
    """Lambda-windowed estimator: (window average of approx, of target).

    The smoothing in lambda kills the taper's non-decaying oscillatory
    residual, so lhs approaches rhs as the taper widens.
    """
    return _weak_pair(window, b0, x, taper)


def convergence_study(lam: float, b0: BoundaryPoint, x: DiskPoint,
                      sigmas, kind: str = "gaussian") -> list[MoireReport]:
    """Taper-width sweep at fixed lambda; documents the oscillation band.

    ``oscillation_amplitude`` is the diameter of the approx values over the
    largest three widths; ``divergent`` flags any approx exceeding ten
    times the target modulus.
    """
    sigmas = [float(s) for s in sigmas]
    if any(b <= a for a, b in zip(sigmas, sigmas[1:])):
        raise ValueError("sigmas must be strictly increasing")
    reports = [moire_integral(lam, b0, x, TaperSpec(kind, s)) for s in sigmas]
    tail = [r.approx for r in reports[-3:]]
    osc = max(abs(a - b) for a in tail for b in tail)
    divergent = any(abs(r.approx) > 10.0 * abs(r.target) for r in reports)
    return [replace(r, oscillation_amplitude=osc, divergent=divergent)
            for r in reports]


def moire_sum_discrete(lam: float, b0: BoundaryPoint, n: int, spacing: float,
                       grid: GridSpec = DEFAULT_GRID) -> SampledField:
    """Average of n spherical functions centered along ``xi(b0, 0)``.

    Centers sit at arc lengths spacing * (i - (n+1)/2), symmetric about
    the geodesic axis toward b0; this is the finite figure-style sum.
    """
    if n < 1:
        raise ValueError("moire_sum_discrete requires n >= 1")
    if spacing <= 0:
        raise ValueError("moire_sum_discrete requires spacing > 0")
    s_i = spacing * (np.arange(1, n + 1) - (n + 1) / 2.0)
    centers = horocycle_points_array(b0.theta, 0.0, s_i)
    z = grid.z
    acc = np.zeros(z.shape)
    for c in centers:
        d = distance_array(z, np.asarray(c))
        acc += spherical_radial_profile([lam], d.ravel())[0].reshape(z.shape)
    return SampledField(grid, (acc / n).astype(complex))


def phase_correlation(field: SampledField, lam: float, b0: BoundaryPoint,
                      radius: float = 1.5) -> float:
    """Normalized L2 correlation with the wave phase pattern near the origin.

    Both the field and the reference e^{i lam busemann(z, b0)} are centered
    (weighted means removed) over the disk d(0, z) <= radius before the
    correlation is taken.
    """
    z = field.grid.z
    mask = 2.0 * np.arctanh(np.abs(z)) <= radius
    w = field.weights[mask]
    f = field.values[mask]
    g = np.exp(1j * lam * busemann_array(z, b0.theta))[mask]
    f = f - np.sum(w * f) / np.sum(w)
    g = g - np.sum(w * g) / np.sum(w)
    num = abs(np.sum(w * np.conj(g) * f))
    den = math.sqrt(float(np.sum(w * np.abs(f) ** 2) * np.sum(w * np.abs(g) ** 2)))
    return num / den


def reduction_paths(lam: float, b0: BoundaryPoint, x: DiskPoint,
                    taper: TaperSpec = DEFAULT_TAPER,
                    tol: float = 1e-9) -> tuple[complex, complex]:
    """Both sides of the change-of-variables reduction, independently.

    Path A integrates phi_lambda(d(., x)) over the zero horocycle with the
    given taper. Path B moves the integral to the horocycle through x:
    with (beta, u0) the horocycle coordinates of x,

        A = e^beta * int theta(e^beta (t + u0)) phi_lambda(d(0, y_beta(t))) dt,

    which path B evaluates on its own quadrature grid.
    """
    xz = np.asarray(x.z)

    def fn_a(y: np.ndarray) -> np.ndarray:
        return spherical_radial(lam, distance_array(y, xz))

    a = horocycle_integral(fn_a, Horocycle(b0, 0.0), taper, tol=tol)

    beta, u0 = horocycle_coordinates(x, b0)
    eb = math.exp(beta)
    half = taper.support_radius / eb

    def quad_b(n: int) -> complex:
        t = np.linspace(-u0 - half, -u0 + half, n)
        y = horocycle_points_array(b0.theta, beta, t)
        d = distance_array(y, np.asarray(0j))
        vals = taper(eb * (t + u0)) * spherical_radial(lam, d)
        return complex(eb * np.trapezoid(vals, t))

    n = 513
    prev = quad_b(n)
    for _ in range(12):
        n = 2 * n - 1
        cur = quad_b(n)
        if abs(cur - prev) < tol:
            return a, cur
        prev = cur
    raise QuadratureUnderResolved("reduction path B did not converge")
