"""Euclidean baseline: plane waves, J0 ring profiles, discrete line moire.

Sanity model for the hyperbolic construction: a row of equally spaced J0
profiles along a line superposes into something close to a plane wave
propagating orthogonally to the line.

The angular integrand carries the imaginary unit, exp(i (2pi/lam) u.(q-x0)),
so that the ring profile is the genuine Bessel function J0; the real
exponential variant diverges from the J0 description. Normalization is
1/(2pi) on the circle so the profile is 1 at its center.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["PlanePoint", "plane_wave", "bessel_wave", "line_moire",
           "plane_wave_array", "bessel_wave_array", "line_moire_array",
           "j0_series"]

_M_ANGULAR = 256  # trapezoid nodes for the circle average


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("PlanePoint requires finite coordinates")

    @property
    def as_complex(self) -> complex:
        return complex(self.x, self.y)


def plane_wave(p: tuple[float, float], q: PlanePoint) -> complex:
    return complex(plane_wave_array(p, np.asarray(q.as_complex)))


def plane_wave_array(p: tuple[float, float], q: np.ndarray) -> np.ndarray:
    """e^{i p.q} on an array of complex plane coordinates q."""
    px, py = p
    return np.exp(1j * (px * q.real + py * q.imag))


def bessel_wave(lam: float, x0: PlanePoint, q: PlanePoint) -> complex:
    if lam <= 0:
        raise ValueError("bessel_wave requires lam > 0")
    return complex(bessel_wave_array(lam, x0.as_complex, np.asarray(q.as_complex)))


def bessel_wave_array(lam: float, x0: complex, q: np.ndarray,
                      m: int = _M_ANGULAR) -> np.ndarray:
    """Circle average of unit wave vectors: equals J0(2pi |q-x0| / lam)."""
    u = 2.0 * np.pi * np.arange(m) / m
    k = 2.0 * np.pi / lam
    dq = np.asarray(q) - x0
    phase = k * (np.cos(u) * dq.real[..., None] + np.sin(u) * dq.imag[..., None])
    return np.mean(np.exp(1j * phase), axis=-1)


def line_moire(lam: float, n: int, spacing: float, q: PlanePoint) -> complex:
    return complex(line_moire_array(lam, n, spacing, np.asarray(q.as_complex)))


def line_moire_array(lam: float, n: int, spacing: float, q: np.ndarray,
                     m: int = _M_ANGULAR) -> np.ndarray:
    """Average of n J0 profiles centered on the y-axis, spacing apart."""
    if n < 1:
        raise ValueError("line_moire requires n >= 1")
    if spacing <= 0:
        raise ValueError("line_moire requires spacing > 0")
    centers = spacing * (np.arange(1, n + 1) - (n + 1) / 2.0)
    out = np.zeros(np.shape(q), complex)
    for c in centers:
        out = out + bessel_wave_array(lam, 1j * c, q, m=m)
    return out / n


def j0_series(x: np.ndarray, terms: int = 40) -> np.ndarray:
    """Reference J0 by its power series; accurate to ~1e-12 for |x| <= 10."""
    x = np.asarray(x, float)
    acc = np.zeros_like(x)
    term = np.ones_like(x)
    x2 = -0.25 * x * x
    for k in range(terms):
        if k > 0:
            term = term * x2 / (k * k)
        acc = acc + term
    return acc
