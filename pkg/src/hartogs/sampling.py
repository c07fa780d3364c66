"""Deterministic point grids inside a Hartogs domain.

Interior sweeps use a scrambled Halton sequence mapped through polar
coordinates: one dimension drives ``|z_0|^2``, one its phase, one the total
fiber radius, and the rest split the fiber energy across coordinates and
phases.  Points too close to the boundary are rejected because the closed
forms blow up like ``A^-(n+1)`` there; the margin is configurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np
from scipy.stats import qmc

from .errors import DomainError
from .profiles import Profile

__all__ = ["GridSpec", "interior_points", "x_grid", "interior_gap"]


@dataclass(frozen=True)
class GridSpec:
    """Sweep parameters: size, seed, boundary margin, cap for unbounded domains."""

    points: int = 200
    seed: int = 0
    a_margin: float = 0.05   # keep A >= a_margin * F(0)
    x_cap: float = 5.0       # cap on |z_0|^2 when x0 = inf

    def describe(self) -> dict:
        return asdict(self)


def interior_gap(z: np.ndarray, profile: Profile):
    """Membership gap ``A = F(|z_0|^2) - sum_{k>=1} |z_k|^2`` (positive inside)."""
    z = np.asarray(z, dtype=complex)
    x = np.abs(z[..., 0]) ** 2
    s = np.sum(np.abs(z[..., 1:]) ** 2, axis=-1)
    return profile.deriv(0, x) - s


def _x_max(profile: Profile, spec: GridSpec) -> float:
    hi = min(profile.x0, spec.x_cap) if math.isfinite(profile.x0) else spec.x_cap
    if math.isfinite(profile.x0):
        hi = min(hi, profile.x0 * (1.0 - 1e-2))
    return hi


def x_grid(profile: Profile, count: int, spec: GridSpec | None = None,
           lo: float | None = None, hi: float | None = None) -> np.ndarray:
    """Uniform abscissa grid in ``(0, min(x0, x_cap))`` away from endpoints."""
    spec = spec or GridSpec()
    hi = _x_max(profile, spec) if hi is None else hi
    lo = 1e-3 * hi if lo is None else lo
    return np.linspace(lo, hi, count)


def interior_points(profile: Profile, n: int, spec: GridSpec | None = None) -> np.ndarray:
    """Quasi-random interior points, shape ``(spec.points, n)`` complex.

    Every returned point satisfies ``A >= a_margin * F(0)``.  The Halton
    stream is scrambled with ``spec.seed``, so grids are reproducible.
    """
    if n < 2:
        raise DomainError(f"Hartogs domains need n >= 2 coordinates, got n={n}")
    spec = spec or GridSpec()
    delta = spec.a_margin * profile.deriv(0, 0.0)
    xmax = _x_max(profile, spec)
    # spline-backed profiles are unreliable at the edge of their data range
    xmin = 0.0 if profile.exact_derivatives else 1e-3 * xmax
    # dims: x, theta0, fiber budget, n-1 fiber weights, n-1 fiber phases
    sampler = qmc.Halton(d=2 * n + 1, scramble=True, seed=spec.seed)
    out = []
    for _ in range(64):
        u = sampler.random(max(2 * spec.points, 64))
        x = xmin + u[:, 0] * (xmax - xmin)
        f_here = profile.deriv(0, x)
        keep = f_here > delta
        x, u, f_here = x[keep], u[keep], f_here[keep]
        z0 = np.sqrt(x) * np.exp(2j * np.pi * u[:, 1])
        budget = u[:, 2] * (f_here - delta)
        # split the fiber budget with exponential spacings (simplex sample)
        w = -np.log(np.clip(u[:, 3:n + 2], 1e-12, 1.0))
        w /= np.sum(w, axis=1, keepdims=True)
        radii = np.sqrt(budget[:, None] * w)
        phases = np.exp(2j * np.pi * u[:, n + 2:2 * n + 1])
        pts = np.concatenate([z0[:, None], radii * phases], axis=1)
        out.append(pts)
        if sum(p.shape[0] for p in out) >= spec.points:
            break
    pts = np.concatenate(out, axis=0)
    if pts.shape[0] < spec.points:
        raise DomainError("could not draw enough interior points; margin too tight?")
    return pts[: spec.points]
