"""Ricci curvature, scalar curvature, and the generalized curvature vector.

The Ricci matrix of these metrics has a rigid shape: every entry is
``-(n+1)`` times the metric except the (0,0) slot, which picks up the
extra scalar correction ``-L(|z_0|^2)``.  The scalar curvature follows by
contraction, and the generalized curvatures are the coefficients of the
one-variable polynomial ``det(g + t Ric)/det(g)``.

Each quantity has two routes: the closed form and an independent numeric
route (finite differences of ``log det``, or polynomial interpolation of
the determinant ratio), so the two can be played against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import NumericError
from .geometry import (
    det_closed_form,
    hermitize,
    metric_closed_form,
    require_interior,
    wirtinger_hessian,
    _scal_coeffs,
    _split,
)
from .profiles import Profile

__all__ = [
    "ricci_closed_form",
    "ricci_numeric",
    "scalar_curvature",
    "generalized_scalars_closed",
    "generalized_scalars_poly",
    "curvature_polynomial_coefficients",
    "CurvatureRecord",
    "curvature_record",
]


def ricci_closed_form(z, profile: Profile) -> np.ndarray:
    """Ricci matrix ``-(n+1) h`` with ``-L`` added in the (0,0) slot.

    ``log det h = log B - (n+1) log A`` and the complex Hessian of the
    radial term ``log B(|z_0|^2)`` only hits the (0,0) entry, with value
    ``L = (x (log B)')'``; the rest is ``-(n+1)`` times the potential's
    Hessian, i.e. the metric itself.
    """
    z, x, _ = _split(z)
    _, _, _, _, ell, _, _, _ = _scal_coeffs(profile, x)
    n = z.shape[-1]
    ric = -(n + 1.0) * metric_closed_form(z, profile)
    ric[..., 0, 0] -= ell
    return ric


def ricci_numeric(z, profile: Profile, step: float = 1e-3) -> np.ndarray:
    """Ricci via ``-dd~ log det(h)`` with finite differences (the oracle)."""

    def logdet(pts):
        return np.log(det_closed_form(pts, profile))

    return -wirtinger_hessian(logdet, np.asarray(z, dtype=complex), step)


def scalar_curvature(z, profile: Profile):
    """Scalar curvature ``-(A/B) F L - n(n+1)``.

    The equivalent grouping ``-n(n+1) + G A`` (with ``G = -LF/B``) is
    evaluated alongside and must agree to 1e-12; a mismatch means the
    coefficient pipeline is numerically broken at this point.
    """
    z, x, _ = _split(z)
    n = z.shape[-1]
    a = require_interior(z, profile)
    f, _, _, b, ell, g, _, _ = _scal_coeffs(profile, x)
    v1 = -(a / b) * f * ell - n * (n + 1.0)
    v2 = -n * (n + 1.0) + g * a
    if np.any(np.abs(v1 - v2) > 1e-12 * (1.0 + np.abs(v1))):
        raise NumericError("scalar-curvature routes disagree beyond 1e-12")
    return v1 if np.ndim(v1) else float(v1)


def generalized_scalars_closed(z, profile: Profile) -> np.ndarray:
    """Generalized curvatures ``rho_0 .. rho_{n-1}`` in closed form.

    ``rho_k = (n+1)^k (-1)^(k+1) C(n-1, k) [ n(n+1)/(k+1) + A F L / B ]``;
    the k = 0 entry is the scalar curvature.
    """
    z, x, _ = _split(z)
    n = z.shape[-1]
    a = require_interior(z, profile)
    f, _, _, b, ell, _, _, _ = _scal_coeffs(profile, x)
    lam = a * f * ell / b
    ks = np.arange(n)
    pref = (n + 1.0) ** ks * (-1.0) ** (ks + 1) * np.array([comb(n - 1, k) for k in range(n)])
    out = pref * (n * (n + 1.0) / (ks + 1.0) + np.asarray(lam)[..., None])
    return out


def curvature_polynomial_coefficients(metric: np.ndarray, ricci: np.ndarray,
                                      const_tol: float = 1e-10) -> np.ndarray:
    """Coefficients of ``t^1..t^n`` in ``det(g + t Ric)/det(g)``.

    Evaluates ``det(I + t_j M)`` with ``M = g^{-1} Ric`` at ``n+1`` nodes
    placed well inside the region where ``I + t M`` stays away from
    singularity, then solves the Vandermonde system.  The recovered
    constant term must equal 1 to ``const_tol``; if not, the nodes are
    contracted once and the solve retried before giving up.
    """
    metric = np.asarray(metric, dtype=complex)
    ricci = np.asarray(ricci, dtype=complex)
    n = metric.shape[-1]
    m = np.linalg.solve(metric, ricci)
    scale = 1.0 / (2.0 * (n + 1.0) * (1.0 + np.max(np.abs(m))))
    for attempt in range(2):
        nodes = scale * np.arange(n + 1) / (2.0 ** attempt)
        dets = np.array([np.linalg.det(np.eye(n) + t * m) for t in nodes])
        vander = np.vander(nodes, n + 1, increasing=True)
        coeffs = np.linalg.solve(vander, dets)
        if abs(coeffs[0] - 1.0) <= const_tol and np.max(np.abs(coeffs.imag)) <= const_tol:
            return coeffs[1:].real
    raise NumericError("polynomial interpolation of det(g + t Ric)/det(g) is ill-conditioned")


def generalized_scalars_poly(z, profile: Profile) -> np.ndarray:
    """Generalized curvatures via the determinant-polynomial route (oracle)."""
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1:
        raise ValueError("generalized_scalars_poly expects a single point")
    h = metric_closed_form(z, profile)
    ric = ricci_closed_form(z, profile)
    return curvature_polynomial_coefficients(h, ric)


@dataclass(frozen=True)
class CurvatureRecord:
    """Curvature data of one point, JSON-serializable with fixed field names."""

    point: np.ndarray
    ricci: np.ndarray
    scal: float
    rho: np.ndarray

    def to_json(self) -> dict:
        pt = []
        for c in self.point:
            pt += [float(c.real), float(c.imag)]
        ric = [[float(v.real), float(v.imag)] for v in self.ricci.reshape(-1)]
        return {"point": pt, "ricci": ric, "scal": float(self.scal),
                "rho": [float(r) for r in self.rho]}


def curvature_record(z, profile: Profile) -> CurvatureRecord:
    """Assemble the full curvature record at one point."""
    z = np.asarray(z, dtype=complex)
    return CurvatureRecord(
        point=z,
        ricci=hermitize(ricci_closed_form(z, profile)),
        scal=float(scalar_curvature(z, profile)),
        rho=generalized_scalars_closed(z, profile),
    )
