"""Potential, metric matrix, determinant, inverse, and scalar coefficients.

Everything here evaluates closed forms at points ``z`` of the domain

    D_F = { z in C^n : |z_0|^2 < x0,  |z_1|^2 + ... + |z_{n-1}|^2 < F(|z_0|^2) }

for a given profile ``F``.  The Kaehler potential is ``Phi = -log A`` with
``A = F(|z_0|^2) - sum_{k>=1} |z_k|^2``; the metric is its complex Hessian.
All functions broadcast over leading axes: ``z`` may be ``(n,)`` or
``(m, n)``, matrices come back as ``(..., n, n)``.

The finite-difference Wirtinger Hessian lives here too; it is the
independent oracle against which every closed form is tested.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import DomainError, SingularCoefficientError, StepError
from .profiles import Profile

__all__ = [
    "hermitize",
    "require_interior",
    "potential",
    "metric_closed_form",
    "wirtinger_hessian",
    "det_closed_form",
    "principal_minor",
    "inverse_metric_closed_form",
    "CoefficientBundle",
    "coefficient_bundle",
    "grid_csv_header",
    "grid_csv_rows",
]


def hermitize(m: np.ndarray) -> np.ndarray:
    """Hermitian part ``(M + M^H)/2``.

    The symmetrization makes ``out[..., a, b] == conj(out[..., b, a])``
    exact in floating point (sums commute entrywise), so downstream code
    may rely on exact Hermiticity.
    """
    return 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))


def _split(z):
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] < 2:
        raise DomainError(f"points need n >= 2 coordinates, got shape {z.shape}")
    x = np.abs(z[..., 0]) ** 2
    s = np.sum(np.abs(z[..., 1:]) ** 2, axis=-1)
    return z, x, s


def require_interior(z, profile: Profile):
    """Validate strict interior membership; return the gap ``A > 0``."""
    z, x, s = _split(z)
    a = profile.deriv(0, x) - s      # deriv() also enforces |z_0|^2 < x0
    if np.any(np.asarray(a) <= 0.0):
        raise DomainError("point on or outside the boundary (gap A <= 0)")
    return a


def potential(z, profile: Profile):
    """Kaehler potential ``-log A`` at interior points."""
    a = require_interior(z, profile)
    return -np.log(a)


def metric_closed_form(z, profile: Profile) -> np.ndarray:
    """Metric matrix ``g_{a b~} = d^2 Phi / dz_a dz~_b`` in closed form.

    Shape ``(..., n, n)``, exactly Hermitian.  The matrix is positive
    definite precisely when ``kahler_indicator < 0`` at ``|z_0|^2``; for
    non-admissible profiles the (indefinite) matrix is still returned so
    that falsification sweeps can inspect it.
    """
    z, x, s = _split(z)
    n = z.shape[-1]
    f = np.asarray(profile.deriv(0, x))
    f1 = np.asarray(profile.deriv(1, x))
    f2 = np.asarray(profile.deriv(2, x))
    a = f - s
    if np.any(a <= 0.0):
        raise DomainError("point on or outside the boundary (gap A <= 0)")
    c = f1 ** 2 * x - (f2 * x + f1) * a
    a2 = a ** 2
    zf = z[..., 1:]
    h = np.empty(z.shape + (n,), dtype=complex)
    h[..., 0, 0] = c / a2
    top = -f1[..., None] * np.conj(z[..., :1]) * zf / a2[..., None]
    h[..., 0, 1:] = top
    h[..., 1:, 0] = np.conj(top)
    block = np.einsum("...i,...j->...ij", np.conj(zf), zf)
    step = n  # write the diagonal of the fiber block in place
    block.reshape(block.shape[:-2] + (-1,))[..., :: step] += a[..., None]
    h[..., 1:, 1:] = block / a2[..., None, None]
    return hermitize(h)


def _complex_hessian_once(f, z, step):
    n = z.shape[0]
    m = 2 * n
    u0 = np.concatenate([z.real, z.imag])
    disp = [np.zeros(m)]
    diag_idx = []
    for p in range(m):
        e = np.zeros(m)
        e[p] = step
        diag_idx.append(len(disp))
        disp += [e, -e]
    off_idx = {}
    for p in range(m):
        ep = np.zeros(m)
        ep[p] = step
        for q in range(p + 1, m):
            eq = np.zeros(m)
            eq[q] = step
            off_idx[(p, q)] = len(disp)
            disp += [ep + eq, ep - eq, -ep + eq, -ep - eq]
    u = u0[None, :] + np.asarray(disp)
    pts = u[:, :n] + 1j * u[:, n:]
    vals = np.asarray(f(pts), dtype=float)
    f0 = vals[0]
    h = np.empty((m, m))
    for p in range(m):
        i = diag_idx[p]
        h[p, p] = (vals[i] - 2.0 * f0 + vals[i + 1]) / step ** 2
    for (p, q), i in off_idx.items():
        v = (vals[i] - vals[i + 1] - vals[i + 2] + vals[i + 3]) / (4.0 * step ** 2)
        h[p, q] = h[q, p] = v
    hxx = h[:n, :n]
    hyy = h[n:, n:]
    hxy = h[:n, n:]
    return 0.25 * ((hxx + hyy) + 1j * (hxy - hxy.T))


def wirtinger_hessian(f, z, step: float = 1e-3, richardson: bool = True) -> np.ndarray:
    """Complex Hessian ``d^2 f / dz_a dz~_b`` by central differences.

    Parameters
    ----------
    f : callable
        Maps an ``(m, n)`` complex array of points to ``(m,)`` real values;
        must be evaluable on a ``4 * step`` ball around ``z``.
    z : array_like, shape (n,)
        Expansion point.
    step : float
        Base step; with ``richardson=True`` the step-halved estimate is
        combined to cancel the leading error term.

    The second derivatives over the ``2n`` real coordinates are assembled
    into Wirtinger form ``(Hxx + Hyy + i(Hxy - Hxy^T)) / 4`` and the result
    is symmetrized to exact Hermitian form.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1:
        raise ValueError("wirtinger_hessian expects a single point of shape (n,)")
    if step <= 0:
        raise StepError(f"step must be positive, got {step}")
    try:
        h1 = _complex_hessian_once(f, z, step)
        if richardson:
            h2 = _complex_hessian_once(f, z, step / 2.0)
            h1 = (4.0 * h2 - h1) / 3.0
    except DomainError as exc:
        raise StepError(f"stencil with step {step} leaves the domain") from exc
    return hermitize(h1)


def det_closed_form(z, profile: Profile):
    """Metric determinant in product form, ``B(x) / A^(n+1)``.

    Equivalently ``-(F^2/A^(n+1)) * (x F'/F)'``; positive exactly when the
    profile is Kaehler-admissible at ``x = |z_0|^2``.
    """
    z, x, s = _split(z)
    n = z.shape[-1]
    f = np.asarray(profile.deriv(0, x))
    f1 = np.asarray(profile.deriv(1, x))
    f2 = np.asarray(profile.deriv(2, x))
    a = f - s
    if np.any(a <= 0.0):
        raise DomainError("point on or outside the boundary (gap A <= 0)")
    b = f1 ** 2 * x - f * (f1 + f2 * x)
    out = b / a ** (n + 1)
    return out if np.ndim(out) else float(out)


def principal_minor(z, profile: Profile, alpha: int):
    """Closed-form trailing minor of the fiber block of ``A^2 h``.

    For ``1 <= alpha <= n-1``, the determinant of the submatrix of
    ``A^2 h`` over rows and columns ``alpha..n-1`` equals
    ``A^(n-alpha) + A^(n-alpha-1) (|z_alpha|^2 + ... + |z_{n-1}|^2)``.
    """
    z, x, s = _split(z)
    n = z.shape[-1]
    if not 1 <= alpha <= n - 1:
        raise ValueError(f"alpha must be in 1..{n - 1}, got {alpha}")
    a = require_interior(z, profile)
    tail = np.sum(np.abs(z[..., alpha:]) ** 2, axis=-1)
    out = a ** (n - alpha) + a ** (n - alpha - 1) * tail
    return out if np.ndim(out) else float(out)


def inverse_metric_closed_form(z, profile: Profile) -> np.ndarray:
    """Inverse metric ``g^{a b~}`` as a matrix with rows indexed by ``a``.

    Entries (with ``T = F' + F'' x`` and prefactor ``A/B``):
    ``g^{0 0~} = (A/B) F``, ``g^{i 0~} = (A/B) F' z_0 z~_i``,
    ``g^{i j~} = (A/B) T z_j z~_i`` off the fiber diagonal, and
    ``g^{i i~} = (A/B) (B + T |z_i|^2)``.  Satisfies ``Minv @ h = I``.
    """
    z, x, s = _split(z)
    n = z.shape[-1]
    f = np.asarray(profile.deriv(0, x))
    f1 = np.asarray(profile.deriv(1, x))
    f2 = np.asarray(profile.deriv(2, x))
    a = f - s
    if np.any(a <= 0.0):
        raise DomainError("point on or outside the boundary (gap A <= 0)")
    b = f1 ** 2 * x - f * (f1 + f2 * x)
    if np.any(np.abs(b) < 1e-14):
        raise SingularCoefficientError("metric coefficient B vanishes (degenerate metric)")
    t = f1 + f2 * x
    ab = a / b
    zf = z[..., 1:]
    minv = np.empty(z.shape + (n,), dtype=complex)
    minv[..., 0, 0] = ab * f
    col = ab[..., None] * f1[..., None] * z[..., :1] * np.conj(zf)
    minv[..., 1:, 0] = col
    minv[..., 0, 1:] = np.conj(col)
    # block[i-1, j-1] = conj(z_i) z_j = z_j z~_i, the off-diagonal pattern
    block = (ab * t)[..., None, None] * np.einsum("...i,...j->...ij", np.conj(zf), zf)
    step = n
    block.reshape(block.shape[:-2] + (-1,))[..., :: step] += (ab * b)[..., None]
    minv[..., 1:, 1:] = block
    return hermitize(minv)


@dataclass(frozen=True)
class CoefficientBundle:
    """Scalar coefficients of the geometry at one point.

    ``A`` is the membership gap (the only field that sees the fiber
    coordinates); all others depend on ``x = |z_0|^2`` alone:

    * ``B = F'^2 x - F (F' + F'' x)`` -- determinant numerator,
    * ``C = F'^2 x - (F'' x + F') A`` -- (0,0) Hessian numerator,
    * ``L = (x (log B)')'`` -- Ricci correction in the (0,0) slot,
    * ``G = -L F / B`` -- non-constant factor of the scalar curvature,

    plus the inverse-metric split ``g^{00~} = P00 + Q00 S`` (and so on for
    the other index patterns), where ``S`` is the total fiber radius.
    """

    A: float
    B: float
    C: float
    L: float
    G: float
    p00: float
    q00: float
    p0a: float
    q0a: float
    paa: float
    qaa: float
    raa: float
    pab: float
    qab: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _b_derivatives(profile: Profile, x):
    """``B`` and its first three derivatives from profile derivatives.

    ``B'''`` involves ``F^(5)``, which is why profiles carry five orders.
    """
    f = np.asarray(profile.deriv(0, x))
    f1 = np.asarray(profile.deriv(1, x))
    f2 = np.asarray(profile.deriv(2, x))
    f3 = np.asarray(profile.deriv(3, x))
    f4 = np.asarray(profile.deriv(4, x))
    f5 = np.asarray(profile.deriv(5, x))
    b = f1 ** 2 * x - f * (f1 + f2 * x)
    b1 = x * f1 * f2 - 2.0 * f * f2 - x * f * f3
    b2 = -f1 * f2 + x * f2 ** 2 - 3.0 * f * f3 - x * f * f4
    b3 = -4.0 * f1 * f3 + 2.0 * x * f2 * f3 - 4.0 * f * f4 - x * f1 * f4 - x * f * f5
    return b, b1, b2, b3


def _scal_coeffs(profile: Profile, x):
    """``(F, F', F'', B, L, G, L', G')`` at ``x``, vectorized.

    ``L = (x (log B)')'`` and its derivative are expanded in terms of
    ``B .. B'''`` so that built-in profiles evaluate them in closed form.
    """
    f = np.asarray(profile.deriv(0, x))
    f1 = np.asarray(profile.deriv(1, x))
    f2 = np.asarray(profile.deriv(2, x))
    b, b1, b2, b3 = _b_derivatives(profile, x)
    if np.any(np.asarray(b) == 0.0):
        raise SingularCoefficientError("coefficient B vanishes; metric degenerate")
    r1 = b1 / b
    r2 = b2 / b - r1 ** 2
    ell = r1 + x * r2
    ell1 = 2.0 * r2 + x * (b3 / b - 3.0 * b1 * b2 / b ** 2 + 2.0 * r1 ** 3)
    g = -ell * f / b
    g1 = -(ell1 * f + ell * f1) / b + ell * f * b1 / b ** 2
    return f, f1, f2, b, ell, g, ell1, g1


def coefficient_bundle(z, profile: Profile) -> CoefficientBundle:
    """All scalar coefficients at a single point ``z``."""
    z, x, s = _split(z)
    if z.ndim != 1:
        raise ValueError("coefficient_bundle expects a single point of shape (n,)")
    a = float(require_interior(z, profile))
    f, f1, f2, b, ell, g, _, _ = _scal_coeffs(profile, x)
    t = f1 + f2 * x
    c = f1 ** 2 * x - t * a
    return CoefficientBundle(
        A=a, B=float(b), C=float(c), L=float(ell), G=float(g),
        p00=float(f ** 2 / b), q00=float(-f / b),
        p0a=float(f1 * f / b), q0a=float(-f1 / b),
        paa=float(f * t / b - 1.0), qaa=float(t / b), raa=float(t / b),
        pab=float(f * t / b), qab=float(-t / b),
    )


def grid_csv_header(n: int) -> list[str]:
    """Column order of the grid dump (documented, fixed)."""
    cols = []
    for k in range(n):
        cols += [f"z{k}_re", f"z{k}_im"]
    return cols + ["A", "B", "C", "L", "G", "det", "min_eig"]


def grid_csv_rows(points: np.ndarray, profile: Profile) -> np.ndarray:
    """Grid dump matrix matching :func:`grid_csv_header`.

    One row per point: interleaved coordinates, the scalar coefficients,
    the closed-form determinant, and the smallest eigenvalue of the metric
    (a positive-definiteness indicator).
    """
    points = np.asarray(points, dtype=complex)
    n = points.shape[-1]
    x = np.abs(points[..., 0]) ** 2
    a = require_interior(points, profile)
    f, f1, f2, b, ell, g, _, _ = _scal_coeffs(profile, x)
    c = f1 ** 2 * x - (f1 + f2 * x) * a
    det = det_closed_form(points, profile)
    min_eig = np.linalg.eigvalsh(metric_closed_form(points, profile))[..., 0]
    cols = []
    for k in range(n):
        cols += [points[..., k].real, points[..., k].imag]
    cols += [a, b + 0 * a, c, ell + 0 * a, g + 0 * a, det, min_eig]
    return np.column_stack(cols)
