"""Numerical radius and numerical-range boundary.

The radius is computed from the support function of the numerical range,
``h(theta) = lambda_max(Re(e^{i theta} A))``, whose maximum over the circle is
omega(A). A coarse angle grid is refined by golden-section search around the
most promising local maxima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch
from .linalg import adjoint, as_matrix, spectral_norm

TWO_PI = 2.0 * math.pi
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RadiusResult:
    omega: float
    theta_star: float
    witness: np.ndarray | None
    certified_error: float


@dataclass(frozen=True)
class RangeBoundarySample:
    theta: float
    lambda_max: float
    boundary_point: complex


def rotated_real_part(A: np.ndarray, theta: float) -> np.ndarray:
    """(e^{i theta} A + (e^{i theta} A)^*) / 2."""
    R = np.exp(1j * theta) * np.asarray(A, dtype=np.complex128)
    return (R + adjoint(R)) / 2


def _hermitian_pair(A):
    re = (A + adjoint(A)) / 2
    im = (A - adjoint(A)) / 2j
    return re, im


def _rotated_stack(re, im, thetas):
    c = np.cos(thetas)[:, None, None]
    s = np.sin(thetas)[:, None, None]
    H = c * re - s * im
    return (H + np.conj(np.swapaxes(H, -1, -2))) / 2


def support_values(A: np.ndarray, thetas) -> np.ndarray:
    """lambda_max of the rotated Hermitian part at each angle."""
    re, im = _hermitian_pair(as_matrix(A))
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    return np.linalg.eigvalsh(_rotated_stack(re, im, thetas))[:, -1]


def _golden_max(fun, a, b, width):
    """Golden-section maximisation on [a, b]; returns (x, f(x), bracket width)."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(200):
        if b - a <= width:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
    if fc >= fd:
        return c, fc, b - a
    return d, fd, b - a


def _candidate_peaks(vals, spread, n_peaks, cap=16):
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    idx = np.flatnonzero((vals >= left) & (vals >= right))
    if idx.size == 0:
        idx = np.arange(vals.size)
    idx = idx[np.argsort(-vals[idx], kind="stable")]
    best = vals[idx[0]]
    keep = list(idx[:n_peaks])
    for k in idx[n_peaks:]:
        if len(keep) >= cap or vals[k] < best - spread:
            break
        keep.append(k)
    return keep


def numerical_radius(
    A: np.ndarray,
    tol: float | None = None,
    grid: int = 1024,
    n_peaks: int = 5,
) -> RadiusResult:
    """omega(A) = sup |<Ax, x>| over unit x, with a witness vector.

    ``tol`` is an absolute bound on ``certified_error``; it defaults to
    ``1e-12 * |A|``.
    """
    A = as_matrix(A)
    nrm = spectral_norm(A)
    if nrm == 0.0:
        return RadiusResult(0.0, 0.0, None, 0.0)
    if tol is None:
        tol = 1e-12 * nrm
    if tol <= 0:
        raise ValueError("tol must be positive")

    re, im = _hermitian_pair(A)
    step = TWO_PI / grid
    thetas = step * np.arange(grid)
    vals = np.linalg.eigvalsh(_rotated_stack(re, im, thetas))[:, -1]

    def h(theta):
        return float(np.linalg.eigvalsh(_rotated_stack(re, im, np.array([theta])))[0, -1])

    # candidates: top local maxima plus any within the Lipschitz reach of the best
    best_theta, best_val, best_width = float(thetas[0]), -math.inf, 2 * step
    for k in _candidate_peaks(vals, nrm * step, n_peaks):
        t0 = float(thetas[k])
        t, v, w = _golden_max(h, t0 - step, t0 + step, tol / nrm)
        if vals[k] > v:
            t, v = t0, float(vals[k])
        if v > best_val:
            best_theta, best_val, best_width = t, v, w

    theta_star = best_theta % TWO_PI
    Hs = rotated_real_part(A, theta_star)
    w, V = np.linalg.eigh((Hs + adjoint(Hs)) / 2)
    x = V[:, -1]
    x = x / np.linalg.norm(x)
    omega = float(max(w[-1], best_val, abs(np.vdot(x, A @ x))))
    cert = nrm * best_width
    slack = cert + 1e-12 * nrm
    if not (0.5 * nrm - slack <= omega <= nrm + slack):
        raise ConvergenceFailure(
            f"numerical radius {omega!r} outside [|A|/2, |A|] for |A|={nrm!r}"
        )
    return RadiusResult(omega, theta_star, x, cert)


def numerical_range_boundary(A: np.ndarray, samples: int) -> list[RangeBoundarySample]:
    """Boundary points <A x_theta, x_theta> at uniformly spaced angles."""
    if samples < 3:
        raise ValueError("need at least 3 samples")
    A = as_matrix(A)
    re, im = _hermitian_pair(A)
    thetas = TWO_PI * np.arange(samples) / samples
    w, V = np.linalg.eigh(_rotated_stack(re, im, thetas))
    X = V[:, :, -1]
    pts = np.einsum("ki,ij,kj->k", np.conj(X), A, X)
    return [
        RangeBoundarySample(float(t), float(lam), complex(p))
        for t, lam, p in zip(thetas, w[:, -1], pts)
    ]


def omega_2x2_oracle(A: np.ndarray) -> float:
    """Exact omega of a 2x2 matrix from its elliptical numerical range.

    The range is an ellipse with foci at the eigenvalues and minor axis
    sqrt(tr(A*A) - |l1|^2 - |l2|^2). The farthest point from the origin is a
    stationary point of |z(t)|^2 along the parametrised ellipse; those are
    roots of a quartic in u = e^{it}.
    """
    A = as_matrix(A)
    if A.shape != (2, 2):
        raise DimensionMismatch(f"oracle needs a 2x2 matrix, got {A.shape}")
    tr = A[0, 0] + A[1, 1]
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    disc = np.sqrt(tr * tr / 4 - det)
    l1, l2 = tr / 2 + disc, tr / 2 - disc
    center = (l1 + l2) / 2
    minor2 = max(float(np.sum(np.abs(A) ** 2) - abs(l1) ** 2 - abs(l2) ** 2), 0.0)
    a = math.sqrt(minor2 + abs(l1 - l2) ** 2) / 2
    b = math.sqrt(minor2) / 2
    psi = float(np.angle(l1 - l2)) if l1 != l2 else 0.0

    # z(t) = center + e^{i psi} (a cos t + i b sin t)
    cp = np.conj(center) * np.exp(1j * psi)
    p, q = float(cp.real), float(cp.imag)
    coeffs = [b * b - a * a, -2 * p * a - 2j * q * b, 0.0, 2 * p * a - 2j * q * b, -(b * b - a * a)]
    coeffs = np.array(coeffs, dtype=complex)
    nz = np.flatnonzero(np.abs(coeffs) > 1e-300)
    ts = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
    if nz.size >= 2:
        roots = np.roots(coeffs[nz[0]:])
        ts.extend(float(np.angle(u)) for u in roots if abs(u) > 0)
    ts = np.array(ts)
    z = center + np.exp(1j * psi) * (a * np.cos(ts) + 1j * b * np.sin(ts))
    return float(np.max(np.abs(z)))
