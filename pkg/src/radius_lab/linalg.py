"""Dense complex linear-algebra kernels.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the single gate that validates shape and finiteness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, DegenerateInput, NotHermitian, NotPSD

TOL_SYM = 1e-10
TOL_PSD = 1e-10
EPS_HYPONORMAL = 1e-9


def as_matrix(A) -> np.ndarray:
    """Return ``A`` as a square, finite ``complex128`` array."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def adjoint(A: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(A)).T


def hermitian_part(A: np.ndarray) -> np.ndarray:
    return (A + adjoint(A)) / 2


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ adjoint(V)


def _check_hermitian(H: np.ndarray, tol: float) -> np.ndarray:
    H = as_matrix(H)
    scale = np.linalg.norm(H, 2)
    if np.linalg.norm(H - adjoint(H), 2) > tol * max(scale, np.finfo(float).tiny):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return hermitian_part(H)


def hermitian_eig(H: np.ndarray, tol_sym: float = TOL_SYM) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    H = _check_hermitian(H, tol_sym)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return HermitianEig(w, V)


def spectral_norm(A: np.ndarray) -> float:
    """Largest singular value."""
    A = as_matrix(A)
    if not np.any(A):
        return 0.0
    return float(np.linalg.norm(A, 2))


def _clamped_eig(H: np.ndarray, tol_psd: float) -> HermitianEig:
    w, V = hermitian_eig(H)
    scale = max(abs(w[0]), abs(w[-1]))
    if w[0] < -tol_psd * scale:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} below -{tol_psd:g}*|H|")
    return HermitianEig(np.maximum(w, 0.0), V)


def sqrt_psd(H: np.ndarray, tol_psd: float = TOL_PSD) -> np.ndarray:
    """PSD square root; eigenvalues in ``[-tol_psd*|H|, 0)`` are clamped to 0."""
    w, V = _clamped_eig(H, tol_psd)
    return hermitian_part((V * np.sqrt(w)) @ adjoint(V))


def abs_value(A: np.ndarray) -> np.ndarray:
    """|A| = (A*A)^{1/2}."""
    A = as_matrix(A)
    return sqrt_psd(adjoint(A) @ A)


@dataclass(frozen=True)
class ScalarFn:
    """The power family t -> t**r, 1 <= r <= 2, applied to nonnegative reals.

    ``ScalarFn(1.0)`` is the identity.
    """

    r: float = 1.0

    def __post_init__(self):
        if not 1.0 <= self.r <= 2.0:
            raise ValueError(f"power exponent must lie in [1, 2], got {self.r}")

    @classmethod
    def identity(cls) -> "ScalarFn":
        return cls(1.0)

    @classmethod
    def parse(cls, text: str) -> "ScalarFn":
        """Parse ``identity`` or ``power:R``."""
        text = text.strip()
        if text == "identity":
            return cls.identity()
        kind, _, arg = text.partition(":")
        if kind != "power" or not arg:
            raise ValueError(f"unknown scalar function {text!r}")
        return cls(float(arg))

    @property
    def name(self) -> str:
        return "identity" if self.r == 1.0 else f"power:{self.r:g}"

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.r == 1.0:
            return t
        return np.power(t, self.r)


def apply_fn_psd(H: np.ndarray, f: ScalarFn, tol_psd: float = TOL_PSD) -> np.ndarray:
    """f(H) = V diag(f(lambda)) V* for PSD H."""
    w, V = _clamped_eig(H, tol_psd)
    return hermitian_part((V * f(w)) @ adjoint(V))


def psd_power(H: np.ndarray, r: float, tol_psd: float = TOL_PSD) -> np.ndarray:
    """H**r for PSD H and any r >= 0 (used by the norm-power primitives)."""
    if r < 0:
        raise ValueError("exponent must be nonnegative")
    w, V = _clamped_eig(H, tol_psd)
    if r == 0:
        p = np.ones_like(w)
    else:
        p = np.power(w, r)
    return hermitian_part((V * p) @ adjoint(V))


def hyponormality_defect(A: np.ndarray) -> float:
    """Smallest eigenvalue of the self-commutator A*A - AA*."""
    A = as_matrix(A)
    C = adjoint(A) @ A - A @ adjoint(A)
    return float(np.linalg.eigvalsh(hermitian_part(C))[0])


def is_hyponormal(A: np.ndarray, eps: float = EPS_HYPONORMAL) -> bool:
    A = as_matrix(A)
    return hyponormality_defect(A) >= -eps * spectral_norm(A) ** 2


def smallest_singular_value(A: np.ndarray) -> float:
    return float(np.linalg.svd(as_matrix(A), compute_uv=False)[-1])


def require_nonzero(A: np.ndarray) -> float:
    """Return |A|, raising DegenerateInput for the zero matrix."""
    nrm = spectral_norm(A)
    if nrm == 0.0:
        raise DegenerateInput("zero-matrix")
    return nrm
