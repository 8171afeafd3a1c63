"""Minimisation of phase-invariant functionals over the complex unit sphere.

Functionals evaluate on batches ``X`` of shape ``(k, n)`` (one vector per row).
Gradients are ambient gradients ``g`` with the convention
``df = Re(g^H dx)``; the optimiser projects them onto the sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadExponent,
    DegenerateInput,
    DimensionTooLarge,
    NotInvertible,
    NotPSD,
    WeightError,
)
from .generators import unit_vectors
from .linalg import (
    TOL_PSD,
    abs_value,
    adjoint,
    as_matrix,
    hermitian_part,
    smallest_singular_value,
    spectral_norm,
)

TOL_INV = 1e-10
TOL_KER = 1e-10
SMOOTH_EPS = 1e-12


def _apply(M, X):
    """Row-wise M @ x for a batch X of shape (k, n)."""
    return X @ M.T


def _form(M, X):
    """Row-wise <Mx, x> (complex)."""
    return np.sum(np.conj(X) * _apply(M, X), axis=1)


def _spread(H):
    w = np.linalg.eigvalsh(hermitian_part(H))
    return float(w[-1] - w[0])


def _eigvecs(H):
    return list(np.linalg.eigh(hermitian_part(H))[1].T)


class SphereFunctional:
    """Base class; subclasses implement ``values`` and ``grads``."""

    kind = "abstract"
    dim: int

    def values(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def grads(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def lipschitz(self) -> float:
        """Upper bound on the Riemannian gradient norm over the sphere.

        Bounds use |P_T(Mx)| <= spread(M) / 2 for Hermitian M, where P_T
        projects onto the tangent space at the unit vector x.
        """
        raise NotImplementedError

    def cell_lipschitz(self, X: np.ndarray, rad: np.ndarray) -> np.ndarray:
        """Lipschitz bound valid on the geodesic ball of radius ``rad`` around each row of X."""
        return np.full(X.shape[0], self.lipschitz())

    def descent(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Objective and gradient used by the optimiser: a monotone transform
        of ``values`` with the same minimisers. Defaults to ``grads``."""
        return self.grads(X)

    def context_vectors(self) -> list[np.ndarray]:
        return []

    def __call__(self, x) -> float:
        return float(self.values(np.asarray(x, dtype=np.complex128)[None, :])[0])


class PencilRatio(SphereFunctional):
    """<Px, x> / <Qx, x> for Hermitian P and PSD Q."""

    kind = "pencil_ratio"

    def __init__(self, P, Q):
        self.P = hermitian_part(as_matrix(P))
        self.Q = hermitian_part(as_matrix(Q))
        self.dim = self.P.shape[0]

    @classmethod
    def from_matrix(cls, A) -> "PencilRatio":
        A = as_matrix(A)
        absA, absAs = abs_value(A), abs_value(adjoint(A))
        return cls(absA - absAs, absA + absAs)

    def values(self, X):
        return _form(self.P, X).real / _form(self.Q, X).real

    def grads(self, X):
        p, q = _form(self.P, X).real, _form(self.Q, X).real
        r = p / q
        g = (2 * _apply(self.P, X) - 2 * r[:, None] * _apply(self.Q, X)) / q[:, None]
        return r, g

    def lipschitz(self):
        qmin = float(np.linalg.eigvalsh(self.Q)[0])
        if qmin <= 0:
            return math.inf
        rmax = spectral_norm(self.P) / qmin
        return (_spread(self.P) + rmax * _spread(self.Q)) / qmin

    def context_vectors(self):
        return _eigvecs(self.P) + _eigvecs(self.Q)


class QuadraticDeviation(SphereFunctional):
    """<((|A| - c)^2 + (|A*| - c)^2) x, x>,  c = <(|A| + |A*|) x, x> / 2.

    Expanded as ``a - s^2 + s^2 |x|^2 / 2`` with ``a = <(|A|^2 + |A*|^2)x, x>``
    and ``s = <(|A| + |A*|)x, x>``.
    """

    kind = "quadratic_deviation"

    def __init__(self, A):
        self.A = as_matrix(A)
        self.absA = abs_value(self.A)
        self.absAs = abs_value(adjoint(self.A))
        self.S = self.absA + self.absAs
        self.M2 = hermitian_part(self.absA @ self.absA + self.absAs @ self.absAs)
        self.dim = self.A.shape[0]

    def values(self, X):
        a = _form(self.M2, X).real
        s = _form(self.S, X).real
        n = np.sum(np.abs(X) ** 2, axis=1)
        return a - s**2 + s**2 * n / 2

    def grads(self, X):
        a = _form(self.M2, X).real
        SX = _apply(self.S, X)
        s = np.sum(np.conj(X) * SX, axis=1).real
        n = np.sum(np.abs(X) ** 2, axis=1)
        val = a - s**2 + s**2 * n / 2
        g = (
            2 * _apply(self.M2, X)
            + ((2 * n - 4) * s)[:, None] * SX
            + (s**2)[:, None] * X
        )
        return val, g

    def lipschitz(self):
        return _spread(self.M2) + spectral_norm(self.S) * _spread(self.S)

    def context_vectors(self):
        return _eigvecs(self.absA) + _eigvecs(self.absAs) + _eigvecs(self.S) + _eigvecs(self.M2)


def deviation_operator(A, x) -> np.ndarray:
    """(|A| - c I)^2 + (|A*| - c I)^2 at the unit vector x."""
    A = as_matrix(A)
    x = np.asarray(x, dtype=np.complex128)
    x = x / np.linalg.norm(x)
    absA, absAs = abs_value(A), abs_value(adjoint(A))
    c = 0.5 * float(np.vdot(x, (absA + absAs) @ x).real)
    eye = np.eye(A.shape[0])
    D1, D2 = absA - c * eye, absAs - c * eye
    return hermitian_part(D1 @ D1 + D2 @ D2)


class VarianceRatio(SphereFunctional):
    """|<A^2 x, x> - <Ax, x>^2| / |A* x|."""

    kind = "variance_ratio"

    def __init__(self, A, smooth_eps: float = SMOOTH_EPS):
        self.A = as_matrix(A)
        self.A2 = self.A @ self.A
        self.AAs = hermitian_part(self.A @ adjoint(self.A))
        self.eps = smooth_eps
        self.dim = self.A.shape[0]

    def numerators(self, X):
        return _form(self.A2, X) - _form(self.A, X) ** 2

    def values(self, X):
        z = self.numerators(X)
        return np.abs(z) / np.sqrt(_form(self.AAs, X).real)

    def grads(self, X):
        w1 = _form(self.A, X)
        z = _form(self.A2, X) - w1**2
        KX = _apply(self.AAs, X)
        D = np.sqrt(np.sum(np.conj(X) * KX, axis=1).real)
        N = np.abs(z)
        beta = np.conj(z) / np.sqrt(N**2 + self.eps**2)
        gamma = -2 * beta * w1
        A, A2 = self.A, self.A2
        gN = (
            beta[:, None] * _apply(A2, X)
            + np.conj(beta)[:, None] * _apply(adjoint(A2), X)
            + gamma[:, None] * _apply(A, X)
            + np.conj(gamma)[:, None] * _apply(adjoint(A), X)
        )
        gD = KX / D[:, None]
        g = gN / D[:, None] - (N / D**2)[:, None] * gD
        return N / D, g

    def descent(self, X):
        # |z|^2 / D^2 is smooth at the zero set where |z| / D has a cone
        w1 = _form(self.A, X)
        z = _form(self.A2, X) - w1**2
        KX = _apply(self.AAs, X)
        D2 = np.sum(np.conj(X) * KX, axis=1).real
        zc, gm = np.conj(z), -2 * np.conj(z) * w1
        g_num = 2 * (
            zc[:, None] * _apply(self.A2, X)
            + z[:, None] * _apply(adjoint(self.A2), X)
            + gm[:, None] * _apply(self.A, X)
            + np.conj(gm)[:, None] * _apply(adjoint(self.A), X)
        )
        N2 = np.abs(z) ** 2
        g = g_num / D2[:, None] - (N2 / D2**2)[:, None] * (2 * KX)
        return N2 / D2, g

    def _lipschitz_parts(self):
        # the numerator is unchanged by A -> A - mu I; centre A first
        n = self.dim
        Ac = self.A - (np.trace(self.A) / n) * np.eye(n)
        Ac2 = Ac @ Ac
        a = spectral_norm(Ac)
        lip_num = 2 * spectral_norm(Ac2 - (np.trace(Ac2) / n) * np.eye(n)) + 4 * a * a
        num_max = spectral_norm(Ac2) + a * a
        return lip_num, num_max, _spread(self.AAs), smallest_singular_value(self.A)

    def lipschitz(self):
        lip_num, num_max, spread, dmin = self._lipschitz_parts()
        if dmin <= 0:
            return math.inf
        return lip_num / dmin + num_max * spread / (2 * dmin**3)

    def cell_lipschitz(self, X, rad):
        # |z| and |A*x|^2 move at most lip_num and spread(AA*) per unit path length
        lip_num, num_max, spread, dmin = self._lipschitz_parts()
        if dmin <= 0:
            return np.full(X.shape[0], math.inf)
        z = np.abs(self.numerators(X))
        d2 = _form(self.AAs, X).real
        dm = np.sqrt(np.maximum(d2 - spread * rad, dmin * dmin))
        zmax = np.minimum(z + lip_num * rad, num_max)
        return lip_num / dm + zmax * spread / (2 * dm**3)

    def context_vectors(self):
        w, V = np.linalg.eig(self.A)
        vecs = [v / np.linalg.norm(v) for v in V.T]
        return vecs + _eigvecs(self.AAs)


class KianDeficiency(SphereFunctional):
    """sum_i w_i <|A_i - m(x)|^r x, x>,  m(x) = sum_j w_j <A_j x, x>."""

    kind = "kian_deficiency"

    def __init__(self, As, weights, r: float = 2.0):
        As = [as_matrix(M) for M in As]
        if not As:
            raise ValueError("need at least one operator")
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(As),) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise WeightError("weights must be nonnegative, one per operator, summing to 1")
        if not r >= 2:
            raise BadExponent(f"exponent must be >= 2, got {r}")
        self.As = [hermitian_part(M) for M in As]
        self.weights = w
        self.r = float(r)
        self.dim = As[0].shape[0]
        self.eigs = []
        for M in self.As:
            lam, V = np.linalg.eigh(M)
            scale = max(abs(lam[0]), abs(lam[-1]))
            if np.linalg.norm(M - adjoint(M)) > 1e-10 * max(scale, 1e-300) or lam[0] < -TOL_PSD * scale:
                raise NotPSD("every operator must be Hermitian PSD")
            self.eigs.append((np.maximum(lam, 0.0), V))

    def _parts(self, X):
        m = sum(wi * _form(M, X).real for wi, M in zip(self.weights, self.As))
        Ys = [X @ np.conj(V) for _, V in self.eigs]
        return m, Ys

    def values(self, X):
        m, Ys = self._parts(X)
        out = np.zeros(X.shape[0])
        for wi, (lam, _), Y in zip(self.weights, self.eigs, Ys):
            d = np.abs(lam[None, :] - m[:, None])
            out += wi * np.sum(d**self.r * np.abs(Y) ** 2, axis=1)
        return out

    def grads(self, X):
        m, Ys = self._parts(X)
        r = self.r
        val = np.zeros(X.shape[0])
        dm_coef = np.zeros(X.shape[0])
        g = np.zeros_like(X)
        for wi, (lam, V), Y in zip(self.weights, self.eigs, Ys):
            d = lam[None, :] - m[:, None]
            ad = np.abs(d)
            val += wi * np.sum(ad**r * np.abs(Y) ** 2, axis=1)
            g += wi * 2 * (ad**r * Y) @ V.T
            dm_coef += wi * np.sum(-r * ad ** (r - 1) * np.sign(d) * np.abs(Y) ** 2, axis=1)
        grad_m = sum(2 * wi * _apply(M, X) for wi, M in zip(self.weights, self.As))
        g += dm_coef[:, None] * grad_m
        return val, g

    def lipschitz(self):
        lams = np.concatenate([lam for lam, _ in self.eigs])
        delta = float(lams.max() - lams.min())
        mean = sum(wi * M for wi, M in zip(self.weights, self.As))
        return delta**self.r + self.r * delta ** (self.r - 1) * _spread(mean)

    def context_vectors(self):
        vecs = []
        for _, V in self.eigs:
            vecs.extend(V.T)
        mean = sum(wi * M for wi, M in zip(self.weights, self.As))
        return vecs + _eigvecs(mean)


@dataclass
class SphereOptions:
    starts: int = 64
    seed: int = 0
    grad_tol: float = 1e-7
    max_iters: int = 500
    oracle: bool | None = None
    oracle_resolution: float = 1e-3
    oracle_budget: int = 400_000
    certify_rtol: float = 1e-8


@dataclass
class SphereOptResult:
    minimizer: np.ndarray
    value: float
    gradient_norm: float
    starts_used: int
    oracle_value: float | None = None
    certified: bool = False
    lower_bound: float | None = None
    iterations: int = 0
    notes: dict = field(default_factory=dict)


# ---------------------------------------------------------------- optimiser


def _normalize_rows(X):
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _riemannian(X, G):
    radial = np.sum(np.conj(X) * G, axis=1).real
    return G - radial[:, None] * X


def projected_gradient_min(
    f: SphereFunctional, starts, opts: SphereOptions | None = None
) -> SphereOptResult:
    """Multi-start projected gradient descent with Armijo backtracking.

    All starts run in lock-step as one batch on ``f.descent``; the reported
    result is the lowest final value (first index on ties) and its
    ``gradient_norm`` is the projected gradient of the descent objective.
    """
    opts = opts or SphereOptions()
    X = np.array(starts, dtype=np.complex128, ndmin=2)
    if X.shape[0] == 0:
        raise ValueError("need at least one start")
    X = _normalize_rows(X)
    k = X.shape[0]
    F, G = f.descent(X)
    RG = _riemannian(X, G)
    gn = np.linalg.norm(RG, axis=1)
    step = np.where(gn > 0, 0.1 / np.maximum(gn, 1e-300), 1.0)
    active = gn > opts.grad_tol
    iters = 0
    while np.any(active) and iters < opts.max_iters:
        iters += 1
        idx = np.flatnonzero(active)
        x, fx, rg, g2 = X[idx], F[idx], RG[idx], gn[idx] ** 2
        t = step[idx].copy()
        done = np.zeros(idx.size, dtype=bool)
        Y = x.copy()
        FY = fx.copy()
        for _ in range(60):
            todo = ~done
            cand = _normalize_rows(x[todo] - t[todo, None] * rg[todo])
            fc = f.descent(cand)[0]
            ok = fc <= fx[todo] - 1e-4 * t[todo] * g2[todo]
            sel = np.flatnonzero(todo)[ok]
            Y[sel], FY[sel] = cand[ok], fc[ok]
            done[sel] = True
            if done.all():
                break
            t[~done] *= 0.5
        stalled = ~done
        moved = idx[done]
        if moved.size:
            Fn, Gn = f.descent(Y[done])
            RGn = _riemannian(Y[done], Gn)
            s = Y[done] - X[moved]
            yv = RGn - RG[moved]
            sy = np.sum(np.conj(s) * yv, axis=1).real
            ss = np.sum(np.abs(s) ** 2, axis=1)
            bb = np.where(sy > 0, ss / np.where(sy > 0, sy, 1.0), 2 * t[done])
            step[moved] = np.clip(bb, 1e-12, 1e6)
            # decrease below rounding of the objective counts as a stall
            flat = F[moved] - Fn <= 4 * np.finfo(float).eps * np.maximum(np.abs(F[moved]), 1e-300)
            X[moved], F[moved], RG[moved] = Y[done], Fn, RGn
            gn[moved] = np.linalg.norm(RGn, axis=1)
            active[moved[flat]] = False
        active[idx[stalled]] = False
        active &= gn > opts.grad_tol
    best = int(np.argmin(F))
    x = X[best]
    return SphereOptResult(
        minimizer=x,
        value=f(x),
        gradient_norm=float(gn[best]),
        starts_used=k,
        iterations=iters,
    )


def default_starts(f: SphereFunctional, count: int, seed: int) -> np.ndarray:
    ctx = [np.asarray(v, dtype=np.complex128) for v in f.context_vectors()]
    extra = max(count - len(ctx), 0)
    rows = ctx[:]
    if extra:
        rows.extend(unit_vectors(extra, f.dim, seed))
    return np.array(rows)


# ---------------------------------------------------------------- grid oracle


@dataclass(frozen=True)
class OracleResult:
    value: float
    point: np.ndarray
    lower_bound: float
    lipschitz: float
    resolution: float
    evaluations: int
    exhausted: bool


def _param_box(dim):
    if dim == 2:
        return np.array([0.0, 0.0]), np.array([math.pi, 2 * math.pi])
    return np.array([0.0, 0.0, 0.0, 0.0]), np.array([math.pi / 2, math.pi / 2, 2 * math.pi, 2 * math.pi])


def _param_points(P):
    if P.shape[1] == 2:
        al, be = P[:, 0], P[:, 1]
        return np.stack([np.cos(al / 2) + 0j, np.exp(1j * be) * np.sin(al / 2)], axis=1)
    a, b, b1, b2 = P.T
    return np.stack(
        [np.cos(a) + 0j, np.sin(a) * np.cos(b) * np.exp(1j * b1), np.sin(a) * np.sin(b) * np.exp(1j * b2)],
        axis=1,
    )


def _horizontal_speed(t_lo, t_hi):
    """sup of t*sqrt(1 - t^2) over [t_lo, t_hi] (phase-coordinate speed mod phase)."""
    t = np.clip(1 / math.sqrt(2.0), t_lo, t_hi)
    return t * np.sqrt(np.maximum(1 - t * t, 0.0))


def _cell_radius(C, H):
    """Bound on the horizontal path length from a cell centre to any cell point.

    Functionals are phase invariant, so only motion orthogonal to ``i x``
    counts; each chart coordinate contributes its sup speed times half-width.
    """
    lo, hi = C - H, C + H
    if C.shape[1] == 2:
        speed = _horizontal_speed(np.sin(lo[:, 0] / 2), np.sin(np.minimum(hi[:, 0] / 2, math.pi / 2)))
        return 0.5 * H[:, 0] + speed * H[:, 1]
    sa_lo, sa_hi = np.sin(np.maximum(lo[:, 0], 0.0)), np.sin(np.minimum(hi[:, 0], math.pi / 2))
    cb_lo, cb_hi = np.cos(np.minimum(hi[:, 1], math.pi / 2)), np.cos(np.maximum(lo[:, 1], 0.0))
    sb_lo, sb_hi = np.sin(np.maximum(lo[:, 1], 0.0)), np.sin(np.minimum(hi[:, 1], math.pi / 2))
    v2 = _horizontal_speed(sa_lo * cb_lo, sa_hi * cb_hi)
    v3 = _horizontal_speed(sa_lo * sb_lo, sa_hi * sb_hi)
    return H[:, 0] + sa_hi * H[:, 1] + v2 * H[:, 2] + v3 * H[:, 3]


def sphere_grid_oracle(
    f: SphereFunctional,
    dim: int | None = None,
    resolution: float = 1e-3,
    budget: int = 400_000,
) -> OracleResult:
    """Brute-force minimum of ``f`` over the sphere modulo phase (dim 2 or 3).

    Starts from a uniform net in a chart of the projective sphere and refines
    it by bisection, discarding cells that the Lipschitz bound proves cannot
    beat the incumbent. Refinement stops once every surviving cell has path
    radius at most ``resolution`` or ``budget`` evaluations are spent. The
    returned ``value`` is attained on the sphere; ``lower_bound`` is a
    Lipschitz-certified lower bound on the infimum.
    """
    dim = f.dim if dim is None else dim
    if dim not in (2, 3):
        raise DimensionTooLarge(f"grid oracle supports dim 2 or 3, got {dim}")
    if dim != f.dim:
        raise ValueError("dimension does not match the functional")
    L = f.lipschitz()
    lo, hi = _param_box(dim)
    cells = (16, 32) if dim == 2 else (6, 6, 12, 12)
    widths = (hi - lo) / np.array(cells)
    grids = np.meshgrid(*[lo[i] + widths[i] * (np.arange(cells[i]) + 0.5) for i in range(dim * 2 - 2)], indexing="ij")
    C = np.stack([g.ravel() for g in grids], axis=1)
    H = np.tile(widths / 2, (C.shape[0], 1))

    best_val, best_pt = math.inf, None
    lower = math.inf
    evals = 0
    exhausted = False
    achieved = 0.0
    while C.shape[0]:
        vals = f.values(_param_points(C))
        evals += C.shape[0]
        k = int(np.argmin(vals))
        if vals[k] < best_val:
            best_val, best_pt = float(vals[k]), _param_points(C[k:k + 1])[0]
        rad = _cell_radius(C, H)
        Lc = f.cell_lipschitz(_param_points(C), rad)
        lb = np.where(np.isfinite(Lc), vals - Lc * rad, -math.inf)
        live = lb < best_val
        fine = rad <= resolution
        final = live & fine
        if np.any(final):
            lower = min(lower, float(lb[final].min()))
            achieved = max(achieved, float(rad[final].max()))
        split = live & ~fine
        nsplit = int(split.sum())
        fan = 2 ** C.shape[1]
        if nsplit and evals + nsplit * fan > budget:
            # keep refining only the most promising cells; the rest feed the lower bound
            exhausted = True
            allowed = (budget - evals) // fan
            idx = np.flatnonzero(split)
            order = idx[np.argsort(lb[idx], kind="stable")]
            dropped = order[allowed:]
            lower = min(lower, float(lb[dropped].min()))
            achieved = max(achieved, float(rad[dropped].max()))
            split = np.zeros_like(split)
            split[order[:allowed]] = True
            if allowed == 0:
                break
        C, H = C[split], H[split] / 2
        offs = np.array(np.meshgrid(*[[-1.0, 1.0]] * C.shape[1], indexing="ij")).reshape(C.shape[1], -1).T
        C = (C[:, None, :] + offs[None, :, :] * H[:, None, :]).reshape(-1, C.shape[1])
        H = np.repeat(H, offs.shape[0], axis=0)
    lower = min(lower, best_val)
    return OracleResult(best_val, best_pt, lower, L, achieved, evals, exhausted)


# ---------------------------------------------------------------- joint range


@dataclass(frozen=True)
class JointRangeBounds:
    lower: float
    upper: float
    minimizer: np.ndarray
    angles: int


def joint_range_min(B, C, tol: float | None = None, initial: int = 64, max_angles: int = 2048) -> JointRangeBounds:
    """Bracket min over unit x of <Cx, x> - <Bx, x>^2 for Hermitian B, C.

    The pairs (<Bx,x>, <Cx,x>) fill a compact convex set and the objective
    v - u^2 is concave, so its minimum sits at an extreme point. Support
    points at sampled directions give an inner polygon (upper bound); the
    supporting lines give an outer polygon whose vertices give a lower bound.
    Directions are bisected next to the lowest outer vertex until the bracket
    closes to ``tol``.
    """
    B = hermitian_part(as_matrix(B))
    C = hermitian_part(as_matrix(C))
    scale = spectral_norm(C) + spectral_norm(B) ** 2
    if tol is None:
        tol = 1e-12 * max(scale, 1e-300)

    def probe(thetas):
        t = np.asarray(thetas)[:, None, None]
        H = np.cos(t) * B + np.sin(t) * C
        w, V = np.linalg.eigh(H)
        X = V[:, :, -1]
        u = np.sum(np.conj(X) * (X @ B.T), axis=1).real
        v = np.sum(np.conj(X) * (X @ C.T), axis=1).real
        return w[:, -1], u, v, X

    thetas = list(2 * math.pi * np.arange(initial) / initial)
    h, u, v, X = probe(thetas)
    h, u, v, X = list(h), list(u), list(v), list(X)
    while True:
        order = np.argsort(thetas)
        th = np.asarray(thetas)[order]
        hh = np.asarray(h)[order]
        gin = np.asarray(v)[order] - np.asarray(u)[order] ** 2
        th2 = np.roll(th, -1)
        th2[-1] += 2 * math.pi
        hh2 = np.roll(hh, -1)
        det = np.sin(th2 - th)
        safe = th2 - th >= 1e-4
        dsafe = np.where(safe, det, 1.0)
        vu = (hh * np.sin(th2) - hh2 * np.sin(th)) / dsafe
        vv = (np.cos(th) * hh2 - np.cos(th2) * hh) / dsafe
        # nearly parallel support lines: the triangle p1 p2 vertex has height at
        # most |p1 - p2| tan(dtheta / 2) / 2 above the chord, and v - u^2 drops
        # by at most |grad| h + h^2 within distance h of the chord
        pu, pv = np.asarray(u)[order], np.asarray(v)[order]
        pu2, pv2 = np.roll(pu, -1), np.roll(pv, -1)
        rho = np.hypot(pu2 - pu, pv2 - pv)
        hgt = 0.5 * rho * np.tan(np.where(safe, 0.0, th2 - th) / 2)
        grad = np.hypot(2 * np.maximum(np.abs(pu), np.abs(pu2)), 1.0)
        gdisc = np.minimum(pv - pu**2, pv2 - pu2**2) - grad * hgt - hgt**2
        gout = np.where(safe, vv - vu**2, gdisc)
        j = int(np.argmin(gout))
        i_up = int(np.argmin(gin))
        upper, lower = float(gin[i_up]), float(gout[j])
        gap = th2[j] - th[j]
        if upper - lower <= tol or len(thetas) >= max_angles or gap < 1e-10:
            break
        mid = (th[j] + gap / 2) % (2 * math.pi)
        hn, un, vn, Xn = probe([mid])
        thetas.append(mid)
        h.append(hn[0])
        u.append(un[0])
        v.append(vn[0])
        X.append(Xn[0])
    x = np.asarray(X)[order][i_up]
    return JointRangeBounds(min(lower, upper), upper, x, len(thetas))


# ---------------------------------------------------------------- xi quantities


def _finish(f, res: SphereOptResult, opts: SphereOptions, lower: float | None) -> SphereOptResult:
    """Attach the grid oracle (dim <= 3) and certification."""
    scale_tol = opts.certify_rtol * max(1.0, abs(res.value))
    use_oracle = opts.oracle if opts.oracle is not None else f.dim <= 3
    if use_oracle and f.dim in (2, 3):
        orc = sphere_grid_oracle(f, resolution=opts.oracle_resolution, budget=opts.oracle_budget)
        res.oracle_value = orc.value
        res.notes["oracle_lower"] = orc.lower_bound
        res.notes["oracle_resolution"] = orc.resolution
        res.notes["oracle_lipschitz"] = orc.lipschitz
        oracle_lower = min(res.value, orc.lower_bound)
        lower = oracle_lower if lower is None else max(lower, oracle_lower)
        # the net reached its resolution and found nothing better than the optimiser
        if not orc.exhausted and res.value <= orc.value + scale_tol:
            res.certified = True
    if lower is not None:
        res.lower_bound = min(lower, res.value)
        if res.value - lower <= scale_tol:
            res.certified = True
    return res


def xi_pencil(A) -> SphereOptResult:
    """inf <(|A| - |A*|)x, x> / <(|A| + |A*|)x, x> via the generalised pencil.

    Solved on the orthogonal complement of ker(|A| + |A*|).
    """
    A = as_matrix(A)
    nrm = spectral_norm(A)
    if nrm == 0.0:
        raise DegenerateInput("zero-matrix")
    f = PencilRatio.from_matrix(A)
    q, W = np.linalg.eigh(f.Q)
    keep = q > TOL_KER * q[-1]
    Wp, qp = W[:, keep], q[keep]
    Ppp = adjoint(Wp) @ f.P @ Wp
    T = Ppp / np.sqrt(np.outer(qp, qp))
    lam, Y = np.linalg.eigh(hermitian_part(T))
    x = Wp @ (Y[:, 0] / np.sqrt(qp))
    x = x / np.linalg.norm(x)
    value = float(np.clip(lam[0], -1.0, 1.0))
    _, g = f.grads(x[None, :])
    gn = float(np.linalg.norm(_riemannian(x[None, :], g)))
    return SphereOptResult(
        minimizer=x,
        value=value,
        gradient_norm=gn,
        starts_used=0,
        certified=True,
        lower_bound=value,
        notes={"functional_value": f(x)},
    )


def inf_xi_quadratic_deviation(A, opts: SphereOptions | None = None) -> SphereOptResult:
    """Infimum of the deviation functional over unit x, with a certified bracket."""
    opts = opts or SphereOptions()
    f = QuadraticDeviation(A)
    jr = joint_range_min(f.S / math.sqrt(2.0), f.M2)
    starts = np.vstack([jr.minimizer[None, :], default_starts(f, opts.starts, opts.seed)])
    res = projected_gradient_min(f, starts, opts)
    res.notes["joint_range_upper"] = jr.upper
    return _finish(f, res, opts, max(jr.lower, 0.0))


def inf_xi_variance_ratio(A, opts: SphereOptions | None = None) -> SphereOptResult:
    """Infimum of |<A^2x,x> - <Ax,x>^2| / |A*x| over unit x (A invertible)."""
    opts = opts or SphereOptions()
    A = as_matrix(A)
    nrm = spectral_norm(A)
    if nrm == 0.0 or smallest_singular_value(A) < TOL_INV * nrm:
        raise NotInvertible("not-invertible")
    f = VarianceRatio(A)
    res = projected_gradient_min(f, default_starts(f, opts.starts, opts.seed), opts)
    return _finish(f, res, opts, 0.0)


def kian_deficiency(As, weights, r: float = 2.0, opts: SphereOptions | None = None) -> SphereOptResult:
    """inf over unit x of sum_i w_i <|A_i - sum_j w_j <A_j x,x>|^r x, x>."""
    opts = opts or SphereOptions()
    f = KianDeficiency(As, weights, r)
    starts = default_starts(f, opts.starts, opts.seed)
    lower = 0.0
    if f.r == 2.0:
        mean = sum(wi * M for wi, M in zip(f.weights, f.As))
        second = sum(wi * M @ M for wi, M in zip(f.weights, f.As))
        jr = joint_range_min(mean, second)
        starts = np.vstack([jr.minimizer[None, :], starts])
        lower = max(jr.lower, 0.0)
    res = projected_gradient_min(f, starts, opts)
    return _finish(f, res, opts, lower)
