"""Catalog of numerical-radius inequalities and the lemmas behind them.

Every entry evaluates to a :class:`BoundReport` holding ``lhs <= rhs`` as
computed, with ``slack = rhs - lhs``. Where an infimum appears on the larger
side of an inequality, a certified lower estimate of that infimum is used so
that an uncertified optimiser can never manufacture a violation.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BadExponent, NotPSD, OperandError, SpecError, WeightError
from .linalg import (
    EPS_HYPONORMAL,
    TOL_PSD,
    ScalarFn,
    abs_value,
    adjoint,
    apply_fn_psd,
    as_matrix,
    hermitian_part,
    hyponormality_defect,
    psd_power,
    smallest_singular_value,
    spectral_norm,
)
from .numrange import RadiusResult, numerical_radius
from .sphere import (
    TOL_INV,
    KianDeficiency,
    QuadraticDeviation,
    SphereOptions,
    VarianceRatio,
    joint_range_min,
    kian_deficiency,
    xi_pencil,
)

CATALOG_VERSION = "radius-lab-catalog/1"

DEFAULT_RTOL = 1e-8
SWEEP_R = (1.0, 1.5, 2.0)

RADIUS_BOUNDS = {
    # id: (degree, parameter kind, statement)
    "eq7_lower": (1, None, "|A|/2 <= w(A)"),
    "eq7_upper": (1, None, "w(A) <= |A|"),
    "eq5_kittaneh": (1, None, "w(A) <= (|A| + |A^2|^(1/2)) / 2"),
    "eq3_lower": (2, None, "| |A|^2 + |A*|^2 | / 4 <= w(A)^2"),
    "eq3_upper": (2, None, "w(A)^2 <= | |A|^2 + |A*|^2 | / 2"),
    "dragomir": (2, None, "w(A)^2 <= (w(A^2) + |A|^2) / 2"),
    "half_abs_sum": (1, None, "w(A) <= | |A| + |A*| | / 2"),
    "thm24": ("r", "f", "f(w(A)) <= |f(c|A|) + f(c|A*|)| / 2, c = 1/(1 + xi^2/8), hyponormal A"),
    "cor_power": ("r", "r", "w^r <= | |A|^r + |A*|^r | / (2 (1 + xi^2/8)^r), hyponormal A"),
    "cor_c1": ("r", "r", "w^r <= (|A|^r + | |A|^(r/2) |A*|^(r/2) |) / (2 (1 + xi^2/8)^r), hyponormal A"),
    "cor_c1_sq": ("r", "r", "w^r <= (|A|^r + |A^2|^(r/2)) / (2 (1 + xi^2/8)^r), hyponormal A"),
    "thm29": (2, None, "w^2 <= (| |A|^2 + |A*|^2 | - inf xi(x)) / 2"),
    "thm31_sq": (1, None, "|A| (1 - |I - A/|A||^2 / 2) <= w(A)"),
    "thm31_lin": (1, None, "|A| (1 - |I - A/|A|| / 2) <= w(A)"),
    "thm35": (2, None, "inf xi(x)^2 + w(A)^2 <= |A|^2, invertible A"),
}

PRIMITIVES = {
    "lem_log": "(a - 1)/(a + 1) <= ln a, a >= 1",
    "zou": "(1 + (ln a - ln b)^2 / 8) sqrt(ab) <= (a + b)/2, a, b > 0",
    "mixed_schwarz": "|<Ax, y>| <= <|A|x, x>^(1/2) <|A*|y, y>^(1/2)",
    "norm_sum": "|A + B| <= max(|A|, |B|) + |A^(1/2) B^(1/2)|, A, B PSD",
    "norm_power": "|A^r B^r| <= |AB|^r, 0 <= r <= 1, A, B PSD",
    "vec_cs": "1 - |x/|x| - y/|y||^2 / 2 <= |<x, y>| / (|x| |y|)",
    "vec_cs_op": "|Ax| (1 - |x - Ax/|Ax||^2 / 2) <= |<Ax, x>|, |x| = 1",
    "gram_lemma": "|<x - sum_i a_i z_i, y>|^2 <= |y|^2 (|x|^2 - sum_i |<x,z_i>|^2 / sum_j |<z_i,z_j>|)",
    "variance_vec": "xi(x)^2 + |<Ax, x>|^2 <= |Ax|^2, |x| = 1",
    "kian_lemma": "|sum w_i A_i|^r <= |sum w_i A_i^r| - inf_x sum_i w_i <|A_i - m(x)|^r x, x>, r >= 2",
}

CATALOG = tuple(RADIUS_BOUNDS) + tuple(PRIMITIVES)


@dataclass
class BoundReport:
    id: str
    lhs: float
    rhs: float
    slack: float
    applicable: bool = True
    reason: str | None = None
    witness: dict = field(default_factory=dict)
    inputs_digest: str = ""
    degree: float = 1.0
    scale: float = 1.0

    def tolerance(self, rtol: float = DEFAULT_RTOL) -> float:
        """Allowed negative slack: rtol * max(1, scale**degree)."""
        return rtol * max(1.0, self.scale**self.degree)

    def violated(self, rtol: float = DEFAULT_RTOL) -> bool:
        return self.applicable and not self.slack >= -self.tolerance(rtol)

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "applicable": self.applicable,
            "reason": self.reason,
            "degree": self.degree,
            "inputs_digest": self.inputs_digest,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class OrderingCheck:
    name: str
    holds: bool
    applicable: bool
    lhs: float
    rhs: float
    detail: str = ""


def matrix_digest(A: np.ndarray) -> str:
    A = np.ascontiguousarray(as_matrix(A))
    h = hashlib.sha256(str(A.shape).encode())
    h.update(A.tobytes())
    return h.hexdigest()[:16]


def bound_label(bound_id: str, param=None) -> str:
    """Report id including its parameter, e.g. ``cor_power(r=1.5)``."""
    if param is None:
        return bound_id
    if isinstance(param, ScalarFn):
        return f"{bound_id}(f={param.name})"
    return f"{bound_id}(r={float(param):g})"


def parse_bound_label(label: str):
    """Inverse of :func:`bound_label`; raises SpecError on unknown ids."""
    text = label.strip()
    param = None
    if "(" in text:
        if not text.endswith(")"):
            raise SpecError(f"bad bound id {label!r}")
        base, arg = text[:-1].split("(", 1)
        key, _, value = arg.partition("=")
        try:
            if key == "f":
                param = ScalarFn.parse(value)
            elif key == "r":
                param = float(value)
            else:
                raise SpecError(f"bad bound parameter in {label!r}")
        except ValueError as exc:
            raise SpecError(f"bad bound parameter in {label!r}") from exc
        text = base
    if text not in CATALOG:
        raise SpecError(f"unknown bound id {text!r}")
    kind = RADIUS_BOUNDS[text][1] if text in RADIUS_BOUNDS else "r" if text == "kian_lemma" else None
    if param is not None and kind is None:
        raise SpecError(f"bound {text!r} takes no parameter")
    if kind == "f" and not isinstance(param, (ScalarFn, type(None))):
        raise SpecError(f"bound {text!r} takes f=...")
    if kind == "r" and isinstance(param, ScalarFn):
        raise SpecError(f"bound {text!r} takes r=...")
    return text, param


def expand_all(rs=SWEEP_R) -> list[tuple[str, object]]:
    """Every radius bound, parametrised entries swept over ``rs``."""
    out = []
    for bid, (_, kind, _) in RADIUS_BOUNDS.items():
        if kind is None:
            out.append((bid, None))
        elif kind == "f":
            out.extend((bid, ScalarFn(r)) for r in rs)
        else:
            out.extend((bid, float(r)) for r in rs)
    return out


class BoundContext:
    """Shared per-matrix quantities; each is computed at most once."""

    def __init__(self, A, tol: float | None = None, digest: str | None = None):
        self.A = as_matrix(A)
        self.tol = tol
        self.digest = digest or matrix_digest(self.A)

    @cached_property
    def norm(self) -> float:
        return spectral_norm(self.A)

    @cached_property
    def radius(self) -> RadiusResult:
        return numerical_radius(self.A, tol=self.tol)

    @property
    def omega(self) -> float:
        return self.radius.omega

    @cached_property
    def omega_sq(self) -> float:
        """omega(A^2), same tolerance as omega(A)."""
        return numerical_radius(self.A @ self.A, tol=self.tol).omega

    @cached_property
    def abs_pair(self):
        return abs_value(self.A), abs_value(adjoint(self.A))

    @cached_property
    def gram_sum_norm(self) -> float:
        """| |A|^2 + |A*|^2 |."""
        As = adjoint(self.A)
        return spectral_norm(hermitian_part(As @ self.A + self.A @ As))

    @cached_property
    def defect(self) -> float:
        return hyponormality_defect(self.A)

    @cached_property
    def hyponormal(self) -> bool:
        return self.defect >= -EPS_HYPONORMAL * self.norm**2

    @cached_property
    def xi(self) -> float:
        return xi_pencil(self.A).value

    @cached_property
    def invertible(self) -> bool:
        return self.norm > 0 and smallest_singular_value(self.A) >= TOL_INV * self.norm

    @cached_property
    def deviation_bracket(self) -> tuple[float, float]:
        """Certified (lower, upper) for the infimum in the omega^2 refinement."""
        if self.norm == 0.0:
            return 0.0, 0.0
        f = QuadraticDeviation(self.A)
        jr = joint_range_min(f.S / math.sqrt(2.0), f.M2)
        return max(jr.lower, 0.0), max(jr.upper, 0.0)

    @cached_property
    def variance_upper(self) -> float:
        """Value of the variance ratio at the eigenvectors of A (an upper estimate)."""
        f = VarianceRatio(self.A)
        return float(np.min(f.values(f.context_vectors())))


def _report(ctx: BoundContext, label, lhs, rhs, degree, **kw) -> BoundReport:
    lhs, rhs = float(lhs), float(rhs)
    return BoundReport(
        id=label,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        inputs_digest=ctx.digest,
        degree=float(degree),
        scale=ctx.norm,
        **kw,
    )


def _hyponormal_gate(ctx: BoundContext):
    if ctx.norm == 0.0:
        return "zero-matrix"
    if not ctx.hyponormal:
        return "not-hyponormal"
    return None


def evaluate_radius_bound(
    A,
    bound_id: str,
    param=None,
    ctx: BoundContext | None = None,
) -> BoundReport:
    """Evaluate one catalog inequality on ``A``.

    ``param`` is an ``r`` (float) for the power corollaries or a
    :class:`ScalarFn` for ``thm24``; it defaults to r = 1 / identity.
    Hyponormal-only entries are still evaluated on other matrices as formula
    probes, reported with ``applicable=False``.
    """
    if bound_id not in RADIUS_BOUNDS:
        raise SpecError(f"unknown radius bound {bound_id!r}")
    ctx = ctx or BoundContext(A)
    degree, kind, _ = RADIUS_BOUNDS[bound_id]
    if kind == "f":
        param = param if param is not None else ScalarFn.identity()
        if not isinstance(param, ScalarFn):
            param = ScalarFn(float(param))
        r = param.r
    elif kind == "r":
        r = float(param) if param is not None else 1.0
        if not 1.0 <= r <= 2.0:
            raise SpecError(f"{bound_id} needs 1 <= r <= 2, got {r}")
        param = r
    else:
        param, r = None, None
    if degree == "r":
        degree = r
    label = bound_label(bound_id, param)
    nrm, w = ctx.norm, ctx.omega

    if bound_id == "eq7_lower":
        return _report(ctx, label, nrm / 2, w, degree)
    if bound_id == "eq7_upper":
        return _report(ctx, label, w, nrm, degree)
    if bound_id == "eq5_kittaneh":
        rhs = 0.5 * (nrm + math.sqrt(spectral_norm(ctx.A @ ctx.A)))
        return _report(ctx, label, w, rhs, degree)
    if bound_id == "eq3_lower":
        return _report(ctx, label, ctx.gram_sum_norm / 4, w * w, degree)
    if bound_id == "eq3_upper":
        return _report(ctx, label, w * w, ctx.gram_sum_norm / 2, degree)
    if bound_id == "dragomir":
        return _report(ctx, label, w * w, 0.5 * (ctx.omega_sq + nrm * nrm), degree)
    if bound_id == "half_abs_sum":
        P, Q = ctx.abs_pair
        return _report(ctx, label, w, 0.5 * spectral_norm(P + Q), degree)

    if bound_id == "thm29":
        lo, hi = ctx.deviation_bracket
        return _report(
            ctx, label, w * w, 0.5 * (ctx.gram_sum_norm - lo), degree,
            witness={"inf_lower": lo, "inf_upper": hi, "theta_star": ctx.radius.theta_star},
        )
    if bound_id in ("thm31_sq", "thm31_lin"):
        if nrm == 0.0:
            return _report(ctx, label, 0.0, 0.0, degree, applicable=False, reason="zero-matrix")
        t = spectral_norm(np.eye(ctx.A.shape[0]) - ctx.A / nrm)
        factor = 1 - 0.5 * t * t if bound_id == "thm31_sq" else 1 - 0.5 * t
        return _report(ctx, label, nrm * factor, w, degree, witness={"relative_shift_norm": t})
    if bound_id == "thm35":
        if not ctx.invertible:
            return _report(ctx, label, w * w, nrm * nrm, degree, applicable=False, reason="not-invertible")
        # the infimum is 0 at any eigenvector of A, so 0 is the certified lower estimate
        return _report(
            ctx, label, w * w, nrm * nrm, degree,
            witness={"inf_lower": 0.0, "inf_upper": ctx.variance_upper},
        )

    # hyponormal family
    reason = _hyponormal_gate(ctx)
    if reason == "zero-matrix":
        return _report(ctx, label, 0.0, 0.0, degree, applicable=False, reason=reason)
    xi = ctx.xi
    shrink = 1.0 / (1.0 + xi * xi / 8.0)
    P, Q = ctx.abs_pair
    witness = {"xi": xi, "hyponormality_defect": ctx.defect}
    if bound_id == "thm24":
        f = param
        rhs = 0.5 * spectral_norm(apply_fn_psd(shrink * P, f) + apply_fn_psd(shrink * Q, f))
        lhs = float(f(w))
    elif bound_id == "cor_power":
        lhs = w**r
        rhs = spectral_norm(psd_power(P, r) + psd_power(Q, r)) * shrink**r / 2
    elif bound_id == "cor_c1":
        lhs = w**r
        mixed = spectral_norm(psd_power(P, r / 2) @ psd_power(Q, r / 2))
        rhs = (nrm**r + mixed) * shrink**r / 2
    else:  # cor_c1_sq
        lhs = w**r
        rhs = (nrm**r + spectral_norm(ctx.A @ ctx.A) ** (r / 2)) * shrink**r / 2
    return _report(
        ctx, label, lhs, rhs, degree,
        applicable=reason is None, reason=reason, witness=witness,
    )


# ---------------------------------------------------------------- primitives


def _prim(label, lhs, rhs, scale=1.0, degree=1.0, digest="", witness=None) -> BoundReport:
    lhs, rhs = float(lhs), float(rhs)
    return BoundReport(
        id=label,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        inputs_digest=digest,
        degree=float(degree),
        scale=float(scale),
        witness=witness or {},
    )


def _require_psd(M, name):
    M = as_matrix(M)
    if not np.allclose(M, adjoint(M), atol=1e-10 * max(1.0, spectral_norm(M))):
        raise OperandError(f"{name} must be Hermitian")
    w = np.linalg.eigvalsh(hermitian_part(M))
    if w[0] < -TOL_PSD * max(1.0, abs(w[-1])):
        raise OperandError(f"{name} must be positive semidefinite")
    return hermitian_part(M)


def _require_vec(x, name):
    x = np.asarray(x, dtype=np.complex128).ravel()
    if x.size == 0 or not np.all(np.isfinite(x)) or np.linalg.norm(x) == 0:
        raise OperandError(f"{name} must be a nonzero finite vector")
    return x


def _ip(a, b) -> complex:
    """<a, b>, linear in a."""
    return complex(np.vdot(b, a))


def evaluate_primitive_check(bound_id: str, **ops) -> BoundReport:
    """Evaluate a scalar, vector or norm lemma on explicit operands.

    Operands by id: ``lem_log(alpha)``, ``zou(a, b)``, ``mixed_schwarz(A, x, y)``,
    ``norm_sum(A, B)``, ``norm_power(A, B, r)``, ``vec_cs(x, y)``,
    ``vec_cs_op(A, x)``, ``gram_lemma(x, y, zs)``, ``variance_vec(A, x)``,
    ``kian_lemma(As, weights, r)``.
    """
    try:
        if bound_id == "lem_log":
            a = float(ops["alpha"])
            if not a >= 1.0 or not math.isfinite(a):
                raise OperandError("lem_log needs alpha >= 1")
            return _prim(bound_id, (a - 1) / (a + 1), math.log(a), scale=max(1.0, math.log(a)))

        if bound_id == "zou":
            a, b = float(ops["a"]), float(ops["b"])
            if not (a > 0 and b > 0 and math.isfinite(a) and math.isfinite(b)):
                raise OperandError("zou needs a, b > 0")
            d = math.log(a) - math.log(b)
            return _prim(bound_id, (1 + d * d / 8) * math.sqrt(a * b), (a + b) / 2, scale=max(a, b))

        if bound_id == "mixed_schwarz":
            A = as_matrix(ops["A"])
            x, y = _require_vec(ops["x"], "x"), _require_vec(ops["y"], "y")
            if not (x.size == y.size == A.shape[0]):
                raise OperandError("mixed_schwarz operand dimensions differ")
            P, Q = abs_value(A), abs_value(adjoint(A))
            lhs = abs(_ip(A @ x, y))
            rhs = math.sqrt(max(_ip(P @ x, x).real, 0.0) * max(_ip(Q @ y, y).real, 0.0))
            return _prim(bound_id, lhs, rhs, scale=spectral_norm(A) * np.linalg.norm(x) * np.linalg.norm(y))

        if bound_id in ("norm_sum", "norm_power"):
            A, B = _require_psd(ops["A"], "A"), _require_psd(ops["B"], "B")
            if A.shape != B.shape:
                raise OperandError(f"{bound_id} operand dimensions differ")
            if bound_id == "norm_sum":
                lhs = spectral_norm(A + B)
                rhs = max(spectral_norm(A), spectral_norm(B)) + spectral_norm(
                    psd_power(A, 0.5) @ psd_power(B, 0.5)
                )
                return _prim(bound_id, lhs, rhs, scale=max(spectral_norm(A), spectral_norm(B)))
            r = float(ops["r"])
            if not 0.0 <= r <= 1.0:
                raise OperandError("norm_power needs 0 <= r <= 1")
            lhs = spectral_norm(psd_power(A, r) @ psd_power(B, r))
            rhs = spectral_norm(A @ B) ** r
            return _prim(bound_id, lhs, rhs, scale=max(1.0, lhs, rhs))

        if bound_id == "vec_cs":
            x, y = _require_vec(ops["x"], "x"), _require_vec(ops["y"], "y")
            if x.size != y.size:
                raise OperandError("vec_cs operand dimensions differ")
            nx, ny = np.linalg.norm(x), np.linalg.norm(y)
            lhs = 1 - 0.5 * np.linalg.norm(x / nx - y / ny) ** 2
            return _prim(bound_id, lhs, abs(_ip(x, y)) / (nx * ny))

        if bound_id in ("vec_cs_op", "variance_vec"):
            A = as_matrix(ops["A"])
            x = _require_vec(ops["x"], "x")
            if x.size != A.shape[0]:
                raise OperandError(f"{bound_id} operand dimensions differ")
            x = x / np.linalg.norm(x)
            Ax = A @ x
            nAx = float(np.linalg.norm(Ax))
            z = _ip(Ax, x)
            if bound_id == "vec_cs_op":
                if nAx == 0.0:
                    raise OperandError("vec_cs_op needs Ax != 0")
                lhs = nAx * (1 - 0.5 * np.linalg.norm(x - Ax / nAx) ** 2)
                return _prim(bound_id, lhs, abs(z), scale=spectral_norm(A))
            nAsx = float(np.linalg.norm(adjoint(A) @ x))
            if nAsx == 0.0:
                raise OperandError("variance_vec needs A*x != 0")
            xi = abs(_ip(A @ Ax, x) - z * z) / nAsx
            return _prim(bound_id, xi * xi + abs(z) ** 2, nAx * nAx, scale=spectral_norm(A), degree=2.0)

        if bound_id == "gram_lemma":
            x, y = _require_vec(ops["x"], "x"), _require_vec(ops["y"], "y")
            zs = [_require_vec(z, "z") for z in ops["zs"]]
            if not zs or any(z.size != x.size for z in zs) or y.size != x.size:
                raise OperandError("gram_lemma needs equal-length vectors and at least one z")
            G = np.array([[_ip(zj, zi) for zi in zs] for zj in zs])  # G[j, i] = <z_j, z_i>
            if np.any(G == 0):
                raise OperandError("gram_lemma needs <z_j, z_i> != 0")
            den = np.sum(np.abs(G), axis=0)
            c = np.array([_ip(x, z) for z in zs])
            u = x - sum(ci / di * z for ci, di, z in zip(c, den, zs))
            lhs = abs(_ip(u, y)) ** 2
            rhs = np.linalg.norm(y) ** 2 * (np.linalg.norm(x) ** 2 - np.sum(np.abs(c) ** 2 / den))
            return _prim(bound_id, lhs, rhs, scale=(np.linalg.norm(x) * np.linalg.norm(y)) ** 2)

        if bound_id == "kian_lemma":
            return _kian_lemma(ops["As"], ops["weights"], float(ops.get("r", 2.0)), ops.get("opts"))
    except KeyError as exc:
        raise OperandError(f"{bound_id} is missing operand {exc.args[0]!r}") from exc
    raise SpecError(f"unknown primitive {bound_id!r}")


def _kian_lemma(As, weights, r, opts) -> BoundReport:
    try:
        f = KianDeficiency(As, weights, r)
    except (BadExponent, NotPSD, WeightError) as exc:
        raise OperandError(str(exc)) from exc
    mean = sum(w * M for w, M in zip(f.weights, f.As))
    lhs = spectral_norm(mean) ** r
    power_mean = spectral_norm(sum(w * psd_power(M, r) for w, M in zip(f.weights, f.As)))
    # subtract a certified lower estimate of the infimum
    res = kian_deficiency(f.As, f.weights, r, opts or SphereOptions())
    lower = max(res.lower_bound if res.lower_bound is not None else 0.0, 0.0)
    scale = max(spectral_norm(M) for M in f.As)
    return _prim(
        bound_label("kian_lemma", r),
        lhs,
        power_mean - lower,
        scale=scale,
        degree=r,
        witness={"inf_lower": lower, "inf_estimate": res.value, "certified": bool(res.certified)},
    )


# ---------------------------------------------------------------- chains


def evaluate_all(A, rs=SWEEP_R, ctx: BoundContext | None = None) -> list[BoundReport]:
    ctx = ctx or BoundContext(A)
    return [evaluate_radius_bound(ctx.A, bid, p, ctx) for bid, p in expand_all(rs)]


def verify_chain(A, rs=SWEEP_R, tol: float = 1e-10):
    """All catalog bounds on ``A`` plus the refinement orderings.

    (i) the ``thm29`` right side is below the ``eq3_upper`` right side;
    (ii) when |A - |A| I| <= |A|, both ``thm31`` lower bounds dominate ``eq7_lower``;
    (iii) for hyponormal A, ``cor_power(r=1)`` is below ``half_abs_sum``.
    """
    ctx = BoundContext(A)
    if ctx.norm == 0.0:
        raise OperandError("verify_chain needs A != 0")
    reports = evaluate_all(ctx.A, rs, ctx)
    by_id = {r.id: r for r in reports}
    if "cor_power(r=1)" not in by_id:
        by_id["cor_power(r=1)"] = evaluate_radius_bound(ctx.A, "cor_power", 1.0, ctx)
    slack = tol * max(1.0, ctx.norm**2)
    checks = []

    a, b = by_id["thm29"].rhs, by_id["eq3_upper"].rhs
    checks.append(OrderingCheck("thm29_refines_eq3_upper", a <= b + slack, True, a, b))

    shift = spectral_norm(ctx.A - ctx.norm * np.eye(ctx.A.shape[0]))
    cond = shift <= ctx.norm
    low = by_id["eq7_lower"].lhs
    for name in ("thm31_sq", "thm31_lin"):
        v = by_id[name].lhs
        checks.append(
            OrderingCheck(
                f"{name}_refines_eq7_lower",
                (v >= low - tol * ctx.norm) or not cond,
                cond,
                low,
                v,
                detail=f"shift_norm={shift!r}",
            )
        )

    a, b = by_id["cor_power(r=1)"].rhs, by_id["half_abs_sum"].rhs
    checks.append(
        OrderingCheck("cor_power_refines_half_abs_sum", a <= b + tol * ctx.norm or not ctx.hyponormal, ctx.hyponormal, a, b)
    )
    return reports, checks
