"""Seeded matrix ensembles and the worked-example fixtures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpecError
from .linalg import adjoint
from .rng import CounterRNG

KINDS = (
    "ginibre",
    "normal",
    "psd",
    "unitary",
    "upper_triangular_2x2",
    "nilpotent_2x2",
    "named",
)

NAMED_EXAMPLES = {
    "ex_2_11": np.array([[0, 0], [3, 0]], dtype=np.complex128),
    "ex_3_4": np.array([[2, 1], [0, 4]], dtype=np.complex128),
}

UNIT_VECTOR_STREAM = 1


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    dim: int = 2
    seed: int = 0
    tag: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown generator kind {self.kind!r}")
        if self.kind == "named":
            if self.tag not in NAMED_EXAMPLES:
                raise SpecError(f"unknown named example {self.tag!r}")
            return
        if not isinstance(self.dim, int) or self.dim < 1:
            raise SpecError(f"dimension must be a positive integer, got {self.dim!r}")
        if self.kind.endswith("_2x2") and self.dim != 2:
            raise SpecError(f"{self.kind} needs dim 2")
        if not 0 <= int(self.seed) < 2**64:
            raise SpecError("seed must be a 64-bit unsigned integer")

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        """``kind:dim:seed`` or ``named:tag``."""
        parts = text.strip().split(":")
        if parts[0] == "named":
            if len(parts) != 2:
                raise SpecError(f"expected named:TAG, got {text!r}")
            tag = parts[1]
            dim = NAMED_EXAMPLES[tag].shape[0] if tag in NAMED_EXAMPLES else 2
            return cls("named", dim=dim, tag=tag)
        if len(parts) != 3:
            raise SpecError(f"expected kind:dim:seed, got {text!r}")
        try:
            dim, seed = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise SpecError(f"bad generator spec {text!r}") from exc
        return cls(parts[0], dim, seed)

    def __str__(self) -> str:
        if self.kind == "named":
            return f"named:{self.tag}"
        return f"{self.kind}:{self.dim}:{self.seed}"


def _haar_unitary(rng: CounterRNG, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.complex_normal((n, n)))
    d = np.diag(R)
    phases = np.where(d == 0, 1.0, d / np.where(d == 0, 1.0, np.abs(d)))
    return Q * phases


def generate(spec: GeneratorSpec) -> np.ndarray:
    if spec.kind == "named":
        return NAMED_EXAMPLES[spec.tag].copy()
    n = spec.dim
    rng = CounterRNG(spec.seed)
    if spec.kind == "ginibre":
        return rng.complex_normal((n, n))
    if spec.kind == "unitary":
        return _haar_unitary(rng, n)
    if spec.kind == "normal":
        U = _haar_unitary(rng, n)
        lam = rng.complex_normal(n)
        return (U * lam) @ adjoint(U)
    if spec.kind == "psd":
        G = rng.complex_normal((n, n))
        H = adjoint(G) @ G
        return (H + adjoint(H)) / 2
    if spec.kind == "upper_triangular_2x2":
        a, b, c = rng.complex_normal(3)
        return np.array([[a, c], [0, b]], dtype=np.complex128)
    if spec.kind == "nilpotent_2x2":
        (c,) = rng.complex_normal(1)
        return np.array([[0, 0], [c, 0]], dtype=np.complex128)
    raise SpecError(spec.kind)


def generate_unit_vector(dim: int, seed: int) -> np.ndarray:
    """Haar-uniform unit vector (normalised complex Gaussian)."""
    if dim < 1:
        raise SpecError("dimension must be positive")
    x = CounterRNG(seed, UNIT_VECTOR_STREAM).complex_normal(dim)
    return x / np.linalg.norm(x)


def unit_vectors(count: int, dim: int, seed: int, stream: int = UNIT_VECTOR_STREAM) -> np.ndarray:
    """``count`` Haar-uniform unit vectors from a single stream, shape (count, dim)."""
    X = CounterRNG(seed, stream).complex_normal((count, dim))
    return X / np.linalg.norm(X, axis=1, keepdims=True)
