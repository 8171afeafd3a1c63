"""Seeded verification sweeps over generated matrices."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .bounds import (
    CATALOG_VERSION,
    DEFAULT_RTOL,
    RADIUS_BOUNDS,
    SWEEP_R,
    BoundContext,
    bound_label,
    evaluate_radius_bound,
    expand_all,
    parse_bound_label,
)
from .errors import ConfigError, SpecError
from .generators import KINDS, GeneratorSpec, generate
from .matrixio import write_atomic
from .rng import derive_seed

THREADS_ENV = "RADIUS_LAB_THREADS"

# the hyponormal-only entries only make sense as probes on general matrices
UNCONDITIONAL = ("eq7_lower", "eq7_upper", "eq5_kittaneh", "eq3_lower", "eq3_upper",
                 "dragomir", "half_abs_sum", "thm29", "thm31_sq", "thm31_lin", "thm35")


@dataclass
class SweepConfig:
    generators: list[str] = field(default_factory=lambda: ["ginibre"])
    count: int = 1000
    dims: list[int] = field(default_factory=lambda: list(range(2, 9)))
    bounds: list[str] | str = "all"
    r_values: list[float] = field(default_factory=lambda: list(SWEEP_R))
    rtol: float = DEFAULT_RTOL
    radius_tol: float | None = None
    workers: int = 1
    seed: int = 0
    output: str | None = None

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_doc(cls, doc) -> "SweepConfig":
        if not isinstance(doc, dict):
            raise ConfigError("sweep config must be an object")
        known = {f for f in cls.__dataclass_fields__}
        extra = sorted(set(doc) - known)
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(extra)}")
        try:
            return cls(**doc)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path) -> "SweepConfig":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_doc(doc)

    def validate(self) -> None:
        if not isinstance(self.generators, list):
            raise ConfigError("generators must be a list")
        for g in self.generators:
            if not isinstance(g, str):
                raise ConfigError(f"bad generator template {g!r}")
            base = g.split(":")[0]
            if base not in KINDS:
                raise ConfigError(f"unknown generator kind {base!r}")
            if base == "named":
                try:
                    GeneratorSpec.parse(g)
                except SpecError as exc:
                    raise ConfigError(str(exc)) from exc
        if not isinstance(self.count, int) or self.count < 0:
            raise ConfigError("count must be a nonnegative integer")
        if not self.dims or not all(isinstance(d, int) and d >= 1 for d in self.dims):
            raise ConfigError("dims must be a nonempty list of positive integers")
        if not all(isinstance(r, (int, float)) and 1.0 <= r <= 2.0 for r in self.r_values):
            raise ConfigError("r_values must lie in [1, 2]")
        if not (isinstance(self.rtol, (int, float)) and self.rtol > 0):
            raise ConfigError("rtol must be positive")
        if self.radius_tol is not None and not (isinstance(self.radius_tol, (int, float)) and self.radius_tol > 0):
            raise ConfigError("radius_tol must be positive")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        self.selected()

    def selected(self) -> list[tuple[str, object]]:
        """(bound id, parameter) pairs to evaluate, in catalog order."""
        if self.bounds == "all":
            return expand_all(self.r_values)
        if self.bounds == "unconditional":
            return [(b, None) for b in UNCONDITIONAL]
        if not isinstance(self.bounds, list):
            raise ConfigError("bounds must be 'all', 'unconditional' or a list of ids")
        out = []
        for label in self.bounds:
            try:
                bid, param = parse_bound_label(str(label))
            except SpecError as exc:
                raise ConfigError(str(exc)) from exc
            if bid not in RADIUS_BOUNDS:
                raise ConfigError(f"{bid!r} is a primitive, not a matrix bound")
            kind = RADIUS_BOUNDS[bid][1]
            if kind is not None and param is None:
                out.extend(p for p in expand_all(self.r_values) if p[0] == bid)
            else:
                out.append((bid, param))
        return out

    def effective_workers(self) -> int:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                n = int(env)
            except ValueError as exc:
                raise ConfigError(f"{THREADS_ENV} must be an integer") from exc
            if n < 1:
                raise ConfigError(f"{THREADS_ENV} must be positive")
            return n
        return self.workers


def work_items(cfg: SweepConfig) -> list[tuple[int, int, GeneratorSpec]]:
    """(template, sample, spec) in canonical order; seeds derive from both indices."""
    items = []
    for t, template in enumerate(cfg.generators):
        if template.startswith("named:"):
            items.append((t, 0, GeneratorSpec.parse(template)))
            continue
        dims = [2] if template.endswith("_2x2") else cfg.dims
        for s in range(cfg.count):
            seed = derive_seed(cfg.seed, t, s)
            items.append((t, s, GeneratorSpec(template, dims[s % len(dims)], seed)))
    return items


def _evaluate_item(args):
    cfg_doc, spec = args
    cfg = SweepConfig(**cfg_doc)
    A = generate(spec)
    ctx = BoundContext(A, tol=cfg.radius_tol, digest=str(spec))
    out = []
    for bid, param in cfg.selected():
        rep = evaluate_radius_bound(A, bid, param, ctx)
        out.append((rep.id, rep.slack, rep.lhs, rep.rhs, rep.applicable, rep.reason, rep.tolerance(cfg.rtol)))
    return str(spec), out


@dataclass
class BoundTally:
    id: str
    evaluated: int = 0
    applicable: int = 0
    passed: int = 0
    failed: int = 0
    not_applicable: int = 0
    worst_slack: float | None = None
    worst_scaled_slack: float | None = None
    worst_spec: str | None = None


@dataclass
class SweepReport:
    version: str
    config: dict
    bounds: list[BoundTally]
    violations: list[dict]
    evaluations: int

    def to_doc(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "evaluations": self.evaluations,
            "bounds": [asdict(b) for b in self.bounds],
            "violations": self.violations,
        }

    @property
    def ok(self) -> bool:
        return not self.violations


def run_sweep(cfg: SweepConfig) -> SweepReport:
    """Evaluate every (sample, bound) pair; merge in canonical order."""
    items = work_items(cfg)
    cfg_doc = asdict(cfg)
    payload = [(cfg_doc, spec) for _, _, spec in items]
    workers = cfg.effective_workers()
    if workers > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_item, payload, chunksize=max(1, len(payload) // (8 * workers))))
    else:
        results = [_evaluate_item(p) for p in payload]

    labels = [bound_label(b, p) for b, p in cfg.selected()]
    tallies = {label: BoundTally(label) for label in labels}
    violations = []
    for spec, reps in results:
        for rid, slack, lhs, rhs, applicable, reason, tol in reps:
            t = tallies.setdefault(rid, BoundTally(rid))
            t.evaluated += 1
            if not applicable:
                t.not_applicable += 1
                continue
            t.applicable += 1
            scaled = slack / (tol / cfg.rtol)
            if t.worst_slack is None or slack < t.worst_slack:
                t.worst_slack, t.worst_spec = slack, spec
            if t.worst_scaled_slack is None or scaled < t.worst_scaled_slack:
                t.worst_scaled_slack = scaled
            if slack >= -tol:
                t.passed += 1
            else:
                t.failed += 1
                violations.append(
                    {"id": rid, "spec": spec, "lhs": lhs, "rhs": rhs, "slack": slack, "tolerance": tol}
                )
    # worker count is an execution detail; the echo must not depend on it
    echo = {k: v for k, v in cfg_doc.items() if k != "workers"}
    return SweepReport(
        version=CATALOG_VERSION,
        config=echo,
        bounds=list(tallies.values()),
        violations=violations,
        evaluations=sum(len(r) for _, r in results),
    )


def dumps17(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits; non-finite floats become null."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)) and not isinstance(obj, float):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(str(k))}: {dumps17(v, indent, _level + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(pad + dumps17(v, indent, _level + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    if hasattr(obj, "item"):
        return dumps17(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_report(report: SweepReport, path) -> None:
    write_atomic(path, dumps17(report.to_doc()) + "\n")
