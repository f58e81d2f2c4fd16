"""End-to-end verification of the catalog at desk scale.

:func:`verify_catalog` runs every model check over the census, the
extension and cohomology checks over the small models and the census
counts, and assembles a :class:`VerificationReport` in model order.
Nothing here depends on timing or completion order, so the rendered
report is byte-identical across runs with the same arguments.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import ModelId, build_model, enumerate_models, expected_invariants, is_filiform
from .cohomology import (
    SAMPLING_POLICY,
    central_extension,
    cocycle_spaces,
    enumerate_graded_linear_extensions,
)
from .corrections import corrections_ledger
from .errors import GradedLieError, InputError
from .exactlin import Span, format_scalar, unit_vector
from .invariants import (
    DEFAULT_SEED,
    associated_graded,
    characteristic_sequence,
    graded_certificate,
    has_abelian_direct_factor,
    is_linear,
    nilindex,
    weight_sorted_order,
)
from .liecore import (
    LieAlgebra,
    StructureTensor,
    abelian,
    central_quotient,
    direct_sum,
    jacobi_defects,
    permute_basis,
)
from .mcdsl import parse_mc, render_mc

CHECKS = (
    "jacobi",
    "table",
    "graded",
    "nonsplit",
    "linear",
    "quotient",
    "roundtrip",
    "prop1",
    "cohomology",
)
JACOBI_MAX_DIM = 24
EXT_MAX_DIM = 10


@dataclass(frozen=True)
class Corruption:
    """Test hook: add ``delta`` to one structure constant of one model."""

    model: str
    triple: tuple
    delta: Fraction = Fraction(1)


@dataclass(frozen=True)
class ModelResult:
    model: str
    dim: int
    filiform: bool
    checks: tuple  # ((name, passed, detail), ...) in CHECKS order

    def failed(self) -> list[tuple]:
        return [c for c in self.checks if not c[1]]


@dataclass(frozen=True)
class CountResult:
    dim: int
    count: int
    oracle: int
    stable: bool

    @property
    def passed(self) -> bool:
        return self.count == self.oracle and self.stable


@dataclass
class VerificationReport:
    max_dim: int
    seed: int
    jacobi_max_dim: int
    ext_max_dim: int
    models: list = field(default_factory=list)
    counts: list = field(default_factory=list)
    corrections: list = field(default_factory=list)
    sampling_policy: str = SAMPLING_POLICY

    @property
    def grid(self) -> list[str]:
        return [m.model for m in self.models if m.dim <= self.max_dim]

    @property
    def passed(self) -> bool:
        return all(not m.failed() for m in self.models) and all(c.passed for c in self.counts)

    def summary(self) -> dict[str, tuple[int, int]]:
        out = {name: [0, 0] for name in CHECKS}
        for m in self.models:
            for name, ok, _ in m.checks:
                out[name][1] += 1
                out[name][0] += bool(ok)
        return {k: tuple(v) for k, v in out.items()}

    def to_json(self) -> dict:
        return {
            "parameters": {
                "max_dim": self.max_dim,
                "seed": self.seed,
                "jacobi_max_dim": self.jacobi_max_dim,
                "ext_max_dim": self.ext_max_dim,
            },
            "summary": {k: {"passed": p, "total": t} for k, (p, t) in self.summary().items()},
            "models": [
                {
                    "model": m.model,
                    "dim": m.dim,
                    "filiform": m.filiform,
                    "checks": {n: {"pass": ok, "detail": d} for n, ok, d in m.checks},
                }
                for m in self.models
            ],
            "enumeration": [
                {"dim": c.dim, "count": c.count, "oracle": c.oracle, "stable": c.stable, "pass": c.passed}
                for c in self.counts
            ],
            "corrections": self.corrections,
            "sampling_policy": self.sampling_policy,
            "pass": self.passed,
        }

    def to_text(self) -> str:
        lines = [
            f"verification: max_dim={self.max_dim} seed={self.seed} "
            f"jacobi_max_dim={self.jacobi_max_dim} ext_max_dim={self.ext_max_dim}",
            f"models: {len(self.grid)} up to dimension {self.max_dim}, {len(self.models)} in the Jacobi grid",
        ]
        for name, (p, t) in self.summary().items():
            lines.append(f"  {name:<11} {p}/{t} {'pass' if p == t else 'FAIL'}")
        ok_counts = sum(c.passed for c in self.counts)
        lines.append(f"  {'census':<11} {ok_counts}/{len(self.counts)} {'pass' if ok_counts == len(self.counts) else 'FAIL'}")
        failures = [(m.model, n, d) for m in self.models for n, ok, d in m.checks if not ok]
        failures += [
            (f"dim {c.dim}", "census", f"count {c.count}, oracle {c.oracle}, stable {c.stable}")
            for c in self.counts
            if not c.passed
        ]
        if failures:
            lines.append("failures:")
            lines += [f"  {m} {n}: {d}" for m, n, d in failures]
        lines.append("census counts: " + ", ".join(f"{c.dim}:{c.count}" for c in self.counts))
        lines.append("corrections:")
        for c in self.corrections:
            lines.append(f"  [{c['code']}] {c['where']}")
            lines.append(f"    printed: {c['printed']}")
            lines.append(f"    adopted: {c['adopted']}")
            lines.append(f"    evidence: {c['evidence']}")
        lines.append(f"sampling policy: {self.sampling_policy}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def render(self, as_json: bool = False) -> str:
        if as_json:
            return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"
        return self.to_text()


def census_count(dim: int) -> int:
    """Closed-form number of model ids of dimension ``dim``."""
    total = 0
    for n in range(7, dim + 1):
        total += math.comb((n - 2) // 2, dim - n)
    for m in range(3, dim // 2 + 1):
        total += math.comb(m - 1, dim - 2 * m)
    for m in range(4, dim // 2 + 1):
        total += math.comb(m - 3, dim - 2 * m)
    for m in range(4, (dim - 1) // 2 + 1):
        total += math.comb(m - 3, dim - 2 * m - 1)
    total += dim >= 3
    total += dim >= 6 and dim % 2 == 0
    return total


def load_model(mid: ModelId, corrupt: Corruption | None = None) -> LieAlgebra:
    g = build_model(mid)
    if corrupt is None or ModelId.parse(corrupt.model) != mid:
        return g
    entries = g.tensor.as_dict()
    key = tuple(corrupt.triple)
    entries[key] = entries.get(key, Fraction(0)) + Fraction(corrupt.delta)
    return LieAlgebra(StructureTensor(g.dim, entries), g.labels, g.weights)


def _run(check, *args) -> tuple[bool, str]:
    try:
        return check(*args)
    except GradedLieError as exc:
        return False, f"{type(exc).__name__}: {exc}"


def _jacobi(g: LieAlgebra):
    bad = jacobi_defects(g)
    if not bad:
        return True, ""
    d = bad[0]
    vec = "(" + ", ".join(format_scalar(c) for c in d.defect) + ")"
    return False, f"{len(bad)} defect triple(s), first {d.triple} with defect {vec}"


def _table(mid: ModelId, g: LieAlgebra, cs: tuple):
    dim, expected = expected_invariants(mid)
    if (g.dim, cs) == (dim, expected):
        return True, ""
    return False, f"computed ({g.dim}, {cs}), table ({dim}, {expected})"


def _graded(g: LieAlgebra):
    if g.weights is None or not graded_certificate(g, g.weights):
        return False, f"no certificate for weights {g.weights}"
    gr = associated_graded(g)
    relabeled = permute_basis(g, weight_sorted_order(g.weights))
    if not gr.algebra.same_structure(relabeled):
        return False, "associated graded differs from the weight-sorted model"
    return True, ""


def _nonsplit(g: LieAlgebra):
    if has_abelian_direct_factor(g):
        return False, "center is not contained in the derived algebra"
    return True, ""


def _linear(g: LieAlgebra, cs: tuple):
    p = nilindex(g)
    if not is_linear(cs):
        return False, f"sequence {cs} is not linear"
    if cs[0] != p:
        return False, f"first part {cs[0]} differs from nilindex {p}"
    return True, ""


def _quotient(mid: ModelId, g: LieAlgebra, seed: int):
    q = central_quotient(g, unit_vector(g.dim, g.dim))
    expected = build_model(mid.drop_last())
    if not q.same_structure(expected):
        return False, f"quotient by X_{g.dim} differs from {mid.drop_last()}"
    if nilindex(q) != nilindex(g):
        return False, f"nilindex {nilindex(g)} -> {nilindex(q)}"
    cs, _ = characteristic_sequence(q, seed)
    if not is_linear(cs):
        return False, f"quotient sequence {cs} is not linear"
    return True, ""


def _roundtrip(g: LieAlgebra):
    text = render_mc(g)
    back = parse_mc(text)
    if not back.same_structure(g):
        return False, "parse(render(g)) differs from g"
    if render_mc(back) != text:
        return False, "rendering is not stable"
    return True, ""


def _prop1(g: LieAlgebra, seed: int):
    split = direct_sum(g, abelian(1).with_weights((1,)))
    found = enumerate_graded_linear_extensions(split, split.weights, seed)
    if found:
        c = found[0]
        return False, f"{len(found)} candidate(s), first weight {c.new_weight} cocycle {c.cocycle}"
    return True, ""


def _cohomology(g: LieAlgebra):
    z2, b2, h2 = cocycle_spaces(g)
    keys = sorted({p for c in z2 + b2 for p, _ in c.coefficients})
    zspan = Span(len(keys), [[c.as_dict().get(k, 0) for k in keys] for c in z2])
    for b in b2:
        if not zspan.contains([b.as_dict().get(k, 0) for k in keys]):
            return False, f"coboundary {b} outside Z^2"
    if h2 != len(z2) - len(b2):
        return False, f"h2 {h2} != {len(z2)} - {len(b2)}"
    for phi in z2:
        ext = central_extension(g, phi)
        if jacobi_defects(ext):
            return False, f"extension by {phi} fails Jacobi"
        back = central_quotient(ext, unit_vector(ext.dim, ext.dim))
        if not back.same_structure(g):
            return False, f"extension by {phi} then quotient is not the identity"
    return True, f"dim Z2={len(z2)} B2={len(b2)} H2={h2}"


def check_model(
    mid: ModelId,
    max_dim: int,
    ext_max_dim: int,
    seed: int = DEFAULT_SEED,
    corrupt: Corruption | None = None,
) -> ModelResult:
    """Every applicable check for one model, in :data:`CHECKS` order."""
    try:
        g = load_model(mid, corrupt)
    except GradedLieError as exc:
        dim, _ = expected_invariants(mid)
        detail = f"{type(exc).__name__}: {exc}"
        return ModelResult(str(mid), dim, is_filiform(mid), (("jacobi", False, detail),))
    checks = [("jacobi", *_run(_jacobi, g))]
    if g.dim <= max_dim:
        try:
            cs, _ = characteristic_sequence(g, seed)
        except GradedLieError as exc:
            cs = ()
            checks.append(("table", False, f"{type(exc).__name__}: {exc}"))
        else:
            checks.append(("table", *_run(_table, mid, g, cs)))
        checks.append(("graded", *_run(_graded, g)))
        checks.append(("nonsplit", *_run(_nonsplit, g)))
        checks.append(("linear", *_run(_linear, g, cs)))
        if mid.params:
            checks.append(("quotient", *_run(_quotient, mid, g, seed)))
        checks.append(("roundtrip", *_run(_roundtrip, g)))
    if g.dim <= ext_max_dim:
        checks.append(("prop1", *_run(_prop1, g, seed)))
        checks.append(("cohomology", *_run(_cohomology, g)))
    return ModelResult(str(mid), g.dim, is_filiform(mid), tuple(checks))


def _check_star(args):
    return check_model(*args)


def census_results(dims) -> list[CountResult]:
    out = []
    for n in dims:
        first = [str(m) for m in enumerate_models(n)]
        second = [str(m) for m in enumerate_models(n)]
        out.append(CountResult(n, len(first), census_count(n), first == second))
    return out


def verify_catalog(
    max_dim: int,
    seed: int = DEFAULT_SEED,
    jacobi_max_dim: int | None = None,
    ext_max_dim: int = EXT_MAX_DIM,
    corrupt: Corruption | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Run the full verification over every model of dimension up to ``max_dim``.

    ``jacobi_max_dim`` (default ``max(max_dim, 24)``) bounds the
    Jacobi-only grid; ``ext_max_dim`` (capped at ``max_dim``) bounds the
    extension and cohomology checks.  ``jobs > 1`` spreads models over
    worker processes; results are merged in model order.
    """
    if max_dim < 7:
        raise InputError(f"max_dim={max_dim} is below the catalog's regime (need at least 7)")
    jmax = max(max_dim, JACOBI_MAX_DIM) if jacobi_max_dim is None else max(jacobi_max_dim, max_dim)
    emax = min(ext_max_dim, max_dim)
    ids = [m for d in range(3, jmax + 1) for m in enumerate_models(d)]
    tasks = [(m, max_dim, emax, seed, corrupt) for m in ids]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_star, tasks, chunksize=8))
    else:
        results = [check_model(*t) for t in tasks]
    report = VerificationReport(max_dim, seed, jmax, emax)
    report.models = results
    report.counts = census_results(range(7, max_dim + 1))
    report.corrections = corrections_ledger()
    return report


__all__ = [
    "CHECKS",
    "Corruption",
    "CountResult",
    "ModelResult",
    "VerificationReport",
    "census_count",
    "check_model",
    "load_model",
    "verify_catalog",
]
