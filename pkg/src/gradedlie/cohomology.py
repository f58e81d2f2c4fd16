"""Second Chevalley-Eilenberg cohomology with trivial coefficients.

A 2-cochain ``phi = sum_{a<b} c_ab w_a^w_b`` is a cocycle when
``phi([X_i,X_j],X_k) + phi([X_j,X_k],X_i) + phi([X_k,X_i],X_j) = 0`` for
all triples, and a coboundary when ``phi = -f o [ , ]`` for a linear
form ``f``.  Cocycles define one-dimensional central extensions; the
graded enumeration at the bottom searches those extensions for ones that
keep the nilindex and a linear characteristic sequence.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvariantViolation, PreconditionError
from .exactlin import ZERO, Mat, Span, format_scalar, kernel_basis, rref
from .invariants import (
    DEFAULT_SEED,
    characteristic_sequence,
    graded_certificate,
    has_abelian_direct_factor,
    is_linear,
    nilindex,
    series_dims,
)
from .liecore import LieAlgebra, StructureTensor, jacobi_defects

EXTENSION_SAMPLES = 10


@dataclass(frozen=True)
class TwoCochain:
    """``coefficients`` is a sorted tuple of ``((a, b), c)`` with ``a < b``, no zeros."""

    coefficients: tuple = ()
    _map: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.coefficients))

    @classmethod
    def from_dict(cls, coeffs: Mapping) -> "TwoCochain":
        acc: dict[tuple[int, int], Fraction] = {}
        for (a, b), c in coeffs.items():
            c = Fraction(c)
            if a == b:
                if c:
                    raise ValueError(f"w{a}^w{a} vanishes identically")
                continue
            if a > b:
                a, b, c = b, a, -c
            acc[(a, b)] = acc.get((a, b), ZERO) + c
        return cls(tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def wedge(cls, a: int, b: int, c=1) -> "TwoCochain":
        return cls.from_dict({(a, b): c})

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coefficients)

    def value(self, a: int, b: int) -> Fraction:
        if a == b:
            return ZERO
        if a > b:
            return -self._map.get((b, a), ZERO)
        return self._map.get((a, b), ZERO)

    def __add__(self, other: "TwoCochain") -> "TwoCochain":
        d = self.as_dict()
        for k, v in other.coefficients:
            d[k] = d.get(k, ZERO) + v
        return TwoCochain.from_dict(d)

    def scaled(self, s) -> "TwoCochain":
        return TwoCochain.from_dict({k: v * s for k, v in self.coefficients})

    def is_zero(self) -> bool:
        return not self.coefficients

    def weight(self, weights: Sequence[int]) -> int | None:
        """Common weight of all terms, or None if inhomogeneous or zero."""
        ws = {weights[a - 1] + weights[b - 1] for (a, b), _ in self.coefficients}
        return ws.pop() if len(ws) == 1 else None

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for idx, ((a, b), c) in enumerate(self.coefficients):
            sign = "-" if c < 0 else "+"
            mag = format_scalar(abs(c))
            coef = "" if mag == "1" else mag + " "
            if idx == 0:
                parts.append(f"{'-' if c < 0 else ''}{coef}w{a}^w{b}")
            else:
                parts.append(f"{sign} {coef}w{a}^w{b}")
        return " ".join(parts)


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, n + 1), 2))


def _cocycle_rows(g: LieAlgebra, pairs: Sequence[tuple[int, int]]) -> list[list[Fraction]]:
    """One row per triple ``i<j<k``: the cocycle condition restricted to ``pairs``."""
    n = g.dim
    index = {p: t for t, p in enumerate(pairs)}
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j, k), c in g.tensor.entries:
        br.setdefault((i, j), {})[k] = c
        br.setdefault((j, i), {})[k] = -c
    rows = []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        row = [ZERO] * len(pairs)
        nonzero = False
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            # phi([X_a, X_b], X_c) = sum_l C^l_ab phi(l, c)
            for l, coef in br.get((a, b), {}).items():
                if l == c:
                    continue
                key, sign = ((l, c), 1) if l < c else ((c, l), -1)
                t = index.get(key)
                if t is not None:
                    row[t] += sign * coef
                    nonzero = True
        if nonzero and any(row):
            rows.append(row)
    return rows


def _to_cochain(vec: Sequence[Fraction], pairs: Sequence[tuple[int, int]]) -> TwoCochain:
    return TwoCochain.from_dict({p: c for p, c in zip(pairs, vec) if c})


def coboundary(g: LieAlgebra, f: Sequence) -> TwoCochain:
    """``-f o [ , ]`` for the linear form with coordinates ``f``."""
    d: dict[tuple[int, int], Fraction] = {}
    for (i, j, k), c in g.tensor.entries:
        fk = Fraction(f[k - 1])
        if fk:
            d[(i, j)] = d.get((i, j), ZERO) - fk * c
    return TwoCochain.from_dict(d)


def _span_basis(cochains: Sequence[TwoCochain], pairs: Sequence[tuple[int, int]]) -> list[TwoCochain]:
    vecs = []
    for c in cochains:
        d = c.as_dict()
        vecs.append(tuple(d.get(p, ZERO) for p in pairs))
    reduced, _ = rref(vecs, len(pairs)) if vecs else ([], [])
    return [_to_cochain(v, pairs) for v in reduced]


def cocycle_violation(g: LieAlgebra, phi: TwoCochain) -> tuple[int, int, int] | None:
    """First triple at which ``phi`` fails the cocycle condition, if any."""
    n = g.dim
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        total = ZERO
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l, coef in g.tensor.basis_bracket(a, b).items():
                total += coef * phi.value(l, c)
        if total:
            return (i, j, k)
    return None


def is_cocycle(g: LieAlgebra, phi: TwoCochain) -> bool:
    return cocycle_violation(g, phi) is None


def cocycle_spaces(g: LieAlgebra) -> tuple[list[TwoCochain], list[TwoCochain], int]:
    """Bases of ``Z^2`` and ``B^2`` and ``dim H^2``."""
    n = g.dim
    pairs = _pairs(n)
    rows = _cocycle_rows(g, pairs)
    if rows:
        z_vecs = kernel_basis(Mat.from_rows(rows, len(pairs)))
    else:
        z_vecs = [tuple(Fraction(int(s == t)) for s in range(len(pairs))) for t in range(len(pairs))]
    z2 = [_to_cochain(v, pairs) for v in z_vecs]
    spanning = [coboundary(g, [int(k == l) for k in range(n)]) for l in range(n)]
    b2 = _span_basis([c for c in spanning if not c.is_zero()], pairs)
    _check_inclusion(g, b2, z2, pairs)
    return z2, b2, len(z2) - len(b2)


def _check_inclusion(g, b_basis, z_basis, pairs) -> None:
    zspan = Span(len(pairs), [tuple(c.as_dict().get(p, ZERO) for p in pairs) for c in z_basis])
    for b in b_basis:
        if not zspan.contains(tuple(b.as_dict().get(p, ZERO) for p in pairs)):
            raise InvariantViolation(f"coboundary {b} is not a cocycle")


def h2_dim(g: LieAlgebra) -> int:
    return cocycle_spaces(g)[2]


def central_extension(g: LieAlgebra, phi: TwoCochain, new_weight: int | None = None) -> LieAlgebra:
    """``g`` plus a central ``X_{n+1}`` with ``[X_a, X_b] += phi(X_a, X_b) X_{n+1}``."""
    bad = cocycle_violation(g, phi)
    if bad is not None:
        raise PreconditionError(f"cochain {phi} is not a cocycle: fails on triple {bad}")
    n = g.dim
    entries = dict(g.tensor.entries)
    for (a, b), c in phi.coefficients:
        entries[(a, b, n + 1)] = c
    labels = None if g.labels is None else g.labels + (f"X{n + 1}",)
    weights = None
    if g.weights is not None:
        w = new_weight if new_weight is not None else phi.weight(g.weights)
        if w is not None:
            weights = g.weights + (w,)
    ext = LieAlgebra(StructureTensor(n + 1, entries), labels, weights)
    if jacobi_defects(ext):
        raise InvariantViolation("central extension by a cocycle violates Jacobi")
    return ext


def homogeneous_cocycles(
    g: LieAlgebra, weights: Sequence[int], w: int
) -> tuple[list[TwoCochain], list[TwoCochain]]:
    """Bases of the weight-``w`` parts of ``Z^2`` and ``B^2``."""
    if not graded_certificate(g, weights):
        raise PreconditionError("weights do not certify a natural grading")
    n = g.dim
    pairs = [(a, b) for a, b in _pairs(n) if weights[a - 1] + weights[b - 1] == w]
    if not pairs:
        return [], []
    rows = _cocycle_rows(g, pairs)
    if rows:
        z_vecs = kernel_basis(Mat.from_rows(rows, len(pairs)))
    else:
        z_vecs = [tuple(Fraction(int(s == t)) for s in range(len(pairs))) for t in range(len(pairs))]
    z_slice = [_to_cochain(v, pairs) for v in z_vecs]
    spanning = [
        coboundary(g, [int(k == l) for k in range(n)]) for l in range(n) if weights[l] == w
    ]
    b_slice = _span_basis([c for c in spanning if not c.is_zero()], pairs)
    _check_inclusion(g, b_slice, z_slice, pairs)
    return z_slice, b_slice


def cohomology_representatives(z_basis, b_basis, pairs=None) -> list[TwoCochain]:
    """Members of ``z_basis`` completing ``b_basis`` to a basis (greedy, in order)."""
    keys = pairs or sorted({p for c in list(z_basis) + list(b_basis) for p, _ in c.coefficients})
    span = Span(len(keys), [tuple(c.as_dict().get(p, ZERO) for p in keys) for c in b_basis])
    reps = []
    for z in z_basis:
        if span.add(tuple(z.as_dict().get(p, ZERO) for p in keys)):
            reps.append(z)
    return reps


@dataclass(frozen=True)
class ExtensionCandidate:
    cocycle: TwoCochain
    new_weight: int
    extension: LieAlgebra
    nilindex_preserved: bool
    linear_char_seq: bool
    nonsplit: bool
    graded_certified: bool
    char_seq: tuple = ()
    series: tuple = ()
    h2: int | None = None

    @property
    def accepted(self) -> bool:
        return (
            self.nilindex_preserved
            and self.linear_char_seq
            and self.nonsplit
            and self.graded_certified
        )

    @property
    def profile(self) -> tuple:
        return (self.extension.dim, self.char_seq, self.series, self.h2)


def _random_combination(reps: Sequence[TwoCochain], rng: random.Random) -> TwoCochain:
    while True:
        total = TwoCochain()
        for r in reps:
            total = total + r.scaled(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        if not total.is_zero():
            return total


def evaluate_extension(
    g: LieAlgebra, weights: Sequence[int], phi: TwoCochain, w: int, base_nilindex: int, seed: int
) -> ExtensionCandidate:
    """Build the extension and evaluate the four flags, cheapest first.

    Flags after the first failing one are reported False without being
    computed; ``char_seq`` stays empty unless it was needed.
    """
    ext = central_extension(g, phi, new_weight=w)
    new_weights = tuple(weights) + (w,)
    ext = ext.with_weights(new_weights)
    preserved = nilindex(ext) == base_nilindex
    nonsplit = preserved and not has_abelian_direct_factor(ext)
    graded = nonsplit and graded_certificate(ext, new_weights)
    cs: tuple = ()
    linear = False
    if graded:
        cs, _ = characteristic_sequence(ext, seed)
        linear = is_linear(cs)
    h2 = None
    series = ()
    if preserved and nonsplit and graded and linear:
        series = series_dims(ext)
        h2 = cocycle_spaces(ext)[2]
    return ExtensionCandidate(phi, w, ext, preserved, linear, nonsplit, graded, cs, series, h2)


def extension_candidates(
    g: LieAlgebra,
    weights: Sequence[int],
    seed: int = DEFAULT_SEED,
    samples: int = EXTENSION_SAMPLES,
    max_weight: int | None = None,
):
    """Yield every evaluated candidate, weight by weight.

    Per weight: each cohomology representative of the weight slice,
    then ``samples`` seeded random rational combinations of them.
    """
    if not graded_certificate(g, weights):
        raise PreconditionError("weights do not certify a natural grading")
    # a non-linear base is not rejected: the linear flag filters the outputs
    p = nilindex(g)
    top = p + 1 if max_weight is None else min(max_weight, p + 1)
    for w in range(2, top + 1):
        z_slice, b_slice = homogeneous_cocycles(g, weights, w)
        reps = cohomology_representatives(z_slice, b_slice)
        if not reps:
            continue
        rng = random.Random(seed * 1009 + w)
        cochains = list(reps) + [_random_combination(reps, rng) for _ in range(samples)]
        for phi in cochains:
            yield evaluate_extension(g, weights, phi, w, p, seed)


def enumerate_graded_linear_extensions(
    g: LieAlgebra,
    weights: Sequence[int],
    seed: int = DEFAULT_SEED,
    samples: int = EXTENSION_SAMPLES,
    max_weight: int | None = None,
) -> list[ExtensionCandidate]:
    """Accepted candidates, deduplicated by invariant profile, ascending weight."""
    seen = set()
    out = []
    for cand in extension_candidates(g, weights, seed, samples, max_weight):
        if not cand.accepted:
            continue
        if cand.profile in seen:
            continue
        seen.add(cand.profile)
        out.append(cand)
    return out


SAMPLING_POLICY = (
    f"graded extensions: for each weight 2..nilindex+1, every cohomology representative "
    f"of the weight slice plus {EXTENSION_SAMPLES} seeded random rational combinations; "
    f"characteristic sequences: basis vectors outside C^1 plus 25 seeded random "
    f"combinations of generators. A flag-satisfying locus missed by every sample "
    f"would go undetected."
)
