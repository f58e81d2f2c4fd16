"""Isomorphism invariants of nilpotent Lie algebras.

Lower central series, nilindex, center, Jordan type of ``ad x``, the
characteristic sequence, the associated graded algebra and the checks
built on them.  Span and dimension computations go through the integer
:class:`~gradedlie.exactlin.Span`; nothing here uses floating point.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, NotNilpotentError
from .exactlin import ZERO, Mat, Span, kernel_basis, primitive, rank, solve, unit_vector
from .liecore import LieAlgebra, StructureTensor, bracket, int_ad_columns, int_bracket

CANDIDATE_SAMPLES = 25
DEFAULT_SEED = 0


@dataclass(frozen=True)
class Filtration:
    """``stages[i]`` is a basis of ``C^i(g)``; the last stage is empty."""

    stages: tuple

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.stages)


@dataclass(frozen=True)
class GradedAlgebra:
    """An algebra whose basis vector ``a`` carries weight ``weights[a-1]``.

    ``basis`` gives each of those basis vectors in the coordinates of the
    algebra the grading was computed from.
    """

    algebra: LieAlgebra
    weights: tuple
    basis: tuple = ()

    def weight_of(self, i: int) -> int:
        return self.weights[i - 1]


CharacteristicSequence = tuple  # non-increasing tuple of positive ints


def _series_spans(g: LieAlgebra) -> list[Span]:
    n = g.dim
    units = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    stages = [Span(n, units)]
    while stages[-1].dim:
        nxt = Span(n)
        for v in stages[-1].rows():
            for e in units:
                w = int_bracket(g, e, v)
                if any(w):
                    nxt.add_int(w)
        if nxt.dim == stages[-1].dim:
            raise NotNilpotentError(
                f"lower central series stabilises at dimension {nxt.dim}"
            )
        stages.append(nxt)
    return stages


def lower_central_series(g: LieAlgebra) -> Filtration:
    """``C^0 = g``, ``C^{i+1} = [g, C^i]`` down to the zero stage."""
    return Filtration(tuple(tuple(s.basis()) for s in _series_spans(g)))


def series_dims(g: LieAlgebra) -> tuple[int, ...]:
    return tuple(s.dim for s in _series_spans(g))


def nilindex(g: LieAlgebra) -> int:
    return len(_series_spans(g)) - 1


def center(g: LieAlgebra) -> list[tuple]:
    n = g.dim
    rows = []
    # z is central iff sum_i z_i C^k_ij = 0 for every j, k
    for j in range(n):
        for k in range(n):
            row = [ZERO] * n
            for i in range(n):
                row[i] = g.tensor.coefficient(i + 1, j + 1, k + 1)
            if any(row):
                rows.append(row)
    if not rows:
        return [unit_vector(n, i + 1) for i in range(n)]
    return kernel_basis(Mat.from_rows(rows, n))


def _jordan_from_dims(dims: Sequence[int]) -> CharacteristicSequence:
    # dims[k] = rank(A^k); blocks of size >= k number dims[k-1] - dims[k]
    at_least = [dims[k - 1] - dims[k] for k in range(1, len(dims))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exactly)
    return tuple(parts)


def _power_ranks_int(g: LieAlgebra, x: Sequence[int]) -> list[int]:
    n = g.dim
    cols = int_ad_columns(g, x)
    current = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    dims = [n]
    while dims[-1]:
        image = Span(n)
        for v in current:
            w = [0] * n
            for j, vj in enumerate(v):
                if vj:
                    for k, c in cols[j].items():
                        w[k] += vj * c
            if any(w):
                image.add_int(w)
        if image.dim == dims[-1]:
            raise NotNilpotentError("ad x is not nilpotent")
        dims.append(image.dim)
        current = image.rows()
    return dims


def power_ranks(g: LieAlgebra, x: Sequence) -> list[int]:
    """``[rank(A^0), rank(A^1), ...]`` for ``A = ad x``, ending at 0."""
    if len(x) != g.dim:
        raise InputError(f"vector of length {len(x)} for dimension {g.dim}")
    return _power_ranks_int(g, primitive([Fraction(v) for v in x]))


def char_seq_of(g: LieAlgebra, x: Sequence) -> CharacteristicSequence:
    """Jordan block sizes of ``ad x``, largest first."""
    return _jordan_from_dims(power_ranks(g, x))


def generator_indices(g: LieAlgebra) -> list[int]:
    """Basis indices (1-based) whose vectors complete ``C^1`` to the whole space."""
    spans = _series_spans(g)
    derived = spans[1].copy() if len(spans) > 1 else Span(g.dim)
    out = []
    for i in range(g.dim):
        e = [1 if k == i else 0 for k in range(g.dim)]
        if derived.add_int(e):
            out.append(i + 1)
    return out


def candidate_vectors(g: LieAlgebra, seed: int = DEFAULT_SEED, samples: int = CANDIDATE_SAMPLES):
    """Basis vectors outside ``C^1`` plus seeded rational combinations of generators."""
    n = g.dim
    spans = _series_spans(g)
    derived = spans[1] if len(spans) > 1 else Span(n)
    gens = generator_indices(g)
    out = []
    for i in range(n):
        e = unit_vector(n, i + 1)
        if not derived.contains(e):
            out.append(e)
    rng = random.Random(seed)
    for _ in range(samples):
        v = [ZERO] * n
        while not any(v):
            for i in gens:
                v[i - 1] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        out.append(tuple(v))
    return out


def characteristic_sequence(
    g: LieAlgebra, seed: int = DEFAULT_SEED, samples: int = CANDIDATE_SAMPLES
) -> tuple[CharacteristicSequence, tuple]:
    """Lexicographically largest Jordan type of ``ad x`` over the candidate set.

    Returns the sequence and the first candidate attaining it.  The
    maximum over all of ``g - C^1 g`` is attained on a Zariski-open set,
    so seeded generic combinations find it with probability one; the
    result is not a proof of maximality.
    """
    best: CharacteristicSequence | None = None
    witness = None
    for x in candidate_vectors(g, seed, samples):
        cs = char_seq_of(g, x)
        if best is None or cs > best:
            best, witness = cs, x
    return best, witness


def is_linear(cs: Sequence[int]) -> bool:
    return len(cs) >= 1 and cs[0] >= 2 and all(p == 1 for p in cs[1:])


def _adapted_basis(g: LieAlgebra) -> list[tuple[tuple, int]]:
    """Filtration-adapted basis as ``(vector, weight)`` pairs, weight ascending."""
    spans = _series_spans(g)
    chosen: list[tuple[tuple, int]] = []
    # deepest nonzero stage first, then extend upwards
    acc = Span(g.dim)
    for w in range(len(spans) - 1, 0, -1):
        stage = spans[w - 1]
        for row in stage.basis():
            if acc.add(row):
                chosen.append((row, w))
    return sorted(chosen, key=lambda p: p[1])


def associated_graded(g: LieAlgebra) -> GradedAlgebra:
    """``gr(g)`` on a filtration-adapted basis.

    Basis vectors of weight ``w`` complete ``C^w`` to ``C^{w-1}``; the
    bracket of weights ``i`` and ``j`` keeps only the weight ``i+j``
    component.
    """
    basis = _adapted_basis(g)
    n = g.dim
    vectors = [v for v, _ in basis]
    weights = tuple(w for _, w in basis)
    p = Mat.from_columns(vectors, n)

    entries = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = bracket(g, vectors[a], vectors[b])
            if not any(v):
                continue
            coords = solve(p, v)
            target = weights[a] + weights[b]
            for k, c in enumerate(coords):
                if c and weights[k] == target:
                    entries[(a + 1, b + 1, k + 1)] = c
    algebra = LieAlgebra(StructureTensor(n, entries), None, weights)
    return GradedAlgebra(algebra, weights, tuple(vectors))


def weight_slices(weights: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in weights:
        out[w] = out.get(w, 0) + 1
    return out


def graded_certificate(g: LieAlgebra, weights: Sequence[int]) -> bool:
    """Sufficient check that ``g`` equals its associated graded algebra.

    True iff every nonzero constant is weight-additive and each weight
    ``w`` occurs ``dim C^{w-1} - dim C^w`` times.
    """
    if len(weights) != g.dim or any(w < 1 for w in weights):
        return False
    for (i, j, k), _ in g.tensor.entries:
        if weights[k - 1] != weights[i - 1] + weights[j - 1]:
            return False
    try:
        dims = series_dims(g)
    except NotNilpotentError:
        return False
    counts = weight_slices(weights)
    for w in range(1, max(max(counts), len(dims)) + 1):
        upper = dims[w - 1] if w - 1 < len(dims) else 0
        lower = dims[w] if w < len(dims) else 0
        if counts.get(w, 0) != upper - lower:
            return False
    return True


def infer_weights(g: LieAlgebra) -> tuple | None:
    """Weights forced by homogeneity, or None when no consistent assignment exists.

    Basis vectors that are never a bracket target get weight 1; a target
    gets the weight sum of the first bracket producing it.
    """
    n = g.dim
    producers: dict[int, list[tuple[int, int]]] = {}
    for (i, j, k), _ in g.tensor.entries:
        producers.setdefault(k, []).append((i, j))
    weights: dict[int, int] = {i: 1 for i in range(1, n + 1) if i not in producers}
    changed = True
    while changed and len(weights) < n:
        changed = False
        for k, pairs in producers.items():
            if k in weights:
                continue
            for i, j in pairs:
                if i in weights and j in weights:
                    weights[k] = weights[i] + weights[j]
                    changed = True
                    break
    if len(weights) < n:
        return None
    result = tuple(weights[i] for i in range(1, n + 1))
    for (i, j, k), _ in g.tensor.entries:
        if result[k - 1] != result[i - 1] + result[j - 1]:
            return None
    return result


def derived_span(g: LieAlgebra) -> Span:
    spans = _series_spans(g)
    return spans[1] if len(spans) > 1 else Span(g.dim)


def has_abelian_direct_factor(g: LieAlgebra) -> bool:
    """True iff the center is not contained in ``[g, g]``."""
    derived = Span(g.dim)
    units = [[1 if k == i else 0 for k in range(g.dim)] for i in range(g.dim)]
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            w = int_bracket(g, units[a], units[b])
            if any(w):
                derived.add_int(w)
    return any(not derived.contains(z) for z in center(g))


def weight_sorted_order(weights: Sequence[int]) -> list[int]:
    """1-based permutation sorting basis vectors by weight (stable)."""
    return [i + 1 for i in sorted(range(len(weights)), key=lambda i: weights[i])]


def block_counts(dims: Sequence[int]) -> list[int]:
    """Number of Jordan blocks of size at least ``k``, for ``k = 1, 2, ...``."""
    return [dims[k - 1] - dims[k] for k in range(1, len(dims))]


def matrix_power_ranks(a: Mat) -> list[int]:
    """Ranks of ``A^0, A^1, ...`` by explicit matrix powers, until 0."""
    out = [a.nrows]
    power = Mat.identity(a.nrows)
    while out[-1]:
        power = power @ a
        r = rank(power)
        if r == out[-1]:
            raise NotNilpotentError("matrix is not nilpotent")
        out.append(r)
    return out


__all__ = [
    "CharacteristicSequence",
    "Filtration",
    "GradedAlgebra",
    "associated_graded",
    "center",
    "char_seq_of",
    "characteristic_sequence",
    "graded_certificate",
    "has_abelian_direct_factor",
    "infer_weights",
    "is_linear",
    "lower_central_series",
    "nilindex",
    "series_dims",
]
