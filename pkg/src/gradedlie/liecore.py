"""Structure constants of finite-dimensional Lie algebras.

A bracket ``[X_i, X_j] = sum_k C^k_ij X_k`` is stored sparsely, only for
``i < j``; antisymmetry supplies the rest.  Basis indices are 1-based
throughout (``X_1 .. X_n``); coordinate tuples are ordinary Python
tuples whose position 0 holds the ``X_1`` coordinate.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError, PreconditionError
from .exactlin import (
    ZERO,
    Mat,
    Span,
    format_scalar,
    inverse,
    is_zero,
    scalar,
    unit_vector,
)


@dataclass(frozen=True)
class StructureTensor:
    """Sparse ``(i, j, k) -> C^k_ij`` with ``i < j``; no stored zeros."""

    dim: int
    entries: tuple = ()
    _adj: tuple = field(default=(), init=False, repr=False, compare=False, hash=False)
    _int: tuple = field(default=(), init=False, repr=False, compare=False, hash=False)
    _map: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.dim < 0:
            raise InputError("dimension must be non-negative")
        merged: dict[tuple[int, int, int], Fraction] = {}
        for key, c in (self.entries.items() if isinstance(self.entries, Mapping) else self.entries):
            i, j, k = key
            if not (1 <= i <= self.dim and 1 <= j <= self.dim and 1 <= k <= self.dim):
                raise InputError(f"bracket index {key} outside 1..{self.dim}")
            if i == j:
                raise InputError(f"diagonal bracket [X_{i}, X_{i}] cannot be nonzero")
            c = scalar(c)
            if i > j:
                i, j, c = j, i, -c
            merged[(i, j, k)] = merged.get((i, j, k), ZERO) + c
        entries = tuple(sorted((key, c) for key, c in merged.items() if c))
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_map", dict(entries))

        adj: list[list[tuple[int, int, Fraction]]] = [[] for _ in range(self.dim)]
        for (i, j, k), c in entries:
            adj[i - 1].append((j - 1, k - 1, c))
            adj[j - 1].append((i - 1, k - 1, -c))
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))

        # integer multiple of the whole tensor, for span computations
        scale = math.lcm(*(c.denominator for _, c in entries)) if entries else 1
        object.__setattr__(
            self,
            "_int",
            tuple(tuple((j, k, int(c * scale)) for j, k, c in a) for a in self._adj),
        )

    def as_dict(self) -> dict[tuple[int, int, int], Fraction]:
        return dict(self.entries)

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        """``C^k_ij`` for any ``i, j`` (antisymmetry applied)."""
        if i == j:
            return ZERO
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        return sign * self._map.get((i, j, k), ZERO)

    def basis_bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """Sparse ``[X_i, X_j]`` as ``{k: coefficient}`` (1-based)."""
        out: dict[int, Fraction] = {}
        for jj, k, c in self._adj[i - 1]:
            if jj == j - 1:
                out[k + 1] = out.get(k + 1, ZERO) + c
        return {k: c for k, c in out.items() if c}

    def bracket_targets(self) -> set[int]:
        return {k for (_, _, k), _ in self.entries}


@dataclass(frozen=True)
class LieAlgebra:
    """A structure tensor plus optional basis labels and claimed weights."""

    tensor: StructureTensor
    labels: tuple | None = None
    weights: tuple | None = None

    def __post_init__(self):
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.dim:
                raise InputError(f"{len(labels)} labels for dimension {self.dim}")
            object.__setattr__(self, "labels", labels)
        if self.weights is not None:
            weights = tuple(int(w) for w in self.weights)
            if len(weights) != self.dim:
                raise InputError(f"{len(weights)} weights for dimension {self.dim}")
            if any(w < 1 for w in weights):
                raise InputError("weights must be positive integers")
            object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.tensor.dim

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping | Iterable, labels=None, weights=None):
        return cls(StructureTensor(dim, brackets), labels, weights)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(StructureTensor(dim, ()))

    def basis_labels(self) -> tuple:
        return self.labels or tuple(f"X{i}" for i in range(1, self.dim + 1))

    def with_weights(self, weights) -> "LieAlgebra":
        return LieAlgebra(self.tensor, self.labels, None if weights is None else tuple(weights))

    def same_structure(self, other: "LieAlgebra") -> bool:
        return self.tensor == other.tensor


@dataclass(frozen=True)
class JacobiDefect:
    triple: tuple[int, int, int]
    defect: tuple


def _check_len(g: LieAlgebra, v: Sequence, what: str = "vector") -> None:
    if len(v) != g.dim:
        raise InputError(f"{what} of length {len(v)} for an algebra of dimension {g.dim}")


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    _check_len(g, x)
    _check_len(g, y)
    out = [ZERO] * g.dim
    adj = g.tensor._adj
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, k, c in adj[i]:
            yj = y[j]
            if yj:
                out[k] += xi * c * yj
    return tuple(out)


def int_bracket(g: LieAlgebra, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """A positive integer multiple of ``[x, y]`` for integer coordinate lists.

    Only the direction is meaningful; used in span computations.
    """
    out = [0] * g.dim
    adj = g.tensor._int
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, k, c in adj[i]:
            yj = y[j]
            if yj:
                out[k] += xi * c * yj
    return out


def int_ad_columns(g: LieAlgebra, x: Sequence[int]) -> list[dict[int, int]]:
    """Sparse columns of (a multiple of) ``ad x`` for an integer vector ``x``."""
    cols: list[dict[int, int]] = [dict() for _ in range(g.dim)]
    adj = g.tensor._int
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, k, c in adj[i]:
            col = cols[j]
            col[k] = col.get(k, 0) + xi * c
    return [{k: v for k, v in col.items() if v} for col in cols]


def ad_matrix(g: LieAlgebra, x: Sequence) -> Mat:
    """Matrix of ``y -> [x, y]``; column ``j`` holds ``[x, X_{j+1}]``."""
    _check_len(g, x)
    n = g.dim
    rows = [[ZERO] * n for _ in range(n)]
    adj = g.tensor._adj
    for i, xi in enumerate(x):
        xi = scalar(xi)
        if not xi:
            continue
        for j, k, c in adj[i]:
            rows[k][j] += xi * c
    return Mat(tuple(tuple(r) for r in rows), n, n)


def jacobi_defects(g: LieAlgebra) -> list[JacobiDefect]:
    n = g.dim
    br = {}
    for (i, j, k), c in g.tensor.entries:
        br.setdefault((i, j), {})[k] = c
        br.setdefault((j, i), {})[k] = -c

    def nested(a: int, b: int, c: int, acc: dict[int, Fraction]) -> None:
        # acc += [[X_a, X_b], X_c]
        for l, coef in br.get((a, b), {}).items():
            for m, coef2 in br.get((l, c), {}).items():
                acc[m] = acc.get(m, ZERO) + coef * coef2

    out = []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        acc: dict[int, Fraction] = {}
        nested(i, j, k, acc)
        nested(j, k, i, acc)
        nested(k, i, j, acc)
        if any(acc.values()):
            defect = [ZERO] * n
            for m, v in acc.items():
                defect[m - 1] = v
            out.append(JacobiDefect((i, j, k), tuple(defect)))
    return out


def is_lie_algebra(g: LieAlgebra) -> bool:
    return not jacobi_defects(g)


def direct_sum(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    if g2.dim == 0:
        return g1
    n1 = g1.dim
    entries = list(g1.tensor.entries)
    entries += [((i + n1, j + n1, k + n1), c) for (i, j, k), c in g2.tensor.entries]
    labels = None
    if g1.labels is not None or g2.labels is not None:
        labels = g1.basis_labels() + tuple(
            f"X{i + n1}" if g2.labels is None else lab
            for i, lab in enumerate(g2.basis_labels(), start=1)
        )
    weights = None
    if g1.weights is not None and g2.weights is not None:
        weights = g1.weights + g2.weights
    return LieAlgebra(StructureTensor(n1 + g2.dim, entries), labels, weights)


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra.abelian(dim)


def is_central(g: LieAlgebra, z: Sequence) -> bool:
    return ad_matrix(g, z).is_zero()


def central_quotient(g: LieAlgebra, z: Sequence) -> LieAlgebra:
    """Quotient of ``g`` by the central line spanned by ``z``.

    The quotient lives on the basis vectors other than the first nonzero
    coordinate ``q`` of ``z``.  Modulo ``z``, ``X_q`` equals
    ``-(1/z_q) sum_{i != q} z_i X_i``, so each constant becomes
    ``C^k_ab - C^q_ab z_k / z_q``.  When ``z`` is a multiple of ``X_q``
    this just deletes index ``q``.
    """
    _check_len(g, z)
    z = tuple(scalar(v) for v in z)
    if is_zero(z):
        raise InputError("cannot quotient by the zero vector")
    if not is_central(g, z):
        raise PreconditionError("quotient vector is not central")
    q = next(i for i, v in enumerate(z) if v) + 1
    zq = z[q - 1]

    def new_index(k: int) -> int:
        return k if k < q else k - 1

    entries: dict[tuple[int, int, int], Fraction] = {}
    for (a, b, k), c in g.tensor.entries:
        if a == q or b == q:
            # central z with z_q != 0 forces these to cancel after projection
            continue
        key_ab = (new_index(a), new_index(b))
        if k != q:
            key = key_ab + (new_index(k),)
            entries[key] = entries.get(key, ZERO) + c
        else:
            for kk, zk in enumerate(z, start=1):
                if kk != q and zk:
                    key = key_ab + (new_index(kk),)
                    entries[key] = entries.get(key, ZERO) - c * zk / zq
    # a == q brackets: [X_q, X_b] = -(1/z_q) sum z_i [X_i, X_b] since [z, X_b] = 0,
    # so they are determined by the rest and carry no independent information.
    labels = None
    if g.labels is not None:
        labels = tuple(lab for i, lab in enumerate(g.labels, start=1) if i != q)
    weights = None
    if g.weights is not None and sum(1 for v in z if v) == 1:
        weights = tuple(w for i, w in enumerate(g.weights, start=1) if i != q)
    return LieAlgebra(StructureTensor(g.dim - 1, entries), labels, weights)


def change_of_basis(g: LieAlgebra, p: Mat) -> LieAlgebra:
    """Transport ``g`` to the basis formed by the columns of ``p``.

    New basis vector ``Y_a`` is column ``a`` of ``p`` in old coordinates,
    so ``e_a -> p e_a`` is an isomorphism from the result onto ``g``.
    """
    if p.shape != (g.dim, g.dim):
        raise InputError(f"basis change of shape {p.shape} for dimension {g.dim}")
    p_inv = inverse(p)
    cols = [p.column(a) for a in range(g.dim)]
    entries = {}
    for a, b in itertools.combinations(range(g.dim), 2):
        v = bracket(g, cols[a], cols[b])
        if is_zero(v):
            continue
        w = p_inv.apply(v)
        for k, c in enumerate(w, start=1):
            if c:
                entries[(a + 1, b + 1, k)] = c
    return LieAlgebra(StructureTensor(g.dim, entries), g.labels)


def permute_basis(g: LieAlgebra, order: Sequence[int]) -> LieAlgebra:
    """Relabel so that new ``X_a`` is old ``X_{order[a-1]}`` (1-based)."""
    if sorted(order) != list(range(1, g.dim + 1)):
        raise InputError("order is not a permutation of the basis")
    new = {old: a for a, old in enumerate(order, start=1)}
    entries = [((new[i], new[j], new[k]), c) for (i, j, k), c in g.tensor.entries]
    labels = None if g.labels is None else tuple(g.labels[o - 1] for o in order)
    weights = None if g.weights is None else tuple(g.weights[o - 1] for o in order)
    return LieAlgebra(StructureTensor(g.dim, entries), labels, weights)


def to_json(g: LieAlgebra) -> dict:
    doc = {
        "dim": g.dim,
        "labels": list(g.basis_labels()),
        "brackets": [
            {"i": i, "j": j, "k": k, "c": format_scalar(c)} for (i, j, k), c in g.tensor.entries
        ],
    }
    if g.weights is not None:
        doc["weights"] = list(g.weights)
    return doc


def from_json(doc: Mapping) -> LieAlgebra:
    try:
        dim = int(doc["dim"])
        brackets = doc.get("brackets", [])
        entries: dict[tuple[int, int, int], Fraction] = {}
        for b in brackets:
            i, j, k = int(b["i"]), int(b["j"]), int(b["k"])
            if i >= j:
                raise InputError(f"bracket entry needs i < j, got i={i}, j={j}")
            if (i, j, k) in entries:
                raise InputError(f"duplicate bracket entry {(i, j, k)}")
            entries[(i, j, k)] = scalar(str(b["c"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra JSON: {exc}") from None
    labels = doc.get("labels")
    weights = doc.get("weights")
    return LieAlgebra(StructureTensor(dim, entries), labels, weights)


def basis_vector(g: LieAlgebra, i: int) -> tuple:
    return unit_vector(g.dim, i)


def linear_span(g: LieAlgebra, vectors: Iterable[Sequence]) -> Span:
    return Span(g.dim, vectors)
