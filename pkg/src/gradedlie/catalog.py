"""Catalog of naturally graded models with linear characteristic sequence.

Families (``n`` or ``m`` is the size, ``t`` a strictly increasing tuple):

=========  ==========================  =================================
family     text id                     bounds
=========  ==========================  =================================
L          ``L(n;t1,..,tp)``           n >= 7, tp <= (n-2)//2
Q          ``Q(m;t1,..,tp)``           m >= 3, tp <= m-1
D          ``D(m;t1,..,tp)``           m >= 4, tp <= m-3
E          ``E(m;t1,..,tp)``           m >= 4, tp <= m-3
VergneL    ``VL(n)``                   n >= 3
VergneQ    ``VQ(m)``                   m >= 3
=========  ==========================  =================================

The four parametrised families are emitted as structure equations and
converted with :func:`gradedlie.mcdsl.system_to_algebra`; the two filiform
models are given by brackets.  Every place where the equations here
differ from the printed formulas is listed in :mod:`gradedlie.corrections`.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .invariants import infer_weights
from .liecore import LieAlgebra, StructureTensor
from .mcdsl import MCSystem, algebra_to_system, system_to_algebra

FAMILIES = ("L", "Q", "D", "E", "VergneL", "VergneQ")
_PREFIX = {"L": "L", "Q": "Q", "D": "D", "E": "E", "VergneL": "VL", "VergneQ": "VQ"}
_FROM_PREFIX = {v: k for k, v in _PREFIX.items()}
_MIN_SIZE = {"L": 7, "Q": 3, "D": 4, "E": 4, "VergneL": 3, "VergneQ": 3}


@dataclass(frozen=True, order=True)
class ModelId:
    family: str
    size: int
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(t) for t in self.params))

    def sort_key(self):
        return (FAMILIES.index(self.family), self.size, self.params)

    def __str__(self) -> str:
        prefix = _PREFIX.get(self.family, self.family)
        if self.family in ("VergneL", "VergneQ"):
            return f"{prefix}({self.size})"
        return f"{prefix}({self.size};{','.join(map(str, self.params))})"

    @classmethod
    def parse(cls, text: str) -> "ModelId":
        m = re.fullmatch(r"\s*(VL|VQ|L|Q|D|E)\(\s*(\d+)\s*(?:;\s*([\d\s,]*))?\)\s*", text)
        if not m:
            raise ParameterError(f"cannot parse model id {text!r}; expected e.g. L(7;1,3) or VQ(5)")
        family = _FROM_PREFIX[m.group(1)]
        size = int(m.group(2))
        raw = (m.group(3) or "").strip()
        if family in ("VergneL", "VergneQ") and m.group(3) is not None and raw:
            raise ParameterError(f"{m.group(1)} takes no parameter tuple")
        ts = tuple(int(x) for x in raw.split(",") if x.strip()) if raw else ()
        return cls(family, size, ts)

    @property
    def p(self) -> int:
        return len(self.params)

    def drop_last(self) -> "ModelId":
        return ModelId(self.family, self.size, self.params[:-1])


def max_parameter(family: str, size: int) -> int:
    """Largest admissible tuple entry for the family at this size."""
    if family == "L":
        return (size - 2) // 2
    if family == "Q":
        return size - 1
    if family in ("D", "E"):
        return size - 3
    return 0


def validate(mid: ModelId) -> None:
    if mid.family not in FAMILIES:
        raise ParameterError(f"unknown family {mid.family!r}")
    size_name = "n" if mid.family in ("L", "VergneL") else "m"
    if mid.size < _MIN_SIZE[mid.family]:
        raise ParameterError(
            f"{mid}: {size_name} >= {_MIN_SIZE[mid.family]} violated ({size_name}={mid.size})"
        )
    ts = mid.params
    if mid.family in ("VergneL", "VergneQ"):
        if ts:
            raise ParameterError(f"{mid}: filiform model takes no parameter tuple")
        return
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ParameterError(f"{mid}: tuple {ts} is not strictly increasing")
    if ts and ts[0] < 1:
        raise ParameterError(f"{mid}: t_1 >= 1 violated")
    hi = max_parameter(mid.family, mid.size)
    if ts and ts[-1] > hi:
        bound = {"L": "(n-2)//2", "Q": "m-1", "D": "m-3", "E": "m-3"}[mid.family]
        raise ParameterError(f"{mid}: t_p <= {bound} = {hi} violated (t_p={ts[-1]})")


def psi_terms(t: int) -> list[tuple]:
    """``sum_{j=2}^{t+1} (-1)^j w_j ^ w_{2t+3-j}`` as ``(coeff, a, b)`` triples."""
    return [((-1) ** j, j, 2 * t + 3 - j) for j in range(2, t + 2)]


def _chain(upto: int) -> dict[int, list]:
    return {j: [(1, 1, j - 1)] for j in range(3, upto + 1)}


def family_forms(family: str, size: int, ts) -> tuple[int, dict[int, list]]:
    """Dimension and ``{k: [(coeff, a, b), ...]}`` for a parametrised family.

    No bound checking; :func:`build_model` validates first.
    """
    ts = tuple(ts)
    if family == "L":
        n = size
        forms = _chain(n)
        base = n
    elif family == "Q":
        m = size
        forms = _chain(2 * m - 1)
        forms[2 * m] = [(1, 1, 2 * m - 1)] + [((-1) ** j, j, 2 * m + 1 - j) for j in range(2, m + 1)]
        base = 2 * m
    elif family in ("D", "E"):
        m = size
        top = 2 * m if family == "D" else 2 * m + 1
        forms = _chain(2 * m - 3)
        forms[2 * m - 2] = [(1, 1, 2 * m - 3)] + [
            ((-1) ** j, j, 2 * m - 1 - j) for j in range(2, m)
        ]
        forms[2 * m - 1] = (
            [(1, 1, 2 * m - 2)]
            + [((-1) ** j * (m - j), j, 2 * m - j) for j in range(2, m)]
            + [(2 - m, 2, top)]
        )
        if family == "E":
            forms[2 * m] = (
                [(1, 1, 2 * m - 1)]
                + [
                    (-Fraction((-1) ** j * (j - 2) * (2 * m - 1 - j), 2), j, 2 * m + 1 - j)
                    for j in range(3, m + 1)
                ]
                + [(2 - m, 3, top)]
            )
        forms[top] = [((-1) ** j, j, 2 * m - 1 - j) for j in range(2, m)]
        base = top
    else:
        raise ParameterError(f"{family} is not a structure-equation family")
    for i, t in enumerate(ts, start=1):
        forms[base + i] = psi_terms(t)
    return base + len(ts), forms


def mc_system(mid: ModelId) -> MCSystem:
    validate(mid)
    if mid.family in ("VergneL", "VergneQ"):
        return algebra_to_system(build_model(mid))
    dim, forms = family_forms(mid.family, mid.size, mid.params)
    return MCSystem.from_dict(dim, forms)


def vergne_l(n: int) -> LieAlgebra:
    """``[X_1, X_i] = X_{i+1}`` for ``2 <= i <= n-1``."""
    return LieAlgebra(StructureTensor(n, {(1, i, i + 1): 1 for i in range(2, n)}))


def vergne_q(m: int) -> LieAlgebra:
    """Chain ``[X_1, X_i] = X_{i+1}`` (``2 <= i <= 2m-1``) plus
    ``[X_j, X_{2m+1-j}] = (-1)^j X_{2m}`` for ``2 <= j <= m``."""
    n = 2 * m
    entries = {(1, i, i + 1): 1 for i in range(2, n)}
    for j in range(2, m + 1):
        entries[(j, n + 1 - j, n)] = (-1) ** j
    return LieAlgebra(StructureTensor(n, entries))


def build_model(mid: ModelId | str) -> LieAlgebra:
    """Construct a catalog model with its homogeneity weights attached."""
    if isinstance(mid, str):
        mid = ModelId.parse(mid)
    validate(mid)
    if mid.family == "VergneL":
        g = vergne_l(mid.size)
    elif mid.family == "VergneQ":
        g = vergne_q(mid.size)
    else:
        dim, forms = family_forms(mid.family, mid.size, mid.params)
        g = system_to_algebra(MCSystem.from_dict(dim, forms))
    return g.with_weights(infer_weights(g))


def expected_invariants(mid: ModelId | str) -> tuple[int, tuple]:
    """Dimension and characteristic sequence listed for the model's family."""
    if isinstance(mid, str):
        mid = ModelId.parse(mid)
    validate(mid)
    s, p = mid.size, mid.p
    if mid.family == "L":
        return s + p, (s - 1,) + (1,) * (p + 1)
    if mid.family == "Q":
        return 2 * s + p, (2 * s - 1,) + (1,) * (p + 1)
    if mid.family == "D":
        return 2 * s + p, (2 * s - 2,) + (1,) * (p + 2)
    if mid.family == "E":
        return 2 * s + 1 + p, (2 * s - 1,) + (1,) * (p + 2)
    if mid.family == "VergneL":
        return s, (s - 1, 1)
    return 2 * s, (2 * s - 1, 1)


def is_filiform(mid: ModelId) -> bool:
    return mid.family in ("VergneL", "VergneQ") or (mid.family in ("L", "Q") and not mid.params)


def _tuples(hi: int, p: int):
    return itertools.combinations(range(1, hi + 1), p)


def enumerate_models(dim: int) -> list[ModelId]:
    """Every model id of the given dimension, ordered by (family, size, tuple)."""
    out: list[ModelId] = []
    for n in range(7, dim + 1):
        out += [ModelId("L", n, ts) for ts in _tuples(max_parameter("L", n), dim - n)]
    for m in range(3, dim // 2 + 1):
        out += [ModelId("Q", m, ts) for ts in _tuples(max_parameter("Q", m), dim - 2 * m)]
    for m in range(4, dim // 2 + 1):
        out += [ModelId("D", m, ts) for ts in _tuples(max_parameter("D", m), dim - 2 * m)]
    for m in range(4, (dim - 1) // 2 + 1):
        out += [ModelId("E", m, ts) for ts in _tuples(max_parameter("E", m), dim - 2 * m - 1)]
    if dim >= 3:
        out.append(ModelId("VergneL", dim))
    if dim % 2 == 0 and dim >= 6:
        out.append(ModelId("VergneQ", dim // 2))
    return sorted(out, key=ModelId.sort_key)


def models_up_to(max_dim: int, min_dim: int = 3) -> list[ModelId]:
    out = []
    for d in range(min_dim, max_dim + 1):
        out += enumerate_models(d)
    return out
