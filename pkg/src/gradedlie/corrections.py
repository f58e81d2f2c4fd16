"""Where the catalog's equations differ from the printed formulas, and why.

Each :class:`Correction` names the printed formula, the adopted one,
and carries an ``evidence`` callable that rebuilds the printed variant
and reports the defect it exhibits (degenerate wedge, Jacobi failure,
inhomogeneity, split extension or table mismatch).  The evidence is
recomputed every time, so the ledger stays honest if the catalog moves.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import GradedLieError, InputError, NotNilpotentError
from .catalog import ModelId, expected_invariants, family_forms
from .invariants import characteristic_sequence, has_abelian_direct_factor, infer_weights, nilindex
from .liecore import LieAlgebra, StructureTensor, jacobi_defects
from .mcdsl import MCSystem, system_to_algebra


@dataclass(frozen=True)
class Correction:
    code: str
    where: str
    printed: str
    adopted: str
    evidence: Callable[[], str]

    def as_dict(self) -> dict:
        return {
            "code": self.code,
            "where": self.where,
            "printed": self.printed,
            "adopted": self.adopted,
            "evidence": self.evidence(),
        }


def _algebra(dim: int, forms: dict) -> LieAlgebra:
    return system_to_algebra(MCSystem.from_dict(dim, forms))


def _jacobi_summary(g: LieAlgebra, limit: int = 3) -> str:
    bad = jacobi_defects(g)
    if not bad:
        return "Jacobi holds"
    triples = ", ".join(str(d.triple) for d in bad[:limit])
    more = f" (+{len(bad) - limit} more)" if len(bad) > limit else ""
    return f"{len(bad)} Jacobi defect triple(s): {triples}{more}"


def _vergne_l_range() -> str:
    n = 5
    try:
        StructureTensor(n + 1, {(1, i, i + 1): 1 for i in range(1, n + 1)})
    except InputError as exc:
        return f"n={n}: the i=1 bracket is rejected: {exc}"
    return "no defect reproduced"


def _vergne_q_range() -> str:
    m = 3
    n = 2 * m
    entries = {(1, i, i + 1): 1 for i in range(2, n)}
    for j in range(1, m + 1):
        a, b = j, n + 1 - j
        entries[(a, b, n)] = entries.get((a, b, n), 0) + (-1) ** j
    g = LieAlgebra(StructureTensor(n, entries))
    try:
        nilindex(g)
    except NotNilpotentError as exc:
        return f"m={m}: j=1 gives [X_1, X_{n}] = -X_{n}; {exc}"
    return "no defect reproduced"


def _l_bound() -> str:
    dim, forms = family_forms("L", 7, (3,))
    g = _algebra(dim, forms)
    cs, _ = characteristic_sequence(g)
    _, table = expected_invariants(ModelId("L", 7, (1,)))
    return (
        f"L(7;3) allowed by t_p <= (n-1)//2 has characteristic sequence {cs} and nilindex "
        f"{nilindex(g)}; the family lists {table}"
    )


def _q_ext_index() -> str:
    m, p = 3, 1
    dim = 2 * m + p
    printed_index = 2 * m + 1 + p
    return f"Q(3;1): printed index {printed_index} of the extension form exceeds dimension {dim}"


def _q_ext_sum() -> str:
    # upper limit t_j: t=1 gives an empty sum
    dim, forms = family_forms("Q", 3, ())
    forms[dim + 1] = [((-1) ** 1 * 1, i, 2 * 1 + 3 - i) for i in range(2, 1 + 1)]
    split = _algebra(dim + 1, forms)
    first = f"Q(3;1) with the printed limit: empty sum, split = {has_abelian_direct_factor(split)}"
    # sign (-1)^j with j the extension index, limit repaired to t_j + 1
    dim, forms = family_forms("Q", 4, ())
    t, j = 2, 1
    forms[dim + 1] = [((-1) ** j, i, 2 * t + 3 - i) for i in range(2, t + 2)]
    signed = _algebra(dim + 1, forms)
    return first + f"; Q(4;2) with sign (-1)^j of the extension index: {_jacobi_summary(signed)}"


def _printed_d_forms(m: int, ts=()) -> tuple[int, dict]:
    forms = {j: [(1, 1, j - 1)] for j in range(3, 2 * m - 2)}
    forms[2 * m - 2] = [(1, 1, 2 * m - 3)] + [((-1) ** j, j, 2 * m - 3 - j) for j in range(2, m)]
    forms[2 * m - 1] = (
        [(1, 1, 2 * m - 2)]
        + [((-1) ** j * (m - j), j, 2 * m - 2 - j) for j in range(2, m)]
        + [(2 - m, 2, 2 * m)]
    )
    forms[2 * m] = [((-1) ** j, j, 2 * m - 3 - j) for j in range(2, m)]
    for i, t in enumerate(ts, start=1):
        forms[2 * m + i] = [((-1) ** j, j, 2 * t + 3 - j) for j in range(2, t)]
    return 2 * m + len(ts), forms


def _d_indices() -> str:
    m = 4
    dim, forms = _printed_d_forms(m)
    try:
        MCSystem.from_dict(dim, forms)
        degenerate = "no degenerate wedge"
    except ValueError as exc:
        degenerate = str(exc)
    m = 5
    dim, forms = _printed_d_forms(m)
    cleaned = {k: [(c, a, b) for c, a, b in terms if a != b] for k, terms in forms.items()}
    g = _algebra(dim, cleaned)
    weights = infer_weights(g)
    return (
        f"D(4;): {degenerate}; D(5;) with such terms dropped: {_jacobi_summary(g)}, "
        f"homogeneous weights {'exist' if weights else 'do not exist'}"
    )


def _d_ext_sum() -> str:
    m = 5
    _, base = family_forms("D", m, ())
    forms = dict(base)
    forms[2 * m + 1] = [((-1) ** j, j, 2 * 1 + 3 - j) for j in range(2, 1)]
    g = _algebra(2 * m + 1, forms)
    return f"D(5;1) with upper limit t_i - 1: empty sum, split = {has_abelian_direct_factor(g)}"


def _printed_e_forms(m: int) -> tuple[int, dict]:
    forms = {j: [(1, 1, j - 1)] for j in range(3, 2 * m - 2)}
    forms[2 * m - 2] = [(1, 1, 2 * m - 3)] + [((-1) ** j, j, 2 * m - 1 - j) for j in range(2, m)]
    forms[2 * m - 1] = (
        [(1, 1, 2 * m - 2)]
        + [((-1) ** j * (m - j), j, 2 * m - j) for j in range(2, m)]
        + [(m - 2, 2, 2 * m + 1)]
    )
    forms[2 * m] = (
        [(1, 1, 2 * m - 1)]
        + [(Fraction((-1) ** j * (j - 2) * (2 * m - 1 - j), 2), j, 2 * m + 1 - j) for j in range(3, m + 1)]
        + [(m - 2, 3, 2 * m + 1)]
    )
    forms[2 * m + 1] = [((-1) ** j, j, 2 * m - 1 - j) for j in range(2, m)]
    return 2 * m + 1, forms


def _e_signs() -> str:
    parts = []
    for m in (4, 5):
        dim, forms = _printed_e_forms(m)
        parts.append(f"E({m};) as printed: {_jacobi_summary(_algebra(dim, forms))}")
    m = 5
    dim, forms = _printed_e_forms(m)
    forms[2 * m - 1] = [(c if (a, b) != (2, 2 * m + 1) else -c, a, b) for c, a, b in forms[2 * m - 1]]
    parts.append(f"E(5;) with only (m-2) -> (2-m) in dw_(2m-1): {_jacobi_summary(_algebra(dim, forms))}")
    return "; ".join(parts)


def _d_sign_kept() -> str:
    m = 5
    dim, forms = family_forms("D", m, ())
    flipped = dict(forms)
    flipped[2 * m - 1] = [(c if (a, b) != (2, 2 * m) else -c, a, b) for c, a, b in forms[2 * m - 1]]
    return (
        f"D(5;) with (2-m): {_jacobi_summary(_algebra(dim, forms))}; "
        f"with (m-2): {_jacobi_summary(_algebra(dim, flipped))}"
    )


CORRECTIONS: tuple[Correction, ...] = (
    Correction(
        "vergne-l-range",
        "filiform model L_n",
        "[X_1,X_i] = X_{i+1} for 1 <= i <= n on basis X_1..X_{n+1}",
        "[X_1,X_i] = X_{i+1} for 2 <= i <= n-1 on basis X_1..X_n",
        _vergne_l_range,
    ),
    Correction(
        "vergne-q-range",
        "filiform model Q_2m",
        "[X_1,X_i] = X_{i+1} for 1 <= i <= 2m-1; [X_j,X_{2m+1-j}] = (-1)^j X_{2m} for 1 <= j <= m",
        "same with 2 <= i <= 2m-1 and 2 <= j <= m",
        _vergne_q_range,
    ),
    Correction(
        "l-chain-typo",
        "family L, chain forms",
        "dw_j = w_1 ^ w_{j-.1}",
        "dw_j = w_1 ^ w_{j-1}",
        lambda: "typographical: the printed index is not an integer",
    ),
    Correction(
        "l-bound",
        "family L, parameter bound",
        "1 <= t_1 < .. < t_p <= [(n-1)/2]",
        "1 <= t_1 < .. < t_p <= [(n-2)/2]",
        _l_bound,
    ),
    Correction(
        "q-ext-index",
        "family Q, extension forms",
        "dw_{2m+1+j}, 1 <= j <= p",
        "dw_{2m+j}, 1 <= j <= p",
        _q_ext_index,
    ),
    Correction(
        "q-ext-sum",
        "family Q, extension forms",
        "sum_{i=2}^{t_j} (-1)^j w_i ^ w_{2t_j+3-i}",
        "sum_{i=2}^{t_j+1} (-1)^i w_i ^ w_{2t_j+3-i}",
        _q_ext_sum,
    ),
    Correction(
        "d-indices",
        "family D, forms dw_{2m-2}, dw_{2m-1}, dw_{2m}",
        "second indices 2m-3-j, 2m-2-j, 2m-3-j",
        "second indices 2m-1-j, 2m-j, 2m-1-j",
        _d_indices,
    ),
    Correction(
        "d-ext-sum",
        "family D, extension forms",
        "sum_{j=2}^{t_i-1}",
        "sum_{j=2}^{t_i+1}",
        _d_ext_sum,
    ),
    Correction(
        "e-signs",
        "family E, forms dw_{2m-1} and dw_{2m}",
        "(m-2) w_2^w_{2m+1} in dw_{2m-1}; dw_{2m} = w_1^w_{2m-1} + S + (m-2) w_3^w_{2m+1} "
        "with S = sum_{j=3}^{m} (-1)^j (j-2)(2m-1-j)/2 w_j^w_{2m+1-j}",
        "(2-m) w_2^w_{2m+1} (as in family D); dw_{2m} = w_1^w_{2m-1} - S + (2-m) w_3^w_{2m+1}",
        _e_signs,
    ),
    Correction(
        "d-sign-kept",
        "family D, form dw_{2m-1}",
        "(2-m) w_2 ^ w_{2m}",
        "unchanged (validated)",
        _d_sign_kept,
    ),
)


def corrections_ledger() -> list[dict]:
    """Every correction with freshly computed evidence."""
    out = []
    for c in CORRECTIONS:
        try:
            out.append(c.as_dict())
        except GradedLieError as exc:  # evidence must never sink the report
            d = {"code": c.code, "where": c.where, "printed": c.printed, "adopted": c.adopted}
            d["evidence"] = f"evidence computation failed: {exc}"
            out.append(d)
    return out


__all__ = ["CORRECTIONS", "Correction", "corrections_ledger"]
