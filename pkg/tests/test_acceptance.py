"""Acceptance criteria, one test per criterion.

Each test records its outcome in ``conftest.ACCEPTANCE``; the terminal
summary prints one pass/fail line per criterion.  Running this file as a
script prints the same lines.
"""
import inspect
import itertools
import json
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE
from gradedlie.catalog import build_model, enumerate_models, expected_invariants, mc_system
from gradedlie.cohomology import (
    central_extension,
    cocycle_spaces,
    enumerate_graded_linear_extensions,
)
from gradedlie.corrections import corrections_ledger
from gradedlie.exactlin import Span, unit_vector
from gradedlie.invariants import (
    associated_graded,
    characteristic_sequence,
    graded_certificate,
    has_abelian_direct_factor,
    is_linear,
    matrix_power_ranks,
    nilindex,
    weight_sorted_order,
    _jordan_from_dims,
)
from gradedlie.liecore import (
    abelian,
    ad_matrix,
    central_quotient,
    direct_sum,
    jacobi_defects,
    permute_basis,
)
from gradedlie.mcdsl import MCSystem, d_squared, parse_mc, render_mc, system_to_algebra


def record(n, label):
    """Decorator: store pass/fail of the wrapped test under criterion ``n``."""

    def wrap(fn):
        def test(*args, **kwargs):
            detail = {}
            try:
                fn(*args, detail=detail, **kwargs)
            except BaseException as exc:
                ACCEPTANCE[n] = (False, label, f"{type(exc).__name__}: {exc}"[:200])
                raise
            ACCEPTANCE[n] = (True, label, detail.get("info", ""))

        sig = inspect.signature(fn)
        test.__name__ = fn.__name__
        test.__signature__ = sig.replace(parameters=[v for k, v in sig.parameters.items() if k != "detail"])
        return test

    return wrap


def ids_up_to(max_dim, min_dim=3):
    return [m for d in range(min_dim, max_dim + 1) for m in enumerate_models(d)]


@pytest.fixture(scope="module")
def grid16():
    return [(mid, build_model(mid)) for mid in ids_up_to(16)]


@pytest.fixture(scope="module")
def seqs16(grid16):
    return {mid: characteristic_sequence(g) for mid, g in grid16}


@record(1, "Jacobi validity, every model of dimension <= 24")
def test_c1_jacobi(detail):
    start = time.perf_counter()
    ids = ids_up_to(24)
    bad = [str(m) for m in ids if jacobi_defects(build_model(m))]
    elapsed = time.perf_counter() - start
    assert not bad, bad[:5]
    # second route: d^2 = 0 on the emitted structure equations
    assert all(not d_squared(mc_system(m)) for m in ids)
    ledger = corrections_ledger()
    assert ledger and all("no defect reproduced" not in c["evidence"] for c in ledger)
    assert elapsed < 60, f"{elapsed:.1f}s"
    detail["info"] = f"{len(ids)} models, {elapsed:.1f}s, {len(ledger)} corrections with evidence"


@record(2, "table reproduction, dimension <= 16")
def test_c2_table(grid16, seqs16, detail):
    for mid, g in grid16:
        cs, witness = seqs16[mid]
        assert (g.dim, cs) == expected_invariants(mid), mid
        # independent Jordan type from explicit powers of the witness's ad matrix
        assert _jordan_from_dims(matrix_power_ranks(ad_matrix(g, witness))) == cs, mid
    detail["info"] = f"{len(grid16)} models"


@record(3, "natural grading certificate and gr equality, dimension <= 16")
def test_c3_graded(grid16, detail):
    for mid, g in grid16:
        assert graded_certificate(g, g.weights), mid
        gr = associated_graded(g)
        assert gr.algebra.same_structure(permute_basis(g, weight_sorted_order(g.weights))), mid
    detail["info"] = f"{len(grid16)} models"


@record(4, "nonsplit, linear, first part = nilindex, dimension <= 16")
def test_c4_nonsplit_linear(grid16, seqs16, detail):
    for mid, g in grid16:
        cs, _ = seqs16[mid]
        assert not has_abelian_direct_factor(g), mid
        assert is_linear(cs), mid
        assert cs[0] == nilindex(g), mid
    detail["info"] = f"{len(grid16)} models"


@record(5, "central quotient drops the last parameter, dimension <= 16")
def test_c5_quotient(grid16, seqs16, detail):
    checked = 0
    for mid, g in grid16:
        if not mid.params:
            continue
        q = central_quotient(g, unit_vector(g.dim, g.dim))
        smaller = build_model(mid.drop_last())
        assert q.same_structure(smaller), mid
        assert nilindex(q) == nilindex(g), mid
        assert is_linear(seqs16[mid.drop_last()][0]), mid
        checked += 1
    assert checked
    detail["info"] = f"{checked} models with p >= 1"


@record(6, "no graded linear nonsplit extension of g + abelian(1), dimension <= 10")
def test_c6_prop1(detail):
    ids = ids_up_to(10)
    for mid in ids:
        g = build_model(mid)
        split = direct_sum(g, abelian(1).with_weights((1,)))
        assert enumerate_graded_linear_extensions(split, split.weights) == [], mid
    # the search itself is not vacuous: the filiform L_7 does extend
    vl7 = build_model("VL(7)")
    found = enumerate_graded_linear_extensions(vl7, vl7.weights)
    assert {c.new_weight for c in found} == {3, 5}
    detail["info"] = f"{len(ids)} models; positive control VL(7) gives weights 3 and 5"


def _rank(rows):
    """Plain Gauss-Jordan rank, independent of the package's Span."""
    rows = [list(map(Fraction, r)) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _h2_by_hand(dim, chain_top):
    # L_n: [X_1, X_i] = X_{i+1}, 2 <= i <= n-1.  Cochain phi_ab, a<b.
    pairs = list(itertools.combinations(range(1, dim + 1), 2))
    col = {p: i for i, p in enumerate(pairs)}

    def br(a, b):
        if a == 1 and 2 <= b <= chain_top:
            return {b + 1: 1}
        if b == 1 and 2 <= a <= chain_top:
            return {a + 1: -1}
        return {}

    rows = []
    for i, j, k in itertools.combinations(range(1, dim + 1), 3):
        row = [0] * len(pairs)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for t, s in br(a, b).items():
                if t == c:
                    continue
                lo, hi, sign = (t, c, 1) if t < c else (c, t, -1)
                row[col[(lo, hi)]] += s * sign
        rows.append(row)
    z = len(pairs) - (_rank(rows) if rows else 0)
    # coboundaries: -f([X_a, X_b]) for f = dual basis
    b_rows = []
    for l in range(1, dim + 1):
        row = [0] * len(pairs)
        for a, b in pairs:
            row[col[(a, b)]] = -br(a, b).get(l, 0)
        b_rows.append(row)
    b = _rank(b_rows)
    return z, b, z - b


@record(7, "cohomology oracle, dimension <= 10")
def test_c7_cohomology(detail):
    assert _h2_by_hand(3, 2) == (3, 1, 2)
    assert _h2_by_hand(4, 3) == (4, 2, 2)
    for n in (3, 4):
        z2, b2, h2 = cocycle_spaces(build_model(f"VL({n})"))
        assert (len(z2), len(b2), h2) == _h2_by_hand(n, n - 1)
    ids = ids_up_to(10)
    for mid in ids:
        g = build_model(mid)
        z2, b2, h2 = cocycle_spaces(g)
        keys = sorted({p for c in z2 + b2 for p, _ in c.coefficients})
        zspan = Span(len(keys), [[c.as_dict().get(k, 0) for k in keys] for c in z2])
        assert all(zspan.contains([c.as_dict().get(k, 0) for k in keys]) for c in b2), mid
        assert h2 == len(z2) - len(b2)
        for phi in z2:
            ext = central_extension(g, phi)
            assert not jacobi_defects(ext), (mid, str(phi))
            assert central_quotient(ext, unit_vector(ext.dim, ext.dim)).same_structure(g)
    detail["info"] = f"{len(ids)} models; h2(L_3) = h2(L_4) = 2 by hand"


def _oracle_count(dim):
    """Brute force over every candidate (family, size, tuple) against the bounds."""
    bounds = []
    for n in range(7, dim + 1):
        bounds.append((n, (n - 2) // 2))  # L: dim n + p
    for m in range(3, dim):
        bounds.append((2 * m, m - 1))  # Q
    for m in range(4, dim):
        bounds.append((2 * m, m - 3))  # D
        bounds.append((2 * m + 1, m - 3))  # E
    total = 0
    for base, hi in bounds:
        p = dim - base
        if p < 0:
            continue
        total += sum(
            1 for t in itertools.product(range(1, hi + 1), repeat=p) if all(a < b for a, b in zip(t, t[1:]))
        )
    total += 1  # Vergne L_dim
    total += dim % 2 == 0 and dim >= 6  # Vergne Q
    return total


@record(8, "finite census, counts for dimension 7..14 match an independent count")
def test_c8_census(detail):
    counts = {}
    for n in range(7, 15):
        first = json.dumps([str(m) for m in enumerate_models(n)])
        second = json.dumps([str(m) for m in enumerate_models(n)])
        assert first == second
        counts[n] = len(json.loads(first))
        assert counts[n] == _oracle_count(n), n
    assert counts[8] == 8
    detail["info"] = ", ".join(f"{n}:{c}" for n, c in counts.items())


def _random_system(rng):
    n = rng.randint(3, 6)
    forms = {}
    for k in range(1, n + 1):
        terms = []
        for a, b in itertools.combinations(range(1, n + 1), 2):
            if rng.random() < 0.2:
                terms.append((Fraction(rng.randint(-3, 3), rng.randint(1, 2)), a, b))
        forms[k] = terms
    return MCSystem.from_dict(n, forms)


@record(9, "parser round trip on dimension <= 16, d^2 = 0 agrees with Jacobi")
def test_c9_roundtrip(grid16, detail):
    for mid, g in grid16:
        assert parse_mc(render_mc(g)).same_structure(g), mid
    rng = random.Random(0)
    agree = closed = 0
    for _ in range(100):
        system = _random_system(rng)
        on_forms = not d_squared(system)
        on_brackets = not jacobi_defects(system_to_algebra(system))
        assert on_forms == on_brackets
        agree += 1
        closed += on_forms
    assert 0 < closed < 100, "sample should contain both closed and non-closed systems"
    detail["info"] = f"{len(grid16)} models; {agree} random systems, {closed} closed"


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
