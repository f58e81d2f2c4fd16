import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlie.catalog import build_model, vergne_l, vergne_q
from gradedlie.errors import NotNilpotentError
from gradedlie.exactlin import Mat, Span, rank, unit_vector
from gradedlie.invariants import (
    associated_graded,
    block_counts,
    center,
    char_seq_of,
    characteristic_sequence,
    graded_certificate,
    has_abelian_direct_factor,
    infer_weights,
    is_linear,
    lower_central_series,
    matrix_power_ranks,
    nilindex,
    power_ranks,
    series_dims,
)
from gradedlie.liecore import LieAlgebra, StructureTensor, abelian, ad_matrix, change_of_basis, direct_sum


def e(n, i):
    return unit_vector(n, i)


def test_lower_central_series_examples():
    assert lower_central_series(vergne_l(4)).dims == (4, 2, 1, 0)
    assert lower_central_series(abelian(5)).dims == (5, 0)
    # X_8 = [X_2, X_3] sits at weight 3, so it leaves the series after C^2
    assert lower_central_series(build_model("L(7;1)")).dims == (8, 6, 5, 3, 2, 1, 0)


def test_series_stages_nested():
    stages = lower_central_series(build_model("D(5;1)")).stages
    for upper, lower in zip(stages, stages[1:]):
        span = Span(11, upper)
        assert all(span.contains(v) for v in lower)


def test_not_nilpotent():
    g = LieAlgebra(StructureTensor(2, {(1, 2, 2): 1}))
    with pytest.raises(NotNilpotentError):
        lower_central_series(g)
    with pytest.raises(NotNilpotentError):
        char_seq_of(g, e(2, 1))


def test_nilindex_examples():
    assert nilindex(abelian(3)) == 1
    for n in range(3, 10):
        assert nilindex(vergne_l(n)) == n - 1
    assert nilindex(vergne_q(3)) == 5


def test_center_examples():
    assert len(center(abelian(3))) == 3
    assert Span(4, center(vergne_l(4))).basis() == [e(4, 4)]
    c = center(build_model("L(7;1)"))
    assert len(c) == 2 and Span(8, c).contains(e(8, 7)) and Span(8, c).contains(e(8, 8))


def test_char_seq_of_examples():
    assert char_seq_of(vergne_l(4), e(4, 4)) == (1, 1, 1, 1)
    assert char_seq_of(vergne_l(4), e(4, 1)) == (3, 1)
    assert char_seq_of(vergne_l(4), e(4, 3)) == (2, 1, 1)


def test_characteristic_sequence_examples():
    cs, witness = characteristic_sequence(abelian(3))
    assert cs == (1, 1, 1) and any(witness)
    assert characteristic_sequence(build_model("L(7;1)"))[0] == (6, 1, 1)
    assert characteristic_sequence(build_model("D(4;)"))[0] == (6, 1, 1)


def test_characteristic_sequence_is_deterministic():
    g = build_model("E(5;1)")
    assert characteristic_sequence(g, seed=3) == characteristic_sequence(g, seed=3)


def test_is_linear_examples():
    assert is_linear((3, 1))
    assert is_linear((5, 1, 1))
    assert not is_linear((4, 2, 1))
    assert not is_linear((1, 1))


def test_associated_graded_examples():
    gr = associated_graded(vergne_l(4))
    assert gr.weights == (1, 1, 2, 3)
    assert gr.algebra.same_structure(vergne_l(4))
    perturbed = LieAlgebra(StructureTensor(5, {(1, 2, 3): 1, (1, 3, 4): 1, (1, 4, 5): 1, (2, 3, 5): 1}))
    assert associated_graded(perturbed).algebra.same_structure(vergne_l(5))
    assert series_dims(associated_graded(perturbed).algebra) == series_dims(perturbed)


def test_graded_certificate_examples():
    for n in range(3, 9):
        assert graded_certificate(vergne_l(n), (1,) + tuple(range(1, n)))
    assert graded_certificate(build_model("L(7;1)"), (1, 1, 2, 3, 4, 5, 6, 3))
    assert not graded_certificate(vergne_l(5), (1,) * 5)
    assert not graded_certificate(vergne_l(5), (1, 1, 2))


def test_has_abelian_direct_factor_examples():
    assert has_abelian_direct_factor(direct_sum(vergne_l(3), abelian(1)))
    assert has_abelian_direct_factor(abelian(2))
    assert not has_abelian_direct_factor(build_model("L(7;1)"))


def test_infer_weights():
    assert infer_weights(build_model("L(7;1)")) == (1, 1, 2, 3, 4, 5, 6, 3)
    inhomogeneous = LieAlgebra(StructureTensor(4, {(1, 2, 3): 1, (1, 3, 4): 1, (1, 2, 4): 1}))
    assert infer_weights(inhomogeneous) is None


def test_block_count_formula_on_witness():
    g = build_model("Q(4;1,3)")
    cs, x = characteristic_sequence(g)
    assert sum(cs) == g.dim
    a = ad_matrix(g, x)
    explicit = matrix_power_ranks(a)
    assert explicit == power_ranks(g, x)
    counts = block_counts(explicit)
    for k, count in enumerate(counts, start=1):
        assert count == sum(1 for part in cs if part >= k)


def _random_invertible(n, rng):
    while True:
        p = Mat.from_rows([[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if rank(p) == n:
            return p


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["VL(6)", "L(7;1)", "Q(3;2)", "D(4;1)", "E(4;)"]), st.integers(0, 10**6))
def test_characteristic_sequence_basis_invariant(name, seed):
    g = build_model(name)
    p = _random_invertible(g.dim, random.Random(seed))
    h = change_of_basis(g, p)
    assert characteristic_sequence(h)[0] == characteristic_sequence(g)[0]
    assert series_dims(h) == series_dims(g)
