import pytest

from gradedlie.catalog import (
    ModelId,
    build_model,
    enumerate_models,
    expected_invariants,
    is_filiform,
    mc_system,
    models_up_to,
    validate,
)
from gradedlie.errors import ParameterError
from gradedlie.exactlin import unit_vector
from gradedlie.invariants import characteristic_sequence, graded_certificate
from gradedlie.liecore import bracket, central_quotient, jacobi_defects
from gradedlie.mcdsl import is_closed


def test_build_l7_1():
    g = build_model(ModelId("L", 7, (1,)))
    assert g.dim == 8
    for i in range(2, 7):
        v = bracket(g, unit_vector(8, 1), unit_vector(8, i))
        assert v in (unit_vector(8, i + 1), tuple(-c for c in unit_vector(8, i + 1)))
    assert bracket(g, unit_vector(8, 2), unit_vector(8, 3))[7] != 0
    assert g.weights == (1, 1, 2, 3, 4, 5, 6, 3)


def test_build_vergne_q():
    g = build_model("VQ(3)")
    assert g.dim == 6
    assert characteristic_sequence(g)[0] == (5, 1)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("L(6;1)", "n >= 7"),
        ("L(7;3)", "t_p <= (n-2)//2 = 2"),
        ("L(9;2,1)", "strictly increasing"),
        ("Q(4;4)", "t_p <= m-1"),
        ("D(5;3)", "t_p <= m-3"),
        ("E(3;)", "m >= 4"),
        ("VL(2)", "n >= 3"),
        ("L(8;0,1)", "t_1 >= 1"),
    ],
)
def test_bounds(text, fragment):
    with pytest.raises(ParameterError, match=fragment.replace("(", r"\(").replace(")", r"\)")):
        build_model(text)


def test_model_id_syntax():
    for text in ["L(7;1,3)", "Q(4;)", "D(5;1,2)", "E(4;1)", "VL(9)", "VQ(5)"]:
        assert str(ModelId.parse(text)) == text
    assert ModelId.parse(" L( 9 ; 1 , 3 ) ") == ModelId("L", 9, (1, 3))
    for bad in ["X(3)", "L7;1", "VL(5;1)", "L(7;a)"]:
        with pytest.raises(ParameterError):
            ModelId.parse(bad)


def test_expected_invariants_examples():
    assert expected_invariants("L(7;1)") == (8, (6, 1, 1))
    assert expected_invariants("Q(3;1)") == (7, (5, 1, 1))
    assert expected_invariants("D(4;)") == (8, (6, 1, 1))
    assert expected_invariants("E(4;)") == (9, (7, 1, 1))
    assert expected_invariants("VL(5)") == (5, (4, 1))
    assert expected_invariants("VQ(4)") == (8, (7, 1))


def test_enumerate_dim8():
    assert [str(m) for m in enumerate_models(8)] == [
        "L(7;1)",
        "L(7;2)",
        "L(8;)",
        "Q(3;1,2)",
        "Q(4;)",
        "D(4;)",
        "VL(8)",
        "VQ(4)",
    ]


def test_enumerate_small():
    assert enumerate_models(3) == [ModelId("VergneL", 3)]
    for n in range(3, 15):
        models = enumerate_models(n)
        assert all(expected_invariants(m)[0] == n for m in models)
        assert models == sorted(models, key=ModelId.sort_key)
        for m in models:
            validate(m)


def test_filiform_tags():
    assert is_filiform(ModelId("L", 8))
    assert is_filiform(ModelId("VergneQ", 4))
    assert not is_filiform(ModelId("L", 7, (1,)))
    assert not is_filiform(ModelId("D", 4))


def test_extension_generator_weights():
    g = build_model("Q(5;1,2,4)")
    assert g.weights[-3:] == (3, 5, 9)
    assert graded_certificate(g, g.weights)


def test_d_and_e_weights_are_homogeneity_forced():
    d = build_model("D(5;)")
    assert d.weights == (1, 1, 2, 3, 4, 5, 6, 7, 8, 7)
    e = build_model("E(5;)")
    assert e.weights == (1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 7)


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_e_mod_center_is_d(m):
    # the adopted E signs make E / <X_2m> the D model on the same indices
    e = build_model(f"E({m};)")
    assert central_quotient(e, unit_vector(e.dim, 2 * m)).same_structure(build_model(f"D({m};)"))


def test_structure_equations_closed_up_to_16():
    for mid in models_up_to(16):
        assert is_closed(mc_system(mid)), mid


def test_build_is_lie_small():
    for mid in models_up_to(12):
        assert jacobi_defects(build_model(mid)) == [], mid
