import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlie.catalog import build_model, vergne_l
from gradedlie.errors import InputError, MCSyntaxError
from gradedlie.liecore import abelian, jacobi_defects
from gradedlie.mcdsl import MCSystem, d_squared, parse_mc, parse_system, render_mc, system_to_algebra


def test_single_term_convention():
    g = parse_mc("n=3; d w3 = w1^w2")
    assert g.tensor.as_dict() == {(1, 2, 3): -1}


def test_filiform_four():
    g = parse_mc("n=4; d w3 = w1^w2; d w4 = w1^w3")
    assert g.dim == 4 and jacobi_defects(g) == []


def test_dangling_wedge():
    with pytest.raises(MCSyntaxError) as info:
        parse_mc("n=3; d w3 = w1^")
    assert (info.value.line, info.value.column) == (1, 16)


def test_multiline_comments_rationals_and_signs():
    text = """
    # a comment
    n = 4
    d w3 = -w1^w2          # leading minus
    d w4 = 3/6 w1^w3 - 2 w2^w3
    d w2 = 0
    """
    g = parse_mc(text)
    assert g.tensor.as_dict() == {(1, 2, 3): 1, (1, 3, 4): Fraction(-1, 2), (2, 3, 4): 2}


def test_reversed_wedge_flips_sign():
    assert parse_mc("n=3; d w3 = w2^w1").tensor.as_dict() == {(1, 2, 3): 1}


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("n=3; d w4 = w1^w2", 1, 8, "outside"),
        ("n=3\nd w3 = w1^w2\nd w3 = w1^w2", 3, 1, "duplicate"),
        ("n=3; d w3 = w2^w2", 1, 13, "degenerate"),
        ("n=3; d w3 = 1/0 w1^w2", 1, 15, "zero denominator"),
        ("n=3; d w3 = w1^w2 w1", 1, 19, "unexpected"),
        ("d w3 = w1^w2", 1, 1, "header"),
        ("n=3; d w3 = w1*w2", 1, 15, "unexpected character"),
        ("n=0", 1, 3, "at least 1"),
    ],
)
def test_syntax_errors(text, line, col, fragment):
    with pytest.raises(MCSyntaxError) as info:
        parse_mc(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert fragment in str(info.value)
    assert isinstance(info.value, InputError)


def test_render_examples():
    assert render_mc(abelian(2)) == "n=2;\n"
    assert " ".join(render_mc(vergne_l(3)).split()) == "n=3; d w3 = -1 w1^w2"
    g = build_model("L(7;1)")
    assert parse_mc(render_mc(g)).same_structure(g)


def test_render_is_canonical():
    g = build_model("E(5;1,2)")
    text = render_mc(g)
    assert render_mc(parse_mc(text)) == text


def test_from_dict_rejects_degenerate():
    with pytest.raises(ValueError):
        MCSystem.from_dict(3, {3: [(1, 2, 2)]})


def test_d_squared_detects_failure():
    system = parse_system("n=4; d w3 = w1^w2; d w4 = w1^w3; d w2 = w2^w3")
    assert d_squared(system)
    assert jacobi_defects(system_to_algebra(system))


@st.composite
def systems(draw):
    n = draw(st.integers(2, 6))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    forms = {}
    for k in range(1, n + 1):
        chosen = draw(st.lists(st.sampled_from(pairs), max_size=3, unique=True))
        forms[k] = [(draw(st.integers(-2, 2)), a, b) for a, b in chosen]
    return MCSystem.from_dict(n, forms)


@settings(max_examples=150, deadline=None)
@given(systems())
def test_forms_and_brackets_agree(system):
    assert (not d_squared(system)) == (not jacobi_defects(system_to_algebra(system)))


@settings(max_examples=80, deadline=None)
@given(systems())
def test_roundtrip_random(system):
    g = system_to_algebra(system)
    assert parse_mc(render_mc(g)).same_structure(g)
