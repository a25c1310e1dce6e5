from fractions import Fraction

import pytest
from hypothesis import given

from quadpoisson.complexes import cohomology_dims, represents_basis
from quadpoisson.multivector import MultiVector, NotPoisson, d, is_poisson
from quadpoisson.poly import DPRIME, X1, X2, X3, Poly
from quadpoisson.structures import (REGIME_TAGS, NotAdmissible, Regime, StructureParams,
                                    TheoremUnavailable, build_structure, casimir_grades,
                                    classify_regime, expected_dim, expected_dim_complex,
                                    expected_table, generators, y_decomposition)
from quadpoisson.yframe import admissible_tensor

from conftest import nonzero_rationals, rationals

# one representative per regime, plus a few ratios with extra classes
SAMPLES = [
    StructureParams.dh2(1, 1),
    StructureParams.dh2(0, 1),
    StructureParams.dh7(0, 0, 1),
    StructureParams.dh7(0, 1, -2),
    StructureParams.dh7(0, 1, -3),
    StructureParams.dh7(0, -1, 6),
    StructureParams.dh7(0, 1, 2),
    StructureParams.dh7(0, 2, 1),
    StructureParams.dh7(0, 1, -1),
    StructureParams.dh7(2, 1, 5),
]


def all_grades(rmax):
    return [(k, r) for r in range(rmax + 1) for k in range(r + 1)]


def test_build_structure_examples():
    lam = build_structure(StructureParams.dh2(1, 2))
    assert lam.coefficient((2, 3)) == X1 * X3 * 4 - X2 * X3
    assert lam.coefficient((3, 1)) == X1 * X3 + X2 * X3 * 4
    assert lam.coefficient((1, 2)) == DPRIME * 2
    assert build_structure(StructureParams.dh7(0, 0, 1)) == MultiVector.from_components(
        2, [X1 * X3, X2 * X3, Poly()])
    assert str(StructureParams.dh2(1, 2).describe()) == "DH2(a=1, b=2)"


def test_custom_tensors():
    good = StructureParams("custom", custom=d(1, 2).scale(X3 * X3))
    assert build_structure(good) == good.custom
    bad = StructureParams("custom", custom=MultiVector.from_components(2, [X2 * X3, Poly(), X1 * X3]))
    with pytest.raises(NotPoisson):
        build_structure(bad)
    with pytest.raises(ValueError):
        StructureParams("custom")
    with pytest.raises(ValueError):
        StructureParams("DH5")


def test_y_decomposition_examples():
    assert y_decomposition(build_structure(StructureParams.dh2(3, 5))) == (10, 3, 5)
    assert y_decomposition(d(1, 2).scale(DPRIME)) == (0, 0, 1)
    with pytest.raises(NotAdmissible):
        y_decomposition(d(1, 2).scale(X1 * X2))
    with pytest.raises(NotAdmissible):
        y_decomposition(d(1, 2).scale(X3 * X3))


@given(rationals, rationals, rationals)
def test_y_decomposition_round_trip(alpha, beta, gamma):
    assert y_decomposition(admissible_tensor((alpha, beta, gamma))) == (alpha, beta, gamma)


@given(rationals, rationals, rationals)
def test_normal_forms_are_poisson(a, b, c):
    assert is_poisson(build_structure(StructureParams.dh7(a, b, c)))


def test_classify_examples():
    tags = [classify_regime(p) for p in SAMPLES]
    assert [t.tag for t in tags] == ["A_NONZERO", "A0_EXACT", "A0_B0", "A0_2BpC0", "A0_RATIO_NEG",
                                     "A0_RATIO_NEG", "A0_RATIO_POS", "A0_RATIO_POS", "A0_RATIO_POS",
                                     "A_NONZERO"]
    assert tags[5] == Regime("A0_RATIO_NEG", -1, 6)
    assert tags[6] == Regime("A0_RATIO_POS", 1, 2)
    assert tags[8] == Regime("A0_RATIO_POS", 1, -1)
    assert str(tags[5]) == "A0_RATIO_NEG(beta=-1, gamma=6)"
    assert classify_regime(StructureParams.dh7(0, 1, 0)).tag == "A0_EXACT"


def test_theorem_unavailable():
    with pytest.raises(TheoremUnavailable):
        classify_regime(StructureParams.dh2(1, 0))
    with pytest.raises(TheoremUnavailable):
        classify_regime(StructureParams.dh7(0, 0, 0))
    with pytest.raises(TheoremUnavailable):
        classify_regime(StructureParams("custom", custom=d(1, 2).scale(DPRIME)))
    with pytest.raises(TheoremUnavailable):
        expected_dim_complex(StructureParams.dh7(0, 1, 1), "S", 1, (2, 2))


@given(nonzero_rationals, rationals, rationals)
def test_every_parameter_has_a_tag(b, a, c):
    assert classify_regime(StructureParams.dh7(a, b, c)).tag in REGIME_TAGS


def test_expected_examples():
    p = StructureParams.dh2(0, 1)
    assert expected_dim(p, 0, (2, 3)) == 1
    assert expected_dim(p, 2, (1, 1)) == 2
    assert expected_dim(p, 3, (0, 0)) == 1
    assert expected_dim(StructureParams.dh2(1, 1), 2, (1, 1)) == 0
    assert expected_dim(StructureParams.dh2(1, 1), 2, (2, 3)) == 3
    assert expected_dim(p, 3, (5, 5)) == 2
    # one class beyond the Casimir multiples: d3 itself
    p7 = StructureParams.dh7(0, 1, -2)
    assert expected_dim(p7, 1, (2, 2)) == 1 == cohomology_dims((2, 2), p7)[1]
    assert generators(p7, 1, (2, 2)) == [d(3)]
    assert casimir_grades(classify_regime(p), 6) == [(2, 3), (4, 6)]
    assert expected_table(StructureParams.dh2(1, 1), 3) == {
        (0, (2, 3)): 1, (1, (2, 3)): 3, (2, (2, 3)): 3, (3, (2, 3)): 1, (3, (0, 0)): 1}


@pytest.mark.parametrize("params", SAMPLES, ids=lambda p: p.describe())
def test_expected_dims_match_computation(params):
    for g in all_grades(7):
        assert cohomology_dims(g, params) == tuple(expected_dim(params, i, g) for i in range(4)), g


@pytest.mark.parametrize("params", SAMPLES, ids=lambda p: p.describe())
def test_generators_represent_cohomology(params):
    for g in all_grades(6):
        for deg in range(4):
            ok, note = represents_basis("R", deg, g, params, generators(params, deg, g))
            assert ok, (g, deg, note)


@pytest.mark.parametrize("a", [0, 1, Fraction(-1, 2)])
def test_p_and_s_expectations(a):
    params = StructureParams.dh2(a, 1)
    for g in all_grades(7):
        for cx in ("P", "S"):
            got = cohomology_dims(g, params, cx)
            assert got == tuple(expected_dim_complex(params, cx, i, g) for i in range(4)), (cx, g)


def test_class7_with_c0_is_class2():
    p7, p2 = StructureParams.dh7(Fraction(1, 3), 2, 0), StructureParams.dh2(Fraction(1, 3), 2)
    assert build_structure(p7) == build_structure(p2)
    assert classify_regime(p7) == classify_regime(p2)
    assert expected_table(p7, 5) == expected_table(p2, 5)
