import logging
import random
from fractions import Fraction

import pytest

from crnormal import SurfaceJet, apply_map, equiv_check, normalize, validate_model, verify_normal_form
from crnormal.errors import NondegeneracyViolated, OrderMismatch, ZeroPolynomial
from crnormal.fischer import fischer_decompose
from crnormal.verify import (
    PseudoWeightTable,
    derivative_weight_diagnostic,
    gram_quotient,
    min_pseudo_weight,
    pseudo_weight,
    pseudo_weight_clauses,
    transform_linear,
)

from conftest import M, P3, P3B, X, corpus_surface, homogeneous_polys, rand_map, rand_tail

from hypothesis import given


# -- verification --------------------------------------------------------------


def test_verify_normalize_output(corpus12_result):
    rep = verify_normal_form(corpus12_result.normal_form)
    assert rep.overall and rep.s == 4
    assert [t.degree for t in rep.resonance_targets] == [6, 8, 10, 12]


def test_verify_flags_z3zb():
    rep = verify_normal_form(corpus_surface(6, M(3, 1)))
    assert not rep.overall
    d4 = rep.per_degree[0]
    assert d4.degree == 4 and not d4.passed
    assert Fraction(5, 7) in [v.re for v in d4.residual.values]


def test_verify_model_only():
    rep = verify_normal_form(SurfaceJet(validate_model(P3, 3), 8))
    assert rep.overall and not rep.resonance_applicable and rep.resonance_targets == ()


def test_verify_flags_resonant_target():
    rep = verify_normal_form(corpus_surface(8, M(0, 6)))
    assert not rep.overall
    assert [t.degree for t in rep.resonance_targets if not t.passed] == [6]


@given(homogeneous_polys(min_degree=3, max_degree=9))
def test_gram_quotient_matches_decomposition(q):
    if q.is_zero():
        return
    assert gram_quotient(P3, q, q.degree) == fischer_decompose(P3, q).quotient


# -- pseudo-weights -----------------------------------------------------------------


@pytest.fixture
def table():
    return PseudoWeightTable(3, 4)


def test_weight_anchors(table):
    assert pseudo_weight(table, 1, 0) == 1
    assert pseudo_weight(table, 0, 1) == Fraction(3, 2)
    assert pseudo_weight(table, 2, 1) == 4 and pseudo_weight(table, 1, 2) == 4
    assert pseudo_weight(table, 3, 1) == 4
    assert min_pseudo_weight(table, P3) == 4


def test_weight_anchors_k0_4():
    table = PseudoWeightTable(4, 7)
    for g in range(1, 4):
        assert pseudo_weight(table, g, 4 - g) == 7


def test_zbar_powers(table):
    for k in range(1, 9):
        assert pseudo_weight(table, 0, k) == Fraction(k * 3, 2)


def test_clauses_reported(table):
    clauses = pseudo_weight_clauses(table, 3, 1)
    assert clauses["shifted"] == 4 and clauses["recursive"] == 5


def test_weight_errors(table):
    with pytest.raises(ValueError):
        pseudo_weight(table, 0, 0)
    with pytest.raises(ZeroPolynomial):
        min_pseudo_weight(table, M(0, 0) * X(0))
    with pytest.raises(ValueError):
        PseudoWeightTable(3, 3)


def test_derivative_diagnostic_logged(table, caplog):
    with caplog.at_level(logging.INFO, logger="crnormal.verify"):
        diag = derivative_weight_diagnostic(table, P3)
    assert diag["reference"] == 2 and diag["computed"] == 3 and not diag["agrees"]
    assert "differs" in caplog.text


# -- equivalence -----------------------------------------------------------------------


def test_equiv_reflexive():
    S = corpus_surface(9, M(2, 3))
    assert equiv_check(S, S).verdict == "equivalent"


def test_equiv_after_random_map():
    rng = random.Random(5)
    S = corpus_surface(9, rand_tail(rng, 3, 9, 4))
    for _ in range(3):
        assert equiv_check(S, apply_map(rand_map(rng, 3, 4, 6), S)).equivalent


def test_equiv_different_s():
    a = corpus_surface(8)
    b = SurfaceJet(validate_model(P3, 3), 8, M(0, 5))
    v = equiv_check(a, b)
    assert v.verdict == "inequivalent" and v.certificate["s"] == [4, 5]


def test_equiv_tangent_different_normal_forms():
    a, b = corpus_surface(8), corpus_surface(8, M(2, 3))
    v = equiv_check(a, b)
    assert v.verdict == "inequivalent"
    m, n = v.certificate["first_difference"]
    na, nb = normalize(a).normal_form, normalize(b).normal_form
    assert na.coeff(m, n) != nb.coeff(m, n) and m + n == 5


def test_equiv_linear_finds_scaling():
    S = corpus_surface(9, M(2, 3))
    lam, mu = X(Fraction(-1, 2)), Fraction(-1, 8)
    moved = transform_linear(S, S.model, lam, mu)
    assert equiv_check(S, moved, "tangent").verdict == "inequivalent"
    v = equiv_check(S, moved, "linear")
    assert v.verdict == "equivalent"
    # the certificate carries the second surface onto the first
    assert v.certificate["lambda"] == "-2" and v.certificate["mu"] == "-8"
    back = transform_linear(moved, S.model, X(-2), Fraction(-8))
    assert normalize(back).normal_form == normalize(S).normal_form


def test_equiv_linear_irrational_scaling_undecided():
    a = corpus_surface(8)
    # |1+i|^2 = 2 is not a rational square, so rho is irrational
    b = SurfaceJet(a.model, 8, M(0, 4, X(1, 1)))
    v = equiv_check(a, b, "linear")
    assert v.verdict == "undecided" and v.certificate["reason"] == "irrational scaling"


def test_equiv_input_errors():
    with pytest.raises(OrderMismatch):
        equiv_check(corpus_surface(8), corpus_surface(9))
    with pytest.raises(NondegeneracyViolated):
        equiv_check(corpus_surface(8), SurfaceJet(validate_model(P3, 3), 8))
    with pytest.raises(ValueError):
        equiv_check(corpus_surface(8), corpus_surface(8), "projective")
    other = SurfaceJet(validate_model(P3B, 4), 8, M(0, 5))
    assert equiv_check(corpus_surface(8), other).verdict == "inequivalent"
