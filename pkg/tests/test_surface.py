import random
from fractions import Fraction

import pytest

from crnormal import (
    Jet,
    SurfaceJet,
    TangentIdentityMap,
    apply_map,
    compose_maps,
    surface_invariants,
    validate_model,
)
from crnormal.errors import DegreeViolation, InadmissibleMonomial, ModelInvalid
from crnormal.poly import compose_graph, compose_jet
from crnormal.surface import linear_automorphism_constraints, moser_s

from conftest import M, P3, P3B, X, corpus_surface, rand_map, rand_tail


# -- model validation ------------------------------------------------------


def test_valid_model():
    assert validate_model(P3, 3).poly == P3


@pytest.mark.parametrize("poly,k0,reason", [
    (M(3, 0) + P3 + M(0, 3), 3, "pure_term_present"),
    (P3 * X(2), 3, "p_1_k0m1_not_one"),
    (M(2, 1, X(0, 1)) + M(1, 2), 3, "not_real_valued"),
    (P3 + M(2, 0), 3, "not_homogeneous"),
    (M(1, 1), 2, "k0_below_3"),
])
def test_invalid_models(poly, k0, reason):
    with pytest.raises(ModelInvalid) as info:
        validate_model(poly, k0)
    assert reason in info.value.reasons


def test_surface_rejects_low_tail():
    with pytest.raises(DegreeViolation):
        SurfaceJet(validate_model(P3, 3), 6, M(2, 0))
    with pytest.raises(ValueError):
        SurfaceJet(validate_model(P3, 3), 3)


# -- invariants ----------------------------------------------------------------


def test_invariants_k0_3():
    inv = surface_invariants(corpus_surface(12))
    assert inv.s == 4
    assert inv.alpha == X(Fraction(3, 2))
    assert inv.alpha_remainder == (M(2, 1) - M(1, 2)) * X(Fraction(1, 2))
    assert inv.nondegenerate and inv.reasons == ()


def test_invariants_k0_4():
    S = SurfaceJet(validate_model(P3B, 4), 8, M(0, 5))
    inv = surface_invariants(S)
    assert inv.alpha == 2 and inv.s == 5 and inv.nondegenerate


def test_no_s_is_degenerate():
    S = SurfaceJet(validate_model(P3, 3), 8, M(2, 3))
    inv = surface_invariants(S)
    assert moser_s(S) is None and inv.s is None
    assert not inv.nondegenerate and "NO_S_WITHIN_TRUNCATION" in inv.reasons


def test_alpha_squared_equals_s_is_degenerate():
    # k0 = 6: z zb^5 + z^5 zb has alpha = 3, so s = 9 hits alpha^2 = s
    model = validate_model(M(1, 5) + M(5, 1), 6)
    inv = surface_invariants(SurfaceJet(model, 10, M(0, 9)))
    assert inv.alpha == 3
    assert inv.reasons == ("ALPHA_SQUARED_EQUALS_S",)
    assert surface_invariants(SurfaceJet(model, 10, M(0, 8))).nondegenerate


# -- maps --------------------------------------------------------------------


def test_admissibility():
    with pytest.raises(InadmissibleMonomial):
        TangentIdentityMap(3, {(1, 0): 1})
    with pytest.raises(InadmissibleMonomial):
        TangentIdentityMap(3, g={(0, 1): 1})
    with pytest.raises(InadmissibleMonomial):
        TangentIdentityMap(3, g={(3, 0): 1})
    TangentIdentityMap(3, {(0, 1): 1}, {(4, 0): 1})


def test_identity_leaves_surface():
    S = corpus_surface(8)
    assert apply_map(TangentIdentityMap.identity(3), S) == S


def test_g_only_map_example():
    S = corpus_surface(6)
    out = apply_map(TangentIdentityMap(3, g={(0, 2): 1}), S)
    assert out.tail == M(0, 4) + M(4, 2) + M(3, 3) * 2 + M(2, 4)


def _satisfies_relation(m, S, out):
    """out(phi, conj phi) = Q + g(z, Q) with phi = z + f(z, Q)."""
    N, Q = S.order, S.graph
    phi = Jet.z(N) + compose_graph(m.f, Q, 3)
    lhs = compose_jet(out.graph.poly, phi, phi.conjugate(), order=N)
    rhs = Q + compose_graph(m.g, Q, 3)
    return lhs == rhs


def test_apply_map_satisfies_relation():
    rng = random.Random(7)
    for _ in range(10):
        S = corpus_surface(9, rand_tail(rng, 3, 9, 4))
        m = rand_map(rng, 3, 4, max_weight=7)
        out = apply_map(m, S)
        assert out.degree_part(3) == P3
        assert _satisfies_relation(m, S, out)


def test_compose_identity_laws():
    m = TangentIdentityMap(3, {(2, 0): X(1, 1)}, {(1, 1): 2})
    e = TangentIdentityMap.identity(3)
    assert compose_maps(e, m) == m
    assert compose_maps(m, e) == m


def test_compose_is_functorial():
    rng = random.Random(11)
    for _ in range(8):
        S = corpus_surface(9, rand_tail(rng, 3, 9, 3))
        a, b = rand_map(rng, 3, 3, 6), rand_map(rng, 3, 3, 6)
        assert apply_map(compose_maps(a, b, 9), S) == apply_map(b, apply_map(a, S))


def test_map_k0_mismatch():
    with pytest.raises(ValueError):
        apply_map(TangentIdentityMap.identity(4), corpus_surface(6))


# -- linear automorphisms ----------------------------------------------------


def test_linear_constraints_k0_3():
    L = linear_automorphism_constraints(validate_model(P3, 3))
    assert L.admissible(X(2)) == (True, X(8))
    assert L.admissible(X(-3)) == (True, X(-27))
    assert L.admissible(X(0, 1))[0] is False
    assert L.admissible(X(1)) == (True, X(1))


def test_linear_constraints_k0_4():
    L = linear_automorphism_constraints(validate_model(P3B, 4))
    assert L.admissible(X(3)) == (True, X(81))
    ok, g = L.admissible(X(0, 1))
    assert ok and g == -1
