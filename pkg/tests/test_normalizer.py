import random
from fractions import Fraction

import pytest

from crnormal import (
    SurfaceJet,
    TangentIdentityMap,
    apply_map,
    normalize,
    resonance_schedule,
    solve_degree,
    solve_resonance,
    validate_model,
    verify_normal_form,
)
from crnormal.errors import InadmissibleMonomial, NondegeneracyViolated
from crnormal.fischer import sN_residual
from crnormal.normalizer import (
    ResonanceEvent,
    boundary_schedule,
    closed_form_factor,
    corrective_map,
    degree_unknowns,
    elementary_map,
    probe_degree_action,
)
from crnormal.poly import WJet

from conftest import M, P3, P3B, X, corpus_surface, rand_tail

ALPHA = X(Fraction(3, 2))


# -- unknowns and elementary maps ----------------------------------------


def test_degree_unknowns_examples():
    u = degree_unknowns(3, 4)
    assert set(u.g_monomials) == {(4, 0), (1, 1)} and set(u.f_monomials) == {(2, 0)}
    u = degree_unknowns(3, 6)
    assert set(u.g_monomials) == {(6, 0), (3, 1), (0, 2)} and set(u.f_monomials) == {(4, 0)}
    with pytest.raises(ValueError):
        degree_unknowns(3, 3)


def test_elementary_maps():
    assert elementary_map(3, (2, 0), X(5), "f") == TangentIdentityMap(3, {(2, 0): 5})
    assert elementary_map(3, (0, 2), X(5), "g") == TangentIdentityMap(3, g={(0, 2): 5})
    with pytest.raises(InadmissibleMonomial):
        elementary_map(3, (1, 0), X(1), "f")


# -- pass 1 -----------------------------------------------------------------


def test_probe_residual_and_linearity():
    S = corpus_surface(6, M(3, 1))
    system = probe_degree_action(S, 4)
    assert system.residual.values == sN_residual(P3, M(3, 1)).values
    assert system.residual.values[1] == Fraction(5, 7)
    # doubling an elementary coefficient doubles its effect on the residual
    for mono, comp in (((2, 0), "f"), ((1, 1), "g")):
        base = sN_residual(P3, S.degree_part(4)).values
        one = apply_map(elementary_map(3, mono, X(1), comp), S)
        two = apply_map(elementary_map(3, mono, X(2), comp), S)
        d1 = [a - b for a, b in zip(sN_residual(P3, one.degree_part(4)).values, base)]
        d2 = [a - b for a, b in zip(sN_residual(P3, two.degree_part(4)).values, base)]
        assert d2 == [2 * v for v in d1]


def test_solve_degree_normal_input_is_identity():
    S = corpus_surface(6)
    m, out = solve_degree(S, 4)
    assert m.is_identity() and out == S


def test_solve_degree_fixes_degree_4():
    S = corpus_surface(8, M(3, 1) + M(2, 3))
    m, out = solve_degree(S, 4)
    assert sN_residual(P3, out.degree_part(4)).is_zero()
    assert out.degree_part(3) == S.degree_part(3)
    assert out.coeff(0, 4) == S.coeff(0, 4)


# -- schedules -----------------------------------------------------------------


def test_schedule_k0_3_s_4():
    got = [(e.degree, e.case, e.t) for e in resonance_schedule(3, 4, 12)]
    assert got == [(6, "A", 1), (8, "B", 1), (10, "A", 2), (12, "B", 2)]
    assert resonance_schedule(3, 4, 5) == []


@pytest.mark.parametrize("k0", [3, 4, 5, 6])
def test_schedule_degrees_distinct(k0):
    s = k0 + 1
    degrees = [e.degree for e in resonance_schedule(k0, s, 60)]
    assert len(degrees) == len(set(degrees))


def test_boundary_schedule():
    got = [(e.degree, e.case, e.t, e.acting_degree) for e in boundary_schedule(3, 4, 12)]
    assert got == [(14, "A", 3, 11), (16, "B", 3, 12)]


def test_schedule_needs_finite_s():
    with pytest.raises(ValueError):
        resonance_schedule(3, None, 12)


# -- corrective maps -----------------------------------------------------------


def test_corrective_map_examples():
    assert corrective_map("A", 3, 1, ALPHA, X(0)).is_identity()
    m = corrective_map("A", 3, 1, ALPHA, X(1))
    assert m.f == WJet({(0, 1): ALPHA, (3, 0): -1}) and m.g.is_zero()
    m = corrective_map("B", 3, 1, ALPHA, X(0, 1))
    assert m.f == WJet({(1, 1): X(0, 1)}) and m.g.is_zero()
    m = corrective_map("B", 3, 1, ALPHA, X(1))
    assert m.g == WJet({(0, 2): 3})
    with pytest.raises(ValueError):
        corrective_map("C", 3, 1, ALPHA, X(1))


def test_closed_form_factor_values():
    ev = ResonanceEvent(6, "A", 1, 3)
    assert closed_form_factor(ev, ALPHA, 4) == ALPHA - 4
    ev = ResonanceEvent(8, "B", 1, 3)
    assert closed_form_factor(ev, ALPHA, 4) == (ALPHA - 4) * (ALPHA - X(4) / ALPHA)


def test_resonance_already_zero():
    S = corpus_surface(6)
    m, out, a, _ = solve_resonance(S, ResonanceEvent(6, "A", 1, 3))
    assert a == 0 and out == S


def test_resonance_kills_zb6():
    S = corpus_surface(6, M(0, 6))
    m, out, a, outcome = solve_resonance(S, ResonanceEvent(6, "A", 1, 3))
    assert out.coeff(0, 6) == 0 and a != 0
    # re-derive from scratch: applying the returned map reproduces the surface
    assert apply_map(m, S) == out
    assert outcome.probes[3][0] == X(1, 1)


# -- driver ------------------------------------------------------------------------


def test_normal_surface_is_fixed():
    S = corpus_surface(8)
    res = normalize(S)
    assert res.map.is_identity() and res.normal_form == S


def test_normalize_corpus(corpus12, corpus12_result):
    res = corpus12_result
    assert verify_normal_form(res.normal_form).overall
    assert apply_map(res.map, corpus12) == res.normal_form
    assert [o.event.degree for o in res.report.events] == [6, 8, 10, 12]


def test_normalize_random_tail_k0_4():
    rng = random.Random(3)
    S = SurfaceJet(validate_model(P3B, 4), 9, M(0, 5) + rand_tail(rng, 4, 9, 5))
    res = normalize(S)
    assert verify_normal_form(res.normal_form).overall
    assert apply_map(res.map, S) == res.normal_form


def test_normalize_rejects_degenerate():
    with pytest.raises(NondegeneracyViolated):
        normalize(SurfaceJet(validate_model(P3, 3), 8, M(2, 3)))


def test_observer_sees_every_commit(corpus12):
    seen = []
    normalize(corpus12, observer=lambda ev, before, after: seen.append((ev.degree, ev.boundary)))
    assert seen == [(6, False), (8, False), (10, False), (12, False), (14, True), (16, True)]


def test_interleaved_families_are_reported():
    from crnormal.errors import LowerDegreeDisturbed
    from crnormal.serialize import read_json, surface_from_dict
    from pathlib import Path
    S = surface_from_dict(read_json(Path(__file__).parent / "golden" / "coupled.surface.json"))
    with pytest.raises(LowerDegreeDisturbed) as info:
        normalize(S)
    assert info.value.details["family"] == "A2" and info.value.details["target"] == 12
