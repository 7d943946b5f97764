"""Shared fixtures, hypothesis strategies and independent oracles.

The oracles below work on plain ``{(m, n): complex Fraction pair}`` dicts
and never call into crnormal, so they can check the library's results.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from crnormal import BiPoly, ExactScalar, SurfaceJet, TangentIdentityMap, validate_model
from crnormal.poly import WJet

settings.register_profile(
    "crnormal", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("crnormal")

X = ExactScalar
M = BiPoly.monomial

P3 = M(2, 1) + M(1, 2)
P3B = M(3, 1) + M(1, 3)      # k0 = 4


def corpus_surface(order: int = 12, extra: BiPoly | None = None) -> SurfaceJet:
    """w = z^2 zb + z zb^2 + zb^4 (+ extra), the k0 = 3, s = 4 instance."""
    tail = M(0, 4) + (extra or BiPoly())
    return SurfaceJet(validate_model(P3, 3), order, tail)


# ---------------------------------------------------------------------------
# random data


def rand_scalar(rng: random.Random, lo: int = -9, hi: int = 9) -> ExactScalar:
    return X(rng.randint(lo, hi), rng.randint(lo, hi))


def rand_homogeneous(rng: random.Random, degree: int, density: float = 0.7) -> BiPoly:
    terms = {}
    for n in range(degree + 1):
        if rng.random() < density:
            terms[(degree - n, n)] = rand_scalar(rng)
    return BiPoly(terms)


def rand_tail(rng: random.Random, k0: int, order: int, nterms: int) -> BiPoly:
    terms = {}
    for _ in range(nterms):
        d = rng.randint(k0 + 1, order)
        n = rng.randint(0, d)
        terms[(d - n, n)] = X(Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                              Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    return BiPoly(terms)


def rand_map(rng: random.Random, k0: int, nterms: int, max_weight: int = 10) -> TangentIdentityMap:
    """Random tangent-to-identity map; every term has k + l >= 2."""
    f, g = {}, {}
    while len(f) + len(g) < nterms:
        if rng.random() < 0.5:
            k, l = rng.randint(0, max_weight), rng.randint(0, 2)
            if k + l >= 2 and k + k0 * l <= max_weight:
                f[(k, l)] = rand_scalar(rng, -3, 3) or X(1)
        else:
            k, l = rng.randint(0, max_weight), rng.randint(0, 3)
            if k + l >= 2 and k + k0 * l >= k0 + 1 and k + k0 * l <= max_weight + k0:
                g[(k, l)] = rand_scalar(rng, -3, 3) or X(1)
    return TangentIdentityMap(k0, WJet(f), WJet(g))


# ---------------------------------------------------------------------------
# hypothesis strategies

small_rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6)
gaussian = st.builds(ExactScalar, small_rationals, small_rationals)


@st.composite
def homogeneous_polys(draw, min_degree=0, max_degree=8):
    d = draw(st.integers(min_degree, max_degree))
    coeffs = draw(st.lists(gaussian, min_size=d + 1, max_size=d + 1))
    return BiPoly({(d - n, n): c for n, c in enumerate(coeffs)})


@st.composite
def polys(draw, max_degree=6, max_terms=8):
    keys = draw(st.lists(
        st.tuples(st.integers(0, max_degree), st.integers(0, max_degree))
        .filter(lambda k: k[0] + k[1] <= max_degree),
        max_size=max_terms, unique=True))
    return BiPoly({k: draw(gaussian) for k in keys})


# ---------------------------------------------------------------------------
# independent oracles on plain dicts


def as_dict(p: BiPoly) -> dict:
    return {k: (c.re, c.im) for k, c in p.terms.items()}


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _clean(d):
    return {k: v for k, v in d.items() if v[0] or v[1]}


def oracle_mul(a: dict, b: dict, order: int | None = None) -> dict:
    out = {}
    for (m1, n1), c1 in a.items():
        for (m2, n2), c2 in b.items():
            key = (m1 + m2, n1 + n2)
            if order is not None and key[0] + key[1] > order:
                continue
            out[key] = _cadd(out.get(key, (0, 0)), _cmul(c1, c2))
    return _clean(out)


def oracle_inner(a: dict, b: dict) -> tuple:
    re = im = Fraction(0)
    for k, (ar, ai) in a.items():
        if k in b:
            br, bi = b[k]
            w = factorial(k[0]) * factorial(k[1])
            re += w * (ar * br + ai * bi)
            im += w * (ai * br - ar * bi)
    return (re, im)


def oracle_adjoint(p: dict, q: dict) -> dict:
    """sum conj(p_{a,b}) d^a/dz^a d^b/dzb^b q, by falling factorials."""
    out = {}
    for (a, b), (pr, pi) in p.items():
        pc = (pr, -pi)
        for (m, n), c in q.items():
            if m < a or n < b:
                continue
            w = factorial(m) // factorial(m - a) * factorial(n) // factorial(n - b)
            key = (m - a, n - b)
            out[key] = _cadd(out.get(key, (0, 0)), _cmul(pc, (c[0] * w, c[1] * w)))
    return _clean(out)


@pytest.fixture(scope="session")
def corpus12():
    return corpus_surface(12)


@pytest.fixture(scope="session")
def corpus12_result(corpus12):
    from crnormal import normalize
    return normalize(corpus12)


# ---------------------------------------------------------------------------
# acceptance summary

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
