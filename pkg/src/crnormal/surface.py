"""Surface jets w = P(z, zb) + tail, their invariants, and map application."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import DegreeViolation, InadmissibleMonomial, ModelInvalid
from .fischer import adjoint_apply, fischer_decompose
from .poly import BiPoly, Jet, WJet, compose_graph, compose_jet, invert_planar_jet
from .scalar import ExactScalar, as_scalar

__all__ = [
    "ModelPolynomial",
    "SurfaceJet",
    "SurfaceInvariants",
    "TangentIdentityMap",
    "LinearConstraints",
    "validate_model",
    "surface_invariants",
    "apply_map",
    "compose_maps",
    "linear_automorphism_constraints",
    "INFINITE_S",
]

INFINITE_S = None  # marker for "no pure zb^l term within the truncation"


@dataclass(frozen=True)
class ModelPolynomial:
    k0: int
    poly: BiPoly

    def __post_init__(self):
        reasons = model_violations(self.poly, self.k0)
        if reasons:
            raise ModelInvalid(reasons)


def model_violations(poly: BiPoly, k0: int) -> list[str]:
    reasons = []
    if k0 < 3:
        reasons.append("k0_below_3")
    if poly.is_zero() or not poly.is_homogeneous() or poly.degree != k0:
        reasons.append("not_homogeneous")
    if not poly.is_real_valued():
        reasons.append("not_real_valued")
    if poly.coeff(k0, 0) or poly.coeff(0, k0):
        reasons.append("pure_term_present")
    if poly.coeff(1, k0 - 1) != 1:
        reasons.append("p_1_k0m1_not_one")
    return reasons


def validate_model(poly: BiPoly, k0: int) -> ModelPolynomial:
    """Check the model clauses; raise ModelInvalid listing every failure."""
    return ModelPolynomial(k0, poly)


class SurfaceJet:
    """w = P(z, zb) + sum a_{m,n} z^m zb^n, k0+1 <= m+n <= order."""

    __slots__ = ("model", "order", "graph")

    def __init__(self, model: ModelPolynomial, order: int, tail: BiPoly | None = None):
        if order < model.k0 + 1:
            raise ValueError(f"order {order} must be at least k0+1 = {model.k0 + 1}")
        tail = tail if tail is not None else BiPoly()
        bad = [k for k in tail if not (model.k0 + 1 <= k[0] + k[1] <= order)]
        if bad:
            raise DegreeViolation(f"tail terms outside degrees {model.k0 + 1}..{order}: {sorted(bad)}")
        self.model = model
        self.order = order
        self.graph = Jet(model.poly + tail, order)

    @classmethod
    def from_graph(cls, model: ModelPolynomial, graph: Jet) -> SurfaceJet:
        k0 = model.k0
        if graph.valuation() < k0:
            raise DegreeViolation("graph has terms below degree k0")
        if graph.homogeneous_part(k0) != model.poly:
            raise DegreeViolation("degree-k0 part of graph differs from the model")
        obj = cls.__new__(cls)
        obj.model = model
        obj.order = graph.order
        obj.graph = graph
        return obj

    @property
    def k0(self) -> int:
        return self.model.k0

    @property
    def tail(self) -> BiPoly:
        full = self.graph.poly
        return BiPoly({k: c for k, c in full.terms.items() if k[0] + k[1] > self.k0})

    def coeff(self, m: int, n: int) -> ExactScalar:
        return self.graph.coeff(m, n)

    def degree_part(self, d: int) -> BiPoly:
        return self.graph.homogeneous_part(d)

    def truncate(self, order: int) -> SurfaceJet:
        return SurfaceJet.from_graph(self.model, self.graph.truncate(order))

    def __eq__(self, other):
        if not isinstance(other, SurfaceJet):
            return NotImplemented
        return self.model == other.model and self.graph == other.graph

    def __hash__(self):
        return hash((self.model, self.graph))

    def __repr__(self):
        return f"SurfaceJet(k0={self.k0}, order={self.order}, w={self.graph.poly})"


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class SurfaceInvariants:
    s: int | None
    alpha: ExactScalar
    alpha_remainder: BiPoly
    nondegenerate: bool
    reasons: tuple = ()

    @property
    def s_is_infinite(self) -> bool:
        return self.s is INFINITE_S


def moser_s(surface: SurfaceJet) -> int | None:
    for l in range(surface.k0 + 1, surface.order + 1):
        if surface.coeff(0, l):
            return l
    return INFINITE_S


def alpha_decomposition(P: BiPoly):
    """zP_z = alpha*P + R with P*(R) = 0; alpha is the (constant) quotient."""
    zPz = BiPoly.z() * P.diff(1, 0)
    split = fischer_decompose(P, zPz)
    return split.quotient.coeff(0, 0), split.remainder


def surface_invariants(surface: SurfaceJet) -> SurfaceInvariants:
    s = moser_s(surface)
    alpha, R = alpha_decomposition(surface.model.poly)
    reasons = []
    if s is INFINITE_S:
        reasons.append("NO_S_WITHIN_TRUNCATION")
    if alpha == 0:
        reasons.append("ALPHA_ZERO")
    if alpha * alpha == 0:
        reasons.append("ALPHA_SQUARED_ZERO")
    if s is not INFINITE_S:
        if alpha == s:
            reasons.append("ALPHA_EQUALS_S")
        if alpha * alpha == s:
            reasons.append("ALPHA_SQUARED_EQUALS_S")
    return SurfaceInvariants(s, alpha, R, not reasons, tuple(reasons))


# ---------------------------------------------------------------------------
# maps


def f_admissible(k: int, l: int) -> bool:
    # the z-component's linear part z is implicit; w itself is allowed
    return (k, l) not in ((0, 0), (1, 0))


def g_admissible(k: int, l: int, k0: int) -> bool:
    # lower weights would disturb the model part
    return k + k0 * l >= k0 + 1


class TangentIdentityMap:
    """(z, w) -> (z + f(z, w), w + g(z, w)) with identity linear part."""

    __slots__ = ("k0", "f", "g")

    def __init__(self, k0: int, f: WJet | dict | None = None, g: WJet | dict | None = None):
        f = f if isinstance(f, WJet) else WJet(f or {})
        g = g if isinstance(g, WJet) else WJet(g or {})
        for (k, l) in f.terms:
            if not f_admissible(k, l):
                raise InadmissibleMonomial(f"f term z^{k} w^{l} is not allowed")
        for (k, l) in g.terms:
            if not g_admissible(k, l, k0):
                raise InadmissibleMonomial(f"g term z^{k} w^{l} is not allowed for k0={k0}")
        self.k0 = k0
        self.f = f
        self.g = g

    @classmethod
    def identity(cls, k0: int) -> TangentIdentityMap:
        return cls(k0)

    def is_identity(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()

    def truncated(self, order: int) -> TangentIdentityMap:
        """Drop terms that cannot affect a surface jet of the given order."""
        k0 = self.k0
        return TangentIdentityMap(k0, self.f.truncate_weight(order - k0 + 1, k0),
                                  self.g.truncate_weight(order, k0))

    def __eq__(self, other):
        if not isinstance(other, TangentIdentityMap):
            return NotImplemented
        return self.k0 == other.k0 and self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.k0, self.f, self.g))

    def __repr__(self):
        return f"TangentIdentityMap(k0={self.k0}, f={self.f}, g={self.g})"


def apply_map(m: TangentIdentityMap, surface: SurfaceJet) -> SurfaceJet:
    """Transform the surface by m and re-express the graph in the new z."""
    if m.k0 != surface.k0:
        raise ValueError("map and surface have different k0")
    if m.is_identity():
        return surface
    k0, N = surface.k0, surface.order
    Q = surface.graph
    m = m.truncated(N)
    W = Q + compose_graph(m.g, Q, k0) if not m.g.is_zero() else Q
    if m.f.is_zero():
        return SurfaceJet.from_graph(surface.model, W)
    phi = Jet.z(N) + compose_graph(m.f, Q, k0)
    psi = invert_planar_jet(phi, N)
    Wn = compose_jet(W.poly, psi)
    return SurfaceJet.from_graph(surface.model, Wn)


def _wmul(a: dict, b: dict, k0: int, bound):
    out = {}
    for (k1, l1), c1 in a.items():
        w1 = k1 + k0 * l1
        for (k2, l2), c2 in b.items():
            if bound is not None and w1 + k2 + k0 * l2 > bound:
                continue
            key = (k1 + k2, l1 + l2)
            out[key] = out.get(key, ExactScalar(0)) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _wcompose(h: WJet, zsub: dict, wsub: dict, k0: int, bound) -> dict:
    """h(zsub, wsub) truncated by weight; zsub, wsub are dicts over (k, l)."""
    if h.is_zero():
        return {}
    max_k = max(k for k, _ in h.terms)
    max_l = max(l for _, l in h.terms)
    zp = [{(0, 0): ExactScalar(1)}]
    for _ in range(max_k):
        zp.append(_wmul(zp[-1], zsub, k0, bound))
    wp = [{(0, 0): ExactScalar(1)}]
    for _ in range(max_l):
        wp.append(_wmul(wp[-1], wsub, k0, bound))
    out = {}
    for (k, l), c in h.terms.items():
        if bound is not None and k + k0 * l > bound:
            continue
        for key, v in _wmul(zp[k], wp[l], k0, bound).items():
            out[key] = out.get(key, ExactScalar(0)) + c * v
    return {k: c for k, c in out.items() if c}


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, ExactScalar(0)) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def compose_maps(first: TangentIdentityMap, second: TangentIdentityMap,
                 order: int | None = None) -> TangentIdentityMap:
    """The map 'first, then second'.

    With ``order`` given, terms irrelevant for surface jets of that order
    are dropped (f above weight order-k0+1, g above weight order).
    """
    if first.k0 != second.k0:
        raise ValueError("maps have different k0")
    k0 = first.k0
    if first.is_identity():
        return second.truncated(order) if order is not None else second
    if second.is_identity():
        return first.truncated(order) if order is not None else first
    fb = order - k0 + 1 if order is not None else None
    gb = order
    zsub = _add({(1, 0): ExactScalar(1)}, first.f.terms)
    wsub = _add({(0, 1): ExactScalar(1)}, first.g.terms)
    f = _add(first.f.terms, _wcompose(second.f, zsub, wsub, k0, fb))
    g = _add(first.g.terms, _wcompose(second.g, zsub, wsub, k0, gb))
    if fb is not None:
        f = {k: c for k, c in f.items() if k[0] + k0 * k[1] <= fb}
        g = {k: c for k, c in g.items() if k[0] + k0 * k[1] <= gb}
    return TangentIdentityMap(k0, WJet(f, fb), WJet(g, gb))


# ---------------------------------------------------------------------------
# linear automorphisms of the model


@dataclass(frozen=True)
class LinearConstraints:
    """Constraints on the linear part (lambda = f_{1,0}, g_{0,1}) preserving P.

    P(lambda z, conj(lambda) zb) = g01 * P forces lambda = rho * omega with
    omega a root of unity of order dividing ``phase_order`` and
    g01 = rho^k0 * omega^(m0 - n0) required real, i.e. +-rho^k0.
    """

    k0: int
    differences: tuple
    phase_order: int
    phases: tuple  # admissible j: omega = exp(2 pi i j / phase_order)
    signs: tuple   # omega^(m0-n0) = +-1 for each admissible phase
    reference_exponent: int  # m0 - n0 for the reference monomial (1, k0-1)
    model_poly: BiPoly = field(default_factory=BiPoly, repr=False, compare=False)

    def phase_value(self, j: int):
        """omega as an ExactScalar when it is a Gaussian rational, else None."""
        d = self.phase_order
        if (4 * j) % d:
            return None
        return ExactScalar(0, 1) ** ((4 * j) // d)

    def admissible(self, lam) -> tuple[bool, ExactScalar | None]:
        """Exact check for a Gaussian-rational lambda; returns (ok, g01)."""
        return _linear_check(self.model_poly, as_scalar(lam))

    def describe(self) -> dict:
        return {
            "differences": list(self.differences),
            "phase_order": self.phase_order,
            "admissible_phases": [f"exp(2*pi*i*{j}/{self.phase_order})" for j in self.phases],
            "g01": [f"{'+' if s > 0 else '-'}|lambda|^{self.k0}" for s in self.signs],
            "reading": "P(lambda z, conj(lambda) zb) = g01 P",
        }


def _linear_check(P: BiPoly, lam: ExactScalar):
    if not lam:
        return False, None
    lb = lam.conjugate()
    scaled = BiPoly({(m, n): c * lam ** m * lb ** n for (m, n), c in P.items()})
    ref = next(iter(P.items()))
    key, c = ref
    g = scaled.coeff(*key) / c
    if not g.is_real() or scaled != P * g:
        return False, None
    return True, g


def linear_automorphism_constraints(model: ModelPolynomial) -> LinearConstraints:
    P = model.poly
    supp = sorted(P.support())
    diffs = sorted({(m - n) - (mm - nn) for m, n in supp for mm, nn in supp})
    d = reduce(gcd, (abs(x) for x in diffs), 0)
    ref = 1 - (model.k0 - 1)
    phases, signs = [], []
    # a real P with p_{1,k0-1} != 0 also contains (k0-1, 1), so d >= 1
    for j in range(d):
        # omega^ref real  <=>  2*j*ref/d is an integer
        if (2 * j * ref) % d == 0:
            phases.append(j)
            signs.append(1 if ((j * ref) % d == 0) else -1)
    return LinearConstraints(model.k0, tuple(diffs), d, tuple(phases), tuple(signs), ref, P)
