"""Independent verification, pseudo-weights and equivalence checking.

The residual check here deliberately avoids the cached operators used by
the normalizer: quotients are recomputed from Gram systems of the
Fischer inner product.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NondegeneracyViolated, OrderMismatch, ZeroPolynomial
from .fischer import SNResidual, fischer_inner
from .linalg import complex_to_real, solve
from .normalizer import normalize
from .poly import BiPoly
from .scalar import ExactScalar
from .surface import (
    SurfaceJet,
    linear_automorphism_constraints,
    moser_s,
    surface_invariants,
)

__all__ = [
    "DegreeCheck",
    "TargetCheck",
    "VerificationReport",
    "verify_normal_form",
    "gram_quotient",
    "PseudoWeightTable",
    "pseudo_weight",
    "pseudo_weight_clauses",
    "min_pseudo_weight",
    "EquivalenceVerdict",
    "equiv_check",
    "transform_linear",
    "linear_summary",
    "derivative_weight_diagnostic",
]

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# normal-form verification


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    residual: SNResidual
    passed: bool


@dataclass(frozen=True)
class TargetCheck:
    degree: int
    coefficient: ExactScalar
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    per_degree: tuple
    resonance_targets: tuple
    resonance_applicable: bool
    s: int | None
    overall: bool


def gram_quotient(P: BiPoly, q: BiPoly, N: int) -> BiPoly:
    """S with q - S*P orthogonal to every multiple of P (degree N input)."""
    k0 = P.degree
    if N < k0 or q.is_zero():
        return BiPoly()
    basis = [BiPoly.monomial(N - k0 - n, n) * P for n in range(N - k0 + 1)]
    G = [[fischer_inner(bj, bi) for bj in basis] for bi in basis]
    rhs = [fischer_inner(q, bi) for bi in basis]
    A, b = complex_to_real(G, rhs)
    x = solve(A, b)
    n = len(basis)
    return BiPoly({(N - k0 - j, j): ExactScalar(x[j], x[n + j]) for j in range(n)})


def _pure_residual(P: BiPoly, q: BiPoly, N: int) -> SNResidual:
    k0 = P.degree
    J = N // k0
    quots = [q]
    for j in range(1, J + 1):
        quots.append(gram_quotient(P, quots[-1], N - (j - 1) * k0))
    zs = [quots[j].coeff(N - j * k0, 0) for j in range(J + 1)]
    zbs = [quots[j].coeff(0, N - j * k0) for j in range(1, J + 1)]
    return SNResidual(N, k0, tuple(zs + zbs))


def _resonant_degrees(k0: int, s: int, order: int) -> list[int]:
    out = [k for k in range(s + k0 - 1, order + 1) if (k - k0 + 1) % s == 0]
    out += [k for k in range(2 * s, order + 1) if k % s == 0]
    return sorted(out)


def verify_normal_form(surface: SurfaceJet) -> VerificationReport:
    P = surface.model.poly
    k0, N = surface.k0, surface.order
    per = []
    for T in range(k0 + 1, N + 1):
        r = _pure_residual(P, surface.degree_part(T), T)
        per.append(DegreeCheck(T, r, r.is_zero()))
    s = moser_s(surface)
    targets = []
    if s is not None:
        for k in _resonant_degrees(k0, s, N):
            c = surface.coeff(0, k)
            targets.append(TargetCheck(k, c, c.is_zero()))
    overall = all(d.passed for d in per) and all(t.passed for t in targets)
    return VerificationReport(tuple(per), tuple(targets), s is not None, s, overall)


# ---------------------------------------------------------------------------
# pseudo-weights


@dataclass
class PseudoWeightTable:
    k0: int
    s: int
    memo: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.k0 < 3 or self.s <= self.k0:
            raise ValueError("pseudo-weights need k0 >= 3 and s > k0")

    @property
    def zbar_weight(self) -> Fraction:
        return Fraction(self.s - 1, self.k0 - 1)


def pseudo_weight_clauses(table: PseudoWeightTable, gamma: int, beta: int) -> dict:
    """Value of every clause that applies to z^gamma zb^beta."""
    if gamma < 0 or beta < 0 or gamma + beta < 1:
        raise ValueError("pseudo-weight needs gamma + beta >= 1")
    k0, s = table.k0, table.s
    d = gamma + beta
    out = {}
    if gamma == 0 or beta == 0 or beta >= k0 - 1:
        out["additive"] = gamma + beta * table.zbar_weight
    if gamma and beta:
        if 2 <= d < k0 - 1:
            out["low_mixed"] = Fraction(k0 - 1)
        if d == k0 - 1:
            out["block"] = Fraction(s - 1)
        if d > k0 and 1 <= beta <= k0 - 2:
            out["shifted"] = Fraction(gamma + s - k0)
        if d >= k0:
            rec = []
            for g1 in range(1, k0 - 1):
                b1 = k0 - 1 - g1
                if g1 <= gamma and b1 <= beta:
                    rec.append(s - 1 + pseudo_weight(table, gamma - g1, beta - b1))
            out["recursive"] = min(rec)
    return out


def pseudo_weight(table: PseudoWeightTable, gamma: int, beta: int) -> Fraction:
    key = (gamma, beta)
    hit = table.memo.get(key)
    if hit is None:
        hit = min(pseudo_weight_clauses(table, gamma, beta).values())
        table.memo[key] = hit
    return hit


def min_pseudo_weight(table: PseudoWeightTable, poly: BiPoly) -> Fraction:
    if poly.is_zero():
        raise ZeroPolynomial("pseudo-weight of the zero polynomial")
    return min(pseudo_weight(table, m, n) for m, n in poly.support())


# ---------------------------------------------------------------------------
# equivalence


@dataclass(frozen=True)
class EquivalenceVerdict:
    verdict: str            # "equivalent" | "inequivalent" | "undecided"
    mode: str
    certificate: dict

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"


def _nth_root(x: Fraction, n: int) -> Fraction | None:
    """Positive rational n-th root of a positive rational, if it exists."""
    def iroot(v):
        lo, hi = 0, 1 << (v.bit_length() // n + 1)
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid ** n <= v:
                lo = mid
            else:
                hi = mid
        return lo if lo ** n == v else None
    p, q = iroot(x.numerator), iroot(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def transform_linear(surface: SurfaceJet, model, lam: ExactScalar, mu: Fraction) -> SurfaceJet:
    """Rewrite the surface in coordinates z' = lam z, w' = mu w."""
    lb = lam.conjugate()
    inv, invb = ExactScalar(1) / lam, ExactScalar(1) / lb
    terms = {}
    for (m, n), c in surface.graph.poly.items():
        terms[(m, n)] = c * mu * inv ** m * invb ** n
    new = BiPoly(terms)
    if new.homogeneous_part(surface.k0) != model.poly:
        raise ValueError("linear change does not carry the model onto the target model")
    return SurfaceJet(model, surface.order, new - model.poly)


def _phase(j: int, order: int):
    if (4 * j) % order:
        return None
    return ExactScalar(0, 1) ** ((4 * j) // order)


def _screen(a: SurfaceJet, b: SurfaceJet) -> EquivalenceVerdict | None:
    if a.k0 != b.k0:
        return EquivalenceVerdict("inequivalent", "", {"reason": "k0 differs", "k0": [a.k0, b.k0]})
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    ia, ib = surface_invariants(a), surface_invariants(b)
    for inv in (ia, ib):
        if not inv.nondegenerate:
            raise NondegeneracyViolated(inv.reasons)
    if ia.s != ib.s:
        return EquivalenceVerdict("inequivalent", "", {"reason": "s differs", "s": [ia.s, ib.s]})
    if ia.alpha != ib.alpha:
        return EquivalenceVerdict("inequivalent", "",
                                  {"reason": "alpha differs", "alpha": [str(ia.alpha), str(ib.alpha)]})
    return None


def _first_difference(x: SurfaceJet, y: SurfaceJet):
    for d in range(x.k0, x.order + 1):
        for n in range(d + 1):
            if x.coeff(d - n, n) != y.coeff(d - n, n):
                return [d - n, n]
    return None


def equiv_check(a: SurfaceJet, b: SurfaceJet, mode: str = "tangent") -> EquivalenceVerdict:
    if mode not in ("tangent", "linear"):
        raise ValueError(f"unknown mode {mode!r}")
    early = _screen(a, b)
    if early is not None:
        return EquivalenceVerdict(early.verdict, mode, early.certificate)
    na = normalize(a).normal_form
    if a.model == b.model:
        nb = normalize(b).normal_form
        if na == nb:
            return EquivalenceVerdict("equivalent", mode, {"lambda": "1", "mu": "1"})
        if mode == "tangent":
            return EquivalenceVerdict("inequivalent", mode,
                                      {"reason": "normal forms differ",
                                       "first_difference": _first_difference(na, nb)})
    elif mode == "tangent":
        return EquivalenceVerdict("inequivalent", mode, {"reason": "models differ"})
    else:
        nb = normalize(b).normal_form
    return _linear_search(na, nb, mode)


def _linear_search(na: SurfaceJet, nb: SurfaceJet, mode: str) -> EquivalenceVerdict:
    k0, s = na.k0, surface_invariants(na).s
    # |a_{0,s}| pins the modulus: rho^(2(k0-s)) = |a|^2/|b|^2
    ratio = na.coeff(0, s).norm() / nb.coeff(0, s).norm()
    rho = _nth_root(1 / ratio, 2 * (s - k0))
    undecided, tried = [], []
    if rho is None:
        return EquivalenceVerdict("undecided", mode, {
            "reason": "irrational scaling",
            "condition": f"rho^{2 * (k0 - s)} = {ratio}",
        })
    # mu = rho^k0 * omega^(2-k0) must be real: omega^(2(k0-2)) = 1
    order = 2 * (k0 - 2)
    for j in range(order):
        omega = _phase(j, order)
        label = f"exp(2*pi*i*{j}/{order})"
        if omega is None:
            undecided.append(label)
            continue
        lam = omega * rho
        twist = omega ** (k0 - 2)          # omega^(2-k0) = conj(omega)^(k0-2)
        twist = twist.conjugate()
        if not twist.is_real():
            continue
        mu = rho ** k0 * twist.re
        try:
            moved = transform_linear(nb, na.model, lam, mu)
        except ValueError:
            tried.append({"phase": label, "result": "model mismatch"})
            continue
        if normalize(moved).normal_form == na:
            return EquivalenceVerdict("equivalent", mode, {
                "lambda": str(lam), "mu": str(mu), "phase": label, "rho": str(rho)})
        tried.append({"phase": label, "result": "normal forms differ"})
    if undecided:
        return EquivalenceVerdict("undecided", mode, {
            "reason": "phases outside the Gaussian rationals",
            "phases": undecided, "rho": str(rho), "checked": tried})
    return EquivalenceVerdict("inequivalent", mode, {"rho": str(rho), "checked": tried})


def linear_summary(surface: SurfaceJet) -> dict:
    """Linear automorphisms of the model, for reports."""
    return linear_automorphism_constraints(surface.model).describe()


def derivative_weight_diagnostic(table: PseudoWeightTable, P: BiPoly) -> dict:
    """Compare the computed weight of P_z with the reference value k0-1."""
    got = min_pseudo_weight(table, P.diff(1, 0))
    expected = Fraction(table.k0 - 1)
    if got != expected:
        log.info("wt(P_z) = %s differs from k0-1 = %s", got, expected)
    return {"computed": got, "reference": expected, "agrees": got == expected}
