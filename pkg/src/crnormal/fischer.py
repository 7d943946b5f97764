"""Fischer inner product, the adjoint operator P*, and Fischer decompositions.

The apolar product <z^m zb^n, z^p zb^q> = m! n! delta makes
multiplication by P and the differential operator
P* = sum conj(p_{m,n}) d^{m+n}/dz^m dzb^n exact adjoints.  Every
homogeneous Q of degree N >= deg P splits uniquely as Q = S*P + T with
P*(T) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import NotHomogeneous, ZeroModel
from .linalg import SolutionOperator, complex_to_real
from .poly import BiPoly
from .scalar import ExactScalar

__all__ = [
    "FischerSplit",
    "ChainDecomposition",
    "SNResidual",
    "fischer_inner",
    "adjoint_apply",
    "fischer_decompose",
    "iterated_chain",
    "sN_residual",
    "residual_functional",
]


@dataclass(frozen=True)
class FischerSplit:
    quotient: BiPoly
    remainder: BiPoly


@dataclass(frozen=True)
class ChainDecomposition:
    """Iterated quotients: S_j = S_{j+1}*P + T_{j+1}, levels[j] = (S_j, T_j)."""

    model: BiPoly
    levels: tuple

    def __len__(self):
        return len(self.levels)

    def quotients(self):
        return [s for s, _ in self.levels]

    def remainders(self):
        return [t for _, t in self.levels]

    def reconstruct(self) -> BiPoly:
        """Rebuild S_0 from the deepest quotient and the remainders."""
        s = self.levels[-1][0]
        for j in range(len(self.levels) - 1, 0, -1):
            s = s * self.model + self.levels[j][1]
        return s


@dataclass(frozen=True)
class SNResidual:
    """Pure coefficients that must vanish for membership in S_N.

    ``values`` holds [z^{N-j k0}] S_j for j = 0..J followed by
    [zb^{N-j k0}] S_j for j = 1..J, where J = N // k0.
    """

    degree: int
    k0: int
    values: tuple

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def labels(self):
        J = self.degree // self.k0
        return ([("z", j) for j in range(J + 1)] + [("zb", j) for j in range(1, J + 1)])

    def nonzero(self):
        return [(lab, v) for lab, v in zip(self.labels(), self.values) if not v.is_zero()]


def fischer_inner(a: BiPoly, b: BiPoly) -> ExactScalar:
    """sum m! n! a_{m,n} conj(b_{m,n}); conjugate-linear in b."""
    total = ExactScalar(0)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    for key in small:
        if key in big:
            m, n = key
            total = total + a.coeff(m, n) * b.coeff(m, n).conjugate() * (factorial(m) * factorial(n))
    return total


def _check_homogeneous(p: BiPoly, what: str = "model"):
    if not p.is_homogeneous():
        raise NotHomogeneous(f"{what} mixes degrees {sorted({m + n for m, n in p})}")


def adjoint_apply(p: BiPoly, q: BiPoly) -> BiPoly:
    """P*(q) = sum conj(p_{m,n}) d^{m+n} q / dz^m dzb^n."""
    _check_homogeneous(p)
    out = BiPoly()
    for (m, n), c in p.items():
        out = out + q.diff(m, n) * c.conjugate()
    return out


def _monomials(d: int):
    return [(d - n, n) for n in range(d + 1)]


@lru_cache(maxsize=256)
def _decomposer(p: BiPoly, N: int):
    """Solution operator for the Gram system of degree-N decompositions."""
    k0 = p.degree
    basis_s = _monomials(N - k0)
    rows_idx = _monomials(N - k0)
    # column j: P*(e_j * P) expressed on degree N-k0 monomials
    cols = []
    for key in basis_s:
        img = adjoint_apply(p, BiPoly.monomial(*key) * p)
        cols.append([img.coeff(*r) for r in rows_idx])
    A = [[cols[j][i] for j in range(len(basis_s))] for i in range(len(rows_idx))]
    return basis_s, rows_idx, SolutionOperator(complex_to_real(A))


def fischer_decompose(p: BiPoly, q: BiPoly) -> FischerSplit:
    """Unique (S, T) with q = S*p + T and P*(T) = 0."""
    if p.is_zero():
        raise ZeroModel("cannot decompose against the zero polynomial")
    _check_homogeneous(p)
    if q.is_zero():
        return FischerSplit(BiPoly(), BiPoly())
    _check_homogeneous(q, "input")
    k0, N = p.degree, q.degree
    if N < k0:
        return FischerSplit(BiPoly(), q)
    basis_s, rows_idx, op = _decomposer(p, N)
    rhs_poly = adjoint_apply(p, q)
    rhs = [rhs_poly.coeff(*r) for r in rows_idx]
    x = op.apply([v.re for v in rhs] + [v.im for v in rhs])
    n = len(basis_s)
    S = BiPoly({key: ExactScalar(x[i], x[n + i]) for i, key in enumerate(basis_s)})
    return FischerSplit(S, q - S * p)


def iterated_chain(p: BiPoly, q: BiPoly) -> ChainDecomposition:
    """Decompose repeatedly: S_0 = q, (S_{j+1}, T_{j+1}) = decompose(p, S_j)."""
    _check_homogeneous(q, "input")
    k0 = p.degree
    N = q.degree if not q.is_zero() else 0
    levels = [(q, BiPoly())]
    depth = N // k0 if k0 > 0 else 0
    s = q
    for _ in range(depth):
        split = fischer_decompose(p, s)
        levels.append((split.quotient, split.remainder))
        s = split.quotient
    return ChainDecomposition(p, tuple(levels))


def sN_residual(p: BiPoly, q: BiPoly, N: int | None = None) -> SNResidual:
    """Pure-coefficient residual of q against the normalization space S_N.

    ``N`` must be given when q may be zero.
    """
    k0 = p.degree
    if N is None:
        if q.is_zero():
            raise ValueError("degree of a zero polynomial must be supplied")
        N = q.degree
    if not q.is_zero() and (not q.is_homogeneous() or q.degree != N):
        raise NotHomogeneous(f"expected homogeneous degree {N}")
    J = N // k0
    if q.is_zero():
        return SNResidual(N, k0, tuple(ExactScalar(0) for _ in range(2 * J + 1)))
    chain = iterated_chain(p, q)
    quots = chain.quotients()
    zs = [quots[j].coeff(N - j * k0, 0) for j in range(J + 1)]
    zbs = [quots[j].coeff(0, N - j * k0) for j in range(1, J + 1)]
    return SNResidual(N, k0, tuple(zs + zbs))


@lru_cache(maxsize=256)
def residual_functional(p: BiPoly, N: int):
    """Matrix of the complex-linear map (a_{N,0}, ..., a_{0,N}) -> residual.

    Column n corresponds to the monomial z^{N-n} zb^n.
    """
    cols = [sN_residual(p, BiPoly.monomial(N - n, n)).values for n in range(N + 1)]
    return tuple(tuple(cols[n][i] for n in range(N + 1)) for i in range(len(cols[0])))


def apply_functional(F, q: BiPoly, N: int):
    out = []
    coeffs = [q.coeff(N - n, n) for n in range(N + 1)]
    for row in F:
        acc = ExactScalar(0)
        for f, c in zip(row, coeffs):
            if f and c:
                acc = acc + f * c
        out.append(acc)
    return out
