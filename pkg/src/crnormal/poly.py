"""Exact polynomials and truncated jets in (z, zbar), plus z^k w^l series.

``BiPoly`` is a sparse, untruncated polynomial used for homogeneous
pieces (models, Fischer decompositions).  ``Jet`` is a truncated
polynomial stored densely over a common denominator so that the
multiplication kernel works on plain integers; it is the workhorse of
composition and inversion.  ``WJet`` holds series in z and w graded by
the normal weight k + k0*l.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from . import kernels
from .errors import DegreeViolation, NotTangentToIdentity
from .scalar import ExactScalar, as_scalar

__all__ = [
    "BiPoly",
    "Jet",
    "WJet",
    "poly_mul",
    "poly_conjugate",
    "compose_graph",
    "compose_jet",
    "normal_weight_components",
    "invert_planar_jet",
]

ZERO = ExactScalar(0)


def _scalar_parts(c: ExactScalar):
    """Write c as (p + i*q)/d with integers p, q and d > 0."""
    d = lcm(c.re.denominator, c.im.denominator)
    return c.re.numerator * (d // c.re.denominator), c.im.numerator * (d // c.im.denominator), d


def _fmt_monomial(m: int, n: int) -> str:
    parts = []
    if m:
        parts.append("z" if m == 1 else f"z^{m}")
    if n:
        parts.append("zb" if n == 1 else f"zb^{n}")
    return "*".join(parts)


def _fmt_terms(items, monomial) -> str:
    if not items:
        return "0"
    out = []
    for key, c in items:
        mono = monomial(*key)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        elif c == -1:
            out.append("-" + mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# BiPoly


class BiPoly:
    """Finitely supported map (m, n) -> ExactScalar for sum c_{m,n} z^m zbar^n."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        if terms:
            for (m, n), c in terms.items():
                if m < 0 or n < 0:
                    raise ValueError(f"negative exponent in {(m, n)}")
                c = as_scalar(c)
                if c:
                    clean[(int(m), int(n))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, clean: dict) -> BiPoly:
        obj = cls.__new__(cls)
        obj._terms = clean
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, m: int, n: int, c=1) -> BiPoly:
        return cls({(m, n): c})

    @classmethod
    def z(cls) -> BiPoly:
        return cls.monomial(1, 0)

    @classmethod
    def zbar(cls) -> BiPoly:
        return cls.monomial(0, 1)

    # -- access -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms sorted by (m+n, m)."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]))

    def coeff(self, m: int, n: int) -> ExactScalar:
        return self._terms.get((m, n), ZERO)

    def __getitem__(self, key):
        return self._terms.get(tuple(key), ZERO)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def support(self):
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> float | int:
        if not self._terms:
            return float("-inf")
        return max(m + n for m, n in self._terms)

    def min_degree(self) -> float | int:
        if not self._terms:
            return float("inf")
        return min(m + n for m, n in self._terms)

    def is_homogeneous(self) -> bool:
        return len({m + n for m, n in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> BiPoly:
        return BiPoly._wrap({k: c for k, c in self._terms.items() if k[0] + k[1] == d})

    def truncate(self, order: int) -> BiPoly:
        return BiPoly._wrap({k: c for k, c in self._terms.items() if k[0] + k[1] <= order})

    def is_real_valued(self) -> bool:
        """True when c_{n,m} = conj(c_{m,n}) for every term."""
        return self == self.conjugate()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly({(0, 0): other})
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly({(0, 0): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = as_scalar(other)
            if not c:
                return BiPoly()
            return BiPoly._wrap({k: v * c for k, v in self._terms.items()})
        out = {}
        for (m1, n1), c1 in self._terms.items():
            for (m2, n2), c2 in other._terms.items():
                k = (m1 + m2, n1 + n2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return BiPoly._wrap({k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = BiPoly({(0, 0): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> BiPoly:
        """Formal conjugation: swap z and zbar and conjugate coefficients."""
        return BiPoly._wrap({(n, m): c.conjugate() for (m, n), c in self._terms.items()})

    def diff(self, dz: int = 0, dzbar: int = 0) -> BiPoly:
        """Partial derivative d^{dz}/dz^{dz} d^{dzbar}/dzbar^{dzbar}."""
        out = {}
        for (m, n), c in self._terms.items():
            if m < dz or n < dzbar:
                continue
            f = _falling(m, dz) * _falling(n, dzbar)
            out[(m - dz, n - dzbar)] = c * f
        return BiPoly._wrap(out)

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, Jet):
            return NotImplemented
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(0, 0): c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        return _fmt_terms(self.items(), _fmt_monomial)


def _falling(m: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= m - j
    return out


def poly_conjugate(a: BiPoly) -> BiPoly:
    return a.conjugate()


# ---------------------------------------------------------------------------
# Jet


class Jet:
    """Polynomial in (z, zbar) truncated above total degree ``order``.

    Coefficients are held as integer numerator arrays ``re``, ``im`` over
    the positive denominator ``den``, reduced so that the gcd of all
    entries and ``den`` is 1.  Treat instances as immutable.
    """

    __slots__ = ("order", "den", "re", "im")

    def __init__(self, poly: BiPoly | Mapping | None = None, order: int = 0):
        if order < 0:
            raise ValueError("order must be nonnegative")
        if poly is None:
            poly = BiPoly()
        elif not isinstance(poly, BiPoly):
            poly = BiPoly(poly)
        size = kernels.tri_size(order)
        den = 1
        for c in poly._terms.values():
            den = lcm(den, c.re.denominator, c.im.denominator)
        re = [0] * size
        im = [0] * size
        for (m, n), c in poly._terms.items():
            d = m + n
            if d > order:
                continue
            k = d * (d + 1) // 2 + n
            re[k] = c.re.numerator * (den // c.re.denominator)
            im[k] = c.im.numerator * (den // c.im.denominator)
        self._set(order, den, re, im)

    def _set(self, order, den, re, im):
        self.order = order
        g = gcd(den, *re, *im)
        if g > 1:
            den //= g
            re = [v // g for v in re]
            im = [v // g for v in im]
        if not any(re) and not any(im):
            den = 1
        self.den = den
        self.re = re
        self.im = im

    @classmethod
    def _raw(cls, order, den, re, im) -> Jet:
        obj = cls.__new__(cls)
        obj._set(order, den, re, im)
        return obj

    @classmethod
    def zero(cls, order: int) -> Jet:
        size = kernels.tri_size(order)
        return cls._raw(order, 1, [0] * size, [0] * size)

    @classmethod
    def monomial(cls, m: int, n: int, order: int, c=1) -> Jet:
        return cls(BiPoly({(m, n): c}), order)

    @classmethod
    def z(cls, order: int) -> Jet:
        return cls.monomial(1, 0, order)

    # -- access -----------------------------------------------------------

    @property
    def poly(self) -> BiPoly:
        deg, nbar, _ = kernels.layout(self.order)
        out = {}
        for k, (r, i) in enumerate(zip(self.re, self.im)):
            if r or i:
                n = nbar[k]
                out[(deg[k] - n, n)] = ExactScalar(Fraction(r, self.den), Fraction(i, self.den))
        return BiPoly._wrap(out)

    def coeff(self, m: int, n: int) -> ExactScalar:
        d = m + n
        if d > self.order:
            return ZERO
        k = d * (d + 1) // 2 + n
        return ExactScalar(Fraction(self.re[k], self.den), Fraction(self.im[k], self.den))

    def homogeneous_part(self, d: int) -> BiPoly:
        if d > self.order or d < 0:
            return BiPoly()
        base = d * (d + 1) // 2
        out = {}
        for n in range(d + 1):
            r, i = self.re[base + n], self.im[base + n]
            if r or i:
                out[(d - n, n)] = ExactScalar(Fraction(r, self.den), Fraction(i, self.den))
        return BiPoly._wrap(out)

    def is_zero(self) -> bool:
        return not any(self.re) and not any(self.im)

    def valuation(self) -> float | int:
        """Lowest total degree present (inf for zero)."""
        deg, _, _ = kernels.layout(self.order)
        for k, (r, i) in enumerate(zip(self.re, self.im)):
            if r or i:
                return deg[k]
        return float("inf")

    def truncate(self, order: int) -> Jet:
        if order >= self.order:
            if order == self.order:
                return self
            size = kernels.tri_size(order)
            pad = size - len(self.re)
            return Jet._raw(order, self.den, self.re + [0] * pad, self.im + [0] * pad)
        size = kernels.tri_size(order)
        return Jet._raw(order, self.den, self.re[:size], self.im[:size])

    def with_order(self, order: int) -> Jet:
        """Reinterpret at another order (padding with zeros or truncating)."""
        return self.truncate(order)

    # -- arithmetic -------------------------------------------------------

    def _aligned(self, other: Jet):
        order = min(self.order, other.order)
        a = self.truncate(order)
        b = other.truncate(order)
        return order, a, b

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet(BiPoly({(0, 0): other}), self.order)
        order, a, b = self._aligned(other)
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        re, im = kernels.axpy(b.re, b.im, a.re, a.im, fb, 0, fa)
        return Jet._raw(order, den, re, im)

    __radd__ = __add__

    def __neg__(self):
        return Jet._raw(self.order, self.den, [-v for v in self.re], [-v for v in self.im])

    def __sub__(self, other):
        if not isinstance(other, Jet):
            other = Jet(BiPoly({(0, 0): other}), self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Jet:
        c = as_scalar(c)
        p, q, d = _scalar_parts(c)
        re, im = kernels.axpy(self.re, self.im, [0] * len(self.re), [0] * len(self.im), p, q, 1)
        return Jet._raw(self.order, self.den * d, re, im)

    def __mul__(self, other):
        if isinstance(other, Jet):
            order, a, b = self._aligned(other)
            re, im = kernels.mul_trunc(a.re, a.im, b.re, b.im, order)
            return Jet._raw(order, a.den * b.den, re, im)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Jet.monomial(0, 0, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> Jet:
        size = len(self.re)
        re = [0] * size
        im = [0] * size
        for d in range(self.order + 1):
            base = d * (d + 1) // 2
            for n in range(d + 1):
                src = base + n
                dst = base + d - n
                re[dst] = self.re[src]
                im[dst] = -self.im[src]
        return Jet._raw(self.order, self.den, re, im)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return (self.order == other.order and self.den == other.den
                    and self.re == other.re and self.im == other.im)
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.den, tuple(self.re), tuple(self.im)))

    def __repr__(self):
        return f"Jet({self.poly}, order={self.order})"


def poly_mul(a: Jet, b: Jet) -> Jet:
    """Exact product truncated to the smaller order."""
    return a * b


def lincomb(pairs: Iterable[tuple[ExactScalar, Jet]], order: int) -> Jet:
    """sum c_i * X_i over Jets truncated to ``order``."""
    size = kernels.tri_size(order)
    den = 1
    re = [0] * size
    im = [0] * size
    for c, x in pairs:
        if not c:
            continue
        p, q, d = _scalar_parts(c)
        xd = x.den * d
        new = lcm(den, xd)
        scale = new // den
        f = new // xd
        xr = x.re[:size]
        xi = x.im[:size]
        re, im = kernels.axpy(xr, xi, re, im, p * f, q * f, scale)
        den = new
    return Jet._raw(order, den, re, im)


# ---------------------------------------------------------------------------
# composition


def compose_jet(F: BiPoly | Jet, X: Jet, Y: Jet | None = None, order: int | None = None) -> Jet:
    """Evaluate F(X, Y) = sum F_{m,n} X^m Y^n, truncated.

    ``Y`` defaults to the formal conjugate of ``X``; both must have no
    constant term.
    """
    if Y is None:
        Y = X.conjugate()
    if order is None:
        order = min(X.order, Y.order)
    if isinstance(F, Jet):
        F = F.poly
    X = X.truncate(order)
    Y = Y.truncate(order)
    if X.valuation() < 1 or Y.valuation() < 1:
        raise DegreeViolation("substituted series must have no constant term")
    by_n: dict[int, list] = {}
    for (m, n), c in F._terms.items():
        if m + n <= order:
            by_n.setdefault(n, []).append((m, c))
    if not by_n:
        return Jet.zero(order)
    max_m = max(m for terms in by_n.values() for m, _ in terms)
    xpow = [Jet.monomial(0, 0, order)]
    for m in range(1, max_m + 1):
        # X^m has valuation >= m, so only order - n_min matters
        xpow.append(xpow[-1] * X)
    result = None
    for n in range(max(by_n), -1, -1):
        cur = by_n.get(n)
        part = lincomb(((c, xpow[m]) for m, c in cur), order) if cur else None
        if result is None:
            result = part
        else:
            result = result * Y
            if part is not None:
                result = result + part
    return result


def compose_graph(h: WJet, q: Jet, k0: int) -> Jet:
    """sum h_{k,l} z^k q(z, zbar)^l truncated to q.order."""
    v = q.valuation()
    if v < k0:
        raise DegreeViolation(f"graph function has a term of degree {v} < k0={k0}")
    order = q.order
    by_l: dict[int, list] = {}
    for (k, l), c in h.terms.items():
        if k + k0 * l <= order:
            by_l.setdefault(l, []).append((k, c))
    if not by_l:
        return Jet.zero(order)
    result = None
    for l in range(max(by_l), -1, -1):
        cur = by_l.get(l)
        part = Jet(BiPoly({(k, 0): c for k, c in cur}), order) if cur else None
        if result is None:
            result = part
        else:
            result = result * q
            if part is not None:
                result = result + part
    return result


def invert_planar_jet(phi: Jet, order: int | None = None) -> Jet:
    """Invert the planar map (z, zbar) -> (phi, conj(phi)) through ``order``.

    Returns psi with phi(psi, conj psi) = z' exactly through ``order``.  The
    fixed-point step psi <- z' - (phi - z)(psi, conj psi) gains one degree
    per pass, so each pass is carried out only at the precision it can fix.
    """
    if order is None:
        order = phi.order
    if order > phi.order:
        raise ValueError("cannot invert beyond the order of phi")
    if phi.coeff(0, 0) or phi.coeff(1, 0) != 1 or phi.coeff(0, 1):
        raise NotTangentToIdentity("linear part of phi must be exactly z")
    rest = (phi - Jet.z(phi.order)).truncate(order).poly
    psi = Jet.z(order)
    if rest.is_zero():
        return psi
    for d in range(2, order + 1):
        step = Jet.z(d) - compose_jet(rest, psi.truncate(d), order=d)
        psi = step
    return psi.truncate(order)


# ---------------------------------------------------------------------------
# WJet


def _fmt_zw(k: int, l: int) -> str:
    parts = []
    if k:
        parts.append("z" if k == 1 else f"z^{k}")
    if l:
        parts.append("w" if l == 1 else f"w^{l}")
    return "*".join(parts)


class WJet:
    """Series sum c_{k,l} z^k w^l graded by normal weight k + k0*l.

    ``weight_bound`` (optional) records the truncation: terms of weight
    above it are meaningless and never stored.
    """

    __slots__ = ("terms", "weight_bound")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None,
                 weight_bound: int | None = None):
        clean = {}
        for (k, l), c in (terms or {}).items():
            if k < 0 or l < 0:
                raise ValueError(f"negative exponent in {(k, l)}")
            c = as_scalar(c)
            if c:
                clean[(int(k), int(l))] = c
        self.terms = clean
        self.weight_bound = weight_bound

    def coeff(self, k: int, l: int) -> ExactScalar:
        return self.terms.get((k, l), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]))

    def truncate_weight(self, bound: int, k0: int) -> WJet:
        return WJet({key: c for key, c in self.terms.items() if key[0] + k0 * key[1] <= bound}, bound)

    def __add__(self, other: WJet) -> WJet:
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return WJet(out, _min_bound(self.weight_bound, other.weight_bound))

    def __neg__(self):
        return WJet({k: -c for k, c in self.terms.items()}, self.weight_bound)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> WJet:
        c = as_scalar(c)
        return WJet({k: v * c for k, v in self.terms.items()}, self.weight_bound)

    def __eq__(self, other):
        if not isinstance(other, WJet):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"WJet({self})"

    def __str__(self):
        return _fmt_terms(self.items(), _fmt_zw)


def _min_bound(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def normal_weight_components(h: WJet, k0: int) -> list[tuple[int, WJet]]:
    """Split h by normal weight k + k0*l, ascending."""
    groups: dict[int, dict] = {}
    for (k, l), c in h.terms.items():
        groups.setdefault(k + k0 * l, {})[(k, l)] = c
    return [(wt, WJet(groups[wt], h.weight_bound)) for wt in sorted(groups)]
