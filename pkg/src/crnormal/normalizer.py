"""Degree-by-degree normalization and resonance elimination.

Pass 1 imposes the S_N conditions at every degree T = k0+1..N using the
non-frozen coefficients of the map.  Pass 2 spends the frozen parameters
f_{0,t} and f_{1,t} to kill the pure coefficients a_{0,k} at resonant
degrees.  All linear systems are obtained by probing: apply an
elementary map, recompose, and read off the change of the residual.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

from .errors import (
    DegreeSystemInconsistent,
    DegreeSystemUnderdetermined,
    InadmissibleMonomial,
    LowerDegreeDisturbed,
    NondegeneracyViolated,
    ResonanceNonAffine,
    ResonanceSingular,
    SingularSystem,
)
from .fischer import SNResidual, apply_functional, residual_functional
from .linalg import SolutionOperator, solve
from .poly import WJet
from .scalar import ExactScalar, as_scalar
from .surface import (
    ModelPolynomial,
    SurfaceJet,
    TangentIdentityMap,
    apply_map,
    compose_maps,
    f_admissible,
    g_admissible,
    surface_invariants,
)

__all__ = [
    "DegreeUnknowns",
    "DegreeSystem",
    "ResonanceEvent",
    "ResonanceOutcome",
    "NormalizationReport",
    "NormalizationResult",
    "degree_unknowns",
    "elementary_map",
    "probe_degree_action",
    "solve_degree",
    "resonance_schedule",
    "boundary_schedule",
    "corrective_map",
    "closed_form_factor",
    "solve_resonance",
    "normalize",
    "PURE_RESIDUAL_READING",
    "RESONANCE_RANGE",
]

PURE_RESIDUAL_READING = "z^(N-j*k0) of S_j for j=0..N//k0; zb^(N-j*k0) of S_j for j=1..N//k0"
RESONANCE_RANGE = "A: k=t*s+k0-1, t>=1; B: k=(t+1)*s, t>=1"

_PROBES = (ExactScalar(1), ExactScalar(0, 1))


# ---------------------------------------------------------------------------
# pass 1


@dataclass(frozen=True)
class DegreeUnknowns:
    degree: int
    k0: int
    g_monomials: tuple
    f_monomials: tuple

    def labelled(self):
        return [("g", m) for m in self.g_monomials] + [("f", m) for m in self.f_monomials]


def degree_unknowns(k0: int, T: int) -> DegreeUnknowns:
    """Map coefficients that act first at degree T, frozen families excluded."""
    if T < k0 + 1:
        raise ValueError(f"degree {T} must exceed k0 = {k0}")
    g = tuple((T - k0 * n, n) for n in range(T // k0 + 1)
              if (T - k0 * n) + n >= 2 and (T - k0 * n, n) != (0, 1))
    F = T - k0 + 1
    f = tuple((F - k0 * l, l) for l in range(F // k0 + 1) if F - k0 * l >= 2)
    return DegreeUnknowns(T, k0, g, f)


def elementary_map(k0: int, monomial, coefficient, component: str) -> TangentIdentityMap:
    k, l = monomial
    c = as_scalar(coefficient)
    if component == "f":
        if not f_admissible(k, l):
            raise InadmissibleMonomial(f"f term z^{k} w^{l} is not allowed")
        return TangentIdentityMap(k0, f=WJet({(k, l): c}))
    if component == "g":
        if not g_admissible(k, l, k0):
            raise InadmissibleMonomial(f"g term z^{k} w^{l} is not allowed for k0={k0}")
        return TangentIdentityMap(k0, g=WJet({(k, l): c}))
    raise ValueError(f"component must be 'f' or 'g', got {component!r}")


def _residual(surface: SurfaceJet, T: int) -> list:
    P = surface.model.poly
    return apply_functional(residual_functional(P, T), surface.degree_part(T), T)


def _real_vector(values) -> list:
    return [v.re for v in values] + [v.im for v in values]


@dataclass(frozen=True)
class DegreeSystem:
    """Real-linear system A x = rhs for the unknowns of one degree.

    Columns come in pairs (real part, imaginary part) per unknown, in the
    order of ``unknowns``; rows are real parts then imaginary parts of the
    residual entries.
    """

    degree: int
    unknowns: tuple
    matrix: tuple
    rhs: tuple
    residual: SNResidual


def probe_degree_action(surface: SurfaceJet, T: int) -> DegreeSystem:
    """Assemble the degree-T system by probing every unknown with 1 and i.

    A probe term has weight >= T-k0+1 in f (or T in g); any product of two
    such terms lands in degree >= 2T-k0 > T, so the action at degree T is
    exactly real-linear.
    """
    k0 = surface.k0
    base = surface.truncate(T)
    r0 = _residual(base, T)
    unknowns = degree_unknowns(k0, T).labelled()
    cols = []
    for comp, mon in unknowns:
        for c in _PROBES:
            moved = apply_map(elementary_map(k0, mon, c, comp), base)
            cols.append(_real_vector([a - b for a, b in zip(_residual(moved, T), r0)]))
    nrows = 2 * len(r0)
    A = tuple(tuple(col[i] for col in cols) for i in range(nrows))
    rhs = tuple(-v for v in _real_vector(r0))
    return DegreeSystem(T, tuple(unknowns), A, rhs, SNResidual(T, k0, tuple(r0)))


@lru_cache(maxsize=None)
def _degree_operator(model: ModelPolynomial, T: int):
    # the degree-T action only involves P, so probe on the bare model
    system = probe_degree_action(SurfaceJet(model, T), T)
    try:
        op = SolutionOperator([list(r) for r in system.matrix])
    except SingularSystem as exc:
        raise DegreeSystemUnderdetermined(
            f"degree {T}: {exc}", degree=T, unknowns=system.unknowns) from None
    return system.unknowns, op


def _assemble(k0: int, unknowns, x) -> TangentIdentityMap:
    f, g = {}, {}
    for j, (comp, mon) in enumerate(unknowns):
        c = ExactScalar(x[2 * j], x[2 * j + 1])
        if c:
            (f if comp == "f" else g)[mon] = c
    return TangentIdentityMap(k0, WJet(f), WJet(g))


def _same_below(a: SurfaceJet, b: SurfaceJet, T: int) -> bool:
    return all(a.degree_part(d) == b.degree_part(d) for d in range(a.k0 + 1, T))


def solve_degree(surface: SurfaceJet, T: int):
    """Impose S_N membership at degree T; returns (map, new surface)."""
    k0 = surface.k0
    r0 = _residual(surface, T)
    if all(v.is_zero() for v in r0):
        return TangentIdentityMap.identity(k0), surface
    unknowns, op = _degree_operator(surface.model, T)
    b = [-v for v in _real_vector(r0)]
    if any(op.residual(b)):
        raise DegreeSystemInconsistent(
            f"degree {T}: residual outside the reachable span", degree=T,
            residual=[str(v) for v in r0])
    m = _assemble(k0, unknowns, op.apply(b))
    out = apply_map(m, surface)
    left = _residual(out, T)
    if not all(v.is_zero() for v in left):
        raise DegreeSystemInconsistent(
            f"degree {T}: residual survives the commit", degree=T,
            residual=[str(v) for v in left])
    if not _same_below(surface, out, T):
        raise LowerDegreeDisturbed(f"degree {T}: lower degrees moved", degree=T)
    return m, out


def _pass1(surface: SurfaceJet, start: int, stop: int, m: TangentIdentityMap | None = None):
    order = surface.order
    for T in range(start, stop + 1):
        step, surface = solve_degree(surface, T)
        if m is not None and not step.is_identity():
            m = compose_maps(m, step, order)
    return m, surface


# ---------------------------------------------------------------------------
# pass 2


@dataclass(frozen=True)
class ResonanceEvent:
    """A frozen parameter family and the coefficient it is spent on.

    Regular events kill a_{0,k} with k <= order.  Boundary events belong to
    families whose target k lies beyond the order while the parameter
    still acts inside it; they pin the lowest coordinates they move.
    """

    degree: int
    case: str
    t: int
    k0: int
    a: ExactScalar | None = None
    boundary: bool = False

    @property
    def acting_degree(self) -> int:
        """Lowest degree of the surface that the corrective parameter changes."""
        if self.case == "A":
            return self.k0 * self.t + self.k0 - 1
        return self.k0 * self.t + self.k0


def _families(k0: int, s: int):
    t = 1
    while True:
        yield ResonanceEvent(t * s + k0 - 1, "A", t, k0)
        yield ResonanceEvent((t + 1) * s, "B", t, k0)
        t += 1


def resonance_schedule(k0: int, s: int | None, order: int) -> list[ResonanceEvent]:
    if s is None:
        raise ValueError("resonance schedule needs a finite s")
    events = []
    for ev in _families(k0, s):
        if ev.acting_degree > order:
            break
        if ev.degree <= order:
            events.append(ev)
    return sorted(events, key=lambda e: e.degree)


def boundary_schedule(k0: int, s: int | None, order: int) -> list[ResonanceEvent]:
    """Families acting within ``order`` whose target lies beyond it."""
    if s is None:
        raise ValueError("boundary schedule needs a finite s")
    events = []
    for ev in _families(k0, s):
        if ev.acting_degree > order:
            break
        if ev.degree > order:
            events.append(replace(ev, boundary=True))
    return sorted(events, key=lambda e: (e.acting_degree, e.case))


def corrective_map(case: str, k0: int, t: int, alpha, a) -> TangentIdentityMap:
    if t < 1:
        raise ValueError("t must be at least 1")
    alpha, a = as_scalar(alpha), as_scalar(a)
    if case == "A":
        f = {(0, t): a * alpha, (k0, t - 1): -a}
        return TangentIdentityMap(k0, WJet({k: c for k, c in f.items() if c}))
    if case == "B":
        aa = a * alpha
        g = aa + aa.conjugate()
        return TangentIdentityMap(k0, WJet({(1, t): a} if a else {}),
                                  WJet({(0, t + 1): g} if g else {}))
    raise ValueError(f"unknown case {case!r}")


def closed_form_factor(event: ResonanceEvent, alpha, s: int) -> ExactScalar:
    """Leading coefficient predicted for the a-dependence of a_{0,k}."""
    alpha = as_scalar(alpha)
    step = alpha - ExactScalar(s) / alpha
    if event.case == "A":
        return (alpha.conjugate() - s) * step ** (event.t - 1)
    return (alpha - s) * step ** event.t


@dataclass(frozen=True)
class ResonanceOutcome:
    event: ResonanceEvent
    probes: tuple          # ((a, coordinate values), ...) for a in 0, 1, i, 1+i
    pinned: tuple          # coordinates (m, n, "re"|"im") forced to zero
    factor: ExactScalar | None
    moved_degrees: tuple   # degrees in [acting, k) whose coefficients changed


_PARAM_PROBES = (ExactScalar(0), ExactScalar(1), ExactScalar(0, 1), ExactScalar(1, 1))


def _pipeline(surface: SurfaceJet, event: ResonanceEvent, alpha, a, upto: int, track=False):
    """Apply the corrective map with parameter a and renormalize through ``upto``."""
    m = corrective_map(event.case, surface.k0, event.t, alpha, a)
    moved = apply_map(m, surface.truncate(upto))
    return _pass1(moved, event.acting_degree, upto, m if track else None)


def _coordinate(surface: SurfaceJet, key):
    m, n, part = key
    c = surface.coeff(m, n)
    return c.re if part == "re" else c.im


def _coordinates(T0: int, N: int):
    for d in range(T0, N + 1):
        for n in range(d + 1):
            yield (d - n, n, "re")
            yield (d - n, n, "im")


def _select_pinned(runs, T0: int, N: int):
    """Greedy: first coordinate the parameter moves, then the first that
    makes the real 2x2 Jacobian invertible."""
    base, one, eye = runs
    chosen, jac = [], []
    for key in _coordinates(T0, N):
        row = (_coordinate(one, key) - _coordinate(base, key),
               _coordinate(eye, key) - _coordinate(base, key))
        if row == (0, 0):
            continue
        if not chosen or row[0] * jac[0][1] - row[1] * jac[0][0]:
            chosen.append(key)
            jac.append(row)
            if len(chosen) == 2:
                break
    return tuple(chosen)


def _probe_failure(event, record):
    return [(str(a), [str(v) for v in vals]) for a, vals in record]


def solve_resonance(surface: SurfaceJet, event: ResonanceEvent, alpha=None,
                    earlier: tuple = ()):
    """Find the parameter of one family; returns (map, surface, a, outcome).

    A regular event kills a_{0,k}; a boundary event zeroes the coordinates
    chosen by ``_select_pinned``.  ``earlier`` lists target degrees already
    eliminated; they must survive the commit, as must every degree below
    the acting degree of the corrective map.
    """
    N = surface.order
    k = event.degree
    inv = surface_invariants(surface)
    if alpha is None:
        alpha = inv.alpha
    upto = N if event.boundary else k
    runs = [_pipeline(surface, event, alpha, a, upto)[1] for a in _PARAM_PROBES]
    if event.boundary:
        keys = _select_pinned(runs[:3], event.acting_degree, N)
    else:
        keys = ((0, k, "re"), (0, k, "im"))
    vals = [[_coordinate(r, key) for key in keys] for r in runs]
    record = tuple(zip(_PARAM_PROBES, vals))
    v0, v1, vi, v11 = vals
    d1 = [x - y for x, y in zip(v1, v0)]
    d2 = [x - y for x, y in zip(vi, v0)]
    if any(w != a0 + p + q for w, a0, p, q in zip(v11, v0, d1, d2)):
        raise ResonanceNonAffine(
            f"degree {k}: parameter dependence is not affine",
            degree=k, probes=_probe_failure(event, record))
    if len(keys) == 2:
        try:
            x, y = solve([[d1[0], d2[0]], [d1[1], d2[1]]], [-v0[0], -v0[1]])
        except SingularSystem:
            raise ResonanceSingular(
                f"degree {k}: parameter does not reach its target",
                degree=k, probes=_probe_failure(event, record)) from None
    elif len(keys) == 1:
        # one real direction acts; move along the gradient only
        g1, g2 = d1[0], d2[0]
        lam = -v0[0] / (g1 * g1 + g2 * g2)
        x, y = lam * g1, lam * g2
    else:
        x, y = 0, 0
    a = ExactScalar(x, y)
    m, out = _pipeline(surface, event, alpha, a, N, track=True)
    if any(_coordinate(out, key) for key in keys):
        raise ResonanceNonAffine(
            f"degree {k}: solved parameter misses its target", degree=k,
            probes=_probe_failure(event, record))
    T0 = event.acting_degree
    if not _same_below(surface, out, T0):
        raise LowerDegreeDisturbed(f"degree {k}: degrees below {T0} moved", degree=k, acting_degree=T0)
    for kk in earlier:
        if out.coeff(0, kk) != surface.coeff(0, kk):
            # families interleave once s >= 2*k0; joint solving is not attempted
            raise LowerDegreeDisturbed(
                f"degree {k}: family {event.case}{event.t} moves the earlier target a_(0,{kk})",
                degree=k, family=f"{event.case}{event.t}", target=kk,
                acting_degree=T0, before=str(surface.coeff(0, kk)), after=str(out.coeff(0, kk)))
    moved = tuple(d for d in range(T0, min(k, N + 1))
                  if out.degree_part(d) != surface.degree_part(d))
    factor = None if event.boundary else closed_form_factor(event, alpha, inv.s)
    outcome = ResonanceOutcome(replace(event, a=a), record, keys, factor, moved)
    return m, out, a, outcome


# ---------------------------------------------------------------------------
# driver


@dataclass(frozen=True)
class NormalizationReport:
    k0: int
    order: int
    s: int
    alpha: ExactScalar
    residual_zero: tuple        # (T, bool) per degree, from the normalizer itself
    events: tuple               # ResonanceOutcome per scheduled event
    boundary: tuple             # ResonanceOutcome per boundary family
    audit: dict = field(default_factory=dict)


@dataclass(frozen=True)
class NormalizationResult:
    map: TangentIdentityMap
    normal_form: SurfaceJet
    report: NormalizationReport


def normalize(surface: SurfaceJet, observer=None) -> NormalizationResult:
    """Normal form of ``surface`` through its order, and the map producing it.

    ``observer(event, before, after)``, if given, is called after every
    pass-2 commit with the surfaces on either side of it.
    """
    inv = surface_invariants(surface)
    if not inv.nondegenerate:
        raise NondegeneracyViolated(inv.reasons)
    k0, N = surface.k0, surface.order
    m, S = _pass1(surface, k0 + 1, N, TangentIdentityMap.identity(k0))
    outcomes, done = [], []
    for event in resonance_schedule(k0, inv.s, N):
        before = S
        step, S, _, outcome = solve_resonance(S, event, inv.alpha, tuple(done))
        m = compose_maps(m, step, N)
        if observer is not None:
            observer(outcome.event, before, S)
        outcomes.append(outcome)
        done.append(event.degree)
    edge = []
    for event in boundary_schedule(k0, inv.s, N):
        before = S
        step, S, _, outcome = solve_resonance(S, event, inv.alpha, tuple(done))
        m = compose_maps(m, step, N)
        if observer is not None:
            observer(outcome.event, before, S)
        edge.append(outcome)
    zero = tuple((T, all(v.is_zero() for v in _residual(S, T))) for T in range(k0 + 1, N + 1))
    report = NormalizationReport(
        k0, N, inv.s, inv.alpha, zero, tuple(outcomes), tuple(edge),
        {"pure_residual_reading": PURE_RESIDUAL_READING, "resonance_range": RESONANCE_RANGE})
    return NormalizationResult(m.truncated(N), S, report)
