"""Plain-dict reports for every CLI command (JSON-ready, deterministic)."""

from __future__ import annotations

from .normalizer import PURE_RESIDUAL_READING, RESONANCE_RANGE, NormalizationResult
from .scalar import format_rational
from .serialize import REPORT_FORMAT, poly_records, scalar_record
from .surface import SurfaceInvariants
from .verify import EquivalenceVerdict, VerificationReport

AUDIT_FLAGS = {
    "pure_residual_reading": PURE_RESIDUAL_READING,
    "resonance_range": RESONANCE_RANGE,
    "boundary_families": "families whose target exceeds the order pin the lowest coordinates they move",
}


def _base(command: str, status: int) -> dict:
    return {"format": REPORT_FORMAT, "command": command, "status": status}


def invariants_record(inv: SurfaceInvariants) -> dict:
    return {
        "s": inv.s,
        "alpha": scalar_record(inv.alpha),
        "R": poly_records(inv.alpha_remainder),
    }


def analyze_report(k0: int, order: int, inv: SurfaceInvariants, linear: dict, status: int) -> dict:
    clauses = ["NO_S_WITHIN_TRUNCATION", "ALPHA_ZERO", "ALPHA_SQUARED_ZERO",
               "ALPHA_EQUALS_S", "ALPHA_SQUARED_EQUALS_S"]
    out = _base("analyze", status)
    out.update({
        "k0": k0,
        "degree": order,
        "invariants": invariants_record(inv),
        "nondegenerate": inv.nondegenerate,
        "clauses": {c: c not in inv.reasons for c in clauses},
        "reasons": list(inv.reasons),
        "linear_automorphisms": linear,
    })
    return out


def _outcome_record(o) -> dict:
    ev = o.event
    rec = {
        "degree": ev.degree,
        "case": ev.case,
        "t": ev.t,
        "acting_degree": ev.acting_degree,
        "a": scalar_record(ev.a),
        "pinned": [[m, n, part] for m, n, part in o.pinned],
        "moved_degrees": list(o.moved_degrees),
    }
    if o.factor is not None:
        rec["closed_form_factor"] = scalar_record(o.factor)
    return rec


def normalize_report(result: NormalizationResult | None, status: int, error=None,
                     inv: SurfaceInvariants | None = None) -> dict:
    out = _base("normalize", status)
    out["audit"] = dict(AUDIT_FLAGS)
    if inv is not None:
        out["invariants"] = invariants_record(inv)
    if error is not None:
        out["error"] = {"code": error.code, "message": str(error)}
        details = getattr(error, "details", None)
        if details:
            out["error"]["details"] = {k: _plain(v) for k, v in sorted(details.items())}
        return out
    rep = result.report
    out.update({
        "k0": rep.k0,
        "degree": rep.order,
        "degrees": [{"degree": T, "residual_zero": ok} for T, ok in rep.residual_zero],
        "resonance": [_outcome_record(o) for o in rep.events],
        "boundary": [_outcome_record(o) for o in rep.boundary],
    })
    return out


def _plain(v):
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


def verify_report(rep: VerificationReport, status: int) -> dict:
    out = _base("verify", status)
    out.update({
        "overall": rep.overall,
        "s": rep.s,
        "per_degree": [
            {"degree": d.degree, "pass": d.passed,
             "residual": [scalar_record(v) for v in d.residual.values]}
            for d in rep.per_degree
        ],
        "resonance_applicable": rep.resonance_applicable,
        "resonance_targets": [
            {"degree": t.degree, "pass": t.passed, "coefficient": scalar_record(t.coefficient)}
            for t in rep.resonance_targets
        ],
    })
    return out


def equiv_report(v: EquivalenceVerdict, status: int) -> dict:
    out = _base("equiv", status)
    out.update({"mode": v.mode, "verdict": v.verdict, "certificate": _plain(v.certificate)})
    return out


def fischer_report(model, poly, split, residual, status: int) -> dict:
    out = _base("fischer", status)
    out.update({
        "model": poly_records(model),
        "input": poly_records(poly),
        "quotient": poly_records(split.quotient),
        "remainder": poly_records(split.remainder),
        "sN_residual": [scalar_record(v) for v in residual.values],
    })
    return out


def weight_report(k0: int, s: int, gamma: int, beta: int, value, clauses: dict, status: int) -> dict:
    out = _base("weight", status)
    out.update({
        "k0": k0, "s": s, "gamma": gamma, "beta": beta,
        "weight": format_rational(value),
        "clauses": {k: format_rational(v) for k, v in sorted(clauses.items())},
    })
    return out


def error_report(command: str, status: int, error) -> dict:
    out = _base(command, status)
    out["error"] = {"code": getattr(error, "code", "ERROR"), "message": str(error)}
    reasons = getattr(error, "reasons", None)
    if reasons:
        out["error"]["reasons"] = list(reasons)
    return out
