"""Command-line entry point: ``crnormal <command> ...``.

Exit codes: 0 ok, 1 negative verdict, 2 invalid input, 3 degenerate
surface, 4 solver failure, 5 undecided.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import reports
from .errors import CRNormalError, NondegeneracyViolated, SolverError
from .fischer import fischer_decompose, sN_residual
from .normalizer import normalize
from .serialize import (
    FormatError,
    dumps,
    map_from_dict,
    map_to_dict,
    poly_from_dict,
    read_json,
    surface_from_dict,
    surface_to_dict,
    write_json,
)
from .surface import apply_map, surface_invariants
from .verify import (
    PseudoWeightTable,
    equiv_check,
    linear_summary,
    pseudo_weight,
    pseudo_weight_clauses,
    verify_normal_form,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_DEGENERATE, EXIT_SOLVER, EXIT_UNDECIDED = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _load_surface(path, degree=None):
    s = surface_from_dict(read_json(path))
    if degree is not None:
        if degree < s.k0 + 1:
            raise FormatError("--degree", f"must be at least k0+1 = {s.k0 + 1}")
        if degree > s.order:
            raise FormatError("--degree", f"surface is only known through degree {s.order}")
        s = s.truncate(degree)
    return s


def _load_model_poly(path):
    obj = read_json(path)
    if isinstance(obj, dict) and obj.get("format") == "cr-surface/1":
        return surface_from_dict(obj).model.poly
    return poly_from_dict(obj)


def _emit(args, report: dict, text_lines):
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        for line in text_lines:
            print(line)


def _render(value) -> str:
    return json.dumps(value, sort_keys=True)


# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    s = _load_surface(args.surface, args.degree)
    inv = surface_invariants(s)
    status = EXIT_OK if inv.nondegenerate else EXIT_DEGENERATE
    rep = reports.analyze_report(s.k0, s.order, inv, linear_summary(s), status)
    lines = [f"k0: {s.k0}", f"s: {'infinite' if inv.s is None else inv.s}",
             f"alpha: {inv.alpha}", f"R: {inv.alpha_remainder}"]
    lines += [f"{c}: {'ok' if ok else 'VIOLATED'}" for c, ok in rep["clauses"].items()]
    lines.append(f"nondegenerate: {inv.nondegenerate}")
    _emit(args, rep, lines)
    return status


def cmd_normalize(args) -> int:
    s = _load_surface(args.surface, args.degree)
    inv = surface_invariants(s)
    prefix = args.out
    try:
        result = normalize(s)
    except NondegeneracyViolated as exc:
        rep = reports.normalize_report(None, EXIT_DEGENERATE, exc, inv)
        _finish_normalize(args, prefix, rep)
        return EXIT_DEGENERATE
    except SolverError as exc:
        rep = reports.normalize_report(None, EXIT_SOLVER, exc, inv)
        _finish_normalize(args, prefix, rep)
        return EXIT_SOLVER
    rep = reports.normalize_report(result, EXIT_OK, inv=inv)
    if prefix:
        write_json(f"{prefix}.normal.json", surface_to_dict(result.normal_form))
        write_json(f"{prefix}.map.json", map_to_dict(result.map))
    _finish_normalize(args, prefix, rep, result)
    return EXIT_OK


def _finish_normalize(args, prefix, rep, result=None):
    if prefix:
        write_json(f"{prefix}.report.json", rep)
    lines = [f"status: {rep['status']}"]
    if result is not None:
        lines.append(f"normal form: w = {result.normal_form.graph.poly}")
        for ev in rep["resonance"]:
            lines.append(f"resonance {ev['case']} k={ev['degree']} t={ev['t']}: a = {_render(ev['a'])}")
        if prefix:
            lines.append(f"wrote {prefix}.normal.json {prefix}.map.json {prefix}.report.json")
    else:
        lines.append(f"error: {rep['error']['code']}: {rep['error']['message']}")
    _emit(args, rep, lines)


def cmd_verify(args) -> int:
    s = _load_surface(args.surface, args.degree)
    rep = verify_normal_form(s)
    status = EXIT_OK if rep.overall else EXIT_NEGATIVE
    out = reports.verify_report(rep, status)
    lines = [f"degree {d.degree}: {'pass' if d.passed else 'FAIL'}"
             + ("" if d.passed else f" residual {[str(v) for v in d.residual.values]}")
             for d in rep.per_degree]
    if rep.resonance_applicable:
        lines += [f"a_(0,{t.degree}) = {t.coefficient}: {'pass' if t.passed else 'FAIL'}"
                  for t in rep.resonance_targets]
    else:
        lines.append("resonance targets: not applicable (no pure zb^l term)")
    lines.append(f"overall: {'pass' if rep.overall else 'FAIL'}")
    _emit(args, out, lines)
    return status


def cmd_apply_map(args) -> int:
    s = _load_surface(args.surface, args.degree)
    m = map_from_dict(read_json(args.map))
    moved = apply_map(m, s)
    doc = surface_to_dict(moved)
    if args.out:
        write_json(args.out, doc)
    else:
        sys.stdout.write(dumps(doc))
    return EXIT_OK


def cmd_equiv(args) -> int:
    a = _load_surface(args.a, args.degree)
    b = _load_surface(args.b, args.degree)
    v = equiv_check(a, b, args.mode)
    status = {"equivalent": EXIT_OK, "inequivalent": EXIT_NEGATIVE}.get(v.verdict, EXIT_UNDECIDED)
    rep = reports.equiv_report(v, status)
    _emit(args, rep, [f"verdict: {v.verdict}", f"certificate: {_render(rep['certificate'])}"])
    return status


def cmd_fischer(args) -> int:
    P = _load_model_poly(args.model)
    q = poly_from_dict(read_json(args.poly))
    split = fischer_decompose(P, q)
    N = q.degree if not q.is_zero() else P.degree
    res = sN_residual(P, q, N)
    rep = reports.fischer_report(P, q, split, res, EXIT_OK)
    _emit(args, rep, [f"S = {split.quotient}", f"R = {split.remainder}",
                      f"sN residual = {[str(v) for v in res.values]}"])
    return EXIT_OK


def cmd_weight(args) -> int:
    table = PseudoWeightTable(args.k0, args.s)
    value = pseudo_weight(table, args.gamma, args.beta)
    clauses = pseudo_weight_clauses(table, args.gamma, args.beta)
    rep = reports.weight_report(args.k0, args.s, args.gamma, args.beta, value, clauses, EXIT_OK)
    _emit(args, rep, [rep["weight"]])
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crnormal", description="Exact normal forms of real surfaces in C^2.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=["text", "json"], default="text")
        return sp

    sp = common(sub.add_parser("analyze", help="invariants s, alpha and nondegeneracy"))
    sp.add_argument("surface")
    sp.add_argument("--degree", type=int)
    sp.set_defaults(func=cmd_analyze)

    sp = common(sub.add_parser("normalize", help="compute the normal form and map"))
    sp.add_argument("surface")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--out", help="prefix for .normal/.map/.report JSON files")
    sp.set_defaults(func=cmd_normalize)

    sp = common(sub.add_parser("verify", help="check normalization conditions"))
    sp.add_argument("surface")
    sp.add_argument("--degree", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("apply-map", help="transform a surface by a map file"))
    sp.add_argument("surface")
    sp.add_argument("map")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_apply_map)

    sp = common(sub.add_parser("equiv", help="decide formal equivalence"))
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--mode", choices=["tangent", "linear"], default="tangent")
    sp.add_argument("--degree", type=int)
    sp.set_defaults(func=cmd_equiv)

    sp = common(sub.add_parser("fischer", help="Fischer decomposition of a polynomial"))
    sp.add_argument("model", help="cr-poly/1 or cr-surface/1 file supplying P")
    sp.add_argument("poly", help="cr-poly/1 file with a homogeneous polynomial")
    sp.set_defaults(func=cmd_fischer)

    sp = common(sub.add_parser("weight", help="pseudo-weight of z^gamma zb^beta"))
    sp.add_argument("--k0", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("gamma", type=int)
    sp.add_argument("beta", type=int)
    sp.set_defaults(func=cmd_weight)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NondegeneracyViolated as exc:
        return _fail(args, EXIT_DEGENERATE, exc)
    except SolverError as exc:
        return _fail(args, EXIT_SOLVER, exc)
    except (CRNormalError, ValueError) as exc:
        return _fail(args, EXIT_INPUT, exc)


def _fail(args, status, exc) -> int:
    print(f"crnormal {args.command}: {exc}", file=sys.stderr)
    if getattr(args, "format", "text") == "json":
        sys.stdout.write(dumps(reports.error_report(args.command, status, exc)))
    return status


if __name__ == "__main__":
    sys.exit(main())
