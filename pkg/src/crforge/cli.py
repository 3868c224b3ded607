"""Command line front end.

    crforge classify  germ.json
    crforge normalize germ.json [--tag III2]
    crforge frame     germ.json
    crforge verify    germ.json [--tag IV1]
    crforge model     TAG [--order 8] [--sign -1]

Exit status: 0 on success, 1 on domain errors (rank failures, class
membership, reality violations), 2 on malformed documents or usage.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, Optional

from .classify import classify, sample_point_reports
from .frames import (conjugate_field, eval_at_origin, lie_bracket,
                     rank_at_origin, tangent_generators)
from .io import ParseError, defining_to_doc, dumps, parse_input
from .manifold import (Biholomorphism, DefiningEquations, DomainError,
                       check_reality, is_mixed_only, solve_theta,
                       verify_theta_identities)
from .models import TAGS, model
from .normalize import NotInClass, assert_normal_form, normalize
from .scalars import QC, format_rational, is_exact
from .series import INF


def _jsonable(x):
    if isinstance(x, QC):
        return {"re": format_rational(x.re), "im": format_rational(x.im)}
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if x == INF:
        return None
    return x


def _bihol_to_doc(h: Biholomorphism) -> Dict:
    comps = []
    n = h.n
    for f in h.maps:
        terms = []
        for mono in sorted(f.coeffs, key=lambda m: (sum(m), m)):
            val = f.coeffs[mono]
            cd = _jsonable(val if isinstance(val, (QC, complex)) else QC(val))
            terms.append({"z": list(mono[:n]), "w": list(mono[n:]),
                          "re": cd["re"], "im": cd["im"]})
        comps.append({"terms": terms})
    return {"description": h.description, "order": h.order, "maps": comps}


def _load(path: Optional[str], tol: float):
    if path in (None, "-"):
        raw = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                raw = fh.read()
        except OSError as exc:
            raise ParseError(path or "-", f"cannot read input: {exc}")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(path or "-", f"invalid JSON: {exc}")
    return parse_input(doc, tol)


def _apply_overrides(M: DefiningEquations, meta: Dict,
                     args) -> DefiningEquations:
    order = args.order or _env_order()
    if order is not None:
        if order > M.order:
            raise DomainError("order_exceeds_input",
                              f"cannot raise order {M.order} to {order}")
        M = DefiningEquations(M.n, M.c,
                              tuple(p.truncate(order) for p in M.phi), order)
    if args.mode == "float" and not M.is_float_mode():
        M = M.to_float()
    elif args.mode == "exact" and M.is_float_mode():
        raise DomainError("mode", "cannot promote float coefficients to exact")
    return M


def _env_order() -> Optional[int]:
    raw = os.environ.get("CRFORGE_ORDER")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ParseError("CRFORGE_ORDER", f"not an integer: {raw!r}")


def _emit(payload: Dict, args, text_lines) -> None:
    if args.format == "json":
        out = dumps(_jsonable(payload))
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _cmd_classify(args) -> int:
    M, meta = _load(args.file, args.tol)
    M = _apply_overrides(M, meta, args)
    rep = classify(M, args.tol)
    payload = {"command": "classify",
               "input": defining_to_doc(M, tolerance=meta.get("tolerance")),
               "report": {"class": rep.tag, "evidence": rep.evidence,
                          "failed": rep.failed}}
    lines = [f"class: {rep.tag}"]
    if args.sample_points:
        samples = sample_point_reports(M, args.sample_points, args.tol)
        payload["report"]["sample_points"] = samples
        lines += [f"sample {s['index']}: {s['tag']}" for s in samples]
    lines += [f"  {k} = {v}" for k, v in rep.evidence.items()]
    if rep.failed:
        lines.append("failed: " + ", ".join(rep.failed))
    _emit(payload, args, lines)
    return 0


def _cmd_normalize(args) -> int:
    M, meta = _load(args.file, args.tol)
    M = _apply_overrides(M, meta, args)
    tag = args.tag
    if tag is None:
        rep = classify(M, args.tol)
        if rep.tag == "none":
            raise DomainError("unclassifiable",
                              "germ is in no general class: "
                              + ", ".join(rep.failed))
        tag = rep.tag
    res = normalize(M, tag, args.tol)
    payload = {"command": "normalize",
               "input": defining_to_doc(M, tolerance=meta.get("tolerance")),
               "report": {"class": res.tag,
                          "normal_form": defining_to_doc(res.germ),
                          "witnesses": res.report.witnesses,
                          "ok": res.report.ok,
                          "violations": res.report.violations,
                          "trace": [{"description": d, "map": _bihol_to_doc(h)}
                                    for h, d in res.trace.steps],
                          "notes": res.trace.notes}}
    lines = [f"class: {res.tag}", f"normal form ok: {res.report.ok}"]
    lines += [f"  step: {d}" for _, d in res.trace.steps]
    lines += [f"  note: {nline}" for nline in res.trace.notes]
    _emit(payload, args, lines)
    return 0 if res.report.ok else 1


def _cmd_frame(args) -> int:
    M, meta = _load(args.file, args.tol)
    M = _apply_overrides(M, meta, args)
    L = tangent_generators(M, args.tol)
    Lb = [conjugate_field(x) for x in L]
    B = [[lie_bracket(L[i], Lb[j]) for j in range(M.n)] for i in range(M.n)]
    fields = L + Lb + [B[i][j] for i in range(M.n) for j in range(M.n)]
    origin = eval_at_origin(fields)
    rank = rank_at_origin(fields, args.tol)

    def field_doc(X):
        return [{"direction": d,
                 "terms": [{"mono": list(m), **_jsonable(v if isinstance(v, (QC, complex)) else QC(v))}
                           for m, v in sorted(coeff.coeffs.items(),
                                              key=lambda kv: (sum(kv[0]), kv[0]))]}
                for d, coeff in enumerate(X.coeffs) if coeff.coeffs]

    payload = {"command": "frame",
               "input": defining_to_doc(M, tolerance=meta.get("tolerance")),
               "report": {"generators": [field_doc(x) for x in L],
                          "conjugates": [field_doc(x) for x in Lb],
                          "brackets": [field_doc(B[i][j])
                                       for i in range(M.n) for j in range(M.n)],
                          "origin_matrix": origin,
                          "rank_at_origin": rank}}
    lines = [f"generators: {M.n}", f"rank at origin: {rank}"]
    for row in origin:
        lines.append("  " + "  ".join(str(_jsonable(x)) for x in row))
    _emit(payload, args, lines)
    return 0


def _cmd_verify(args) -> int:
    M, meta = _load(args.file, args.tol)
    M = _apply_overrides(M, meta, args)
    eff = args.tol if M.is_float_mode() else 0.0
    reality = check_reality(M, eff)
    G = solve_theta(M)
    ident = verify_theta_identities(G, eff)
    report = {"reality": reality,
              "theta_identity_failure_order": None if ident == INF else ident,
              "mixed_only": is_mixed_only(M, eff)}
    ok = reality and ident == INF
    if args.tag:
        nf = assert_normal_form(M, args.tag, args.tol)
        report["normal_form"] = {"class": nf.tag, "ok": nf.ok,
                                 "witnesses": nf.witnesses,
                                 "violations": nf.violations}
        ok = ok and nf.ok
    payload = {"command": "verify",
               "input": defining_to_doc(M, tolerance=meta.get("tolerance")),
               "report": report}
    lines = [f"reality: {reality}",
             f"theta identities hold: {ident == INF}"]
    if args.tag:
        lines.append(f"normal form {args.tag}: {report['normal_form']['ok']}")
    _emit(payload, args, lines)
    return 0 if ok else 1


def _cmd_model(args) -> int:
    order = args.order or _env_order() or (8 if args.tag == "III2" else 6)
    M = model(args.tag, order=order, sign=args.sign)
    if args.mode == "float":
        M = M.to_float()
    payload = defining_to_doc(M)
    lines = [f"model {args.tag} at order {order}"]
    _emit(payload, args, lines)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crforge",
                                 description="CR germ classification "
                                             "and normal forms")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", nargs="?",
                           help="input germ document (default: stdin)")
        p.add_argument("--order", type=int, default=None,
                       help="truncation order override")
        p.add_argument("--mode", choices=("exact", "float"), default=None)
        p.add_argument("--tol", type=float, default=1e-9,
                       help="float-mode zero tolerance")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("classify", help="assign the general class")
    common(p)
    p.add_argument("--sample-points", type=int, default=0,
                   help="also classify at this many recentred points")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("normalize", help="compute the elementary normal form")
    common(p)
    p.add_argument("--tag", choices=TAGS, default=None,
                   help="target class (default: classify first)")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("frame", help="tangent generators and brackets")
    common(p)
    p.set_defaults(func=_cmd_frame)

    p = sub.add_parser("verify", help="check invariants of a germ document")
    common(p)
    p.add_argument("--tag", choices=TAGS, default=None,
                   help="also check the normal-form shape for this class")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("model", help="emit an elementary model germ")
    p.add_argument("tag", choices=TAGS)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    common(p, with_file=False)
    p.set_defaults(func=_cmd_model)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"crforge: parse error: {exc}", file=sys.stderr)
        return 2
    except NotInClass as exc:
        print(f"crforge: not in class {exc.tag}: {exc.condition}: {exc}",
              file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"crforge: {exc.condition}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
