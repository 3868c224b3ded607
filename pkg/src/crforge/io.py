"""Reading and writing germ documents.

The interchange format is JSON with lossless rationals in exact mode:

    {
      "n": 1, "c": 2, "order": 6, "mode": "exact",
      "tolerance": 1e-9,
      "phi": [
        {"terms": [{"z": [1], "zbar": [1], "u": [0, 0],
                    "re": "1", "im": "0"}]},
        ...
      ]
    }

Exact coefficients are "p/q" strings; float mode uses plain numbers.
Emission is canonical (graded lexicographic term order, fixed key
order) so that emit(parse(doc)) == doc byte for byte.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .manifold import DefiningEquations, DomainError
from .scalars import QC, format_rational, is_exact, parse_rational
from .series import TruncatedSeries, VarSignature


class ParseError(ValueError):
    """Malformed document; carries the location of the offending field."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _expect(cond: bool, location: str, message: str) -> None:
    if not cond:
        raise ParseError(location, message)


def _parse_coeff(term: Dict, loc: str, mode: str):
    re_v = term.get("re", 0)
    im_v = term.get("im", 0)
    if mode == "exact":
        try:
            return QC(parse_rational(re_v), parse_rational(im_v))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(loc, f"bad exact coefficient: {exc}")
    _expect(isinstance(re_v, (int, float)) and isinstance(im_v, (int, float)),
            loc, "float mode needs numeric coefficients")
    return complex(float(re_v), float(im_v))


def parse_input(doc: Dict, tol: float = 0.0
                ) -> Tuple[DefiningEquations, Dict]:
    """Validate and build a germ from a parsed JSON document."""
    _expect(isinstance(doc, dict), "$", "document must be an object")
    for key in ("n", "c", "order", "phi"):
        _expect(key in doc, "$", f"missing field {key!r}")
    n, c, order = doc["n"], doc["c"], doc["order"]
    _expect(isinstance(n, int) and n >= 1, "$.n", "n must be a positive integer")
    _expect(isinstance(c, int) and c >= 1, "$.c", "c must be a positive integer")
    _expect(isinstance(order, int) and order >= 2, "$.order",
            "order must be an integer >= 2")
    mode = doc.get("mode", "exact")
    _expect(mode in ("exact", "float"), "$.mode", "mode must be exact or float")
    tolerance = doc.get("tolerance")
    if tolerance is not None:
        _expect(isinstance(tolerance, (int, float)) and tolerance >= 0,
                "$.tolerance", "tolerance must be a nonnegative number")
    if 2 * n + c > 5:
        raise DomainError("dimension_bound", f"2n+c = {2*n+c} exceeds 5")
    _expect(isinstance(doc["phi"], list) and len(doc["phi"]) == c,
            "$.phi", f"phi must be a list of {c} components")
    sig = VarSignature.real_vars(n, c)
    phi = []
    for j, comp in enumerate(doc["phi"]):
        loc = f"$.phi[{j}]"
        _expect(isinstance(comp, dict) and "terms" in comp, loc,
                "component must be an object with a terms list")
        _expect(isinstance(comp["terms"], list), f"{loc}.terms",
                "terms must be a list")
        coeffs = {}
        for t, term in enumerate(comp["terms"]):
            tloc = f"{loc}.terms[{t}]"
            _expect(isinstance(term, dict), tloc, "term must be an object")
            z = term.get("z", [0] * n)
            zb = term.get("zbar", [0] * n)
            u = term.get("u", [0] * c)
            for name, vec, ln in (("z", z, n), ("zbar", zb, n), ("u", u, c)):
                _expect(isinstance(vec, list) and len(vec) == ln
                        and all(isinstance(x, int) and x >= 0 for x in vec),
                        f"{tloc}.{name}",
                        f"{name} must be a list of {ln} nonnegative integers")
            mono = tuple(z) + tuple(zb) + tuple(u)
            _expect(mono not in coeffs, tloc, "duplicate monomial")
            coeffs[mono] = _parse_coeff(term, tloc, mode)
        phi.append(TruncatedSeries(sig, coeffs, order))
    M = DefiningEquations(n, c, tuple(phi), order)
    eff_tol = tolerance if (mode == "float" and tolerance) else tol
    M.validate(eff_tol if mode == "float" else 0.0)
    meta = {"mode": mode, "tolerance": tolerance}
    return M, meta


def _coeff_doc(val) -> Dict:
    if is_exact(val):
        q = val if isinstance(val, QC) else QC(val)
        return {"re": format_rational(q.re), "im": format_rational(q.im)}
    v = complex(val)
    return {"re": v.real, "im": v.imag}


def defining_to_doc(M: DefiningEquations, mode: Optional[str] = None,
                    tolerance: Optional[float] = None) -> Dict:
    """Canonical document for a germ: graded-lex term order."""
    if mode is None:
        mode = "float" if M.is_float_mode() else "exact"
    n, c = M.n, M.c
    comps = []
    for p in M.phi:
        terms = []
        for mono in sorted(p.coeffs, key=lambda m: (sum(m), m)):
            cd = _coeff_doc(p.coeffs[mono])
            terms.append({"z": list(mono[:n]), "zbar": list(mono[n:2 * n]),
                          "u": list(mono[2 * n:]),
                          "re": cd["re"], "im": cd["im"]})
        comps.append({"terms": terms})
    doc: Dict = {"n": n, "c": c, "order": M.order, "mode": mode}
    if tolerance is not None:
        doc["tolerance"] = tolerance
    doc["phi"] = comps
    return doc


def dumps(doc: Dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
