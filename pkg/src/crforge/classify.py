"""Decision tree assigning a germ to one of the six general classes.

The tree follows the bracket-rank stratification: for n = 1 the ranks
of L, Lbar and iterated brackets at the origin; for hypersurfaces in
C^3 the origin Levi rank, the Levi determinant and the Freeman-type
twist value.  A germ outside every general class gets tag "none"
together with the list of conditions that failed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .frames import (class32_determinant, conjugate_field, freeman_value,
                     levi_data, levi_determinant, lie_bracket,
                     rank_at_origin, tangent_generators)
from .manifold import (DefiningEquations, DomainError, identity_bihol,
                       transform_defining)
from .scalars import QC, conj, is_exact, is_zero
from .series import INF, TruncatedSeries


@dataclass
class ClassReport:
    tag: str                      # "I", "II", "III1", "III2", "IV1", "IV2", "none"
    n: int
    c: int
    order: int
    evidence: Dict[str, object] = field(default_factory=dict)
    failed: List[str] = field(default_factory=list)


def _det_vanishes(s: TruncatedSeries, tol: float) -> Tuple[bool, int]:
    lead = s.leading_order_nonzero(max(tol, 1e-9) * 100)
    return lead == INF, lead


def classify(M: DefiningEquations, tol: float = 1e-9) -> ClassReport:
    """Assign the general class of an affinely normalized germ."""
    M.validate(max(tol, 1e-12) if M.is_float_mode() else 0.0)
    n, c = M.n, M.c
    rep = ClassReport("none", n, c, M.order)
    if n == 1:
        _classify_n1(M, rep, tol)
    elif n == 2 and c == 1:
        _classify_hypersurface(M, rep, tol)
    else:
        raise DomainError("dimension_bound",
                          f"no general classes for n={n}, c={c}")
    return rep


def _classify_n1(M: DefiningEquations, rep: ClassReport, tol: float) -> None:
    c = M.c
    L = tangent_generators(M, tol)[0]
    Lb = conjugate_field(L)
    B1 = lie_bracket(L, Lb)
    r3 = rank_at_origin([L, Lb, B1], tol)
    rep.evidence["rank_L_Lbar_bracket"] = r3
    if r3 < 3:
        rep.failed.append("levi_degenerate")
        return
    if c == 1:
        rep.tag = "I"
        return
    B2 = lie_bracket(L, B1)
    r4 = rank_at_origin([L, Lb, B1, B2], tol)
    rep.evidence["rank_with_double_bracket"] = r4
    if c == 2:
        if r4 == 4:
            rep.tag = "II"
        else:
            rep.failed.append("cubic_degenerate")
        return
    if r4 < 4:
        rep.failed.append("cubic_degenerate")
        return
    B3 = lie_bracket(Lb, B1)
    r5 = rank_at_origin([L, Lb, B1, B2, B3], tol)
    rep.evidence["rank_with_conjugate_double_bracket"] = r5
    if r5 == 5:
        rep.tag = "III1"
        return
    det = class32_determinant(M, tol)
    ok, lead = _det_vanishes(det, tol)
    rep.evidence["branch_determinant_order"] = lead
    B4 = lie_bracket(L, B2)
    r5b = rank_at_origin([L, Lb, B1, B2, B4], tol)
    rep.evidence["rank_with_triple_bracket"] = r5b
    if ok and r5b == 5:
        rep.tag = "III2"
        return
    if not ok:
        rep.failed.append("branch_determinant_nonzero")
    if r5b < 5:
        rep.failed.append("triple_bracket_degenerate")


def _classify_hypersurface(M: DefiningEquations, rep: ClassReport,
                           tol: float) -> None:
    H, _ = levi_data(M, tol)
    rank = H.rank(max(tol, 1e-12) if M.is_float_mode() else 0.0)
    rep.evidence["levi_rank"] = rank
    if rank == 2:
        rep.tag = "IV1"
        return
    if rank == 0:
        rep.failed.append("levi_zero")
        return
    det = levi_determinant(M)
    ok, lead = _det_vanishes(det, tol)
    rep.evidence["levi_determinant_order"] = lead
    if not ok:
        rep.failed.append("levi_determinant_nonzero")
        return
    f = freeman_value(M, tol)
    rep.evidence["freeman_value"] = f
    if is_zero(f, max(tol, 1e-9)):
        rep.failed.append("freeman_degenerate")
        return
    rep.tag = "IV2"


# -- recentring at nearby points (heuristic sampling) ------------------

def recenter(M: DefiningEquations, z0, u0, tol: float = 1e-9
             ) -> DefiningEquations:
    """Germ of the same manifold at the point over (z0, u0).

    Taylor-shifts the graph and re-straightens the tangent plane.  The
    shifted jet is only heuristically reliable at the original order
    since truncated tails contribute to every recentred degree.
    """
    n, c, N = M.n, M.c, M.order
    offsets = {}
    for k in range(n):
        offsets[k] = z0[k]
        offsets[n + k] = conj(z0[k])
    for l in range(c):
        offsets[2 * n + l] = u0[l]
    shifted = []
    for p in M.phi:
        sh = _taylor_shift(p, offsets)
        const = sh.constant_term()
        sh = sh - TruncatedSeries.const(sh.sig, const, sh.order)
        shifted.append(sh)
    M1 = DefiningEquations(n, c, tuple(shifted), N)
    # identity transform re-graphs and straightens the tilted tangent plane
    return transform_defining(M1, identity_bihol(n, c, N), tol)


def _taylor_shift(p: TruncatedSeries, offsets) -> TruncatedSeries:
    from math import comb
    out: Dict[Tuple[int, ...], object] = {}
    for mono, val in p.coeffs.items():
        # expand each variable's (x + a)^e factor and convolve
        expansions = []
        for idx, e in enumerate(mono):
            a = offsets.get(idx, QC(0))
            if e == 0 or is_zero(a):
                expansions.append({e: QC(1)})
                continue
            row = {}
            pw = QC(1)
            for k in range(e, -1, -1):
                row[k] = QC(comb(e, k)) * pw
                pw = pw * a
            expansions.append(row)
        acc = {(): val}
        for row in expansions:
            nxt = {}
            for pref, cv in acc.items():
                for k, ck in row.items():
                    key = pref + (k,)
                    term = cv * ck
                    cur = nxt.get(key)
                    nxt[key] = term if cur is None else cur + term
            acc = nxt
        for mono2, cv in acc.items():
            cur = out.get(mono2)
            out[mono2] = cv if cur is None else cur + cv
    return TruncatedSeries(p.sig, out, p.order)


def sample_point_reports(M: DefiningEquations, count: int,
                         tol: float = 1e-9) -> List[Dict[str, object]]:
    """Classify the germ recentred at small nearby points on M."""
    from fractions import Fraction
    n, c = M.n, M.c
    out = []
    for i in range(count):
        s = Fraction(1 + i, 100)
        z0 = [QC(s, s / 2) for _ in range(n)]
        u0 = [QC(s / 3) for _ in range(c)]
        if M.is_float_mode():
            z0 = [complex(x) for x in z0]
            u0 = [complex(x) for x in u0]
        Mi = recenter(M, z0, u0, tol)
        try:
            ri = classify(Mi, max(tol, 1e-7))
            out.append({"index": i, "z0": z0, "u0": u0,
                        "tag": ri.tag, "failed": ri.failed})
        except DomainError as exc:
            out.append({"index": i, "z0": z0, "u0": u0,
                        "tag": "error", "failed": [exc.condition]})
    return out
