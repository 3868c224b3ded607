"""Graphed real-analytic CR-generic germs and their basic surgery.

A germ M in C^{n+c} of real codimension c is stored as a graph
v_j = phi_j(z, zbar, u), with phi_j real (coefficientwise reality
feature), vanishing to order 2 at the origin.

The complex graphing functions Theta_j solve w = u + i phi implicitly;
they are obtained by fixed-point iteration and satisfy the two closure
identities

    w      =  Theta(z, zu, Thetabar(zu, z, w)),
    wu     =  Thetabar(zu, z, Theta(z, zu, wu)),

where zu, wu denote the extra complexified variables.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .scalars import Coeff, HALF, I, QC, conj, is_zero
from .series import INF, MultiIndex, TruncatedSeries, VarSignature

log = logging.getLogger(__name__)


class DomainError(ValueError):
    """A structurally valid input that violates a geometric precondition."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class DefiningEquations:
    """Graph data v_j = phi_j(z, zbar, u), j = 1..c."""

    n: int
    c: int
    phi: Tuple[TruncatedSeries, ...]
    order: int

    @property
    def sig(self) -> VarSignature:
        return self.phi[0].sig

    def is_float_mode(self) -> bool:
        return any(p.is_float_mode() for p in self.phi)

    def to_float(self) -> "DefiningEquations":
        return DefiningEquations(self.n, self.c,
                                 tuple(p.to_float() for p in self.phi),
                                 self.order)

    def validate(self, tol: float = 0.0) -> None:
        if 2 * self.n + self.c > 5:
            raise DomainError("dimension_bound",
                              f"2n+c = {2*self.n+self.c} exceeds 5")
        if len(self.phi) != self.c:
            raise DomainError("component_count",
                              "phi must have exactly c components")
        sig = VarSignature.real_vars(self.n, self.c)
        for j, p in enumerate(self.phi):
            if p.sig != sig:
                raise DomainError("signature", f"phi_{j+1} has a foreign signature")
            if p.valuation() < 2:
                raise DomainError("affine_normalization",
                                  f"phi_{j+1} has terms of degree < 2")
        if not check_reality(self, tol):
            raise DomainError("reality", "coefficients violate the reality feature")


def make_defining(n: int, c: int, terms: Sequence[Dict[MultiIndex, Coeff]],
                  order: int) -> DefiningEquations:
    sig = VarSignature.real_vars(n, c)
    phi = tuple(TruncatedSeries(sig, t, order) for t in terms)
    return DefiningEquations(n, c, phi, order)


def check_reality(M: DefiningEquations, tol: float = 0.0) -> bool:
    """coeff(alpha,beta,gamma) == conj(coeff(beta,alpha,gamma)) for all phi_j."""
    n = M.n
    for p in M.phi:
        for mono, val in p.coeffs.items():
            m2 = mono[n:2 * n] + mono[:n] + mono[2 * n:]
            if not is_zero(val - conj(p.coeff(m2)), tol):
                return False
    return True


def complexify(phi: TruncatedSeries, n: int, c: int) -> TruncatedSeries:
    """Reinterpret a real-variables series over (z, zu, wu).

    Pure coefficient transport: zbar exponents become zu exponents and
    u exponents become wu exponents.
    """
    sig = VarSignature.complexified(n, c)
    return TruncatedSeries(sig, phi.coeffs, phi.order, _clean=True)


# -- complex graphing functions ---------------------------------------

@dataclass(frozen=True)
class ComplexGraph:
    """The functions Theta_j(z, zu, wu) with w_j = Theta_j on the germ."""

    n: int
    c: int
    theta: Tuple[TruncatedSeries, ...]
    order: int

    @property
    def sig(self) -> VarSignature:
        return self.theta[0].sig


def solve_theta(M: DefiningEquations) -> ComplexGraph:
    """Solve w = wu + 2i phi(z, zu, (w + wu)/2) by fixed-point iteration."""
    n, c, N = M.n, M.c, M.order
    sig = VarSignature.complexified(n, c)
    phic = [complexify(p, n, c) for p in M.phi]
    wu = [TruncatedSeries.variable(sig, 2 * n + j, N) for j in range(c)]
    theta = list(wu)
    two_i = QC(0, 2)
    for it in range(N):
        cap = min(N, it + 3)
        mid = [(theta[j] + wu[j]).scale(HALF) for j in range(c)]
        subs = {2 * n + j: mid[j] for j in range(c)}
        theta = [wu[j] + phic[j].compose(subs, sig=sig, order=cap).scale(two_i)
                 for j in range(c)]
        theta = [TruncatedSeries(sig, t.coeffs, N, _clean=True) for t in theta]
    return ComplexGraph(n, c, tuple(theta), N)


def solve_theta_bar(M: DefiningEquations) -> ComplexGraph:
    """Solve the conjugate problem wu = w - 2i phi(z, zu, (w + wu)/2).

    The unknown is wu as a series in (z, zu, w); the result must agree
    with swap_bar of solve_theta componentwise.
    """
    n, c, N = M.n, M.c, M.order
    sig = VarSignature.complexified(n, c)
    phic = [complexify(p, n, c) for p in M.phi]
    w = [TruncatedSeries.variable(sig, 2 * n + j, N) for j in range(c)]
    thetab = list(w)
    minus_two_i = QC(0, -2)
    for it in range(N):
        cap = min(N, it + 3)
        mid = [(thetab[j] + w[j]).scale(HALF) for j in range(c)]
        subs = {2 * n + j: mid[j] for j in range(c)}
        thetab = [w[j] + phic[j].compose(subs, sig=sig, order=cap).scale(minus_two_i)
                  for j in range(c)]
        thetab = [TruncatedSeries(sig, t.coeffs, N, _clean=True) for t in thetab]
    return ComplexGraph(n, c, tuple(thetab), N)


def verify_theta_identities(G: ComplexGraph, tol: float = 0.0) -> int:
    """Least total degree at which either closure identity fails; INF if none."""
    n, c = G.n, G.c
    sig = G.sig
    tb = [t.swap_bar() for t in G.theta]          # Thetabar, slot 2n+j read as w_j
    worst = INF
    for j in range(c):
        lhs = G.theta[j].compose({2 * n + l: tb[l] for l in range(c)},
                                 sig=sig, order=G.order)
        worst = min(worst, lhs.residual_order(
            TruncatedSeries.variable(sig, 2 * n + j, G.order), tol))
        rhs = tb[j].compose({2 * n + l: G.theta[l] for l in range(c)},
                            sig=sig, order=G.order)
        worst = min(worst, rhs.residual_order(
            TruncatedSeries.variable(sig, 2 * n + j, G.order), tol))
    return worst


# -- biholomorphisms ---------------------------------------------------

@dataclass(frozen=True)
class Biholomorphism:
    """Origin-fixing holomorphic map (z, w) -> (z', w'), new = h(old)."""

    n: int
    c: int
    maps: Tuple[TruncatedSeries, ...]     # n z-components then c w-components
    order: int
    description: str = ""

    @property
    def sig(self) -> VarSignature:
        return self.maps[0].sig


def identity_bihol(n: int, c: int, order: int, description: str = "identity"
                   ) -> Biholomorphism:
    sig = VarSignature.holomorphic(n, c)
    maps = tuple(TruncatedSeries.variable(sig, i, order) for i in range(n + c))
    return Biholomorphism(n, c, maps, order, description)


def compose_bihol(h2: Biholomorphism, h1: Biholomorphism,
                  description: str = "") -> Biholomorphism:
    """The map h2 o h1 (apply h1 first)."""
    sig = h1.sig
    order = min(h1.order, h2.order)
    subs = {i: h1.maps[i] for i in range(len(h1.maps))}
    maps = tuple(f.compose(subs, sig=sig, order=order) for f in h2.maps)
    return Biholomorphism(h1.n, h1.c, maps, order,
                          description or f"({h2.description}) o ({h1.description})")


def _linear_matrix(maps: Sequence[TruncatedSeries]) -> List[List[Coeff]]:
    nv = maps[0].sig.nvars
    rows = []
    for f in maps:
        row = []
        for i in range(nv):
            mono = tuple(1 if k == i else 0 for k in range(nv))
            row.append(f.coeff(mono))
        rows.append(row)
    return rows


def _matrix_inverse(A: List[List[Coeff]], tol: float = 0.0) -> List[List[Coeff]]:
    """Gauss-Jordan inverse over exact or float coefficients."""
    nsz = len(A)
    M = [list(row) + [QC(1) if i == j else QC(0) for j in range(nsz)]
         for i, row in enumerate(A)]
    for col in range(nsz):
        piv = None
        best = -1.0
        for r in range(col, nsz):
            mag = abs(complex(M[r][col]))
            if mag > best and not is_zero(M[r][col], tol):
                piv, best = r, mag
        if piv is None:
            raise DomainError("linear_degeneracy", "linear part is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = QC(1) / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(nsz):
            if r == col:
                continue
            f = M[r][col]
            if is_zero(f, tol):
                continue
            M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[nsz:] for row in M]


def invert_map(maps: Sequence[TruncatedSeries], order: int,
               tol: float = 0.0) -> List[TruncatedSeries]:
    """Order-by-order inverse of an origin-fixing map with invertible
    linear part: returns G with F(G) = id to the stated order."""
    sig = maps[0].sig
    nv = sig.nvars
    if len(maps) != nv:
        raise ValueError("invert_map needs a square map")
    for f in maps:
        if not is_zero(f.constant_term(), tol):
            raise DomainError("origin", "map does not fix the origin")
    A = _linear_matrix(maps)
    Ainv = _matrix_inverse(A, tol)
    ident = [TruncatedSeries.variable(sig, i, order) for i in range(nv)]
    lin_part = []
    high = []
    for i, f in enumerate(maps):
        lin = TruncatedSeries(sig, {tuple(1 if k == j else 0 for k in range(nv)):
                                    A[i][j] for j in range(nv)}, order)
        lin_part.append(lin)
        high.append((f - lin).truncate(order))

    def apply_ainv(vec: List[TruncatedSeries]) -> List[TruncatedSeries]:
        out = []
        for i in range(nv):
            acc = TruncatedSeries.zero(sig, order)
            for j in range(nv):
                if is_zero(Ainv[i][j], tol):
                    continue
                acc = acc + vec[j].scale(Ainv[i][j])
            out.append(acc)
        return out

    G = apply_ainv(ident)
    for k in range(2, order + 1):
        subs = {i: G[i] for i in range(nv)}
        corr = [ident[i] - high[i].compose(subs, sig=sig, order=k)
                for i in range(nv)]
        G = [g.truncate(order) for g in apply_ainv(corr)]
        G = [g.truncate(k) if k < order else g for g in G]
        # pad reliability back up: coefficients beyond k are refined later
        G = [TruncatedSeries(sig, g.coeffs, order, _clean=True) for g in G]
    return G


def invert_bihol(h: Biholomorphism, tol: float = 0.0) -> Biholomorphism:
    G = invert_map(h.maps, h.order, tol)
    return Biholomorphism(h.n, h.c, tuple(G), h.order,
                          f"inverse of ({h.description})")


# -- pushing a germ through a biholomorphism ---------------------------

def _push_holomorphic(f: TruncatedSeries, n: int, c: int,
                      w_par: List[TruncatedSeries],
                      sig: VarSignature, order: int,
                      barred: bool) -> TruncatedSeries:
    """Evaluate a holomorphic map component along the parametrized germ.

    barred=False: f(z, w(t)); barred=True: conj-f(zbar, wbar(t)).
    """
    subs: Dict[int, TruncatedSeries] = {}
    if barred:
        f = f.conjugate_coeffs()
        for k in range(n):
            subs[k] = TruncatedSeries.variable(sig, n + k, order)
    for j in range(c):
        subs[n + j] = w_par[j]
    return f.compose(subs, sig=sig, order=order)


def transform_defining(M: DefiningEquations, h: Biholomorphism,
                       tol: float = 0.0, check: bool = False,
                       _depth: int = 0) -> DefiningEquations:
    """Defining equations of h(M) in the target coordinates.

    Route: parametrize M by t = (z, zbar, u), push the map and its
    conjugate forward, invert t -> (z', zbar', u') order by order and
    substitute.  If the image graph acquires a linear part (the map
    tilts the tangent plane), a linear straightening is composed in
    automatically and logged.
    """
    n, c, N = M.n, M.c, min(M.order, h.order)
    sig = VarSignature.real_vars(n, c)
    iu = QC(0, 1)
    w_par = [TruncatedSeries.variable(sig, 2 * n + j, N) + M.phi[j].scale(iu)
             for j in range(c)]
    wb_par = [TruncatedSeries.variable(sig, 2 * n + j, N) - M.phi[j].scale(iu)
              for j in range(c)]

    zp = [_push_holomorphic(h.maps[k], n, c, w_par, sig, N, False)
          for k in range(n)]
    zbp = [_push_holomorphic(h.maps[k], n, c, wb_par, sig, N, True)
           for k in range(n)]
    wp = [_push_holomorphic(h.maps[n + j], n, c, w_par, sig, N, False)
          for j in range(c)]
    wbp = [_push_holomorphic(h.maps[n + j], n, c, wb_par, sig, N, True)
           for j in range(c)]

    half = HALF
    minus_half_i = QC(0, -1) * HALF
    up = [(wp[j] + wbp[j]).scale(half) for j in range(c)]
    vp = [(wp[j] - wbp[j]).scale(minus_half_i) for j in range(c)]

    F = zp + zbp + up
    G = invert_map(F, N, tol)
    subs = {i: G[i] for i in range(2 * n + c)}
    phi_new = [vp[j].compose(subs, sig=sig, order=N) for j in range(c)]

    # straighten a tilted tangent plane, if any
    lin = _linear_coefficients(phi_new, n, c)
    if lin is not None:
        if _depth > 0:
            raise DomainError("tangent_plane",
                              "image graph keeps a linear part after straightening")
        b, d = lin
        log.info("transform_defining: straightening linear part of the image graph")
        corr = _straightening_map(n, c, N, b, d)
        return transform_defining(M, compose_bihol(corr, h), tol, check,
                                  _depth=_depth + 1)

    out = DefiningEquations(n, c, tuple(phi_new), N)
    if check:
        for j in range(c):
            back = phi_new[j].compose({i: F[i] for i in range(2 * n + c)},
                                      sig=sig, order=N)
            if back.residual_order(vp[j], _check_tol(out, tol)) != INF:
                raise AssertionError("transform postcondition failed")
        if not check_reality(out, _check_tol(out, tol)):
            raise AssertionError("transform broke the reality feature")
    return out


def _check_tol(M: DefiningEquations, tol: float) -> float:
    if M.is_float_mode():
        return max(tol, 1e-9)
    return 0.0


def _linear_coefficients(phi: Sequence[TruncatedSeries], n: int, c: int):
    """Nonzero degree-1 part of a candidate graph, or None."""
    nv = 2 * n + c
    b = [[QC(0)] * n for _ in range(c)]
    d = [[QC(0)] * c for _ in range(c)]
    found = False
    for j, p in enumerate(phi):
        for mono, val in p.coeffs.items():
            if sum(mono) != 1:
                continue
            idx = mono.index(1)
            found = True
            if idx < n:
                b[j][idx] = val
            elif idx < 2 * n:
                pass        # forced by reality, rebuilt from b
            else:
                d[j][idx - 2 * n] = val
    return (b, d) if found else None


def _straightening_map(n: int, c: int, order: int, b, d) -> Biholomorphism:
    """Linear map w_j -> w_j - 2i sum_k b_jk z_k - i sum_l d_jl w_l."""
    sig = VarSignature.holomorphic(n, c)
    maps = [TruncatedSeries.variable(sig, k, order) for k in range(n)]
    m2i = QC(0, -2)
    mi = QC(0, -1)
    for j in range(c):
        f = TruncatedSeries.variable(sig, n + j, order)
        for k in range(n):
            if not is_zero(b[j][k]):
                f = f + TruncatedSeries.variable(sig, k, order).scale(m2i * b[j][k])
        for l in range(c):
            if not is_zero(d[j][l]):
                f = f + TruncatedSeries.variable(sig, n + l, order).scale(mi * d[j][l])
        maps.append(f)
    return Biholomorphism(n, c, tuple(maps), order, "tangent straightening")


# -- pluriharmonic removal ---------------------------------------------

def is_mixed_only(M: DefiningEquations, tol: float = 0.0) -> bool:
    """Every stored monomial has a positive z and a positive zbar degree."""
    n = M.n
    for p in M.phi:
        for mono, val in p.coeffs.items():
            if is_zero(val, tol):
                continue
            if sum(mono[:n]) == 0 or sum(mono[n:2 * n]) == 0:
                return False
    return True


def remove_pluriharmonic(M: DefiningEquations, tol: float = 0.0
                         ) -> Tuple[DefiningEquations, Biholomorphism]:
    """Two-step normalization after which phi has only mixed monomials.

    Step one absorbs phi(0, 0, u) into the transverse coordinates; step
    two subtracts the antiholomorphic graphing part via Thetabar(0, z, w).
    Returns the new germ and the composite biholomorphism.
    """
    n, c, N = M.n, M.c, M.order
    hsig = VarSignature.holomorphic(n, c)
    iu = QC(0, 1)

    # step one, written as a substitution old_w = w + i phi(0,0,w), inverted
    subs_maps = [TruncatedSeries.variable(hsig, k, N) for k in range(n)]
    zero = TruncatedSeries.zero(hsig, N)
    wvars = {2 * n + j: TruncatedSeries.variable(hsig, n + j, N) for j in range(c)}
    zzero = {k: zero for k in range(2 * n)}
    for j in range(c):
        ph0 = M.phi[j].compose({**zzero, **wvars}, sig=hsig, order=N)
        subs_maps.append(TruncatedSeries.variable(hsig, n + j, N) + ph0.scale(iu))
    h1 = Biholomorphism(n, c, tuple(invert_map(subs_maps, N, tol)), N,
                        "absorb transverse profile")
    M1 = transform_defining(M, h1, tol)

    # step two, w' = Thetabar(0, z, w) of the intermediate germ
    G = solve_theta(M1)
    tb = [t.swap_bar() for t in G.theta]          # Thetabar(zu, z, w) layout
    maps2 = [TruncatedSeries.variable(hsig, k, N) for k in range(n)]
    sub2: Dict[int, TruncatedSeries] = {}
    for k in range(n):
        sub2[k] = TruncatedSeries.variable(hsig, k, N)   # z stays z
        sub2[n + k] = zero                               # zu -> 0
    for j in range(c):
        sub2[2 * n + j] = TruncatedSeries.variable(hsig, n + j, N)
    for j in range(c):
        maps2.append(tb[j].compose(sub2, sig=hsig, order=N))
    h2 = Biholomorphism(n, c, tuple(maps2), N, "subtract antiholomorphic graph part")
    M2 = transform_defining(M1, h2, tol)

    eff_tol = _check_tol(M2, tol)
    if not is_mixed_only(M2, eff_tol):
        raise AssertionError("pluriharmonic removal left unmixed terms")
    # sweep float dust on unmixed slots
    phi_clean = []
    for p in M2.phi:
        kept = {m: v for m, v in p.coeffs.items()
                if sum(m[:n]) > 0 and sum(m[n:2 * n]) > 0}
        phi_clean.append(TruncatedSeries(p.sig, kept, p.order, _clean=True))
    M2 = DefiningEquations(n, c, tuple(phi_clean), M2.order)
    return M2, compose_bihol(h2, h1, "pluriharmonic removal")
