"""Intrinsic CR vector fields, brackets and Levi-type invariants.

The generators of T^{1,0}M for a graphed germ are

    L_k = d/dz_k + sum_l A_{k,l} d/du_l,

where the coefficient column A_k solves (iI + phi_u) A_k = -phi_{z_k}
over the series ring.  Conjugation acts by swap_bar on coefficients
together with the exchange d/dz_k <-> d/dzbar_k.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .manifold import DefiningEquations, DomainError
from .scalars import Coeff, QC, conj, is_zero
from .series import INF, TruncatedSeries, VarSignature


@dataclass(frozen=True)
class TangentFrameField:
    """Vector field sum_d coeff_d * d/dt_d over the graph variables.

    Directions are indexed like the series variables: 0..n-1 are
    d/dz_k, n..2n-1 are d/dzbar_k, 2n..2n+c-1 are d/du_l.
    """

    n: int
    c: int
    coeffs: Tuple[TruncatedSeries, ...]

    @property
    def sig(self) -> VarSignature:
        return self.coeffs[0].sig

    def apply(self, f: TruncatedSeries) -> TruncatedSeries:
        """Directional derivative of a scalar series."""
        acc = None
        for d, coeff in enumerate(self.coeffs):
            if not coeff.coeffs:
                continue
            term = coeff * f.diff(d)
            acc = term if acc is None else acc + term
        if acc is None:
            return TruncatedSeries.zero(self.sig, f.order - 1)
        return acc

    def u_coefficient(self, l: int) -> TruncatedSeries:
        return self.coeffs[2 * self.n + l]

    def at_origin(self) -> List[Coeff]:
        return [coeff.constant_term() for coeff in self.coeffs]


def _unit_field(sig: VarSignature, n: int, c: int, direction: int,
                order: int) -> List[TruncatedSeries]:
    out = [TruncatedSeries.zero(sig, order) for _ in range(2 * n + c)]
    out[direction] = TruncatedSeries.const(sig, QC(1), order)
    return out


def _solve_series_system(A: List[List[TruncatedSeries]],
                         rhs: List[TruncatedSeries],
                         tol: float = 0.0) -> List[TruncatedSeries]:
    """Solve A x = rhs over the series ring; pivots need invertible
    constant terms (guaranteed here by the iI + phi_u shape)."""
    c = len(A)
    M = [row[:] + [rhs[i]] for i, row in enumerate(A)]
    for col in range(c):
        piv = None
        for r in range(col, c):
            if not is_zero(M[r][col].constant_term(), tol):
                piv = r
                break
        if piv is None:
            raise DomainError("frame_degeneracy",
                              "series system has no invertible pivot")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].reciprocal()
        M[col] = [inv * x for x in M[col]]
        for r in range(c):
            if r == col:
                continue
            f = M[r][col]
            if not f.coeffs:
                continue
            M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[i][c] for i in range(c)]


def tangent_generators(M: DefiningEquations, tol: float = 0.0
                       ) -> List[TangentFrameField]:
    """The fields L_1 .. L_n spanning T^{1,0}M along the graph."""
    n, c, N = M.n, M.c, M.order
    sig = M.sig
    i_unit = QC(0, 1)
    phi_u = [[M.phi[j].diff(2 * n + l) for l in range(c)] for j in range(c)]
    A_mat = [[TruncatedSeries.const(sig, i_unit, N - 1) + phi_u[j][l]
              if j == l else phi_u[j][l] for l in range(c)] for j in range(c)]
    fields = []
    for k in range(n):
        rhs = [-(M.phi[j].diff(k)) for j in range(c)]
        col = _solve_series_system(A_mat, rhs, tol)
        coeffs = _unit_field(sig, n, c, k, N - 1)
        for l in range(c):
            coeffs[2 * n + l] = col[l]
        fields.append(TangentFrameField(n, c, tuple(coeffs)))
    return fields


def cramer_coefficients(M: DefiningEquations, k: int) -> List[TruncatedSeries]:
    """Oracle route for the A_{k,l}: determinant quotients over
    Delta = det(iI + phi_u), written out for codimension <= 3."""
    n, c, N = M.n, M.c, M.order
    sig = M.sig
    i_unit = QC(0, 1)
    ii = TruncatedSeries.const(sig, i_unit, N - 1)

    def e(j, l):
        d = M.phi[j].diff(2 * n + l)
        return ii + d if j == l else d

    def pz(j):
        return M.phi[j].diff(k)

    if c == 1:
        delta = e(0, 0)
        nums = [-pz(0)]
    elif c == 2:
        delta = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0)
        nums = [-(pz(0) * e(1, 1) - e(0, 1) * pz(1)),
                -(e(0, 0) * pz(1) - pz(0) * e(1, 0))]
    elif c == 3:
        def det3(m):
            return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        base = [[e(j, l) for l in range(3)] for j in range(3)]
        delta = det3(base)
        nums = []
        for l in range(3):
            m = [row[:] for row in base]
            for j in range(3):
                m[j][l] = -pz(j)
            nums.append(det3(m))
    else:
        raise DomainError("dimension_bound", "codimension above 3")
    inv = delta.reciprocal()
    return [inv * num for num in nums]


def conjugate_field(X: TangentFrameField) -> TangentFrameField:
    """swap_bar on coefficients plus d/dz_k <-> d/dzbar_k exchange."""
    n, c = X.n, X.c
    sw = [coeff.swap_bar() for coeff in X.coeffs]
    out = sw[n:2 * n] + sw[:n] + sw[2 * n:]
    return TangentFrameField(n, c, tuple(out))


def lie_bracket(X: TangentFrameField, Y: TangentFrameField) -> TangentFrameField:
    coeffs = tuple(X.apply(Yd) - Y.apply(Xd)
                   for Xd, Yd in zip(X.coeffs, Y.coeffs))
    return TangentFrameField(X.n, X.c, coeffs)


def eval_at_origin(fields: Sequence[TangentFrameField]) -> List[List[Coeff]]:
    return [f.at_origin() for f in fields]


def rank_at_origin(fields: Sequence[TangentFrameField], tol: float = 0.0) -> int:
    """Rank of the origin values inside C^{2n+c}, by row reduction."""
    rows = [f.at_origin() for f in fields]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    rows = [row[:] for row in rows]
    while rank < len(rows) and col < ncols:
        piv = None
        best = -1.0
        for r in range(rank, len(rows)):
            mag = abs(complex(rows[r][col]))
            if not is_zero(rows[r][col], tol) and mag > best:
                piv, best = r, mag
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = QC(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not is_zero(rows[r][col], tol):
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


# -- hypersurface invariants in C^3 (n = 2, c = 1) ---------------------

@dataclass(frozen=True)
class HermitianForm2:
    """2x2 Hermitian matrix [[a, beta], [conj(beta), c]]."""

    a: Coeff
    beta: Coeff
    c: Coeff

    def matrix(self) -> List[List[Coeff]]:
        return [[self.a, self.beta], [conj(self.beta), self.c]]

    def det(self) -> Coeff:
        return self.a * self.c - self.beta * conj(self.beta)

    def rank(self, tol: float = 0.0) -> int:
        if not is_zero(self.det(), tol):
            return 2
        if (is_zero(self.a, tol) and is_zero(self.c, tol)
                and is_zero(self.beta, tol)):
            return 0
        return 1


def levi_data(M: DefiningEquations, tol: float = 0.0
              ) -> Tuple[HermitianForm2, List[List[TruncatedSeries]]]:
    """Levi form of a hypersurface in C^3: the origin matrix and the
    full series matrix with entries i([L_i, Lbar_j] coefficient of d/du)."""
    if M.n != 2 or M.c != 1:
        raise DomainError("dimension_bound", "levi_data needs n=2, c=1")
    L = tangent_generators(M, tol)
    A = [L[i].u_coefficient(0) for i in range(2)]
    Ab = [a.swap_bar() for a in A]
    Lb = [conjugate_field(L[i]) for i in range(2)]
    i_unit = QC(0, 1)
    entries = [[(L[i].apply(Ab[j]) - Lb[j].apply(A[i])).scale(i_unit)
                for j in range(2)] for i in range(2)]
    origin = HermitianForm2(entries[0][0].constant_term(),
                            entries[0][1].constant_term(),
                            entries[1][1].constant_term())
    return origin, entries


def k_function(M: DefiningEquations, tol: float = 0.0) -> TruncatedSeries:
    """Slant function of a Levi rank-one hypersurface in C^3:

        k = (-L_2(Abar_1) + Lbar_1(A_2)) / (L_1(Abar_1) - Lbar_1(A_1)).
    """
    if M.n != 2 or M.c != 1:
        raise DomainError("dimension_bound", "k_function needs n=2, c=1")
    L = tangent_generators(M, tol)
    A = [L[i].u_coefficient(0) for i in range(2)]
    Ab = [a.swap_bar() for a in A]
    Lb = [conjugate_field(L[i]) for i in range(2)]
    num = -(L[1].apply(Ab[0])) + Lb[0].apply(A[1])
    den = L[0].apply(Ab[0]) - Lb[0].apply(A[0])
    if is_zero(den.constant_term(), tol):
        raise DomainError("levi_degeneracy",
                          "k-function denominator vanishes at the origin")
    return num * den.reciprocal()


def freeman_value(M: DefiningEquations, tol: float = 0.0) -> Coeff:
    """Constant term of Lbar_1(k); nonzero exactly in the twisted
    rank-one class."""
    k = k_function(M, tol)
    L = tangent_generators(M, tol)
    Lb1 = conjugate_field(L[0])
    return Lb1.apply(k).constant_term()


def levi_determinant(M: DefiningEquations) -> TruncatedSeries:
    """Closed-form Levi determinant of a hypersurface graph in C^3.

    Rational expression in the second jet of phi, with prefactor
    4 / ((i + phi_u)^3 (i - phi_u)^3).
    """
    if M.n != 2 or M.c != 1:
        raise DomainError("dimension_bound", "levi_determinant needs n=2, c=1")
    phi = M.phi[0]
    z1, z2, b1, b2, u = 0, 1, 2, 3, 4

    d = {
        "z1": phi.diff(z1), "z2": phi.diff(z2),
        "b1": phi.diff(b1), "b2": phi.diff(b2),
        "u": phi.diff(u),
    }
    d2 = {
        "z1b1": d["z1"].diff(b1), "z1b2": d["z1"].diff(b2),
        "z2b1": d["z2"].diff(b1), "z2b2": d["z2"].diff(b2),
        "z1u": d["z1"].diff(u), "z2u": d["z2"].diff(u),
        "b1u": d["b1"].diff(u), "b2u": d["b2"].diff(u),
        "uu": d["u"].diff(u),
    }

    def g(name):
        return d2[name] if name in d2 else d[name]

    def prod(*names):
        acc = g(names[0])
        for nm in names[1:]:
            acc = acc * g(nm)
        return acc

    terms = [
        (1, ("z2b2", "z1b1")),
        (-1, ("z2b1", "z1b2")),
        (1, ("z2b1", "b2", "z1u", "u")),
        (-1, ("z2b1", "b2", "z1", "uu")),
        (-1, ("b1", "z2u", "z1", "b2u")),
        (1, ("b1", "z2u", "u", "z1b2")),
        (-1, ("z2", "b1u", "b2", "z1u")),
        (-1, ("z2", "b1", "uu", "z1b2")),
        (1, ("z2", "b1u", "u", "z1b2")),
        (-1, ("z2b2", "b1", "z1u", "u")),
        (1, ("z2b2", "z1", "b1", "uu")),
        (-1, ("z2b2", "z1", "b1u", "u")),
        (1, ("z2b1", "z1", "b2u", "u")),
        (1, ("z2", "b2u", "b1", "z1u")),
        (-1, ("z2", "b2u", "z1b1", "u")),
        (1, ("b2", "z2u", "z1", "b1u")),
        (-1, ("b2", "z2u", "u", "z1b1")),
        (1, ("b2", "z2", "uu", "z1b1")),
        (-1, ("z2b1", "z1b2", "u", "u")),
        (1, ("z2b2", "z1b1", "u", "u")),
    ]
    i_terms = [
        (1, ("z2b2", "z1", "b1u")),
        (1, ("b1", "z2u", "z1b2")),
        (1, ("z2b1", "b2", "z1u")),
        (1, ("z2", "b2u", "z1b1")),
        (-1, ("b2", "z2u", "z1b1")),
        (-1, ("z2b1", "z1", "b2u")),
        (-1, ("z2", "b1u", "z1b2")),
        (-1, ("z2b2", "b1", "z1u")),
    ]

    sig = M.sig
    order = M.order - 2
    brace = TruncatedSeries.zero(sig, order)
    for sgn, names in terms:
        t = prod(*names)
        brace = brace + (t if sgn == 1 else -t)
    i_unit = QC(0, 1)
    for sgn, names in i_terms:
        t = prod(*names).scale(i_unit)
        brace = brace + (t if sgn == 1 else -t)

    phiu = d["u"]
    iconst = TruncatedSeries.const(sig, i_unit, phiu.order)
    p = iconst + phiu
    m = iconst - phiu
    p3 = p * p * p
    m3 = m * m * m
    pref = (p3 * m3).reciprocal().scale(QC(4))
    return pref * brace


def class32_determinant(M: DefiningEquations, tol: float = 0.0) -> TruncatedSeries:
    """Codimension-3 branch invariant: determinant of the transverse
    coefficients of [L, Lbar], [L, [L, Lbar]], [Lbar, [L, Lbar]]."""
    if M.n != 1 or M.c != 3:
        raise DomainError("dimension_bound", "class32_determinant needs n=1, c=3")
    L = tangent_generators(M, tol)[0]
    Lb = conjugate_field(L)
    B1 = lie_bracket(L, Lb)
    B2 = lie_bracket(L, B1)
    B3 = lie_bracket(Lb, B1)
    rows = [[B.u_coefficient(l) for l in range(3)] for B in (B1, B2, B3)]
    return (rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]))
