"""Normalization pipelines to the six elementary normal forms.

Each pipeline is a deterministic sequence of biholomorphic steps
recorded in a :class:`NormalizationTrace`: the composite map replayed
against the input germ reproduces the output.  Pipelines start from an
arbitrary graphed germ (pluriharmonic terms are removed up front) and
raise :class:`NotInClass` with a named condition when a rank or
nondegeneracy requirement fails.

Exact coefficient arithmetic is kept for as long as possible; the
first genuine root extraction (square or cube root of a leading
coefficient) switches the germ to float coefficients, which is noted
on the trace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .frames import class32_determinant, levi_determinant
from .manifold import (Biholomorphism, DefiningEquations, DomainError,
                       compose_bihol, remove_pluriharmonic,
                       transform_defining)
from .models import TAGS
from .scalars import (Coeff, QC, conj, cube_root_dilation, imag_part,
                      is_exact, is_zero, real_part, sqrt_positive)
from .series import INF, TruncatedSeries, VarSignature


class NotInClass(DomainError):
    """The germ fails a named membership condition for the target class."""

    def __init__(self, tag: str, condition: str, message: str):
        super().__init__(condition, message)
        self.tag = tag


@dataclass
class NormalizationTrace:
    initial: DefiningEquations
    steps: List[Tuple[Biholomorphism, str]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def composite(self) -> Biholomorphism:
        if not self.steps:
            from .manifold import identity_bihol
            return identity_bihol(self.initial.n, self.initial.c,
                                  self.initial.order)
        h = self.steps[0][0]
        for step, _ in self.steps[1:]:
            h = compose_bihol(step, h)
        return h

    def replay(self, tol: float = 0.0) -> DefiningEquations:
        M = self.initial
        if any(s.maps[0].is_float_mode() for s, _ in self.steps):
            M = M.to_float()
        for h, _ in self.steps:
            M = transform_defining(M, h, tol)
        return M


@dataclass
class NormalizationResult:
    tag: str
    germ: DefiningEquations
    trace: NormalizationTrace
    report: "NormalFormReport"


@dataclass
class NormalFormReport:
    tag: str
    ok: bool
    witnesses: Dict[str, Coeff]
    violations: List[str]


# -- elementary map builders ------------------------------------------

def _idmaps(n: int, c: int, N: int) -> List[TruncatedSeries]:
    sig = VarSignature.holomorphic(n, c)
    return [TruncatedSeries.variable(sig, i, N) for i in range(n + c)]


def _bihol(n: int, c: int, maps: Sequence[TruncatedSeries], N: int,
           desc: str) -> Biholomorphism:
    return Biholomorphism(n, c, tuple(maps), N, desc)


def _swap_w(n: int, c: int, N: int, j: int, k: int) -> Biholomorphism:
    maps = _idmaps(n, c, N)
    maps[n + j], maps[n + k] = maps[n + k], maps[n + j]
    return _bihol(n, c, maps, N, f"swap w{j+1} and w{k+1}")


def _scale(n: int, c: int, N: int, idx: int, factor: Coeff,
           desc: str) -> Biholomorphism:
    maps = _idmaps(n, c, N)
    maps[idx] = maps[idx].scale(factor)
    return _bihol(n, c, maps, N, desc)


def _w_shear(n: int, c: int, N: int, j: int, l: int, coef: Coeff,
             desc: str) -> Biholomorphism:
    maps = _idmaps(n, c, N)
    maps[n + j] = maps[n + j] - maps[n + l].scale(coef)
    return _bihol(n, c, maps, N, desc)


def _z_poly(n: int, c: int, N: int, k: int,
            extra: Dict[Tuple[int, ...], Coeff], desc: str) -> Biholomorphism:
    """z_k' = z_k + sum extra[mono] * mono over holomorphic variables."""
    maps = _idmaps(n, c, N)
    sig = maps[0].sig
    maps[k] = maps[k] + TruncatedSeries(sig, extra, N)
    return _bihol(n, c, maps, N, desc)


# -- pipeline state ----------------------------------------------------

class _Pipeline:
    def __init__(self, M: DefiningEquations, tol: float):
        self.M0 = M
        self.M = M
        self.tol = tol
        self.trace = NormalizationTrace(M)

    @property
    def N(self) -> int:
        return self.M.order

    def ztol(self) -> float:
        return self.tol if self.M.is_float_mode() else 0.0

    def remove_pluriharmonic(self) -> None:
        self.M, h = remove_pluriharmonic(self.M, self.tol)
        self.trace.steps.append((h, "pluriharmonic removal"))

    def apply(self, h: Biholomorphism, desc: str) -> None:
        if (not self.M.is_float_mode()
                and any(m.is_float_mode() for m in h.maps)):
            self.M = self.M.to_float()
            self.trace.notes.append(
                f"switched to float coefficients before: {desc}")
        self.M = transform_defining(self.M, h, self.tol)
        self.trace.steps.append((h, desc))

    def coeff(self, j: int, mono: Tuple[int, ...]) -> Coeff:
        return self.M.phi[j].coeff(mono)


def _require_real(x: Coeff, tol: float, tag: str, what: str) -> Coeff:
    if not is_zero(imag_part(x), max(tol, 1e-9)):
        raise NotInClass(tag, f"{what}_not_real",
                         f"{what} has a nonreal value {x!r}")
    return real_part(x)


def _positive_flip(p: _Pipeline, tag: str, a: Coeff, j: int) -> Coeff:
    """Flip w_{j+1} if the leading coefficient is negative; return it >0."""
    a = _require_real(a, p.tol, tag, "levi_coefficient")
    if complex(a).real < 0:
        p.apply(_scale(p.M.n, p.M.c, p.N, p.M.n + j, QC(-1),
                       f"flip w{j+1} sign"), f"flip w{j+1} sign")
        a = -a
    return a


# -- monomial helpers (n = 1 layouts) ----------------------------------

def _m1(c: int, a: int, b: int, *u: int) -> Tuple[int, ...]:
    uu = list(u) + [0] * (c - len(u))
    return (a, b, *uu)


def _first_nonzero(vals: Sequence[Coeff], tol: float) -> Optional[int]:
    for i, v in enumerate(vals):
        if not is_zero(v, tol):
            return i
    return None


def _series_vanishes(s: TruncatedSeries, tol: float) -> bool:
    return s.leading_order_nonzero(max(tol, 1e-9) * 100) == INF


# -- codimension >= 1, n = 1 pipelines ---------------------------------

def normalize_class_I(M: DefiningEquations, tol: float = 1e-9
                      ) -> NormalizationResult:
    if M.n != 1 or M.c != 1:
        raise NotInClass("I", "dimensions", "class I needs n=1, c=1")
    p = _Pipeline(M, tol)
    p.remove_pluriharmonic()
    a = p.coeff(0, (1, 1, 0))
    if is_zero(a, max(tol, p.ztol())):
        raise NotInClass("I", "levi_coefficient_zero",
                         "coefficient of z zbar vanishes")
    a = _positive_flip(p, "I", a, 0)
    s = sqrt_positive(a)
    if not (is_exact(s) and s == 1):
        p.apply(_scale(1, 1, p.N, 0, s, "dilate z"), "dilate z by sqrt(a)")
    rep = assert_normal_form(p.M, "I", tol)
    return NormalizationResult("I", p.M, p.trace, rep)


def normalize_class_II(M: DefiningEquations, tol: float = 1e-9
                       ) -> NormalizationResult:
    if M.n != 1 or M.c != 2:
        raise NotInClass("II", "dimensions", "class II needs n=1, c=2")
    p = _Pipeline(M, tol)
    p.remove_pluriharmonic()
    _leading_w_normalization(p, "II")
    _remove_alpha1(p)
    alpha2 = p.coeff(1, _m1(2, 2, 1))
    if is_zero(alpha2, max(tol, p.ztol())):
        raise NotInClass("II", "cubic_coefficient_zero",
                         "coefficient of z^2 zbar in phi_2 vanishes")
    _lambda_dilation(p, alpha2)
    rep = assert_normal_form(p.M, "II", tol)
    return NormalizationResult("II", p.M, p.trace, rep)


def normalize_class_III1(M: DefiningEquations, tol: float = 1e-9
                         ) -> NormalizationResult:
    if M.n != 1 or M.c != 3:
        raise NotInClass("III1", "dimensions", "class III1 needs n=1, c=3")
    p = _Pipeline(M, tol)
    p.remove_pluriharmonic()
    _leading_w_normalization(p, "III1")
    _remove_alpha1(p)
    _order_cubic_pair(p, "III1")
    alpha2 = p.coeff(1, _m1(3, 2, 1))
    _lambda_dilation(p, alpha2)
    alpha3 = p.coeff(2, _m1(3, 2, 1))
    x = real_part(alpha3)
    if not is_zero(x, p.ztol()):
        p.apply(_w_shear(1, 3, p.N, 2, 1, x, "shear w3 by Re(alpha3) w2"),
                "shear w3 by Re(alpha3) w2")
    y = imag_part(p.coeff(2, _m1(3, 2, 1)))
    if is_zero(y, max(tol, p.ztol())):
        raise NotInClass("III1", "cubic_determinant_zero",
                         "twist coefficient Im(alpha3) vanishes")
    p.apply(_scale(1, 3, p.N, 3, QC(1) / y, "scale w3"),
            "scale w3 by the twist coefficient")
    rep = assert_normal_form(p.M, "III1", tol)
    return NormalizationResult("III1", p.M, p.trace, rep)


def normalize_class_III2(M: DefiningEquations, tol: float = 1e-9
                         ) -> NormalizationResult:
    if M.n != 1 or M.c != 3:
        raise NotInClass("III2", "dimensions", "class III2 needs n=1, c=3")
    p = _Pipeline(M, tol)
    p.remove_pluriharmonic()
    det = class32_determinant(p.M, tol)
    if not _series_vanishes(det, tol):
        raise NotInClass("III2", "branch_determinant_nonzero",
                         "codimension-3 branch determinant does not vanish")
    _leading_w_normalization(p, "III2")
    _nine_constant_shear(p)
    _remove_alpha1(p)
    beta1 = p.coeff(0, _m1(3, 3, 1))
    if not is_zero(beta1, p.ztol()):
        p.apply(_z_poly(1, 3, p.N, 0, {(3, 0, 0, 0): beta1},
                        "remove beta1"), "remove z^3 zbar from phi_1")
    _order_cubic_pair(p, "III2")
    alpha2 = p.coeff(1, _m1(3, 2, 1))
    _lambda_dilation(p, alpha2)
    alpha3 = p.coeff(2, _m1(3, 2, 1))
    x = real_part(alpha3)
    if not is_zero(x, p.ztol()):
        p.apply(_w_shear(1, 3, p.N, 2, 1, x, "shear w3 by Re(alpha3) w2"),
                "shear w3 by Re(alpha3) w2")
    y = imag_part(p.coeff(2, _m1(3, 2, 1)))
    if not is_zero(y, max(tol, p.ztol()) * 100):
        raise NotInClass("III2", "cubic_twist_nonzero",
                         "residual twist coefficient is nonzero")
    beta3 = p.coeff(2, _m1(3, 3, 1))
    c3 = p.coeff(2, _m1(3, 2, 2))
    if is_zero(c3, max(tol, p.ztol())):
        raise NotInClass("III2", "quartic_coefficient_zero",
                         "coefficient of z^2 zbar^2 in phi_3 vanishes")
    beta3 = _require_real(beta3, tol, "III2", "quartic_coefficient")
    if is_zero(beta3, max(tol, p.ztol())):
        raise NotInClass("III2", "quartic_coefficient_zero",
                         "coefficient of z^3 zbar in phi_3 vanishes")
    p.apply(_scale(1, 3, p.N, 3, QC(2) / beta3, "scale w3"),
            "scale w3 to fix the quartic pair")
    c2 = p.coeff(1, _m1(3, 2, 2))
    if not is_zero(c2, p.ztol()):
        p.apply(_w_shear(1, 3, p.N, 1, 2, c2 / QC(3),
                         "shear w2 by (c2/3) w3"),
                "shear w2 by (c2/3) w3")
    rep = assert_normal_form(p.M, "III2", tol)
    return NormalizationResult("III2", p.M, p.trace, rep)


def _leading_w_normalization(p: _Pipeline, tag: str) -> None:
    """Make coeff(z zbar) of phi_1 equal 1 and strip it from the others."""
    c = p.M.c
    a = [p.coeff(j, _m1(c, 1, 1)) for j in range(c)]
    j0 = _first_nonzero(a, max(p.tol, p.ztol()))
    if j0 is None:
        raise NotInClass(tag, "levi_coefficients_zero",
                         "all coefficients of z zbar vanish")
    if j0 != 0:
        p.apply(_swap_w(1, c, p.N, 0, j0), f"swap w1 and w{j0+1}")
    a1 = _positive_flip(p, tag, p.coeff(0, _m1(c, 1, 1)), 0)
    s = sqrt_positive(a1)
    if not (is_exact(s) and s == 1):
        p.apply(_scale(1, c, p.N, 0, s, "dilate z"), "dilate z by sqrt(a1)")
    for j in range(1, c):
        aj = p.coeff(j, _m1(c, 1, 1))
        if not is_zero(aj, p.ztol()):
            aj = _require_real(aj, p.tol, tag, "levi_coefficient")
            p.apply(_w_shear(1, c, p.N, j, 0, aj, f"shear w{j+1} by a w1"),
                    f"shear w{j+1} by its z zbar coefficient times w1")


def _remove_alpha1(p: _Pipeline) -> None:
    c = p.M.c
    alpha1 = p.coeff(0, _m1(c, 2, 1))
    if not is_zero(alpha1, p.ztol()):
        mono = tuple([2] + [0] * c)
        p.apply(_z_poly(1, c, p.N, 0, {mono: alpha1}, "remove alpha1"),
                "remove z^2 zbar from phi_1")


def _order_cubic_pair(p: _Pipeline, tag: str) -> None:
    """Ensure coeff(z^2 zbar) of phi_2 is nonzero, swapping w2, w3."""
    c = p.M.c
    a2 = p.coeff(1, _m1(c, 2, 1))
    a3 = p.coeff(2, _m1(c, 2, 1))
    eff = max(p.tol, p.ztol())
    if is_zero(a2, eff):
        if is_zero(a3, eff):
            raise NotInClass(tag, "cubic_rank_zero",
                             "both cubic leading coefficients vanish")
        p.apply(_swap_w(1, c, p.N, 1, 2), "swap w2 and w3")


def _lambda_dilation(p: _Pipeline, alpha2: Coeff) -> None:
    """Make coeff(z^2 zbar) of phi_2 equal 1, keeping phi_1 normalized."""
    c = p.M.c
    if is_exact(alpha2) and alpha2 == 1:
        return
    lam = cube_root_dilation(alpha2)
    r2 = abs(lam) ** 2
    maps = _idmaps(1, c, p.N)
    maps[0] = maps[0].scale(complex(lam))
    maps[1] = maps[1].scale(complex(r2, 0.0))
    p.apply(_bihol(1, c, maps, p.N, "cubic dilation"),
            "dilate z to fix the cubic coefficient, correct w1")


def _nine_constant_shear(p: _Pipeline) -> None:
    """Kill all coeff(z zbar u_l) of every phi_j by a quadratic w-shear."""
    c = p.M.c
    consts = []
    found = False
    for j in range(c):
        row = []
        for l in range(c):
            u = [0] * c
            u[l] = 1
            val = p.coeff(j, (1, 1, *u))
            val = _require_real(val, p.tol, "III2", "transverse_coefficient")
            if not is_zero(val, p.ztol()):
                found = True
            row.append(val)
        consts.append(row)
    if not found:
        return
    # substitution old w_j = w_j' + l' w1'^2 + m' w1' w2' + n' w1' w3',
    # with 2 l' = coeff(z zbar u1), m' = coeff(z zbar u2), n' = coeff(z zbar u3)
    sig = VarSignature.holomorphic(1, c)
    subs = _idmaps(1, c, p.N)
    w = [TruncatedSeries.variable(sig, 1 + l, p.N) for l in range(c)]
    for j in range(c):
        extra = w[0].scale(consts[j][0] / QC(2)) * w[0]
        for l in range(1, c):
            extra = extra + (w[0] * w[l]).scale(consts[j][l])
        subs[1 + j] = subs[1 + j] + extra
    from .manifold import invert_map
    inv = invert_map(subs, p.N, p.tol)
    p.apply(_bihol(1, c, inv, p.N, "quadratic transverse shear"),
            "absorb the z zbar u_l coefficients by a quadratic w-shear")


# -- hypersurfaces in C^3 (n = 2, c = 1) -------------------------------

def quadratic_form(M: DefiningEquations) -> List[List[Coeff]]:
    """Matrix H with H[k][l] = coeff(z_{k+1} zbar_{l+1}) of phi."""
    p = M.phi[0]
    mono = lambda k, l: tuple(int(i == k) for i in range(2)) \
        + tuple(int(i == l) for i in range(2)) + (0,)
    return [[p.coeff(mono(k, l)) for l in range(2)] for k in range(2)]


def _congr(H: List[List[Coeff]], E: List[List[Coeff]]) -> List[List[Coeff]]:
    """E^T H conj(E) for the substitution z = E z'."""
    out = [[QC(0), QC(0)], [QC(0), QC(0)]]
    for pp in range(2):
        for q in range(2):
            acc = QC(0)
            for k in range(2):
                for l in range(2):
                    acc = acc + E[k][pp] * H[k][l] * conj(E[l][q])
            out[pp][q] = acc
    return out


def _mat_mul2(A, B):
    return [[A[0][0] * B[0][0] + A[0][1] * B[1][0],
             A[0][0] * B[0][1] + A[0][1] * B[1][1]],
            [A[1][0] * B[0][0] + A[1][1] * B[1][0],
             A[1][0] * B[0][1] + A[1][1] * B[1][1]]]


def hermitian_congruence_normalize(H: List[List[Coeff]], tol: float = 1e-9
                                   ) -> Tuple[List[List[Coeff]], Tuple[int, int]]:
    """Find P with P^T H conj(P) = diag(d1, d2), d_i in {1, -1, 0}.

    The substitution z = P z' then diagonalizes the quadratic form
    sum H[k][l] z_k zbar_l.  Nonzero entries come first, +1 before -1.
    """
    P = [[QC(1), QC(0)], [QC(0), QC(1)]]
    work = [row[:] for row in H]

    def push(E):
        nonlocal P, work
        P = _mat_mul2(P, E)
        work = _congr(work, E)

    if is_zero(work[0][0], tol):
        if not is_zero(work[1][1], tol):
            push([[QC(0), QC(1)], [QC(1), QC(0)]])
        elif not is_zero(work[1][0], tol):
            t = QC(1) if not is_zero(real_part(work[1][0]), tol) else QC(0, 1)
            push([[QC(1), QC(0)], [t, QC(1)]])
        else:
            return P, (0, 0)
    # eliminate the off-diagonal against the (0,0) pivot
    if not is_zero(work[0][1], tol):
        s = -(work[1][0] / work[0][0])
        push([[QC(1), s], [QC(0), QC(1)]])
    d = []
    scale_cols = [[QC(1), QC(0)], [QC(0), QC(1)]]
    for i in range(2):
        a = real_part(work[i][i])
        if is_zero(a, tol):
            d.append(0)
            continue
        mag = a if complex(a).real > 0 else -a
        s = QC(1) / sqrt_positive(mag)
        scale_cols[i][i] = s
        d.append(1 if complex(a).real > 0 else -1)
    push(scale_cols)
    if (d[0], d[1]) in ((-1, 1), (0, 1), (0, -1)):
        push([[QC(0), QC(1)], [QC(1), QC(0)]])
        d = [d[1], d[0]]
    return P, (d[0], d[1])


def _apply_quadratic_frame(p: _Pipeline, tag: str, want_rank: int
                           ) -> Tuple[int, int]:
    """Diagonalize the quadratic part; returns the inertia pair."""
    H = quadratic_form(p.M)
    P, d = hermitian_congruence_normalize(H, max(p.tol, 1e-12))
    rank = sum(1 for x in d if x != 0)
    if rank != want_rank:
        raise NotInClass(tag, "levi_rank",
                         f"quadratic part has rank {rank}, need {want_rank}")
    negs = sum(1 for x in d if x == -1)
    poss = sum(1 for x in d if x == 1)
    if negs > poss:
        p.apply(_scale(2, 1, p.N, 2, QC(-1), "flip w sign"), "flip w sign")
        H = quadratic_form(p.M)
        P, d = hermitian_congruence_normalize(H, max(p.tol, 1e-12))
    from .manifold import _matrix_inverse
    Pinv = _matrix_inverse(P, max(p.tol, 1e-12))
    sig = VarSignature.holomorphic(2, 1)
    maps = _idmaps(2, 1, p.N)
    z = [TruncatedSeries.variable(sig, k, p.N) for k in range(2)]
    for k in range(2):
        maps[k] = z[0].scale(Pinv[k][0]) + z[1].scale(Pinv[k][1])
    p.apply(_bihol(2, 1, maps, p.N, "diagonalize quadratic part"),
            "linear z-change diagonalizing the quadratic part")
    return d


def normalize_class_IV1(M: DefiningEquations, tol: float = 1e-9
                        ) -> NormalizationResult:
    if M.n != 2 or M.c != 1:
        raise NotInClass("IV1", "dimensions", "class IV1 needs n=2, c=1")
    p = _Pipeline(M, tol)
    p.remove_pluriharmonic()
    d = _apply_quadratic_frame(p, "IV1", want_rank=2)
    rep = assert_normal_form(p.M, "IV1", tol)
    return NormalizationResult("IV1", p.M, p.trace, rep)


def normalize_class_IV2(M: DefiningEquations, tol: float = 1e-9
                        ) -> NormalizationResult:
    if M.n != 2 or M.c != 1:
        raise NotInClass("IV2", "dimensions", "class IV2 needs n=2, c=1")
    p = _Pipeline(M, tol)
    p.remove_pluriharmonic()
    det = levi_determinant(p.M)
    if not _series_vanishes(det, tol):
        raise NotInClass("IV2", "levi_determinant_nonzero",
                         "the Levi determinant does not vanish identically")
    _apply_quadratic_frame(p, "IV2", want_rank=1)
    ph = p.M.phi[0]
    alpha = ph.coeff((2, 0, 1, 0, 0))
    gamma = ph.coeff((1, 1, 1, 0, 0))
    delta = ph.coeff((0, 2, 1, 0, 0))
    extra = {}
    if not is_zero(alpha, p.ztol()):
        extra[(2, 0, 0)] = alpha
    if not is_zero(gamma, p.ztol()):
        extra[(1, 1, 0)] = gamma
    if not is_zero(delta, p.ztol()):
        extra[(0, 2, 0)] = delta
    if extra:
        p.apply(_z_poly(2, 1, p.N, 0, extra, "remove cubic z1-terms"),
                "remove the z1-direction cubic coefficients")
    beta = p.M.phi[0].coeff((0, 1, 2, 0, 0))
    if is_zero(beta, max(tol, p.ztol())):
        raise NotInClass("IV2", "freeman_degenerate",
                         "the twist coefficient of z2 zbar1^2 vanishes")
    mu = QC(2) * beta
    if not (is_exact(mu) and mu == 1):
        p.apply(_scale(2, 1, p.N, 1, mu, "dilate z2"),
                "dilate z2 to set the twist pair to 1/2")
    rep = assert_normal_form(p.M, "IV2", tol)
    return NormalizationResult("IV2", p.M, p.trace, rep)


NORMALIZERS = {
    "I": normalize_class_I,
    "II": normalize_class_II,
    "III1": normalize_class_III1,
    "III2": normalize_class_III2,
    "IV1": normalize_class_IV1,
    "IV2": normalize_class_IV2,
}


def normalize(M: DefiningEquations, tag: str, tol: float = 1e-9
              ) -> NormalizationResult:
    if tag not in NORMALIZERS:
        raise DomainError("tag", f"unknown class tag {tag!r}")
    return NORMALIZERS[tag](M, tol)


# -- normal-form verification ------------------------------------------

def _mixed(mono: Tuple[int, ...], n: int) -> bool:
    return sum(mono[:n]) > 0 and sum(mono[n:2 * n]) > 0


def _check_value(got: Coeff, want, tol: float, what: str,
                 violations: List[str]) -> None:
    if not is_zero(got - want, tol):
        violations.append(f"{what}: expected {want!r}, found {got!r}")


def assert_normal_form(M: DefiningEquations, tag: str, tol: float = 1e-9
                       ) -> NormalFormReport:
    """Structural check that M is in the elementary normal form of tag.

    Leading coefficients must match the model and every remainder
    monomial must lie in the allowed support for the class.
    """
    n, c = M.n, M.c
    v: List[str] = []
    w: Dict[str, Coeff] = {}
    eff = tol if M.is_float_mode() else 0.0

    for j, p in enumerate(M.phi):
        for mono, val in p.coeffs.items():
            if not is_zero(val, eff) and not _mixed(mono, n):
                v.append(f"phi_{j+1}: unmixed monomial {mono}")

    def cf(j, mono):
        return M.phi[j].coeff(mono)

    if tag == "I":
        w["a"] = cf(0, (1, 1, 0))
        _check_value(w["a"], QC(1), tol, "coeff(z zbar)", v)
    elif tag in ("II", "III1", "III2"):
        cdim = {"II": 2, "III1": 3, "III2": 3}[tag]
        if (n, c) != (1, cdim):
            v.append(f"dimensions ({n},{c}) unfit for {tag}")
            return NormalFormReport(tag, False, w, v)
        zz = _m1(c, 1, 1)
        cube_hi = _m1(c, 2, 1)
        cube_lo = _m1(c, 1, 2)
        w["a1"] = cf(0, zz)
        _check_value(w["a1"], QC(1), tol, "phi_1 coeff(z zbar)", v)
        for j in range(1, c):
            _check_value(cf(j, zz), QC(0), tol,
                         f"phi_{j+1} coeff(z zbar)", v)
        _check_value(cf(0, cube_hi), QC(0), tol, "phi_1 coeff(z^2 zbar)", v)
        w["alpha2"] = cf(1, cube_hi)
        _check_value(w["alpha2"], QC(1), tol, "phi_2 coeff(z^2 zbar)", v)
        _check_value(cf(1, cube_lo), QC(1), tol, "phi_2 coeff(z zbar^2)", v)
        if tag == "II":
            pass
        elif tag == "III1":
            w["alpha3"] = cf(2, cube_hi)
            _check_value(w["alpha3"], QC(0, 1), tol,
                         "phi_3 coeff(z^2 zbar)", v)
            _check_value(cf(2, cube_lo), QC(0, -1), tol,
                         "phi_3 coeff(z zbar^2)", v)
        else:
            _check_value(cf(2, cube_hi), QC(0), tol,
                         "phi_3 coeff(z^2 zbar)", v)
            _check_value(cf(0, _m1(c, 3, 1)), QC(0), tol,
                         "phi_1 coeff(z^3 zbar)", v)
            w["c1"] = cf(0, _m1(c, 2, 2))
            if not is_zero(imag_part(w["c1"]), tol):
                v.append("phi_1 coeff(z^2 zbar^2) is not real")
            _check_value(cf(1, _m1(c, 3, 1)), QC(0), tol,
                         "phi_2 coeff(z^3 zbar)", v)
            _check_value(cf(1, _m1(c, 2, 2)), QC(0), tol,
                         "phi_2 coeff(z^2 zbar^2)", v)
            w["beta3"] = cf(2, _m1(c, 3, 1))
            _check_value(w["beta3"], QC(2), tol, "phi_3 coeff(z^3 zbar)", v)
            _check_value(cf(2, _m1(c, 1, 3)), QC(2), tol,
                         "phi_3 coeff(z zbar^3)", v)
            w["c3"] = cf(2, _m1(c, 2, 2))
            _check_value(w["c3"], QC(3), tol, "phi_3 coeff(z^2 zbar^2)", v)
            # transverse coefficients at degree three must be gone
            for j in range(c):
                for l in range(c):
                    u = [0] * c
                    u[l] = 1
                    if not is_zero(cf(j, (1, 1, *u)), tol):
                        v.append(f"phi_{j+1}: residual z zbar u{l+1} term")
            det = class32_determinant(M, tol)
            lead = det.leading_order_nonzero(max(tol, 1e-9) * 100)
            w["branch_determinant_order"] = lead
            if lead != INF:
                v.append("branch determinant does not vanish "
                         f"(leading order {lead})")
    elif tag == "IV1":
        H = quadratic_form(M)
        w["a"] = H[0][0]
        w["s"] = H[1][1]
        _check_value(H[0][0], QC(1), tol, "coeff(z1 zbar1)", v)
        _check_value(H[0][1], QC(0), tol, "coeff(z1 zbar2)", v)
        if is_zero(H[1][1] - QC(1), tol):
            pass
        elif is_zero(H[1][1] + QC(1), tol):
            pass
        else:
            v.append(f"coeff(z2 zbar2) is {H[1][1]!r}, expected +1 or -1")
    elif tag == "IV2":
        H = quadratic_form(M)
        _check_value(H[0][0], QC(1), tol, "coeff(z1 zbar1)", v)
        _check_value(H[0][1], QC(0), tol, "coeff(z1 zbar2)", v)
        _check_value(H[1][1], QC(0), tol, "coeff(z2 zbar2)", v)
        half = QC(1) / QC(2)
        w["beta"] = cf(0, (0, 1, 2, 0, 0))
        _check_value(cf(0, (2, 0, 0, 1, 0)), half, tol,
                     "coeff(z1^2 zbar2)", v)
        _check_value(w["beta"], half, tol, "coeff(z2 zbar1^2)", v)
        for mono, what in (((2, 0, 1, 0, 0), "z1^2 zbar1"),
                           ((1, 1, 1, 0, 0), "z1 z2 zbar1"),
                           ((0, 2, 1, 0, 0), "z2^2 zbar1"),
                           ((1, 1, 0, 1, 0), "z1 z2 zbar2"),
                           ((0, 2, 0, 1, 0), "z2^2 zbar2")):
            _check_value(cf(0, mono), QC(0), tol, f"coeff({what})", v)
        det = levi_determinant(M)
        lead = det.leading_order_nonzero(max(tol, 1e-9) * 100)
        w["levi_determinant_order"] = lead
        if lead != INF:
            v.append(f"Levi determinant does not vanish (leading order {lead})")
    else:
        raise DomainError("tag", f"unknown class tag {tag!r}")

    return NormalFormReport(tag, not v, w, v)
