"""Sparse truncated multivariate formal power series.

A series carries an explicit reliability order: coefficients of total
degree <= order are trusted, everything above is discarded.  Order
bookkeeping follows the usual rules (min for sums, shifted by valuation
for products, decremented by differentiation).

Variables are grouped in three blocks by a :class:`VarSignature`:
``n`` holomorphic variables, ``m`` barred partners and ``c`` transverse
slots.  The same container serves series in (z, zbar, u), purely
holomorphic series in (z, w) and complexified series in (z, zu, wu).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .scalars import Coeff, QC, conj, is_exact, is_zero, to_float

INF = 10 ** 9

MultiIndex = Tuple[int, ...]

# float coefficients this small are arithmetic dust, swept eagerly
_SWEEP = 1e-13


def _int_add(a: int, b: int) -> int:
    return a + b


@dataclass(frozen=True)
class VarSignature:
    """Variable layout: n holomorphic, m barred, c transverse slots."""

    n: int
    m: int
    c: int
    labels: Tuple[str, ...]

    @property
    def nvars(self) -> int:
        return self.n + self.m + self.c

    def bar_partner(self, idx: int) -> int:
        """Index of the barred partner of a paired variable."""
        if self.m != self.n:
            raise ValueError("signature has no bar pairing")
        if idx < self.n:
            return idx + self.n
        if idx < 2 * self.n:
            return idx - self.n
        raise ValueError(f"variable {idx} has no partner")

    @staticmethod
    def real_vars(n: int, c: int) -> "VarSignature":
        labels = tuple(f"z{k+1}" for k in range(n)) \
            + tuple(f"zb{k+1}" for k in range(n)) \
            + tuple(f"u{j+1}" for j in range(c))
        return VarSignature(n, n, c, labels)

    @staticmethod
    def holomorphic(n: int, c: int) -> "VarSignature":
        labels = tuple(f"z{k+1}" for k in range(n)) \
            + tuple(f"w{j+1}" for j in range(c))
        return VarSignature(n, 0, c, labels)

    @staticmethod
    def complexified(n: int, c: int) -> "VarSignature":
        labels = tuple(f"z{k+1}" for k in range(n)) \
            + tuple(f"zu{k+1}" for k in range(n)) \
            + tuple(f"wu{j+1}" for j in range(c))
        return VarSignature(n, n, c, labels)


def _swept(coeffs: Dict[MultiIndex, Coeff], order: int) -> Dict[MultiIndex, Coeff]:
    out = {}
    for mono, val in coeffs.items():
        if sum(mono) > order:
            continue
        if is_exact(val):
            if is_zero(val):
                continue
        elif abs(val) <= _SWEEP:
            continue
        out[mono] = val
    return out


class TruncatedSeries:
    """Sparse polynomial trusted up to a stated total degree."""

    __slots__ = ("sig", "coeffs", "order", "_bydeg")

    def __init__(self, sig: VarSignature, coeffs: Mapping[MultiIndex, Coeff],
                 order: int, _clean: bool = False):
        self.sig = sig
        self.order = order
        self._bydeg = None
        if _clean:
            self.coeffs = dict(coeffs)
        else:
            self.coeffs = _swept(dict(coeffs), order)

    def _sorted_items(self):
        """Items sorted by total degree, with degrees; cached."""
        if self._bydeg is None:
            self._bydeg = sorted(((sum(m), m, v) for m, v in self.coeffs.items()),
                                 key=lambda t: t[0])
        return self._bydeg

    # -- constructors --------------------------------------------------
    @staticmethod
    def zero(sig: VarSignature, order: int) -> "TruncatedSeries":
        return TruncatedSeries(sig, {}, order, _clean=True)

    @staticmethod
    def const(sig: VarSignature, value: Coeff, order: int) -> "TruncatedSeries":
        mono = (0,) * sig.nvars
        return TruncatedSeries(sig, {mono: value}, order)

    @staticmethod
    def variable(sig: VarSignature, idx: int, order: int) -> "TruncatedSeries":
        mono = tuple(1 if i == idx else 0 for i in range(sig.nvars))
        return TruncatedSeries(sig, {mono: QC(1)}, order, _clean=True)

    # -- inspection ----------------------------------------------------
    def coeff(self, mono: MultiIndex) -> Coeff:
        return self.coeffs.get(tuple(mono), QC(0))

    def constant_term(self) -> Coeff:
        return self.coeff((0,) * self.sig.nvars)

    def valuation(self) -> int:
        """Minimal total degree of a stored monomial; INF for zero."""
        if not self.coeffs:
            return INF
        return min(sum(m) for m in self.coeffs)

    def is_zero_series(self, tol: float = 0.0) -> bool:
        return all(is_zero(v, tol) for v in self.coeffs.values())

    def is_float_mode(self) -> bool:
        return any(not is_exact(v) for v in self.coeffs.values())

    def weighted_order(self, weights: Iterable[int]) -> int:
        w = tuple(weights)
        if len(w) != self.sig.nvars:
            raise ValueError("weight vector length mismatch")
        if not self.coeffs:
            return INF
        return min(sum(e * wi for e, wi in zip(m, w)) for m in self.coeffs)

    def support(self):
        return set(self.coeffs)

    # -- ring operations -----------------------------------------------
    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.sig != other.sig:
            raise ValueError("signature mismatch in add")
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for mono, val in other.coeffs.items():
            cur = out.get(mono)
            out[mono] = val if cur is None else cur + val
        return TruncatedSeries(self.sig, out, order)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.sig, {m: -v for m, v in self.coeffs.items()},
                               self.order, _clean=True)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, factor: Coeff) -> "TruncatedSeries":
        if is_zero(factor):
            return TruncatedSeries.zero(self.sig, self.order)
        return TruncatedSeries(self.sig,
                               {m: factor * v for m, v in self.coeffs.items()},
                               self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.sig != other.sig:
            raise ValueError("signature mismatch in mul")
        order = min(self.order + other.valuation(),
                    other.order + self.valuation(), INF)
        return self.mul_capped(other, order)

    def mul_capped(self, other: "TruncatedSeries", cap: int) -> "TruncatedSeries":
        """Product truncated at total degree cap."""
        order = min(cap,
                    self.order + other.valuation(),
                    other.order + self.valuation())
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries.zero(self.sig, order)
        a = self._sorted_items()
        b = other._sorted_items()
        if len(a) > len(b):
            a, b = b, a
        out: Dict[MultiIndex, Coeff] = {}
        b0 = b[0][0]
        for da, ma, va in a:
            if da + b0 > order:
                break
            for db, mb, vb in b:
                if da + db > order:
                    break
                mono = tuple(map(_int_add, ma, mb))
                cur = out.get(mono)
                prod = va * vb
                out[mono] = prod if cur is None else cur + prod
        return TruncatedSeries(self.sig, _swept(out, order), order, _clean=True)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.sig,
                               {m: v for m, v in self.coeffs.items()
                                if sum(m) <= order},
                               order, _clean=True)

    # -- calculus ------------------------------------------------------
    def diff(self, idx: int) -> "TruncatedSeries":
        out = {}
        for mono, val in self.coeffs.items():
            e = mono[idx]
            if e == 0:
                continue
            m2 = mono[:idx] + (e - 1,) + mono[idx + 1:]
            cur = out.get(m2)
            term = val * e
            out[m2] = term if cur is None else cur + term
        return TruncatedSeries(self.sig, out, self.order - 1)

    def compose(self, assignments: Mapping[int, "TruncatedSeries"],
                sig: Optional[VarSignature] = None,
                order: Optional[int] = None) -> "TruncatedSeries":
        """Substitute series (valuation >= 1) for selected variables.

        Unassigned variables map to the same-index variable of the
        target signature.
        """
        if assignments:
            target = sig or next(iter(assignments.values())).sig
        else:
            target = sig or self.sig
        cap = min(self.order,
                  min((f.order for f in assignments.values()), default=INF))
        if order is not None:
            cap = min(cap, order)
        for idx, f in assignments.items():
            if f.sig != target:
                raise ValueError("assignment signature mismatch")
            if f.valuation() < 1:
                raise ValueError(f"assignment for variable {idx} has a constant term")
        subs: Dict[int, TruncatedSeries] = dict(assignments)
        for idx in range(self.sig.nvars):
            if idx not in subs:
                if idx >= target.nvars:
                    raise ValueError("target signature too small for identity mapping")
                subs[idx] = TruncatedSeries.variable(target, idx, cap)
        powers: Dict[Tuple[int, int], TruncatedSeries] = {}

        def power(idx: int, e: int) -> TruncatedSeries:
            key = (idx, e)
            got = powers.get(key)
            if got is None:
                if e == 1:
                    got = subs[idx].truncate(cap)
                else:
                    got = power(idx, e - 1).mul_capped(subs[idx], cap)
                powers[key] = got
            return got

        out: Dict[MultiIndex, Coeff] = {}
        zero_mono = (0,) * target.nvars
        for mono, val in self.coeffs.items():
            if sum(mono) > cap:
                continue
            term: Optional[TruncatedSeries] = None
            for idx, e in enumerate(mono):
                if e == 0:
                    continue
                p = power(idx, e)
                term = p if term is None else term.mul_capped(p, cap)
            if term is None:
                cur = out.get(zero_mono)
                out[zero_mono] = val if cur is None else cur + val
            else:
                for m2, v2 in term.coeffs.items():
                    cur = out.get(m2)
                    prod = val * v2
                    out[m2] = prod if cur is None else cur + prod
        return TruncatedSeries(target, _swept(out, cap), cap, _clean=True)

    def reciprocal(self) -> "TruncatedSeries":
        c0 = self.constant_term()
        if is_zero(c0):
            raise ZeroDivisionError("reciprocal of a series with zero constant term")
        inv0 = QC(1) / c0
        cap = self.order
        one = TruncatedSeries.const(self.sig, QC(1), cap)
        u = one - self.scale(inv0)          # valuation >= 1
        acc = one
        p = one
        for _ in range(cap):
            p = p.mul_capped(u, cap)
            if not p.coeffs:
                break
            acc = acc + p
        return acc.scale(inv0)

    # -- conjugation ---------------------------------------------------
    def conjugate_coeffs(self) -> "TruncatedSeries":
        return TruncatedSeries(self.sig,
                               {m: conj(v) for m, v in self.coeffs.items()},
                               self.order, _clean=True)

    def swap_bar(self) -> "TruncatedSeries":
        """Overall conjugation: conjugate coefficients, swap paired exponents."""
        n = self.sig.n
        if self.sig.m != n:
            raise ValueError("swap_bar needs a paired signature")
        out = {}
        for mono, val in self.coeffs.items():
            m2 = mono[n:2 * n] + mono[:n] + mono[2 * n:]
            out[m2] = conj(val)
        return TruncatedSeries(self.sig, out, self.order, _clean=True)

    # -- mode ----------------------------------------------------------
    def to_float(self) -> "TruncatedSeries":
        return TruncatedSeries(self.sig,
                               {m: to_float(v) for m, v in self.coeffs.items()},
                               self.order)

    # -- comparisons ---------------------------------------------------
    def residual_order(self, other: "TruncatedSeries", tol: float = 0.0) -> int:
        """Smallest total degree where the two differ; INF if none.

        Compared through min(self.order, other.order).
        """
        cap = min(self.order, other.order)
        best = INF
        for mono in set(self.coeffs) | set(other.coeffs):
            d = sum(mono)
            if d > cap or d >= best:
                continue
            delta = self.coeff(mono) - other.coeff(mono)
            if not is_zero(delta, tol):
                best = d
        return best

    def equals(self, other: "TruncatedSeries", tol: float = 0.0) -> bool:
        return self.residual_order(other, tol) == INF

    def leading_order_nonzero(self, tol: float = 0.0) -> int:
        """Minimal degree with a coefficient above tol; INF if none."""
        best = INF
        for mono, val in self.coeffs.items():
            d = sum(mono)
            if d < best and not is_zero(val, tol):
                best = d
        return best

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        body = " + ".join(
            f"{v!r}*{'.'.join(f'{self.sig.labels[i]}^{e}' for i, e in enumerate(m) if e)}"
            if any(m) else f"{v!r}"
            for m, v in terms[:12])
        more = " + ..." if len(terms) > 12 else ""
        return f"<series O({self.order}): {body or '0'}{more}>"
