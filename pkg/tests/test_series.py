import random
from fractions import Fraction
from itertools import product

import pytest

from crforge.scalars import QC, conj, is_zero
from crforge.series import INF, TruncatedSeries, VarSignature

from helpers import rand_qc


def rand_series(sig, order, rng, nterms=4, min_deg=0):
    coeffs = {}
    nv = sig.nvars
    for _ in range(nterms):
        mono = [0] * nv
        deg = rng.randint(min_deg, order)
        for _ in range(deg):
            mono[rng.randrange(nv)] += 1
        coeffs[tuple(mono)] = rand_qc(rng)
    return TruncatedSeries(sig, coeffs, order)


def brute_mul(a, b, cap):
    """Dense convolution oracle."""
    out = {}
    for ma, va in a.coeffs.items():
        for mb, vb in b.coeffs.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            if sum(mono) > cap:
                continue
            out[mono] = out.get(mono, QC(0)) + va * vb
    return out


def test_mul_against_dense_oracle():
    rng = random.Random(11)
    sig = VarSignature.real_vars(1, 2)
    for _ in range(25):
        a = rand_series(sig, 6, rng)
        b = rand_series(sig, 6, rng)
        got = a.mul_capped(b, 6)
        want = brute_mul(a, b, 6)
        for mono in set(got.coeffs) | set(want):
            assert got.coeff(mono) == want.get(mono, QC(0))


def test_ring_laws():
    rng = random.Random(5)
    sig = VarSignature.real_vars(2, 1)
    for _ in range(10):
        a = rand_series(sig, 5, rng)
        b = rand_series(sig, 5, rng)
        c = rand_series(sig, 5, rng)
        assert (a + b).equals(b + a)
        assert ((a + b) + c).equals(a + (b + c))
        assert a.mul_capped(b, 5).equals(b.mul_capped(a, 5))
        lhs = a.mul_capped(b + c, 5)
        rhs = a.mul_capped(b, 5) + a.mul_capped(c, 5)
        assert lhs.equals(rhs)
        lhs = a.mul_capped(b, 5).mul_capped(c, 5)
        rhs = a.mul_capped(b.mul_capped(c, 5), 5)
        assert lhs.equals(rhs)


def test_mul_order_rule():
    sig = VarSignature.real_vars(1, 0)
    a = TruncatedSeries(sig, {(1, 1): QC(1)}, 6)  # valuation 2
    b = TruncatedSeries(sig, {(1, 0): QC(1)}, 4)  # valuation 1
    assert (a * b).order == min(6 + 1, 4 + 2)
    z = TruncatedSeries.zero(sig, 4)
    assert (a * z).is_zero_series()


def test_diff():
    sig = VarSignature.real_vars(1, 1)
    a = TruncatedSeries(sig, {(2, 1, 1): QC(3)}, 6)
    d = a.diff(0)
    assert d.order == 5
    assert d.coeff((1, 1, 1)) == QC(6)
    assert a.diff(2).coeff((2, 1, 0)) == QC(3)


def test_compose_identity_and_chain():
    rng = random.Random(3)
    sig = VarSignature.real_vars(1, 1)
    a = rand_series(sig, 6, rng)
    ident = {i: TruncatedSeries.variable(sig, i, 6) for i in range(3)}
    assert a.compose(ident).equals(a)

    # substitute z -> z + z^2 twice equals substituting the composite
    f = TruncatedSeries(sig, {(1, 0, 0): QC(1), (2, 0, 0): QC(1)}, 6)
    once = a.compose({0: f})
    twice = once.compose({0: f})
    ff = f.compose({0: f})
    assert twice.equals(a.compose({0: ff}))


def test_compose_rejects_constant_terms():
    sig = VarSignature.real_vars(1, 0)
    a = TruncatedSeries(sig, {(1, 0): QC(1)}, 4)
    bad = TruncatedSeries(sig, {(0, 0): QC(1)}, 4)
    with pytest.raises(ValueError):
        a.compose({0: bad})


def test_reciprocal():
    rng = random.Random(9)
    sig = VarSignature.real_vars(1, 1)
    for _ in range(10):
        a = rand_series(sig, 6, rng, min_deg=1) \
            + TruncatedSeries.const(sig, QC(1, 1), 6)
        inv = a.reciprocal()
        one = a.mul_capped(inv, 6)
        assert one.equals(TruncatedSeries.const(sig, QC(1), 6))


def test_reciprocal_needs_unit():
    sig = VarSignature.real_vars(1, 0)
    a = TruncatedSeries(sig, {(1, 0): QC(1)}, 4)
    with pytest.raises(ZeroDivisionError):
        a.reciprocal()


def test_swap_bar_involution_and_reality():
    rng = random.Random(21)
    sig = VarSignature.real_vars(2, 1)
    a = rand_series(sig, 5, rng)
    assert a.swap_bar().swap_bar().equals(a)
    b = a + a.swap_bar()           # real by construction
    assert b.swap_bar().equals(b)
    # conjugate_coeffs only touches values
    c = a.conjugate_coeffs()
    assert set(c.coeffs) == set(a.coeffs)
    for mono, val in a.coeffs.items():
        assert c.coeff(mono) == conj(val)


def test_swap_bar_distributes_over_mul():
    rng = random.Random(2)
    sig = VarSignature.real_vars(1, 2)
    a = rand_series(sig, 5, rng)
    b = rand_series(sig, 5, rng)
    lhs = a.mul_capped(b, 5).swap_bar()
    rhs = a.swap_bar().mul_capped(b.swap_bar(), 5)
    assert lhs.equals(rhs)


def test_weighted_order():
    sig = VarSignature.real_vars(1, 3)
    s = TruncatedSeries(sig, {(1, 1, 0, 0, 1): QC(1),
                              (0, 0, 1, 0, 0): QC(2)}, 8)
    # weights: z, zbar at 1; u1, u2, u3 at 2, 3, 4
    assert s.weighted_order((1, 1, 2, 3, 4)) == 2
    assert TruncatedSeries.zero(sig, 8).weighted_order((1, 1, 2, 3, 4)) == INF


def test_truncate_and_valuation():
    sig = VarSignature.real_vars(1, 0)
    s = TruncatedSeries(sig, {(2, 0): QC(1), (3, 1): QC(1)}, 6)
    assert s.valuation() == 2
    t = s.truncate(3)
    assert t.order == 3
    assert (3, 1) not in t.coeffs


def test_float_mode_and_sweeping():
    sig = VarSignature.real_vars(1, 0)
    s = TruncatedSeries(sig, {(1, 0): 0.5 + 0j, (0, 1): 1e-16 + 0j}, 4)
    assert s.is_float_mode()
    assert (0, 1) not in s.coeffs       # dust swept
    assert not TruncatedSeries(sig, {(1, 0): QC(1)}, 4).is_float_mode()
