import random
from fractions import Fraction

import pytest

from crforge.manifold import DefiningEquations, transform_defining
from crforge.models import TAGS, model
from crforge.normalize import (NotInClass, assert_normal_form,
                               hermitian_congruence_normalize, normalize,
                               quadratic_form)
from crforge.scalars import QC, conj, is_zero
from crforge.series import TruncatedSeries, VarSignature

from helpers import perturbed_model, random_quadratic_bihol


def test_models_are_fixed_points():
    for tag in TAGS:
        M = model(tag, order=8 if tag == "III2" else 6)
        assert assert_normal_form(M, tag).ok
        res = normalize(M, tag)
        assert res.report.ok
        # exact inputs whose roots are trivial stay exact
        assert not res.germ.is_float_mode()


def test_trace_replay_matches_result():
    rng = random.Random(44)
    M = perturbed_model("II", 6, rng)
    res = normalize(M, "II", tol=1e-7)
    replay = res.trace.replay(tol=1e-7)
    for a, b in zip(res.germ.phi, replay.phi):
        assert a.residual_order(b, 1e-9) > 6


def _congr_apply(H, P):
    out = [[QC(0), QC(0)], [QC(0), QC(0)]]
    for p in range(2):
        for q in range(2):
            acc = QC(0)
            for k in range(2):
                for l in range(2):
                    acc = acc + P[k][p] * H[k][l] * conj(P[l][q])
            out[p][q] = acc
    return out


def rand_hermitian(rng):
    a = QC(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    c = QC(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    b = QC(Fraction(rng.randint(-3, 3), 2), Fraction(rng.randint(-3, 3), 2))
    return [[a, b], [conj(b), c]]


def test_hermitian_congruence_random():
    rng = random.Random(15)
    for _ in range(60):
        H = rand_hermitian(rng)
        P, d = hermitian_congruence_normalize(H)
        got = _congr_apply(H, P)
        for i in range(2):
            for j in range(2):
                want = d[i] if i == j else 0
                assert is_zero(got[i][j] - QC(want), 1e-9), (H, P, d, got)
        assert d in ((1, 1), (1, -1), (-1, -1), (1, 0), (-1, 0), (0, 0))
        # nonzero entries first, +1 before -1 among mixed pairs
        if d[0] == 0:
            assert d[1] == 0


def test_round_trip_each_class():
    rng = random.Random(99)
    expectations = {
        "I": {"a": 1},
        "II": {"a1": 1, "alpha2": 1},
        "III1": {"a1": 1, "alpha2": 1, "alpha3": QC(0, 1)},
        "III2": {"a1": 1, "alpha2": 1, "beta3": 2, "c3": 3},
        "IV1": {"a": 1},
        "IV2": {"beta": QC(Fraction(1, 2))},
    }
    for tag in TAGS:
        M = perturbed_model(tag, 6, rng)
        res = normalize(M, tag, tol=1e-7)
        assert res.report.ok, (tag, res.report.violations)
        for key, want in expectations[tag].items():
            got = res.report.witnesses[key]
            assert abs(complex(got) - complex(QC(want) if not isinstance(want, QC) else want)) < 1e-7


def test_not_in_class_conditions():
    # flat germ fails class I on the Levi coefficient
    sig = VarSignature.real_vars(1, 1)
    M = DefiningEquations(1, 1, (TruncatedSeries(
        sig, {(2, 2, 0): QC(1)}, 6),), 6)
    with pytest.raises(NotInClass) as err:
        normalize(M, "I")
    assert err.value.condition == "levi_coefficient_zero"

    # sphere-like germ fails IV2 on the Freeman twist
    sig2 = VarSignature.real_vars(2, 1)
    M2 = DefiningEquations(2, 1, (TruncatedSeries(
        sig2, {(1, 0, 1, 0, 0): QC(1)}, 6),), 6)
    with pytest.raises(NotInClass) as err:
        normalize(M2, "IV2")
    assert err.value.condition == "freeman_degenerate"

    # duplicated third component kills the III1 twist determinant
    m = model("III1")
    M3 = DefiningEquations(1, 3, (m.phi[0], m.phi[1], m.phi[1]), 6)
    with pytest.raises(NotInClass) as err:
        normalize(M3, "III1")
    assert err.value.condition == "cubic_determinant_zero"

    # a IV1 germ is rejected by the IV2 pipeline on the Levi determinant
    with pytest.raises(NotInClass) as err:
        normalize(model("IV1"), "IV2")
    assert err.value.condition == "levi_determinant_nonzero"

    # and vice versa on the Levi rank
    with pytest.raises(NotInClass) as err:
        normalize(model("IV2"), "IV1")
    assert err.value.condition == "levi_rank"


def test_sign_recovery_class_IV1():
    rng = random.Random(5)
    for sign in (1, -1):
        M = perturbed_model("IV1", 6, rng) if sign == 1 else \
            transform_defining(model("IV1", sign=-1).to_float(),
                               random_quadratic_bihol(2, 1, 6, rng))
        res = normalize(M, "IV1", tol=1e-7)
        assert res.report.ok
        assert abs(complex(res.report.witnesses["s"]) - sign) < 1e-7


def test_negative_levi_flip_class_I():
    sig = VarSignature.real_vars(1, 1)
    M = DefiningEquations(1, 1, (TruncatedSeries(
        sig, {(1, 1, 0): QC(-3)}, 6),), 6)
    res = normalize(M, "I")
    assert res.report.ok
    assert any("flip" in d for _, d in res.trace.steps)


def test_float_switch_is_noted():
    sig = VarSignature.real_vars(1, 1)
    M = DefiningEquations(1, 1, (TruncatedSeries(
        sig, {(1, 1, 0): QC(2)}, 6),), 6)
    res = normalize(M, "I")
    assert res.report.ok
    assert res.germ.is_float_mode()
    assert res.trace.notes


def test_quadratic_form_reader():
    H = quadratic_form(model("IV2"))
    assert H[0][0] == QC(1) and H[1][1] == QC(0)
    assert H[0][1] == QC(0) and H[1][0] == QC(0)
