import random
from fractions import Fraction

import pytest

from crforge.manifold import (Biholomorphism, DefiningEquations, DomainError,
                              check_reality, compose_bihol, identity_bihol,
                              invert_bihol, invert_map, is_mixed_only,
                              remove_pluriharmonic, solve_theta,
                              solve_theta_bar, transform_defining,
                              verify_theta_identities)
from crforge.scalars import QC
from crforge.series import INF, TruncatedSeries, VarSignature

from helpers import COMBOS, random_germ, random_quadratic_bihol


def test_reality_check():
    rng = random.Random(1)
    M = random_germ(1, 2, 6, rng)
    assert check_reality(M)
    sig = M.sig
    bad = DefiningEquations(1, 2, (M.phi[0] + TruncatedSeries(
        sig, {(2, 0, 0, 0): QC(0, 1)}, 6), M.phi[1]), 6)
    assert not check_reality(bad)
    with pytest.raises(DomainError) as err:
        bad.validate()
    assert err.value.condition == "reality"


def test_validate_rejects_linear_terms():
    sig = VarSignature.real_vars(1, 1)
    M = DefiningEquations(1, 1, (TruncatedSeries(
        sig, {(1, 1, 0): QC(1), (0, 0, 1): QC(1)}, 6),), 6)
    with pytest.raises(DomainError) as err:
        M.validate()
    assert err.value.condition == "affine_normalization"


def test_dimension_bound():
    sig = VarSignature.real_vars(2, 2)
    zero = TruncatedSeries.zero(sig, 4)
    M = DefiningEquations(2, 2, (zero, zero), 4)
    with pytest.raises(DomainError) as err:
        M.validate()
    assert err.value.condition == "dimension_bound"


def test_theta_identities_random():
    rng = random.Random(17)
    for n, c in COMBOS:
        for _ in range(4):
            M = random_germ(n, c, 5, rng)
            G = solve_theta(M)
            assert verify_theta_identities(G) == INF


def test_theta_bar_is_swap_bar_of_theta():
    rng = random.Random(23)
    for n, c in COMBOS:
        M = random_germ(n, c, 5, rng)
        G = solve_theta(M)
        Gb = solve_theta_bar(M)
        for j in range(c):
            assert Gb.theta[j].equals(G.theta[j].swap_bar())


def test_theta_solves_graph_equation():
    # substituting wu = u - i phi into Theta must give back u + i phi
    rng = random.Random(4)
    M = random_germ(1, 1, 6, rng)
    G = solve_theta(M)
    sig = M.sig
    iu = QC(0, 1)
    w = TruncatedSeries.variable(sig, 2, 6) + M.phi[0].scale(iu)
    wb = TruncatedSeries.variable(sig, 2, 6) - M.phi[0].scale(iu)
    theta_real = TruncatedSeries(sig, G.theta[0].coeffs, 6, _clean=True)
    got = theta_real.compose({2: wb}, sig=sig)
    assert got.equals(w)


def test_invert_map_round_trip():
    rng = random.Random(31)
    h = random_quadratic_bihol(1, 2, 6, rng, exact=True)
    hinv = invert_bihol(h)
    both = compose_bihol(hinv, h)
    ident = identity_bihol(1, 2, 6)
    for f, g in zip(both.maps, ident.maps):
        assert f.equals(g)


def test_invert_map_rejects_singular():
    sig = VarSignature.holomorphic(1, 1)
    degenerate = (TruncatedSeries(sig, {(2, 0): QC(1)}, 4),
                  TruncatedSeries.variable(sig, 1, 4))
    with pytest.raises(DomainError):
        invert_map(degenerate, 4)


def test_transform_identity():
    rng = random.Random(7)
    M = random_germ(1, 3, 5, rng)
    M2 = transform_defining(M, identity_bihol(1, 3, 5), check=True)
    for a, b in zip(M.phi, M2.phi):
        assert a.equals(b)


def test_transform_functorial():
    rng = random.Random(13)
    M = random_germ(2, 1, 5, rng)
    h1 = random_quadratic_bihol(2, 1, 5, rng, exact=True)
    h2 = random_quadratic_bihol(2, 1, 5, rng, exact=True)
    via_steps = transform_defining(transform_defining(M, h1), h2)
    at_once = transform_defining(M, compose_bihol(h2, h1))
    for a, b in zip(via_steps.phi, at_once.phi):
        assert a.equals(b)


def test_transform_inverse_round_trip():
    rng = random.Random(19)
    M = random_germ(1, 2, 5, rng)
    h = random_quadratic_bihol(1, 2, 5, rng, exact=True)
    Mh = transform_defining(M, h)
    back = transform_defining(Mh, invert_bihol(h))
    for a, b in zip(M.phi, back.phi):
        assert a.equals(b)


def test_transform_preserves_reality_and_checks():
    rng = random.Random(37)
    M = random_germ(1, 1, 6, rng)
    h = random_quadratic_bihol(1, 1, 6, rng, exact=True)
    Mh = transform_defining(M, h, check=True)
    assert check_reality(Mh)


def test_transform_straightens_tilted_tangent():
    # w -> w + 2 z tilts the tangent plane; the image must still be a graph
    sig = VarSignature.holomorphic(1, 1)
    maps = (TruncatedSeries.variable(sig, 0, 6),
            TruncatedSeries.variable(sig, 1, 6)
            + TruncatedSeries.variable(sig, 0, 6).scale(QC(2)))
    h = Biholomorphism(1, 1, maps, 6, "tilt")
    rng = random.Random(41)
    M = random_germ(1, 1, 6, rng)
    Mh = transform_defining(M, h)
    assert check_reality(Mh)
    for p in Mh.phi:
        assert p.valuation() >= 2


def test_remove_pluriharmonic():
    rng = random.Random(29)
    for n, c in COMBOS:
        M = random_germ(n, c, 5, rng)
        out, h = remove_pluriharmonic(M)
        assert is_mixed_only(out)
        replay = transform_defining(M, h)
        for a, b in zip(out.phi, replay.phi):
            assert a.equals(b)


def test_remove_pluriharmonic_keeps_mixed_part_of_pure_graph():
    # an already mixed graph passes through unchanged
    sig = VarSignature.real_vars(1, 1)
    phi = TruncatedSeries(sig, {(1, 1, 0): QC(1)}, 6)
    M = DefiningEquations(1, 1, (phi,), 6)
    out, _ = remove_pluriharmonic(M)
    assert out.phi[0].equals(phi)
