"""Shared generators for randomized tests."""
from __future__ import annotations

import random
from fractions import Fraction

from crforge.manifold import Biholomorphism, DefiningEquations, transform_defining
from crforge.scalars import QC, conj
from crforge.series import TruncatedSeries, VarSignature

COMBOS = [(1, 1), (1, 2), (1, 3), (2, 1)]


def rand_qc(rng: random.Random, den: int = 3) -> QC:
    return QC(Fraction(rng.randint(-2, 2), rng.randint(1, den)),
              Fraction(rng.randint(-2, 2), rng.randint(1, den)))


def random_mono(rng: random.Random, n: int, c: int, order: int):
    """A random multi-index with 2 <= degree <= order."""
    nv = 2 * n + c
    while True:
        mono = [0] * nv
        deg = rng.randint(2, min(order, 4))
        for _ in range(deg):
            mono[rng.randrange(nv)] += 1
        if sum(mono) >= 2:
            return tuple(mono)


def random_germ(n: int, c: int, order: int, rng: random.Random,
                nterms: int = 3, mixed_only: bool = False) -> DefiningEquations:
    """A random graphed germ honoring the coefficient reality feature."""
    sig = VarSignature.real_vars(n, c)
    phi = []
    for _ in range(c):
        coeffs = {}
        for _ in range(nterms):
            mono = random_mono(rng, n, c, order)
            if mixed_only and (sum(mono[:n]) == 0 or sum(mono[n:2 * n]) == 0):
                continue
            val = rand_qc(rng)
            part = mono[n:2 * n] + mono[:n] + mono[2 * n:]
            coeffs[mono] = coeffs.get(mono, QC(0)) + val
            coeffs[part] = coeffs.get(part, QC(0)) + conj(val)
        phi.append(TruncatedSeries(sig, coeffs, order))
    M = DefiningEquations(n, c, tuple(phi), order)
    M.validate()
    return M


def random_quadratic_bihol(n: int, c: int, order: int, rng: random.Random,
                           scale: float = 0.05,
                           exact: bool = False) -> Biholomorphism:
    """Identity plus small random quadratic terms in every component."""
    sig = VarSignature.holomorphic(n, c)
    nv = n + c
    maps = []
    for i in range(nv):
        f = TruncatedSeries.variable(sig, i, order)
        for _ in range(rng.randint(1, 2)):
            mono = [0] * nv
            mono[rng.randrange(nv)] += 1
            mono[rng.randrange(nv)] += 1
            if exact:
                co = QC(Fraction(rng.randint(-2, 2), 40),
                        Fraction(rng.randint(-2, 2), 40))
            else:
                co = complex(rng.uniform(-scale, scale),
                             rng.uniform(-scale, scale))
            f = f + TruncatedSeries(sig, {tuple(mono): co}, order)
        maps.append(f)
    return Biholomorphism(n, c, tuple(maps), order, "random quadratic")


def perturbed_model(tag: str, order: int, rng: random.Random,
                    scale: float = 0.05) -> DefiningEquations:
    from crforge.models import model
    M = model(tag, order=order).to_float()
    h = random_quadratic_bihol(M.n, M.c, order, rng, scale)
    return transform_defining(M, h)
