"""The six elementary normal-form models."""
from __future__ import annotations

from fractions import Fraction

from .manifold import DefiningEquations, DomainError
from .scalars import QC
from .series import TruncatedSeries, VarSignature

TAGS = ("I", "II", "III1", "III2", "IV1", "IV2")


def model(tag: str, order: int = 6, sign: int = 1) -> DefiningEquations:
    """Defining equations of the elementary model for a class tag.

    ``sign`` selects the Levi signature of the rank-two class IV1.
    """
    if tag == "I":
        sig = VarSignature.real_vars(1, 1)
        phi = (TruncatedSeries(sig, {(1, 1, 0): QC(1)}, order),)
        return DefiningEquations(1, 1, phi, order)
    if tag == "II":
        sig = VarSignature.real_vars(1, 2)
        phi = (TruncatedSeries(sig, {(1, 1, 0, 0): QC(1)}, order),
               TruncatedSeries(sig, {(2, 1, 0, 0): QC(1),
                                     (1, 2, 0, 0): QC(1)}, order))
        return DefiningEquations(1, 2, phi, order)
    if tag == "III1":
        sig = VarSignature.real_vars(1, 3)
        phi = (TruncatedSeries(sig, {(1, 1, 0, 0, 0): QC(1)}, order),
               TruncatedSeries(sig, {(2, 1, 0, 0, 0): QC(1),
                                     (1, 2, 0, 0, 0): QC(1)}, order),
               TruncatedSeries(sig, {(2, 1, 0, 0, 0): QC(0, 1),
                                     (1, 2, 0, 0, 0): QC(0, -1)}, order))
        return DefiningEquations(1, 3, phi, order)
    if tag == "III2":
        sig = VarSignature.real_vars(1, 3)
        phi = (TruncatedSeries(sig, {(1, 1, 0, 0, 0): QC(1)}, order),
               TruncatedSeries(sig, {(2, 1, 0, 0, 0): QC(1),
                                     (1, 2, 0, 0, 0): QC(1)}, order),
               TruncatedSeries(sig, {(3, 1, 0, 0, 0): QC(2),
                                     (1, 3, 0, 0, 0): QC(2),
                                     (2, 2, 0, 0, 0): QC(3)}, order))
        return DefiningEquations(1, 3, phi, order)
    if tag == "IV1":
        if sign not in (1, -1):
            raise DomainError("sign", "IV1 sign must be +1 or -1")
        sig = VarSignature.real_vars(2, 1)
        phi = (TruncatedSeries(sig, {(1, 0, 1, 0, 0): QC(1),
                                     (0, 1, 0, 1, 0): QC(sign)}, order),)
        return DefiningEquations(2, 1, phi, order)
    if tag == "IV2":
        sig = VarSignature.real_vars(2, 1)
        half = QC(Fraction(1, 2))
        num = TruncatedSeries(sig, {(1, 0, 1, 0, 0): QC(1),
                                    (2, 0, 0, 1, 0): half,
                                    (0, 1, 2, 0, 0): half}, order)
        den = TruncatedSeries(sig, {(0, 0, 0, 0, 0): QC(1),
                                    (0, 1, 0, 1, 0): QC(-1)}, order)
        phi = (num * den.reciprocal()).truncate(order)
        return DefiningEquations(2, 1, (phi,), order)
    raise DomainError("tag", f"unknown class tag {tag!r}")
