"""Exact truncated number-basis positivity for the Weyl algebra.

The vacuum functional phi0 kills every nontrivial normal-ordered monomial,
and Gram matrices are taken on the unnormalized ladder basis
e~_j = (a*)^j Omega, so entries G_ij = phi0(a^i x (a*)^j) stay inside
Q(i, sqrt2) with no square roots of factorials.  Positive semidefiniteness
of every truncation is equivalent to positivity of the element in the
ladder representation; a single failing level is a definitive refutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .scalars import Scalar
from .weyl import WeylElement

DEFAULT_REFUTE_LEVEL = 30


def phi0(x: WeylElement) -> Scalar:
    """Vacuum expectation: the coefficient of the identity in normal order."""
    return x.coefficient(0, 0)


@dataclass(frozen=True)
class FockGram:
    """Hermitian Gram matrix of an element at truncation level M."""

    level: int
    entries: list

    def principal(self, m: int) -> "FockGram":
        if m > self.level:
            raise ValueError("cannot grow a truncation")
        return FockGram(m, [row[: m + 1] for row in self.entries[: m + 1]])


def gram(x: WeylElement, level: int) -> FockGram:
    """G_ij = phi0(a^i x (a*)^j) for 0 <= i, j <= level.

    Computed one column at a time: for w = x (a*)^j in normal order,
    phi0(a^i w) picks out i! times the (a*)^i-coefficient of w.
    """
    if level < 0:
        raise ValueError("negative truncation level")
    astar = WeylElement.creator()
    cols = []
    w = x
    for j in range(level + 1):
        if j:
            w = w * astar
        cols.append([w.coefficient(i, 0) * math.factorial(i) for i in range(level + 1)])
    return FockGram(level, [[cols[j][i] for j in range(level + 1)]
                            for i in range(level + 1)])


def psd_truncated(x: WeylElement, level: int) -> bool:
    """Exact PSD test of the level-M Gram matrix of a hermitian element."""
    if not x.is_hermitian():
        raise ValueError("element is not hermitian")
    return linalg.is_psd(gram(x, level).entries)


def aplus_refute(x: WeylElement, max_level: int = DEFAULT_REFUTE_LEVEL):
    """Smallest level with a non-PSD Gram matrix, or None up to max_level.

    A returned level certifies that the element is not positive in the
    ladder representation; None proves nothing beyond the levels tried.
    """
    if not x.is_hermitian():
        raise ValueError("element is not hermitian")
    for m in range(max_level + 1):
        if not linalg.is_psd(gram(x, m).entries):
            return m
    return None
