"""U^-(p^s Z/p^r) built from root vectors, and the contraction by direct
conjugation d^k u d^-k over the rationals."""

from fractions import Fraction
from itertools import product

from .lattice_orbit import BLOCKS, _in_blocks
from .sp4_lie import root_vectors


def lower_group(parabolic, p, r, s):
    """All products of u_a(x) over the roots of U^-, x in p^s Z/p^r."""
    M = p**r
    roots = [X for X in root_vectors().values() if not _in_blocks(X, BLOCKS[parabolic])]
    out = set()
    for xs in product(range(0, M, p**s), repeat=len(roots)):
        m = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
        for X, x in zip(roots, xs):
            u = tuple(tuple(int(i == j) + x * X[i][j] for j in range(4)) for i in range(4))
            m = tuple(tuple(sum(m[i][k] * u[k][j] for k in range(4)) % M for j in range(4))
                      for i in range(4))
        out.add(m)
    return out


def contracted(u, exponents, k, p, r):
    """Is d^k u d^-k integral and congruent to 1 mod p^r?"""
    for i in range(4):
        for j in range(4):
            x = Fraction(u[i][j]) * Fraction(p) ** (k * (exponents[i] - exponents[j]))
            target = int(i == j)
            if x.denominator != 1 or (x.numerator - target) % p**r:
                return False
    return True
