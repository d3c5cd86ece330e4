"""Constructive Iwahori-Bruhat decomposition over Q_p.

Given u in U_B(K) and w, ``bruhat_decompose`` walks the reduced word of w
and returns w' together with a certificate (i, b) such that

    u * lift(w) = i * lift(w') * b,    i in I (Iwahori),  b in B(K).

Each step multiplies by one simple lift and applies the three-way split
for a simple root a: writing the current Borel factor as t u_a(c) u'' the
step produces u_-a(x); the resulting root element either lies in I (it is
absorbed and the word grows) or its inverse-parameter partner from the
SL2 identity u_-b(-1/y) u_b(y) in n_b B does (the word does not grow).
Arithmetic is exact; the precision budget is an input-validation bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .coefficients import is_integral, valuation
from .errors import HypothesisViolated, PrecisionExhausted
from .roots import (
    BOREL,
    IDENTITY,
    POSITIVE_ROOTS,
    SIMPLE_ROOTS,
    Root,
    WeylElement,
    bruhat_leq,
    from_word,
)
from .symplectic import (
    ROOT_POSITIONS,
    lower_positions,
    root_coordinate,
    root_element,
    simple_lift,
    weyl_lift,
)

_LOWER = lower_positions(BOREL)


def upper_unipotent(params) -> tuple:
    """u_{a1}(c1) u_{a2}(c2) u_{a1+a2}(c3) u_{2a1+a2}(c4)."""
    m = la.identity()
    for a, c in zip(POSITIVE_ROOTS, params):
        m = la.matmul(m, root_element(a, Fraction(c)))
    return m


def root_coordinates(u, order) -> dict:
    """Coordinates c with u = prod_{a in order} u_a(c_a), for any order of
    the four positive roots; solved by height (the simple-root entries are
    read off directly, then a1+a2 from entry (1,4), then 2a1+a2 from (1,3))."""
    c = {a: Fraction(0) for a in POSITIVE_ROOTS}
    c[POSITIVE_ROOTS[0]] = Fraction(u[0][1])
    c[POSITIVE_ROOTS[1]] = Fraction(u[1][3])

    def build():
        m = la.identity()
        for a in order:
            m = la.matmul(m, root_element(a, c[a]))
        return m

    c[POSITIVE_ROOTS[2]] = Fraction(u[0][3]) - build()[0][3]
    c[POSITIVE_ROOTS[3]] = Fraction(u[0][2]) - build()[0][2]
    if build() != la.to_fractions(u):
        raise ValueError("matrix is not upper unipotent in U_B")
    return c


def in_borel(b) -> bool:
    return all(b[i][j] == 0 for i, j in _LOWER) and all(b[i][i] != 0 for i in range(4))


def in_iwahori(g, p: int) -> bool:
    if not all(is_integral(x, p) for row in g for x in row):
        return False
    if any(valuation(g[i][j], p) < 1 for i, j in _LOWER):
        return False
    d = Fraction(la.det(g))
    return d != 0 and valuation(d, p) == 0


def _diag_inv(t):
    return tuple(tuple((1 / Fraction(t[i][i]) if i == j else Fraction(0)) for j in range(4)) for i in range(4))


def _diag(m):
    return tuple(tuple((m[i][i] if i == j else Fraction(0)) for j in range(4)) for i in range(4))


def _root_of_element(y) -> Root | None:
    """The root whose root group contains the unipotent y (or None)."""
    for a, pos in _ROOT_SUPPORT.items():
        off = {(i, j) for i in range(4) for j in range(4) if i != j and y[i][j] != 0}
        if off and off <= pos:
            return a
    return None


_ROOT_SUPPORT = {a: {(i - 1, j - 1) for i, j, _ in pos} for a, pos in ROOT_POSITIONS.items()}


@dataclass(frozen=True)
class BruhatCertificate:
    w: WeylElement
    w_prime: WeylElement
    u: tuple
    i: tuple
    b: tuple
    branches: tuple = field(default=())

    def verify(self, p: int) -> bool:
        lhs = la.matmul(self.u, weyl_lift(self.w))
        rhs = la.matprod(self.i, weyl_lift(self.w_prime), self.b)
        return (
            lhs == rhs
            and in_iwahori(self.i, p)
            and in_borel(self.b)
            and bruhat_leq(self.w_prime, self.w)
        )


def _check_budget(params, p: int, precision: int):
    for c in params:
        c = Fraction(c)
        if c and abs(valuation(c, p)) >= precision:
            raise PrecisionExhausted(
                f"parameter {c} has valuation {valuation(c, p)} at the precision budget {precision}"
            )


def bruhat_decompose(params, w: WeylElement, p: int, precision: int = 8) -> BruhatCertificate:
    _check_budget(params, p, precision)
    u = upper_unipotent(params)
    g0 = la.to_fractions(la.identity())
    wcur = la.identity()
    word: list[int] = []
    b = u
    branches = []
    for k in w.word:
        alpha = SIMPLE_ROOTS[k - 1]
        s = simple_lift(k)
        s_inv = la.transpose(s)
        t = _diag(b)
        u1 = la.matmul(_diag_inv(t), b)
        c = root_coordinate(u1, alpha)
        u2 = la.matmul(root_element(alpha, -c), u1)
        m = la.matprod(s_inv, t, root_element(alpha, c), s)
        t2 = _diag(m)
        x = la.matmul(m, _diag_inv(t2))
        a = root_coordinate(x, -alpha)
        b_new = la.matprod(t2, s_inv, u2, s)
        assert in_borel(b_new)
        ws = la.matmul(wcur, s)
        y = la.matprod(ws, x, la.transpose(ws))
        if a == 0 or in_iwahori(y, p):
            g0 = la.matmul(g0, y)
            wcur = ws
            word.append(k)
            b = b_new
            branches.append("absorb")
            continue
        beta = _root_of_element(y)
        yc = root_coordinate(y, beta)
        for sign in (1, -1):
            xx = root_element(-beta, sign / yc)
            b2 = la.matprod(la.transpose(wcur), root_element(-beta, -sign / yc), y, ws)
            if in_borel(b2):
                break
        else:  # pragma: no cover - the SL2 identity always supplies a sign
            raise AssertionError("no sign makes the rank-one identity work")
        assert in_iwahori(xx, p)
        g0 = la.matmul(g0, xx)
        b = la.matmul(b2, b_new)
        branches.append("flip")
    w_prime = from_word(word)
    tsign = la.matmul(la.transpose(weyl_lift(w_prime)), wcur)
    assert la.is_diagonal(tsign)
    b = la.matmul(tsign, b)
    cert = BruhatCertificate(w, w_prime, u, g0, b, tuple(branches))
    return cert


def cell_split(params, w: WeylElement):
    """u = y x with y in U_w (roots a > 0, w^-1 a < 0) and x in U cap wUw^-1.

    Returns the root coordinates of y and of x.
    """
    u = upper_unipotent(params)
    winv = w.inverse()
    inv = [a for a in POSITIVE_ROOTS if not winv.act_root(a).is_positive()]
    rest = [a for a in POSITIVE_ROOTS if a not in inv]
    c = root_coordinates(u, inv + rest)
    return {a: c[a] for a in inv}, {a: c[a] for a in rest}


def literal_length_drop_hypothesis(params, w: WeylElement, p: int) -> bool:
    """u not in U_B(Z_p) and lift(w)^-1 u lift(w) not in U_B(K)."""
    u = upper_unipotent(params)
    if all(is_integral(x, p) for row in u for x in row):
        return False
    conj = la.matprod(la.transpose(weyl_lift(w)), u, weyl_lift(w))
    return not in_borel(conj)


def cell_length_drop_hypothesis(params, w: WeylElement, p: int) -> bool:
    """The U_w-component of u is not integral."""
    y, _ = cell_split(params, w)
    return not all(is_integral(c, p) for c in y.values())


@dataclass(frozen=True)
class Transition:
    branch: str
    w: WeylElement
    depth: float | int
    certificate: BruhatCertificate | None = None

    @property
    def length_drop(self) -> int:
        return 0 if self.certificate is None else self.certificate.w.length - self.w.length


def weyl_type_transition(w: WeylElement, depth: int, level: int, t_exponents, uplus,
                         p: int, precision: int = 8) -> Transition:
    """One contraction step for a point of Weyl type w and depth ``depth``.

    ``t_exponents`` are (e1, e2, e3, e4) with t = diag(p^e1, ..., p^e4);
    t must be strictly positive on the negative roots (val a(t) > 0 there).
    ``uplus`` are the root coordinates of the upper unipotent factor.
    Branch (a): t u+ t^-1 stays integral, same w and depth + 1 (reported as
    inf once it reaches ``level``).  Branch (b): the conjugate is not
    integral and the new type comes from ``bruhat_decompose``.
    """
    e = tuple(t_exponents)
    for a in POSITIVE_ROOTS:
        i, j, _ = ROOT_POSITIONS[-a][0]
        if e[i - 1] - e[j - 1] <= 0:
            raise HypothesisViolated(f"val {(-a).name}(t) must be positive")
    conj = []
    for a, c in zip(POSITIVE_ROOTS, uplus):
        i, j, _ = ROOT_POSITIONS[a][0]
        conj.append(Fraction(c) * Fraction(p) ** (e[i - 1] - e[j - 1]))
    if all(is_integral(c, p) for c in conj):
        nd = depth + 1
        return Transition("a", w, float("inf") if nd >= level else nd)
    cert = bruhat_decompose(conj, w, p, precision)
    return Transition("b", cert.w_prime, depth, cert)


def random_unipotent(rng, p: int, precision: int = 8) -> list:
    """Four root coordinates m p^k with |k| <= (precision - 1) // 2 and m a
    unit of absolute value at most p^2, each zero with probability 1/5."""
    out = []
    units = [x for x in range(-p * p, p * p + 1) if x % p]
    for _ in range(4):
        if rng.random() < 0.2:
            out.append(Fraction(0))
            continue
        k = rng.randint(-((precision - 1) // 2), (precision - 1) // 2)
        out.append(Fraction(rng.choice(units)) * Fraction(p) ** k)
    return out


def bruhat_sweep(count: int, p: int = 3, precision: int = 8, seed: int = 0) -> dict:
    """Seeded random (u, w) certificates with length-drop statistics.

    The literal hypothesis (u not integral and lift(w)^-1 u lift(w) not
    upper triangular) and the cell hypothesis (the U_w-component of u is
    not integral) are tallied separately, with the first few cases where
    each holds but the length does not drop.
    """
    from .roots import weyl_group

    rng = random.Random(seed)
    stats = {"cases": 0, "verified": 0, "literal_hypothesis": 0, "literal_drop_fails": 0,
             "cell_hypothesis": 0, "cell_drop_fails": 0}
    witnesses = {"literal": [], "cell": []}
    for _ in range(count):
        u = random_unipotent(rng, p, precision)
        w = rng.choice(weyl_group())
        cert = bruhat_decompose(u, w, p, precision)
        drop = cert.w_prime.length < w.length
        stats["cases"] += 1
        stats["verified"] += cert.verify(p)
        for name, test in (("literal", literal_length_drop_hypothesis),
                           ("cell", cell_length_drop_hypothesis)):
            if test(u, w, p):
                stats[f"{name}_hypothesis"] += 1
                if not drop:
                    stats[f"{name}_drop_fails"] += 1
                    if len(witnesses[name]) < 3:
                        witnesses[name].append({"u": [str(c) for c in u], "w": w.name})
    return {"seed": seed, "p": p, "precision": precision, "counts": stats, "witnesses": witnesses}


__all__ = [
    "bruhat_sweep", "upper_unipotent", "root_coordinates", "bruhat_decompose", "BruhatCertificate",
    "cell_split", "literal_length_drop_hypothesis", "cell_length_drop_hypothesis",
    "weyl_type_transition", "Transition", "random_unipotent", "in_iwahori", "in_borel", "IDENTITY",
]
