"""Finite flag sets Y_s(Z/p^r) and the contraction semigroup.

A point of Y_s(Z/p^r) for a parabolic Q is a coset g Q^+ with g in the
depth-s parahoric, stored in the canonical form (uMinus, levi): uMinus is
block-lower unipotent for Q with entries divisible by p^s, and levi lies
in the Levi M' = M cap Sp4 of Q.  The set is a product, so it is stored
as two lists and points are produced lazily.

The semigroup D of dominant central torus elements acts by
d . (g Q^+) = g_1 Q^+ where d g d^-1 = g_1 mod Q^+; on the canonical form
this rescales uMinus and leaves levi alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg as la
from .coefficients import valuation
from .errors import HypothesisViolated, NonIntegralConjugate, ScaleRefused
from .roots import BOREL, KLINGEN, POSITIVE_ROOTS, SIEGEL, ParabolicType, parabolic
from .symplectic import J, block_index, block_lu, lower_positions, root_element

EXHAUSTIVE_PRIMES = (3, 5)
MAX_LEVEL = 2
MAX_POINTS = 300_000


# ------------------------------------------------------------- semigroup


@dataclass(frozen=True, repr=False)
class SemigroupElement:
    """tau(p^a1, p^a2; p^b) = diag(p^a1, p^a2, p^(b-a1), p^(b-a2))."""

    parabolic: ParabolicType
    a1: int
    a2: int
    b: int

    def __post_init__(self):
        a1, a2, b = self.a1, self.a2, self.b
        tag = self.parabolic.tag
        if tag == "Siegel":
            ok = a1 == a2 and 0 <= 2 * a1 <= b
        elif tag == "Klingen":
            ok = 2 * a2 == b and 0 <= a1 <= a2
        elif tag == "Borel":
            ok = 0 <= a1 <= a2 and 2 * a2 <= b
        else:
            ok = False
        if not ok:
            raise HypothesisViolated(f"{self.exponents} is outside the cone D for {self.parabolic.label}")

    @property
    def exponents(self) -> tuple[int, int, int, int]:
        return (self.a1, self.a2, self.b - self.a1, self.b - self.a2)

    def matrix(self, p: int) -> tuple:
        e = self.exponents
        return tuple(tuple(p ** e[i] if i == j else 0 for j in range(4)) for i in range(4))

    def root_valuation(self, root) -> int:
        """val alpha(d) for the root alpha = (m1, m2)."""
        m1, m2 = root.coords
        return m1 * self.a1 + m2 * self.a2 - (m1 + m2) * self.b // 2

    def __mul__(self, other: "SemigroupElement") -> "SemigroupElement":
        if other.parabolic != self.parabolic:
            raise HypothesisViolated("semigroup elements for different parabolics")
        return SemigroupElement(self.parabolic, self.a1 + other.a1, self.a2 + other.a2, self.b + other.b)

    def __pow__(self, n: int) -> "SemigroupElement":
        return SemigroupElement(self.parabolic, n * self.a1, n * self.a2, n * self.b)

    def __str__(self) -> str:
        return f"tau(p^{self.a1}, p^{self.a2}; p^{self.b})"

    __repr__ = __str__


def siegel_element(a: int, b: int) -> SemigroupElement:
    """mu(p^a 1_2; p^b)."""
    return SemigroupElement(SIEGEL, a, a, b)


def klingen_element(a: int, b: int) -> SemigroupElement:
    """mu*(p^a, p^b 1_2)."""
    return SemigroupElement(KLINGEN, a, b, 2 * b)


def borel_element(a1: int, a2: int, b: int) -> SemigroupElement:
    return SemigroupElement(BOREL, a1, a2, b)


def standard_element(Q, which: int | None = None) -> SemigroupElement:
    """d_1, d_2 or d_3 (as an element of the cone for Q).

    By default the element attached to Q itself: d_1 for Siegel, d_2 for
    Klingen, d_3 = d_1 d_2 for Borel.
    """
    Q = parabolic(Q)
    if which is None:
        which = {"Siegel": 1, "Klingen": 2, "Borel": 3}[Q.tag]
    exps = {1: (0, 0, 1), 2: (0, 1, 2), 3: (0, 1, 3)}[which]
    return SemigroupElement(Q, *exps)


# ------------------------------------------------------------ Levi parts


def _units(n: int, p: int) -> list[int]:
    return [x for x in range(n) if x % p]


def _gl2(n: int, p: int) -> list[tuple]:
    return [m for m in itertools.product(range(n), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p]


def levi_matrix(Q: ParabolicType, key, n: int) -> tuple:
    """The 4x4 matrix of the Levi element with canonical key ``key``."""
    m = [[0] * 4 for _ in range(4)]
    if Q.tag == "Borel":
        t1, t2 = key
        m[0][0], m[1][1] = t1, t2
        m[2][2], m[3][3] = pow(t1, -1, n), pow(t2, -1, n)
    elif Q.tag == "Siegel":
        a, b, c, d = key
        di = pow((a * d - b * c) % n, -1, n)
        m[0][0], m[0][1], m[1][0], m[1][1] = a, b, c, d
        # A^{-t}
        m[2][2], m[2][3], m[3][2], m[3][3] = d * di % n, -c * di % n, -b * di % n, a * di % n
    elif Q.tag == "Klingen":
        a, (b11, b12, b21, b22) = key
        m[0][0], m[2][2] = a, pow(a, -1, n)
        m[1][1], m[1][3], m[3][1], m[3][3] = b11, b12, b21, b22
    else:
        raise HypothesisViolated(f"no flag model for {Q.label}")
    return la.as_matrix(m)


def levi_key(Q: ParabolicType, m) -> tuple:
    if Q.tag == "Borel":
        return (m[0][0], m[1][1])
    if Q.tag == "Siegel":
        return (m[0][0], m[0][1], m[1][0], m[1][1])
    return (m[0][0], (m[1][1], m[1][3], m[3][1], m[3][3]))


def levi_cocenter(Q: ParabolicType, key, n: int):
    """Image of the Levi element in M'/M^1: (t1, t2), det A, or a."""
    if Q.tag == "Borel":
        return tuple(key)
    if Q.tag == "Siegel":
        a, b, c, d = key
        return (a * d - b * c) % n
    return key[0]


def levi_from_cocenter(Q: ParabolicType, c, n: int) -> tuple:
    """A Levi key with the given cocenter (section of the quotient map)."""
    if Q.tag == "Borel":
        return tuple(c)
    if Q.tag == "Siegel":
        return (c, 0, 0, 1)
    return (c, (1, 0, 0, 1))


def levi_elements(Q: ParabolicType, p: int, r: int) -> list:
    n = p**r
    if Q.tag == "Borel":
        u = _units(n, p)
        return [(a, b) for a in u for b in u]
    if Q.tag == "Siegel":
        return _gl2(n, p)
    if Q.tag == "Klingen":
        sl2 = [m for m in itertools.product(range(n), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % n == 1]
        return [(a, b) for a in _units(n, p) for b in sl2]
    raise HypothesisViolated(f"no flag model for {Q.label}")


def cocenters(Q: ParabolicType, p: int, r: int) -> list:
    n = p**r
    u = _units(n, p)
    if Q.tag == "Borel":
        return [(a, b) for a in u for b in u]
    return u


def levi_size(Q: ParabolicType, p: int, r: int) -> int:
    """|M'(Z/p^r)| in closed form."""
    phi = p ** (r - 1) * (p - 1)
    if Q.tag == "Borel":
        return phi**2
    gl2 = p ** (4 * (r - 1)) * (p**2 - 1) * (p**2 - p)
    # GL2 for Siegel; GL1 x SL2 for Klingen, which has the same order
    return gl2


# ----------------------------------------------------------- lower parts


def _lower_roots(Q: ParabolicType):
    return [-a for a in POSITIVE_ROOTS if a in Q.unipotent_roots]


def lower_elements(Q: ParabolicType, p: int, r: int, s: int) -> list[tuple]:
    """All uMinus in Q^-(p^s Z/p^r), as 4x4 matrices mod p^r."""
    n = p**r
    roots = _lower_roots(Q)
    out = []
    for params in itertools.product(range(0, n, p**s), repeat=len(roots)):
        m = la.identity()
        for a, c in zip(roots, params):
            m = la.matmul(m, root_element(a, c, n), n)
        out.append(m)
    return out


def lower_key(Q: ParabolicType, m) -> tuple:
    return tuple(m[i][j] for i, j in lower_positions(Q))


def expected_size(Q, p: int, r: int, s: int) -> int:
    Q = parabolic(Q)
    return p ** ((r - s) * len(Q.unipotent_roots)) * levi_size(Q, p, r)


# ------------------------------------------------------------- flag sets


@dataclass(frozen=True)
class FlagPoint:
    parabolic: ParabolicType
    u_minus: tuple
    levi: tuple
    modulus: int

    @property
    def matrix(self) -> tuple:
        return la.matmul(self.u_minus, levi_matrix(self.parabolic, self.levi, self.modulus), self.modulus)

    @property
    def x_point(self) -> tuple:
        """Projection to X: forget the Levi part."""
        return lower_key(self.parabolic, self.u_minus)

    def depth(self, p: int):
        vals = [valuation(x, p) for x in self.x_point if x]
        return min(vals) if vals else float("inf")


def check_scale(p: int, r: int, npoints: int | None = None) -> None:
    if p not in EXHAUSTIVE_PRIMES or r > MAX_LEVEL:
        raise ScaleRefused(f"exhaustive mode needs p in {EXHAUSTIVE_PRIMES} and r <= {MAX_LEVEL}")
    if npoints is not None and npoints > MAX_POINTS:
        raise ScaleRefused(f"{npoints} points exceeds the exhaustive budget {MAX_POINTS}")


class FlagSet:
    """Y_s(Z/p^r) for one parabolic, as the product uMinus x M'."""

    def __init__(self, Q, p: int, r: int, s: int):
        Q = parabolic(Q)
        if not 1 <= s <= r:
            raise HypothesisViolated("need 1 <= s <= r")
        self.parabolic, self.p, self.r, self.s = Q, p, r, s
        self.modulus = p**r

    @cached_property
    def lowers(self) -> list[tuple]:
        return lower_elements(self.parabolic, self.p, self.r, self.s)

    @cached_property
    def levis(self) -> list:
        return levi_elements(self.parabolic, self.p, self.r)

    @cached_property
    def lower_index(self) -> dict:
        return {lower_key(self.parabolic, m): i for i, m in enumerate(self.lowers)}

    @cached_property
    def levi_index(self) -> dict:
        return {k: i for i, k in enumerate(self.levis)}

    def __len__(self) -> int:
        return expected_size(self.parabolic, self.p, self.r, self.s)

    def __iter__(self):
        for L in self.lowers:
            for m in self.levis:
                yield FlagPoint(self.parabolic, L, m, self.modulus)

    def index(self, y: FlagPoint) -> int:
        return self.lower_index[y.x_point] * len(self.levis) + self.levi_index[y.levi]

    @property
    def marked_point(self) -> FlagPoint:
        return FlagPoint(self.parabolic, la.identity(), self.levis[0], self.modulus)

    def in_marked_fiber(self, y: FlagPoint) -> bool:
        return not any(y.x_point)

    def count_distinct(self) -> int:
        """Enumerate and count distinct canonical pairs."""
        return len({(y.x_point, y.levi) for y in self})


def enumerate_flags(Q, p: int, r: int, s: int, counting_only: bool = False) -> FlagSet:
    """Y_s(Z/p^r) for Q.  Refuses exhaustive work beyond desk scale."""
    fs = FlagSet(Q, p, r, s)
    if not counting_only:
        check_scale(p, r, len(fs))
    return fs


# ----------------------------------------------------------------- action


def _inv(n: int):
    return lambda x: pow(int(x) % n, -1, n)


def conjugate_lower(d: SemigroupElement, u_minus, p: int, n: int) -> tuple:
    """d uMinus d^-1 reduced mod n; raises if some entry is not integral."""
    e = d.exponents
    out = [list(row) for row in u_minus]
    for i in range(4):
        for j in range(4):
            if i == j or not u_minus[i][j]:
                continue
            x = Fraction(u_minus[i][j]) * Fraction(p) ** (e[i] - e[j])
            if x.denominator != 1:
                raise NonIntegralConjugate(f"entry ({i + 1},{j + 1}) of d g d^-1 is {x}")
            out[i][j] = int(x) % n
    return la.as_matrix(out)


def act(d: SemigroupElement, y: FlagPoint, p: int) -> FlagPoint:
    """d . y.  d is central in the Levi, so only uMinus moves."""
    if d.parabolic != y.parabolic:
        raise HypothesisViolated("semigroup element and point have different parabolics")
    return FlagPoint(y.parabolic, conjugate_lower(d, y.u_minus, p, y.modulus), y.levi, y.modulus)


def left_translate(g, y: FlagPoint) -> tuple[FlagPoint, tuple]:
    """g . y for g in the parahoric (mod p^r).

    Returns the new point and the Levi factor D of the block LU split
    g uMinus = L' D N, so that g . (uMinus, m) = (L', D m).
    """
    Q, n = y.parabolic, y.modulus
    L2, U = block_lu(la.matmul(g, y.u_minus, n), Q, _inv(n), n)
    D = _levi_part(Q, U)
    m = la.matmul(D, levi_matrix(Q, y.levi, n), n)
    return FlagPoint(Q, L2, levi_key(Q, m), n), D


def _levi_part(Q: ParabolicType, U) -> tuple:
    bi = block_index(Q)
    return tuple(tuple(U[i][j] if bi[i + 1] == bi[j + 1] else 0 for j in range(4)) for i in range(4))


def right_translate(y: FlagPoint, h) -> FlagPoint:
    """y . h for h in M'(Z/p^r) (a Levi key)."""
    Q, n = y.parabolic, y.modulus
    m = la.matmul(levi_matrix(Q, y.levi, n), levi_matrix(Q, h, n), n)
    return FlagPoint(Q, y.u_minus, levi_key(Q, m), n)


# ------------------------------------------------------------ contraction


@dataclass(frozen=True)
class ContractionReport:
    parameters: dict
    counts: dict
    passed: bool
    witnesses: list
    root_valuations: dict

    def as_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "counts": self.counts,
            "pass": self.passed,
            "witnesses": self.witnesses,
            "root_valuations": self.root_valuations,
        }


def contraction_report(Q, p: int, r: int, s: int, d: SemigroupElement | None = None) -> ContractionReport:
    """Check that d^(r-s) sends every point of Y_s(Z/p^r) to the marked fiber."""
    Q = parabolic(Q)
    d = d or standard_element(Q)
    fs = enumerate_flags(Q, p, r, s)
    dn = d ** (r - s)
    vals = {a.name: d.root_valuation(a) for a in POSITIVE_ROOTS if a in Q.unipotent_roots}
    # each x-point is shared by all Levi parts; act on the lower part once
    # per point anyway so that the check is literally exhaustive
    cache = {}
    bad = []
    total = 0
    for y in fs:
        key = y.x_point
        if key not in cache:
            cache[key] = act(dn, y, p)
        z = FlagPoint(Q, cache[key].u_minus, y.levi, y.modulus)
        total += 1
        if not fs.in_marked_fiber(z):
            bad.append({"point": [list(key), str(y.levi)]})
    return ContractionReport(
        parameters={"parabolic": Q.label, "p": p, "r": r, "s": s, "d": str(d), "power": r - s},
        counts={"points": total, "lower_parts": len(fs.lowers), "contracted": total - len(bad)},
        passed=not bad,
        witnesses=bad[:10],
        root_valuations=vals,
    )


# ---------------------------------------------------- Siegel lagrangians


def symplectic_pairing(v, w, n: int | None = None) -> int:
    s = sum(v[i] * J[i][j] * w[j] for i in range(4) for j in range(4))
    return s % n if n else s


def lagrangian_pair(y: FlagPoint) -> tuple:
    """(E, phi) for a Siegel point: E is the span of the first two columns
    of g, given by its canonical basis (I; C), and phi sends the columns of
    g to the standard basis; phi is recorded by the matrix A."""
    if y.parabolic.tag != "Siegel":
        raise HypothesisViolated("lagrangian pairs are defined for the Siegel type")
    C = tuple(tuple(y.u_minus[i][j] for j in range(2)) for i in (2, 3))
    return C, y.levi


__all__ = [
    "SemigroupElement", "siegel_element", "klingen_element", "borel_element", "standard_element",
    "FlagPoint", "FlagSet", "enumerate_flags", "expected_size", "act", "left_translate",
    "right_translate", "contraction_report", "ContractionReport", "lagrangian_pair",
    "symplectic_pairing", "levi_size", "levi_cocenter", "levi_from_cocenter", "cocenters",
    "levi_matrix", "levi_key", "lower_key", "check_scale",
]
