"""GSp4 matrices: similitude certificates, tori, Levi constructors, root
elements, Weyl lifts, parahoric membership and the Iwahori factorization.

The form is J = [[0, 1_2], [-1_2, 0]] and g is a similitude when
g^t J g = nu(g) J.  Root elements (1-based matrix positions, sign):

    a1       E12 - E43        -a1       E21 - E34
    a2       E24              -a2       E42
    a1+a2    E14 + E23        -(a1+a2)  E41 + E32
    2a1+a2   E13              -(2a1+a2) E31

The Weyl lift of a simple reflection is n_a = u_a(1) u_-a(-1) u_a(1); a
general lift multiplies these along the chosen reduced word.  These sign
choices are fixed here once and every other module goes through them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .coefficients import CoefficientContext, Scalar, is_integral, reduce_mod, valuation
from .errors import (
    LevelExceedsPrecision,
    NonInvertibleMultiplier,
    NonSimilitude,
    NotInParahoric,
    SingularBlock,
)
from .roots import (
    A1,
    A2,
    BOREL,
    FULL,
    KLINGEN,
    SIEGEL,
    ParabolicType,
    Root,
    WeylElement,
    parabolic,
)

J = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))

ROOT_POSITIONS: dict[Root, tuple] = {
    Root(1, -1): ((1, 2, 1), (4, 3, -1)),
    Root(0, 2): ((2, 4, 1),),
    Root(1, 1): ((1, 4, 1), (2, 3, 1)),
    Root(2, 0): ((1, 3, 1),),
    Root(-1, 1): ((2, 1, 1), (3, 4, -1)),
    Root(0, -2): ((4, 2, 1),),
    Root(-1, -1): ((4, 1, 1), (3, 2, 1)),
    Root(-2, 0): ((3, 1, 1),),
}

# Block structure of each standard parabolic: Q is block upper triangular
# for the listed ordering of basis indices (1-based).
BLOCKS = {
    "Borel": ((1,), (2,), (4,), (3,)),
    "Siegel": ((1, 2), (3, 4)),
    "Klingen": ((1,), (2, 4), (3,)),
    "Full": ((1, 2, 3, 4),),
}


def _ctx_entries(m, ctx: CoefficientContext | None):
    if ctx is None:
        return la.as_matrix(m)
    return tuple(tuple(ctx.normalize(x) for x in row) for row in m)


@dataclass(frozen=True)
class SimilitudeMatrix:
    entries: tuple
    ctx: CoefficientContext
    multiplier: Scalar

    def __matmul__(self, other: "SimilitudeMatrix") -> "SimilitudeMatrix":
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        e = la.matmul(self.entries, other.entries, self.ctx.modulus)
        nu = self.ctx.normalize(self.multiplier * other.multiplier)
        return SimilitudeMatrix(e, self.ctx, nu)

    def inverse(self) -> "SimilitudeMatrix":
        # g^{-1} = nu^{-1} J^{-1} g^t J
        nu_inv = self.ctx.inverse(self.multiplier)
        jinv = la.scale(-1, J)
        e = la.matprod(jinv, la.transpose(self.entries), J, modulus=self.ctx.modulus)
        e = tuple(tuple(self.ctx.normalize(nu_inv * x) for x in row) for row in e)
        return SimilitudeMatrix(e, self.ctx, nu_inv)


def similitude_check(m, ctx: CoefficientContext) -> Scalar:
    """Return nu with m^t J m = nu J, or raise."""
    m = _ctx_entries(m, ctx)
    mod = ctx.modulus
    x = la.matprod(la.transpose(m), J, m, modulus=mod)
    nu = ctx.normalize(x[0][2])
    for i in range(4):
        for j in range(4):
            want = ctx.normalize(nu * J[i][j])
            if ctx.normalize(x[i][j]) != want:
                raise NonSimilitude(f"m^t J m is not a multiple of J at ({i + 1},{j + 1})")
    if not ctx.is_unit(nu):
        raise NonInvertibleMultiplier(f"multiplier {nu} is not invertible in {ctx}")
    return nu


def similitude(m, ctx: CoefficientContext) -> SimilitudeMatrix:
    entries = _ctx_entries(m, ctx)
    return SimilitudeMatrix(entries, ctx, similitude_check(entries, ctx))


def torus(t1, t2, x, ctx: CoefficientContext) -> SimilitudeMatrix:
    d = (t1, t2, x * ctx.inverse(t1), x * ctx.inverse(t2))
    m = tuple(tuple(d[i] if i == j else 0 for j in range(4)) for i in range(4))
    return similitude(m, ctx)


def siegel_levi(A, x, ctx: CoefficientContext) -> SimilitudeMatrix:
    """mu(A; x) = blockdiag(A, x * A^{-t})."""
    A = la.as_matrix(A)
    dA = ctx.normalize(la.det(A))
    if not ctx.is_unit(dA):
        raise SingularBlock("A is not invertible")
    di = ctx.inverse(dA)
    inv_t = ((A[1][1] * di, -A[1][0] * di), (-A[0][1] * di, A[0][0] * di))
    m = (
        (A[0][0], A[0][1], 0, 0),
        (A[1][0], A[1][1], 0, 0),
        (0, 0, x * inv_t[0][0], x * inv_t[0][1]),
        (0, 0, x * inv_t[1][0], x * inv_t[1][1]),
    )
    return similitude(m, ctx)


def klingen_levi(a, block, ctx: CoefficientContext) -> SimilitudeMatrix:
    """mu*(a, [[al, be], [ga, de]]) with a*b = det; multiplier a*b."""
    (al, be), (ga, de) = block
    dm = ctx.normalize(al * de - be * ga)
    if not ctx.is_unit(a) or not ctx.is_unit(dm):
        raise SingularBlock("Klingen Levi data not invertible")
    b = dm * ctx.inverse(a)
    m = (
        (a, 0, 0, 0),
        (0, al, 0, be),
        (0, 0, b, 0),
        (0, ga, 0, de),
    )
    return similitude(m, ctx)


def root_element(root: Root, a, modulus: int | None = None) -> tuple:
    m = la.zeros()
    for i in range(4):
        m[i][i] = 1
    for i, j, s in ROOT_POSITIONS[root]:
        m[i - 1][j - 1] += s * a
    if modulus:
        m = [[x % modulus for x in row] for row in m]
    return la.as_matrix(m)


def root_coordinate(u, root: Root):
    """Entry of u at the first position of ``root`` (with its sign)."""
    i, j, s = ROOT_POSITIONS[root][0]
    return s * u[i - 1][j - 1]


@lru_cache(maxsize=None)
def simple_lift(i: int) -> tuple:
    a = (A1, A2)[i - 1]
    return la.matprod(root_element(a, 1), root_element(-a, -1), root_element(a, 1))


@lru_cache(maxsize=None)
def weyl_lift(w: WeylElement) -> tuple:
    m = la.identity()
    for i in w.word:
        m = la.matmul(m, simple_lift(i))
    return m


def weyl_lift_inverse(w: WeylElement) -> tuple:
    # signed permutation: inverse is transpose
    return la.transpose(weyl_lift(w))


# ------------------------------------------------------------ parahorics


def block_index(Q: ParabolicType) -> dict[int, int]:
    return {i: k for k, blk in enumerate(BLOCKS[Q.tag]) for i in blk}


def lower_positions(Q: ParabolicType) -> list[tuple[int, int]]:
    """0-based positions that vanish on Q (the R_Q^- positions)."""
    bi = block_index(Q)
    return [(i - 1, j - 1) for i in range(1, 5) for j in range(1, 5) if bi[i] > bi[j]]


def _as_integral_mod(g, ctx: CoefficientContext, r: int):
    p = ctx.p
    if ctx.kind == "residue":
        n = p**r
        return tuple(tuple(int(x) % n for x in row) for row in g)
    if not all(is_integral(x, p) for row in g for x in row):
        return None
    return tuple(tuple(reduce_mod(x, p, r) for x in row) for row in g)


def levi_blocks(m, Q: ParabolicType) -> list:
    return [tuple(tuple(m[i - 1][j - 1] for j in blk) for i in blk) for blk in BLOCKS[Q.tag]]


def parahoric_membership(g, Q, r: int, ctx: CoefficientContext, variant: str = "full") -> bool:
    """Is g integral, invertible, and in Q (resp. M^1 Q^+) modulo p^r?"""
    Q = parabolic(Q)
    if isinstance(g, SimilitudeMatrix):
        ctx = g.ctx
        g = g.entries
    if ctx.kind == "residue" and r > ctx.r:
        raise LevelExceedsPrecision(f"level {r} exceeds context level {ctx.r}")
    if ctx.kind == "valued" and r > ctx.r:
        raise LevelExceedsPrecision(f"level {r} exceeds precision {ctx.r}")
    if variant not in ("full", "derived"):
        raise ValueError(f"unknown variant {variant!r}")
    gm = _as_integral_mod(g, ctx, r)
    if gm is None:
        return False
    p, n = ctx.p, ctx.p**r
    if la.det(gm) % p == 0:
        return False
    if any(gm[i][j] % n for i, j in lower_positions(Q)):
        return False
    if variant == "derived":
        return _levi_in_derived(gm, Q, n)
    return True


def _levi_in_derived(gm, Q: ParabolicType, n: int) -> bool:
    blocks = levi_blocks(gm, Q)
    if Q.tag == "Borel":
        return all(b[0][0] % n == 1 for b in blocks)
    if Q.tag == "Siegel":
        # blockdiag(A, A^{-t}): det A = 1 and multiplier 1
        A, D = blocks
        nu = (A[0][0] * D[0][0] + A[1][0] * D[1][0]) % n
        return la.det(A) % n == 1 and nu == 1
    if Q.tag == "Klingen":
        a, m, b = blocks
        return a[0][0] % n == 1 and b[0][0] % n == 1 and la.det(m) % n == 1
    return True


def block_lu(g, Q: ParabolicType, inv, modulus: int | None = None):
    """g = L U with L block-unipotent lower and U block upper for Q."""
    order = [i - 1 for blk in BLOCKS[Q.tag] for i in blk]
    sizes = [len(b) for b in BLOCKS[Q.tag]]
    starts = [sum(sizes[:k]) for k in range(len(sizes))]
    P = [[g[order[i]][order[j]] for j in range(4)] for i in range(4)]
    L = [[int(i == j) for j in range(4)] for i in range(4)]

    def blk(M, bi, bj):
        return tuple(
            tuple(M[starts[bi] + a][starts[bj] + c] for c in range(sizes[bj])) for a in range(sizes[bi])
        )

    for k in range(len(sizes)):
        piv = blk(P, k, k)
        try:
            piv_inv = la.inverse(piv, inv, modulus)
        except ZeroDivisionError:
            raise NotInParahoric("leading block is singular") from None
        for i in range(k + 1, len(sizes)):
            f = la.matmul(blk(P, i, k), piv_inv, modulus)
            for a in range(sizes[i]):
                for c in range(sizes[k]):
                    L[starts[i] + a][starts[k] + c] = f[a][c]
            for a in range(sizes[i]):
                row = starts[i] + a
                for j in range(4):
                    s = sum(f[a][c] * P[starts[k] + c][j] for c in range(sizes[k]))
                    P[row][j] = (P[row][j] - s) % modulus if modulus else P[row][j] - s
    Lo = [[0] * 4 for _ in range(4)]
    Uo = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            Lo[order[i]][order[j]] = L[i][j]
            Uo[order[i]][order[j]] = P[i][j]
    return la.as_matrix(Lo), la.as_matrix(Uo)


def iwahori_factorize(g, Q, r: int, ctx: CoefficientContext | None = None):
    """Return (u_minus, q) with g = u_minus q, u_minus in U_Q^-(p^r), q in Q.

    Over Residue(p, N) the factors are computed mod p^N; over valued
    rationals they are exact.
    """
    Q = parabolic(Q)
    if isinstance(g, SimilitudeMatrix):
        ctx = g.ctx
        g = g.entries
    if not parahoric_membership(g, Q, r, ctx):
        raise NotInParahoric(f"matrix is not in the level-{r} parahoric of {Q.label}")
    if ctx.kind == "residue":
        n = ctx.modulus
        return block_lu(g, Q, lambda x: pow(int(x), -1, n), n)
    gf = la.to_fractions(g)
    return block_lu(gf, Q, lambda x: 1 / Fraction(x))


def min_valuation(m, positions, p: int):
    return min((valuation(m[i][j], p) for i, j in positions), default=float("inf"))


__all__ = [
    "J", "ROOT_POSITIONS", "BLOCKS", "SimilitudeMatrix", "similitude_check", "similitude",
    "torus", "siegel_levi", "klingen_levi", "root_element", "root_coordinate", "simple_lift",
    "weyl_lift", "weyl_lift_inverse", "parahoric_membership", "iwahori_factorize", "block_lu",
    "lower_positions", "levi_blocks", "BOREL", "SIEGEL", "KLINGEN", "FULL",
]
