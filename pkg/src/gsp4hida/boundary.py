"""Graded pieces of ordinary boundary cohomology over Q, cusp-fibre orders
and the rank of the Hida-Iwasawa algebra.

The summand lists follow the degree tables of ``roots``: for Q = B a piece
L_{S,w} sits in degree n_w + (Levi degree); for maximal Q only degree 3 is
tabulated.  Highest weights are the Levi Kostant weights of ``weights``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentDegrees, UnsupportedDegree
from .roots import (
    A1,
    A2,
    BOREL,
    IDENTITY,
    KLINGEN,
    LONGEST,
    SIEGEL,
    WeylElement,
    by_name,
    degree_stats,
    double_cosets,
    parabolic,
    selector,
)
from .weights import kostant_datum

LEVELS = ("Gamma0", "Gamma1")


@dataclass(frozen=True)
class BoundarySummand:
    stratum: str
    w: WeylElement
    levi_degree: int
    kostant_degree: int
    highest_weight: tuple
    induction_index: str | None
    torsion: bool = False

    def as_dict(self) -> dict:
        return {
            "stratum": self.stratum,
            "weylClass": self.w.name,
            "leviDegree": self.levi_degree,
            "highestWeight": list(self.highest_weight),
            "inductionIndex": self.induction_index,
            "torsion": self.torsion,
        }


def _level(level: str) -> str:
    key = str(level).replace("Γ", "Gamma").replace("_", "").replace("₀", "0").replace("₁", "1")
    for lv in LEVELS:
        if key.lower() == lv.lower() or key == lv[-1]:
            return lv
    raise ValueError(f"unknown level type {level!r}; expected Gamma0 or Gamma1")


def _summand(Q, S, w, levi_degree, k, lam, level, torsion=False) -> BoundarySummand:
    datum = kostant_datum(Q, S, w, k, lam)
    if len(datum.entries) != 1:
        raise AssertionError(f"expected one Kostant weight for {S.label}, {w.name}, degree {k}")
    index = None
    if level == "Gamma1":
        index = f"i_{Q.label}(T^1_{{{S.label},{w.name}}} E)"
    return BoundarySummand(S.label, w, levi_degree, k, datum.entries[0][1], index, torsion)


_MAXIMAL_Q3 = {
    "Siegel": ((SIEGEL, "s2", 1), (SIEGEL, "id", 0), (KLINGEN, "id", 1)),
    "Klingen": ((KLINGEN, "s1", 1), (KLINGEN, "id", 0), (SIEGEL, "id", 1)),
}


def boundary_summands(Q, q: int, level: str = "Gamma0", lam=(0, 0)) -> list[BoundarySummand]:
    Q = parabolic(Q)
    level = _level(level)
    lam = tuple(lam)
    if Q is BOREL:
        if q in (0, 5):
            return []
        if q in (2, 3):
            return [_summand(Q, S, selector(S, q), 1, q - 1, lam, level) for S in (SIEGEL, KLINGEN)]
        if q in (1, 4):
            out = [
                _summand(Q, BOREL, w, 0, q, lam, level)
                for w in double_cosets(BOREL, BOREL)
                if degree_stats(BOREL, BOREL, w)[0] == q
            ]
            w = LONGEST if q == 1 else IDENTITY
            out += [_summand(Q, S, w, 1, q - 1, lam, level) for S in (SIEGEL, KLINGEN)]
            return out
        raise UnsupportedDegree(f"degree {q} is outside 0..5")
    if Q.tag not in _MAXIMAL_Q3:
        raise UnsupportedDegree(f"no boundary table for {Q.label}")
    if q != 3:
        raise UnsupportedDegree(f"only degree 3 is tabulated for Q = {Q.label}")
    return [
        _summand(Q, S, by_name(w), ld, q - ld, lam, level, torsion=(ld == 0))
        for S, w, ld in _MAXIMAL_Q3[Q.tag]
    ]


@dataclass(frozen=True)
class SkeletonSummand:
    stratum: str
    w: WeylElement
    levi_degree: int
    kostant_degree: int
    isogeny_only: bool = True

    def as_dict(self) -> dict:
        return {
            "stratum": self.stratum,
            "weylClass": self.w.name,
            "leviDegree": self.levi_degree,
            "kostantDegree": self.kostant_degree,
            "isogenyOnly": self.isogeny_only,
        }


def top_degree_skeleton(d: int) -> list[SkeletonSummand]:
    """The two maximal-stratum H^d pieces in degree 3d over a field of degree d.

    Only the exterior-power index l = 0 is produced and the comparison is
    up to isogeny, so every piece carries ``isogeny_only``.
    """
    if d < 1:
        raise InconsistentDegrees("the degree of F is positive")
    return [
        SkeletonSummand(KLINGEN.label, by_name("s1"), d, 2 * d),
        SkeletonSummand(SIEGEL.label, by_name("s2"), d, 2 * d),
    ]


# ---------------------------------------------------------------- cusps


def _units(n: int, p: int) -> list[int]:
    return [x for x in range(1, n) if x % p]


def _i_Q(Q, t) -> tuple:
    t1, t2 = t
    if Q is BOREL:
        return (t1, t2)
    if Q is SIEGEL:
        return (t1 * t2,)
    return (t1,)


def _closure(gens, n: int, size: int) -> set:
    one = (1,) * size
    group = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = tuple(a * b % n for a, b in zip(g, h))
                if x not in group:
                    group.add(x)
                    nxt.append(x)
        frontier = nxt
    return group


def stratum_torus(S, w: WeylElement, p: int, r: int) -> list[tuple]:
    """T^1_{S,w}(Z/p^r): the torus of the derived Levi of w M_S w^-1."""
    S = parabolic(S)
    n = p**r
    if S is BOREL:
        return [(1, 1)]
    simple = A1 if S is SIEGEL else A2
    c1, c2 = w.act_root(simple).coroot()
    return sorted({(pow(x, c1, n), pow(x, c2, n)) for x in _units(n, p)})


def cusp_fiber(S, w: WeylElement, Q, p: int, r: int, unit_image=(), level: str = "Gamma1") -> int:
    """|C_Q(Z/p^r) / i_Q(T^1_{S,w}(Z/p^r) E)| with E generated by ``unit_image``.

    ``unit_image`` lists torus elements (t1, t2) mod p^r.  The Gamma0 fibre
    is a single cusp.
    """
    if _level(level) == "Gamma0":
        return 1
    Q = parabolic(Q)
    n = p**r
    size = 2 if Q is BOREL else 1
    phi = len(_units(n, p))
    gens = [_i_Q(Q, (t1 % n, t2 % n)) for t1, t2 in list(stratum_torus(S, w, p, r)) + list(unit_image)]
    return phi**size // len(_closure(gens, n, size))


# ---------------------------------------------------------------- Hida rank


@dataclass(frozen=True)
class HidaGroupParams:
    d: int
    delta: int
    places: tuple

    def __post_init__(self):
        places = tuple((int(dv), parabolic(t)) for dv, t in self.places)
        object.__setattr__(self, "places", places)
        if sum(dv for dv, _ in places) != self.d:
            raise InconsistentDegrees(
                f"local degrees sum to {sum(dv for dv, _ in places)}, not d = {self.d}"
            )
        if self.delta < 0:
            raise InconsistentDegrees("the Leopoldt defect is non-negative")


def hida_rank(params: HidaGroupParams) -> int:
    """1 + delta + sum_v r_v d_v with r_v = 2 at Borel places, 1 otherwise."""
    return 1 + params.delta + sum((2 if t is BOREL else 1) * dv for dv, t in params.places)


__all__ = [
    "BoundarySummand", "boundary_summands", "SkeletonSummand", "top_degree_skeleton",
    "stratum_torus", "cusp_fiber", "HidaGroupParams", "hida_rank", "LEVELS",
]
