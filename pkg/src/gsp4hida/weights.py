"""Weight calculus for Sp4 and its Levi subgroups.

A weight is written (a, b) = a*l1 + b*l2 in the basis of the diagonal
torus characters; roots and the Weyl group come from ``roots``.  Dot
actions take an explicit rho: (2, 1) for Sp4, half the positive Levi
roots for a Levi.  Weights over a field of degree d are lists of (a, b),
one pair per embedding, sharing a central integer c.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistentDegrees, InvalidWQ, NonDominant, NonRegular, ParityViolation
from .roots import (
    BOREL,
    FULL,
    KLINGEN,
    POSITIVE_ROOTS,
    RHO,
    SIEGEL,
    ParabolicType,
    WeylElement,
    by_name,
    degree_stats,
    parabolic,
    weyl_group,
)


@dataclass(frozen=True)
class HighestWeight:
    components: tuple
    c: int = 0
    scope: str = "G"

    def __post_init__(self):
        comps = tuple((int(a), int(b)) for a, b in self.components)
        if not comps:
            raise ValueError("a weight needs at least one embedding")
        object.__setattr__(self, "components", comps)
        for a, b in comps:
            if (a + b - self.c) % 2:
                raise ParityViolation(f"a + b = {a + b} and c = {self.c} differ in parity")

    @classmethod
    def single(cls, a: int, b: int, c: int | None = None) -> "HighestWeight":
        return cls(((a, b),), a + b if c is None else c)

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def xs(self) -> tuple:
        return tuple(a for a, _ in self.components)

    @property
    def ys(self) -> tuple:
        return tuple(b for _, b in self.components)


def from_normalized(a1: int, a2: int) -> tuple[int, int]:
    """(a1, a2) -> (a1 - 3, a2 - 3)."""
    return a1 - 3, a2 - 3


def to_normalized(a: int, b: int) -> tuple[int, int]:
    return a + 3, b + 3


# ---------------------------------------------------------------- tests


def is_dominant(lam) -> bool:
    a, b = lam
    return a >= b >= 0


def _separable(xs, ys, gap: int) -> bool:
    for i, j in itertools.permutations(range(len(xs)), 2):
        if abs(xs[i] - ys[j]) <= gap or abs(xs[i] + ys[i] - (xs[j] - ys[j])) <= gap:
            return False
    return True


def dominance_tests(lam: HighestWeight) -> dict:
    from .polygons import hodge_tate_weights

    ht = {tuple(sorted(hodge_tate_weights(a, b, lam.c))) for a, b in lam.components}
    return {
        "dominant": all(is_dominant(ab) for ab in lam.components),
        "regular": all(a > b > 0 and lam.c >= a for a, b in lam.components),
        "separable": _separable(lam.xs, lam.ys, 0),
        "sufficientlySeparable": _separable(lam.xs, lam.ys, 3),
        "vAdmissible": len(ht) == 1,
    }


# ---------------------------------------------------------------- dot action


def rho(group: ParabolicType | str | None = None) -> tuple:
    """Half the positive roots of Sp4 (``None`` or G) or of the Levi of Q."""
    if group is None:
        return RHO
    Q = parabolic(group)
    if Q is FULL:
        return RHO
    return Q.levi_rho()


def dot_action(w: WeylElement, lam, group=None) -> tuple:
    r = rho(group)
    x, y = w.act((Fraction(lam[0]) + r[0], Fraction(lam[1]) + r[1]))
    out = (x - r[0], y - r[1])
    return tuple(int(v) if v.denominator == 1 else v for v in out)


# ---------------------------------------------------------------- Kostant


def kostant_set(ambient_positive, elements, u_roots) -> list[WeylElement]:
    """{v : R+ cap v(R-) is contained in R_U} inside the given Weyl group."""
    pos = frozenset(ambient_positive)
    u = frozenset(u_roots)
    out = []
    for v in elements:
        flipped = {a for a in pos if (-v.inverse().act_root(a)) in pos}
        if flipped <= u:
            out.append(v)
    return out


def _check_dominant(lam):
    if not is_dominant(lam):
        raise NonDominant(f"{tuple(lam)} is not dominant for Sp4")


@dataclass(frozen=True)
class KostantDatum:
    parabolic: ParabolicType
    w: WeylElement | None
    q: int
    entries: tuple
    large_p: bool = False

    def as_dict(self) -> dict:
        return {
            "parabolic": self.parabolic.label,
            "w": None if self.w is None else self.w.name,
            "q": self.q,
            "entries": [{"v": v.name, "weight": list(wt)} for v, wt in self.entries],
            "largeP": self.large_p,
        }


def nilradical_kostant(U, lam) -> dict[int, list]:
    """H^r(Lie U, V_lam) as {r: [(v, v.lam)]} for the unipotent radical of U."""
    U = parabolic(U)
    _check_dominant(lam)
    out: dict[int, list] = {}
    for v in kostant_set(POSITIVE_ROOTS, weyl_group(), U.unipotent_roots):
        out.setdefault(v.length, []).append((v, dot_action(v, lam)))
    return dict(sorted(out.items()))


def levi_positive_system(Q, S, w: WeylElement) -> frozenset:
    """Positive Levi roots of Q chosen inside w(R+).

    This contains the Levi part of w(R_S), so M_Q cap U_{w(R_S)} is a
    nilradical for it; it agrees with the standard system unless w(R_S)
    meets the Levi of Q in a negative root.
    """
    Q = parabolic(Q)
    return frozenset(a for a in Q.levi_roots if w.inverse().act_root(a).is_positive())


def levi_kostant_set(Q, S, w: WeylElement) -> list[WeylElement]:
    """W_{Q,S,w}: Kostant representatives inside W_Q for M_Q cap U_{w(R_S)}."""
    Q, S = parabolic(Q), parabolic(S)
    image = {w.act_root(a) for a in S.unipotent_roots}
    return kostant_set(levi_positive_system(Q, S, w), Q.weyl_elements(), image & Q.levi_roots)


def _levi_highest(Q, S, w: WeylElement, v: WeylElement, lam) -> tuple:
    """v . lam taken with respect to the chosen positive Levi system."""
    pos = levi_positive_system(Q, S, w)
    if pos == Q.levi_positive:
        return dot_action(v, lam, Q)
    # opposite system: its rho is -rho_M and its highest weight is s(lam)
    r = Q.levi_rho()
    s = Q.weyl_elements()[-1]
    mu = s.act(lam)
    x, y = v.act((mu[0] - r[0], mu[1] - r[1]))
    return (int(x + r[0]), int(y + r[1]))


def kostant_datum(Q, S, w: WeylElement, q: int, lam, large_p: bool = False) -> KostantDatum:
    """Levi-of-Q highest weights contributing in degree q for the pair (S, w)."""
    Q, S = parabolic(Q), parabolic(S)
    _check_dominant(lam)
    q1, _ = degree_stats(Q, S, w)
    entries = tuple(
        (v, _levi_highest(Q, S, w, v, lam)) for v in levi_kostant_set(Q, S, w) if v.length == q - q1
    )
    return KostantDatum(S, w, q, entries, large_p)


def kostant_weights(U, lam, large_p: bool = False) -> list[KostantDatum]:
    """One datum per degree.

    ``U`` is a parabolic (its unipotent radical in Sp4) or a triple
    (Q, S, w) selecting M_Q cap U_{w(R_S)}; in the latter case the
    degrees run over [q', q] from ``degree_stats``.
    """
    if isinstance(U, tuple):
        Q, S, w = U
        Q, S = parabolic(Q), parabolic(S)
        q1, q2 = degree_stats(Q, S, w)
        return [kostant_datum(Q, S, w, q, lam, large_p) for q in range(q1, q2 + 1)]
    U = parabolic(U)
    return [
        KostantDatum(U, None, r, tuple(items), large_p)
        for r, items in nilradical_kostant(U, lam).items()
    ]


# ---------------------------------------------------------------- dimensions


def weyl_dimension(lam, group: str = "Sp4") -> int:
    a, b = lam
    if group == "GL2":
        if a < b:
            raise NonDominant(f"{tuple(lam)} is not dominant for GL2")
        return a - b + 1
    _check_dominant(lam)
    return (a - b + 1) * (b + 1) * (a + 2) * (a + b + 3) // 6


# ---------------------------------------------------------------- central characters


def center_exponents(S, weight) -> tuple:
    """Exponents of a torus character restricted to the centre of M_S."""
    S = parabolic(S)
    m1, m2 = weight
    if S is SIEGEL:
        return (m1 + m2,)
    if S is KLINGEN:
        return (m1,)
    return (m1, m2)


@dataclass(frozen=True)
class CentralCharacter:
    weights: tuple
    exponents: tuple
    trivial_on_units: bool

    def as_dict(self) -> dict:
        return {
            "weights": [list(w) for w in self.weights],
            "exponents": [list(e) for e in self.exponents],
            "trivialOnUnits": self.trivial_on_units,
        }


def _per_embedding(x, d: int) -> list:
    if isinstance(x, (list, tuple)) and x and not isinstance(x, WeylElement) and isinstance(x[0], WeylElement):
        if len(x) != d:
            raise InconsistentDegrees(f"{len(x)} Weyl components for {d} embeddings")
        return list(x)
    return [x] * d


def central_character(Q, S, w, w_Q, lam) -> CentralCharacter:
    """w^-1(w_Q . lam) + sum of the roots in R_S cap w^-1(R_Q), per embedding.

    The dot action of w_Q uses the Levi rho of Q.  ``w`` and ``w_Q`` may be
    single elements or one per embedding.  The character is trivial on a
    finite index subgroup of the units iff its exponents are the same at
    every embedding (a power of the norm).
    """
    Q, S = parabolic(Q), parabolic(S)
    comps = lam.components if isinstance(lam, HighestWeight) else tuple(lam)
    d = len(comps)
    ws, wqs = _per_embedding(w, d), _per_embedding(w_Q, d)
    weights, exps = [], []
    for (a, b), wv, wq in zip(comps, ws, wqs):
        if wq not in levi_kostant_set(Q, S, wv):
            raise InvalidWQ(f"{wq.name} is not in W_Q,S,w for w = {wv.name}")
        m = wv.inverse().act(dot_action(wq, (a, b), Q))
        for alpha in S.unipotent_roots:
            if wv.act_root(alpha) in Q.unipotent_roots:
                m = (m[0] + alpha.m1, m[1] + alpha.m2)
        weights.append(tuple(m))
        exps.append(center_exponents(S, m))
    return CentralCharacter(tuple(weights), tuple(exps), len(set(exps)) == 1)


# ---------------------------------------------------------------- Franke filter


def weyl_sigma(S) -> list[WeylElement]:
    """W^S = {w : w^-1(a) > 0 for every positive Levi root a of S}."""
    S = parabolic(S)
    return [w for w in weyl_group() if all(w.inverse().act_root(a).is_positive() for a in S.levi_positive)]


def lambda_projection(S, lam) -> tuple:
    """Projection of sum_s x_s l1 + y_s l2 onto a_S^*, as (l1, l2) coefficients."""
    S = parabolic(S)
    comps = lam.components if isinstance(lam, HighestWeight) else tuple(lam)
    sx = sum(Fraction(x) for x, _ in comps)
    sy = sum(Fraction(y) for _, y in comps)
    if S is BOREL:
        return (sx, sy)
    if S is SIEGEL:
        h = (sx + sy) / 2
        return (h, h)
    if S is KLINGEN:
        return (sx, Fraction(0))
    raise ValueError(f"no projection for {S.label}")


def _split_coordinate(S, v) -> tuple:
    """The a_S component of a weight, as the coefficient along its generator."""
    if S is SIEGEL:
        return (Fraction(v[0] + v[1], 2),)
    if S is KLINGEN:
        return (Fraction(v[0]),)
    return (Fraction(v[0]), Fraction(v[1]))


def _in_chamber(v) -> bool:
    return v[0] >= v[1] >= 0


@dataclass(frozen=True)
class FrankeTerm:
    w: tuple
    length: int
    degree: int

    def as_dict(self) -> dict:
        return {"w": [x.name for x in self.w], "length": self.length, "degree": self.degree}


def franke_contribution_filter(S, lam, degree_bound: int | None = None) -> list[FrankeTerm]:
    """Tuples (w_s) with each w_s in W^S and -w_s(lam_s + rho) in the
    chamber along a_S (for S = B: in the full chamber).

    For maximal S the Levi cohomology sits in degree d, so the term has
    degree l(w) + d; for S = B it has degree l(w).
    """
    S = parabolic(S)
    comps = lam.components if isinstance(lam, HighestWeight) else tuple(lam)
    if not all(a > b > 0 for a, b in comps):
        raise NonRegular(f"{comps} is not regular dominant")
    d = len(comps)
    per = []
    for a, b in comps:
        opts = []
        for w in weyl_sigma(S):
            v = w.act((a + RHO[0], b + RHO[1]))
            if S is BOREL:
                ok = _in_chamber((-v[0], -v[1]))
            else:
                ok = _split_coordinate(S, v)[0] < 0
            if ok:
                opts.append((w, _split_coordinate(S, v)))
        per.append(opts)
    out = []
    for combo in itertools.product(*per):
        ws = tuple(w for w, _ in combo)
        length = sum(w.length for w in ws)
        degree = length if S is BOREL else length + d
        if degree_bound is None or degree <= degree_bound:
            out.append(FrankeTerm(ws, length, degree))
    return out


__all__ = [
    "HighestWeight", "from_normalized", "to_normalized", "is_dominant", "dominance_tests",
    "rho", "dot_action", "kostant_set", "KostantDatum", "nilradical_kostant",
    "levi_positive_system", "levi_kostant_set", "kostant_datum", "kostant_weights", "weyl_dimension",
    "center_exponents", "CentralCharacter", "central_character", "weyl_sigma",
    "lambda_projection", "FrankeTerm", "franke_contribution_filter", "by_name",
]
