"""C2 root datum of Sp4: roots, the Weyl group, parabolic types, Bruhat
order, double cosets W_Q\\W/W_Sigma and the degree statistics q', q.

Coordinates.  A weight (a1, a2; b) of the diagonal torus of GSp4 is the
character t1^a1 t2^a2 x^((b - a1 - a2)/2) of diag(t1, t2, x/t1, x/t2).
Roots live in the (a1, a2)-plane with b = 0:

    a1 = (1, -1)   a2 = (0, 2)   a1+a2 = (1, 1)   2a1+a2 = (2, 0)

The Weyl group acts by signed permutations of (a1, a2); composition is
right to left, so ``s1s2`` means "apply s2, then s1".
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParityViolation, UnknownParabolic


@dataclass(frozen=True, order=True)
class Root:
    m1: int
    m2: int

    def __post_init__(self):
        if (self.m1, self.m2) not in _ROOT_COORDS:
            raise ValueError(f"({self.m1}, {self.m2}) is not a root of C2")

    @property
    def coords(self) -> tuple[int, int]:
        return (self.m1, self.m2)

    def is_positive(self) -> bool:
        return self.m1 > 0 or (self.m1 == 0 and self.m2 > 0)

    def __neg__(self) -> "Root":
        return Root(-self.m1, -self.m2)

    def is_long(self) -> bool:
        return self.m1 == 0 or self.m2 == 0

    def coroot(self) -> tuple[int, int]:
        """The coroot as a cocharacter t -> (t^c1, t^c2) of (t1, t2)."""
        if self.is_long():
            return (self.m1 // 2, self.m2 // 2)
        return (self.m1, self.m2)

    @property
    def name(self) -> str:
        return _ROOT_NAMES[self.coords]

    def __str__(self) -> str:
        return self.name


_ROOT_COORDS = {(1, -1), (0, 2), (1, 1), (2, 0), (-1, 1), (0, -2), (-1, -1), (-2, 0)}
_ROOT_NAMES = {
    (1, -1): "a1",
    (0, 2): "a2",
    (1, 1): "a1+a2",
    (2, 0): "2a1+a2",
    (-1, 1): "-a1",
    (0, -2): "-a2",
    (-1, -1): "-(a1+a2)",
    (-2, 0): "-(2a1+a2)",
}

A1 = Root(1, -1)
A2 = Root(0, 2)
A12 = Root(1, 1)
A112 = Root(2, 0)
POSITIVE_ROOTS = (A1, A2, A12, A112)
NEGATIVE_ROOTS = tuple(-a for a in POSITIVE_ROOTS)
ALL_ROOTS = POSITIVE_ROOTS + NEGATIVE_ROOTS
SIMPLE_ROOTS = (A1, A2)

RHO = (2, 1)


def root_from_name(name: str) -> Root:
    for c, n in _ROOT_NAMES.items():
        if n == name:
            return Root(*c)
    raise KeyError(name)


# ---------------------------------------------------------------- Weyl group

Mat2 = tuple[tuple[int, int], tuple[int, int]]

_S = {1: ((0, 1), (1, 0)), 2: ((1, 0), (0, -1))}


def _mul2(a: Mat2, b: Mat2) -> Mat2:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


_ID2: Mat2 = ((1, 0), (0, 1))


@dataclass(frozen=True)
class WeylElement:
    """A signed permutation matrix acting on (a1, a2).

    ``word`` is the lexicographically smallest reduced word (s1 < s2),
    written left to right as a product, e.g. (1, 2) is s1s2.
    """

    matrix: Mat2
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def name(self) -> str:
        return _NAMES[self.matrix]

    @property
    def word_name(self) -> str:
        return "".join(f"s{i}" for i in self.word) or "id"

    def act(self, v: tuple) -> tuple:
        m = self.matrix
        return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])

    def act_root(self, a: Root) -> Root:
        return Root(*self.act(a.coords))

    def act_weight(self, chi: "WeightCharacter") -> "WeightCharacter":
        a1, a2 = self.act((chi.a1, chi.a2))
        return WeightCharacter(a1, a2, chi.b)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return element(_mul2(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        m = self.matrix
        return element(((m[0][0], m[1][0]), (m[0][1], m[1][1])))

    def inversion_set(self) -> frozenset:
        """Positive roots sent to negative roots."""
        return frozenset(a for a in POSITIVE_ROOTS if not self.act_root(a).is_positive())

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"WeylElement({self.name})"


_NAMES = {
    _ID2: "id",
    _S[1]: "s1",
    _S[2]: "s2",
    _mul2(_S[1], _S[2]): "s1s2",
    _mul2(_S[2], _S[1]): "s2s1",
    _mul2(_mul2(_S[2], _S[1]), _S[2]): "-s1",
    _mul2(_mul2(_S[1], _S[2]), _S[1]): "-s2",
    ((-1, 0), (0, -1)): "-id",
}


@lru_cache(maxsize=None)
def _group() -> dict:
    # breadth first from id; appending generators on the right and
    # scanning s1 before s2 yields the lexicographically smallest word
    words = {_ID2: ()}
    frontier = [_ID2]
    while frontier:
        nxt = []
        for m in sorted(frontier, key=lambda x: words[x]):
            for i in (1, 2):
                mm = _mul2(m, _S[i])
                w = words[m] + (i,)
                if mm not in words:
                    words[mm] = w
                    nxt.append(mm)
                elif len(words[mm]) == len(w) and w < words[mm]:
                    words[mm] = w
        frontier = nxt
    return {m: WeylElement(m, w) for m, w in words.items()}


def element(m: Mat2) -> WeylElement:
    return _group()[m]


def weyl_group() -> list[WeylElement]:
    """The eight elements in the fixed table order."""
    return [by_name(n) for n in WEYL_ORDER]


WEYL_ORDER = ("id", "-id", "s2", "-s2", "s1", "-s1", "s1s2", "s2s1")


def by_name(name: str) -> WeylElement:
    name = name.replace(" ", "").replace("−", "-")
    for m, n in _NAMES.items():
        if n == name:
            return element(m)
    for el in _group().values():
        if el.word_name == name:
            return el
    raise KeyError(f"unknown Weyl element {name!r}")


def from_word(word) -> WeylElement:
    m = _ID2
    for i in word:
        m = _mul2(m, _S[int(i)])
    return element(m)


IDENTITY = element(_ID2)
S1 = element(_S[1])
S2 = element(_S[2])
LONGEST = by_name("-id")


def length_histogram() -> dict[int, int]:
    hist: dict[int, int] = {}
    for w in weyl_group():
        hist[w.length] = hist.get(w.length, 0) + 1
    return dict(sorted(hist.items()))


def bruhat_leq(w1: WeylElement, w: WeylElement) -> bool:
    """Subword criterion on the chosen reduced word of ``w``."""
    for mask in itertools.product((0, 1), repeat=w.length):
        sub = [i for i, keep in zip(w.word, mask) if keep]
        if from_word(sub) == w1:
            return True
    return False


# ---------------------------------------------------------------- weights


@dataclass(frozen=True)
class WeightCharacter:
    a1: int
    a2: int
    b: int

    def __post_init__(self):
        if (self.a1 + self.a2 - self.b) % 2:
            raise ParityViolation(f"a1 + a2 must be congruent to b mod 2, got {self}")

    def evaluate(self, t1, t2, x):
        e = (self.b - self.a1 - self.a2) // 2
        return t1**self.a1 * t2**self.a2 * x**e

    def __str__(self) -> str:
        return f"({self.a1},{self.a2};{self.b})"


# ---------------------------------------------------------------- parabolics


@dataclass(frozen=True)
class ParabolicType:
    tag: str
    unipotent_roots: frozenset
    levi_roots: frozenset
    weyl_subgroup: tuple[str, ...]

    @property
    def label(self) -> str:
        return _LABELS[self.tag]

    @property
    def levi_positive(self) -> frozenset:
        return frozenset(a for a in self.levi_roots if a.is_positive())

    @property
    def levi_negative(self) -> frozenset:
        return frozenset(a for a in self.levi_roots if not a.is_positive())

    @property
    def unipotent_negative(self) -> frozenset:
        return frozenset(-a for a in self.unipotent_roots)

    def weyl_elements(self) -> list[WeylElement]:
        return [by_name(n) for n in self.weyl_subgroup]

    def levi_rho(self) -> tuple:
        from fractions import Fraction

        s = [Fraction(0), Fraction(0)]
        for a in self.levi_positive:
            s[0] += Fraction(a.m1, 2)
            s[1] += Fraction(a.m2, 2)
        return tuple(s)

    def __str__(self) -> str:
        return self.label


_LABELS = {"Borel": "B", "Siegel": "P", "Klingen": "P*", "Full": "G"}

BOREL = ParabolicType("Borel", frozenset(POSITIVE_ROOTS), frozenset(), ("id",))
SIEGEL = ParabolicType("Siegel", frozenset({A2, A12, A112}), frozenset({A1, -A1}), ("id", "s1"))
KLINGEN = ParabolicType("Klingen", frozenset({A1, A12, A112}), frozenset({A2, -A2}), ("id", "s2"))
FULL = ParabolicType("Full", frozenset(), frozenset(ALL_ROOTS), WEYL_ORDER)

_ALIASES = {
    "b": BOREL, "borel": BOREL,
    "p": SIEGEL, "siegel": SIEGEL,
    "p*": KLINGEN, "ps": KLINGEN, "pstar": KLINGEN, "klingen": KLINGEN,
    "g": FULL, "full": FULL,
}


def parabolic(tag) -> ParabolicType:
    if isinstance(tag, ParabolicType):
        return tag
    try:
        return _ALIASES[str(tag).strip().lower()]
    except KeyError:
        raise UnknownParabolic(f"unknown parabolic {tag!r}") from None


def dual_parabolic(Q: ParabolicType) -> ParabolicType:
    """Langlands dual type: P <-> P*, B -> B."""
    return {"Siegel": KLINGEN, "Klingen": SIEGEL, "Borel": BOREL, "Full": FULL}[Q.tag]


# ---------------------------------------------------------------- double cosets


def double_coset(Q: ParabolicType, S: ParabolicType, w: WeylElement) -> frozenset:
    return frozenset(a * w * b for a in Q.weyl_elements() for b in S.weyl_elements())


def double_cosets(Q, S, representative: str = "table") -> list[WeylElement]:
    """Representatives of W_Q \\ W / W_S, one per class.

    ``table``: the first class member in the order id, -id, s2, -s2, s1,
    -s1, s1s2, s2s1 (this reproduces the published tables).
    ``minimal``: the unique minimal-length member.
    """
    Q, S = parabolic(Q), parabolic(S)
    seen: set = set()
    reps = []
    for w in weyl_group():
        if w in seen:
            continue
        cls = double_coset(Q, S, w)
        seen |= cls
        if representative == "minimal":
            w = min(cls, key=lambda x: (x.length, WEYL_ORDER.index(x.name)))
        elif representative != "table":
            raise ValueError(f"unknown representative rule {representative!r}")
        reps.append(w)
    return reps


def degree_stats(Q, S, w: WeylElement) -> tuple[int, int]:
    """(q', q) = (|R_Q cap w R_S|, |R_S| - |R_Q^- cap w R_S|)."""
    Q, S = parabolic(Q), parabolic(S)
    image = {w.act_root(a) for a in S.unipotent_roots}
    q1 = len(Q.unipotent_roots & image)
    q2 = len(S.unipotent_roots) - len(Q.unipotent_negative & image)
    return q1, q2


def partition_counts(Q, S, w: WeylElement) -> tuple[int, int, int]:
    """Sizes of w(R_S) meeting R_Q, Delta_Q and R_Q^-."""
    Q, S = parabolic(Q), parabolic(S)
    image = {w.act_root(a) for a in S.unipotent_roots}
    return (
        len(Q.unipotent_roots & image),
        len(Q.levi_roots & image),
        len(Q.unipotent_negative & image),
    )


# ---------------------------------------------------------------- tables

_TABLE_SIGMAS = {"Borel": ("P", "P*", "B"), "Siegel": ("P", "P*", "B"), "Klingen": ("P*", "P", "B")}


def selector(S, q: int) -> WeylElement:
    """The unique w with n_w = q - 1 for Q = B and maximal S."""
    S = parabolic(S)
    hits = [w for w in double_cosets(BOREL, S) if degree_stats(BOREL, S, w)[0] == q - 1]
    if len(hits) != 1:
        raise ValueError(f"no unique selector for {S.label}, q={q}")
    return hits[0]


def table_data(Q) -> dict:
    Q = parabolic(Q)
    if Q.tag not in _TABLE_SIGMAS:
        raise UnknownParabolic(f"tables exist for B, P, P* only, not {Q.label}")
    out = {"Q": Q.label, "wsets": [], "degrees": []}
    for sl in _TABLE_SIGMAS[Q.tag]:
        S = parabolic(sl)
        reps = double_cosets(Q, S)
        out["wsets"].append({
            "P_Sigma": S.label,
            "R_Sigma": [a.name for a in POSITIVE_ROOTS if a in S.unipotent_roots],
            "W": [w.name for w in reps],
        })
        rows = []
        for w in reps:
            q1, q2 = degree_stats(Q, S, w)
            rows.append({"w": w.name, "n_w": q1} if Q.tag == "Borel"
                        else {"w": w.name, "q'_w": q1, "q_w": q2})
        out["degrees"].append({"P_Sigma": S.label, "rows": rows})
    if Q.tag == "Borel":
        out["selector"] = [
            {"q": q, "w_P": selector(SIEGEL, q).name, "w_P*": selector(KLINGEN, q).name}
            for q in (1, 2, 3, 4)
        ]
    return out


def emit_tables(Q, fmt: str = "tsv") -> str:
    data = table_data(Q)
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=False) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"# Q = {data['Q']}", "[W_QSigma]", "P_Sigma\tR_Sigma\tW_QSigma"]
    for row in data["wsets"]:
        lines.append(f"{row['P_Sigma']}\t{','.join(row['R_Sigma'])}\t{','.join(row['W'])}")
    for tab in data["degrees"]:
        lines.append(f"[P_Sigma = {tab['P_Sigma']}]")
        if data["Q"] == "B":
            lines.append("w\tn_w")
            lines += [f"{r['w']}\t{r['n_w']}" for r in tab["rows"]]
        else:
            lines.append("w\tq'_w\tq_w")
            lines += ["\t".join(str(r[k]) for k in ("w", "q'_w", "q_w")) for r in tab["rows"]]
    if "selector" in data:
        lines.append("[selector]")
        lines.append("q\tw_P\tw_P*")
        lines += [f"{r['q']}\t{r['w_P']}\t{r['w_P*']}" for r in data["selector"]]
    return "\n".join(lines) + "\n"


def check_naming() -> None:
    """Startup validation of -s1 = s2s1s2, -s2 = s1s2s1 via n_w = 4 - length."""
    assert by_name("-s1").word == (2, 1, 2)
    assert by_name("-s2").word == (1, 2, 1)
    for w in weyl_group():
        if degree_stats(BOREL, BOREL, w)[0] != 4 - w.length:
            raise AssertionError(f"B-table identity fails at {w}")


check_naming()
