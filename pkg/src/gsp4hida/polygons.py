"""Hodge and Newton polygons for GSp4-valued Galois data at p.

All arithmetic is exact (sympy rationals, or symbols where a slope is not
determined).  Polygons are normalised so that each Hodge-Tate weight and
each Frobenius slope of a single embedding carries multiplicity 1; the
induced mode multiplies slope multiplicities by [K:Q_p].

Slopes returned by ``ordinary_slopes`` are valuations of Hecke eigenvalues
for the f-th power of Frobenius; polygons use them divided by f.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from .errors import (
    EndpointMismatch,
    IndependenceViolated,
    InconsistentDegrees,
    ParityViolation,
    UnderdeterminedCase,
    UnsortedInput,
)
from .roots import BOREL, KLINGEN, SIEGEL, dual_parabolic, parabolic


def _num(x):
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    return sp.sympify(x)


def _is_number(x) -> bool:
    return not sp.sympify(x).free_symbols


def _out(x):
    """JSON-friendly rendering: ints stay ints, other values become strings."""
    x = sp.sympify(x)
    if x.is_Integer:
        return int(x)
    return str(x)


# ---------------------------------------------------------------- weights


def hodge_tate_weights(a, b, c) -> tuple:
    """The four weights (a+b+c)/2+3, (a-b+c)/2+2, (-a+b+c)/2+1, (-a-b+c)/2."""
    if all(isinstance(v, int) for v in (a, b, c)):
        if (a + b - c) % 2:
            raise ParityViolation(f"a + b = {a + b} and c = {c} differ in parity")
        return ((a + b + c) // 2 + 3, (a - b + c) // 2 + 2, (-a + b + c) // 2 + 1, (-a - b + c) // 2)
    a, b, c = (_num(v) for v in (a, b, c))
    return ((a + b + c) / 2 + 3, (a - b + c) / 2 + 2, (-a + b + c) / 2 + 1, (-a - b + c) / 2)


@dataclass(frozen=True)
class HodgeTateData:
    """Distinct weights and Hodge numbers per embedding; e*f embeddings."""

    weights: tuple
    hodge: tuple
    e: int = 1
    f: int = 1

    def __post_init__(self):
        if len(self.weights) != len(self.hodge):
            raise ValueError("one Hodge-number list per embedding is required")
        if len(self.weights) != self.e * self.f:
            raise InconsistentDegrees(f"{len(self.weights)} embeddings for e*f = {self.e * self.f}")
        for ws, hs in zip(self.weights, self.hodge):
            if len(ws) != len(hs):
                raise ValueError("weights and Hodge numbers differ in length")
            _check_increasing(ws)

    @classmethod
    def from_gsp4(cls, abcs, e: int = 1, f: int = 1) -> "HodgeTateData":
        ws = tuple(tuple(sorted(hodge_tate_weights(*abc))) for abc in abcs)
        return cls(ws, tuple((1,) * 4 for _ in ws), e, f)

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def dimension(self) -> int:
        return sum(self.hodge[0])

    def check_independence(self) -> None:
        if len({len(w) for w in self.weights}) != 1:
            raise IndependenceViolated("the number of distinct weights depends on the embedding")
        if len(set(self.hodge)) != 1:
            raise IndependenceViolated("the Hodge numbers depend on the embedding")

    def as_dict(self) -> dict:
        return {
            "weights": [[_out(x) for x in w] for w in self.weights],
            "hodge": [list(h) for h in self.hodge],
            "e": self.e,
            "f": self.f,
        }


@dataclass(frozen=True)
class SlopeData:
    """Slopes alpha_1 < ... < alpha_l with multiplicities; entries may be symbols."""

    slopes: tuple
    multiplicities: tuple
    f: int = 1
    relations: tuple = ()

    def __post_init__(self):
        if len(self.slopes) != len(self.multiplicities):
            raise ValueError("slopes and multiplicities differ in length")
        _check_increasing(self.slopes)

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities)

    @property
    def unknowns(self) -> set:
        return set().union(*(sp.sympify(s).free_symbols for s in self.slopes))

    def normalized(self) -> tuple:
        return tuple(_num(s) / self.f for s in self.slopes)

    def partial_sum(self, n: int):
        """Sum of the n smallest normalised slopes with multiplicity."""
        total, left = sp.Integer(0), n
        for s, m in zip(self.normalized(), self.multiplicities):
            k = min(m, left)
            total += k * s
            left -= k
            if not left:
                break
        if left:
            raise ValueError(f"{n} exceeds the dimension {self.dimension}")
        return sp.simplify(total)

    def as_dict(self) -> dict:
        return {
            "slopes": [_out(s) for s in self.slopes],
            "multiplicities": list(self.multiplicities),
            "f": self.f,
            "relations": [str(r) for r in self.relations],
        }


def _check_increasing(values) -> None:
    for x, y in zip(values, values[1:]):
        diff = sp.sympify(y) - sp.sympify(x)
        if _is_number(diff) and diff <= 0:
            raise UnsortedInput(f"values must be strictly increasing: {list(values)}")


# ---------------------------------------------------------------- polygons


@dataclass(frozen=True)
class Polygon:
    """Genuine vertices, from (0, 0), with x strictly increasing."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple((sp.Integer(x), sp.simplify(_num(y))) for x, y in self.vertices)
        if not vs or vs[0] != (0, 0):
            raise ValueError("a polygon starts at (0, 0)")
        if any(b[0] <= a[0] for a, b in zip(vs, vs[1:])):
            raise UnsortedInput("vertex abscissae must increase")
        object.__setattr__(self, "vertices", vs)

    @property
    def length(self) -> int:
        return int(self.vertices[-1][0])

    @property
    def height(self):
        return self.vertices[-1][1]

    def slopes(self) -> list:
        v = self.vertices
        return [sp.simplify((b[1] - a[1]) / (b[0] - a[0])) for a, b in zip(v, v[1:])]

    def is_convex(self) -> bool:
        s = self.slopes()
        for x, y in zip(s, s[1:]):
            d = sp.simplify(y - x)
            if _is_number(d) and d < 0:
                return False
        return True

    def value_at(self, x):
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a[0] <= x <= b[0]:
                return sp.simplify(a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0]))
        raise ValueError(f"x = {x} outside [0, {self.length}]")

    def abscissae(self) -> list[int]:
        return [int(x) for x, _ in self.vertices]

    def as_list(self) -> list:
        return [[int(x), _out(y)] for x, y in self.vertices]

    def to_tsv(self) -> str:
        return "x\ty\n" + "".join(f"{int(x)}\t{y}\n" for x, y in self.vertices)


def polygon_from_pieces(pieces, merge: bool = True) -> Polygon:
    """Polygon with the given (slope, multiplicity) pieces in order.

    With ``merge`` the collinear junctions (equal consecutive slopes) are
    dropped so that only genuine vertices remain.
    """
    pts = [(0, sp.Integer(0))]
    last = None
    for s, m in pieces:
        s = _num(s)
        x, y = pts[-1]
        nxt = (x + m, sp.simplify(y + m * s))
        if merge and last is not None and sp.simplify(s - last) == 0:
            pts[-1] = nxt
        else:
            pts.append(nxt)
        last = s
    return Polygon(tuple(pts))


def hodge_polygon(ht: HodgeTateData, sigma: int | None = 0) -> Polygon:
    """Hodge polygon of one embedding, or of all of them at once (sigma=None)."""
    if sigma is not None:
        return polygon_from_pieces(zip(ht.weights[sigma], ht.hodge[sigma]))
    pool = {}
    for ws, hs in zip(ht.weights, ht.hodge):
        for w, h in zip(ws, hs):
            pool[w] = pool.get(w, 0) + h
    keys = sorted(pool, key=lambda v: sp.sympify(v))
    return polygon_from_pieces((k, pool[k]) for k in keys)


def newton_polygon(sd: SlopeData, scale: int = 1) -> Polygon:
    return polygon_from_pieces(zip(sd.normalized(), (m * scale for m in sd.multiplicities)))


def build_polygons(data, induced: bool = False, degree: int | None = None, sigma: int = 0) -> Polygon:
    """Hodge polygon from HodgeTateData, Newton polygon from SlopeData.

    In induced mode the Hodge polygon pools every embedding and the Newton
    multiplicities are multiplied by [K:Q_p] (``degree``).
    """
    if isinstance(data, HodgeTateData):
        return hodge_polygon(data, None if induced else sigma)
    if isinstance(data, SlopeData):
        if induced and degree is None:
            raise ValueError("induced Newton polygons need the degree [K:Q_p]")
        return newton_polygon(data, degree if induced else 1)
    raise TypeError(f"cannot build a polygon from {type(data).__name__}")


def symbolic_hodge_vertices(a=None, b=None) -> Polygon:
    """Hodge polygon for c = a + b, weights 0 < b+1 < a+2 < a+b+3."""
    a = sp.Symbol("a", nonnegative=True) if a is None else _num(a)
    b = sp.Symbol("b", nonnegative=True) if b is None else _num(b)
    ws = sorted_gsp4_weights(a, b, a + b)
    return polygon_from_pieces(((w, 1) for w in ws), merge=False)


def sorted_gsp4_weights(a, b, c) -> tuple:
    """The four weights in increasing order for a >= b >= 0."""
    w = hodge_tate_weights(a, b, c)
    return (w[3], w[2], w[1], w[0])


# ---------------------------------------------------------------- ordinary slopes


def _sym(name: str):
    return sp.Symbol(name, real=True)


def ordinary_slopes(Q, weights, c: int, e: int = 1, f: int = 1, valuations: dict | None = None) -> SlopeData:
    """alpha_0..alpha_3 for a Q-ordinary form of weight (a_s, b_s; c).

    alpha_0 + alpha_3 = alpha_1 + alpha_2 = f(3 + c) always.  Siegel fixes
    alpha_0; Klingen fixes alpha_0 + alpha_1; Borel fixes both.  Slopes
    left open are sympy symbols unless ``valuations`` supplies them
    (keys ``alpha0`` or ``alpha1``).
    """
    Q = parabolic(Q)
    ws = [tuple(w) for w in weights]
    if len(ws) != e * f:
        raise InconsistentDegrees(f"{len(ws)} embeddings for e*f = {e * f}")
    for a, b in ws:
        if _is_number(a + b - c) and (a + b - c) % 2:
            raise ParityViolation(f"a + b = {a + b} and c = {c} differ in parity")
    vals = {k: _num(v) for k, v in (valuations or {}).items()}
    total = sp.sympify(f * (3 + c))
    rel = []
    if Q in (SIEGEL, BOREL):
        a0 = sp.sympify(sum(c - a - b for a, b in ws)) / (2 * e)
    else:
        a0 = vals.get("alpha0", _sym("alpha0"))
    if Q is BOREL:
        a1 = f + sp.sympify(sum(c + b - a for a, b in ws)) / (2 * e)
    elif Q is KLINGEN:
        known = f + sp.sympify(sum(c - a for a, b in ws)) / e
        a1 = known - a0
        rel.append(sp.Eq(a0 + a1, known))
    elif Q is SIEGEL:
        a1 = vals.get("alpha1", _sym("alpha1"))
    else:
        raise UnderdeterminedCase(f"no ordinary slope formula for {Q.label}")
    slopes = (a0, sp.simplify(a1), sp.simplify(total - a1), sp.simplify(total - a0))
    assert sp.simplify(slopes[0] + slopes[3] - total) == 0
    assert sp.simplify(slopes[1] + slopes[2] - total) == 0
    rel.append(sp.Eq(sp.Symbol("alpha0") + sp.Symbol("alpha3"), total))
    return SlopeData(slopes, (1, 1, 1, 1), f, tuple(rel))


def symbolic_newton_vertices(Q, a=None, b=None) -> Polygon:
    """Newton polygon of the Q-ordinary slopes for c = a + b, e = f = 1.

    All five points are kept, as for ``symbolic_hodge_vertices``.
    """
    a = sp.Symbol("a", nonnegative=True) if a is None else _num(a)
    b = sp.Symbol("b", nonnegative=True) if b is None else _num(b)
    sd = ordinary_slopes(Q, [(a, b)], a + b)
    return polygon_from_pieces(zip(sd.normalized(), sd.multiplicities), merge=False)


def require_determined(sd: SlopeData) -> None:
    if sd.unknowns:
        raise UnderdeterminedCase(f"slopes depend on {sorted(map(str, sd.unknowns))}")


# ---------------------------------------------------------------- comparison


@dataclass(frozen=True)
class Comparison:
    lies_above: bool
    meeting_vertices: tuple
    length: int

    @property
    def interior_meetings(self) -> tuple:
        return tuple(v for v in self.meeting_vertices if 0 < v[0] < self.length)

    def as_dict(self) -> dict:
        return {
            "liesAbove": self.lies_above,
            "meetingVertices": [[int(x), _out(y)] for x, y in self.meeting_vertices],
        }


def polygon_compare(newton: Polygon, hodge: Polygon) -> Comparison:
    if newton.length != hodge.length:
        raise EndpointMismatch(f"x-endpoints differ: {newton.length} vs {hodge.length}")
    for poly in (newton, hodge):
        if any(not _is_number(y) for _, y in poly.vertices):
            raise UnderdeterminedCase("polygon comparison needs numeric vertices")
    above = all(newton.value_at(x) >= hodge.value_at(x) for x in range(newton.length + 1))
    nx = set(newton.abscissae())
    meet = tuple(
        (x, y) for x, y in hodge.vertices if int(x) in nx and newton.value_at(x) == y
    )
    return Comparison(bool(above), meet, newton.length)


# ---------------------------------------------------------------- filtration


def sep_check(ht: HodgeTateData, t: int) -> bool:
    """a_s^t < a_s'^(t+1) for all embeddings s, s' (t is 1-based)."""
    k = len(ht.weights[0])
    if not 1 <= t < k:
        raise ValueError(f"t must lie in [1, {k - 1}]")
    top = max((w[t - 1] for w in ht.weights), key=sp.sympify)
    bottom = min((w[t] for w in ht.weights), key=sp.sympify)
    return bool(sp.sympify(top) < sp.sympify(bottom))


_DUAL_BY_BREAKS = {
    frozenset({1}): KLINGEN, frozenset({3}): KLINGEN, frozenset({1, 3}): KLINGEN,
    frozenset({2}): SIEGEL,
}


def dual_from_breaks(dims) -> object:
    """Parabolic of GSp4 stabilising a flag with the given dimensions."""
    dims = frozenset(dims)
    if not dims:
        return None
    if 2 in dims and dims & {1, 3}:
        return BOREL
    return _DUAL_BY_BREAKS[dims]


@dataclass(frozen=True)
class Verdict:
    stable_subspaces: tuple
    dual_parabolic: object
    diagnostics: tuple

    def as_dict(self) -> dict:
        return {
            "stableSubspacesAt": list(self.stable_subspaces),
            "dualParabolic": None if self.dual_parabolic is None else self.dual_parabolic.tag,
            "breakpoints": [dict(d) for d in self.diagnostics],
        }


def filtration_verdict(ht: HodgeTateData, sd: SlopeData, breakpoints=None) -> Verdict:
    """Test, for each t with (Sep t), that the Hodge and Newton vertices of
    the induced representation coincide at dimension h_1 + ... + h_t.

    A coincidence gives a stable subspace of that dimension; breakpoints
    whose Newton side still involves unknown slopes are reported untested.
    """
    ht.check_independence()
    if sd.dimension != ht.dimension:
        raise EndpointMismatch(f"dimensions differ: {sd.dimension} vs {ht.dimension}")
    k = len(ht.weights[0])
    ts = range(1, k) if breakpoints is None else breakpoints
    hs = ht.hodge[0]
    newton_breaks, acc = set(), 0
    for m in sd.multiplicities:
        acc += m
        newton_breaks.add(acc)
    stable, diags = [], []
    for t in ts:
        dim = sum(hs[:t])
        sep = sep_check(ht, t)
        hodge_side = sp.simplify(sum(h * sum(_num(w[i]) for w in ht.weights) for i, h in enumerate(hs[:t])))
        newton_side = sp.simplify(ht.degree * sd.partial_sum(dim))
        testable = _is_number(newton_side) and _is_number(hodge_side) and dim in newton_breaks
        holds = bool(sep and testable and sp.simplify(hodge_side - newton_side) == 0)
        if holds:
            stable.append(dim)
        diags.append({
            "t": t, "dimension": dim, "sep": sep, "testable": testable,
            "hodgeSide": _out(hodge_side), "newtonSide": _out(newton_side), "holds": holds,
        })
    dual = dual_from_breaks(stable) if ht.dimension == 4 else None
    return Verdict(tuple(stable), dual, tuple(diags))


# ---------------------------------------------------------------- pipeline


def polygon_pipeline(Q, a: int, b: int, c: int, e: int = 1, f: int = 1,
                     weights=None, valuations: dict | None = None) -> dict:
    """Hodge data, Q-ordinary slopes, both polygons and the verdict."""
    Q = parabolic(Q)
    ws = list(weights) if weights is not None else [(a, b)] * (e * f)
    ht = HodgeTateData.from_gsp4([(x, y, c) for x, y in ws], e, f)
    sd = ordinary_slopes(Q, ws, c, e, f, valuations)
    hodge = hodge_polygon(ht, 0 if len(ws) == 1 else None)
    newton = newton_polygon(sd, 1 if len(ws) == 1 else ht.degree)
    out = {
        "schema": "gsp4hida.polygon/1",
        "parabolic": Q.label,
        "hodgeTate": ht.as_dict(),
        "slopes": sd.as_dict(),
        "hodge": hodge.as_list(),
        "newton": newton.as_list(),
    }
    if not sd.unknowns:
        out["comparison"] = polygon_compare(newton, hodge).as_dict()
    verdict = filtration_verdict(ht, sd)
    out["verdict"] = verdict.as_dict()
    out["expectedDual"] = dual_parabolic(Q).tag
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


__all__ = [
    "hodge_tate_weights", "HodgeTateData", "SlopeData", "Polygon", "polygon_from_pieces",
    "hodge_polygon", "newton_polygon", "build_polygons", "symbolic_hodge_vertices", "symbolic_newton_vertices",
    "sorted_gsp4_weights", "ordinary_slopes", "require_determined", "Comparison",
    "polygon_compare", "sep_check", "dual_from_breaks", "Verdict", "filtration_verdict",
    "polygon_pipeline",
]
