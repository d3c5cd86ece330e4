"""Parahoric Hecke algebra at p: double cosets, products, module matrices.

For d in the cone D of a parabolic Q and the level-r parahoric C,

    C d C = disjoint union of C d n,   n = prod_{a in R_Q} u_a(c_a),
                                       0 <= c_a < p^|val a(d)|,

so the degree is p^(sum |val a(d)|).  Right cosets C g are identified by
the lattice chain L_k g, where L_0 = Z_p^4 and L_k has p^r in the
coordinates of the first k blocks of Q: C is exactly the stabilizer of
that chain in Sp4, so two similitudes with the same multiplier lie in the
same right coset iff their chains agree.  Lattices are put in Hermite
normal form over Z/p^E, which is faithful because they contain p^E Z^4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import (
    CounterexampleFound,
    HypothesisViolated,
    LevelMismatch,
    ScaleRefused,
)
from .flags import (
    FlagPoint,
    SemigroupElement,
    check_scale,
    cocenters,
    conjugate_lower,
    enumerate_flags,
    left_translate,
    levi_cocenter,
    levi_from_cocenter,
    lower_key,
    standard_element,
)
from .roots import POSITIVE_ROOTS, WeightCharacter, parabolic, weyl_group
from .symplectic import BLOCKS, root_element

MAX_DEGREE = 50_000
MAX_DIM = 50_000


# ------------------------------------------------------------ lattices


def _val_int(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def hermite_form(rows, p: int, E: int) -> tuple:
    """Howell form of the Z_p-lattice spanned by ``rows`` and p^E Z^4.

    Rows are integer vectors; the result is upper triangular with pivots
    p^v (p^E standing for a missing pivot) and entries above a pivot
    reduced into [0, p^v).  With each pivot row its multiple by p^(E-v) is
    fed back, which makes the form canonical over Z/p^E.
    """
    M = p**E
    work = [[x % M for x in r] for r in rows]
    work = [r for r in work if any(r)]
    out = []
    for col in range(4):
        cands = [i for i in range(len(work)) if work[i][col]]
        if not cands:
            out.append((E, [M if i == col else 0 for i in range(4)]))
            continue
        best = min(cands, key=lambda i: _val_int(work[i][col], p, E))
        piv = work.pop(best)
        v = _val_int(piv[col], p, E)
        inv = pow(piv[col] // p**v, -1, M)
        piv = [x * inv % M for x in piv]
        pv = p**v
        nxt = []
        for r in work + [[x * p ** (E - v) % M for x in piv]]:
            f = r[col] // pv
            nr = [(x - f * y) % M for x, y in zip(r, piv)]
            if any(nr):
                nxt.append(nr)
        work = nxt
        out.append((v, piv))
    rows_out = [list(r) for _, r in out]
    for j in range(4):
        pv = p ** out[j][0]
        for i in range(j):
            q = rows_out[i][j] // pv
            if q:
                rows_out[i] = [(x - q * y) % M for x, y in zip(rows_out[i], rows_out[j])]
    return tuple(tuple(r) for r in rows_out)


def _chain_scalings(Q, r: int, p: int) -> list[tuple]:
    blocks = BLOCKS[Q.tag]
    out = [(1, 1, 1, 1)]
    for k in range(1, len(blocks)):
        idx = {i for b in blocks[:k] for i in b}
        out.append(tuple(p**r if i + 1 in idx else 1 for i in range(4)))
    return out


def coset_key(g, Q, r: int, p: int) -> tuple:
    """Invariant of the right coset C g (g integral with nonzero determinant)."""
    Q = parabolic(Q)
    g = tuple(tuple(int(x) for x in row) for row in g)
    dv = _val_int(abs(la.det(g)), p, 10**6)
    key = []
    for sc in _chain_scalings(Q, r, p):
        rows = [[sc[i] * x for x in g[i]] for i in range(4)]
        E = dv + r * sum(1 for x in sc if x != 1)
        key.append(hermite_form(rows, p, max(E, 1)))
    return tuple(key)


# ----------------------------------------------------------- double cosets


def _unipotent_roots(Q):
    return [a for a in POSITIVE_ROOTS if a in Q.unipotent_roots]


@dataclass(frozen=True, repr=False)
class HeckeDoubleCoset:
    """[C d C] for the level-r parahoric C of the parabolic of d."""

    d: SemigroupElement
    p: int
    level: int = 1

    @property
    def parabolic(self):
        return self.d.parabolic

    @property
    def exponents(self) -> dict:
        """|val a(d)| for each root a of the unipotent radical."""
        return {a: -self.d.root_valuation(a) for a in _unipotent_roots(self.parabolic)}

    @property
    def degree(self) -> int:
        return self.p ** sum(self.exponents.values())

    def parameter_ranges(self) -> list[range]:
        return [range(self.p**e) for e in self.exponents.values()]

    def unipotent(self, params) -> tuple:
        m = la.identity()
        for a, c in zip(self.exponents, params):
            m = la.matmul(m, root_element(a, c))
        return m

    def representatives(self):
        """Lazily yield (params, d n) in lexicographic parameter order."""
        D = self.d.matrix(self.p)
        for params in itertools.product(*self.parameter_ranges()):
            yield params, la.matmul(D, self.unipotent(params))

    def __str__(self) -> str:
        return f"[C {self.d} C]"

    __repr__ = __str__


def coset_decomposition(h: HeckeDoubleCoset, max_degree: int = MAX_DEGREE) -> tuple[list, int]:
    """Representatives and degree; checks that the representatives give
    pairwise distinct right cosets."""
    if h.degree > max_degree:
        raise ScaleRefused(f"degree {h.degree} exceeds the budget {max_degree}")
    reps = list(h.representatives())
    keys = {coset_key(g, h.parabolic, h.level, h.p) for _, g in reps}
    if len(keys) != len(reps):
        raise CounterexampleFound(f"{len(reps) - len(keys)} coincident right cosets in {h}")
    return reps, len(reps)


def _cone_candidates(Q, b: int) -> list[SemigroupElement]:
    out = []
    for a1 in range(b + 1):
        for a2 in range(b + 1):
            try:
                out.append(SemigroupElement(Q, a1, a2, b))
            except HypothesisViolated:
                pass
    return out


def hecke_multiply(h1: HeckeDoubleCoset, h2: HeckeDoubleCoset,
                   max_degree: int = MAX_DEGREE) -> dict[HeckeDoubleCoset, int]:
    """[C xi C] [C xi' C] = sum c_eta [C eta C], by counting right cosets.

    c_eta = #{(i, j) : C xi_i xi'_j = C eta}.  Every product is located
    among the right cosets of candidate classes C eta C with eta in D of
    the right multiplier, trying xi xi' first.
    """
    if h1.level != h2.level or h1.p != h2.p or h1.parabolic != h2.parabolic:
        raise LevelMismatch("Hecke operators must share p, level and parabolic")
    Q, r, p = h1.parabolic, h1.level, h1.p
    if h1.degree * h2.degree > max_degree:
        raise ScaleRefused("product too large for exhaustive counting")
    products = {}
    for _, g1 in h1.representatives():
        for _, g2 in h2.representatives():
            k = coset_key(la.matmul(g1, g2), Q, r, p)
            products[k] = products.get(k, 0) + 1
    first = h1.d * h2.d
    cands = [first] + [e for e in _cone_candidates(Q, first.b) if e != first]
    result: dict[HeckeDoubleCoset, int] = {}
    left = dict(products)
    for eta in cands:
        if not left:
            break
        he = HeckeDoubleCoset(eta, p, r)
        if he.degree > max_degree:
            continue
        keys = [coset_key(g, Q, r, p) for _, g in he.representatives()]
        hits = [left.pop(k, 0) for k in keys]
        if any(hits):
            if len(set(hits)) != 1:
                raise CounterexampleFound(f"non-uniform coset counts in {he}")
            result[he] = hits[0]
    if left:
        raise CounterexampleFound(f"{sum(left.values())} products lie outside the candidate classes")
    return result


# ---------------------------------------------------------- module matrices


def _chi_on_levi(Q, weight: WeightCharacter | None, D, n: int) -> int:
    """The weight character on the Levi factor D (a 4x4 matrix mod n)."""
    if weight is None:
        return 1
    if Q.tag == "Borel":
        return pow(D[0][0], weight.a1, n) * pow(D[1][1], weight.a2, n) % n
    if Q.tag == "Siegel":
        if weight.a1 != weight.a2:
            raise HypothesisViolated("a weight on the Siegel Levi needs a1 = a2 (a power of det)")
        det = (D[0][0] * D[1][1] - D[0][1] * D[1][0]) % n
        return pow(det, weight.a1, n)
    if weight.a2 != 0:
        raise HypothesisViolated("a weight on the Klingen Levi needs a2 = 0")
    return pow(D[0][0], weight.a1, n)


class FunctionModule:
    """Fun(Y_s(Z/p^r)/M^1, Z/p^m): one basis vector per (x-point, cocenter)."""

    def __init__(self, Q, p: int, r: int, s: int, m: int | None = None):
        self.parabolic = Q = parabolic(Q)
        self.p, self.r, self.s = p, r, s
        self.m = m if m is not None else r
        self.n = p**r
        self.flags = enumerate_flags(Q, p, r, s)
        self.cocenters = cocenters(Q, p, r)
        self.classes = [(lower_key(Q, L), c) for L in self.flags.lowers for c in self.cocenters]
        self._lowers = {lower_key(Q, L): L for L in self.flags.lowers}
        self.index = {k: i for i, k in enumerate(self.classes)}
        if len(self.classes) > MAX_DIM:
            raise ScaleRefused(f"module dimension {len(self.classes)} exceeds {MAX_DIM}")

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def coefficient_modulus(self) -> int:
        return self.p**self.m

    def point(self, i: int) -> FlagPoint:
        xk, c = self.classes[i]
        return FlagPoint(self.parabolic, self._lowers[xk], levi_from_cocenter(self.parabolic, c, self.n), self.n)

    def class_of(self, y: FlagPoint) -> int:
        Q = self.parabolic
        return self.index[(y.x_point, levi_cocenter(Q, y.levi, self.n))]

    def fiber(self) -> list[int]:
        """Classes over the marked point of X."""
        return [i for i, (xk, _) in enumerate(self.classes) if not any(xk)]

    @cached_property
    def _generators(self) -> dict:
        """Permutation and cocycle arrays for u_a(1), a in R_Q."""
        out = {}
        for a in _unipotent_roots(self.parabolic):
            g = root_element(a, 1, self.n)
            perm = np.empty(len(self), dtype=np.int64)
            levis = []
            for i in range(len(self)):
                z, D = left_translate(g, self.point(i))
                perm[i] = self.class_of(z)
                levis.append(D)
            out[a] = (perm, levis)
        return out

    def _powers(self, a, weight, count: int):
        perm, levis = self._generators[a]
        mod = self.coefficient_modulus
        chi1 = np.array([_chi_on_levi(self.parabolic, weight, D, mod) for D in levis], dtype=np.int64)
        P = [np.arange(len(self))]
        X = [np.ones(len(self), dtype=np.int64)]
        for _ in range(count - 1):
            # u_a(k+1) y = u_a(1) (u_a(k) y); the cocycle multiplies along
            X.append(X[-1] * chi1[P[-1]] % mod)
            P.append(perm[P[-1]])
        return P, X

    def torus_permutation(self, d: SemigroupElement) -> np.ndarray:
        out = np.empty(len(self), dtype=np.int64)
        for i, (xk, c) in enumerate(self.classes):
            L = conjugate_lower(d, self._lowers[xk], self.p, self.n)
            out[i] = self.index[(lower_key(self.parabolic, L), c)]
        return out

    def hecke_matrix(self, h: HeckeDoubleCoset, weight: WeightCharacter | None = None) -> np.ndarray:
        """(T f)(y) = sum_j chi(kappa_j(y)) f(d . (n_j . y)) as a matrix mod p^m."""
        if h.parabolic != self.parabolic or h.p != self.p:
            raise LevelMismatch("operator and module disagree on p or parabolic")
        if h.degree * len(self) > 5 * 10**7:
            raise ScaleRefused("matrix assembly exceeds the exhaustive budget")
        mod = self.coefficient_modulus
        roots = list(h.exponents)
        pw = {a: self._powers(a, weight, self.p ** h.exponents[a]) for a in roots}
        dperm = self.torus_permutation(h.d)
        size = len(self)
        M = np.zeros((size, size), dtype=np.int64)
        rows = np.arange(size)
        for params in itertools.product(*h.parameter_ranges()):
            P = np.arange(size)
            X = np.ones(size, dtype=np.int64)
            # n = u_a1(c1) u_a2(c2) ...; act with the rightmost factor first
            for a, c in reversed(list(zip(roots, params))):
                Pa, Xa = pw[a]
                X = X * Xa[c][P] % mod
                P = Pa[c][P]
            np.add.at(M, (rows, dperm[P]), X)
        return M % mod


def hecke_matrix(h: HeckeDoubleCoset, s: int = 1, r: int = 2, m: int | None = None,
                 weight: WeightCharacter | None = None) -> np.ndarray:
    check_scale(h.p, r)
    return FunctionModule(h.parabolic, h.p, r, s, m).hecke_matrix(h, weight)


# ------------------------------------------------------ modular linear algebra


def matmul_mod(A: np.ndarray, B: np.ndarray, mod: int) -> np.ndarray:
    """Exact product mod ``mod``; float64 BLAS when no rounding can occur."""
    if A.shape[1] * (mod - 1) ** 2 < 2**52:
        C = A.astype(np.float64) @ B.astype(np.float64)
        return np.rint(C).astype(np.int64) % mod
    return (A.astype(object) @ B.astype(object)) % mod


def matpow_mod(A: np.ndarray, k: int, mod: int) -> np.ndarray:
    R = np.eye(A.shape[0], dtype=np.int64)
    B = A % mod
    while k:
        if k & 1:
            R = matmul_mod(R, B, mod)
        k >>= 1
        if k:
            B = matmul_mod(B, B, mod)
    return R


def ordinary_idempotent(T, mod: int, cap: int = 64) -> np.ndarray:
    """e = lim T^(n!) over Z/mod, by iterating E <- E^n to a fixed idempotent."""
    E = np.asarray(T, dtype=np.int64) % mod
    for n in range(2, cap + 1):
        F = matpow_mod(E, n, mod)
        if np.array_equal(F, E) and np.array_equal(matmul_mod(E, E, mod), E):
            return E
        E = F
    raise CounterexampleFound("T^(n!) did not stabilize within the iteration cap")


@dataclass(frozen=True)
class Report:
    parameters: dict
    counts: dict
    passed: bool
    witnesses: list

    def as_dict(self) -> dict:
        return {"parameters": self.parameters, "counts": self.counts, "pass": self.passed,
                "witnesses": self.witnesses}


def evaluation_kernel_check(Q, p: int, s: int, weight: WeightCharacter | None = None) -> Report:
    """K = functions on Y_1(Z/p^s)/M^1 vanishing on the marked fiber.

    Checks T^(s-1) K = 0 mod p^s and e K = 0, and records how T acts on
    functions supported on the fiber (by the degree, a scalar).
    """
    Q = parabolic(Q)
    mod_ = FunctionModule(Q, p, s, 1, s)
    h = HeckeDoubleCoset(standard_element(Q), p, s)
    T = mod_.hecke_matrix(h, weight)
    mod = mod_.coefficient_modulus
    fiber = mod_.fiber()
    kernel = [i for i in range(len(mod_)) if i not in set(fiber)]
    Tk = matpow_mod(T, max(s - 1, 1), mod)
    killed = not Tk[:, kernel].any()
    e = ordinary_idempotent(T, mod)
    e_kills = not e[:, kernel].any()
    sub = T[np.ix_(fiber, fiber)]
    scalar = int(sub[0, 0]) if fiber else None
    fiber_scalar = bool(fiber) and np.array_equal(sub, scalar * np.eye(len(fiber), dtype=np.int64))
    witnesses = []
    if not killed:
        witnesses.append({"unkilled_columns": [int(i) for i in np.nonzero(Tk[:, kernel].any(axis=0))[0][:5]]})
    return Report(
        parameters={"parabolic": Q.label, "p": p, "s": s, "weight": str(weight) if weight else "trivial"},
        counts={
            "module": len(mod_), "kernel": len(kernel), "fiber": len(fiber),
            "degree": h.degree, "fiber_scalar": scalar if fiber_scalar else None,
            "rank_e": int(np.count_nonzero(e.any(axis=0))),
        },
        passed=killed and e_kills,
        witnesses=witnesses,
    )


def commutativity_sweep(Q, p: int, r: int, s: int = 1, weight: WeightCharacter | None = None) -> Report:
    """Pairwise commutation of the standard operators on Fun(Y_s(Z/p^r)),
    the product [C d1 C][C d2 C] = [C d1d2 C] and degree multiplicativity.

    For a maximal Q the standard elements outside its cone are skipped.
    """
    Q = parabolic(Q)
    module = FunctionModule(Q, p, r, s)
    mod = module.coefficient_modulus
    elems = {}
    for which in (1, 2, 3):
        try:
            elems[which] = standard_element(Q, which)
        except HypothesisViolated:
            continue
    ops = {k: HeckeDoubleCoset(d, p, r) for k, d in elems.items()}
    mats = {k: module.hecke_matrix(h, weight) for k, h in ops.items()}
    witnesses = []
    commute = {}
    for i, j in itertools.combinations(sorted(mats), 2):
        ok = np.array_equal(matmul_mod(mats[i], mats[j], mod), matmul_mod(mats[j], mats[i], mod))
        commute[f"T{i}T{j}"] = ok
        if not ok:
            witnesses.append({"noncommuting": [i, j]})
    degrees = {}
    for i, j in itertools.combinations_with_replacement(sorted(ops), 2):
        prod = HeckeDoubleCoset(elems[i] * elems[j], p, r)
        ok = prod.degree == ops[i].degree * ops[j].degree
        degrees[f"d{i}d{j}"] = ok
        if not ok:
            witnesses.append({"degree": [i, j]})
    product = None
    if 1 in ops and 2 in ops:
        got = hecke_multiply(ops[1], ops[2])
        target = HeckeDoubleCoset(elems[1] * elems[2], p, r)
        product = got == {target: 1}
        if not product:
            witnesses.append({"product": {str(k): v for k, v in got.items()}})
    return Report(
        parameters={"parabolic": Q.label, "p": p, "r": r, "s": s},
        counts={"module": len(module), "operators": sorted(ops), "commute": commute,
                "degrees": degrees, "product_d1d2": product},
        passed=not witnesses,
        witnesses=witnesses,
    )


# ------------------------------------------------------ spherical cells


def _weyl_val(w, d: SemigroupElement, root) -> int:
    return d.root_valuation(w.inverse().act_root(root))


def spherical_decomposition_count(d: SemigroupElement, p: int) -> dict:
    """K' d K' / K' cut into Iwahori orbits I (w d w^-1) K', one per w in W/W_d.

    The orbit of t = w d w^-1 has size [I : I cap t K' t^-1]
    = p^(sum_{a>0} max(0, v_a) + sum_{a<0} max(0, v_a - 1)), v_a = val a(t).
    """
    seen = set()
    cells = {}
    for w in weyl_group():
        image = tuple(_weyl_val(w, d, a) for a in POSITIVE_ROOTS)
        if image in seen:
            continue
        seen.add(image)
        e = 0
        for a in POSITIVE_ROOTS:
            v = _weyl_val(w, d, a)
            e += max(0, v) + max(0, -v - 1)
        cells[w.name] = p**e
    return {"cells": cells, "total": sum(cells.values()), "classes": len(cells)}


def poincare_degree(d: SemigroupElement, p: int) -> int:
    """p^(sum_{a>0} |val a(d)|) W(1/p) / W_d(1/p), W_d the stabilizer of d."""
    from fractions import Fraction

    t = Fraction(1, p)
    stab = [w for w in weyl_group()
            if all(_weyl_val(w, d, a) == d.root_valuation(a) for a in POSITIVE_ROOTS)]
    num = sum(t**w.length for w in weyl_group())
    den = sum(t**w.length for w in stab)
    top = p ** sum(abs(d.root_valuation(a)) for a in POSITIVE_ROOTS)
    value = top * num / den
    if value.denominator != 1:
        raise CounterexampleFound(f"non-integral spherical degree {value}")
    return int(value)


# -------------------------------------------------------- characteristic polynomial


@dataclass(frozen=True)
class HeckeCharPoly:
    """X^4 - T X^3 + q(R + (1 + q^2) S) X^2 - q^3 T S X + q^6 S^2."""

    T: object
    R: object
    S: object
    q: object

    @property
    def coefficients(self) -> tuple:
        """(c4, c3, c2, c1, c0), highest degree first."""
        T, R, S, q = self.T, self.R, self.S, self.q
        return (1, -T, q * (R + (1 + q**2) * S), -(q**3) * T * S, q**6 * S**2)

    def autodual(self) -> bool:
        _, c3, _, c1, c0 = self.coefficients
        qs = self.q**3 * self.S
        return c1 == c3 * qs and c0 == qs**2

    def __call__(self, x):
        out = 0
        for c in self.coefficients:
            out = out * x + c
        return out

    def __str__(self) -> str:
        names = ("X^4", "X^3", "X^2", "X", "")
        out = ""
        for c, nm in zip(self.coefficients, names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = nm if (mag == 1 and nm) else f"{mag}{nm}"
            out = (f"-{body}" if sign == "-" else body) if not out else f"{out} {sign} {body}"
        return out or "0"


def char_poly(T, R, S, q) -> HeckeCharPoly:
    return HeckeCharPoly(T, R, S, q)


__all__ = [
    "HeckeDoubleCoset", "coset_key", "coset_decomposition", "hecke_multiply", "FunctionModule",
    "hecke_matrix", "commutativity_sweep", "ordinary_idempotent", "evaluation_kernel_check", "spherical_decomposition_count", "poincare_degree",
    "char_poly", "HeckeCharPoly", "hermite_form", "matmul_mod", "matpow_mod", "Report",
]
