"""sp4 root vectors and Lie-algebra cohomology of nilradicals, from scratch.

Root vectors are projections X = E_ij - J^-1 E_ij^t J of matrix units onto
sp4; V_lambda is cut out of std^(a+b) as the n^- span of
e1^(a-b) (x) (e1 e2 - e2 e1)^b.  H^k(n, V) is computed weight by weight as
ker d_k / im d_(k-1) on the Chevalley-Eilenberg complex.
"""

from fractions import Fraction
from itertools import combinations

J = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))
EPS = ((1, 0), (0, 1), (-1, 0), (0, -1))  # torus weight of e_1..e_4


def _mm(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4))


def _sub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def _unit(i, j):
    return tuple(tuple(int(r == i and c == j) for c in range(4)) for r in range(4))


JINV = tuple(tuple(-x for x in row) for row in J)


def root_vectors() -> dict:
    """{root (m1, m2): 4x4 integer matrix in sp4}."""
    out = {}
    for i in range(4):
        for j in range(4):
            wt = (EPS[i][0] - EPS[j][0], EPS[i][1] - EPS[j][1])
            if wt == (0, 0) or wt in out:
                continue
            E = _unit(i, j)
            Et = tuple(zip(*E))
            X = _sub(E, _mm(_mm(JINV, Et), J))
            Xt = tuple(zip(*X))
            lhs = _mm(Xt, J)
            rhs = _mm(J, X)
            assert all(lhs[r][c] + rhs[r][c] == 0 for r in range(4) for c in range(4))
            out[wt] = X
    assert len(out) == 8
    return out


POSITIVE = ((1, -1), (0, 2), (1, 1), (2, 0))
NILRADICAL = {
    "B": POSITIVE,
    "P": ((0, 2), (1, 1), (2, 0)),
    "P*": ((1, -1), (1, 1), (2, 0)),
}


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _act(X, vec):
    """X acting on a tensor in std^(n), as a derivation."""
    out = {}
    for idx, c in vec.items():
        for pos, j in enumerate(idx):
            for i in range(4):
                if X[i][j]:
                    key = idx[:pos] + (i,) + idx[pos + 1:]
                    out[key] = out.get(key, 0) + c * X[i][j]
    return {k: v for k, v in out.items() if v}


def _weight(idx):
    return (sum(EPS[i][0] for i in idx), sum(EPS[i][1] for i in idx))


class Echelon:
    """Reduced echelon basis of a subspace of a sparse vector space."""

    def __init__(self):
        self.rows = {}  # pivot -> vector with 1 at pivot, 0 at other pivots

    def reduce(self, v):
        v = dict(v)
        for piv, row in self.rows.items():
            c = v.get(piv, 0)
            if c:
                for k, x in row.items():
                    v[k] = v.get(k, 0) - c * x
        return {k: x for k, x in v.items() if x}

    def add(self, v) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        c = Fraction(v[piv])
        v = {k: Fraction(x) / c for k, x in v.items()}
        for p2, row in self.rows.items():
            a = row.get(piv, 0)
            if a:
                for k, x in v.items():
                    row[k] = row.get(k, 0) - a * x
                self.rows[p2] = {k: x for k, x in row.items() if x}
        self.rows[piv] = v
        return True

    def coordinates(self, v) -> dict:
        """Coordinates (keyed by pivot) of a vector known to lie in the span."""
        out = {piv: v.get(piv, 0) for piv in self.rows if v.get(piv, 0)}
        assert not self.reduce(v)
        return out


def irreducible(lam):
    """{weight: Echelon} for V_lam inside std^(a+b)."""
    a, b = lam
    v = {(): Fraction(1)}
    for _ in range(a - b):
        v = {k + (0,): c for k, c in v.items()}
    for _ in range(b):
        v2 = {}
        for k, c in v.items():
            v2[k + (0, 1)] = v2.get(k + (0, 1), 0) + c
            v2[k + (1, 0)] = v2.get(k + (1, 0), 0) - c
        v = v2
    X = root_vectors()
    neg = [X[(-r[0], -r[1])] for r in POSITIVE]
    spaces = {(a, b): Echelon()}
    spaces[(a, b)].add(v)
    queue = [v]
    while queue:
        u = queue.pop()
        for Y in neg:
            w = _act(Y, u)
            if not w:
                continue
            wt = _weight(next(iter(w)))
            sp = spaces.setdefault(wt, Echelon())
            if sp.add(w):
                queue.append(w)
    return spaces


def character(lam) -> dict:
    return {wt: len(sp.rows) for wt, sp in irreducible(lam).items()}


def _rank(rows) -> int:
    e = Echelon()
    return sum(1 for r in rows if e.add(r))


def cohomology(nilradical: str, lam) -> dict:
    """{k: {weight: dim H^k(n, V_lam)_weight}}."""
    roots = NILRADICAL[nilradical]
    X = root_vectors()
    n = len(roots)
    # structure constants [X_a, X_b] = c X_(a+b)
    bracket = {}
    for i, j in combinations(range(n), 2):
        A, B = X[roots[i]], X[roots[j]]
        C = _sub(_mm(A, B), _mm(B, A))
        if any(any(r) for r in C):
            g = _add(roots[i], roots[j])
            k = roots.index(g)
            Z = X[g]
            r0, c0 = next((r, c) for r in range(4) for c in range(4) if Z[r][c])
            coef = Fraction(C[r0][c0], Z[r0][c0])
            assert all(C[r][c] == coef * Z[r][c] for r in range(4) for c in range(4))
            bracket[(i, j)] = (k, coef)
    V = irreducible(lam)
    basis = [(wt, piv) for wt, sp in V.items() for piv in sp.rows]
    vec = {(wt, piv): V[wt].rows[piv] for wt, piv in basis}

    def in_V(v):
        if not v:
            return {}
        wt = _weight(next(iter(v)))
        return {(wt, piv): c for piv, c in V[wt].coordinates(v).items()}

    action = {}
    for i in range(n):
        for bkey in basis:
            action[(i, bkey)] = in_V(_act(X[roots[i]], vec[bkey]))

    def cochain_weight(S, bkey):
        wt = bkey[0]
        for i in S:
            wt = (wt[0] - roots[i][0], wt[1] - roots[i][1])
        return wt

    def value(S, bkey, args):
        """phi_(S,b) evaluated on root indices ``args`` (an ordered tuple)."""
        if len(set(args)) < len(args):
            return 0
        if tuple(sorted(args)) != S:
            return 0
        perm = sorted(range(len(args)), key=lambda t: args[t])
        sign = 1
        seen = [False] * len(perm)
        for s in range(len(perm)):
            if not seen[s]:
                t, length = s, 0
                while not seen[t]:
                    seen[t] = True
                    t = perm[t]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        return sign

    def differential(S, bkey):
        """d(phi_(S,b)) as {(T, b'): coefficient}."""
        out = {}
        k = len(S)
        for T in combinations(range(n), k + 1):
            for i in range(k + 1):
                rest = T[:i] + T[i + 1:]
                s = value(S, bkey, rest)
                if s:
                    for b2, c in action[(T[i], bkey)].items():
                        key = (T, b2)
                        out[key] = out.get(key, 0) + (-1) ** i * s * c
            for i, j in combinations(range(k + 1), 2):
                br = bracket.get((T[i], T[j]))
                if br is None:
                    continue
                g, coef = br
                rest = (g,) + T[:i] + T[i + 1:j] + T[j + 1:]
                s = value(S, bkey, rest)
                if s:
                    key = (T, bkey)
                    out[key] = out.get(key, 0) + (-1) ** (i + j) * s * coef
        return {kk: c for kk, c in out.items() if c}

    cochains = {}
    for k in range(n + 1):
        for S in combinations(range(n), k):
            for bkey in basis:
                cochains.setdefault(k, {}).setdefault(cochain_weight(S, bkey), []).append((S, bkey))
    ranks = {}
    for k in range(n + 1):
        for wt, cells in cochains[k].items():
            rows = []
            for S, bkey in cells:
                d = differential(S, bkey)
                rows.append({(tuple(T), b2): c for (T, b2), c in d.items()})
            ranks[(k, wt)] = _rank(rows)
    out = {}
    for k in range(n + 1):
        for wt, cells in cochains[k].items():
            h = len(cells) - ranks[(k, wt)] - ranks.get((k - 1, wt), 0)
            if h:
                out.setdefault(k, {})[wt] = h
    return out
