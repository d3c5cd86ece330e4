"""Brute-force count of lagrangian planes in F_p^4 for the form J."""

from itertools import product

J = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def pairing(u, v, p):
    return sum(u[i] * J[i][j] * v[j] for i in range(4) for j in range(4)) % p


def _rref(rows, p):
    rows = [list(r) for r in rows]
    out, col = [], 0
    for col in range(4):
        piv = next((r for r in rows if r[col] % p), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [x * inv % p for x in piv]
        rows = [[(x - r[col] * y) % p for x, y in zip(r, piv)] for r in rows]
        out = [[(x - o[col] * y) % p for x, y in zip(o, piv)] for o in out]
        out.append(piv)
    return tuple(tuple(r) for r in out)


def lagrangians(p) -> set:
    vecs = [v for v in product(range(p), repeat=4) if any(v)]
    planes = set()
    for u in vecs:
        for v in vecs:
            if pairing(u, v, p):
                continue
            basis = _rref([u, v], p)
            if len(basis) == 2:
                planes.add(basis)
    return planes
