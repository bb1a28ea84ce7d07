"""Seeded random graded associative algebras for property tests.

Three associative families, each with random degrees and a random basis
rescaling (which keeps associativity and the grading):
  * truncated quantum planes  x^a y^b, y x = lam x y, cut off at a+b <= d
  * path algebras of small random quivers with vertices labelled in G
  * matrix-unit algebras End(M) for random degrees on M
"""

import random

from braided_mlie import Bicharacter, FieldSpec, GradedAlgebra, GroupSpec

F6 = FieldSpec.cyclotomic(6)
GROUPS = [GroupSpec((2,)), GroupSpec((3,)), GroupSpec((2, 2))]


def _root(rng, order):
    """A random order-th root of unity inside Q(zeta_6)."""
    z = F6.gen()
    return z ** ((6 // order) * rng.randrange(order))


def random_bicharacter(rng, G, skew=None):
    n = G.rank
    if skew is None:
        skew = rng.random() < 0.4
    B = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            o = G.orders[i] if i == j else _gcd(G.orders[i], G.orders[j])
            if skew and j < i:
                B[i][j] = B[j][i].inverse()
            elif skew and i == j:
                B[i][j] = F6(-1) if G.orders[i] % 2 == 0 and rng.random() < 0.5 else F6.one()
            elif not skew and i == j and o == 3:
                B[i][j] = F6.gen() ** rng.choice([2, 4])
            else:
                B[i][j] = _root(rng, o)
    return Bicharacter(G, F6, B)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _random_degree(rng, G):
    return G.element(*(rng.randrange(o) for o in G.orders))


def _random_scalar(rng):
    return F6.from_coeffs([rng.randint(-3, 3) or 1, rng.randint(-2, 2)])


def _rescale(rng, basis, degrees, table, r, unit=None):
    s = [_random_scalar(rng) for _ in basis]
    if unit is not None:
        s[unit] = F6.one()
    products = [(i, j, k, c * s[i] * s[j] / s[k]) for (i, j, k, c) in table]
    return GradedAlgebra(r, basis, degrees, products, unit=unit)


def quantum_plane(rng, G, r):
    gx, gy = _random_degree(rng, G), _random_degree(rng, G)
    lam = _random_scalar(rng) if rng.random() < 0.5 else _root(rng, 6)
    d = rng.choice([1, 2])
    monos = [(a, b) for a in range(d + 1) for b in range(d + 1 - a)]
    drop_unit = rng.random() < 0.3
    if drop_unit:
        monos = [m for m in monos if m != (0, 0)]
    idx = {m: k for k, m in enumerate(monos)}
    basis = [f"x{a}y{b}" for a, b in monos]
    degrees = [a * gx + b * gy for a, b in monos]
    table = []
    for (a, b), i in idx.items():
        for (c, e), j in idx.items():
            target = (a + c, b + e)
            if target in idx:
                table.append((i, j, idx[target], lam ** (b * c)))
    unit = None if drop_unit else idx[(0, 0)]
    return _rescale(rng, basis, degrees, table, r, unit)


def _paths(nv, arrows):
    """Trivial paths first, then nonempty arrow sequences (acyclic, forward arrows)."""
    out = [((), v, v) for v in range(nv)]
    frontier = [((a,), s, t) for a, (s, t) in enumerate(arrows)]
    while frontier:
        out.extend(frontier)
        frontier = [(p + (a,), s, arrows[a][1]) for p, s, t in frontier for a in range(len(arrows)) if arrows[a][0] == t]
    return out


def path_algebra(rng, G, r):
    nv = rng.choice([1, 2, 3])
    labels = [_random_degree(rng, G) for _ in range(nv)]
    while True:
        arrows = [(s, t) for s, t in ((rng.randrange(nv), rng.randrange(nv)) for _ in range(rng.randrange(4))) if s < t]
        paths = _paths(nv, arrows)
        if len(paths) <= 6:
            break
    index = {(p, s): k for k, (p, s, t) in enumerate(paths)}
    basis = [f"e{s}" if not p else "*".join(f"a{a}" for a in p) for p, s, t in paths]
    degrees = [labels[s] - labels[t] for _, s, t in paths]
    table = []
    for i, (p, s, t) in enumerate(paths):
        for j, (p2, s2, t2) in enumerate(paths):
            if t == s2:
                table.append((i, j, index[(p + p2, s)], 1))
    return _rescale(rng, basis, degrees, table, r)


def matrix_algebra(rng, G, r):
    n = 2
    ds = [_random_degree(rng, G) for _ in range(n)]
    basis = [f"E{a}{b}" for a in range(n) for b in range(n)]
    degrees = [ds[a] - ds[b] for a in range(n) for b in range(n)]
    table = [(a * n + b, b * n + d, a * n + d, 1) for a in range(n) for b in range(n) for d in range(n)]
    return _rescale(rng, basis, degrees, table, r)


FAMILIES = [quantum_plane, path_algebra, matrix_algebra]


def random_graded_algebra(seed, skew=None):
    rng = random.Random(seed)
    G = rng.choice(GROUPS)
    r = random_bicharacter(rng, G, skew)
    family = FAMILIES[seed % len(FAMILIES)]
    return family(rng, G, r)
