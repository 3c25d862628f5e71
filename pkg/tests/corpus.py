"""Seeded corpus of reduced plane curves over F_101 with finite singular locus.

Curves are products of random lines, conics and cuspidal cubics, random smooth
curves, and random linear transforms of a few curves with non quasi-homogeneous
singularities (so that the torsion part is not always empty).
"""

import random

from polardeg.errors import PolarDegError
from polardeg.fields import make_field
from polardeg.maps import polar_map
from polardeg.poly import PolyRing, compose, linear_form

P = 101
CORPUS_SEED = 20240101
CORPUS_SIZE = 36

F = make_field(P)
R = PolyRing.projective(2, F)

# the first five have non quasi-homogeneous singularities (torsion of degree 1 or 2)
SPECIAL = [
    "(x1^2+x0*x2)*x0*(x1^2+x0*x2+x0^2)",
    "x1^4*x2+x0^5+x0^3*x1^2",
    "x1^4*x2^2+x0^6+x0^4*x1^2",
    "(x1^2-x0*x2)*(x1^2-x0*x2+x0^2)*(x1^2-x0*x2-x0^2)",
    "(x1^3+x0^2*x2)*(x1^3+x0^2*x2+x0^3)",
    "(x1^3+x0^2*x2)*(x1^2+x0*x2)",
    "x2*(x1^3+x0^2*x2)",
    "(x1^2+x0*x2)^2+x0^3*x1",
]


def _rand_form(rng, d):
    f = R.zero()
    for i in range(d + 1):
        for j in range(d + 1 - i):
            f = f + R.monomial((i, j, d - i - j), rng.randrange(P))
    return f


def _rand_linear_change(rng):
    while True:
        rows = [[rng.randrange(P) for _ in range(3)] for _ in range(3)]
        a, b, c = rows
        det = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
               + a[2] * (b[0] * c[1] - b[1] * c[0])) % P
        if det:
            return [linear_form(R, r) for r in rows]


def _transform(f, rng):
    return compose(f, _rand_linear_change(rng))


def _cusp(rng):
    return _transform(R.parse("x1^2*x2-x0^3"), rng)


def _candidate(rng, kind, special_index=0):
    if kind == "smooth":
        return _rand_form(rng, rng.randint(3, 6))
    if kind == "lines":
        f = R.one()
        for _ in range(rng.randint(3, 6)):
            f = f * _rand_form(rng, 1)
        return f
    if kind == "conic_lines":
        f = _rand_form(rng, 2)
        for _ in range(rng.randint(1, 3)):
            f = f * _rand_form(rng, 1)
        return f
    if kind == "conics":
        return _rand_form(rng, 2) * _rand_form(rng, 2)
    if kind == "cusp":
        f = _cusp(rng)
        extra = rng.choice([0, 1, 2, 3])
        if extra == 3:
            return f * _rand_form(rng, 2) * _rand_form(rng, 1)
        for _ in range(extra):
            f = f * _rand_form(rng, 1)
        return f
    if kind == "cubic_line":
        return _rand_form(rng, 3) * _rand_form(rng, 1)
    return _transform(R.parse(SPECIAL[special_index % len(SPECIAL)]), rng)


KINDS = ["smooth", "special", "lines", "conic_lines", "special", "conics", "cusp", "cubic_line"]


def build_corpus(size=CORPUS_SIZE, seed=CORPUS_SEED):
    """List of (kind, polar map) pairs; every map has a finite base locus and
    nothing stripped, so the curve is reduced."""
    rng = random.Random(seed)
    out = []
    i = nspecial = 0
    while len(out) < size:
        kind = KINDS[i % len(KINDS)]
        i += 1
        f = _candidate(rng, kind, nspecial)
        nspecial += kind == "special"
        d = f.total_degree()
        if not 3 <= d <= 6 or d % P == 0:
            continue
        try:
            m = polar_map(f)
        except PolarDegError:
            continue
        if not m.stripped.is_constant():
            continue
        out.append((kind, m))
    return out
