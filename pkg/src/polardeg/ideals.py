"""Ideal operations: quotients, saturation, elimination, degrees and local lengths.

Saturation by a single form g uses the weighted Bayer trick: adjoin a new
variable u of degree deg(g), take a weighted reverse-lex basis of I + (u - g)
with u last, strip powers of u and substitute u -> g. Saturation by an ideal
J is the intersection of the saturations by its generators.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce as _fold

from .errors import NoStabilization, NotHomogeneous, NotZeroDimensional
from .fields import FieldCtx
from .groebner import (GroebnerBasis, HilbertData, PresentationMatrix, buchberger,
                       hilbert_of_gb)
from .poly import (BITS, MASK, MonomialOrder, Polynomial, PolyRing, exact_divide,
                   linear_form, unpack)


class Ideal:
    """Generators in a fixed ring plus cached Groebner bases per order."""

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from another ring")
        self.gens = gens
        self._gbs = {}

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def of(cls, *gens):
        return cls(gens[0].ring, gens)

    def gb(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        g = self._gbs.get(order)
        if g is None:
            g = self._gbs[order] = buchberger(self.gens, order, self.ring)
        return g

    def reduced_gens(self):
        """Reduced Groebner basis in the default order, as a list."""
        return list(self.gb().polys)

    def is_unit(self):
        return self.gb().is_unit()

    def is_zero(self):
        return not self.gens

    def contains(self, f: Polynomial) -> bool:
        return f.is_zero() or self.gb().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, self.gens + [other])
        return Ideal(self.ring, self.gens + list(other.gens))

    def __mul__(self, other):
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __eq__(self, other):
        return isinstance(other, Ideal) and ideal_equal(self, other)

    __hash__ = None

    def hilbert(self) -> HilbertData:
        return hilbert_of_gb(self.gb())

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals in different rings")
    return I.gb()._elems == J.gb(I.ring.order)._elems


# --- points -----------------------------------------------------------------------

@dataclass(frozen=True)
class PointP:
    """Point of projective space; coordinates are encoded field integers with the
    first nonzero coordinate scaled to 1."""

    coords: tuple
    field: FieldCtx

    def __init__(self, coords, field: FieldCtx):
        coords = [c if field.k > 1 else field.from_int(c) for c in coords]
        if not any(coords):
            raise ValueError("all coordinates are zero")
        lead = next(c for c in coords if c)
        inv = field.inv(lead)
        coords = tuple(field.mul(c, inv) for c in coords)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "field", field)

    @property
    def n(self):
        return len(self.coords) - 1

    def pivot(self):
        return next(i for i, c in enumerate(self.coords) if c)

    def ideal(self, ring: PolyRing) -> Ideal:
        """Homogeneous ideal of the point: x_j - z_j x_i with i the pivot."""
        F = ring.field
        i = self.pivot()
        gens = []
        for j, c in enumerate(self.coords):
            if j == i:
                continue
            coeffs = [0] * ring.n
            coeffs[j] = 1
            coeffs[i] = F.neg(c)
            gens.append(linear_form(ring, coeffs))
        return Ideal(ring, gens)

    def __str__(self):
        return "(" + ":".join(self.field.to_text(c) for c in self.coords) + ")"

    @classmethod
    def parse(cls, text: str, field: FieldCtx):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ValueError(f"bad point {text!r}")
        inner = t[1:-1]
        parts = _split_top(inner, ":")
        return cls([field.parse(p) for p in parts], field)


def _split_top(s, sep):
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def parse_points(text: str, field: FieldCtx):
    """Parse ``"(a:b:c),(d:e:f)"``."""
    pts = []
    depth, start = 0, None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
            if depth == 1:
                start = i
        elif ch == ")":
            depth -= 1
            if depth == 0:
                pts.append(PointP.parse(text[start:i + 1], field))
    if depth != 0:
        raise ValueError("unbalanced parentheses in point list")
    return pts


# --- elimination, intersection, quotient, saturation --------------------------------

def _extend_ring(R: PolyRing, extra: str):
    S = PolyRing(list(R.names) + [extra], R.field)
    return S, list(range(R.n))


def eliminate(I: Ideal, drop) -> Ideal:
    """I ∩ k[remaining variables], returned in the same ring."""
    R = I.ring
    drop = sorted({R.index(d) for d in drop})
    if not drop:
        return Ideal(R, list(I.gens))
    order = MonomialOrder.elimination(R.n, drop)
    mask = 0
    for i in drop:
        mask |= MASK << (BITS * i)
    gb = I.gb(order)
    return Ideal(R, [g for g in gb.polys if not any(m & mask for m in g._d)])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating a tag variable t from t*I + (1-t)*J."""
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R, [])
    if I.is_unit():
        return Ideal(R, list(J.gens))
    if J.is_unit():
        return Ideal(R, list(I.gens))
    S, vm = _extend_ring(R, "_t")
    t = S.var(R.n)
    one_minus_t = S.one() - t
    gens = [t * g.to_ring(S, vm) for g in I.gens] + [one_minus_t * g.to_ring(S, vm) for g in J.gens]
    order = MonomialOrder.elimination(S.n, [R.n])
    gb = buchberger(gens, order, S)
    tmask = MASK << (BITS * R.n)
    back = list(range(R.n)) + [0]
    out = [g.to_ring(R, back) for g in gb.polys if not any(m & tmask for m in g._d)]
    return Ideal(R, out)


def intersect_many(ideals) -> Ideal:
    ideals = list(ideals)
    return _fold(intersect, ideals)


def quotient_by_element(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g) = (I ∩ (g)) / g."""
    R = I.ring
    if g.is_zero():
        return Ideal.unit(R)
    if I.contains(g):
        return Ideal.unit(R)
    inter = intersect(I, Ideal(R, [g]))
    return Ideal(R, [exact_divide(h, g) for h in inter.gens])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = ∩_g (I : g) over the generators g of J."""
    R = I.ring
    parts = [quotient_by_element(I, g) for g in J.gens if not g.is_zero()]
    parts = [P for P in parts if not P.is_unit()]
    if not parts:
        return Ideal.unit(R)
    return intersect_many(parts)


def saturate_by_element(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g^∞)."""
    R = I.ring
    if g.is_zero():
        return Ideal.unit(R)
    if g.is_constant():
        return Ideal(R, list(I.gens))
    if I.is_zero():
        return Ideal(R, [])
    if I.is_unit() or I.contains(g):
        return Ideal.unit(R)
    if I.is_homogeneous() and g.is_homogeneous():
        return _bayer_saturation(I, g)
    return _rabinowitsch_saturation(I, g)


def _bayer_saturation(I: Ideal, g: Polynomial) -> Ideal:
    R = I.ring
    n = R.n
    dg = sum(g.degrees().pop())
    vars_g = g.variables()
    if len(g) == 1 and len(vars_g) == 1 and dg == 1:
        # g is a variable: reverse lex with that variable last
        v = vars_g[0]
        perm = [i for i in range(n) if i != v] + [v]
        order = MonomialOrder.grevlex(n, perm)
        gb = I.gb(order)
        shift = BITS * v
        out = []
        for h in gb.polys:
            e = min((m >> shift) & MASK for m in h._d)
            out.append(Polynomial(R, {m - (e << shift): c for m, c in h._d.items()}))
        return Ideal(R, out)
    S, vm = _extend_ring(R, "_u")
    u = S.var(n)
    gens = [h.to_ring(S, vm) for h in I.gens] + [u - g.to_ring(S, vm)]
    weights = [1] * n + [dg]
    order = MonomialOrder.weighted_grevlex(weights)
    gb = buchberger(gens, order, S)
    shift = BITS * n
    from .poly import compose
    subs = list(R.gens) + [g]
    out = []
    for h in gb.polys:
        e = min((m >> shift) & MASK for m in h._d)
        stripped = Polynomial(S, {m - (e << shift): c for m, c in h._d.items()})
        out.append(compose(stripped, subs))
    return Ideal(R, out)


def _rabinowitsch_saturation(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g^∞) = (I + (1 - u g)) ∩ k[x] for inhomogeneous input."""
    R = I.ring
    S, vm = _extend_ring(R, "_u")
    u = S.var(R.n)
    gens = [h.to_ring(S, vm) for h in I.gens] + [S.one() - u * g.to_ring(S, vm)]
    order = MonomialOrder.elimination(S.n, [R.n])
    gb = buchberger(gens, order, S)
    mask = MASK << (BITS * R.n)
    back = list(range(R.n)) + [0]
    return Ideal(R, [h.to_ring(R, back) for h in gb.polys if not any(m & mask for m in h._d)])


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """(I : J^∞) as the intersection of the saturations by each generator of J."""
    R = I.ring
    gens = [g for g in J.gens if not g.is_zero()]
    if not gens:
        return Ideal.unit(R)
    parts = []
    for g in gens:
        P = saturate_by_element(I, g)
        if P.is_unit():
            continue
        if any(ideal_equal(P, Q) for Q in parts):
            continue
        parts.append(P)
    if not parts:
        return Ideal.unit(R)
    # drop parts containing another part: they do not change the intersection
    parts.sort(key=lambda P: len(P.gb()))
    kept = []
    for P in parts:
        if any(P.contains_ideal(Q) for Q in kept):
            continue
        kept = [Q for Q in kept if not Q.contains_ideal(P)] + [P]
    return intersect_many(kept)


def saturate_iterated(I: Ideal, J: Ideal, bound: int = 64) -> Ideal:
    """(I : J^∞) as the stable value of I : J : J : ... (slower reference route)."""
    cur = I
    for _ in range(bound):
        nxt = ideal_quotient(cur, J)
        if ideal_equal(nxt, cur):
            return cur
        cur = nxt
    raise NoStabilization(f"quotient chain did not stabilize within {bound} steps")


# --- degrees and lengths -------------------------------------------------------------

def projective_dimension_and_degree(I: Ideal):
    R = I.ring
    if not R.grading.is_standard:
        raise ValueError("projective degree needs a standard graded ring")
    if not I.is_homogeneous():
        raise NotHomogeneous("ideal is not homogeneous")
    return I.hilbert().dimension_and_degree()


def projective_degree(I: Ideal) -> int:
    """Degree of the zero-dimensional projective scheme V(I); 0 if empty.

    Read off the Hilbert polynomial of R/I, which is unchanged by saturating
    with the irrelevant ideal."""
    dim, deg = projective_dimension_and_degree(I)
    if dim > 0:
        raise NotZeroDimensional(f"V(I) has dimension {dim}")
    return deg if dim == 0 else 0


def local_length(I: Ideal, z: PointP) -> int:
    """Length of R/I localized at the point z."""
    total = projective_degree(I)
    if total == 0:
        return 0
    if not all(g.evaluate(z.coords) == 0 for g in I.gens):
        return 0
    rest = saturate(I, z.ideal(I.ring))
    return total - projective_degree(rest)


def affine_length_at_origin(gens, max_power: int = 200) -> int:
    """Length of k[x]/(gens) localized at the origin, by truncating with growing
    powers of the maximal ideal until the quotient dimension stabilizes
    (Nakayama). Independent of the saturation machinery."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotZeroDimensional("zero ideal")
    R = gens[0].ring
    if any(g.constant_value() for g in gens):
        return 0
    prev = None
    N = 1
    while N <= max_power:
        mN = [R.monomial(e) for e in _monomials_of_degree(R.n, N)]
        gb = buchberger(gens + mN, R.order, R)
        dim = hilbert_of_gb(gb).affine_dimension()
        if dim == prev:
            return dim
        prev = dim
        N += 1
    raise NoStabilization("local length did not stabilize")


def _monomials_of_degree(n, d):
    for c in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield tuple(e)


# --- minors and Fitting ideals -------------------------------------------------------

def determinant(rows):
    """Determinant of a small square matrix of polynomials (Laplace expansion)."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    R = next(f.ring for r in rows for f in r)
    total = R.zero()
    for j in range(k):
        a = rows[0][j]
        if a.is_zero():
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * determinant(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(M: PresentationMatrix, size: int):
    out = []
    for rs in itertools.combinations(range(M.nrows), size):
        for cs in itertools.combinations(range(M.ncols), size):
            d = determinant([[M.rows[i][j] for j in cs] for i in rs])
            if not d.is_zero():
                out.append(d)
    return out


def fitting_ideal(M: PresentationMatrix, index: int) -> Ideal:
    """Fitt_index of the module presented by M: ideal of (g - index)-minors."""
    R = M.ring
    g = M.nrows
    size = g - index
    if size <= 0:
        return Ideal.unit(R)
    if size > min(M.nrows, M.ncols):
        return Ideal(R, [])
    return Ideal(R, minors(M, size))


def irrelevant_ideal(ring: PolyRing, block: int | None = None) -> Ideal:
    if block is None:
        return Ideal(ring, ring.gens)
    start = sum(ring.grading.blocks[:block])
    size = ring.grading.blocks[block]
    return Ideal(ring, [ring.var(i) for i in range(start, start + size)])


# --- rational points of zero-dimensional schemes --------------------------------------

def _upoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a, b, F):
    a = list(a)
    inv = F.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], inv)
        s = len(a) - 1 - db
        if c:
            for i, y in enumerate(b):
                a[s + i] = F.sub(a[s + i], F.mul(c, y))
        a.pop()
        _upoly_trim(a)
    return a


def _upoly_mul(a, b, F):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _upoly_trim(out)


def _upoly_gcd(a, b, F):
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        a, b = b, _upoly_mod(a, b, F)
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def _upoly_powmod(base, e, mod, F):
    result = [1]
    base = _upoly_mod(base, mod, F)
    while e:
        if e & 1:
            result = _upoly_mod(_upoly_mul(result, base, F), mod, F)
        base = _upoly_mod(_upoly_mul(base, base, F), mod, F)
        e >>= 1
    return result


def _upoly_sub(a, b, F):
    n = max(len(a), len(b))
    out = [F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return _upoly_trim(out)


def univariate_roots(coeffs, F: FieldCtx, rng=None):
    """Distinct roots in F of the polynomial with coefficient list (low degree first)."""
    f = _upoly_trim(list(coeffs))
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    # split off the rational part: gcd(f, x^q - x)
    xq = _upoly_powmod([0, 1], F.q, f, F)
    g = _upoly_gcd(f, _upoly_sub(xq, [0, 1], F), F)
    rng = rng or random.Random(0)
    roots = []
    _split_linear(g, F, rng, roots)
    return sorted(roots)


def _split_linear(g, F, rng, out):
    d = len(g) - 1
    if d <= 0:
        return
    if d == 1:
        out.append(F.neg(F.mul(g[0], F.inv(g[1]))))
        return
    if F.q <= 4096 or F.p == 2:
        for a in F.elements():
            v = 0
            for c in reversed(g):
                v = F.add(F.mul(v, a), c)
            if not v:
                out.append(a)
        return
    while True:
        # Cantor-Zassenhaus equal-degree splitting (odd q)
        a = [rng.randrange(F.q), 1]
        h = _upoly_powmod(a, (F.q - 1) // 2, g, F)
        h = _upoly_sub(h, [1], F)
        c = _upoly_gcd(g, h, F)
        if 0 < len(c) - 1 < d:
            _split_linear(c, F, rng, out)
            q = _udiv(g, c, F)
            _split_linear(q, F, rng, out)
            return


def _udiv(a, b, F):
    a = list(a)
    inv = F.inv(b[-1])
    q = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = F.mul(a[-1], inv)
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = F.sub(a[s + i], F.mul(c, y))
        a.pop()
        _upoly_trim(a)
    return q


def rational_points(I: Ideal):
    """All F-rational points of the zero-dimensional projective scheme V(I)."""
    R = I.ring
    n = R.n
    F = R.field
    found = []
    for chart in range(n):
        # points with x_j = 0 for j < chart and x_chart = 1
        fixed = {j: 0 for j in range(chart)}
        fixed[chart] = 1
        free = list(range(chart + 1, n))
        for sol in _solve_affine(I.gens, R, fixed, free):
            found.append(PointP(sol, F))
    return sorted(set(found), key=lambda z: z.coords)


def _substitute(f: Polynomial, values: dict, R: PolyRing) -> Polynomial:
    """Plug field values into some variables, keeping the ring."""
    F = R.field
    n = R.n
    d = {}
    for m, c in f._d.items():
        e = list(unpack(m, n))
        v = c
        for j, val in values.items():
            if e[j]:
                v = F.mul(v, F.pow(val, e[j]))
                e[j] = 0
            if not v:
                break
        if v:
            from .poly import pack
            k = pack(e)
            d[k] = F.add(d.get(k, 0), v)
    return Polynomial(R, {k: c for k, c in d.items() if c})


def _min_poly(gb: GroebnerBasis, var: int, cap: int = 1 << 14):
    """Coefficients (low to high) of the minimal polynomial of x_var in R/I,
    found as the first linear dependency among the normal forms of its powers."""
    R = gb.ring
    F = R.field
    x = R.var(var)
    basis = []          # (pivot mono, vector, combination of powers)
    cur = gb.reduce(R.one())
    for k in range(cap):
        vec = dict(cur._d)
        combo = {k: 1}
        for piv, bv, bc in basis:
            c = vec.get(piv)
            if not c:
                continue
            for mm, v in bv.items():
                w = F.sub(vec.get(mm, 0), F.mul(c, v))
                if w:
                    vec[mm] = w
                else:
                    vec.pop(mm, None)
            for j, v in bc.items():
                combo[j] = F.sub(combo.get(j, 0), F.mul(c, v))
        if not vec:
            return [combo.get(j, 0) for j in range(k + 1)]
        piv = max(vec)
        inv = F.inv(vec[piv])
        basis.append((piv, {mm: F.mul(v, inv) for mm, v in vec.items()},
                      {j: F.mul(v, inv) for j, v in combo.items()}))
        cur = gb.reduce(cur * x)
    raise NotZeroDimensional("no minimal polynomial found; the chart is not zero-dimensional")


def _solve_affine(gens, R, fixed, free):
    gens = [_substitute(g, fixed, R) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if any(g.is_constant() for g in gens):
        return []
    if not free:
        return [tuple(fixed[j] for j in range(R.n))]
    if not gens:
        raise NotZeroDimensional("affine chart is not zero-dimensional")
    # grevlex basis plus linear algebra in the finite quotient; much cheaper than lex
    gb = buchberger(gens, MonomialOrder.grevlex(R.n), R)
    if gb.is_unit():
        return []
    last = free[-1]
    out = []
    for r in univariate_roots(_min_poly(gb, last), R.field):
        nf = dict(fixed)
        nf[last] = r
        out.extend(_solve_affine(gb.polys, R, nf, free[:-1]))
    return out
