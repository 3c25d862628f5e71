"""Buchberger engine for ideals and submodules of free modules.

Internally a polynomial is a list of ``(key, mono, coeff)`` triples sorted by
descending order key (see :mod:`polardeg.poly` for the packing). Module
elements are polynomials in extra "position" variables ``e_i``, each term
carrying exactly one ``e_i`` to the first power; the order puts a position
weight row first (position over term), so leading terms never mix positions
and divisibility of packed monomials respects positions automatically.

Pair handling follows Gebauer-Moeller (product and chain criteria, product
criterion disabled for modules); pairs are taken by smallest lcm degree, ties
by creation index, so the output is deterministic.
"""

from __future__ import annotations

import heapq
from collections import OrderedDict
from dataclasses import dataclass, field

from .errors import InexactDivision
from .poly import (BITS, MASK, MonomialOrder, Polynomial, PolyRing, guard_mask,
                   mono_lcm, pack, unpack)


# --- engine core -------------------------------------------------------------------

class _Engine:
    def __init__(self, n, order: MonomialOrder, F, dw=None, positions=None):
        self.n = n
        self.order = order
        self.F = F
        self.p = F.p if F.k == 1 else None
        self.guard = guard_mask(n)
        self.dw = tuple(dw) if dw is not None else (1,) * n
        # mask selecting the position fields (module case)
        self.posmask = 0
        if positions:
            for i in positions:
                self.posmask |= MASK << (BITS * i)
        self.is_module = bool(positions)

    # conversions
    def key(self, m):
        return self.order.key_of_packed(m)

    def from_dict(self, d):
        key = self.order.key_of_packed
        return sorted(((key(m), m, c) for m, c in d.items() if c), reverse=True)

    def wdeg(self, m):
        d, i, dw = 0, 0, self.dw
        while m:
            e = m & MASK
            if e:
                d += e * dw[i]
            m >>= BITS
            i += 1
        return d

    def monic(self, terms):
        c = terms[0][2]
        if c == 1:
            return terms
        F = self.F
        inv = F.inv(c)
        if self.p:
            p = self.p
            return [(k, m, v * inv % p) for k, m, v in terms]
        return [(k, m, F.mul(v, inv)) for k, m, v in terms]

    # reduction
    def reduce(self, init, reducers, full=True):
        """Reduce the sum of the triples in ``init`` by ``reducers``.

        reducers: list of (lead mono, lead key, tail) with monic leads.
        With full=False stop as soon as the leading term is irreducible.
        """
        guard = self.guard
        acc = {}
        mon = {}
        p = self.p
        F = self.F
        if p:
            for k, m, c in init:
                if k in acc:
                    acc[k] = (acc[k] + c) % p
                else:
                    acc[k] = c % p
                    mon[k] = m
        else:
            for k, m, c in init:
                if k in acc:
                    acc[k] = F.add(acc[k], c)
                else:
                    acc[k] = c
                    mon[k] = m
        heap = [-k for k in acc]
        heapq.heapify(heap)
        out = []
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            k = -pop(heap)
            c = acc.pop(k)
            if not c:
                continue
            m = mon[k]
            for lm, lk, tail in reducers:
                if ((m | guard) - lm) & guard == guard:
                    break
            else:
                out.append((k, m, c))
                if not full:
                    rest = sorted(((kk, mon[kk], cc) for kk, cc in acc.items() if cc), reverse=True)
                    out.extend(rest)
                    return out
                continue
            dk = k - lk
            dm = m - lm
            if p:
                for tk, tm, tc in tail:
                    nk = tk + dk
                    v = acc.get(nk)
                    if v is None:
                        acc[nk] = -c * tc % p
                        mon[nk] = tm + dm
                        push(heap, -nk)
                    else:
                        acc[nk] = (v - c * tc) % p
            else:
                for tk, tm, tc in tail:
                    nk = tk + dk
                    v = acc.get(nk)
                    if v is None:
                        acc[nk] = F.neg(F.mul(c, tc))
                        mon[nk] = tm + dm
                        push(heap, -nk)
                    else:
                        acc[nk] = F.sub(v, F.mul(c, tc))
        return out

    def spoly_init(self, a, b, L):
        """Triples of (L/lm_a)*a - (L/lm_b)*b without the cancelling leads (inputs monic)."""
        lk = self.key(L)
        F = self.F
        ka, ma, _ = a[0]
        kb, mb, _ = b[0]
        dka, dma = lk - ka, L - ma
        dkb, dmb = lk - kb, L - mb
        out = [(k + dka, m + dma, c) for k, m, c in a[1:]]
        if self.p:
            p = self.p
            out.extend((k + dkb, m + dmb, (p - c) % p) for k, m, c in b[1:])
        else:
            out.extend((k + dkb, m + dmb, F.neg(c)) for k, m, c in b[1:])
        return out

    # Buchberger
    def groebner(self, polys):
        guard = self.guard
        n = self.n
        posmask = self.posmask
        module = self.is_module

        basis = []      # monic term lists
        leads = []      # lead monos
        active = []     # indices into basis forming the current reducer set
        pairs = {}      # (i, j) -> lcm, live pairs
        heap = []
        counter = [0]

        def divides(a, b):
            return ((b | guard) - a) & guard == guard

        def coprime(a, b):
            if module:
                return False
            # no shared variable: lcm equals product
            return mono_lcm(a, b, n) == a + b

        def reducers():
            return [(leads[i], basis[i][0][0], basis[i][1:]) for i in active]

        red_cache = [None]

        def get_reducers():
            if red_cache[0] is None:
                red_cache[0] = reducers()
            return red_cache[0]

        def update(h):
            lh = leads[h]
            cand = [g for g in active if not module or (leads[g] & posmask) == (lh & posmask)]
            lcms = {g: mono_lcm(lh, leads[g], n) for g in cand}
            D = []
            for idx, g in enumerate(cand):
                L = lcms[g]
                if coprime(lh, leads[g]):
                    D.append(g)
                    continue
                if any(divides(lcms[g2], L) for g2 in cand[idx + 1:]):
                    continue
                if any(divides(lcms[g2], L) for g2 in D):
                    continue
                D.append(g)
            E = [g for g in D if not coprime(lh, leads[g])]
            # prune old pairs by the chain criterion
            dead = []
            for (i, j), L in pairs.items():
                if divides(lh, L):
                    if mono_lcm(leads[i], lh, n) != L and mono_lcm(leads[j], lh, n) != L:
                        dead.append((i, j))
            for key in dead:
                del pairs[key]
            for g in E:
                L = lcms[g]
                key = (g, h)
                pairs[key] = L
                counter[0] += 1
                heapq.heappush(heap, (self.wdeg(L), counter[0], g, h))
            active[:] = [g for g in active if not divides(lh, leads[g])] + [h]
            red_cache[0] = None

        def add(terms):
            terms = self.monic(terms)
            basis.append(terms)
            leads.append(terms[0][1])
            update(len(basis) - 1)
            return terms[0][1] == 0 and not module

        for f in polys:
            if not f:
                continue
            h = self.reduce(f, get_reducers(), full=False)
            if h and add(h):
                return [[(0, 0, 1)]]

        while heap:
            _, _, i, j = heapq.heappop(heap)
            L = pairs.pop((i, j), None)
            if L is None:
                continue
            init = self.spoly_init(basis[i], basis[j], L)
            h = self.reduce(init, get_reducers(), full=False)
            if h and add(h):
                return [[(0, 0, 1)]]

        # interreduce the minimal basis
        final = []
        reds = get_reducers()
        for idx in active:
            t = basis[idx]
            tail = self.reduce(t[1:], reds, full=True)
            final.append([t[0]] + tail)
        final.sort(key=lambda t: t[0][0], reverse=True)
        return final

    def normal_form(self, terms, gb):
        reds = [(t[0][1], t[0][0], t[1:]) for t in gb]
        return self.reduce(terms, reds, full=True)


def _engine_for(ring: PolyRing, order: MonomialOrder, dw=None):
    return _Engine(ring.n, order, ring.field, dw=dw)


def _to_dict(terms):
    return {m: c for _, m, c in terms}


# --- user-level Groebner bases --------------------------------------------------------

class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, elems, engine=None):
        self.ring = ring
        self.order = order
        self._engine = engine or _engine_for(ring, order)
        self._elems = elems
        self.polys = [Polynomial(ring, _to_dict(t)) for t in elems]
        self.reduced = True

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def leading_monomials(self):
        """Packed leading monomials."""
        return [t[0][1] for t in self._elems]

    def leading_exponents(self):
        return [unpack(t[0][1], self.ring.n) for t in self._elems]

    def is_unit(self):
        return len(self._elems) == 1 and self._elems[0][0][1] == 0

    def is_zero(self):
        return not self._elems

    def reduce(self, f: Polynomial) -> Polynomial:
        eng = self._engine
        terms = eng.from_dict(f._d)
        return Polynomial(self.ring, _to_dict(eng.normal_form(terms, self._elems)))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order and self._elems == other._elems)

    def __repr__(self):
        return f"GroebnerBasis({[str(p) for p in self.polys]})"


_GB_CACHE: "OrderedDict" = OrderedDict()
_GB_CACHE_SIZE = 512


def buchberger(gens, order: MonomialOrder | None = None, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    order = order or ring.order
    cache_key = (ring, order, tuple(gens))
    hit = _GB_CACHE.get(cache_key)
    if hit is not None:
        _GB_CACHE.move_to_end(cache_key)
        return hit
    eng = _engine_for(ring, order)
    elems = eng.groebner([eng.from_dict(g._d) for g in gens])
    gb = GroebnerBasis(ring, order, elems, eng)
    _GB_CACHE[cache_key] = gb
    if len(_GB_CACHE) > _GB_CACHE_SIZE:
        _GB_CACHE.popitem(last=False)
    return gb


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    R = f.ring
    order = order or R.order
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    L = [max(a, b) for a, b in zip(ef, eg)]
    F = R.field
    a = f.mul_monomial([l - e for l, e in zip(L, ef)], F.inv(cf))
    b = g.mul_monomial([l - e for l, e in zip(L, eg)], F.inv(cg))
    return a - b


def is_groebner(polys, order: MonomialOrder | None = None) -> bool:
    """Check Buchberger's criterion directly (all S-polynomials reduce to 0)."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return True
    R = polys[0].ring
    order = order or R.order
    eng = _engine_for(R, order)
    elems = [eng.monic(eng.from_dict(p._d)) for p in polys]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            s = s_polynomial(polys[i], polys[j], order)
            if eng.normal_form(eng.from_dict(s._d), elems):
                return False
    return True


# --- exact division and the elimination lcm ----------------------------------------

def _divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    if b.is_zero():
        from .errors import DivisionByZero
        raise DivisionByZero("division by the zero polynomial")
    R = a.ring
    eng = _engine_for(R, R.order)
    bt = eng.from_dict(b._d)
    F = R.field
    lk, lm, lc = bt[0]
    inv = F.inv(lc)
    guard = eng.guard
    # long division: quotient terms collected while reducing by b only
    acc = dict((k, c) for k, _, c in eng.from_dict(a._d))
    mon = {k: m for k, m, _ in eng.from_dict(a._d)}
    heap = [-k for k in acc]
    heapq.heapify(heap)
    q = {}
    tail = bt[1:]
    while heap:
        k = -heapq.heappop(heap)
        c = acc.pop(k)
        if not c:
            continue
        m = mon[k]
        if ((m | guard) - lm) & guard != guard:
            raise InexactDivision("remainder is nonzero")
        qc = F.mul(c, inv)
        dm, dk = m - lm, k - lk
        q[dm] = qc
        for tk, tm, tc in tail:
            nk = tk + dk
            v = acc.get(nk)
            if v is None:
                acc[nk] = F.neg(F.mul(qc, tc))
                mon[nk] = tm + dm
                heapq.heappush(heap, -nk)
            else:
                acc[nk] = F.sub(v, F.mul(qc, tc))
    return Polynomial(R, q)


def _tagged_ring(R: PolyRing, tag="_t"):
    names = list(R.names) + [tag]
    return PolyRing(names, R.field)


def lcm_by_elimination(a: Polynomial, b: Polynomial) -> Polynomial:
    """Generator of (a) ∩ (b): eliminate t from (t*a, (1-t)*b)."""
    R = a.ring
    S = _tagged_ring(R)
    n = R.n
    t = S.var(n)
    A = a.to_ring(S, list(range(n)))
    B = b.to_ring(S, list(range(n)))
    order = MonomialOrder.elimination(S.n, [n])
    gb = buchberger([t * A, (S.one() - t) * B], order, S)
    tbits = MASK << (BITS * n)
    free = [g for g in gb.polys if all(not (m & tbits) for m in g._d)]
    if len(free) != 1:
        raise AssertionError("intersection of principal ideals is not principal")
    return free[0].to_ring(R, list(range(n)) + [0])


# --- modules ------------------------------------------------------------------------------

def _deg(f: Polynomial):
    d = f.degree()
    return d


def _add_deg(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _sub_deg(a, b):
    if isinstance(a, tuple):
        return tuple(x - y for x, y in zip(a, b))
    return a - b


def _total(d):
    return sum(d) if isinstance(d, tuple) else d


@dataclass
class PresentationMatrix:
    """Matrix of polynomials; column j is a relation among the row generators.

    ``target_degrees[i]`` is the degree of the i-th generator of the target
    free module, ``source_degrees[j]`` the degree of the j-th column, so
    entry (i, j) is homogeneous of degree source[j] - target[i].
    """

    ring: PolyRing
    rows: list                    # list of rows, each a list of Polynomial
    target_degrees: list
    source_degrees: list

    @property
    def nrows(self):
        return len(self.target_degrees)

    @property
    def ncols(self):
        return len(self.source_degrees)

    def entry(self, i, j):
        return self.rows[i][j]

    def column(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @classmethod
    def from_columns(cls, ring, cols, target_degrees, source_degrees=None):
        nr = len(target_degrees)
        rows = [[c[i] for c in cols] for i in range(nr)]
        if source_degrees is None:
            source_degrees = [_column_degree(c, target_degrees) for c in cols]
        return cls(ring, rows, list(target_degrees), list(source_degrees))

    def twists(self):
        return list(self.source_degrees)

    def is_homogeneous(self):
        for j in range(self.ncols):
            for i in range(self.nrows):
                f = self.rows[i][j]
                if f.is_zero():
                    continue
                if not f.is_homogeneous() or _add_deg(f.degree(), self.target_degrees[i]) != self.source_degrees[j]:
                    return False
        return True

    def has_unit_entry(self):
        return any(f and f.is_constant() for r in self.rows for f in r)

    def __str__(self):
        w = [[str(f) for f in r] for r in self.rows]
        return "\n".join("[" + ", ".join(r) + "]" for r in w)


def _column_degree(col, target_degrees):
    for f, d in zip(col, target_degrees):
        if not f.is_zero():
            return _add_deg(f.degree(), d)
    return None


def _module_engine(ring, npos, pos_weights, pos_degrees):
    """Engine over ring vars + npos position vars, position over term."""
    n = ring.n
    N = n + npos
    x_rows = MonomialOrder.grevlex(n).rows
    first = [0] * n + list(pos_weights)
    rows = [first] + [list(r) + [0] * npos for r in x_rows]
    order = MonomialOrder(rows, "pot")
    dw = [1] * n + [_total(d) for d in pos_degrees]
    return _Engine(N, order, ring.field, dw=dw, positions=range(n, N))


def _vec_to_terms(eng, n, vec, offset):
    d = {}
    for i, f in enumerate(vec):
        shift = 1 << (BITS * (n + offset + i))
        for m, c in f._d.items():
            d[m + shift] = c
    return eng.from_dict(d)


def _terms_to_vec(ring, terms, n, offset, length):
    vec = [dict() for _ in range(length)]
    full = (1 << (BITS * n)) - 1
    for _, m, c in terms:
        pos = (m >> (BITS * n)).bit_length()
        idx = (pos - 1) // BITS - offset
        vec[idx][m & full] = c
    return [Polynomial(ring, v) for v in vec]


def module_groebner(ring, vectors, rank, target_degrees=None):
    """Reduced Groebner basis (position over term) of a submodule of ring^rank."""
    target_degrees = target_degrees or [0] * rank
    eng = _module_engine(ring, rank, list(range(rank, 0, -1)), target_degrees)
    elems = eng.groebner([_vec_to_terms(eng, ring.n, v, 0) for v in vectors if any(not f.is_zero() for f in v)])
    return eng, elems


def module_contains(ring, vectors, rank, v, target_degrees=None):
    eng, elems = module_groebner(ring, vectors, rank, target_degrees)
    return not eng.normal_form(_vec_to_terms(eng, ring.n, v, 0), elems)


def _raw_syzygies(ring, cols, target_degrees):
    """Generators (not minimal) of the syzygies of the given columns."""
    t = len(target_degrees)
    s = len(cols)
    n = ring.n
    src = [_column_degree(c, target_degrees) for c in cols]
    src = [d if d is not None else (0 if not isinstance(target_degrees[0], tuple) else tuple(0 for _ in target_degrees[0])) for d in src]
    weights = list(range(t + s, 0, -1))
    eng = _module_engine(ring, t + s, weights, list(target_degrees) + src)
    inputs = []
    for j, c in enumerate(cols):
        d = {}
        for i, f in enumerate(c):
            shift = 1 << (BITS * (n + i))
            for m, v in f._d.items():
                d[m + shift] = v
        d[1 << (BITS * (n + t + j))] = 1
        inputs.append(eng.from_dict(d))
    elems = eng.groebner(inputs)
    comp_mask = 0
    for i in range(t):
        comp_mask |= MASK << (BITS * (n + i))
    syz = []
    for e in elems:
        if e[0][1] & comp_mask:
            continue
        syz.append(_terms_to_vec(ring, e, n, t, s))
    return syz, src


def _minimal_subset(ring, vecs, rank, degrees_of, target_degrees):
    """Greedy minimal generating subset of a graded module, lowest degrees first."""
    order = sorted(range(len(vecs)), key=lambda i: (_total(degrees_of[i]), i))
    kept = []
    for i in order:
        v = vecs[i]
        if kept and module_contains(ring, [vecs[j] for j in kept], rank, v, target_degrees):
            continue
        kept.append(i)
    kept.sort(key=lambda i: (_total(degrees_of[i]), i))
    return kept


def syzygy_module(gens, target_degrees=None, minimal=True) -> PresentationMatrix:
    """First syzygies of polynomials (or of module vectors given as columns)."""
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    if isinstance(gens[0], Polynomial):
        # an ideal: one row of degree zero
        cols = [[g] for g in gens]
        target_degrees = None
    else:
        cols = [list(c) for c in gens]
    ring = next(f.ring for c in cols for f in c)
    if target_degrees is None:
        zero = 0 if ring.grading.is_standard else tuple(0 for _ in ring.grading.blocks)
        target_degrees = [zero] * len(cols[0])
    if any(len(c) != len(target_degrees) for c in cols):
        raise ValueError("columns and target degrees have different lengths")
    syz, src = _raw_syzygies(ring, cols, target_degrees)
    homogeneous = all(f.is_homogeneous() for c in cols for f in c)
    sdeg = [_column_degree(v, src) for v in syz]
    if minimal and homogeneous and syz:
        keep = _minimal_subset(ring, syz, len(cols), sdeg, src)
        syz = [syz[i] for i in keep]
        sdeg = [sdeg[i] for i in keep]
    return PresentationMatrix.from_columns(ring, syz, src, sdeg)


# --- resolutions -------------------------------------------------------------------------

@dataclass
class GradedResolution:
    """Chain of presentation matrices d_1, d_2, ... with d_k: F_k -> F_{k-1}."""

    maps: list = field(default_factory=list)
    minimal: bool = False

    def free_degrees(self, k):
        if k == 0:
            return list(self.maps[0].target_degrees) if self.maps else []
        return list(self.maps[k - 1].source_degrees)

    def length(self):
        return sum(1 for m in self.maps if m.ncols)

    def check_complex(self):
        """True iff consecutive maps compose to zero."""
        for a, b in zip(self.maps, self.maps[1:]):
            for j in range(b.ncols):
                for i in range(a.nrows):
                    s = a.ring.zero()
                    for k in range(a.ncols):
                        s = s + a.rows[i][k] * b.rows[k][j]
                    if not s.is_zero():
                        return False
        return True


def free_resolution(gens, target_degrees=None, max_length=None) -> GradedResolution:
    """Graded free resolution of the module generated by ``gens``: the first map
    is the syzygy matrix of gens, then syzygies of syzygies until zero."""
    maps = []
    cur = gens
    tdeg = target_degrees
    while True:
        M = syzygy_module(cur, tdeg)
        if M.ncols == 0:
            break
        maps.append(M)
        if max_length and len(maps) >= max_length:
            break
        cur = M.columns()
        tdeg = M.target_degrees
    return GradedResolution(maps, minimal=True)


def minimize_resolution(res: GradedResolution) -> GradedResolution:
    """Cancel unit entries until every entry lies in the irrelevant ideal."""
    maps = [PresentationMatrix(m.ring, [list(r) for r in m.rows], list(m.target_degrees), list(m.source_degrees))
            for m in res.maps]
    changed = True
    while changed:
        changed = False
        for k, d in enumerate(maps):
            hit = None
            for i in range(d.nrows):
                for j in range(d.ncols):
                    f = d.rows[i][j]
                    if f and f.is_constant():
                        hit = (i, j)
                        break
                if hit:
                    break
            if not hit:
                continue
            r, c = hit
            F = d.ring.field
            uinv = F.inv(d.rows[r][c].constant_value())
            newrows = []
            for i in range(d.nrows):
                if i == r:
                    continue
                row = []
                for j in range(d.ncols):
                    if j == c:
                        continue
                    v = d.rows[i][j]
                    if d.rows[r][j] and d.rows[i][c]:
                        v = v - (d.rows[r][j] * d.rows[i][c]).scale(uinv)
                    row.append(v)
                newrows.append(row)
            maps[k] = PresentationMatrix(
                d.ring, newrows,
                [x for i, x in enumerate(d.target_degrees) if i != r],
                [x for j, x in enumerate(d.source_degrees) if j != c])
            if k > 0:
                prev = maps[k - 1]
                maps[k - 1] = PresentationMatrix(
                    prev.ring, [[x for j, x in enumerate(row) if j != r] for row in prev.rows],
                    list(prev.target_degrees), [x for j, x in enumerate(prev.source_degrees) if j != r])
            if k + 1 < len(maps):
                nxt = maps[k + 1]
                maps[k + 1] = PresentationMatrix(
                    nxt.ring, [row for i, row in enumerate(nxt.rows) if i != c],
                    [x for i, x in enumerate(nxt.target_degrees) if i != c], list(nxt.source_degrees))
            changed = True
            break
    return GradedResolution(maps, minimal=True)


# --- Hilbert series of monomial ideals ----------------------------------------------------

def _pmul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _padd(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _mdeg(m):
    d = 0
    while m:
        d += m & MASK
        m >>= BITS
    return d


def _minimize_monos(monos, guard):
    # sort by total degree so divisors come first
    monos = sorted(set(monos), key=lambda m: (_mdeg(m), m))
    kept = []
    for m in monos:
        if not any(((m | guard) - k) & guard == guard for k in kept):
            kept.append(m)
    return kept


def _hilbert_num(monos, n, blk, nb, guard):
    if not monos:
        return {(0,) * nb: 1}
    if 0 in monos:
        return {}

    def mdeg(m):
        d = [0] * nb
        for i in range(n):
            e = (m >> (BITS * i)) & MASK
            if e:
                d[blk[i]] += e
        return tuple(d)

    # base case: pairwise coprime generators
    supp = []
    for m in monos:
        s = 0
        for i in range(n):
            if (m >> (BITS * i)) & MASK:
                s |= 1 << i
        supp.append(s)
    total = 0
    coprime = True
    for s in supp:
        if total & s:
            coprime = False
            break
        total |= s
    if coprime:
        out = {(0,) * nb: 1}
        for m in monos:
            out = _pmul(out, {(0,) * nb: 1, mdeg(m): -1})
        return out
    # pivot on the most frequent variable
    counts = [0] * n
    for s in supp:
        for i in range(n):
            if s >> i & 1:
                counts[i] += 1
    v = max(range(n), key=lambda i: (counts[i], -i))
    # exponents from generators that are not pure powers of v, so the pivot
    # never lies in the ideal already
    exps = sorted((m >> (BITS * v)) & MASK for m in monos
                  if (m >> (BITS * v)) & MASK and m != ((m >> (BITS * v)) & MASK) << (BITS * v))
    e = exps[(len(exps) - 1) // 2]
    piv = e << (BITS * v)
    # I + (piv)
    plus = _minimize_monos([m for m in monos] + [piv], guard)
    # I : piv
    quo = []
    for m in monos:
        x = (m >> (BITS * v)) & MASK
        red = min(x, e)
        quo.append(m - (red << (BITS * v)))
    quo = _minimize_monos(quo, guard)
    a = _hilbert_num(plus, n, blk, nb, guard)
    b = _hilbert_num(quo, n, blk, nb, guard)
    return _padd(a, _pmul({mdeg(piv): 1}, b))


@dataclass
class HilbertData:
    """Hilbert series numerator over prod (1 - t_b)^(block size).

    ``numerator`` maps degree tuples (one entry per block) to integers.
    """

    numerator: dict
    blocks: tuple

    def coefficient(self, deg):
        """Hilbert function value at a degree tuple."""
        from math import comb
        deg = (deg,) if isinstance(deg, int) else tuple(deg)
        total = 0
        for e, c in self.numerator.items():
            term = c
            for d, ei, size in zip(deg, e, self.blocks):
                k = d - ei
                if k < 0:
                    term = 0
                    break
                term *= comb(k + size - 1, size - 1)
            total += term
        return total

    def numerator_degree(self):
        if not self.numerator:
            return tuple(0 for _ in self.blocks)
        return tuple(max(e[b] for e in self.numerator) for b in range(len(self.blocks)))

    def univariate(self):
        if len(self.blocks) != 1:
            raise ValueError("not singly graded")
        top = self.numerator_degree()[0]
        return [self.numerator.get((i,), 0) for i in range(top + 1)]

    def dimension_and_degree(self):
        """(dim of projective scheme, degree). Empty scheme gives (-1, 0)."""
        coeffs = self.univariate()
        n = self.blocks[0]
        k = 0
        while coeffs and sum(coeffs) == 0:
            # divide by (1 - t)
            q = []
            acc = 0
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs = q
            k += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            return -1, 0
        pole = n - k
        if pole <= 0:
            return -1, 0
        return pole - 1, sum(coeffs)

    def affine_dimension(self):
        """Total number of standard monomials, i.e. dim_k of an affine quotient
        whose leading-term ideal this is. NotZeroDimensional if infinite."""
        from .errors import NotZeroDimensional
        coeffs = self.univariate()
        n = self.blocks[0]
        for _ in range(n):
            if sum(coeffs) != 0:
                raise NotZeroDimensional("quotient is infinite dimensional")
            q, acc = [], 0
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs = q
        return sum(coeffs)

    def stable_value(self):
        """Value of the Hilbert function in all large degrees, or None if it is not
        eventually constant. Exact: beyond the numerator degree the Hilbert
        function is a polynomial of degree < block size in each block variable,
        so block-size many equal values per direction prove constancy."""
        top = self.numerator_degree()
        grids = [range(t, t + size) for t, size in zip(top, self.blocks)]
        import itertools
        vals = {self.coefficient(pt) for pt in itertools.product(*grids)}
        if len(vals) != 1:
            return None
        (v,) = vals
        return v

    def series(self, upto):
        if len(self.blocks) != 1:
            raise ValueError("not singly graded")
        return [self.coefficient(d) for d in range(upto + 1)]


def hilbert_series(monomial_gens, ring: PolyRing | None = None, blocks=None, n=None) -> HilbertData:
    """Hilbert series of R/(monomials). Generators may be exponent tuples or packed ints."""
    monos = []
    for m in monomial_gens:
        if isinstance(m, int):
            monos.append(m)
        elif isinstance(m, Polynomial):
            if len(m) != 1:
                raise ValueError("generators must be monomials")
            (mm,) = m._d
            monos.append(mm)
        else:
            monos.append(pack(m))
    if ring is not None:
        n = ring.n
        blocks = ring.grading.blocks
    if blocks is None:
        blocks = (n,)
    blocks = tuple(blocks)
    n = sum(blocks)
    blk = []
    for b, size in enumerate(blocks):
        blk.extend([b] * size)
    guard = guard_mask(n)
    monos = _minimize_monos(monos, guard)
    num = _hilbert_num(monos, n, blk, len(blocks), guard)
    return HilbertData(num, blocks)


def hilbert_of_gb(gb: GroebnerBasis) -> HilbertData:
    return hilbert_series(gb.leading_monomials(), gb.ring)
