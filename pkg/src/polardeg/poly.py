"""Sparse multivariate polynomials over a :class:`FieldCtx`.

A monomial is packed into one Python int: the exponent of variable ``i``
lives in bits ``[16*i, 16*i+16)``. Exponents are kept below ``2**15`` so the
top bit of every field is free; that guard bit gives a cheap divisibility
test and overflow detection (see :func:`mono_divides`).

Monomial orders are given by nonnegative integer weight matrices. The order
key of a monomial is the dot product of its exponent vector with a packed
"key multiplier" per variable, so keys are additive: ``key(m*n) = key(m) +
key(n)``. The Groebner engine relies on this.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (ExponentOverflow, InexactDivision, NotHomogeneous,
                     PolySyntaxError, UnknownVariable)
from .fields import FieldCtx, FieldElement, embed

BITS = 16
MASK = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1
_KEY_SLOT = 40


@lru_cache(maxsize=None)
def guard_mask(n: int) -> int:
    g = 0
    for i in range(n):
        g |= 1 << (BITS * i + BITS - 1)
    return g


def pack(exps) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXP:
            raise ExponentOverflow(f"exponent {e} out of range")
        m |= e << (BITS * i)
    return m


def unpack(m: int, n: int) -> tuple:
    return tuple((m >> (BITS * i)) & MASK for i in range(n))


def mono_divides(a: int, b: int, guard: int) -> bool:
    """True iff monomial a divides monomial b."""
    return ((b | guard) - a) & guard == guard


def mono_lcm(a: int, b: int, n: int) -> int:
    m = 0
    for i in range(n):
        s = BITS * i
        x, y = (a >> s) & MASK, (b >> s) & MASK
        m |= (x if x > y else y) << s
    return m


def mono_degree(m: int, n: int) -> int:
    d = 0
    while m:
        d += m & MASK
        m >>= BITS
    return d


# --- monomial orders ---------------------------------------------------------

class MonomialOrder:
    """Order defined by a weight matrix (list of nonnegative integer rows).

    Monomials compare by the first row where their weights differ. The rows
    must determine a monomial uniquely (full rank), which all constructors
    below guarantee.
    """

    __slots__ = ("kind", "rows", "mult", "_hash")

    def __init__(self, rows, kind="matrix"):
        rows = tuple(tuple(int(w) for w in r) for r in rows)
        if any(w < 0 for r in rows for w in r):
            raise ValueError("weights must be nonnegative")
        self.kind = kind
        self.rows = rows
        n = len(rows[0]) if rows else 0
        nr = len(rows)
        self.mult = tuple(
            sum(rows[r][i] << (_KEY_SLOT * (nr - 1 - r)) for r in range(nr)) for i in range(n)
        )
        self._hash = hash(rows)

    @property
    def nvars(self):
        return len(self.mult)

    def key(self, exps) -> int:
        return sum(e * k for e, k in zip(exps, self.mult))

    def key_of_packed(self, m: int) -> int:
        k, i = 0, 0
        mult = self.mult
        while m:
            e = m & MASK
            if e:
                k += e * mult[i]
            m >>= BITS
            i += 1
        return k

    def first_weights(self):
        return self.rows[0]

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MonomialOrder({self.kind}, nvars={self.nvars})"

    # constructors
    @staticmethod
    def _grevlex_rows(n, idx, weights=None):
        """grevlex rows on the variables ``idx`` (ordered high to low) inside n vars."""
        w = weights or [1] * len(idx)
        rows = []
        for cut in range(len(idx), 0, -1):
            r = [0] * n
            for j in idx[:cut]:
                r[j] = w[idx.index(j)] if cut == len(idx) else 1
            rows.append(r)
        return rows

    @classmethod
    def grevlex(cls, n, perm=None):
        idx = list(perm) if perm is not None else list(range(n))
        return cls(cls._grevlex_rows(n, idx), "grevlex")

    @classmethod
    def lex(cls, n, perm=None):
        idx = list(perm) if perm is not None else list(range(n))
        rows = []
        for j in idx:
            r = [0] * n
            r[j] = 1
            rows.append(r)
        return cls(rows, "lex")

    @classmethod
    def block(cls, n, blocks):
        """blocks: list of (variable index list, "grevlex" | "lex"); earlier blocks dominate."""
        rows = []
        seen = []
        for idx, kind in blocks:
            idx = list(idx)
            seen.extend(idx)
            if kind == "lex":
                for j in idx:
                    r = [0] * n
                    r[j] = 1
                    rows.append(r)
            else:
                rows.extend(cls._grevlex_rows(n, idx))
        if sorted(seen) != list(range(n)):
            raise ValueError("blocks must partition the variables")
        return cls(rows, "block")

    @classmethod
    def elimination(cls, n, drop):
        drop = sorted(set(drop))
        keep = [i for i in range(n) if i not in drop]
        if not drop:
            return cls.grevlex(n)
        if not keep:
            return cls.grevlex(n)
        return cls.block(n, [(drop, "grevlex"), (keep, "grevlex")])

    @classmethod
    def weighted_grevlex(cls, weights):
        """Weighted degree first, then reverse lex ties with the last variable smallest."""
        n = len(weights)
        rows = [list(weights)]
        for cut in range(n - 1, 0, -1):
            rows.append([1] * cut + [0] * (n - cut))
        return cls(rows, "wgrevlex")


# --- gradings and rings ---------------------------------------------------------

@dataclass(frozen=True)
class Grading:
    """Partition of the variables into consecutive blocks, one degree per block."""

    blocks: tuple

    @staticmethod
    def standard(n):
        return Grading((n,))

    @staticmethod
    def bigraded(n1, n2):
        return Grading((n1, n2))

    @property
    def is_standard(self):
        return len(self.blocks) == 1

    def block_of(self):
        out = []
        for b, size in enumerate(self.blocks):
            out.extend([b] * size)
        return tuple(out)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class PolyRing:
    """Polynomial ring over a field with named variables and a grading."""

    def __init__(self, names, field: FieldCtx, grading: Grading | None = None, order=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for nm in names:
            if not _NAME_RE.match(nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = names
        self.field = field
        self.n = len(names)
        self.grading = grading or Grading.standard(self.n)
        if sum(self.grading.blocks) != self.n:
            raise ValueError("grading blocks must cover all variables")
        self.order = order or MonomialOrder.grevlex(self.n)
        self.guard = guard_mask(self.n)
        self._index = {nm: i for i, nm in enumerate(names)}
        if names == ("x0", "x1", "x2"):
            self._index.update({"x": 0, "y": 1, "z": 2})
        self._block_of = self.grading.block_of()

    @classmethod
    def projective(cls, n, field, prefix="x"):
        return cls([f"{prefix}{i}" for i in range(n + 1)], field)

    @classmethod
    def bigraded(cls, n, field):
        names = [f"x{i}" for i in range(n + 1)] + [f"y{i}" for i in range(n + 1)]
        return cls(names, field, Grading.bigraded(n + 1, n + 1))

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.field == other.field and self.grading == other.grading)

    def __hash__(self):
        return hash((self.names, self.field, self.grading))

    def __repr__(self):
        return f"PolyRing({','.join(self.names)} over {self.field!r})"

    def index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise UnknownVariable(f"variable index {name} out of range")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def var(self, name) -> "Polynomial":
        i = self.index(name)
        return Polynomial(self, {1 << (BITS * i): 1})

    @property
    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {0: 1})

    def const(self, c):
        if isinstance(c, FieldElement):
            c = c.value
        else:
            c = self.field.from_int(int(c))
        return Polynomial(self, {0: c} if c else {})

    def monomial(self, exps, coeff=1):
        c = self.field.from_int(coeff) if self.field.k == 1 else coeff
        return Polynomial(self, {pack(exps): c}) if c else self.zero()

    def from_terms(self, terms):
        """Build from (exponent tuple, encoded coefficient) pairs."""
        d = {}
        F = self.field
        for e, c in terms:
            m = pack(e)
            d[m] = F.add(d.get(m, 0), c)
        return Polynomial(self, {m: c for m, c in d.items() if c})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def with_field(self, field: FieldCtx) -> "PolyRing":
        return PolyRing(self.names, field, self.grading, self.order)

    def with_names(self, names, grading=None) -> "PolyRing":
        return PolyRing(names, self.field, grading)

    def degree_of(self, m: int):
        """Per-block degree tuple of a packed monomial."""
        out = [0] * len(self.grading.blocks)
        bo = self._block_of
        i = 0
        while m:
            e = m & MASK
            if e:
                out[bo[i]] += e
            m >>= BITS
            i += 1
        return tuple(out)


# --- polynomials -----------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial: dict packed-monomial -> encoded nonzero coefficient."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._hash = None

    # -- basic access ------------------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    def is_zero(self):
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def items(self):
        return self._d.items()

    def terms(self, order=None):
        """(exponent tuple, coefficient) pairs sorted descending in ``order``."""
        order = order or self.ring.order
        n = self.ring.n
        ks = sorted(self._d, key=order.key_of_packed, reverse=True)
        return [(unpack(m, n), self._d[m]) for m in ks]

    def leading_term(self, order=None):
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self._d, key=order.key_of_packed)
        return unpack(m, self.ring.n), self._d[m]

    def leading_coefficient(self, order=None):
        return self.leading_term(order)[1]

    def monic(self, order=None):
        if not self._d:
            return self
        F = self.field
        inv = F.inv(self.leading_coefficient(order))
        return self.scale(inv)

    def scale(self, c):
        F = self.field
        if isinstance(c, FieldElement):
            c = c.value
        if not c:
            return self.ring.zero()
        if F.k == 1:
            p = F.p
            return Polynomial(self.ring, {m: v * c % p for m, v in self._d.items()})
        return Polynomial(self.ring, {m: F.mul(v, c) for m, v in self._d.items()})

    def total_degree(self):
        if not self._d:
            return -1
        n = self.ring.n
        return max(mono_degree(m, n) for m in self._d)

    def degrees(self):
        """Set of per-block degree tuples of the terms."""
        return {self.ring.degree_of(m) for m in self._d}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree tuple (per grading block) of a homogeneous polynomial."""
        ds = self.degrees()
        if len(ds) > 1:
            raise NotHomogeneous("polynomial is not homogeneous")
        if not ds:
            return None
        (d,) = ds
        return d[0] if len(d) == 1 else d

    def is_constant(self):
        return all(m == 0 for m in self._d)

    def constant_value(self):
        return self._d.get(0, 0)

    def variables(self):
        used = 0
        for m in self._d:
            used |= m
        return [i for i in range(self.ring.n) if (used >> (BITS * i)) & MASK]

    # -- arithmetic ----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        d = dict(self._d)
        if F.k == 1:
            p = F.p
            for m, c in o._d.items():
                v = (d.get(m, 0) + c) % p
                if v:
                    d[m] = v
                else:
                    d.pop(m, None)
        else:
            for m, c in o._d.items():
                v = F.add(d.get(m, 0), c)
                if v:
                    d[m] = v
                else:
                    d.pop(m, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self._d.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._d or not o._d:
            return self.ring.zero()
        F = self.field
        a, b = self._d, o._d
        if len(a) < len(b):
            a, b = b, a
        d = {}
        if F.k == 1:
            p = F.p
            for m2, c2 in b.items():
                for m1, c1 in a.items():
                    m = m1 + m2
                    d[m] = d.get(m, 0) + c1 * c2
            d = {m: c % p for m, c in d.items() if c % p}
        else:
            for m2, c2 in b.items():
                for m1, c1 in a.items():
                    m = m1 + m2
                    d[m] = F.add(d.get(m, 0), F.mul(c1, c2))
            d = {m: c for m, c in d.items() if c}
        g = self.ring.guard
        for m in d:
            if m & g:
                raise ExponentOverflow("exponent exceeds 16-bit storage")
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, exps, coeff=1):
        m0 = pack(exps)
        F = self.field
        d = {m + m0: F.mul(c, coeff) for m, c in self._d.items()}
        g = self.ring.guard
        if any(m & g for m in d):
            raise ExponentOverflow("exponent exceeds 16-bit storage")
        return Polynomial(self.ring, {m: c for m, c in d.items() if c})

    def __floordiv__(self, other):
        return exact_divide(self, other)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, FieldElement)):
            return self._d == self.ring.const(other)._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    # -- evaluation / conversion --------------------------------------------------
    def evaluate(self, point):
        """Value at a point given as encoded field integers (or FieldElements)."""
        F = self.field
        pt = [c.value if isinstance(c, FieldElement) else F.from_int(c) if F.k == 1 else c for c in point]
        n = self.ring.n
        total = 0
        powcache = {}
        for m, c in self._d.items():
            v = c
            for i, e in enumerate(unpack(m, n)):
                if e:
                    key = (i, e)
                    pw = powcache.get(key)
                    if pw is None:
                        pw = powcache[key] = F.pow(pt[i], e)
                    v = F.mul(v, pw)
                    if not v:
                        break
            total = F.add(total, v)
        return total

    def to_ring(self, ring: PolyRing, var_map=None):
        """Re-express in another ring. ``var_map[i]`` is the target index of variable i.
        If the fields differ, coefficients go through the fixed embedding of fields."""
        if var_map is None:
            var_map = [ring.index(nm) for nm in self.ring.names]
        same_field = ring.field == self.field
        n = self.ring.n
        d = {}
        for m, c in self._d.items():
            if not same_field:
                c = embed(self.field, ring.field, c)
            e = unpack(m, n)
            t = [0] * ring.n
            for i, ei in enumerate(e):
                if ei:
                    t[var_map[i]] += ei
            d[pack(t)] = c
        return Polynomial(ring, d)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Polynomial({to_text(self)})"


def to_text(f: Polynomial) -> str:
    if not f._d:
        return "0"
    F = f.field
    names = f.ring.names
    parts = []
    for exps, c in f.terms():
        mon = "*".join(nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, exps) if e)
        if F.k == 1:
            neg = c > F.p // 2 and F.p > 2
            val = F.p - c if neg else c
            if not mon:
                s = str(val)
            elif val == 1:
                s = mon
            else:
                s = f"{val}*{mon}"
            parts.append(("-" if neg else "+", s))
        else:
            s = F.to_text(c)
            parts.append(("+", s if not mon else f"{s}*{mon}"))
    out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, s in parts[1:]:
        out += sign + s
    return out


# --- parsing -----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
            start = m.start(m.lastgroup)
            self.toks.append((m.lastgroup, m.group(m.lastgroup), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, kind, val=None):
        t = self.take()
        if t[0] != kind or (val is not None and t[1] != val):
            what = val or kind
            raise PolySyntaxError(f"expected {what!r}", t[2], self.text)
        return t

    def parse(self):
        if not self.toks:
            raise PolySyntaxError("empty polynomial", 0, self.text)
        f = self.expr()
        t = self.peek()
        if t[0] is not None:
            raise PolySyntaxError(f"unexpected token {t[1]!r}", t[2], self.text)
        return f

    def expr(self):
        R = self.ring
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                nxt = self.term()
                acc = acc + nxt if t[1] == "+" else acc - nxt
            else:
                return acc if acc is not None else R.zero()

    def term(self):
        R = self.ring
        t = self.peek()
        acc = None
        if t[0] == "int":
            self.take()
            acc = R.const(int(t[1]))
            nt = self.peek()
            if nt[0] == "op" and nt[1] == "^":
                self.take()
                e = self.expect("int")
                acc = R.const(pow(int(t[1]), int(e[1]), R.field.p))
            nt = self.peek()
            if nt[0] == "op" and nt[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif nt[0] == "name" or (nt[0] == "op" and nt[1] == "("):
                acc = acc * self.factor()
            else:
                return acc
        else:
            acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif t[0] in ("name", "int") or (t[0] == "op" and t[1] == "("):
                raise PolySyntaxError("missing '*' between factors", t[2], self.text)
            else:
                return acc

    def factor(self):
        R = self.ring
        t = self.take()
        if t[0] == "name":
            try:
                base = R.var(t[1])
            except UnknownVariable:
                raise UnknownVariable(f"unknown variable {t[1]!r} at position {t[2]}") from None
        elif t[0] == "int":
            base = R.const(int(t[1]))
        elif t[0] == "op" and t[1] == "(":
            base = self.expr()
            self.expect("op", ")")
        else:
            what = "end of input" if t[0] is None else repr(t[1])
            raise PolySyntaxError(f"unexpected {what}", t[2], self.text)
        nt = self.peek()
        if nt[0] == "op" and nt[1] == "^":
            self.take()
            e = self.expect("int")
            base = base ** int(e[1])
        return base


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    return _Parser(text, ring).parse()


# --- calculus and structure -------------------------------------------------------

def differentiate(f: Polynomial, i) -> Polynomial:
    R = f.ring
    i = R.index(i)
    F = R.field
    s = BITS * i
    one = 1 << s
    d = {}
    for m, c in f._d.items():
        e = (m >> s) & MASK
        if e:
            v = F.mul(c, F.from_int(e))
            if v:
                d[m - one] = v
    return Polynomial(R, d)


def jacobian(f: Polynomial):
    return [differentiate(f, i) for i in range(f.ring.n)]


def dehomogenize(f: Polynomial, chart) -> Polynomial:
    """Set the chart variable to 1; the result lives in the ring of the other variables."""
    R = f.ring
    c = R.index(chart)
    if not f.is_homogeneous():
        raise NotHomogeneous("dehomogenize needs a homogeneous polynomial")
    names = [nm for j, nm in enumerate(R.names) if j != c]
    S = PolyRing(names, R.field)
    return dehomogenize_into(f, c, S)


def dehomogenize_into(f: Polynomial, c: int, S: PolyRing) -> Polynomial:
    n = f.ring.n
    F = f.field
    d = {}
    for m, v in f._d.items():
        e = list(unpack(m, n))
        del e[c]
        k = pack(e)
        w = F.add(d.get(k, 0), v)
        if w:
            d[k] = w
        else:
            d.pop(k, None)
    return Polynomial(S, d)


def homogenize(f: Polynomial, chart: int, R: PolyRing) -> Polynomial:
    """Inverse of dehomogenize: insert variable ``chart`` of R to make f homogeneous."""
    if not f._d:
        return R.zero()
    nf = f.ring.n
    deg = f.total_degree()
    d = {}
    for m, v in f._d.items():
        e = list(unpack(m, nf))
        e.insert(chart, deg - sum(e))
        d[pack(e)] = v
    return Polynomial(R, d)


def compose(f: Polynomial, subs) -> Polynomial:
    """Substitute ``subs[i]`` for variable i of f."""
    subs = list(subs)
    if len(subs) != f.ring.n:
        raise ValueError("need one substitution per variable")
    if not subs:
        return f
    S = subs[0].ring
    n = f.ring.n
    cache = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            if e == 1:
                cache[key] = subs[i]
            else:
                h = power(i, e // 2)
                sq = h * h
                cache[key] = sq * subs[i] if e % 2 else sq
        return cache[key]

    acc = {}
    F = S.field
    for m, c in f._d.items():
        t = Polynomial(S, {0: c})
        for i, e in enumerate(unpack(m, n)):
            if e:
                t = t * power(i, e)
        for mm, cc in t._d.items():
            acc[mm] = F.add(acc.get(mm, 0), cc)
    return Polynomial(S, {m: c for m, c in acc.items() if c})


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """a / b, raising InexactDivision when b does not divide a."""
    from .groebner import _divide_exact
    return _divide_exact(a, b)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd computed as a*b / lcm, with the lcm obtained by eliminating a
    tag variable t from (t*a, (1-t)*b)."""
    R = a.ring
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return R.one()
    if len(b) == 1 or len(a) == 1:
        # monomial shortcut: gcd with a monomial is a monomial
        mono = b if len(b) == 1 else a
        other = a if mono is b else b
        (m0,) = mono._d
        g = m0
        n = R.n
        for m in other._d:
            g = pack(min(x, y) for x, y in zip(unpack(g, n), unpack(m, n)))
        return Polynomial(R, {g: 1})
    from .groebner import lcm_by_elimination
    lcm = lcm_by_elimination(a, b)
    g = exact_divide(a * b, lcm)
    return g.monic()


def poly_gcd_many(polys) -> Polynomial:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of nothing")
    # smallest first keeps the elimination problems small
    polys.sort(key=lambda p: (p.total_degree(), len(p)))
    g = polys[0].monic()
    for p in polys[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


def linear_form(ring: PolyRing, coeffs) -> Polynomial:
    d = {}
    for i, c in enumerate(coeffs):
        if c:
            d[1 << (BITS * i)] = c
    return Polynomial(ring, d)
