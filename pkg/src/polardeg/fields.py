"""Prime fields F_p and extension fields F_{p^k}.

Elements are stored as plain integers in ``[0, p^k)``: the integer
``c0 + c1*p + ... + c_{k-1}*p^(k-1)`` encodes the residue class of
``c0 + c1*t + ... + c_{k-1}*t^(k-1)`` modulo the defining polynomial.
The prime subfield is therefore ``range(p)`` in every extension, so a
polynomial with prime-field coefficients can be moved to a larger field
without touching its coefficients.

The polynomial and Groebner code work with these raw integers through the
``add/sub/mul/neg/inv`` methods of :class:`FieldCtx`; :class:`FieldElement`
is a thin operator-overloading wrapper for interactive use.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .errors import CompositeCharacteristic, DivisionByZero, UnsupportedSize

_MAX_ORDER = 1 << 62
# log/antilog tables are built for extension fields up to this size
_TABLE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --- dense univariate polynomials over F_p (low degree first) -------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _umul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _umod(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        if c:
            for i, y in enumerate(m):
                a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
        _trim(a)
    return a


def _usub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _ugcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _umod(a, b, p)
    return a


def _upowmod(base, e, m, p):
    result = [1]
    base = _umod(base, m, p)
    while e:
        if e & 1:
            result = _umod(_umul(result, base, p), m, p)
        base = _umod(_umul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(poly, p: int) -> bool:
    """Ben-Or test: monic ``poly`` of degree k is irreducible iff
    gcd(poly, x^(p^i) - x) = 1 for 1 <= i <= k/2."""
    k = len(poly) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    if poly[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(k // 2):
        xp = _upowmod(xp, p, poly, p)
        g = _ugcd(poly, _usub(xp, x, p), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree k over F_p,
    comparing coefficient vectors (c0, c1, ..., c_{k-1})."""
    for low in itertools.product(range(p), repeat=k):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """Arithmetic context for F_{p^k}. Immutable after construction."""

    __slots__ = ("p", "k", "q", "modulus", "_exp", "_log", "_zech", "_half", "__weakref__")

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if k < 1:
            raise UnsupportedSize(f"extension degree must be >= 1, got {k}")
        if p >= 1 << 31 or p ** k >= _MAX_ORDER:
            raise UnsupportedSize(f"field of order {p}^{k} is too large")
        self.p = p
        self.k = k
        self.q = p ** k
        if k == 1:
            self.modulus = None
        else:
            modulus = tuple(modulus) if modulus is not None else smallest_irreducible(p, k)
            if len(modulus) != k + 1 or modulus[-1] != 1 or not is_irreducible(list(modulus), p):
                raise ValueError("modulus must be monic irreducible of degree k")
            self.modulus = modulus
        self._exp = self._log = self._zech = None
        self._half = None
        if k > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers ------------------------------------------------
    def _build_tables(self):
        q, p = self.q, self.p
        order = q - 1
        # find a primitive element by brute force over the encoded integers
        factors = _prime_factors(order)
        for g in range(2, q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                break
        exp = [0] * order
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        zech = [None] * order
        for n in range(order):
            e = exp[n]
            c0 = e % p
            s = e - c0 + (c0 + 1) % p
            zech[n] = None if s == 0 else log[s]
        self._exp, self._log, self._zech = exp, log, zech
        self._half = order // 2 if p != 2 else 0

    def _coeffs(self, a):
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _encode(self, coeffs):
        p = self.p
        v = 0
        for c in reversed(coeffs[: self.k]):
            v = v * p + c % p
        return v

    def _slow_mul(self, a, b):
        prod = _umul(_trim(self._coeffs(a)), _trim(self._coeffs(b)), self.p)
        return self._encode(_umod(prod, list(self.modulus), self.p) + [0] * self.k)

    def _slow_pow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    # -- arithmetic on encoded integers --------------------------------------
    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._exp is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            log = self._log
            la = log[a]
            z = self._zech[(log[b] - la) % (self.q - 1)]
            return 0 if z is None else self._exp[(la + z) % (self.q - 1)]
        ca, cb, p = self._coeffs(a), self._coeffs(b), self.p
        return self._encode([(x + y) % p for x, y in zip(ca, cb)])

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        ca, p = self._coeffs(a), self.p
        return self._encode([-x % p for x in ca])

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._slow_mul(a, b)

    def inv(self, a):
        """Inverse via Fermat (k = 1) or extended Euclid on the modulus (k > 1)."""
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._encode(_uinv(_trim(self._coeffs(a)), list(self.modulus), self.p) + [0] * self.k)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[self._log[a] * e % (self.q - 1)]
        return self._slow_pow(a, e)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- misc ----------------------------------------------------------------
    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def in_prime_subfield(self, a) -> bool:
        return 0 <= a < self.p

    def random_element(self, rng):
        return rng.randrange(self.q)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.q)

    def elements(self):
        return range(self.q)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self._encode([int(c) for c in value] + [0] * self.k))
        return FieldElement(self, self.from_int(int(value)))

    def to_text(self, a) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self._coeffs(a)) + "]"

    def parse(self, text: str) -> int:
        text = text.strip()
        if self.k == 1:
            if not re.fullmatch(r"-?\d+", text):
                raise ValueError(f"bad element text {text!r}")
            return int(text) % self.p
        m = re.fullmatch(r"\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]", text)
        if not m:
            raise ValueError(f"bad element text {text!r}")
        coeffs = [int(c) for c in m.group(1).split(",")]
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        return self._encode(coeffs)

    def extension(self, factor: int = 2) -> "FieldCtx":
        """F_{p^(k*factor)}. Only prime-subfield elements carry over unchanged."""
        return make_field(self.p, self.k * factor)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.p}^{self.k}, modulus={list(self.modulus)})"


def _uinv(a, m, p):
    # extended Euclid: find s with s*a = 1 mod m
    r0, r1 = list(m), list(a)
    s0, s1 = [], [1]
    while r1:
        # divide r0 by r1
        q = []
        r = list(r0)
        inv = pow(r1[-1], p - 2, p)
        dq = len(r) - len(r1)
        if dq >= 0:
            q = [0] * (dq + 1)
            while len(r) >= len(r1) and r:
                c = r[-1] * inv % p
                shift = len(r) - len(r1)
                q[shift] = c
                for i, y in enumerate(r1):
                    r[shift + i] = (r[shift + i] - c * y) % p
                r.pop()
                _trim(r)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(q, s1, p), p)
    # r0 is a nonzero constant
    c = pow(r0[0], p - 2, p)
    return [x * c % p for x in s0]


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldCtx:
    """Field context for F_{p^k}; cached so equal fields share one object."""
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    if k < 1 or p >= 1 << 31 or p ** k >= _MAX_ORDER:
        raise UnsupportedSize(f"field of order {p}^{k} is out of range")
    return FieldCtx(p, k)


class FieldElement:
    """Value wrapper around an encoded integer and its field."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.div(self.value, o))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self):
        return field_inverse(self)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def coefficients(self) -> tuple:
        return tuple(self.ctx._coeffs(self.value))

    def __str__(self):
        return self.ctx.to_text(self.value)

    def __repr__(self):
        return f"FieldElement({self.ctx.to_text(self.value)} in {self.ctx!r})"


def field_inverse(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, a.ctx.inv(a.value))


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    return FieldElement(ctx, ctx.parse(text))


@lru_cache(maxsize=None)
def _embedding_root(F: FieldCtx, G: FieldCtx) -> int:
    from .ideals import univariate_roots
    roots = univariate_roots(list(F.modulus), G)
    if not roots:
        raise ValueError(f"{F!r} does not embed in {G!r}")
    return roots[0]


def embed(F: FieldCtx, G: FieldCtx, a: int) -> int:
    """Image of the encoded element a of F under a fixed embedding F -> G."""
    if F == G or a < F.p:
        if F.p != G.p or G.k % F.k:
            raise ValueError(f"{F!r} does not embed in {G!r}")
        return a
    if F.p != G.p or G.k % F.k:
        raise ValueError(f"{F!r} does not embed in {G!r}")
    r = _embedding_root(F, G)
    out, pw = 0, 1
    for c in F._coeffs(a):
        if c:
            out = G.add(out, G.mul(c, pw))
        pw = G.mul(pw, r)
    return out
