"""Rational maps P^n --> P^n given by n+1 forms of equal degree."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import (CharacteristicDividesDegree, CharacteristicDividesDegreeWarning,
                     DegenerateLinearSystem, NotHomogeneous, NotZeroDimensional)
from .fields import FieldCtx
from .ideals import Ideal, projective_dimension_and_degree
from .poly import Polynomial, PolyRing, exact_divide, jacobian, poly_gcd_many


def coefficient_rank(polys) -> int:
    """Rank of the span of the polynomials as vectors over the field."""
    F = polys[0].field
    monos = sorted({m for f in polys for m in f._d})
    rows = [[f._d.get(m, 0) for m in monos] for f in polys]
    rank = 0
    ncols = len(monos)
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][c])
        rows[rank] = [F.mul(v, inv) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                k = rows[r][c]
                rows[r] = [F.sub(a, F.mul(k, b)) for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass
class RationalMap:
    """n+1 forms of degree delta on P^n with gcd 1 and a finite base locus.

    ``source`` is the polynomial f for polar maps (else None) and
    ``stripped`` the common factor removed at construction.
    """

    forms: tuple
    source: Polynomial | None = None
    stripped: Polynomial | None = None
    allow_char_divides_degree: bool = False
    _base: Ideal | None = field(default=None, repr=False, compare=False)

    @property
    def ring(self) -> PolyRing:
        return self.forms[0].ring

    @property
    def field(self) -> FieldCtx:
        return self.ring.field

    @property
    def n(self) -> int:
        return len(self.forms) - 1

    @property
    def delta(self) -> int:
        return self.forms[0].total_degree()

    @property
    def is_polar(self):
        return self.source is not None

    @property
    def source_degree(self):
        return self.source.total_degree() if self.source is not None else None

    def base_ideal(self) -> Ideal:
        if self._base is None:
            self._base = Ideal(self.ring, list(self.forms))
        return self._base

    def with_field(self, F: FieldCtx) -> "RationalMap":
        """Same map over an extension field."""
        if F == self.field:
            return self
        R = self.ring.with_field(F)
        conv = lambda f: f.to_ring(R) if f is not None else None  # noqa: E731
        return RationalMap(tuple(conv(f) for f in self.forms), conv(self.source),
                           conv(self.stripped), self.allow_char_divides_degree)

    def evaluate(self, point):
        return tuple(f.evaluate(point) for f in self.forms)

    def __str__(self):
        return "(" + " : ".join(str(f) for f in self.forms) + ")"


def make_map(forms, source=None, strip=True, check_base_locus=True,
             allow_char_divides_degree=False) -> RationalMap:
    """Validate forms and strip their common factor."""
    forms = list(forms)
    if len(forms) < 2:
        raise ValueError("need at least two forms")
    R = forms[0].ring
    if R.n != len(forms):
        raise ValueError(f"{len(forms)} forms need a ring with {len(forms)} variables, got {R.n}")
    if any(f.is_zero() for f in forms):
        raise DegenerateLinearSystem("a form is zero, the forms are linearly dependent")
    for f in forms:
        if not f.is_homogeneous():
            raise NotHomogeneous(f"form {f} is not homogeneous")
    degs = {f.total_degree() for f in forms}
    if len(degs) != 1:
        raise NotHomogeneous("forms have different degrees")
    if coefficient_rank(forms) < len(forms):
        raise DegenerateLinearSystem("forms are linearly dependent")
    stripped = R.one()
    if strip:
        g = poly_gcd_many(forms)
        if not g.is_constant():
            forms = [exact_divide(f, g) for f in forms]
            stripped = g
    m = RationalMap(tuple(forms), source, stripped, allow_char_divides_degree)
    if check_base_locus:
        dim, _ = projective_dimension_and_degree(m.base_ideal())
        if dim > 0:
            raise NotZeroDimensional(f"base locus has dimension {dim}")
    return m


def polar_map(f: Polynomial, allow_char_divides_degree: bool = False) -> RationalMap:
    """Map given by the partial derivatives of f, with their common factor removed.

    If the characteristic divides deg f the Euler identity fails; this raises
    CharacteristicDividesDegree unless ``allow_char_divides_degree`` is set, in
    which case a warning is emitted and Euler-based cross-checks are skipped."""
    if not f.is_homogeneous() or f.is_zero():
        raise NotHomogeneous("polar map needs a nonzero homogeneous polynomial")
    d = f.total_degree()
    if d < 2:
        raise ValueError("polar map needs degree at least 2")
    p = f.field.p
    if d % p == 0:
        if not allow_char_divides_degree:
            raise CharacteristicDividesDegree(
                f"characteristic {p} divides the degree {d}; pass allow_char_divides_degree=True")
        warnings.warn(f"characteristic {p} divides deg f = {d}; Euler identity checks disabled",
                      CharacteristicDividesDegreeWarning, stacklevel=2)
    parts = jacobian(f)
    nonzero = [g for g in parts if not g.is_zero()]
    if len(nonzero) < len(parts) or coefficient_rank(parts) < len(parts):
        raise DegenerateLinearSystem("partial derivatives span less than the full projective space")
    return make_map(parts, source=f, allow_char_divides_degree=allow_char_divides_degree)
