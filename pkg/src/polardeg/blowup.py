"""Symmetric algebra, Rees algebra and torsion of the base ideal of a rational map.

Everything lives in the bigraded ring k[x0..xn, y0..yn]. The symmetric
algebra ideal is cut out by the entries of (y0 .. yn) * M for a presentation
matrix M of the base ideal; saturating by the base ideal gives the graph
(Rees) ideal, and saturating by the graph ideal leaves the torsion part.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NotZeroDimensional
from .groebner import PresentationMatrix, hilbert_of_gb, syzygy_module
from .ideals import (Ideal, fitting_ideal, ideal_equal, irrelevant_ideal, projective_degree,
                     rational_points, saturate)
from .maps import RationalMap, coefficient_rank
from .poly import Polynomial, PolyRing, linear_form


def bigraded_ring(m: RationalMap) -> PolyRing:
    return PolyRing.bigraded(m.n, m.field)


def _pull_x(f: Polynomial, S: PolyRing) -> Polynomial:
    return f.to_ring(S, list(range(f.ring.n)))


@dataclass
class BlowupModel:
    map: RationalMap
    ring: PolyRing
    presentation: PresentationMatrix
    sym: Ideal
    _rees: Ideal | None = field(default=None, repr=False)
    _torsion: Ideal | None = field(default=None, repr=False)

    @property
    def n(self):
        return self.map.n

    def pulled_base_ideal(self) -> Ideal:
        return Ideal(self.ring, [_pull_x(f, self.ring) for f in self.map.forms])


def presentation(m: RationalMap) -> PresentationMatrix:
    """Minimal syzygy matrix of the forms (n+1 rows)."""
    return syzygy_module(list(m.forms))


def symmetric_algebra_ideal(m: RationalMap, M: PresentationMatrix | None = None) -> Ideal:
    M = M or presentation(m)
    S = bigraded_ring(m)
    n = m.n
    ys = [S.var(n + 1 + i) for i in range(n + 1)]
    gens = []
    for j in range(M.ncols):
        g = S.zero()
        for i in range(M.nrows):
            e = M.rows[i][j]
            if not e.is_zero():
                g = g + ys[i] * _pull_x(e, S)
        gens.append(g)
    return Ideal(S, gens)


def blowup_model(m: RationalMap) -> BlowupModel:
    M = presentation(m)
    return BlowupModel(m, bigraded_ring(m), M, symmetric_algebra_ideal(m, M))


def rees_ideal(model: BlowupModel) -> Ideal:
    """Graph ideal: the symmetric ideal saturated by the pulled-back base ideal."""
    if model._rees is None:
        model._rees = saturate(model.sym, model.pulled_base_ideal())
    return model._rees


def torsion_ideal(model: BlowupModel) -> Ideal:
    """Symmetric ideal saturated by the graph ideal; (1) when there is no torsion."""
    if model._torsion is None:
        R = rees_ideal(model)
        if ideal_equal(R, model.sym):
            model._torsion = Ideal.unit(model.ring)
        else:
            model._torsion = saturate(model.sym, R)
    return model._torsion


def is_linear_type(model: BlowupModel) -> bool:
    return ideal_equal(rees_ideal(model), model.sym)


def lci_defect(m: RationalMap, M: PresentationMatrix | None = None) -> Ideal:
    """Saturation of Fitt_n of the base ideal; (1) iff the base scheme is a local
    complete intersection everywhere."""
    M = M or presentation(m)
    Fi = fitting_ideal(M, m.n)
    if Fi.is_unit():
        return Fi
    return saturate(Fi, irrelevant_ideal(m.ring))


def bigraded_length(I: Ideal) -> int:
    """Stable value of the bigraded Hilbert function of S/I (degree of the
    zero-dimensional biprojective scheme)."""
    if I.is_unit():
        return 0
    v = hilbert_of_gb(I.gb()).stable_value()
    if v is None:
        raise NotZeroDimensional("bigraded Hilbert function is not eventually constant")
    return v


def generic_y_slice(model: BlowupModel, rng: random.Random):
    """n random (0,1)-linear forms of full rank."""
    S = model.ring
    F = S.field
    n = model.n
    while True:
        rows = [[F.random_element(rng) for _ in range(n + 1)] for _ in range(n)]
        forms = [linear_form(S, [0] * (n + 1) + r) for r in rows]
        if all(not f.is_zero() for f in forms) and coefficient_rank(forms) == n:
            return forms


def sliced_length(I: Ideal, slice_forms) -> int:
    if I.is_unit():
        return 0
    return bigraded_length(I + Ideal(I.ring, slice_forms))


@dataclass
class TorsionReport:
    degree: int
    support: list                 # rational points of V(Fitt_n I)
    per_point: dict               # PointP -> degree
    all_rational: bool
    seeds: list = field(default_factory=list)


def torsion_degree_once(model: BlowupModel, rng: random.Random, support=None):
    """Torsion degree (and per-point split) for one draw of slicing forms."""
    T = torsion_ideal(model)
    if T.is_unit():
        return 0, {}
    forms = generic_y_slice(model, rng)
    sliced = T + Ideal(model.ring, forms)
    total = bigraded_length(sliced)
    per = {}
    S = model.ring
    for z in support or []:
        mz = Ideal(S, [_pull_x(g, S) for g in z.ideal(model.map.ring).gens])
        rest = saturate(sliced, mz)
        per[z] = total - bigraded_length(rest)
    return total, per


def torsion_support(m: RationalMap, M=None):
    D = lci_defect(m, M)
    if D.is_unit():
        return [], True
    pts = rational_points(D)
    # the support is entirely rational iff removing the rational points leaves nothing
    rest = D
    for z in pts:
        rest = saturate(rest, z.ideal(m.ring))
    return pts, rest.is_unit() or projective_degree(rest) == 0


def torsion_degree(model: BlowupModel, seed: int = 42) -> TorsionReport:
    """Degree of the torsion part against n generic (0,1)-forms, validated by two
    independent draws (see :func:`polardeg.invariants.run_generic`)."""
    from .invariants import _embed_point, run_generic

    support, allrat = torsion_support(model.map, model.presentation)

    def compute(mm, rng):
        mod = model if mm is model.map else blowup_model(mm)
        lifted = [_embed_point(z, mm.field) for z in support]
        total, per = torsion_degree_once(mod, rng, lifted)
        return (total, tuple(per.get(z, 0) for z in lifted)), None

    value, _, seeds = run_generic(model.map, seed, compute)
    total, split = value
    per = dict(zip(support, split)) if total else {}
    return TorsionReport(total, support, per, allrat, seeds)
