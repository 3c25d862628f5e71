"""Degree and singularity invariants of rational maps P^n --> P^n.

Generic choices follow one protocol (:func:`run_generic`): an n x (n+1)
matrix A is drawn at random; J = A * (phi_0..phi_n) is the pull-back of the
point b = ker A, and the (0,1)-forms A * (y_0..y_n) slice the blow-up models
over the same b. Each quantity is computed for two independent seeds and
accepted when both agree; otherwise the field is doubled (at most three
times). Draws are made over an extension of at least ``GENERIC_MIN_FIELD``
elements, since a field as small as F_3 has too few points for a generic b.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .blowup import (BlowupModel, _pull_x, bigraded_length, blowup_model, lci_defect,
                     torsion_ideal, torsion_support)
from .errors import (CharacteristicDividesDegree, ConsistencyViolation, GenericityFailure,
                     NotDominant, NotSquareFree, NotZeroDimensional, PointNotOnSingularLocus,
                     UnsupportedDimension, UnsupportedSize)
from .fields import FieldCtx, embed, make_field
from .groebner import syzygy_module
from .ideals import (Ideal, PointP, affine_length_at_origin, local_length, projective_degree,
                     projective_dimension_and_degree, rational_points, saturate)
from .maps import RationalMap, coefficient_rank, make_map, polar_map
from .poly import (Polynomial, PolyRing, compose, dehomogenize, differentiate, linear_form,
                   poly_gcd_many)

__all__ = [
    "RationalMap", "make_map", "polar_map", "InvariantReport", "Classification",
    "is_dominant", "topological_degree", "tjurina", "tjurina_local", "milnor",
    "milnor_local", "classical_local_invariants", "naive_degrees", "chern_classes",
    "classify_relation_bundle", "is_homaloidal", "verify_inverse", "full_report",
    "run_generic",
]

GENERIC_MIN_FIELD = 100
MAX_ESCALATIONS = 3
MAX_REDRAWS = 40


class _BadDraw(Exception):
    """The random choice hit a special position; draw again."""


def generic_field(F: FieldCtx, min_size: int = GENERIC_MIN_FIELD) -> FieldCtx:
    """Smallest F_{p^(j*k)} containing F with at least ``min_size`` elements."""
    k = F.k
    while F.p ** k < min_size:
        k += F.k
    return F if k == F.k else make_field(F.p, k)


def _seed_int(seed, F):
    return seed * 1_000_003 + F.k


def run_generic(m: RationalMap, seed: int, compute, min_size: int = GENERIC_MIN_FIELD):
    """Evaluate ``compute(map_over_field, rng) -> (value, extra)`` for two seeds,
    escalating the field until the values agree.

    Returns (value, extra of the first seed, seed records)."""
    F = generic_field(m.field, min_size)
    seeds = [seed, seed + 1]
    for _ in range(MAX_ESCALATIONS + 1):
        mm = m.with_field(F)
        results = []
        for s in seeds:
            rng = random.Random(_seed_int(s, F))
            try:
                results.append(compute(mm, rng))
            except _BadDraw:
                results.append(None)
        if results[0] is not None and results[1] is not None and results[0][0] == results[1][0]:
            records = [{"seed": s, "char": F.p, "ext": F.k} for s in seeds]
            return results[0][0], results[0][1], records
        try:
            F = make_field(F.p, 2 * F.k)
        except UnsupportedSize:
            break
    raise GenericityFailure("generic draws kept disagreeing; the field is too small for this map")


def _draw_matrix(m: RationalMap, rng):
    F = m.field
    n = m.n
    R = m.ring
    while True:
        A = [[F.random_element(rng) for _ in range(n + 1)] for _ in range(n)]
        rows = [linear_form(R, r) for r in A]
        if coefficient_rank(rows) == n:
            return A


def _combine(m: RationalMap, A):
    F = m.field
    R = m.ring
    out = []
    for row in A:
        f = R.zero()
        for a, phi in zip(row, m.forms):
            if a:
                f = f + phi.scale(a)
        out.append(f)
    return out


@dataclass
class _Fiber:
    A: list
    J: Ideal
    sat: Ideal
    dt: int
    degJ: int


def _generic_fiber(m: RationalMap, rng) -> _Fiber:
    """Pull back a random point; redraw while the fiber ideal is not a
    zero-dimensional complete intersection."""
    I = m.base_ideal()
    for _ in range(MAX_REDRAWS):
        A = _draw_matrix(m, rng)
        J = Ideal(m.ring, _combine(m, A))
        dim, deg = projective_dimension_and_degree(J)
        if dim != 0:
            continue
        S = saturate(J, I)
        dt = projective_degree(S)
        return _Fiber(A, J, S, dt, deg)
    raise _BadDraw()


def _slice_forms(model: BlowupModel, A):
    S = model.ring
    n = model.n
    return [linear_form(S, [0] * (n + 1) + list(row)) for row in A]


def _embed_point(z: PointP, F: FieldCtx) -> PointP:
    if z.field == F:
        return z
    return PointP([embed(z.field, F, c) for c in z.coords], F)


def _require_finite_base(m: RationalMap):
    dim, _ = projective_dimension_and_degree(m.base_ideal())
    if dim > 0:
        raise NotZeroDimensional(f"base locus has dimension {dim}")


# --- dominance and degrees ---------------------------------------------------------------

def is_dominant(m: RationalMap, seed: int = 42) -> bool:
    _require_finite_base(m)

    def compute(mm, rng):
        fb = _generic_fiber(mm, rng)
        return fb.dt > 0, None

    value, _, _ = run_generic(m, seed, compute)
    return value


def topological_degree(m: RationalMap, seed: int = 42) -> int:
    """Degree of the saturated pull-back of a generic point."""
    _require_finite_base(m)

    def compute(mm, rng):
        return _generic_fiber(mm, rng).dt, None

    dt, _, _ = run_generic(m, seed, compute)
    if dt == 0:
        raise NotDominant("generic fiber is empty")
    return dt


def is_homaloidal(m: RationalMap, seed: int = 42) -> bool:
    return topological_degree(m, seed) == 1


def tjurina(m: RationalMap) -> int:
    return projective_degree(m.base_ideal())


def tjurina_local(m: RationalMap, z: PointP) -> int:
    return local_length(m.base_ideal(), z)


def milnor(m: RationalMap, seed: int = 42) -> int:
    """delta^n minus the degree of the generic fiber, from one draw."""
    _require_finite_base(m)

    def compute(mm, rng):
        fb = _generic_fiber(mm, rng)
        if fb.degJ != m.delta ** m.n:
            raise ConsistencyViolation("Bezout fails for the generic complete intersection")
        return fb.degJ - fb.dt, None

    mu, _, _ = run_generic(m, seed, compute)
    return mu


def milnor_local(m: RationalMap, z: PointP, seed: int = 42) -> int:
    _require_finite_base(m)

    def compute(mm, rng):
        fb = _generic_fiber(mm, rng)
        return local_length(fb.J, _embed_point(z, mm.field)), None

    mu, _, _ = run_generic(m, seed, compute)
    return mu


def naive_degrees(m: RationalMap, seed: int = 42):
    """(first, second): the sliced symmetric-algebra degree and delta^n - tau."""
    _require_finite_base(m)
    second = m.delta ** m.n - tjurina(m)

    def compute(mm, rng):
        model = blowup_model(mm)
        A = _draw_matrix(mm, rng)
        for _ in range(MAX_REDRAWS):
            try:
                return bigraded_length(model.sym + Ideal(model.ring, _slice_forms(model, A))), None
            except NotZeroDimensional:
                A = _draw_matrix(mm, rng)
        raise _BadDraw()

    first, _, _ = run_generic(m, seed, compute)
    return first, second


# --- classical invariants of a plane curve / hypersurface ---------------------------------

def _is_square_free(f: Polynomial) -> bool:
    parts = [g for g in (f, *[differentiate(f, i) for i in range(f.ring.n)]) if not g.is_zero()]
    return poly_gcd_many(parts).is_constant()


def classical_local_invariants(f: Polynomial, z: PointP):
    """(tau_f, mu_f) at z: lengths at z of O/(f, grad f) and O/(grad f) in the
    affine chart containing z."""
    R = f.ring
    d = f.total_degree()
    if d % R.field.p == 0:
        raise CharacteristicDividesDegree("classical invariants need p not dividing deg f")
    if not _is_square_free(f):
        raise NotSquareFree("f has a repeated factor")
    parts = [differentiate(f, i) for i in range(R.n)]
    if any(g.evaluate(z.coords) for g in [f] + parts):
        raise PointNotOnSingularLocus(f"{z} is not a singular point of f = 0")
    c = z.pivot()
    fa = dehomogenize(f, c)
    A = fa.ring
    # translate z to the origin
    others = [zc for i, zc in enumerate(z.coords) if i != c]
    shift = [A.var(j) + Polynomial(A, {0: others[j]} if others[j] else {}) for j in range(A.n)]
    g = compose(fa, shift)
    grads = [differentiate(g, j) for j in range(A.n)]
    tau = affine_length_at_origin([g] + grads)
    mu = affine_length_at_origin(grads)
    return tau, mu


# --- Chern classes and the relation bundle ---------------------------------------------------

def chern_classes(m: RationalMap):
    if m.n != 2:
        raise UnsupportedDimension("Chern classes are implemented for n = 2")
    return -m.delta, m.delta ** 2 - tjurina(m)


@dataclass(frozen=True)
class Classification:
    kind: str                     # "free", "nearly_free" or "other"
    exponents: tuple = ()
    twists: tuple = ()            # (generator degrees, relation degrees) for "other"

    def to_dict(self):
        if self.kind == "other":
            return {"kind": self.kind, "twists": [list(t) for t in self.twists]}
        return {"kind": self.kind, "exponents": list(self.exponents)}

    @classmethod
    def from_dict(cls, d):
        if d["kind"] == "other":
            return cls("other", twists=tuple(tuple(t) for t in d["twists"]))
        return cls(d["kind"], tuple(d["exponents"]))

    def __str__(self):
        if self.kind == "free":
            return f"Free{self.exponents}"
        if self.kind == "nearly_free":
            return f"NearlyFree{self.exponents}"
        return f"Other(generators={list(self.twists[0])}, relations={list(self.twists[1])})"


def relation_module_resolution(m: RationalMap):
    """(generator degrees, relation degrees) of the minimal resolution of the
    syzygy module E of the forms, degrees measured as entry degrees."""
    M = syzygy_module(list(m.forms))
    gens = [d - m.delta for d in M.source_degrees]
    if M.ncols == 0:
        return [], []
    rel = syzygy_module(M.columns(), M.target_degrees)
    rels = [d - m.delta for d in rel.source_degrees]
    return gens, rels


def classify_relation_bundle(m: RationalMap) -> Classification:
    if m.n != 2:
        raise UnsupportedDimension("classification is implemented for n = 2")
    gens, rels = relation_module_resolution(m)
    gs = sorted(gens)
    if not rels and len(gs) == 2:
        cls = Classification("free", tuple(gs))
    elif len(gs) == 3 and len(rels) == 1 and gs[1] == gs[2] and rels[0] == gs[2] + 1:
        cls = Classification("nearly_free", (gs[0], gs[1]))
    else:
        cls = Classification("other", twists=(tuple(gs), tuple(sorted(rels))))
    c1, c2 = chern_classes(m)
    is_free_1 = cls.kind == "free" and cls.exponents == (1, c2)
    if (-c1 == c2 + 1) != is_free_1:
        raise ConsistencyViolation(f"-c1 = c2 + 1 is {-c1 == c2 + 1} but classification is {cls}")
    if c1 <= -5 and -c1 == c2 and not (cls.kind == "nearly_free" and cls.exponents == (1, c2)):
        raise ConsistencyViolation(f"-c1 = c2 with c1 <= -5 but classification is {cls}")
    return cls


# --- inverse verification --------------------------------------------------------------------

def _proportional_to_identity(comp, R: PolyRing):
    xs = R.gens
    if all(c.is_zero() for c in comp):
        return False
    for i in range(len(comp)):
        for j in range(i + 1, len(comp)):
            if not (comp[i] * xs[j] - comp[j] * xs[i]).is_zero():
                return False
    return True


def verify_inverse(m: RationalMap, candidate, explain: bool = False):
    """True iff candidate o map and map o candidate are both the identity up to a
    common factor (all 2x2 minors against the coordinates vanish)."""
    cand = list(candidate)
    R = m.ring
    reason = ""
    ok = True
    if len(cand) != len(m.forms):
        ok, reason = False, "candidate has the wrong number of forms"
    elif any(c.ring != R for c in cand):
        ok, reason = False, "candidate lives in another ring"
    elif len({c.total_degree() for c in cand}) != 1 or not all(c.is_homogeneous() for c in cand):
        ok, reason = False, "candidate forms are not homogeneous of one degree"
    else:
        forward = [compose(c, m.forms) for c in cand]
        backward = [compose(f, cand) for f in m.forms]
        if not _proportional_to_identity(forward, R):
            ok, reason = False, "candidate o map is not the identity"
        elif not _proportional_to_identity(backward, R):
            ok, reason = False, "map o candidate is not the identity"
    return (ok, reason) if explain else ok


# --- the full report --------------------------------------------------------------------------

@dataclass
class LocalRow:
    point: PointP
    tau: int
    mu: int
    torsion: int


@dataclass
class InvariantReport:
    char: int
    ext: int
    n: int
    delta: int
    tau: int
    mu: int
    dt: int
    naive_first: int
    naive_second: int
    torsion_degree: int
    c1: int | None
    c2: int | None
    classification: Classification | None
    homaloidal: bool
    local_table: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    stripped_divisor: str = "1"
    linear_type: bool | None = None

    def check(self):
        """Raise ConsistencyViolation if any of the degree identities fails."""
        dn = self.delta ** self.n
        checks = [
            ("second naive = delta^n - tau", self.naive_second == dn - self.tau),
            ("d_t = delta^n - mu", self.dt == dn - self.mu),
            ("first naive = second naive", self.naive_first == self.naive_second),
            ("d_t = second naive - deg T", self.dt == self.naive_second - self.torsion_degree),
            ("mu - tau = deg T", self.mu - self.tau == self.torsion_degree),
        ]
        bad = [name for name, ok in checks if not ok]
        if bad:
            raise ConsistencyViolation("identity failed: " + "; ".join(bad) + f" ({self.summary()})")

    def summary(self):
        return (f"tau={self.tau} mu={self.mu} dt={self.dt} naive=({self.naive_first},{self.naive_second}) "
                f"degT={self.torsion_degree}")

    def to_dict(self):
        return {
            "char": self.char,
            "ext": self.ext,
            "delta": self.delta,
            "n": self.n,
            "tau": self.tau,
            "mu": self.mu,
            "dt": self.dt,
            "naive_first": self.naive_first,
            "naive_second": self.naive_second,
            "torsion_degree": self.torsion_degree,
            "c1": self.c1,
            "c2": self.c2,
            "classification": self.classification.to_dict() if self.classification else None,
            "homaloidal": self.homaloidal,
            "local_table": [
                {"point": str(r.point), "tau": r.tau, "mu": r.mu, "torsion": r.torsion}
                for r in self.local_table
            ],
            "seeds": self.seeds,
            "stripped_divisor": self.stripped_divisor,
        }

    @classmethod
    def from_dict(cls, d):
        """Inverse of :meth:`to_dict` (points are re-parsed over F_{char^ext})."""
        F = make_field(d["char"], d["ext"])
        cls_d = d.get("classification")
        rows = [LocalRow(PointP.parse(r["point"], F), r["tau"], r["mu"], r["torsion"])
                for r in d.get("local_table", [])]
        return cls(
            char=d["char"], ext=d["ext"], n=d["n"], delta=d["delta"], tau=d["tau"], mu=d["mu"],
            dt=d["dt"], naive_first=d["naive_first"], naive_second=d["naive_second"],
            torsion_degree=d["torsion_degree"], c1=d["c1"], c2=d["c2"],
            classification=Classification.from_dict(cls_d) if cls_d else None,
            homaloidal=d["homaloidal"], local_table=rows, seeds=[dict(x) for x in d["seeds"]],
            stripped_divisor=d["stripped_divisor"],
        )


def _report_draw(mm: RationalMap, rng, points):
    """One generic draw: d_t, mu, sliced symmetric and torsion degrees, local data."""
    model = blowup_model(mm)
    T = torsion_ideal(model)
    pts = [_embed_point(z, mm.field) for z in points]
    for _ in range(MAX_REDRAWS):
        try:
            fb = _generic_fiber(mm, rng)
            forms = _slice_forms(model, fb.A)
            first = bigraded_length(model.sym + Ideal(model.ring, forms))
            if T.is_unit():
                tdeg, tsliced = 0, None
            else:
                tsliced = T + Ideal(model.ring, forms)
                tdeg = bigraded_length(tsliced)
        except (NotZeroDimensional, _BadDraw):
            continue
        local = []
        for z in pts:
            mu_z = local_length(fb.J, z)
            if tsliced is None:
                t_z = 0
            else:
                mz = Ideal(model.ring, [_pull_x(g, model.ring) for g in z.ideal(mm.ring).gens])
                t_z = tdeg - bigraded_length(saturate(tsliced, mz))
            local.append((mu_z, t_z))
        value = (fb.dt, fb.degJ, first, tdeg, tuple(local))
        return value, model
    raise _BadDraw()


def full_report(m: RationalMap, seed: int = 42, points=None) -> InvariantReport:
    """All invariants of the map with the degree identities asserted.

    ``points`` defaults to the rational points of the base locus."""
    _require_finite_base(m)
    tau = tjurina(m)
    if points is None:
        points = rational_points(m.base_ideal())
    points = list(points)

    value, model, seeds = run_generic(m, seed, lambda mm, rng: _report_draw(mm, rng, points))
    dt, degJ, first, tdeg, local = value
    dn = m.delta ** m.n
    if degJ != dn:
        raise ConsistencyViolation(f"generic complete intersection has degree {degJ}, expected {dn}")
    if dt == 0:
        raise NotDominant("generic fiber is empty")
    mu = dn - dt
    c1 = c2 = cls = None
    if m.n == 2:
        c1, c2 = chern_classes(m)
        cls = classify_relation_bundle(m)
    rows = [LocalRow(z, tjurina_local(m, z), mu_z, t_z) for z, (mu_z, t_z) in zip(points, local)]
    rep = InvariantReport(
        char=m.field.p, ext=m.field.k, n=m.n, delta=m.delta, tau=tau, mu=mu, dt=dt,
        naive_first=first, naive_second=dn - tau, torsion_degree=tdeg,
        c1=c1, c2=c2, classification=cls, homaloidal=dt == 1, local_table=rows,
        seeds=seeds, stripped_divisor=str(m.stripped) if m.stripped is not None else "1",
    )
    rep.check()
    return rep
