import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from polardeg.fields import make_field
from polardeg.groebner import (_GB_CACHE, GradedResolution, PresentationMatrix, buchberger, free_resolution,
                               hilbert_of_gb, hilbert_series, is_groebner, minimize_resolution,
                               normal_form, s_polynomial, syzygy_module)
from polardeg.poly import MonomialOrder, PolyRing, jacobian

F101 = make_field(101)
QUINTIC = "(x1^2+x0*x2)*x0*(x1^2+x0*x2+x0^2)"


def R2(p=101):
    return PolyRing.projective(2, make_field(p))


def lexring():
    return PolyRing(["x", "y"], F101, order=MonomialOrder.lex(2))


# --- normal forms and bases ---------------------------------------------------------------

def test_normal_form_examples():
    R = R2()
    G = buchberger([R.var(0)])
    assert normal_form(R.parse("x0^2"), G).is_zero()
    assert normal_form(R.var(1), G) == R.var(1)
    S = lexring()
    G = buchberger([S.parse("x^2"), S.parse("x*y+y^2")], MonomialOrder.lex(2))
    assert normal_form(S.parse("y^3"), G).is_zero()


def test_buchberger_examples():
    R = R2()
    assert buchberger([R.var(0)]).polys == [R.var(0)]
    S = lexring()
    G = buchberger([S.parse("x^2"), S.parse("x*y+y^2")], MonomialOrder.lex(2))
    assert sorted(map(str, G.polys)) == sorted(["x^2", "x*y+y^2", "y^3"])
    gens = [R.parse(t) for t in ["x1*x2", "x0*x2", "x0*x1"]]
    assert set(buchberger(gens).polys) == set(gens)


def test_y_cubed_by_explicit_combination():
    # y^3 = y*(x*y + y^2) - x*y^2 and x*y^2 = y*(x*y+y^2) - y^3 ... checked via the oracle
    S = lexring()
    gens = [oracles.terms(S.parse("x^2")), oracles.terms(S.parse("x*y+y^2"))]
    assert oracles.in_ideal(oracles.terms(S.parse("y^3")), gens, 2, 101)


def test_empty_and_unit():
    R = R2()
    assert buchberger([], ring=R).is_zero()
    with pytest.raises(ValueError):
        buchberger([])
    assert buchberger([R.parse("x0"), R.parse("x0+1")]).is_unit()


def test_s_polynomial_and_is_groebner():
    R = R2()
    f, g = R.parse("x0^2-x1"), R.parse("x0*x1-1")
    s = s_polynomial(f, g)
    assert s == R.parse("-x1^2+x0")
    assert not is_groebner([f, g])
    assert is_groebner(buchberger([f, g]).polys)


def test_determinism():
    R = R2(7)
    gens = [R.parse(t) for t in ["x0^2+3*x1*x2", "x1^3-x0*x2^2", "x0*x1*x2+x2^3"]]
    a = buchberger(gens).polys
    _GB_CACHE.clear()
    b = buchberger(list(gens)).polys
    assert [str(f) for f in a] == [str(f) for f in b]


# --- syzygies and resolutions ----------------------------------------------------------------

def _proportional(col, expected):
    F = col[0].field
    pairs = [(a, b) for a, b in zip(col, expected)]
    if any(a.is_zero() != b.is_zero() for a, b in pairs):
        return False
    a, b = next((a, b) for a, b in pairs if not b.is_zero())
    c = F.div(a.leading_coefficient(), b.leading_coefficient())
    return all(x == y.scale(c) for x, y in pairs)


def test_koszul_syzygy():
    R = PolyRing.projective(1, F101)
    x0, x1 = R.gens
    M = syzygy_module([x0, x1])
    assert M.ncols == 1
    assert _proportional(M.column(0), [-x1, x0])


def test_syzygies_of_square_of_maximal_ideal():
    R = PolyRing.projective(1, F101)
    x0, x1 = R.gens
    gens = [x0 ** 2, x0 * x1, x1 ** 2]
    M = syzygy_module(gens)
    assert M.ncols == 2 and M.source_degrees == [3, 3]
    z = R.zero()
    # the columns span the same degree-3 space as the two hand syzygies
    hand = [[x1, -x0, z], [z, x1, -x0]]
    cols = [[oracles.terms(e) for e in c] for c in M.columns() + hand]
    assert oracles.syzygy_span_dimension(cols, [3] * 4, [2, 2, 2], 2, 3, 101) == 2


def test_quintic_presentation():
    R = R2(3)
    M = syzygy_module(jacobian(R.parse(QUINTIC)))
    assert sorted(d - 4 for d in M.source_degrees) == [1, 3]
    first = M.column(M.source_degrees.index(5))
    x0, x1, x2 = R.gens
    assert _proportional(first, [R.zero(), x0, x1])


def test_syzygies_annihilate():
    R = R2(7)
    gens = jacobian(R.parse(QUINTIC))
    M = syzygy_module(gens)
    for col in M.columns():
        s = R.zero()
        for g, c in zip(gens, col):
            s = s + g * c
        assert s.is_zero()


def test_minimize_keeps_koszul():
    R = R2()
    res = free_resolution(list(R.gens))
    assert [m.source_degrees for m in res.maps] == [[2, 2, 2], [3]]
    mini = minimize_resolution(res)
    assert [m.rows for m in mini.maps] == [m.rows for m in res.maps]


def test_minimize_strips_identity_summand():
    R = PolyRing.projective(1, F101)
    x0, x1 = R.gens
    z = R.zero()
    # presentation of R/(x0, x1) twisted, padded with R(-2) --1--> R(-2)
    d1 = PresentationMatrix(R, [[-x1, z], [x0, z], [z, R.one()]], [1, 1, 2], [2, 2])
    d0_free = GradedResolution([d1])
    mini = minimize_resolution(d0_free)
    (m,) = mini.maps
    assert m.nrows == 2 and m.ncols == 1
    assert m.target_degrees == [1, 1] and m.source_degrees == [2]
    assert not m.has_unit_entry()


def test_minimize_quintic_twists():
    R = R2(3)
    gens = jacobian(R.parse(QUINTIC))
    # a non-minimal presentation: the minimal columns plus their sum
    M = syzygy_module(gens)
    cols = M.columns()
    res = GradedResolution([PresentationMatrix.from_columns(R, cols, [4, 4, 4])])
    mini = minimize_resolution(res)
    assert sorted(d - 4 for d in mini.maps[0].source_degrees) == [1, 3]


def test_resolution_is_a_complex_and_euler_characteristic():
    R = R2(7)
    gens = [R.parse(t) for t in ["x0^2", "x0*x1", "x1^2", "x2^2*x0"]]
    res = free_resolution(gens)
    assert res.check_complex()
    H = hilbert_of_gb(buchberger(gens))
    for d in range(8):
        alt = 0
        for k in range(len(res.maps) + 1):
            for a in res.free_degrees(k):
                if d - a >= 0:
                    alt += (-1) ** k * comb(d - a + 2, 2)
        # alternating sum resolves the ideal: dim I_d
        assert alt == comb(d + 2, 2) - H.coefficient(d)


def test_target_length_mismatch():
    R = R2()
    with pytest.raises(ValueError):
        syzygy_module([[R.var(0), R.var(1)]], [1])


# --- Hilbert series -------------------------------------------------------------------------

def test_hilbert_examples():
    H = hilbert_series([(2, 0), (1, 1), (0, 2)], n=2)
    assert H.series(4) == [1, 2, 0, 0, 0]
    assert H.numerator == {(0,): 1, (2,): -3, (3,): 2}
    H = hilbert_series([(2, 0), (1, 1)], n=2)
    assert H.numerator == {(0,): 1, (2,): -2, (3,): 1}
    assert H.series(5) == [1, 2, 1, 1, 1, 1]
    assert hilbert_series([], n=3).numerator == {(0,): 1}


def test_hilbert_bigraded():
    # one point in P^1 x P^1: (x1, y1)
    H = hilbert_series([(0, 1, 0, 0), (0, 0, 0, 1)], blocks=(2, 2))
    assert H.stable_value() == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=6))
def test_hilbert_matches_staircase(gens):
    H = hilbert_series(gens, n=3)
    for d in range(9):
        assert H.coefficient(d) == oracles.standard_count(gens, 3, d)


# --- oracle properties ----------------------------------------------------------------------

def random_homogeneous_ideal(rng, p, nvars, ngens, maxdeg, density=3):
    R = PolyRing([f"x{i}" for i in range(nvars)], make_field(p))
    gens = []
    for _ in range(ngens):
        d = rng.randint(1, maxdeg)
        f = R.zero()
        mons = oracles.monomials(nvars, d)
        for m in rng.sample(mons, min(density, len(mons))):
            f = f + R.monomial(m, rng.randrange(1, p))
        gens.append(f)
    return R, gens


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([7, 101]))
def test_gb_against_linear_algebra(seed, p):
    rng = random.Random(seed)
    R, gens = random_homogeneous_ideal(rng, p, rng.randint(2, 3), rng.randint(1, 3), 3)
    G = buchberger(gens)
    assert is_groebner(G.polys)
    for g in gens:
        assert normal_form(g, G).is_zero()
    tg = [oracles.terms(g) for g in gens]
    leads = [f.leading_term()[0] for f in G.polys]
    for d in range(6):
        assert oracles.standard_count(leads, R.n, d) == oracles.hilbert_function(tg, R.n, d, p)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_syzygies_against_linear_algebra(seed):
    rng = random.Random(seed)
    p = 101
    R, gens = random_homogeneous_ideal(rng, p, rng.randint(2, 3), rng.randint(2, 3), 3)
    M = syzygy_module(gens)
    tg = [oracles.terms(g) for g in gens]
    cols = [[oracles.terms(e) for e in c] for c in M.columns()]
    for c in cols:
        assert oracles.apply_syzygy(tg, c, p) == {}
    gdeg = [g.total_degree() for g in gens]
    for d in range(7):
        assert (oracles.syzygy_span_dimension(cols, M.source_degrees, gdeg, R.n, d, p)
                == oracles.syzygy_dimension(tg, R.n, d, p))
