"""The thirteen acceptance criteria. Each test carries a ``criterion`` marker;
conftest prints one PASS/FAIL line per criterion at the end of the run."""

import random
import sys
import warnings

import pytest

import oracles
from corpus import build_corpus
from polardeg.blowup import blowup_model, lci_defect, torsion_degree
from polardeg.cli import probe
from polardeg.fields import make_field
from polardeg.groebner import buchberger, is_groebner, normal_form, syzygy_module
from polardeg.ideals import Ideal, PointP, fitting_ideal, irrelevant_ideal, saturate
from polardeg.invariants import (Classification, chern_classes, classical_local_invariants,
                                 classify_relation_bundle, full_report, is_homaloidal, milnor,
                                 naive_degrees, tjurina, topological_degree, verify_inverse)
from polardeg.maps import make_map, polar_map
from polardeg.poly import PolyRing, dehomogenize, differentiate

QUINTIC = "(x1^2+x0*x2)*x0*(x1^2+x0*x2+x0^2)"
PSI_PRINTED = ["-x1^2*x2^2-x0*x2^3-x2^4", "x1^3*x2+x0*x1*x2^2+x1*x2^3", "x1^4+x0*x1^2*x2+x0*x2^3"]
PSI_CORRECTED = PSI_PRINTED[:2] + ["x1^4+x0*x1^2*x2-x0*x2^3"]


def ring(p, n=2, k=1):
    return PolyRing.projective(n, make_field(p, k))


def polar(text, p, k=1, allow=False):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return polar_map(ring(p, 2, k).parse(text), allow_char_divides_degree=allow)


# --- 1 -------------------------------------------------------------------------------------

C1 = "char-3 quintic: tau 13, mu 15, d_t 1, deg T 2, homaloidal, inverse verifies"


@pytest.mark.criterion(1, C1)
def test_c1_quintic_char3_invariants():
    m = polar(QUINTIC, 3)
    rep = full_report(m)
    assert (rep.tau, rep.mu, rep.dt, rep.torsion_degree) == (13, 15, 1, 2)
    assert rep.homaloidal and is_homaloidal(m)
    assert torsion_degree(blowup_model(m)).degree == 2
    R = m.ring
    assert verify_inverse(m, [R.parse(t) for t in PSI_CORRECTED])


@pytest.mark.criterion(1, C1)
@pytest.mark.xfail(strict=True, reason="the printed inverse has a sign error in the x0*x2^3 term "
                                       "of its third form; the corrected form verifies")
def test_c1_printed_inverse():
    m = polar(QUINTIC, 3)
    R = m.ring
    assert verify_inverse(m, [R.parse(t) for t in PSI_PRINTED])


# --- 2 -------------------------------------------------------------------------------------

@pytest.mark.criterion(2, "quintic at p = 7, 101: tau 13, mu 14, d_t 2, deg T 1, not homaloidal")
@pytest.mark.parametrize("p", [7, 101])
def test_c2_quintic_other_chars(p):
    rep = full_report(polar(QUINTIC, p))
    assert (rep.tau, rep.mu, rep.dt, rep.torsion_degree) == (13, 14, 2, 1)
    assert not rep.homaloidal


# --- 3 -------------------------------------------------------------------------------------

@pytest.mark.criterion(3, "saturated Fitt_2 of the quintic jacobian presentation is (x0, x1)")
@pytest.mark.parametrize("p", [3, 7])
def test_c3_fitting(p):
    m = polar(QUINTIC, p)
    R = m.ring
    M = syzygy_module(list(m.forms))
    F2 = saturate(fitting_ideal(M, 2), irrelevant_ideal(R))
    assert F2 == Ideal(R, [R.var(0), R.var(1)])
    assert lci_defect(m, M) == F2


# --- 4 -------------------------------------------------------------------------------------

@pytest.mark.criterion(4, "char-101 quadruple has polar degrees 2, 1, 5, 3; the stated inverse verifies")
def test_c4_quadruple():
    texts = ["z*(y^3+x^2*z)", "z^50*(y^3+x^2*z)^51", "(y^3+x^2*z)*(y^2+x*z)",
             "(y^3+x^2*z)^31*(y^2+x*z)^4"]
    # the last one has degree 101 = p, which needs the explicit opt-in
    maps = [polar(t, 101, allow=True) for t in texts]
    assert [topological_degree(m) for m in maps] == [2, 1, 5, 3]
    m = maps[1]
    R = m.ring
    assert [str(f) for f in m.forms] == ["x0*x2^2", "-49*x1^2*x2", "50*x1^3"]
    assert verify_inverse(m, [R.parse(t) for t in ["-37*x*z^2", "-3*y^2*z", "y^3"]])


# --- 5 -------------------------------------------------------------------------------------

@pytest.mark.criterion(5, "P^3 forms: second naive degree 2")
def test_c5_p3_naive():
    R = ring(101, 3)
    m = make_map([R.parse(t) for t in ["x1^2-x1*x3", "x2^2-x2*x3", "x1*x2", "x0*x3"]])
    first, second = naive_degrees(m)
    assert second == 2


# --- 6 -------------------------------------------------------------------------------------

@pytest.mark.criterion(6, "x0x1x2: d_t 1, tau = mu = 3, deg T 0, Free(1,1), d-2 = (d-1)^2 - tau")
def test_c6_standard_quadratic():
    R = ring(101)
    f = R.parse("x0*x1*x2")
    m = polar_map(f)
    rep = full_report(m)
    assert (rep.dt, rep.tau, rep.mu, rep.torsion_degree) == (1, 3, 3, 0)
    assert rep.classification == Classification("free", (1, 1))
    d = 3
    assert d - 2 == (d - 1) ** 2 - rep.tau
    # per point, the Tjurina length from the truncation oracle
    for z in rep.local_table:
        c = z.point.pivot()
        fa = dehomogenize(f, c)
        others = [zc for i, zc in enumerate(z.point.coords) if i != c]
        assert not any(others)  # the three singular points are coordinate points
        gens = [oracles.terms(fa)] + [oracles.terms(differentiate(fa, j)) for j in range(2)]
        gens = [g for g in gens if g]
        assert oracles.local_length_at_origin(gens, 2, 101) == z.tau == 1


# --- 7 -------------------------------------------------------------------------------------

@pytest.mark.criterion(7, "Fermat quartic: d_t 9, tau = mu = 0, -c1 < c2 + 1")
def test_c7_fermat():
    m = polar("x0^4+x1^4+x2^4", 101)
    rep = full_report(m)
    assert (rep.dt, rep.tau, rep.mu) == (9, 0, 0)
    c1, c2 = chern_classes(m)
    assert -c1 < c2 + 1


# --- 8 - 11: the seeded corpus -------------------------------------------------------------

@pytest.mark.criterion(8, "corpus: delta^2 = mu + d_t, naive = delta^2 - tau = d_t + deg T, deg T = mu - tau >= 0")
def test_c8_identity_chain(corpus_reports):
    assert len(corpus_reports) >= 30
    for kind, m, rep in corpus_reports:
        d = m.source.total_degree()
        assert 3 <= d <= 6 and m.field.p == 101
        dd = rep.delta ** 2
        assert dd == rep.mu + rep.dt
        assert rep.naive_first == rep.naive_second == dd - rep.tau == rep.dt + rep.torsion_degree
        assert rep.torsion_degree == rep.mu - rep.tau >= 0
    # the corpus is not trivial: some curves have torsion
    assert any(rep.torsion_degree > 0 for _, _, rep in corpus_reports)


@pytest.mark.criterion(9, "corpus: classification agrees with the Chern class criteria")
def test_c9_classification(corpus_reports):
    seen = set()
    for kind, m, rep in corpus_reports:
        c1, c2 = rep.c1, rep.c2
        cls = classify_relation_bundle(m)
        assert cls == rep.classification
        assert (-c1 == c2 + 1) == (cls.kind == "free" and cls.exponents == (1, c2))
        if c1 <= -5:
            assert (-c1 == c2) == (cls.kind == "nearly_free" and cls.exponents == (1, c2))
        assert -c1 <= c2 + 1
        seen.add(cls.kind)
    assert "other" in seen


@pytest.mark.criterion(10, "corpus: linear type and d_t = 1 imply delta <= 2")
def test_c10_linear_type_birational(corpus_reports):
    for kind, m, rep in corpus_reports:
        if lci_defect(m).is_unit() and rep.dt == 1:
            assert rep.delta <= 2
        # linear type iff no torsion
        assert lci_defect(m).is_unit() == (rep.torsion_degree == 0)


@pytest.mark.criterion(11, "corpus: local tau and mu equal the classical ones at each rational point")
def test_c11_classical_local(corpus_reports):
    checked = 0
    for kind, m, rep in corpus_reports:
        for row in rep.local_table:
            tau_f, mu_f = classical_local_invariants(m.source, row.point)
            assert (row.tau, row.mu) == (tau_f, mu_f)
            checked += 1
    assert checked >= 30


# --- 12 ------------------------------------------------------------------------------------

@pytest.mark.criterion(12, "probe modal fiber equals d_t: conic, cusp, x0x1x2, char-3 quintic")
@pytest.mark.parametrize("text, p, k", [
    ("x0*x2-x1^2", 7, 2),
    ("x1^2*x2-x0^3", 101, 1),
    ("x0*x1*x2", 101, 1),
    (QUINTIC, 3, 1),
    (QUINTIC, 3, 5),
])
def test_c12_probe(text, p, k):
    m = polar(text, p, k)
    assert probe(m)["modal"] == topological_degree(m)


# --- 13 ------------------------------------------------------------------------------------

def _instance(seed):
    rng = random.Random(seed)
    p = rng.choice([7, 11, 101])
    n = rng.randint(2, 3)
    R = PolyRing([f"x{i}" for i in range(n)], make_field(p))
    gens = []
    for _ in range(rng.randint(2, 3)):
        d = rng.randint(1, 4)
        mons = oracles.monomials(n, d)
        f = R.zero()
        for m in rng.sample(mons, min(rng.randint(2, 4), len(mons))):
            f = f + R.monomial(m, rng.randrange(1, p))
        gens.append(f)
    return R, gens, p


@pytest.mark.criterion(13, "Groebner and syzygy outputs match the linear-algebra oracle on 20 instances")
@pytest.mark.parametrize("seed", range(20))
def test_c13_engine_against_oracle(seed):
    R, gens, p = _instance(seed)
    G = buchberger(gens)
    assert is_groebner(G.polys)
    assert all(normal_form(g, G).is_zero() for g in gens)
    tg = [oracles.terms(g) for g in gens]
    leads = [f.leading_term()[0] for f in G.polys]
    for d in range(7):
        assert oracles.standard_count(leads, R.n, d) == oracles.hilbert_function(tg, R.n, d, p)
    M = syzygy_module(gens)
    cols = [[oracles.terms(e) for e in c] for c in M.columns()]
    assert all(oracles.apply_syzygy(tg, c, p) == {} for c in cols)
    gdeg = [g.total_degree() for g in gens]
    for d in range(8):
        assert (oracles.syzygy_span_dimension(cols, M.source_degrees, gdeg, R.n, d, p)
                == oracles.syzygy_dimension(tg, R.n, d, p))


def test_corpus_is_deterministic():
    a = [str(m) for _, m in build_corpus(size=8)]
    b = [str(m) for _, m in build_corpus(size=8)]
    assert a == b


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
