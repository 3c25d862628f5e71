"""Properties of the seeded corpus beyond the acceptance criteria."""

from polardeg.blowup import blowup_model, lci_defect, torsion_ideal
from polardeg.ideals import Ideal, eliminate, irrelevant_ideal, saturate


def test_polar_degree_equals_bezout_minus_milnor(corpus_reports):
    for kind, m, rep in corpus_reports:
        d = m.source.total_degree()
        assert rep.dt == (d - 1) ** 2 - rep.mu
        assert rep.tau <= rep.mu


def test_corpus_mix(corpus_reports):
    kinds = {k for k, _, _ in corpus_reports}
    assert {"smooth", "special", "lines", "cusp"} <= kinds
    assert {m.source.total_degree() for _, m, _ in corpus_reports} == {3, 4, 5, 6}


def _radical_contains(I, f, bound=20):
    g = f
    for _ in range(bound):
        if I.contains(g):
            return True
        g = g * f
    return False


def test_torsion_support_is_the_non_lci_locus(corpus_reports):
    # x-projection of the torsion part and V(Fitt_n) agree as sets
    checked = 0
    for kind, m, rep in corpus_reports:
        if rep.torsion_degree == 0:
            continue
        model = blowup_model(m)
        T = torsion_ideal(model)
        S = model.ring
        ys = list(range(m.n + 1, 2 * m.n + 2))
        proj = eliminate(T, ys)
        R = m.ring
        P = Ideal(R, [g.to_ring(R, list(range(m.n + 1)) + [0] * (m.n + 1)) for g in proj.gens])
        P = saturate(P, irrelevant_ideal(R))
        D = lci_defect(m)
        assert all(_radical_contains(P, g) for g in D.gens)
        assert all(_radical_contains(D, g) for g in P.gens)
        checked += 1
    assert checked >= 3
