import os
from fractions import Fraction

import pytest

import hyperlim as hl

FIXTURES = os.environ.get("HYPERLIM_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "fixtures"))


def read(name):
    with open(os.path.join(FIXTURES, name)) as f:
        return f.read()


def test_hom_density_is_exact():
    k = hl.UniformHypergraph(2, 2, [[0, 1]])
    tri = hl.complete_hypergraph(2, 3)
    assert hl.hom_count(k, tri) == 6
    assert hl.hom_density(k, tri) == Fraction(2, 3)


def test_large_counts_are_python_ints():
    k = hl.UniformHypergraph(3, 30)
    h = hl.complete_hypergraph(3, 40)
    assert hl.hom_count(k, h) == 40**30


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        hl.UniformHypergraph(2, 3, [[0, 3]])
    with pytest.raises(ValueError):
        hl.parse_hypergraph("HG 2 3 1\n1 1\n")


def test_density_and_budget():
    tri = hl.parse_hypergraph(read("triangle.hg"))
    w = hl.parse_hypergraphon(read("pair_low_k2.hgon"))
    assert hl.exact_density(tri, w) == pytest.approx(0.125, abs=1e-15)
    assert hl.exact_density(tri, hl.project(w)) == pytest.approx(0.125, abs=1e-15)
    est, se = hl.mc_density(tri, w, 20000, 3)
    assert abs(est - 0.125) <= 4 * se
    assert hl.mc_density(tri, w, 20000, 3) == (est, se)
    with pytest.raises(hl.BudgetExceeded):
        hl.exact_density(tri, w, max_terms=8)


def test_from_function_and_eval():
    w = hl.StepHypergraphon.from_function(2, 2, hl.ValueKind.indicator, lambda b: 1.0 if b[2] == 0 else 0.0)
    assert w.eval([0.2, 0.9, 0.3]) == 1.0
    assert w.eval([0.2, 0.9, 0.7]) == 0.0


def test_sampling_and_latent_cells():
    w = hl.parse_hypergraphon(read("standard_w.hgon"))
    s = hl.sample_w_random(w, 16, 5)
    assert hl.parse_latent_sample(s.to_text()).to_text() == s.to_text()
    p = hl.latent_hyperpartition(s, 2)
    assert all(d in (0, 1) for d in hl.cell_density(s.graph, p).values())
    assert hl.cell_error(s.graph, p) == 0


def test_removal():
    k = hl.UniformHypergraph(3, 3, [[0, 1, 2]])
    r = hl.removal(k, hl.complete_hypergraph(3, 5))
    assert r["verified"] and r["optimal"]
    assert len(r["removed"]) == 10
    assert r["residual"] == 0
