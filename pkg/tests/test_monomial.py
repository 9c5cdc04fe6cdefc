from math import comb

import pytest

from toricgraph.algebra import Ring
from toricgraph.graphs import ResourceLimitError, c4r_graph, complete_bipartite_2t, cycle_graph, gt_graph
from toricgraph.groebner import MonomialIdeal, initial_ideal, toric_ideal
from toricgraph.known import gt_initial_order, k2t_initial
from toricgraph.monomial import (BettiTable, betti_from_linear_quotients, betti_koszul_monomial, betti_lyubeznik,
                                 betti_taylor, check_linear_quotients, euler_consistent, extremal_betti,
                                 find_linear_quotient_order, hilbert_numerator, invariants_from_unique_extremal,
                                 poly_divide_one_minus_x, restricted_homology)
from toricgraph.repro import data_text


def ideal(ring, *specs):
    return MonomialIdeal(ring, tuple(ring.monomial(s) for s in specs))


def test_hilbert_zero_ideal():
    ring = Ring(("x", "y", "z"))
    hd = hilbert_numerator(MonomialIdeal(ring, ()))
    assert hd.numerator == (1,) and hd.h == (1,) and hd.krull_dim == 3


def test_hilbert_c4_initial(c4):
    hd = hilbert_numerator(c4[3])
    assert hd.numerator == (1, 0, -1)
    assert hd.h == (1, 1) and hd.krull_dim == 3 and hd.deg_h == 1


@pytest.mark.parametrize("t", range(2, 7))
def test_hilbert_gt(t):
    g = gt_graph(t)
    ring = g.ring("paper-gt")
    hd = hilbert_numerator(MonomialIdeal(ring, tuple(gt_initial_order(ring, t))))
    assert hd.deg_h == t + 3
    # the vertex count, not the printed 2t + 4 (they agree only at t = 2)
    assert hd.krull_dim == t + 6


def test_hilbert_function_matches_count():
    ring = Ring(("x", "y"))
    hd = hilbert_numerator(ideal(ring, "x^2", "x*y"))
    # basis of degree d: y^d, and x*y^0 only in degree 1
    assert [hd.hilbert_function(d) for d in range(5)] == [1, 2, 1, 1, 1]


def test_divide_one_minus_x():
    assert poly_divide_one_minus_x([1, 0, -1]) == [1, 1]
    with pytest.raises(ArithmeticError):
        poly_divide_one_minus_x([1, 1])


@pytest.mark.parametrize("t", range(2, 7))
def test_linear_quotients_gt(t):
    g = gt_graph(t)
    ring = g.ring("paper-gt")
    order = gt_initial_order(ring, t)
    cert = check_linear_quotients(MonomialIdeal(ring, tuple(order)), order)
    assert cert
    assert cert.max_n == 2 * t - 2
    table = betti_from_linear_quotients(cert)
    assert extremal_betti(table) == [(2 * t - 1, 2 * t + 3)]
    assert table[(2 * t - 1, 2 * t + 3)] == 1
    assert invariants_from_unique_extremal((2 * t - 1, 2 * t + 3), 2 * t + 6, t + 6) == (4, 2 * t - 1, t + 3)


@pytest.mark.parametrize("t", range(2, 9))
def test_linear_quotients_k2t(t):
    ring = complete_bipartite_2t(t).ring()
    order = k2t_initial(ring, t)
    cert = check_linear_quotients(MonomialIdeal(ring, tuple(order)), order)
    assert cert and cert.max_n <= t - 1


def test_linear_quotients_failure_witness():
    ring = Ring(("a", "b", "c", "d"))
    I = ideal(ring, "a*b", "c*d")
    bad = check_linear_quotients(I, list(I.gens))
    assert not bad and bad.position == 1 and sum(bad.witness) == 2
    assert find_linear_quotient_order(I) is None


def test_linear_quotients_rejects_non_permutation():
    ring = Ring(("a", "b"))
    I = ideal(ring, "a", "b")
    with pytest.raises(ValueError):
        check_linear_quotients(I, [ring.monomial("a")])


def test_formula_example():
    # <a, b>: colon of b is <a>, so R/I has 1, 2, 1
    ring = Ring(("a", "b", "c"))
    cert = check_linear_quotients(ideal(ring, "a", "b"), [ring.monomial("a"), ring.monomial("b")])
    t = betti_from_linear_quotients(cert)
    assert dict(t.entries) == {(0, 0): 1, (1, 1): 2, (2, 2): 1}


@pytest.mark.parametrize("t", [2, 3, 4])
def test_k2t_formula_equals_taylor(t):
    ring = complete_bipartite_2t(t).ring()
    I = MonomialIdeal(ring, tuple(k2t_initial(ring, t)))
    cert = find_linear_quotient_order(I)
    assert betti_from_linear_quotients(cert) == betti_taylor(I)


def test_oracles_agree_on_c4r():
    for r in (2, 3, 4):
        I = initial_ideal(toric_ideal(c4r_graph(r)))
        lyu = betti_lyubeznik(I)
        assert lyu == betti_koszul_monomial(I) == betti_taylor(I)
        assert euler_consistent(lyu, hilbert_numerator(I))


def test_oracles_agree_on_g2(g2):
    I = g2[3]
    formula = betti_from_linear_quotients(check_linear_quotients(I, gt_initial_order(g2[1], 2)))
    assert formula == betti_lyubeznik(I) == betti_koszul_monomial(I) == betti_taylor(I)


def test_complete_intersection_table():
    ring = Ring(("a", "b", "c", "d", "e", "f"))
    I = ideal(ring, "a*b", "c*d", "e*f")
    t = betti_lyubeznik(I)
    assert {ij: t[ij] for ij in t.nonzero()} == {(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1}
    assert t.reg == 3 and t.pdim == 3


def test_taylor_cap():
    ring = Ring(tuple(f"x{i}" for i in range(6)))
    I = ideal(ring, *[f"x{i}*x{j}" for i in range(6) for j in range(i + 1, 6)])
    with pytest.raises(ResourceLimitError):
        betti_taylor(I, max_gens=10)


def test_restricted_homology_circle():
    # boundary of a triangle: reduced H_1 = 1 sits at face size 2
    faces = [(), (0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]
    assert restricted_homology(faces) == {2: 1}
    assert restricted_homology(faces + [(0, 1, 2)]) == {}


def test_betti_table_diagram_round_trip():
    t = BettiTable.from_dict({(0, 0): 1, (1, 2): 3, (2, 3): 2}, "formula")
    again = BettiTable.from_diagram(t.diagram())
    assert again == t
    assert t.reg == 1 and t.pdim == 2
    assert t.numerator() == [1, 0, -3, 2]


def test_betti_table_rejects_bad_entries():
    with pytest.raises(ValueError):
        BettiTable.from_dict({(0, 0): 1, (0, 1): 1}, "formula")


def test_extremal_example():
    t = BettiTable.from_dict({(0, 0): 1, (1, 2): 4, (2, 4): 1, (3, 4): 1}, "formula")
    assert extremal_betti(t) == [(2, 4), (3, 4)]
    t.entries[(3, 5)] = 1
    assert extremal_betti(t) == [(3, 5)]


def test_z_fixture_extremal():
    table = BettiTable.from_diagram(data_text("z_betti.txt"))
    assert table.totals() == {0: 1, 1: 12, 2: 40, 3: 56, 4: 37, 5: 11, 6: 1}
    assert extremal_betti(table) == [(5, 10), (6, 10)]
    assert table.reg == 5 and table.pdim == 6


def test_c4_table_from_formula(c4):
    cert = find_linear_quotient_order(c4[3])
    t = betti_from_linear_quotients(cert)
    assert dict(t.entries) == {(0, 0): 1, (1, 2): 1}
    assert comb(4, 0) == 1
