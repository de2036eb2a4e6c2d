"""Information Causality conditions, coefficient quadratics and the RAC."""
import numpy as np

from nlbox import boxes
from nlbox.cabello import cabello_box
from nlbox.ic import (
    ic_ab_satisfied,
    ic_ba_satisfied,
    ic_cabello_lhs,
    ic_quantities,
    max_success_under_ic,
    mutual_information,
    rac_simulate,
    rsuv,
)
from nlbox.localrandom import lr_constraints
from nlbox.quantum import quantum_box, tsirelson_scenario


def coeffs(**kv):
    c = np.zeros(11)
    for name, val in kv.items():
        c[int(name[1:]) - 1] = val
    return c


class TestICQuantities:
    def test_pr_box(self):
        q = ic_quantities(boxes.pr_box())
        assert (q.p_i_a, q.p_ii_a, q.p_i_b, q.p_ii_b) == (1.0, 1.0, 1.0, 1.0)
        assert (q.e_i, q.e_ii, q.f_i, q.f_ii) == (1.0, 1.0, 1.0, 1.0)

    def test_uniform_box(self):
        q = ic_quantities(boxes.uniform_box())
        assert (q.p_i_a, q.p_ii_a, q.p_i_b, q.p_ii_b) == (0.5, 0.5, 0.5, 0.5)
        assert (q.e_i, q.e_ii, q.f_i, q.f_ii) == (0.0, 0.0, 0.0, 0.0)

    def test_deterministic_vertex(self):
        q = ic_quantities(boxes.local_vertex(0, 0, 0, 0))
        assert q.p_i_a == 1.0
        assert q.p_ii_a == 0.5


class TestConditions:
    def test_pr_violates_both(self):
        ab = ic_ab_satisfied(boxes.pr_box())
        ba = ic_ba_satisfied(boxes.pr_box())
        assert ab.lhs == 2.0 and not ab.satisfied
        assert ba.lhs == 2.0 and not ba.satisfied
        assert ab.margin == -1.0

    def test_uniform_satisfies(self):
        chk = ic_ab_satisfied(boxes.uniform_box())
        assert chk.lhs == 0.0 and chk.satisfied

    def test_tsirelson_box_on_boundary(self):
        box = quantum_box(tsirelson_scenario())
        assert abs(ic_ab_satisfied(box).lhs - 1.0) <= 1e-6
        assert abs(ic_ba_satisfied(box).lhs - 1.0) <= 1e-6

    def test_local_mixtures_satisfy(self):
        verts = boxes.all_local_vertices()
        rng = np.random.default_rng(5)
        for _ in range(100):
            box = boxes.mix(verts, rng.dirichlet(np.ones(16)))
            assert ic_ab_satisfied(box).satisfied
            assert ic_ba_satisfied(box).satisfied


class TestCoefficientLevel:
    def test_rsuv_examples(self):
        q = rsuv(coeffs(c5=0.1, c10=0.1, c11=0.8))
        assert (q.r, q.s, q.u, q.v) == (0.0, 0.0, 0.0, 0.2)
        q = rsuv(coeffs(c11=1))
        assert (q.r, q.s, q.u, q.v) == (0.0, 0.0, 0.0, 0.0)
        q = rsuv(coeffs(c5=0.4, c6=0.2, c9=0.4))
        assert np.allclose((q.r, q.s, q.u, q.v), (0.0, 0.2, 0.4, 0.6), atol=1e-15)

    def test_lhs_spot_values(self):
        lhs = ic_cabello_lhs(coeffs(c5=0.1, c10=0.1, c11=0.8))
        assert np.allclose(lhs, (0.04, 0.04), atol=1e-12)
        lhs = ic_cabello_lhs(coeffs(c5=0.4, c6=0.2, c9=0.4))
        assert np.allclose(lhs, (0.08, 0.40), atol=1e-12)
        lhs = ic_cabello_lhs(coeffs(c5=0.4, c6=0.1, c10=0.4, c11=0.1))
        assert np.allclose(lhs, (0.82, 0.82), atol=1e-12)

    def test_matches_box_level_biases(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            c = rng.dirichlet(np.ones(11))
            lhs1, lhs2 = ic_cabello_lhs(c)
            q = ic_quantities(cabello_box(c))
            assert abs(lhs1 - (q.e_i ** 2 + q.e_ii ** 2)) <= 1e-12
            assert abs(lhs2 - (q.f_i ** 2 + q.f_ii ** 2)) <= 1e-12


class TestMaxUnderIC:
    def test_unconstrained_recovers_ns_bound(self):
        result = max_success_under_ic(restarts=8, constrained=False)
        assert abs(result.value - 0.5) <= 1e-6

    def test_constrained_quick(self):
        result = max_success_under_ic(restarts=8)
        assert abs(result.value - (np.sqrt(2) - 1) / 2) <= 1e-3
        assert all(s >= -1e-6 for s in result.constraint_slacks)

    def test_extra_equalities_cannot_increase(self):
        system = lr_constraints(9)
        result = max_success_under_ic(restarts=8, equalities=(system.a, system.b))
        assert result.value <= (np.sqrt(2) - 1) / 2 + 1e-6


class TestMutualInformation:
    def test_perfect_correlation(self):
        assert abs(mutual_information([[0.5, 0.0], [0.0, 0.5]]) - 1.0) <= 1e-12

    def test_independence(self):
        assert abs(mutual_information(np.full((2, 2), 0.25))) <= 1e-12


class TestRac:
    def test_pr_box_gives_two_bits(self):
        out = rac_simulate(boxes.pr_box())
        assert out.p_bit0 == 1.0 and out.p_bit1 == 1.0
        assert out.total == 2.0

    def test_deterministic_vertex(self):
        out = rac_simulate(boxes.local_vertex(0, 0, 0, 0))
        assert out.p_bit0 == 1.0
        assert abs(out.mi_bit0 - 1.0) <= 1e-12
        assert abs(out.mi_bit1) <= 1e-12
        assert abs(out.total - 1.0) <= 1e-12

    def test_uniform_box_gives_nothing(self):
        out = rac_simulate(boxes.uniform_box())
        assert abs(out.total) <= 1e-12

    def test_all_local_vertices_at_most_one_bit(self):
        for v in boxes.all_local_vertices():
            assert rac_simulate(v).total <= 1.0 + 1e-9
