"""Hardy/Cabello box families, closed-form matrix and NS maximum."""
import numpy as np
import pytest

from nlbox import boxes
from nlbox.cabello import (
    CoefficientError,
    cabello_box,
    cabello_matrix_closed_form,
    check_cabello_conditions,
    coefficients_from_json,
    extract_q,
    hardy_box,
    ns_max_success,
    success_closed_form,
)
from nlbox.search import SearchConfig, SearchDomain, maximize


def coeffs(**kv):
    c = np.zeros(11)
    for name, val in kv.items():
        c[int(name[1:]) - 1] = val
    return c


class TestHardyBox:
    def test_pure_nonlocal_corner(self):
        box = hardy_box([0, 0, 0, 0, 0, 1])
        assert box == boxes.nonlocal_vertex(0, 0, 1)
        assert extract_q(box).q4 == 0.5

    def test_pure_local_corner(self):
        box = hardy_box([1, 0, 0, 0, 0, 0])
        assert box == boxes.local_vertex(0, 0, 0, 1)
        assert extract_q(box).q4 == 0.0

    def test_interior_point(self):
        box = hardy_box([0.1, 0.1, 0.1, 0.1, 0.1, 0.5])
        assert abs(box.prob(1, 1, 1, 1) - 0.25) < 1e-15
        padded = np.concatenate([[0.1] * 5 + [0.5], np.zeros(5)])
        np.testing.assert_allclose(box.p, cabello_matrix_closed_form(padded).p,
                                   atol=1e-15)

    def test_hardy_zeros(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            box = hardy_box(rng.dirichlet(np.ones(6)))
            q = extract_q(box)
            assert q.q1 == 0.0 and q.q2 == 0.0 and q.q3 == 0.0

    def test_matches_padded_cabello(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            c6 = rng.dirichlet(np.ones(6))
            c11 = np.concatenate([c6, np.zeros(5)])
            assert hardy_box(c6) == cabello_box(c11)


class TestCabelloBox:
    def test_pure_c11_corner(self):
        box = cabello_box(coeffs(c11=1))
        assert box == boxes.nonlocal_vertex(1, 1, 0)
        assert extract_q(box).success == -0.5

    def test_pure_c6_corner(self):
        box = cabello_box(coeffs(c6=1))
        assert box == hardy_box([0, 0, 0, 0, 0, 1])
        assert extract_q(box).success == 0.5

    def test_four_term_mixture(self):
        box = cabello_box(coeffs(c5=0.4, c6=0.1, c10=0.4, c11=0.1))
        assert abs(box.prob(1, 1, 1, 1) - 0.45) < 1e-15
        assert abs(box.prob(0, 0, 0, 0) - 0.45) < 1e-15

    def test_cabello_zeros_exact(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            box = cabello_box(rng.dirichlet(np.ones(11)))
            q = extract_q(box)
            assert q.q2 == 0.0 and q.q3 == 0.0

    def test_coefficient_errors(self):
        with pytest.raises(CoefficientError):
            cabello_box(np.full(11, 0.2))
        with pytest.raises(CoefficientError):
            cabello_box(coeffs(c1=1.2, c2=-0.2))
        with pytest.raises(CoefficientError):
            cabello_box(np.ones(10) / 10)


class TestClosedFormMatrix:
    def test_pure_c7_corner(self):
        box = cabello_matrix_closed_form(coeffs(c7=1))
        assert box == boxes.local_vertex(0, 0, 0, 0)
        np.testing.assert_array_equal(box.p[:, 0], 1.0)

    def test_pure_c6_corner(self):
        box = cabello_matrix_closed_form(coeffs(c6=1))
        assert box == boxes.nonlocal_vertex(0, 0, 1)

    def test_equals_vertex_mixture(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            c = rng.dirichlet(np.ones(11))
            np.testing.assert_allclose(
                cabello_matrix_closed_form(c).p, cabello_box(c).p, atol=1e-12
            )


class TestExtractQ:
    def test_success_closed_form(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            c = rng.dirichlet(np.ones(11))
            q = extract_q(cabello_box(c))
            expected = 0.5 * c[5] + c[9] - (c[6] + c[7] + c[8] + c[9] + 0.5 * c[10])
            assert abs(q.success - expected) <= 1e-12
            assert abs(success_closed_form(c) - expected) <= 1e-15

    def test_pr_box(self):
        q = extract_q(boxes.pr_box())
        assert (q.q1, q.q2, q.q3, q.q4) == (0.5, 0.5, 0.5, 0.0)

    def test_uniform_box(self):
        q = extract_q(boxes.uniform_box())
        assert (q.q1, q.q2, q.q3, q.q4) == (0.25, 0.25, 0.25, 0.25)


class TestConditions:
    def test_nonlocal_001_runs(self):
        ok, q = check_cabello_conditions(boxes.nonlocal_vertex(0, 0, 1))
        assert ok and q.success == 0.5

    def test_pr_box_fails(self):
        ok, q = check_cabello_conditions(boxes.pr_box())
        assert not ok and q.q2 == 0.5

    def test_uniform_fails(self):
        ok, q = check_cabello_conditions(boxes.uniform_box())
        assert not ok and q.success == 0.0


class TestNsMax:
    def test_hardy(self):
        value, witness = ns_max_success("hardy")
        assert value == 0.5
        assert witness[5] == 1.0 and witness.sum() == 1.0

    def test_cabello(self):
        value, witness = ns_max_success("cabello")
        assert value == 0.5
        assert witness[5] == 1.0 and witness.sum() == 1.0

    def test_local_only_restriction_is_zero(self):
        # forbid both nonlocal vertices: no local mixture beats q4 = q1
        rows = np.zeros((2, 11))
        rows[0, 5] = 1.0
        rows[1, 10] = 1.0
        result = maximize(
            success_closed_form,
            SearchDomain(simplex_dim=11, equalities=(rows, np.zeros(2))),
            SearchConfig(restarts=8, seed=0, max_evals=16000),
        )
        assert abs(result.value) <= 1e-9

    def test_unknown_argument(self):
        with pytest.raises(ValueError):
            ns_max_success("chsh")


class TestCoefficientJson:
    def test_hardy_padding(self):
        c = coefficients_from_json('{"c": [0, 0, 0, 0, 0, 1]}')
        assert c.shape == (11,)
        assert c[5] == 1.0 and c[6:].sum() == 0.0

    def test_full_vector(self):
        c = coefficients_from_json('{"c": [0,0,0,0,0,0.5,0,0,0,0,0.5]}')
        assert c[5] == 0.5 and c[10] == 0.5
