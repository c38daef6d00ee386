import math
from fractions import Fraction as F

import numpy as np
import pytest

from ckrep.certify import (
    brute_force_t,
    conditional_factor,
    conditional_overlap_bound,
    guarantee_length,
    inequivalence_certificate,
    overlap_data,
    t_sequence,
    t_value,
)
from ckrep.errors import DomainError, ResourceError
from ckrep.scalars import Surd, format_scalar, sqrt
from ckrep.spectral import ZeroOneMatrix, check_lambda_membership, solve_last_coordinate

from conftest import GOLDEN_SHIFT, O2, THREE_STATE, inverse_point, random_admissible, random_rational_point

P_HALF = check_lambda_membership(O2, (F(1, 2), F(1, 2)))
P_TILT = check_lambda_membership(O2, (F(3, 5), F(2, 5)))


def _distinct_pair(rng, A, exact=True):
    while True:
        a, _ = random_rational_point(rng, A)
        b, _ = random_rational_point(rng, A)
        if a != b:
            p, q = check_lambda_membership(A, a), check_lambda_membership(A, b)
            return (p, q) if exact else (p.as_float(), q.as_float())


def test_o2_overlap_constant():
    d = overlap_data(O2, P_HALF, P_TILT)
    c = sqrt(F(3, 10)) + sqrt(F(1, 5))
    assert d.exact and d.c == c and isinstance(d.c, Surd)
    assert abs(float(d.c) - (math.sqrt(0.3) + math.sqrt(0.2))) <= 1e-12
    T2 = t_sequence(d, 2)[0]
    assert T2 == c * c
    assert d.row_ratios == (c, c)


def test_degenerate_pair():
    d = overlap_data(O2, P_HALF, P_HALF)
    assert d.degenerate and d.c == 1
    assert t_sequence(d, 10) == [1] * 9
    cert = inequivalence_certificate(O2, P_HALF, P_HALF)
    assert cert.m_star is None and cert.m_guarantee is None
    assert "equivalent" in cert.verdict and cert.to_json()["degenerate"]
    fl = overlap_data(None, P_HALF.as_float(), P_HALF.as_float())
    assert fl.degenerate and fl.c == 1.0 and t_value(fl, 50) == 1.0


def test_three_state_against_a_slice_point():
    q = solve_last_coordinate(THREE_STATE, (0.3, 0.4))
    p = check_lambda_membership(THREE_STATE, (F(1, 3), F(1, 3), F(1, 2)))
    d = overlap_data(THREE_STATE, p, q)
    assert not d.exact and 0 < d.c < 1
    T = t_sequence(d, 10)
    assert T[-1] <= d.c ** 9 * (1 + 1e-12)


def test_schwarz_row_ratios():
    # Cauchy-Schwarz: (D v)_i / v_i <= sqrt((A_a x)_i / x_i * (A_b y)_i / y_i) = 1
    d = overlap_data(O2, P_HALF, P_TILT)
    assert all(r <= 1 for r in d.row_ratios)


def ratio_one_rows(A, p, q):
    """Rows on whose successors x_j / y_j is constant; exactly the rows with ratio 1."""
    out = []
    for i in range(1, A.n + 1):
        ratios = {p.x[j - 1] / q.x[j - 1] for j in A.successors(i)}
        if len(ratios) == 1:
            out.append(i)
    return out


def test_random_pairs_exact(rng):
    for _ in range(12):
        A = random_admissible(rng, rng.randint(2, 4))
        p, q = _distinct_pair(rng, A)
        d = overlap_data(A, p, q)
        assert d.exact and 0 < d.c <= 1
        assert [i + 1 for i, r in enumerate(d.row_ratios) if r == 1] == ratio_one_rows(A, p, q)
        assert (d.c < 1) == (not ratio_one_rows(A, p, q))
        T = t_sequence(d, 12)
        for t0, t1 in zip(T, T[1:]):
            assert t1 <= d.c * t0
        for m in range(2, 6):
            assert brute_force_t(d, m) == T[m - 2]


def test_random_pairs_float(rng):
    for _ in range(20):
        A = random_admissible(rng, rng.randint(2, 4))
        p, q = _distinct_pair(rng, A, exact=False)
        d = overlap_data(A, p, q)
        assert not d.exact and 0 < d.c <= 1 + 1e-12
        T = t_sequence(d, 20)
        for t0, t1 in zip(T, T[1:]):
            assert t1 <= d.c * t0 * (1 + 1e-12)
        for m in range(2, 6):
            assert brute_force_t(d, m) == pytest.approx(t_value(d, m), rel=1e-12)
            assert t_value(d, m) == pytest.approx(T[m - 2], rel=1e-12)


def test_all_ones_pairs_have_c_below_one(rng):
    for _ in range(20):
        A = ZeroOneMatrix.ones(rng.randint(2, 4))
        p, q = _distinct_pair(rng, A)
        assert 0 < overlap_data(A, p, q).c < 1


def test_single_successor_row_forces_ratio_one():
    # row 2 of the golden shift has one successor
    p = check_lambda_membership(GOLDEN_SHIFT, (F(2, 3), F(1, 2)))
    q = check_lambda_membership(GOLDEN_SHIFT, (F(3, 4), F(1, 3)))
    d = overlap_data(GOLDEN_SHIFT, p, q)
    assert d.row_ratios[1] == 1 and d.c == 1 and not d.degenerate
    cert = inequivalence_certificate(GOLDEN_SHIFT, p, q)
    # T_m still decays here, so the certificate falls back to the computed search
    assert cert.m_guarantee is None and cert.m_star is not None and cert.certified


def test_bipartite_pair_does_not_decay():
    A = ZeroOneMatrix.from_rows([[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]])
    x = (F(1, 5), F(1, 4), F(1, 4), F(3, 10))
    y = tuple(t * F(10, 9) for t in x[:2]) + tuple(t * F(10, 11) for t in x[2:])
    p, q = (check_lambda_membership(A, inverse_point(A, v)) for v in (x, y))
    assert p.a != q.a
    d = overlap_data(A, p, q)
    assert d.row_ratios == (1, 1, 1, 1)
    T = t_sequence(d, 10)
    assert len(set(T)) == 1 and 0 < T[0] < 1
    cert = inequivalence_certificate(A, p, q, m_cap=500)
    assert not cert.certified and cert.verdict.startswith("not certified")


def test_numpy_oracle_for_t():
    d = overlap_data(None, P_HALF.as_float(), P_TILT.as_float())
    D, v = d.D_array(), d.v_array()
    for m in (2, 7, 15):
        ref = np.ones(2) @ np.linalg.matrix_power(D, m - 1) @ v
        assert t_value(d, m) == pytest.approx(ref, rel=1e-13)


def test_conditional_bound():
    d = overlap_data(O2, P_HALF, P_HALF)
    assert conditional_factor(d, 1, 1) == 1
    d = overlap_data(O2, P_HALF, P_TILT)
    assert conditional_factor(d, 1, 2) == sqrt(F(1, 2) * F(2, 5) / (F(1, 2) * F(2, 5)))
    assert conditional_overlap_bound(d, 1, 1, 3) == t_value(d, 3)
    with pytest.raises(DomainError):
        conditional_factor(d, 0, 1)


def test_o2_certificate():
    cert = inequivalence_certificate(O2, P_HALF, P_TILT, epsilon=1e-6)
    c = float(cert.c)
    assert cert.m_star == 2722 and cert.m_guarantee == 2723
    assert c ** (cert.m_guarantee - 1) <= 1e-6 < c ** (cert.m_guarantee - 2)
    assert cert.bound_values[-1] < 0.91
    assert all(0 <= float(t) <= 1 for t in cert.bound_values)
    js = cert.to_json()
    assert js["c_exact"] == format_scalar(sqrt(F(1, 5)) + sqrt(F(3, 10)))["exact"]
    assert js["certified"]
    assert len(js["T"]) == 19


def test_certificate_cap():
    cert = inequivalence_certificate(O2, P_HALF, P_TILT, epsilon=1e-6, m_cap=100)
    assert cert.m_star is None and cert.m_guarantee == 2723
    with pytest.raises(DomainError):
        inequivalence_certificate(O2, P_HALF, P_TILT, epsilon=2)


def test_guarantee_length():
    assert guarantee_length(1.0, 0.1) is None
    assert guarantee_length(0.5, 0.25) == 3
    assert guarantee_length(0.5, 0.9) == 2
    for c in (0.3, 0.9, 0.999):
        m = guarantee_length(c, 1e-8)
        assert c ** (m - 1) <= 1e-8 < c ** (m - 2)


def test_mismatched_matrices_and_budget():
    g = check_lambda_membership(GOLDEN_SHIFT, (F(2, 3), F(1, 2)))
    with pytest.raises(DomainError):
        overlap_data(None, P_HALF, g)
    d = overlap_data(O2, P_HALF, P_TILT)
    with pytest.raises(ResourceError):
        brute_force_t(d, 40)
