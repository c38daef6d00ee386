import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ckrep.errors import (
    ConvergenceError,
    DomainError,
    MalformedInputError,
    NoSolutionError,
    NotInLambdaError,
    PreconditionError,
)
from ckrep.spectral import (
    ZeroOneMatrix,
    check_lambda_membership,
    lambda_residual,
    pf_eigen,
    solve_last_coordinate,
    validate_ck_matrix,
)

from conftest import GOLDEN_SHIFT, THREE_STATE, admissible_by_definition, inverse_point, random_admissible


def numpy_pfe(M) -> float:
    return float(max(abs(np.linalg.eigvals(np.array(M, dtype=float)))))


# admissibility ------------------------------------------------------------------

def test_admissibility_examples():
    assert validate_ck_matrix([[1, 1], [1, 0]]).admissible
    swap = validate_ck_matrix([[0, 1], [1, 0]])
    assert not swap.admissible and swap.permutation and swap.reason() == "permutation matrix"
    zero_row = validate_ck_matrix([[1, 1], [0, 0]])
    assert not zero_row.nondegenerate and zero_row.witness == (2, 0)


def test_reducible_witness():
    d = validate_ck_matrix([[1, 1], [0, 1]])
    assert d.nondegenerate and not d.irreducible
    assert d.witness == (2, 1)
    assert "unreachable" in d.reason()


@pytest.mark.parametrize("bad", [[[1, 1, 1], [1, 1]], [[1, 2], [1, 1]], [[1]], "11"])
def test_malformed(bad):
    with pytest.raises(MalformedInputError):
        validate_ck_matrix(bad)


def test_admissibility_agrees_with_definition():
    rng = random.Random(5)
    for _ in range(400):
        n = rng.randint(2, 5)
        rows = [[int(rng.random() < 0.45) for _ in range(n)] for _ in range(n)]
        assert validate_ck_matrix(rows).admissible == admissible_by_definition(rows)


# Perron-Frobenius ---------------------------------------------------------------

def test_pf_three_state_exact():
    M = [[F(0), F(1, 3), F(1, 3)], [F(1, 3), F(0), F(1, 3)], [F(1, 2)] * 3]
    lam, x = pf_eigen(M)
    assert lam == 1 and x == (F(1, 4), F(1, 4), F(1, 2))


def test_pf_periodic_and_golden():
    lam, x = pf_eigen([[0, 1], [1, 0]])
    assert lam == 1 and x == (F(1, 2), F(1, 2))
    lam, x = pf_eigen([[1, 1], [1, 0]])
    assert lam == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-11)
    assert x[0] / x[1] == pytest.approx(lam, abs=1e-10)


def test_pf_errors():
    with pytest.raises(PreconditionError):
        pf_eigen([[1, 1], [0, 1]])
    with pytest.raises(PreconditionError):
        pf_eigen([[1, -1], [1, 1]])
    with pytest.raises(ConvergenceError) as info:
        pf_eigen([[0.5, 0.1, 0], [0, 0.2, 0.3], [0.4, 0, 0.1]], tol=1e-16, max_iter=3)
    assert info.value.last_iterate is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.floats(min_value=0.1, max_value=5))
def test_pf_shift_and_scale(seed, t):
    rng = random.Random(seed)
    A = random_admissible(rng, rng.randint(2, 4))
    M = np.array(A.rows, dtype=float) * np.array([rng.uniform(0.1, 0.9) for _ in range(A.n)])[:, None]
    lam, x = pf_eigen(M.tolist())
    assert float(lam) == pytest.approx(numpy_pfe(M), rel=1e-10)
    lam_shift, y = pf_eigen((M + np.eye(A.n)).tolist())
    assert float(lam_shift) == pytest.approx(float(lam) + 1, rel=1e-10)
    assert np.allclose(np.array(y, float), np.array(x, float), atol=1e-9)
    lam_scaled, _ = pf_eigen((t * M).tolist())
    assert float(lam_scaled) == pytest.approx(t * float(lam), rel=1e-10)


# Lambda(A) ------------------------------------------------------------------------

def test_lambda_residual_examples():
    assert lambda_residual(GOLDEN_SHIFT, (F(2, 3), F(1, 2))) == 0
    assert lambda_residual(ZeroOneMatrix.ones(2), (0.3, 0.7)) == pytest.approx(0, abs=1e-12)
    r = lambda_residual(GOLDEN_SHIFT, (0.9, 0.9))
    assert r > 0
    assert r == pytest.approx(numpy_pfe([[0.9, 0.9], [0.9, 0]]) - 1, abs=1e-10)
    with pytest.raises(DomainError):
        lambda_residual(GOLDEN_SHIFT, (1.0, 0.5))


def test_membership_examples():
    p = check_lambda_membership(THREE_STATE, (F(1, 3), F(1, 3), F(1, 2)))
    assert p.exact and p.x == (F(1, 4), F(1, 4), F(1, 2)) and p.residual == 0
    p = check_lambda_membership(ZeroOneMatrix.ones(2), (0.5, 0.5))
    assert p.x == pytest.approx((0.5, 0.5), abs=1e-12)
    with pytest.raises(NotInLambdaError) as info:
        check_lambda_membership(ZeroOneMatrix.ones(2), (0.5, 0.6))
    assert float(info.value.residual) == pytest.approx(0.1, abs=1e-10)
    with pytest.raises(PreconditionError):
        check_lambda_membership([[0, 1], [1, 0]], (0.5, 0.5))


def test_membership_invariants_on_random_matrices(rng):
    for _ in range(40):
        A = random_admissible(rng, rng.randint(2, 4))
        a = [rng.uniform(0.05, 0.95) for _ in range(A.n - 1)]
        try:
            p = solve_last_coordinate(A, a)
        except NoSolutionError:
            continue
        x = np.array(p.x, float)
        M = np.array(A.rows, float) * np.array(p.a, float)[:, None]
        assert (x > 0).all() and abs(x.sum() - 1) <= 1e-12
        assert np.abs(M @ x - x).max() <= 1e-9 * x.max()


def test_exact_points_from_inverse_construction(rng):
    for _ in range(40):
        A = random_admissible(rng, rng.randint(2, 4))
        for _ in range(50):
            x = [F(rng.randint(1, 9)) for _ in range(A.n)]
            x = tuple(v / sum(x) for v in x)
            a = inverse_point(A, x)
            if a is not None:
                break
        else:
            continue
        p = check_lambda_membership(A, a)
        assert p.exact and p.x == x


def test_monotonicity_in_each_coordinate(rng):
    for _ in range(30):
        A = random_admissible(rng, rng.randint(2, 4))
        a = [rng.uniform(0.1, 0.8) for _ in range(A.n)]
        i = rng.randrange(A.n)
        b = list(a)
        b[i] += rng.uniform(0.01, 0.1)
        assert lambda_residual(A, b) > lambda_residual(A, a)


# slices ------------------------------------------------------------------------------

def test_slice_examples():
    p = solve_last_coordinate(GOLDEN_SHIFT, (F(2, 3),))
    assert p.exact and p.a[1] == F(1, 2)
    p = solve_last_coordinate(THREE_STATE, (F(1, 3), F(1, 3)))
    assert p.exact and p.a[2] == F(1, 2)
    p = solve_last_coordinate(ZeroOneMatrix.ones(3), (0.2, 0.3))
    assert p.a[2] == pytest.approx(0.5, abs=1e-10)


def test_three_state_slice_formula():
    # closed form of the slice for this matrix: a_3 = (1 - xy) / (1 + x + y + xy)
    for x, y in [(0.3, 0.4), (0.1, 0.2), (0.25, 0.5)]:
        p = solve_last_coordinate(THREE_STATE, (x, y))
        assert float(p.a[2]) == pytest.approx((1 - x * y) / (1 + x + y + x * y), abs=1e-10)


def test_slice_without_root():
    with pytest.raises(NoSolutionError):
        solve_last_coordinate(ZeroOneMatrix.ones(2), (0.9999999999,))
    with pytest.raises(DomainError):
        solve_last_coordinate(ZeroOneMatrix.ones(3), (0.5,))
