from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ckrep.errors import DomainError
from ckrep.gns import (
    EPSILON,
    ReducedWord,
    TensorVector,
    compare_states,
    gns_moment,
    pi_adjoint_apply,
    pi_apply,
    product_of,
    reduce_word,
    tensor_representation,
    xi_word,
)
from ckrep.interval import EtaPrime, build_interval_system
from ckrep.scalars import sqrt
from ckrep.spectral import check_lambda_membership
from ckrep.words import CKMonomial, FormalSum, enumerate_admissible, nonzero_pairs, state_on_pair

from conftest import GOLDEN_SHIFT, O2, THREE_STATE, random_admissible, random_rational_point

THREE = build_interval_system(check_lambda_membership(THREE_STATE, (F(1, 3), F(1, 3), F(1, 2))))
UNIFORM = build_interval_system(check_lambda_membership(O2, (F(1, 2), F(1, 2))))
GOLDEN = build_interval_system(check_lambda_membership(GOLDEN_SHIFT, (F(2, 3), F(1, 2))))


# free group ------------------------------------------------------------------------

@pytest.mark.parametrize("letters,expected", [
    ((), ()),
    ((1, -1), ()),
    ((1, 2, -2, 3), (1, 3)),
    ((-1, 1, 1, -2, 2), (1,)),
    ((2, 1, -1, -2, 3, -3), ()),
])
def test_reduce_word(letters, expected):
    assert reduce_word(letters) == ReducedWord(expected)


def test_reduced_word_checks():
    with pytest.raises(DomainError):
        ReducedWord((1, -1))
    with pytest.raises(DomainError):
        reduce_word((1, 0))
    with pytest.raises(DomainError):
        reduce_word((3,), n=2)
    w = ReducedWord((1, -2))
    assert w.left_mul(-1) == ReducedWord((-2,))
    assert w.left_mul(2) == ReducedWord((2, 1, -2))
    assert reduce_word(w.inverse().letters + w.letters).is_identity()
    assert str(w) == "x1x2^-1" and str(EPSILON) == "e"


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12))
def test_reduction_is_left_multiplication(letters):
    by_stack = reduce_word(letters)
    by_action = EPSILON
    for l in reversed(letters):
        by_action = by_action.left_mul(l)
    assert by_stack == by_action


# Pi ------------------------------------------------------------------------------------

def test_pi_on_cyclic_vector():
    omega = tensor_representation(UNIFORM).cyclic()
    v = pi_apply(UNIFORM, 1, omega)
    assert v.support() == [ReducedWord((1,))]
    assert v == TensorVector.elementary(xi_word((1,)), UNIFORM.apply(1, UNIFORM.one()))
    assert pi_adjoint_apply(UNIFORM, 1, v) == omega
    assert omega.norm() == 1


def _random_tensor_vector(rng, sys_, size=4):
    cells = sys_.cell_indicators()
    parts = {}
    for _ in range(size):
        g = reduce_word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 4))])
        f = cells[rng.randrange(len(cells))].scale(F(rng.randint(-4, 4), rng.randint(1, 3)))
        parts[g] = parts[g] + f if g in parts else f
    return TensorVector(parts)


def test_pi_isometries_on_o2(rng):
    pi = tensor_representation(UNIFORM)
    for _ in range(20):
        u, w = _random_tensor_vector(rng, UNIFORM), _random_tensor_vector(rng, UNIFORM)
        for i in (1, 2):
            assert pi.apply(i, u).inner(pi.apply(i, w)) == u.inner(w)
            assert pi.adjoint(i, pi.apply(i, u)) == u
            assert pi.adjoint(i, w).inner(u) == w.inner(pi.apply(i, u))


def test_pi_relations_three_state():
    from ckrep.interval import verify_ck_relations

    pi = tensor_representation(THREE)
    probes = [TensorVector.elementary(g, h) for g in (EPSILON, ReducedWord((2,)), ReducedWord((-1, 3)))
              for h in THREE.cell_indicators()]
    report = verify_ck_relations(pi, probes)
    assert report.passed and report.max_residual == 0


# moments -------------------------------------------------------------------------------

def test_moment_examples():
    assert gns_moment(UNIFORM, ((1,), (2,))) == 0
    assert gns_moment(UNIFORM, ((1,), (1,))) == F(1, 2)
    assert gns_moment(GOLDEN, CKMonomial(GOLDEN_SHIFT, (1, 2), (1, 2))) == F(2, 9)
    assert gns_moment(THREE, FormalSum.identity(THREE_STATE)) == 1
    with pytest.raises(DomainError):
        gns_moment(UNIFORM, CKMonomial(THREE_STATE, (1,), (1,)))


def test_group_factor_kills_off_diagonal_terms():
    # without the group factor the carrier sees s_1 s_2* on 1 as a nonzero overlap
    base = UNIFORM.moment((1,), (2,))
    assert base != 0
    assert gns_moment(UNIFORM, ((1,), (2,))) == 0


@pytest.mark.parametrize("sys_", [THREE, UNIFORM, GOLDEN], ids=["three", "o2", "golden"])
def test_diagonal_moments_are_quasi_free(sys_):
    a, x = sys_.point.a, sys_.point.x
    for m in range(1, 7):
        for J in enumerate_admissible(sys_.A, m):
            assert gns_moment(sys_, (J, J)) == product_of(a, J[:-1]) * x[J[-1] - 1]


def test_compare_states_small():
    cmp = compare_states(THREE, 1)
    assert cmp.passed and cmp.exact and cmp.max_deviation == 0
    assert len(cmp.rows) == len(nonzero_pairs(THREE_STATE, 1))
    js = cmp.to_json(table=True)
    assert js["pairs"] == len(cmp.rows) and len(js["table"]) == len(cmp.rows)
    assert "table" not in cmp.to_json(table=False)


def test_compare_states_contrast_with_carrier():
    cmp = compare_states(UNIFORM, 3)
    assert cmp.passed
    off = cmp.off_diagonal()
    assert off and all(r.gns == 0 and r.state == 0 for r in off)
    # without the group factor: s_i* 1 = sqrt(a_i) 1 on an all-ones matrix
    a = UNIFORM.point.a
    assert all(r.carrier == sqrt(product_of(a, r.J) * product_of(a, r.K)) for r in off)


def test_two_routes_agree(rng):
    for _ in range(4):
        A = random_admissible(rng, rng.randint(2, 3))
        a, x = random_rational_point(rng, A)
        sys_ = build_interval_system(check_lambda_membership(A, a))
        cmp = compare_states(sys_, 3)
        assert cmp.passed
        for r in rng.sample(cmp.rows, min(15, len(cmp.rows))):
            assert gns_moment(sys_, (r.J, r.K)) == r.gns == state_on_pair(sys_.point, r.J, r.K)


def test_float_carrier_within_tolerance():
    sys_ = build_interval_system(check_lambda_membership(THREE_STATE, (1 / 3, 1 / 3, 0.5)))
    cmp = compare_states(sys_, 3, tol=1e-12)
    assert not cmp.exact and cmp.passed and cmp.max_deviation <= 1e-12


def test_sequence_carrier_gives_the_same_state():
    e = EtaPrime(F(1, 2))
    cmp = compare_states(e, 4)
    assert cmp.passed and cmp.max_deviation == 0
    for J in enumerate_admissible(O2, 3):
        assert gns_moment(e, (J, J)) == gns_moment(UNIFORM, (J, J))


def test_compare_states_range():
    with pytest.raises(DomainError):
        compare_states(UNIFORM, -1)
