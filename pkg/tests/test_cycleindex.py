"""Exact pairing-graph combinatorics; everything here is zero-tolerance."""

from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockkrein import cycleindex as ci
from fockkrein.cycleindex import CycleIndexPoly
from fockkrein.kernels import KERNEL_BACKEND, cycle_type_counts, python_kernel


def test_p_sigma_small_cases():
    assert ci.p_sigma([0, 1]) == (1,)
    assert ci.p_sigma([1, 0]) == (1,)
    # one-line (0, 2, 1, 3): pairing edges {0,2} and {1,3} close a 4-cycle
    assert ci.p_sigma([0, 2, 1, 3]) == (0, 1)
    with pytest.raises(ValueError):
        ci.p_sigma([0, 1, 1, 3])
    with pytest.raises(ValueError):
        ci.p_sigma([0, 1, 2])


def test_p_n_enumeration_anchors():
    assert ci.p_n_enumerate(0) == CycleIndexPoly.one("x")
    assert ci.p_n_enumerate(1) == CycleIndexPoly("x", {(1,): Fraction(2)})
    assert ci.p_n_enumerate(2) == CycleIndexPoly(
        "x", {(2,): Fraction(8), (0, 1): Fraction(16)}
    )
    assert ci.p_n_enumerate(3).coefficient_sum() == Fraction(720)
    with pytest.raises(ValueError):
        ci.p_n_enumerate(6)


def test_recursion_matches_enumeration():
    for n in range(5):
        assert ci.p_n_recursive(n) == ci.p_n_enumerate(n)


def test_q_recursion_closed_form_and_rescaling():
    assert ci.q_n_recursive(1) == CycleIndexPoly("y", {(1,): Fraction(1)})
    assert ci.q_n_recursive(2) == CycleIndexPoly(
        "y", {(2,): Fraction(1, 2), (0, 1): Fraction(1, 2)}
    )
    for n in range(9):
        q = ci.q_n_recursive(n)
        assert q == ci.q_n_closed(n)
        assert ci.p_to_q(ci.p_n_recursive(n), n) == q
        assert ci.q_to_p(q, n) == ci.p_n_recursive(n)
        assert q.is_weight_homogeneous(n)


def test_coefficient_sums():
    for n in range(9):
        assert ci.p_n_recursive(n).coefficient_sum() == Fraction(factorial(2 * n))


def test_series_identity():
    assert ci.series_identity_check(1) == {1: True}
    assert all(ci.series_identity_check(8).values())
    # the weight-2 slice is the classic q_2
    sliced = ci.exp_series_truncated(2).weight_slice(2)
    assert sliced == ci.q_n_closed(2)


def test_evaluate_poly():
    assert ci.evaluate_poly(ci.q_n_closed(1), [3 - 1j]) == 3 - 1j
    assert ci.evaluate_poly(ci.q_n_closed(2), [0.0, 4.0]) == pytest.approx(2.0)
    assert ci.evaluate_poly(ci.p_n_recursive(2), [1.0, 1.0]) == pytest.approx(24.0)
    with pytest.raises(ValueError):
        ci.evaluate_poly(ci.q_n_closed(2), [1.0])


def test_format_poly():
    assert ci.format_poly(ci.q_n_closed(1), "q_1") == "q_1 = 1 y1"
    assert ci.format_poly(ci.q_n_closed(2), "q_2") == "q_2 = 1/2 y1^2 + 1/2 y2"
    assert ci.format_poly(ci.p_n_recursive(2), "p_2") == "p_2 = 8 x1^2 + 16 x2"
    assert ci.format_poly(CycleIndexPoly.zero("x"), "p") == "p = 0"


def test_poly_arithmetic_guards():
    with pytest.raises(ValueError):
        CycleIndexPoly("x", {}) + CycleIndexPoly("y", {})
    with pytest.raises(ValueError):
        CycleIndexPoly("z", {})


@st.composite
def permutation_of_2n(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    return n, draw(st.permutations(list(range(2 * n))))


@settings(max_examples=60, deadline=None)
@given(permutation_of_2n())
def test_p_sigma_weight_homogeneous(case):
    n, sigma = case
    j = ci.p_sigma(sigma)
    assert len(j) == n
    assert sum(k * jk for k, jk in enumerate(j, start=1)) == n


@settings(max_examples=60, deadline=None)
@given(permutation_of_2n(), st.randoms(use_true_random=False))
def test_p_sigma_relabeling_invariance(case, rnd):
    n, sigma = case
    rng = np.random.default_rng(rnd.randrange(2**32))
    from fockkrein.verify import _pair_preserving_relabeling

    r = _pair_preserving_relabeling(rng, n)
    base = ci.p_sigma(sigma)
    assert ci.p_sigma([r[sigma[i]] for i in range(2 * n)]) == base
    assert ci.p_sigma([sigma[r[i]] for i in range(2 * n)]) == base


def test_symmetry_group_order():
    from fockkrein.verify import _pair_group

    for n in (1, 2, 3):
        assert len(_pair_group(n)) == 2**n * factorial(n)
    for n in range(1, 7):
        assert 2 ** (2 * n) * factorial(n) ** 2 == (2**n * factorial(n)) ** 2


def test_kernel_backends_agree():
    for n in range(5):
        assert python_kernel.cycle_type_counts(n) == dict(cycle_type_counts(n))
    assert sum(cycle_type_counts(4).values()) == factorial(8)


@pytest.mark.slow
def test_enumeration_n5_optional():
    if KERNEL_BACKEND != "compiled":
        pytest.skip("pure-Python fallback would enumerate 10! graphs slowly")
    p5 = ci.p_n_enumerate(5)
    assert p5 == ci.p_n_recursive(5)
    assert p5.coefficient_sum() == Fraction(factorial(10))
