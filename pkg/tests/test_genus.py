import json
import random
from fractions import Fraction

import pytest

from anomalykit.algebra import (
    GradedPolynomial,
    PowerSeries,
    monomial_symmetric_in_elementary,
    partitions,
)
from anomalykit.genus import (
    GenusError,
    ManifoldDescriptor,
    cp_pontrjagin,
    evaluate_genus,
    l_polynomial,
    l_series,
    multiplicative_sequence,
    product_manifold,
    signature,
    solve_l_via_generators,
    twisted_index,
)

P = [None] + [GradedPolynomial.symbol(i) for i in range(1, 7)]


def test_l_series_coefficients():
    b = l_series(4).q_coefficients
    assert b.coeffs == (1, Fraction(1, 3), Fraction(-1, 45), Fraction(2, 945), Fraction(-1, 4725))
    assert l_series(0).q_coefficients.coeffs == (1,)


def test_low_l_polynomials():
    assert l_polynomial(1) == P[1] * Fraction(1, 3)
    assert l_polynomial(2) == (7 * P[2] - P[1] ** 2) * Fraction(1, 45)
    assert l_polynomial(3) == (62 * P[3] - 13 * P[2] * P[1] + 2 * P[1] ** 3) * Fraction(1, 945)
    assert str(l_polynomial(2)) == "(7*p2 - p1^2)/45"


def test_l4_against_tabulated_value():
    expected = (
        381 * P[4] - 71 * P[3] * P[1] - 19 * P[2] ** 2 + 22 * P[2] * P[1] ** 2 - 3 * P[1] ** 4
    ) * Fraction(1, 14175)
    assert l_polynomial(4) == expected


@pytest.mark.parametrize("k", range(1, 7))
def test_dual_algorithms_agree(k):
    assert l_polynomial(k) == solve_l_via_generators(k)


def test_linear_system_k2():
    poly = solve_l_via_generators(2)
    assert poly.coefficient((1, 1)) == Fraction(-1, 45)
    assert poly.coefficient((2,)) == Fraction(7, 45)


@pytest.mark.parametrize("k", range(1, 7))
def test_projective_spaces_have_signature_one(k):
    assert evaluate_genus(product_manifold([2 * k]), l_polynomial(k)) == 1


@pytest.mark.parametrize("k", range(1, 7))
def test_homogeneity(k):
    poly = l_polynomial(k)
    assert poly.is_homogeneous(k)
    assert all(sum(part) == k for part in poly.by_partition())


@pytest.mark.parametrize("k", range(1, 7))
def test_coefficient_audit(k):
    bs = [l_series(k).b(i) for i in range(1, k + 1)]
    poly = l_polynomial(k)
    for part in partitions(k):
        assert poly.coefficient(part) == monomial_symmetric_in_elementary(part, k).evaluate(bs)


def test_cp_classes():
    assert cp_pontrjagin(1).coeffs == (1, 3)
    assert cp_pontrjagin(2).coeffs == (1, 5, 10)
    assert cp_pontrjagin(3).coeffs == (1, 7, 21, 35)


def test_product_pontrjagin_numbers():
    m = product_manifold([4])
    assert m.number((1, 1)) == 25 and m.number((2,)) == 10
    m = product_manifold([2, 2])
    assert m.number((1, 1)) == 18 and m.number((2,)) == 9
    assert product_manifold([2]).number((1,)) == 3


def test_cp6_spot_value():
    m = ManifoldDescriptor(3, {(3,): 35, (2, 1): 7 * 21, (1, 1, 1): 7 ** 3})
    assert m.number((3,)) == product_manifold([6]).number((3,))
    assert m == product_manifold([6])
    assert evaluate_genus(m, l_polynomial(3)) == 1


def factor_lists(max_weight):
    out = []
    for w in range(1, max_weight + 1):
        for part in partitions(w):
            out.append([2 * i for i in part])
    return out


def test_multiplicativity():
    lists = factor_lists(3)
    for a in lists:
        for b in lists:
            ka, kb = sum(a) // 2, sum(b) // 2
            lhs = evaluate_genus(product_manifold(a + b), l_polynomial(ka + kb))
            rhs = evaluate_genus(product_manifold(a), l_polynomial(ka)) * evaluate_genus(
                product_manifold(b), l_polynomial(kb)
            )
            assert lhs == rhs == 1


def test_multiplicativity_for_arbitrary_series():
    rng = random.Random(7)
    for _ in range(5):
        series = PowerSeries([1] + [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(6)], 6)
        polys = {k: multiplicative_sequence(series, k) for k in range(1, 7)}
        lists = factor_lists(3)
        for a in lists:
            for b in lists:
                ka, kb = sum(a) // 2, sum(b) // 2
                lhs = evaluate_genus(product_manifold(a + b), polys[ka + kb])
                rhs = evaluate_genus(product_manifold(a), polys[ka]) * evaluate_genus(
                    product_manifold(b), polys[kb]
                )
                assert lhs == rhs


def test_zero_manifold_evaluates_to_zero():
    for k in range(1, 5):
        assert evaluate_genus(ManifoldDescriptor(k, {}), l_polynomial(k)) == 0


def test_weight_mismatch_rejected():
    with pytest.raises(GenusError):
        evaluate_genus(product_manifold([2]), l_polynomial(2))


def test_descriptor_validation():
    with pytest.raises(GenusError):
        ManifoldDescriptor(2, {(1,): 3})
    with pytest.raises(GenusError):
        product_manifold([3])


def test_descriptor_json_round_trip():
    m = product_manifold([4, 2])
    data = json.loads(json.dumps(m.to_json()))
    assert ManifoldDescriptor.from_json(data) == m
    assert data["k"] == 3
    assert all(isinstance(v, str) for v in data["pontrjagin"].values())


def test_descriptor_from_sparse_json():
    m = ManifoldDescriptor.from_json({"k": 2, "pontrjagin": {"2": "9", "1,1": "18"}})
    assert signature(m) == 1
    assert m.number((2,)) == 9


def test_twisted_index():
    assert twisted_index(1, 5, 0) == 5
    assert twisted_index(2, 0, 5) == -5
    assert twisted_index(2, -16, 0) == -32
    with pytest.raises(GenusError):
        twisted_index(0, 1, 1)
