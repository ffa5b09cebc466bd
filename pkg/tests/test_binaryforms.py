"""Binary forms, apolar contraction, and the multiplication projection."""

import random
from fractions import Fraction
from math import comb

import pytest

from oracles import dense_rows, rank_gauss_fractions

from brlab.binaryforms import (
    BinaryForm,
    contract,
    dual_surjectivity_check,
    multiply,
    power,
    restrict_matmul,
    restricted_koszul,
    restriction_projector,
)
from brlab.errors import DegreeMismatch, OrderViolation
from brlab.rank_engine import rank_exact_q, rank_mod_p
from brlab.scalars import FieldTag

Q = FieldTag.rationals()
X = BinaryForm.from_coefficients([1, 0])
Y = BinaryForm.from_coefficients([0, 1])
ONE = BinaryForm.from_coefficients([1])


def test_multiply_examples():
    xy = multiply(X, Y)
    assert xy.degree == 2 and xy.coefficients == (0, 1, 0)

    f = multiply(BinaryForm.linear(1, 1), BinaryForm.linear(1, -1))
    assert f.coefficients == (1, 0, -1)

    g = BinaryForm.from_coefficients([2, -1, 3])
    assert multiply(ONE, g) == g


def test_multiply_commutative_degree_additive():
    rng = random.Random(314)
    for _ in range(30):
        d1, d2 = rng.randint(0, 4), rng.randint(0, 4)
        f = BinaryForm.from_coefficients([rng.randint(-3, 3) for _ in range(d1 + 1)])
        g = BinaryForm.from_coefficients([rng.randint(-3, 3) for _ in range(d2 + 1)])
        fg = multiply(f, g)
        assert fg == multiply(g, f)
        assert fg.degree == d1 + d2


def test_contract_examples():
    # x* on x^2 gives x
    x2 = BinaryForm.from_coefficients([1, 0, 0])
    assert contract(X, x2).coefficients == (1, 0)
    # y* on x^2 vanishes
    assert contract(Y, x2).is_zero()
    # (x* y*) on (x+y)^3 gives 1*(x+y)
    g = BinaryForm.from_coefficients([0, 1, 0])
    f = power(BinaryForm.linear(1, 1), 3)
    assert contract(g, f).coefficients == (1, 1)


def test_contract_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        contract(BinaryForm.from_coefficients([1, 0, 0]), X)


def test_contract_power_law_randomized():
    rng = random.Random(2718)
    for _ in range(100):
        alpha = rng.randint(1, 6)
        beta = rng.randint(0, alpha)
        lam, mu = rng.randint(-3, 3), rng.randint(-3, 3)
        if lam == 0 and mu == 0:
            lam = 1
        line = BinaryForm.linear(lam, mu)
        g = BinaryForm.from_coefficients([rng.randint(-3, 3) for _ in range(beta + 1)])
        lhs = contract(g, power(line, alpha))
        scale = g.evaluate(lam, mu)
        target = power(line, alpha - beta)
        expected = tuple(Fraction(scale) * c for c in target.coefficients)
        assert lhs.coefficients == expected


def test_contract_power_law_prime_field():
    fp = FieldTag.prime_field(65521)
    rng = random.Random(99)
    for _ in range(20):
        alpha = rng.randint(1, 5)
        beta = rng.randint(0, alpha)
        lam, mu = rng.randint(0, 11), rng.randint(1, 11)
        line = BinaryForm.linear(lam, mu, fp)
        g = BinaryForm.from_coefficients(
            [rng.randint(0, 11) for _ in range(beta + 1)], fp)
        lhs = contract(g, power(line, alpha))
        scale = g.evaluate(lam, mu)
        target = power(line, alpha - beta)
        expected = tuple(fp.mul(scale, c) for c in target.coefficients)
        assert lhs.coefficients == expected


def test_restriction_projector_22():
    setup = restriction_projector(2, 2)
    assert (setup.projector.target_dim, setup.projector.source_dim) == (3, 4)
    # x* (x) y* (flat index 0*2+1) lands on the middle target vector
    assert setup.projector.matrix == ((1, 0, 0, 0), (0, 1, 1, 0), (0, 0, 0, 1))


def test_restriction_projector_m1_identity():
    for m in (1, 2, 5):
        setup = restriction_projector(m, 1)
        assert setup.projector.matrix == tuple(
            tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def test_restriction_projector_33_full_row_rank():
    setup = restriction_projector(3, 3)
    assert (setup.dim_target, setup.dim_m * setup.dim_u) == (5, 9)
    assert rank_gauss_fractions([list(r) for r in setup.projector.matrix]) == 5


def test_restriction_projector_order_violation():
    with pytest.raises(OrderViolation):
        restriction_projector(2, 3)


def test_projector_left_inverse_of_monomial_section():
    for m, n in [(2, 2), (3, 3), (4, 2), (5, 3)]:
        setup = restriction_projector(m, n)
        pmat = setup.projector.matrix
        target = setup.dim_target
        # section: degree index r -> (alpha, s) = (min(r, m-1), r - min(r, m-1))
        section_cols = []
        for r in range(target):
            alpha = min(r, m - 1)
            s = r - alpha
            section_cols.append(alpha * n + s)
        for r in range(target):
            image = [pmat[i][section_cols[r]] for i in range(target)]
            assert image == [1 if i == r else 0 for i in range(target)]


def test_restrict_matmul_dims():
    t = restrict_matmul(3, 3, 1)
    assert t.dims == (5, 3, 3)
    assert t.nnz == 9
    t = restrict_matmul(4, 2, 3)
    assert t.dims == (5, 6, 12)


def test_restricted_koszul_examples():
    km = restricted_koszul(3, 3, 1, 2)
    assert (km.rows, km.cols) == (30, 30)
    assert rank_exact_q(km.matrix).rank == 30
    assert rank_gauss_fractions(dense_rows(km.matrix)) == 30

    km = restricted_koszul(2, 2, 1, 1)
    assert (km.rows, km.cols) == (6, 6)
    assert rank_exact_q(km.matrix).rank == 6

    km = restricted_koszul(3, 2, 1, 1)
    assert (km.rows, km.cols) == (18, 8)
    assert rank_exact_q(km.matrix).rank == 8


def test_restricted_koszul_default_p():
    km = restricted_koszul(4, 3, 1)
    assert km.p == 2
    assert km.cols == 3 * comb(6, 2)


def test_restricted_full_column_rank_small_grid():
    for m in range(1, 5):
        for n in range(1, m + 1):
            km = restricted_koszul(m, n, 1, n - 1)
            expected_cols = n * comb(m + n - 1, n - 1)
            assert km.cols == expected_cols
            assert rank_exact_q(km.matrix).rank == expected_cols


def test_restricted_koszul_order_violation():
    with pytest.raises(OrderViolation):
        restricted_koszul(2, 3, 1)


def test_dual_surjectivity_examples():
    assert dual_surjectivity_check(3, 3)
    assert dual_surjectivity_check(1, 1)
    assert dual_surjectivity_check(4, 2)
    with pytest.raises(OrderViolation):
        dual_surjectivity_check(2, 4)


def test_dual_surjectivity_matches_transpose_rank():
    km = restricted_koszul(3, 2, 1, 1)
    trans = km.matrix.transpose()
    assert rank_mod_p(trans, 65521).rank == rank_exact_q(km.matrix).rank
