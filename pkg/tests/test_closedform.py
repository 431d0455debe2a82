import random
from math import comb

import pytest

from conftest import case1, case2, case3, case4, case5, ext1, ext2
from genusbound.adjunction import h_bruteforce, is_adjunction_class
from genusbound.algebra import AlgebraDescriptor
from genusbound.closedform import (
    ClosedFormError, HSign, c_zero, h_closed, h_lower_bound, sign_class,
)
from genusbound.lattice import Odd, grid_classes, is_characteristic, norm, pair
from genusbound.reduction import random_word


def test_c_zero_examples():
    assert c_zero(case1()) == (2, 2)
    assert c_zero(case2()) == (0,) * 10
    assert c_zero(case4(5)) == (3, -1, -1, -1, -1, -1)
    assert c_zero(case3()) == (0, 2)
    assert c_zero(case5()) == (1, -2)
    assert c_zero(ext1()) == (0, 2)
    assert c_zero(ext2()) == (-1, 2)


def test_c_zero_unsupported():
    with pytest.raises(ClosedFormError):
        c_zero(AlgebraDescriptor.build(Odd(10)))


@pytest.mark.parametrize("alg", [case1(), case2(), case3(), case5(), ext1(), ext2()]
                         + [case4(n) for n in range(10)], ids=lambda a: f"{a.case}-{a.form}")
def test_c_zero_is_adjunction_and_characteristic(alg):
    c = c_zero(alg)
    assert is_characteristic(alg.form, c)
    assert is_adjunction_class(alg, c).is_adjunction
    if alg.F is not None:
        assert pair(alg.form, c, alg.F) != 0


def test_h_closed_examples():
    assert [h_closed(case4(0), (d,)) for d in range(1, 6)] == [0, 0, 1, 3, 6]
    for a in range(0, 8):
        expected = 0 if a == 0 else 1 - a
        assert h_closed(case3(), (a, 0)) == expected
    for a in range(1, 8):
        assert h_closed(case4(1), (a, -a)) == -(a - 1)


def test_h_closed_zero_class_everywhere():
    for alg in (case1(), case2(), case3(), case5(), case4(0), case4(9)):
        assert h_closed(alg, (0,) * alg.form.rank) == 0


def test_h_closed_errors():
    with pytest.raises(ClosedFormError):
        h_closed(case4(1), (1, 3))
    with pytest.raises(ClosedFormError):
        h_closed(ext1(), (1, 1))
    with pytest.raises(ClosedFormError):
        h_closed(AlgebraDescriptor.build(Odd(10)), (1,) + (0,) * 10)


def test_h_lower_bound_examples():
    for a in range(0, 5):
        for b in range(0, 5):
            if (a, b) != (0, 0):
                assert h_lower_bound(ext1(), (a, b)) == a * (b - 1) + 1
    for a in range(1, 6):
        assert h_lower_bound(ext2(), (a, 0)) == 1 - a
    assert h_lower_bound(ext1(), (0, 0)) == 0
    with pytest.raises(ClosedFormError):
        h_lower_bound(case3(), (1, 0))


def test_extended_oracle_at_least_lower_bound():
    for alg in (ext1(), ext2(), ext1(6)):
        for A in grid_classes(alg.form, 4):
            assert h_bruteforce(alg, A, 9).value >= h_lower_bound(alg, A)


def test_sign_class_examples():
    assert sign_class(case1(), (3, 1)) is HSign.Zero
    assert sign_class(case4(1), (2, -2)) is HSign.Negative
    assert sign_class(case4(2), (3, -2, -1)) is HSign.Zero


def test_case5_formula_uses_absolute_value():
    # 2a + b < 0 on a reduced class: the oracle and h_closed agree on 2
    A = (1, -3)
    assert h_closed(case5(), A) == 2
    assert h_bruteforce(case5(), A, 12).value == 2


@pytest.mark.parametrize("alg", [case1(), case3(), case5()], ids=lambda a: str(a.case))
def test_rank2_sign_consistency(alg):
    for a in range(-12, 13):
        for b in range(-12, 13):
            if norm(alg.form, (a, b)) >= 0:
                assert sign_class(alg, (a, b)) is HSign.of(h_closed(alg, (a, b)))


def test_case4_sign_consistency_sampled():
    rng = random.Random(2)
    for n in range(10):
        alg = case4(n)
        for _ in range(200):
            A = tuple(rng.randint(-6, 6) for _ in range(n + 1))
            if norm(alg.form, A) >= 0:
                assert sign_class(alg, A) is HSign.of(h_closed(alg, A))


def test_orbit_invariance():
    rng = random.Random(4)
    for alg in (case1(), case2(), case3(), case5(), case4(3), case4(8)):
        for _ in range(80):
            A = tuple(rng.randint(-4, 4) if i < 2 or rng.random() < 0.3 else 0
                      for i in range(alg.form.rank))
            if norm(alg.form, A) < 0:
                continue
            B = A
            for m in random_word(alg, 15, rng):
                B = m.apply(alg.form, B)
            assert h_closed(alg, A) == h_closed(alg, B)


def test_case2_floor():
    alg = case2()
    for A in grid_classes(alg.form, 1):
        if any(A):
            assert h_closed(alg, A) >= 1


def test_case4_binomial_expression():
    alg = case4(3)
    assert h_closed(alg, (6, -2, -2, -1)) == comb(5, 2) - 1 - 1 - 0
