import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import case1, case2, case3, case4, case5, ext1, ext2
from genusbound.algebra import AlgebraDescriptor
from genusbound.lattice import Odd, gcd_of, grid_classes, make_form, norm, pair, Even
from genusbound.reduction import (
    CremonaReflect, EOmega, Negate, PermuteE, ReductionError, ReductionTrace, ReflectE, SwapFB,
    e_omega, is_reduced, move_from_json, nearest_e8_point, random_word, reduce, wall_vector,
)

E8 = make_form(Even(1))
ZERO = (0,) * 10


def xi_class(*coords):
    return (0, 0) + tuple(coords) + (0,) * (8 - len(coords))


def test_is_reduced_examples():
    assert is_reduced(case4(3), (3, -1, -1, -1))
    assert not is_reduced(case1(), (1, 2))
    assert is_reduced(case2(), (5, 0) + (0,) * 8)


def test_is_reduced_case4_thresholds():
    assert is_reduced(case4(0), (0,)) and not is_reduced(case4(0), (-1,))
    assert is_reduced(case4(1), (2, -2)) and not is_reduced(case4(1), (2, 2))
    assert is_reduced(case4(2), (3, -2, -1)) and not is_reduced(case4(2), (2, -2, -1))
    assert not is_reduced(case4(2), (3, -1, -2))    # unsorted
    assert is_reduced(case4(5), (6, -2, -2, -2, -2, -2))
    assert not is_reduced(case4(5), (5, -2, -2, -2, 0, 0))


def test_is_reduced_unsupported():
    with pytest.raises(ReductionError):
        is_reduced(AlgebraDescriptor.build(Odd(10)), (1,) + (0,) * 10)


def test_e_omega_examples():
    rng = random.Random(3)
    omega = xi_class(1, 0, 0, 0, 0, 0, 0, 0)        # a simple root: omega.omega = -2
    assert norm(E8, omega) == -2
    for _ in range(20):
        A = tuple(rng.randint(-4, 4) for _ in range(10))
        assert e_omega(E8, ZERO, A) == A
    F = (1, 0) + (0,) * 8
    assert e_omega(E8, omega, F) == F
    B = (0, 1) + (0,) * 8
    assert e_omega(E8, omega, B) == (1, 1) + omega[2:]


def test_e_omega_rejects_omega_outside_e8():
    with pytest.raises(ReductionError):
        e_omega(E8, (1,) + (0,) * 9, (0, 1) + (0,) * 8)


@given(st.lists(st.integers(-3, 3), min_size=18, max_size=18))
@settings(max_examples=80, deadline=None)
def test_e_omega_is_isometry_fixing_F(vals):
    omega = (0, 0) + tuple(vals[:8])
    A = tuple(vals[8:])
    B = tuple(reversed(vals[8:]))
    F = (1, 0) + (0,) * 8
    assert pair(E8, e_omega(E8, omega, A), e_omega(E8, omega, B)) == pair(E8, A, B)
    assert e_omega(E8, omega, F) == F


def test_wall_vector_examples():
    for b in (1, 2, -3, 7):
        assert wall_vector(E8, ZERO, b) == ZERO
    v = xi_class(1, -2, 0, 3, 0, 0, 1, -1)
    for b in (1, 2, -3):
        assert wall_vector(E8, tuple(b * x for x in v), b) == tuple(-x for x in v)
    root = xi_class(0, 0, 1)
    assert norm(E8, root) == -2
    assert wall_vector(E8, root, 1) == tuple(-x for x in root)


def test_wall_vector_b_zero():
    with pytest.raises(ReductionError):
        wall_vector(E8, ZERO, 0)


def _box_distances(xi, b, radius=1):
    """Smallest |(xi + b w)^2| over a coordinate box of w, by brute force."""
    best = None
    for w in itertools.product(range(-radius, radius + 1), repeat=8):
        q = abs(norm(E8, tuple(x + b * y for x, y in zip(xi, (0, 0) + w))))
        best = q if best is None else min(best, q)
    return best


def test_wall_vector_is_nearest_point_against_box_search():
    """The decoder must do at least as well as every omega in the radius-1 box."""
    rng = random.Random(11)
    for _ in range(6):
        xi = xi_class(*(rng.randint(-2, 2) for _ in range(8)))
        b = rng.choice([1, 2, 3])
        w = wall_vector(E8, xi, b)
        got = abs(norm(E8, tuple(x + b * y for x, y in zip(xi, w))))
        assert got <= _box_distances(xi, b)
        assert got == 0 or 0 < got < 2 * b * b


@given(st.lists(st.integers(-30, 30), min_size=8, max_size=8), st.integers(1, 9))
@settings(max_examples=150, deadline=None)
def test_wall_dichotomy(coords, b):
    xi = (0, 0) + tuple(coords)
    w = wall_vector(E8, xi, b)
    moved = tuple(x + b * y for x, y in zip(xi, w))
    q = abs(norm(E8, moved))
    assert not any(moved) or 0 < q < 2 * b * b


def test_nearest_e8_point_lies_in_e8():
    from fractions import Fraction
    p = nearest_e8_point([Fraction(1, 3)] * 8)
    halves = {v.denominator for v in p}
    assert halves in ({1}, {2})
    assert sum(p) % 2 == 0


def test_reduce_examples():
    with pytest.raises(ReductionError):
        reduce(case4(2), (0, 1, 0))
    tr = reduce(case1(), (-3, -1))
    assert tr.moves == (Negate(),) and tr.output == (3, 1)
    tr = reduce(case4(3), (4, -3, -2, -1))
    assert tr.moves[0] == CremonaReflect()
    assert CremonaReflect().apply(case4(3).form, (4, -3, -2, -1)) == (2, -1, 0, 1)
    assert tr.output == (2, -1, -1, 0)
    assert norm(case4(3).form, tr.output) == 2


def test_reduce_n2_uses_two_point_cremona():
    tr = reduce(case4(2), (5, -4, -3))
    assert tr.output == (1, -1, 0)


def test_reduce_unsupported():
    with pytest.raises(ReductionError):
        reduce(AlgebraDescriptor.build(Odd(10)), (1,) + (0,) * 10)


def _invariants(alg, A, out):
    f = alg.form
    assert norm(f, A) == norm(f, out)
    assert gcd_of(A) == gcd_of(out)
    if alg.F is not None:
        assert abs(pair(f, A, alg.F)) == abs(pair(f, out, alg.F))


@pytest.mark.parametrize("alg", [case1(), case3(), case5(), ext1(), ext2(), case4(0), case4(1),
                                 case4(2), case4(3), case4(6)], ids=lambda a: f"{a.case}-{a.form}")
def test_reduce_grid_invariants_and_idempotence(alg):
    grid = 6 if alg.form.rank <= 2 else 3 if alg.form.rank <= 4 else 1
    for A in grid_classes(alg.form, grid):
        tr = reduce(alg, A)
        assert tr.replay(alg.form) == tr.output
        assert is_reduced(alg, tr.output)
        _invariants(alg, A, tr.output)
        assert reduce(alg, tr.output).moves == ()


def test_case2_measures_and_replay():
    alg = case2()
    rng = random.Random(5)
    seen_steps = 0
    for _ in range(150):
        A = (rng.randint(1, 4), rng.randint(1, 4)) + tuple(rng.randint(-1, 1) for _ in range(8))
        for m in random_word(alg, 12, rng):
            A = m.apply(alg.form, A)
        if norm(alg.form, A) < 0:
            continue
        tr = reduce(alg, A)
        assert tr.replay(alg.form) == tr.output
        assert is_reduced(alg, tr.output)
        _invariants(alg, A, tr.output)
        assert all(x > y for x, y in zip(tr.measures, tr.measures[1:]))
        seen_steps += len(tr.measures)
    assert seen_steps > 0


def test_case2_imprimitive_scales():
    alg = case2()
    A = (7, 3, 1, 0, -1, 0, 0, 2, 0, 0)
    assert norm(alg.form, A) >= 0
    one = reduce(alg, A)
    three = reduce(alg, tuple(3 * v for v in A))
    assert three.output == tuple(3 * v for v in one.output)
    assert three.moves == one.moves


def test_trace_json_round_trip():
    alg = case2()
    tr = reduce(alg, (7, 3, 1, 0, -1, 0, 0, 2, 0, 0))
    data = json.loads(json.dumps(tr.to_json()))
    back = ReductionTrace.from_json(data)
    assert back == tr
    assert back.replay(alg.form) == tr.output


def test_move_json():
    for m in (Negate(), SwapFB(), ReflectE(2), PermuteE(1, 3), CremonaReflect(), EOmega(ZERO)):
        assert move_from_json(m.to_json()) == m
    with pytest.raises(ReductionError):
        move_from_json({"move": "Twist"})


def test_uniqueness_small():
    """Cases 1/3/4/5: every class of an orbit reaches the same reduced class."""
    rng = random.Random(9)
    for alg in (case1(), case3(), case5(), case4(4)):
        for _ in range(60):
            A = tuple(rng.randint(-5, 5) for _ in range(alg.form.rank))
            if norm(alg.form, A) < 0:
                continue
            R = reduce(alg, A).output
            B = R
            for m in random_word(alg, 20, rng):
                B = m.apply(alg.form, B)
            assert reduce(alg, B).output == R
