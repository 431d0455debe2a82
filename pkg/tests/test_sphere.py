import random

import pytest

from conftest import case1, case2, case3, case4, case5, ext1, ext2
from genusbound.algebra import AlgebraDescriptor
from genusbound.closedform import h_closed, h_lower_bound
from genusbound.lattice import Odd, grid_classes, norm
from genusbound.reduction import random_word
from genusbound.sphere import SphereError, sphere_check


def test_sphere_examples():
    v = sphere_check(case4(1), (3, -1))
    assert (v.status, v.reason, v.h) == ("obstructed", "h-positive", 1)
    v = sphere_check(case4(2), (5, -4, -1))
    assert v.status == "admissible" and v.pattern == "aH-(a-1)E1-E2"
    v = sphere_check(case3(), (1, 2))
    assert (v.status, v.reason) == ("obstructed", "T-nontrivial-positive-square")


def test_sphere_errors():
    with pytest.raises(SphereError):
        sphere_check(case1(), (0, 0))
    with pytest.raises(SphereError):
        sphere_check(case4(1), (1, 2))


def test_unsupported_is_unknown():
    v = sphere_check(AlgebraDescriptor.build(Odd(10)), (1,) + (0,) * 10)
    assert v.status == "unknown"


def test_extended_cases():
    for alg in (ext1(), ext2()):
        assert sphere_check(alg, (3, 0)).status == "admissible"
        assert sphere_check(alg, (3, 0)).pattern == "aF"
        assert sphere_check(alg, (2, 1)).reason == "T-nontrivial-positive-square"
    # B in U has square zero and h_c0(B) = 1
    v = sphere_check(ext1(), (0, 1))
    assert v.status == "obstructed" and v.h_kind == "lower-bound"


def test_admissible_implies_h_nonpositive():
    algs = [case1(), case3(), case5(), ext1(), ext2()] + [case4(n) for n in range(5)]
    for alg in algs:
        grid = 10 if alg.form.rank == 2 else 3
        for A in grid_classes(alg.form, grid):
            if not any(A):
                continue
            v = sphere_check(alg, A)
            if v.admissible:
                h = h_lower_bound(alg, A) if alg.case.value.startswith("Ext") else h_closed(alg, A)
                assert h <= 0


def test_case2_never_admissible():
    alg = case2()
    for A in grid_classes(alg.form, 1):
        if any(A):
            assert sphere_check(alg, A).status == "obstructed"


def test_orbit_soundness():
    rng = random.Random(8)
    for alg in (case1(), case3(), case5(), case4(2), case4(7), ext1()):
        for _ in range(80):
            A = tuple(rng.randint(-4, 4) for _ in range(alg.form.rank))
            if not any(A) or norm(alg.form, A) < 0:
                continue
            B = A
            for m in random_word(alg, 15, rng):
                B = m.apply(alg.form, B)
            va, vb = sphere_check(alg, A), sphere_check(alg, B)
            assert (va.status, va.pattern, va.reason, va.reduced) == (vb.status, vb.pattern, vb.reason, vb.reduced)


def test_verdict_json():
    d = sphere_check(case4(2), (5, -4, -1)).to_json()
    assert d["status"] == "admissible" and d["reduced"] == [5, -4, -1]
