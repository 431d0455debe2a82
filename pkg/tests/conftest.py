import pytest

from genusbound.algebra import AlgebraDescriptor
from genusbound.lattice import Even, Hyperbolic, Odd, Vform


def case1():
    return AlgebraDescriptor.build(Hyperbolic())


def case2():
    return AlgebraDescriptor.build(Even(1))


def case3():
    return AlgebraDescriptor.build(Hyperbolic(), tilde_b1=2)


def case4(n):
    return AlgebraDescriptor.build(Odd(n))


def case5():
    return AlgebraDescriptor.build(Vform(), tilde_b1=2)


def ext1(t=4):
    return AlgebraDescriptor.build(Hyperbolic(), tilde_b1=t)


def ext2(t=4):
    return AlgebraDescriptor.build(Vform(), tilde_b1=t)


def all_algebras():
    """One descriptor per supported case, plus every n for Case 4."""
    algs = {"case1": case1(), "case2": case2(), "case3": case3(), "case5": case5(),
            "ext1": ext1(), "ext2": ext2()}
    algs.update({f"case4_n{n}": case4(n) for n in range(10)})
    return algs


@pytest.fixture(params=sorted(all_algebras()))
def any_alg(request):
    return all_algebras()[request.param]
