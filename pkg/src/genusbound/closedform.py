"""Closed-form values of h on reduced classes, the canonical adjunction class
c0 of each case, and the sign of h.
"""
from __future__ import annotations

import enum
from math import comb
from typing import Sequence

from .adjunction import c_genus
from .algebra import EXTENDED_CASES, AlgebraDescriptor, CaseTag, classify_case
from .lattice import LatticeClass, RankMismatchError, norm
from .reduction import ReductionError, reduce

__all__ = ["HSign", "ClosedFormError", "c_zero", "h_closed", "h_lower_bound", "sign_class"]


class ClosedFormError(ReductionError):
    pass


class HSign(enum.Enum):
    Negative = "negative"
    Zero = "zero"
    Positive = "positive"

    @classmethod
    def of(cls, h: int) -> "HSign":
        return cls.Negative if h < 0 else cls.Zero if h == 0 else cls.Positive

    def __str__(self) -> str:
        return self.value


def c_zero(alg: AlgebraDescriptor) -> LatticeClass:
    """The adjunction class realising h on reduced classes (a lower bound in extended cases)."""
    case = classify_case(alg)
    rank = alg.form.rank
    if case is CaseTag.Case1:
        return (2, 2)
    if case is CaseTag.Case2:
        return (0,) * rank
    if case in (CaseTag.Case3, CaseTag.Extended42_1):
        return (0, 2)
    if case is CaseTag.Case4:
        # 3H - sum E_i, in raw coefficients
        return (3,) + (-1,) * (rank - 1)
    if case is CaseTag.Case5:
        return (1, -2)
    if case is CaseTag.Extended42_2:
        return (-1, 2)
    raise ClosedFormError(f"no canonical adjunction class for {alg.form} with tilde_b1={alg.tilde_b1}")


def _checked_class(alg: AlgebraDescriptor, A: Sequence[int]) -> LatticeClass:
    A = tuple(int(v) for v in A)
    if len(A) != alg.form.rank:
        raise RankMismatchError(f"class has {len(A)} coefficients, form has rank {alg.form.rank}")
    if norm(alg.form, A) < 0:
        raise ClosedFormError("h is only tabulated for A.A >= 0")
    return A


def h_closed(alg: AlgebraDescriptor, A: Sequence[int]) -> int:
    """h(A) from the per-case formula; Cases 1-5 only."""
    A = _checked_class(alg, A)
    case = classify_case(alg)
    if case in EXTENDED_CASES:
        raise ClosedFormError(f"{case} only has a lower bound; use h_lower_bound")
    if case is CaseTag.Unsupported:
        raise ClosedFormError(f"h has no closed form for {alg.form} with tilde_b1={alg.tilde_b1}")
    if not any(A):
        return 0
    if case is CaseTag.Case2:
        # valid on any class, so no reduction needed
        return (norm(alg.form, A) + 2) // 2
    R = reduce(alg, A).output
    if case is CaseTag.Case1:
        a, b = R
        return (a - 1) * (b - 1)
    if case is CaseTag.Case3:
        a, b = R
        return a * (b - 1) + 1
    if case is CaseTag.Case5:
        a, b = R
        return 1 + (norm(alg.form, R) - abs(2 * a + b)) // 2
    # reduced and nonzero forces a >= 1, so every binomial is the plain one
    return comb(R[0] - 1, 2) - sum(comb(-x, 2) for x in R[1:])


def h_lower_bound(alg: AlgebraDescriptor, A: Sequence[int]) -> int:
    """h_{c0}(A) in the extended cases: a bound for the minimal genus, not the maximum."""
    A = _checked_class(alg, A)
    case = classify_case(alg)
    if case not in EXTENDED_CASES:
        raise ClosedFormError(f"h_lower_bound is for the extended cases, got {case}")
    return c_genus(alg, c_zero(alg), A)


def _case4_pattern(R: LatticeClass) -> HSign:
    a = R[0]
    b = [-x for x in R[1:]] + [0, 0]
    b1, b2 = b[0], b[1]
    rest_zero = not any(b[2:])
    if not any(R) or (a in (1, 2) and b1 == 0):
        return HSign.Zero
    if b1 >= 1 and a == b1 + 1 and b2 in (0, 1) and rest_zero:
        return HSign.Zero
    if a == 1 and b1 == 1 and b2 == 0:  # H - E1
        return HSign.Zero
    if a >= 2 and b1 == a and b2 == 0:  # a(H - E1)
        return HSign.Negative
    return HSign.Positive


def sign_class(alg: AlgebraDescriptor, A: Sequence[int]) -> HSign:
    """Sign of h read off the reduced class, checked against h_closed."""
    h = h_closed(alg, A)
    case = classify_case(alg)
    if case is CaseTag.Case2:
        sign = HSign.Zero if not any(A) else HSign.Positive
    else:
        R = reduce(alg, A).output
        if case is CaseTag.Case4:
            sign = _case4_pattern(R)
        else:
            a, b = R
            if a > 1 and b == 0:
                sign = HSign.Negative
            elif (a, b) in ((1, 0), (0, 0)) or (case is CaseTag.Case1 and b == 1 and a >= 1):
                sign = HSign.Zero
            else:
                sign = HSign.Positive
    if sign is not HSign.of(h):
        raise AssertionError(f"sign pattern {sign} disagrees with h={h} for {tuple(A)}")
    return sign
