"""Obstructions to representing a class of non-negative square by a sphere.

An ``admissible`` verdict means only that no obstruction here applies: the
class is equivalent to one of the known spherical patterns. It is not a
certificate that a sphere exists in any particular manifold.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Literal, Optional, Sequence

from .algebra import CLOSED_CASES, EXTENDED_CASES, AlgebraDescriptor, CaseTag, classify_case
from .closedform import h_closed, h_lower_bound
from .lattice import LatticeClass, RankMismatchError, norm
from .reduction import ReductionError, reduce

__all__ = ["SphereVerdict", "SphereError", "sphere_check", "sphere_pattern"]

Status = Literal["admissible", "obstructed", "unknown"]


class SphereError(ReductionError):
    pass


@dataclass(frozen=True)
class SphereVerdict:
    status: Status
    pattern: Optional[str] = None   # name of the matched admissible pattern
    reason: Optional[str] = None    # why the class is obstructed / unknown
    reduced: Optional[LatticeClass] = None
    h: Optional[int] = None
    h_kind: Optional[str] = None    # "closed-form" or "lower-bound"

    @property
    def admissible(self) -> bool:
        return self.status == "admissible"

    def short(self) -> str:
        if self.status == "admissible":
            return f"admissible({self.pattern})"
        if self.status == "obstructed":
            return f"obstructed({self.reason})"
        return "unknown"

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status, "pattern": self.pattern, "reason": self.reason,
            "reduced": None if self.reduced is None else list(self.reduced),
            "h": self.h, "h_kind": self.h_kind,
        }


def sphere_pattern(alg: AlgebraDescriptor, R: Sequence[int]) -> Optional[str]:
    """Name of the spherical pattern a *reduced* class matches, if any."""
    case = classify_case(alg)
    R = tuple(R)
    if case is CaseTag.Case4:
        a = R[0]
        b = [-x for x in R[1:]] + [0, 0, 0]
        if a >= 1 and b[0] == a and not any(b[1:]):
            return "a(H-E1)"
        if a in (1, 2) and not any(b):
            return "H" if a == 1 else "2H"
        if a >= 2 and b[0] == a - 1 and not any(b[2:]):
            if b[1] == 0:
                return "aH-(a-1)E1"
            if b[1] == 1:
                return "aH-(a-1)E1-E2"
        return None
    if case is CaseTag.Case2:
        return None
    a, b = R[0], R[1]
    if a >= 1 and b == 0:
        return "aF"
    if case is CaseTag.Case1 and a >= 1 and b == 1:
        return "aF+B"
    return None


def sphere_check(alg: AlgebraDescriptor, A: Sequence[int]) -> SphereVerdict:
    A = tuple(int(v) for v in A)
    if len(A) != alg.form.rank:
        raise RankMismatchError(f"class has {len(A)} coefficients, form has rank {alg.form.rank}")
    if not any(A):
        raise SphereError("the zero class is not considered")
    square = norm(alg.form, A)
    if square < 0:
        raise SphereError("sphere obstructions are only stated for A.A >= 0")
    if not alg.t_trivial and square > 0:
        return SphereVerdict("obstructed", reason="T-nontrivial-positive-square")
    case = classify_case(alg)
    if case is CaseTag.Unsupported:
        return SphereVerdict("unknown", reason="no reduction theory for this algebra")
    R = reduce(alg, A).output
    if case in CLOSED_CASES:
        h = h_closed(alg, A)
        if h > 0:
            return SphereVerdict("obstructed", reason="h-positive", reduced=R, h=h, h_kind="closed-form")
        name = sphere_pattern(alg, R)
        if name is None:
            return SphereVerdict("obstructed", reason="pattern-exclusion", reduced=R, h=h,
                                 h_kind="closed-form")
        return SphereVerdict("admissible", pattern=name, reduced=R, h=h, h_kind="closed-form")
    assert case in EXTENDED_CASES
    h = h_lower_bound(alg, A)
    if h > 0:
        return SphereVerdict("obstructed", reason="h-positive", reduced=R, h=h, h_kind="lower-bound")
    if R[1] == 0 and R[0] >= 1:
        return SphereVerdict("admissible", pattern="aF", reduced=R, h=h, h_kind="lower-bound")
    return SphereVerdict("unknown", reason="lower bound only", reduced=R, h=h, h_kind="lower-bound")
