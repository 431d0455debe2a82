"""Cohomology algebras of b+ = 1 type, reduced to the data the genus bound uses.

A descriptor keeps the intersection form on degree two, the first Betti
number, the rank of the cup product pairing on degree one, and a generator F
of its image (at most one-dimensional when b+ = 1).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Any, Mapping, Optional, Sequence

from .lattice import (
    Even, FormTag, Hyperbolic, IntersectionForm, LatticeClass, LatticeError, Odd, Vform,
    gcd_of, make_form, norm, sigma, signature,
)

__all__ = [
    "AlgebraDescriptor", "CaseTag", "AlgebraError",
    "modified_euler", "two_chi_three_sigma", "lefschetz_reduce", "classify_case",
    "form_from_json", "form_to_json", "CLOSED_CASES", "EXTENDED_CASES",
]


class AlgebraError(LatticeError):
    pass


class CaseTag(enum.Enum):
    Case1 = "Case1"
    Case2 = "Case2"
    Case3 = "Case3"
    Case4 = "Case4"
    Case5 = "Case5"
    Extended42_1 = "Extended42_1"
    Extended42_2 = "Extended42_2"
    Unsupported = "Unsupported"

    def __str__(self) -> str:
        return self.value


CLOSED_CASES = frozenset({CaseTag.Case1, CaseTag.Case2, CaseTag.Case3, CaseTag.Case4, CaseTag.Case5})
EXTENDED_CASES = frozenset({CaseTag.Extended42_1, CaseTag.Extended42_2})


@dataclass(frozen=True)
class AlgebraDescriptor:
    form: IntersectionForm
    b1: int = 0
    tilde_b1: int = 0
    F: Optional[LatticeClass] = None

    def __post_init__(self):
        if self.tilde_b1 < 0 or self.tilde_b1 % 2:
            raise AlgebraError(f"tilde_b1 must be even and non-negative, got {self.tilde_b1}")
        if self.b1 < self.tilde_b1:
            raise AlgebraError(f"tilde_b1={self.tilde_b1} exceeds b1={self.b1}")
        bp, _ = signature(self.form)
        if bp != 1:
            raise AlgebraError(f"form {self.form} has b+ = {bp}, expected 1")
        if self.tilde_b1 == 0:
            if self.F is not None:
                raise AlgebraError("F given but T is trivial (tilde_b1 = 0)")
            return
        if self.F is None:
            raise AlgebraError("tilde_b1 > 0 requires a generator F of Im T")
        F = tuple(int(v) for v in self.F)
        object.__setattr__(self, "F", F)
        if len(F) != self.form.rank:
            raise AlgebraError(f"F has {len(F)} coefficients, form has rank {self.form.rank}")
        if norm(self.form, F) != 0:
            raise AlgebraError("F must satisfy F.F = 0")
        if gcd_of(F) != 1:
            raise AlgebraError("F must be primitive")
        if not isinstance(self.form.tag, Odd):
            # reduced classes assume Im T is spanned by the first basis vector
            first = (1,) + (0,) * (self.form.rank - 1)
            if F not in (first, tuple(-v for v in first)):
                raise AlgebraError("for U, V and U+q(-E8) the generator F must be the first basis vector")
            object.__setattr__(self, "F", first)

    @classmethod
    def build(cls, tag: FormTag, b1: Optional[int] = None, tilde_b1: int = 0,
              F: Optional[Sequence[int]] = None) -> "AlgebraDescriptor":
        """Convenience constructor; F defaults to the first basis vector of U, V or U+q(-E8)."""
        form = make_form(tag)
        if tilde_b1 > 0 and F is None and not isinstance(tag, Odd):
            F = (1,) + (0,) * (form.rank - 1)
        return cls(form, tilde_b1 if b1 is None else b1, tilde_b1,
                   None if F is None else tuple(F))

    @property
    def t_trivial(self) -> bool:
        return self.tilde_b1 == 0

    @property
    def sigma(self) -> int:
        return sigma(self.form)

    @property
    def case(self) -> CaseTag:
        return classify_case(self)

    # JSON: {"form": {...}, "b1": int, "tilde_b1": int, "F": [...]}
    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "AlgebraDescriptor":
        if "form" not in data:
            raise AlgebraError("algebra JSON needs a 'form' entry")
        tag = form_from_json(data["form"])
        tilde_b1 = _json_int(data.get("tilde_b1", 0), "tilde_b1")
        b1 = _json_int(data.get("b1", tilde_b1), "b1")
        F = data.get("F")
        if F is not None:
            F = tuple(_json_int(v, "F") for v in F)
        return cls.build(tag, b1, tilde_b1, F)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"form": form_to_json(self.form.tag), "b1": self.b1,
                               "tilde_b1": self.tilde_b1}
        if self.F is not None:
            out["F"] = list(self.F)
        return out


def _json_int(v: Any, name: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise AlgebraError(f"{name} must be an integer, got {v!r}")
    return v


def form_from_json(d: Mapping[str, Any]) -> FormTag:
    tag = str(d.get("tag", "")).lower()
    if tag == "odd":
        return Odd(_json_int(d.get("n"), "n"))
    if tag == "even":
        return Even(_json_int(d.get("q"), "q"))
    if tag == "hyperbolic":
        return Hyperbolic()
    if tag == "v":
        return Vform()
    raise AlgebraError(f"unknown form tag {d.get('tag')!r}")


def form_to_json(tag: FormTag) -> dict[str, Any]:
    if isinstance(tag, Odd):
        return {"tag": "odd", "n": tag.n}
    if isinstance(tag, Even):
        return {"tag": "even", "q": tag.q}
    if isinstance(tag, Hyperbolic):
        return {"tag": "hyperbolic"}
    return {"tag": "v"}


def modified_euler(alg: AlgebraDescriptor) -> int:
    return 2 + alg.form.rank - 2 * alg.tilde_b1


def two_chi_three_sigma(alg: AlgebraDescriptor) -> int:
    return 2 * modified_euler(alg) + 3 * alg.sigma


def lefschetz_reduce(alg: AlgebraDescriptor) -> tuple[AlgebraDescriptor, int]:
    """Split off the S^1 x S^3 summands; returns (Lefschetz algebra, their number)."""
    return replace(alg, b1=alg.tilde_b1), alg.b1 - alg.tilde_b1


def _is_u(tag: FormTag) -> bool:
    return isinstance(tag, Hyperbolic) or tag == Even(0)


def classify_case(alg: AlgebraDescriptor) -> CaseTag:
    tag = alg.form.tag
    t = alg.tilde_b1
    if t == 0:
        if _is_u(tag):
            return CaseTag.Case1
        if tag == Even(1):
            return CaseTag.Case2
        if isinstance(tag, Odd) and tag.n <= 9:
            return CaseTag.Case4
        return CaseTag.Unsupported
    if _is_u(tag):
        return CaseTag.Case3 if t == 2 else CaseTag.Extended42_1
    if isinstance(tag, Vform):
        return CaseTag.Case5 if t == 2 else CaseTag.Extended42_2
    return CaseTag.Unsupported
